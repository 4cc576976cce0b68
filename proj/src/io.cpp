#include "stratdisc/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/core.h>

#include "stratdisc/errors.hpp"

namespace stratdisc
{
namespace
{
std::vector<std::string> split_csv(std::string const& line)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ','))
    {
        auto b = field.find_first_not_of(" \t\r");
        auto e = field.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? std::string{} : field.substr(b, e - b + 1));
    }
    return out;
}

double parse_real(std::string const& s, std::size_t line_no)
{
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw DomainError(fmt::format("line {}: '{}' is not a number", line_no, s));
    return v;
}
}  // namespace

std::string format_real(double v)
{
    return fmt::format("{:.17g}", v == 0.0 ? 0.0 : v);
}

namespace
{
void dump_value(std::string& out, nlohmann::json const& j, int indent, int depth)
{
    auto newline = [&](int level) {
        if (indent < 0)
            return;
        out += '\n';
        out.append(static_cast<std::size_t>(indent * level), ' ');
    };
    switch (j.type())
    {
        case nlohmann::json::value_t::number_float:
        {
            double const v = j.get<double>();
            out += std::isfinite(v) ? format_real(v) : "null";
            break;
        }
        case nlohmann::json::value_t::array:
        {
            if (j.empty())
            {
                out += "[]";
                break;
            }
            out += '[';
            bool first = true;
            for (auto const& e : j)
            {
                if (!first)
                    out += ',';
                first = false;
                newline(depth + 1);
                dump_value(out, e, indent, depth + 1);
            }
            newline(depth);
            out += ']';
            break;
        }
        case nlohmann::json::value_t::object:
        {
            if (j.empty())
            {
                out += "{}";
                break;
            }
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it)
            {
                if (!first)
                    out += ',';
                first = false;
                newline(depth + 1);
                out += nlohmann::json(it.key()).dump();
                out += indent < 0 ? ":" : ": ";
                dump_value(out, it.value(), indent, depth + 1);
            }
            newline(depth);
            out += '}';
            break;
        }
        default:
            out += j.dump();
    }
}
}  // namespace

std::string dump_json(nlohmann::json const& j, int indent)
{
    std::string out;
    dump_value(out, j, indent, 0);
    return out;
}

nlohmann::json to_json(PartitionSpec const& spec)
{
    nlohmann::json j;
    j["family"] = std::string(to_string(spec.family));
    j["d"] = spec.d;
    if (spec.family == Family::Simple)
    {
        j["n"] = spec.n;
        return j;
    }
    j["m"] = spec.m;
    if (spec.family == Family::ModelI)
        j["theta"] = spec.theta;
    if (spec.family == Family::ModelII)
        j["b"] = spec.b;
    return j;
}

nlohmann::json to_json(Partition const& p)
{
    nlohmann::json j = to_json(p.spec());
    j["total_measure"] = p.total_measure();
    auto& strata = j["strata"] = nlohmann::json::array();
    for (Stratum const& s : p.strata())
    {
        nlohmann::json verts = nlohmann::json::array();
        for (Vec2 v : s.base().vertices())
            verts.push_back({v.x, v.y});
        nlohmann::json ext = nlohmann::json::array();
        for (Interval const& iv : s.extrusion())
            ext.push_back({iv.lo, iv.hi});
        strata.push_back({{"vertices", verts}, {"extrusion", ext}, {"measure", s.measure()}});
    }
    return j;
}

nlohmann::json to_json(PointSet const& ps)
{
    nlohmann::json j;
    j["n"] = ps.size();
    j["d"] = ps.dim();
    j["seed"] = ps.seed();
    if (ps.spec())
        j["spec"] = to_json(*ps.spec());
    auto& pts = j["points"] = nlohmann::json::array();
    for (std::size_t i = 0; i < ps.size(); ++i)
    {
        auto p = ps.point(i);
        pts.push_back(std::vector<double>(p.begin(), p.end()));
    }
    return j;
}

nlohmann::json to_json(ClosedFormResult const& r)
{
    nlohmann::json j;
    j["value"] = r.value;
    j["family"] = std::string(to_string(r.params.family));
    j["params"] = to_json(r.params);
    j["components"] = {{"baseline", r.components.baseline},
                       {"correction", r.components.correction}};
    if (r.p)
        j["p"] = *r.p;
    if (r.p0)
        j["p0"] = *r.p0;
    if (r.p1)
        j["p1"] = *r.p1;
    return j;
}

nlohmann::json to_json(SweepTable const& t)
{
    nlohmann::json j;
    j["family"] = std::string(to_string(t.family));
    j["d"] = t.d;
    j["m"] = t.m;
    auto& rows = j["rows"] = nlohmann::json::array();
    for (SweepRow const& row : t.rows)
    {
        nlohmann::json r = {{"param", row.param},
                            {"value", row.result.value},
                            {"baseline", row.result.components.baseline},
                            {"correction", row.result.components.correction}};
        if (row.result.p)
            r["p"] = *row.result.p;
        if (row.result.p0)
            r["p0"] = *row.result.p0;
        if (row.result.p1)
            r["p1"] = *row.result.p1;
        rows.push_back(std::move(r));
    }
    return j;
}

nlohmann::json to_json(McEstimate const& e)
{
    return {{"mean", e.mean},
            {"stderr", e.std_error},
            {"replications", e.replications},
            {"seed", e.seed}};
}

nlohmann::json to_json(QuadratureEstimate const& q)
{
    return {{"value", q.value},
            {"nodes_per_axis", q.nodes_per_axis},
            {"error_indicator", q.error_indicator}};
}

nlohmann::json to_json(ProbeDiagnostic const& p)
{
    static constexpr char const* names[] = {"anchored", "corner", "outside"};
    nlohmann::json j;
    j["region"] = names[static_cast<int>(p.region)];
    j["z"] = p.z;
    j["fraction"] = to_json(p.fraction);
    j["formula"] = p.formula;
    j["exact"] = p.exact;
    auto& strata = j["strata"] = nlohmann::json::array();
    for (auto const& s : p.strata)
    {
        strata.push_back({{"hit_rate", s.hit_rate},
                          {"variance", s.variance},
                          {"expected_rate", s.expected_rate}});
    }
    return j;
}

void write_points_csv(std::ostream& os, PointSet const& ps)
{
    for (std::size_t j = 0; j < ps.dim(); ++j)
        os << (j ? ",x" : "x") << j + 1;
    os << '\n';
    for (std::size_t i = 0; i < ps.size(); ++i)
    {
        auto p = ps.point(i);
        for (std::size_t j = 0; j < p.size(); ++j)
            os << (j ? "," : "") << format_real(p[j]);
        os << '\n';
    }
}

PointSet read_points_csv(std::istream& is)
{
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(is, line))
        throw DomainError("point file is empty");
    ++line_no;
    auto header = split_csv(line);
    if (header.empty())
        throw DomainError("point file header is empty");
    for (std::size_t j = 0; j < header.size(); ++j)
    {
        if (header[j] != fmt::format("x{}", j + 1))
        {
            throw DomainError(fmt::format(
                "point file header must be x1,...,xd; found '{}' in column {}",
                header[j], j + 1));
        }
    }
    std::size_t const d = header.size();
    std::vector<double> coords;
    while (std::getline(is, line))
    {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        auto fields = split_csv(line);
        if (fields.size() != d)
        {
            throw DomainError(fmt::format(
                "line {}: expected {} columns, found {}", line_no, d, fields.size()));
        }
        for (auto const& f : fields)
            coords.push_back(parse_real(f, line_no));
    }
    if (coords.empty())
        throw DomainError("point file has no points");
    return PointSet(d, std::move(coords));
}

void write_sweep_csv(std::ostream& os, SweepTable const& t)
{
    os << "param,value,baseline,correction\n";
    for (SweepRow const& row : t.rows)
    {
        os << format_real(row.param) << ',' << format_real(row.result.value) << ','
           << format_real(row.result.components.baseline) << ','
           << format_real(row.result.components.correction) << '\n';
    }
}

}  // namespace stratdisc
