#include "stratdisc/partition.hpp"

#include <cmath>
#include <string>

#include <fmt/core.h>

#include "stratdisc/errors.hpp"
#include "compensated_sum.hpp"

namespace stratdisc
{
namespace
{
constexpr std::size_t kMaxPoints = std::size_t{1} << 24;

std::vector<Interval> corner_extrusion(int d, int m)
{
    double lo = double(m - 1) / m;
    return std::vector<Interval>(static_cast<std::size_t>(d - 2), Interval{lo, 1.0});
}

// Map a point of the normalized frame [0,2] x [0,1] onto the merged rectangle.
// Written as (m-2+u)/m so that grid vertices come out bit-identical to the
// jittered cell edges.
Vec2 from_frame(Vec2 p, int m)
{
    return {(m - 2 + p.x) / m, (m - 1 + p.y) / m};
}

ConvexPolygon frame_polygon(std::vector<Vec2> const& ring, int m)
{
    std::vector<Vec2> mapped;
    mapped.reserve(ring.size());
    for (Vec2 p : ring)
        mapped.push_back(from_frame(p, m));
    return ConvexPolygon::from_vertices(std::move(mapped));
}

// The two halves of the merged rectangle for ModelI.
std::pair<ConvexPolygon, ConvexPolygon> split_model1(int m, double theta)
{
    std::vector<Vec2> const frame{{0, 0}, {2, 0}, {2, 1}, {0, 1}};
    if (theta == kHalfPi)
    {
        return {frame_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, m),
                frame_polygon({{1, 0}, {2, 0}, {2, 1}, {1, 1}}, m)};
    }
    // Line through the centre (1, 1/2) with slope -tan(theta), written with
    // normal (sin, cos) so steep angles stay well conditioned.
    Vec2 normal{std::sin(theta), std::cos(theta)};
    double offset = normal.x + 0.5 * normal.y;
    auto lower = clip_half_plane(frame, normal, offset);
    auto upper = clip_half_plane(frame, {-normal.x, -normal.y}, -offset);
    return {frame_polygon(lower, m), frame_polygon(upper, m)};
}

std::pair<ConvexPolygon, ConvexPolygon> split_model2(int m, double b)
{
    Box2 rect = merged_rectangle(m);
    std::vector<Vec2> const ring{
        rect.lo, {rect.hi.x, rect.lo.y}, rect.hi, {rect.lo.x, rect.hi.y}};
    // Dividing line x2 = -x1/2 + 3/2 - b/2.
    auto rest = clip_half_plane(ring, {1, 2}, 3 - b);
    auto corner = ConvexPolygon::from_vertices({{1 - b, 1}, {1, 1}, {1, 1 - b / 2}});
    return {ConvexPolygon::from_vertices(std::move(rest)), std::move(corner)};
}

Stratum grid_cell(std::vector<int> const& index, int m)
{
    auto edge = [m](int k) { return double(k) / m; };
    Box2 base{{edge(index[0]), edge(index[1])}, {edge(index[0] + 1), edge(index[1] + 1)}};
    std::vector<Interval> ext;
    for (std::size_t j = 2; j < index.size(); ++j)
        ext.push_back({edge(index[j]), edge(index[j] + 1)});
    return Stratum(ConvexPolygon::rectangle(base), std::move(ext));
}
}  // namespace

std::string_view to_string(Family f)
{
    switch (f)
    {
        case Family::Simple:
            return "simple";
        case Family::Jittered:
            return "jittered";
        case Family::ModelI:
            return "model1";
        case Family::ModelII:
            return "model2";
    }
    return "unknown";
}

Family parse_family(std::string_view name)
{
    if (name == "simple")
        return Family::Simple;
    if (name == "jittered")
        return Family::Jittered;
    if (name == "model1")
        return Family::ModelI;
    if (name == "model2")
        return Family::ModelII;
    throw DomainError(fmt::format(
        "unknown family '{}' (expected simple, jittered, model1 or model2)", name));
}

PartitionSpec PartitionSpec::simple(int n, int d)
{
    PartitionSpec s;
    s.family = Family::Simple;
    s.n = n;
    s.d = d;
    s.m = 0;
    return s;
}

PartitionSpec PartitionSpec::jittered(int d, int m)
{
    PartitionSpec s;
    s.family = Family::Jittered;
    s.d = d;
    s.m = m;
    return s;
}

PartitionSpec PartitionSpec::model1(int d, int m, double theta)
{
    PartitionSpec s = jittered(d, m);
    s.family = Family::ModelI;
    s.theta = theta;
    return s;
}

PartitionSpec PartitionSpec::model2(int d, int m, double b)
{
    PartitionSpec s = jittered(d, m);
    s.family = Family::ModelII;
    s.b = b;
    return s;
}

std::size_t PartitionSpec::num_points() const
{
    if (family == Family::Simple)
        return static_cast<std::size_t>(n);
    std::size_t count = 1;
    for (int i = 0; i < d; ++i)
        count *= static_cast<std::size_t>(m);
    return count;
}

bool model2_b_in_range(int m, double b)
{
    double t = m * b;
    return t >= 1.5 - kGeomTolerance && t <= 2.0 + kGeomTolerance;
}

void PartitionSpec::validate() const
{
    if (family == Family::Simple)
    {
        if (n < 1)
            throw DomainError("simple sampling needs n >= 1");
        if (d < 1)
            throw DomainError("dimension d must be >= 1");
        if (static_cast<std::size_t>(n) > kMaxPoints)
            throw DomainError("n is too large");
        return;
    }
    if (d < 2)
        throw DomainError(fmt::format("{} partitions need d >= 2", to_string(family)));
    if (m < 2)
        throw DomainError("grid resolution m must be >= 2");
    if (std::pow(double(m), double(d)) > double(kMaxPoints))
        throw DomainError("m^d is too large");
    if (family == Family::ModelI && !(theta >= 0 && theta <= kHalfPi))
        throw DomainError(fmt::format("theta = {} is outside [0, pi/2]", theta));
    if (family == Family::ModelII && !model2_b_in_range(m, b))
    {
        throw DomainError(fmt::format(
            "b = {} is outside [3/(2m), 2/m] = [{}, {}]", b, 1.5 / m, 2.0 / m));
    }
}

Box2 merged_rectangle(int m)
{
    return {{double(m - 2) / m, double(m - 1) / m}, {1.0, 1.0}};
}

//---------------------------------------------------------------------------//
Partition::Partition(PartitionSpec spec, std::vector<Stratum> strata)
    : spec_(spec), strata_(std::move(strata))
{
}

double Partition::total_measure() const
{
    detail::CompensatedSum sum;
    for (Stratum const& s : strata_)
        sum += s.measure();
    return sum.value();
}

Partition build_partition(PartitionSpec const& spec)
{
    spec.validate();
    if (spec.family == Family::Simple)
        throw DomainError("simple random sampling has no strata; use sample_simple");

    int const d = spec.d;
    int const m = spec.m;
    std::vector<Stratum> strata;
    strata.reserve(spec.num_points());

    switch (spec.family)
    {
        case Family::Jittered: {
            std::vector<int> left(static_cast<std::size_t>(d), m - 1);
            left[0] = m - 2;
            std::vector<int> right(static_cast<std::size_t>(d), m - 1);
            strata.push_back(grid_cell(left, m));
            strata.push_back(grid_cell(right, m));
            break;
        }
        case Family::ModelI: {
            auto [lower, upper] = split_model1(m, spec.theta);
            strata.emplace_back(std::move(lower), corner_extrusion(d, m));
            strata.emplace_back(std::move(upper), corner_extrusion(d, m));
            break;
        }
        case Family::ModelII: {
            auto [rest, corner] = split_model2(m, spec.b);
            strata.emplace_back(std::move(rest), corner_extrusion(d, m));
            strata.emplace_back(std::move(corner), corner_extrusion(d, m));
            break;
        }
        case Family::Simple:
            break;
    }

    // Remaining grid cells, x1 fastest; skip the merged pair.
    std::vector<int> index(static_cast<std::size_t>(d), 0);
    for (std::size_t cell = 0; cell < spec.num_points(); ++cell)
    {
        bool merged = index[0] >= m - 2;
        for (std::size_t j = 1; j < index.size(); ++j)
            merged = merged && index[j] == m - 1;
        if (!merged)
            strata.push_back(grid_cell(index, m));

        for (std::size_t j = 0; j < index.size(); ++j)
        {
            if (++index[j] < m)
                break;
            index[j] = 0;
        }
    }
    return Partition(spec, std::move(strata));
}

}  // namespace stratdisc
