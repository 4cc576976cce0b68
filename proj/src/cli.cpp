#include "stratdisc/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "stratdisc/closed_form.hpp"
#include "stratdisc/discrepancy.hpp"
#include "stratdisc/errors.hpp"
#include "stratdisc/estimator.hpp"
#include "stratdisc/io.hpp"
#include "stratdisc/verify.hpp"

namespace stratdisc
{
namespace
{
constexpr std::uint64_t kDefaultSeed = 1;
constexpr char const* kSeedEnv = "STRATDISC_SEED";

class VerificationFailed : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

std::uint64_t parse_seed(std::string const& text)
{
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw DomainError(fmt::format("seed '{}' is not an unsigned 64-bit integer", text));
    return v;
}

nlohmann::json config_json(RunConfig const& c)
{
    nlohmann::json j{{"subcommand", c.subcommand}, {"d", c.d},      {"m", c.m},
                     {"n", c.n},                   {"reps", c.reps}, {"seed", c.seed},
                     {"replication", c.replication}, {"grid", c.grid}, {"format", c.format},
                     {"suite", c.suite},           {"workers", c.workers}};
    j["family"] = c.family;
    j["theta"] = c.theta.empty() ? nlohmann::json(nullptr) : nlohmann::json(parse_parameter(c.theta));
    j["b"] = c.b.empty() ? nlohmann::json(nullptr) : nlohmann::json(parse_parameter(c.b));
    j["values"] = c.values;
    j["input"] = c.input;
    j["out"] = c.out;
    return j;
}

PartitionSpec resolve_spec(RunConfig const& c)
{
    if (c.family.empty())
        throw DomainError("--family is required");
    PartitionSpec spec;
    switch (parse_family(c.family))
    {
        case Family::Simple:
            if (c.n < 1)
                throw DomainError("family simple needs --n >= 1");
            spec = PartitionSpec::simple(c.n, c.d);
            break;
        case Family::Jittered:
            spec = PartitionSpec::jittered(c.d, c.m);
            break;
        case Family::ModelI:
            if (c.theta.empty())
                throw DomainError("family model1 needs --theta");
            spec = PartitionSpec::model1(c.d, c.m, parse_parameter(c.theta));
            break;
        case Family::ModelII:
            if (c.b.empty())
                throw DomainError("family model2 needs --b");
            spec = PartitionSpec::model2(c.d, c.m, parse_parameter(c.b));
            break;
    }
    spec.validate();
    return spec;
}

// Writes to --out when given, otherwise to `out`.
void emit(RunConfig const& c, std::ostream& out, std::string const& text)
{
    if (c.out.empty() || c.out == "-")
    {
        out << text;
        return;
    }
    std::ofstream file(c.out, std::ios::binary);
    if (!file)
        throw IoError(fmt::format("cannot open '{}' for writing", c.out));
    file << text;
    if (!file)
        throw IoError(fmt::format("failed writing '{}'", c.out));
}

std::string dump(nlohmann::json const& j)
{
    return dump_json(j) + "\n";
}

void run_sample(RunConfig const& c, std::ostream& out)
{
    PointSet ps = sample_spec(resolve_spec(c), c.seed, c.replication);
    if (c.format == "json")
    {
        auto j = to_json(ps);
        j["replication"] = c.replication;
        j["config"] = config_json(c);
        emit(c, out, dump(j));
        return;
    }
    std::ostringstream csv;
    write_points_csv(csv, ps);
    emit(c, out, csv.str());
}

void run_discrepancy(RunConfig const& c, std::ostream& out)
{
    if (c.input.empty())
        throw DomainError("--input is required");
    std::ifstream file(c.input);
    if (!file)
        throw IoError(fmt::format("cannot open '{}'", c.input));
    PointSet ps = read_points_csv(file);
    DiscrepancyValue v = l2_star_squared(ps);
    nlohmann::json j{{"n", v.n}, {"d", v.d}, {"l2_squared", v.l2_squared}, {"l2", v.l2()}};
    j["config"] = config_json(c);
    emit(c, out, dump(j));
}

void run_expected(RunConfig const& c, std::ostream& out)
{
    PartitionSpec spec;
    if (c.family == "model1")
    {
        // The closed form also accepts d = 1.
        if (c.theta.empty())
            throw DomainError("family model1 needs --theta");
        auto j = to_json(model1_expected(c.d, c.m, parse_parameter(c.theta)));
        j["config"] = config_json(c);
        emit(c, out, dump(j));
        return;
    }
    if (c.family == "jittered")
    {
        ClosedFormResult r;
        r.params = PartitionSpec::jittered(c.d, c.m);
        r.value = r.components.baseline = jittered_expected(c.d, c.m);
        auto j = to_json(r);
        j["config"] = config_json(c);
        emit(c, out, dump(j));
        return;
    }
    auto j = to_json(expected(resolve_spec(c)));
    j["config"] = config_json(c);
    emit(c, out, dump(j));
}

void run_sweep(RunConfig const& c, std::ostream& out)
{
    if (c.family.empty())
        throw DomainError("--family is required");
    Family const family = parse_family(c.family);
    std::vector<double> grid;
    if (!c.values.empty())
    {
        for (auto const& v : c.values)
            grid.push_back(parse_parameter(v));
    }
    else
    {
        grid = default_grid(family, c.m, c.grid);
    }
    SweepTable table = sweep(family, c.d, c.m, grid);
    if (c.format == "json")
    {
        auto j = to_json(table);
        j["config"] = config_json(c);
        emit(c, out, dump(j));
        return;
    }
    std::ostringstream csv;
    write_sweep_csv(csv, table);
    emit(c, out, csv.str());
}

void run_estimate(RunConfig const& c, std::ostream& out)
{
    PartitionSpec const spec = resolve_spec(c);
    McEstimate est = mc_expected_l2sq(spec, c.reps, c.seed, c.workers);
    double const cf = expected(spec).value;
    nlohmann::json j = to_json(est);
    j["closed_form"] = cf;
    j["z_score"] = est.std_error > 0 ? (est.mean - cf) / est.std_error : 0.0;
    j["spec"] = to_json(spec);
    j["config"] = config_json(c);
    emit(c, out, dump(j));
}

void run_verify(RunConfig const& c, std::ostream& out)
{
    SuiteOptions opt;
    opt.suite = c.suite;
    opt.seed = c.seed;
    opt.workers = c.workers;
    auto results = run_suite(opt, [&](CheckResult const& r) { out << format_check(r) << std::endl; });
    auto failed = std::count_if(results.begin(), results.end(), [](auto const& r) { return !r.passed; });
    out << fmt::format("{} of {} checks passed\n", results.size() - static_cast<std::size_t>(failed),
                       results.size());
    if (failed > 0)
        throw VerificationFailed(fmt::format("{} check(s) failed", failed));
}

void run_describe(RunConfig const& c, std::ostream& out)
{
    auto j = to_json(build_partition(resolve_spec(c)));
    j["config"] = config_json(c);
    emit(c, out, dump(j));
}

void add_spec_options(CLI::App* sub, RunConfig& c)
{
    sub->add_option("--family", c.family, "simple | jittered | model1 | model2");
    sub->add_option("--d", c.d, "dimension");
    sub->add_option("--m", c.m, "grid resolution (N = m^d)");
    sub->add_option("--theta", c.theta, "model1 cut angle in [0, pi/2]; accepts pi/2, arctan(1/2)");
    sub->add_option("--b", c.b, "model2 corner leg in [3/(2m), 2/m]");
    sub->add_option("--n", c.n, "point count for family simple");
}

void add_seed_option(CLI::App* sub, std::string& seed_text)
{
    sub->add_option("--seed", seed_text, fmt::format("master seed (default ${} or {})", kSeedEnv, kDefaultSeed));
}

void add_output_options(CLI::App* sub, RunConfig& c, bool csv_allowed)
{
    sub->add_option("--out", c.out, "output file (default stdout)");
    if (csv_allowed)
        sub->add_option("--format", c.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
}
}  // namespace

double parse_parameter(std::string const& text)
{
    if (text == "pi/2")
        return kHalfPi;
    if (text == "arctan(1/2)" || text == "atan(1/2)")
        return kArctanHalf;
    double v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw DomainError(fmt::format("'{}' is not a number", text));
    return v;
}

int run_cli(std::vector<std::string> const& args, std::ostream& out, std::ostream& err)
{
    RunConfig c;
    std::string seed_text;

    CLI::App app{"Stratified sampling partitions and their expected L2 star discrepancy"};
    app.name("stratdisc");
    app.require_subcommand(1);
    app.add_option("--workers", c.workers, "worker threads (default: available parallelism)");

    auto* sample = app.add_subcommand("sample", "draw one stratified point set");
    add_spec_options(sample, c);
    add_seed_option(sample, seed_text);
    sample->add_option("--rep", c.replication, "replication index");
    add_output_options(sample, c, true);

    auto* disc = app.add_subcommand("discrepancy", "squared L2 star discrepancy of a point CSV");
    disc->add_option("--input", c.input, "CSV with header x1..xd")->required();
    add_output_options(disc, c, false);

    auto* expect = app.add_subcommand("expected", "closed-form expected squared L2 discrepancy");
    add_spec_options(expect, c);
    add_output_options(expect, c, false);

    auto* sw = app.add_subcommand("sweep", "closed form over a theta or b grid");
    add_spec_options(sw, c);
    sw->add_option("--grid", c.grid, "number of evenly spaced grid values (default 200)");
    sw->add_option("--values", c.values, "explicit parameter values")->delimiter(',');
    add_output_options(sw, c, true);

    auto* est = app.add_subcommand("estimate", "Monte Carlo estimate against the closed form");
    add_spec_options(est, c);
    add_seed_option(est, seed_text);
    est->add_option("--reps", c.reps, "replications (default 200000)");
    est->add_option("--workers", c.workers, "worker threads");
    add_output_options(est, c, false);

    auto* ver = app.add_subcommand("verify", "run the oracle-agreement suite");
    ver->add_option("--suite", c.suite, "default | quick");
    add_seed_option(ver, seed_text);
    ver->add_option("--workers", c.workers, "worker threads");

    auto* desc = app.add_subcommand("describe", "partition strata as JSON");
    add_spec_options(desc, c);
    add_output_options(desc, c, false);

    try
    {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (CLI::CallForHelp const&)
    {
        out << app.help();
        return kExitOk;
    }
    catch (CLI::CallForAllHelp const&)
    {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    }
    catch (CLI::ParseError const& e)
    {
        err << "error: " << e.what() << '\n';
        return kExitInvalidConfig;
    }

    try
    {
        c.subcommand = app.get_subcommands().front()->get_name();
        if (!seed_text.empty())
            c.seed = parse_seed(seed_text);
        else if (char const* env = std::getenv(kSeedEnv); env && *env)
            c.seed = parse_seed(env);
        else
            c.seed = kDefaultSeed;
        if (c.workers == 0)
            c.workers = std::max(1u, std::thread::hardware_concurrency());
        if (c.format.empty())
            c.format = c.subcommand == "sample" || c.subcommand == "sweep" ? "csv" : "json";

        if (c.subcommand == "sample")
            run_sample(c, out);
        else if (c.subcommand == "discrepancy")
            run_discrepancy(c, out);
        else if (c.subcommand == "expected")
            run_expected(c, out);
        else if (c.subcommand == "sweep")
            run_sweep(c, out);
        else if (c.subcommand == "estimate")
            run_estimate(c, out);
        else if (c.subcommand == "verify")
            run_verify(c, out);
        else if (c.subcommand == "describe")
            run_describe(c, out);
    }
    catch (DomainError const& e)
    {
        err << "error: " << e.what() << '\n';
        return kExitInvalidConfig;
    }
    catch (IoError const& e)
    {
        err << "error: " << e.what() << '\n';
        return kExitIoFailure;
    }
    catch (VerificationFailed const& e)
    {
        err << "error: " << e.what() << '\n';
        return kExitVerificationFailed;
    }
    catch (std::exception const& e)
    {
        err << "error: " << e.what() << '\n';
        return kExitVerificationFailed;
    }
    return kExitOk;
}

}  // namespace stratdisc
