#include "stratdisc/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include <fmt/core.h>

#include "stratdisc/closed_form.hpp"
#include "stratdisc/discrepancy.hpp"
#include "stratdisc/errors.hpp"
#include "stratdisc/estimator.hpp"
#include "stratdisc/geometry.hpp"
#include "stratdisc/io.hpp"
#include "stratdisc/partition.hpp"
#include "stratdisc/rng.hpp"
#include "stratdisc/sampling.hpp"

namespace stratdisc
{
namespace
{
struct Sizes
{
    std::size_t mc_replications;
    int quad_nodes_2d;
    int quad_nodes_3d;
    std::size_t containment_reps;
    std::size_t hit_samples;
    int warnock_grid;
};

Sizes sizes_for(std::string const& suite)
{
    if (suite == "default")
        return {200000, 512, 64, 1000, 1000000, 2000};
    if (suite == "quick")
        return {20000, 128, 32, 100, 200000, 500};
    throw DomainError(fmt::format("unknown suite '{}' (expected default or quick)", suite));
}

double uniform01(std::mt19937_64& gen)
{
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

std::vector<PartitionSpec> mc_specs(int d, int m)
{
    return {PartitionSpec::jittered(d, m),
            PartitionSpec::model1(d, m, 0.2),
            PartitionSpec::model1(d, m, kArctanHalf),
            PartitionSpec::model1(d, m, 1.2),
            PartitionSpec::model2(d, m, 1.5 / m),
            PartitionSpec::model2(d, m, 1.75 / m),
            PartitionSpec::model2(d, m, 2.0 / m)};
}

std::string describe(PartitionSpec const& s)
{
    switch (s.family)
    {
        case Family::ModelI:
            return fmt::format("model1(d={},m={},theta={:.6g})", s.d, s.m, s.theta);
        case Family::ModelII:
            return fmt::format("model2(d={},m={},b={:.6g})", s.d, s.m, s.b);
        case Family::Simple:
            return fmt::format("simple(d={},n={})", s.d, s.n);
        case Family::Jittered:
            break;
    }
    return fmt::format("jittered(d={},m={})", s.d, s.m);
}

// Andrew's monotone chain; counter-clockwise hull.
std::vector<Vec2> convex_hull(std::vector<Vec2> pts)
{
    std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    std::vector<Vec2> hull(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i)
    {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0)
            --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i)
    {
        while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i - 1]) <= 0)
            --k;
        hull[k++] = pts[i - 1];
    }
    hull.resize(k - 1);
    return hull;
}

//---------------------------------------------------------------------------//
CheckResult check_p_anchor()
{
    CheckResult r{1, "P(theta) anchor at arctan(1/2)", true, {}, 0};
    double at = p_theta(kArctanHalf);
    double below = p_theta(kArctanHalf - 1e-8);
    double above = p_theta(kArctanHalf + 1e-8);
    r.passed = at == -0.4 && std::abs(below + 0.4) <= 1e-7 && std::abs(above + 0.4) <= 1e-7
               && std::tan(kArctanHalf - 1e-8) < 0.5 && std::tan(kArctanHalf + 1e-8) > 0.5;
    r.detail = fmt::format("P(atan 1/2) = {}, |P(-1e-8) + 2/5| = {:.3g}, |P(+1e-8) + 2/5| = {:.3g}",
                           format_real(at), std::abs(below + 0.4), std::abs(above + 0.4));
    return r;
}

CheckResult check_degeneration()
{
    CheckResult r{2, "model1(pi/2) equals jittered bit for bit", true, {}, 0};
    int checked = 0;
    for (int d = 1; d <= 4; ++d)
    {
        for (int m = 2; m <= 5; ++m)
        {
            ++checked;
            double a = model1_expected(d, m, kHalfPi).value;
            double b = jittered_expected(d, m);
            if (a != b)
            {
                r.passed = false;
                r.detail += fmt::format("d={} m={}: {} vs {}; ", d, m, format_real(a), format_real(b));
            }
        }
    }
    if (r.passed)
        r.detail = fmt::format("{} (d,m) pairs identical", checked);
    return r;
}

CheckResult check_seam()
{
    CheckResult r{3, "model2(2/m) equals model1(arctan 1/2)", true, {}, 0};
    double worst = 0;
    for (int d : {2, 3})
    {
        for (int m : {2, 3, 4})
        {
            double a = model2_expected(d, m, 2.0 / m).value;
            double b = model1_expected(d, m, kArctanHalf).value;
            worst = std::max(worst, std::abs(a - b) / std::abs(b));
        }
    }
    r.passed = worst <= 1e-14;
    r.detail = fmt::format("max relative difference {:.3g} (tolerance 1e-14)", worst);
    return r;
}

CheckResult check_mc_matrix(Sizes const& sz, SuiteOptions const& opt)
{
    CheckResult r{4, "Monte Carlo vs closed form", true, {}, 0};
    double worst_z = 0;
    std::string worst_spec;
    int runs = 0;
    int retries = 0;
    std::uint64_t seed = opt.seed;
    for (auto [d, m] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2}})
    {
        for (PartitionSpec const& spec : mc_specs(d, m))
        {
            double const cf = expected(spec).value;
            std::uint64_t const spec_seed = seed++;
            auto est = mc_expected_l2sq(spec, sz.mc_replications, spec_seed, opt.workers);
            double z = (est.mean - cf) / est.std_error;
            if (std::abs(z) > 4)
            {
                // One rerun with twice the replications and a fresh seed.
                ++retries;
                est = mc_expected_l2sq(spec, 2 * sz.mc_replications, mix64(spec_seed), opt.workers);
                z = (est.mean - cf) / est.std_error;
            }
            ++runs;
            if (std::abs(z) > 4)
            {
                r.passed = false;
                r.detail += fmt::format("{}: mean {} vs {} (z = {:.2f}); ", describe(spec),
                                        format_real(est.mean), format_real(cf), z);
            }
            if (std::abs(z) >= std::abs(worst_z))
            {
                worst_z = z;
                worst_spec = describe(spec);
            }
        }
    }
    r.detail += fmt::format("{} specs at R = {}, max |z| = {:.2f} ({}), {} reruns", runs,
                            sz.mc_replications, std::abs(worst_z), worst_spec, retries);
    return r;
}

CheckResult check_quadrature(Sizes const& sz, SuiteOptions const& opt)
{
    CheckResult r{5, "partition-identity quadrature vs closed form", true, {}, 0};
    double worst_excess = -1;
    double worst_indicator_2d = 0;
    int runs = 0;
    for (auto [d, m] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2}})
    {
        int const g = d == 2 ? sz.quad_nodes_2d : sz.quad_nodes_3d;
        for (PartitionSpec const& spec : mc_specs(d, m))
        {
            if (spec.family == Family::ModelII)
                continue;
            double const cf = expected(spec).value;
            auto q = prop2_expected_l2sq(spec, g, opt.workers);
            double const err = std::abs(q.value - cf);
            ++runs;
            worst_excess = std::max(worst_excess, err - q.error_indicator);
            bool ok = err <= q.error_indicator + 1e-6;
            if (d == 2)
            {
                worst_indicator_2d = std::max(worst_indicator_2d, q.error_indicator);
                ok = ok && q.error_indicator < 1e-4;
            }
            if (!ok)
            {
                r.passed = false;
                r.detail += fmt::format("{} g={}: |{} - {}| = {:.3g}, indicator {:.3g}; ",
                                        describe(spec), g, format_real(q.value),
                                        format_real(cf), err, q.error_indicator);
            }
        }
    }
    r.detail += fmt::format(
        "{} specs (d=2 g={}, d=3 g={}), max(|err| - indicator) = {:.3g}, max d=2 indicator = {:.3g}",
        runs, sz.quad_nodes_2d, sz.quad_nodes_3d, worst_excess, worst_indicator_2d);
    return r;
}

CheckResult check_warnock(Sizes const& sz, SuiteOptions const& opt)
{
    CheckResult r{6, "Warnock formula vs direct quadrature", true, {}, 0};
    double worst = 0;
    std::mt19937_64 gen(opt.seed ^ 0x5eedULL);
    for (int set = 0; set < 50; ++set)
    {
        std::size_t const d = 1 + static_cast<std::size_t>(set % 2);
        std::size_t const n = 1 + static_cast<std::size_t>(gen() % 8);
        std::vector<double> coords(n * d);
        for (double& c : coords)
            c = uniform01(gen);
        PointSet ps(d, std::move(coords));
        double diff = std::abs(l2_star_squared(ps).l2_squared
                               - l2_star_squared_bruteforce(ps, sz.warnock_grid));
        worst = std::max(worst, diff);
    }
    double a0 = l2_star_squared(PointSet(1, {0.0})).l2_squared;
    double a1 = l2_star_squared(PointSet(1, {1.0})).l2_squared;
    double a2 = l2_star_squared(PointSet(1, {0.25, 0.75})).l2_squared;
    double anchor_err = std::max({std::abs(a0 - 1.0 / 3), std::abs(a1 - 1.0 / 3), std::abs(a2 - 1.0 / 48)});
    r.passed = worst <= 5e-3 && anchor_err <= 1e-12;
    r.detail = fmt::format("50 random sets at grid {}: max diff {:.3g} (tol 5e-3); anchors max err {:.3g}",
                           sz.warnock_grid, worst, anchor_err);
    return r;
}

CheckResult check_dominance()
{
    CheckResult r{7, "P(theta) sign/monotonicity and model2 dominance", true, {}, 0};
    auto const thetas = linspace(0, kHalfPi, 200);
    std::vector<double> ps;
    for (double t : thetas)
        ps.push_back(p_theta(t));

    bool sign_ok = ps.front() == 0 && ps.back() == 0;
    for (std::size_t i = 1; i + 1 < ps.size(); ++i)
        sign_ok = sign_ok && ps[i] < 0;
    bool mono_ok = true;
    for (std::size_t i = 1; i < ps.size(); ++i)
    {
        if (thetas[i] <= kArctanHalf)
            mono_ok = mono_ok && ps[i] < ps[i - 1];
        else if (thetas[i - 1] >= kArctanHalf)
            mono_ok = mono_ok && ps[i] > ps[i - 1];
    }

    bool dom_ok = true;
    double min_gap = INFINITY;
    for (int d : {2, 3})
    {
        for (int m : {2, 3, 4})
        {
            double best1 = INFINITY;
            for (double t : thetas)
                best1 = std::min(best1, model1_expected(d, m, t).value);
            for (double b : linspace(1.5 / m, 2.0 / m, 11))
            {
                double v = model2_expected(d, m, b).value;
                min_gap = std::min(min_gap, (best1 - v) / best1);
                if (!(v < best1))
                {
                    dom_ok = false;
                    r.detail += fmt::format("d={} m={} b={}: {} >= {}; ", d, m, b,
                                            format_real(v), format_real(best1));
                }
            }
        }
    }
    r.passed = sign_ok && mono_ok && dom_ok;
    r.detail += fmt::format("sign {}, monotone {}, dominance {} (min relative gap {:.3g})",
                            sign_ok ? "ok" : "FAIL", mono_ok ? "ok" : "FAIL",
                            dom_ok ? "ok" : "FAIL", min_gap);
    return r;
}

CheckResult check_geometry(Sizes const& sz, SuiteOptions const& opt)
{
    CheckResult r{8, "geometry: measures, containment, clipping", true, {}, 0};

    // Measures.
    double worst_sum = 0;
    double worst_corner = 0;
    double worst_equi = 0;
    for (int d : {2, 3})
    {
        for (int m : {2, 3, 4})
        {
            std::vector<PartitionSpec> specs{PartitionSpec::jittered(d, m)};
            for (int k = 0; k <= 15; ++k)
                specs.push_back(PartitionSpec::model1(d, m, std::min(0.1 * k, kHalfPi)));
            specs.push_back(PartitionSpec::model1(d, m, kHalfPi));
            for (double b : linspace(1.5 / m, 2.0 / m, 11))
                specs.push_back(PartitionSpec::model2(d, m, b));
            double const n = std::pow(double(m), d);
            for (auto const& spec : specs)
            {
                Partition p = build_partition(spec);
                worst_sum = std::max(worst_sum, std::abs(p.total_measure() - 1));
                if (spec.family == Family::ModelII)
                {
                    double want = spec.b * spec.b / 4 * std::pow(double(m), -(d - 2));
                    worst_corner = std::max(worst_corner, std::abs(p[1].measure() - want));
                }
                else
                {
                    for (Stratum const& s : p.strata())
                        worst_equi = std::max(worst_equi, std::abs(s.measure() - 1 / n));
                }
            }
        }
    }

    // Containment.
    std::size_t outside = 0;
    std::size_t drawn = 0;
    for (int d : {2, 3})
    {
        for (int m : {2, 3})
        {
            for (auto const& spec : mc_specs(d, m))
            {
                Partition p = build_partition(spec);
                for (std::size_t rep = 0; rep < sz.containment_reps; ++rep)
                {
                    PointSet ps = sample_partition(p, opt.seed, rep);
                    for (std::size_t i = 0; i < ps.size(); ++i)
                    {
                        ++drawn;
                        if (!p[i].contains(ps.point(i)))
                            ++outside;
                    }
                }
            }
        }
    }

    // Clipping vs hit counting.
    std::mt19937_64 gen(opt.seed ^ 0xc11bULL);
    double worst_sigma = 0;
    int const polygons = 20;
    for (int k = 0; k < polygons; ++k)
    {
        std::vector<Vec2> pts(3 + gen() % 8);
        for (Vec2& v : pts)
            v = {uniform01(gen), uniform01(gen)};
        auto poly = ConvexPolygon::try_from_vertices(convex_hull(pts));
        if (!poly)
            continue;
        Vec2 xmax{uniform01(gen), uniform01(gen)};
        double const clipped = clipped_area(*poly, xmax);
        std::size_t hits = 0;
        for (std::size_t s = 0; s < sz.hit_samples; ++s)
        {
            Vec2 p{uniform01(gen), uniform01(gen)};
            if (p.x <= xmax.x && p.y <= xmax.y && poly->contains(p, 0.0))
                ++hits;
        }
        double const est = static_cast<double>(hits) / static_cast<double>(sz.hit_samples);
        double const sigma = std::sqrt(clipped * (1 - clipped) / static_cast<double>(sz.hit_samples));
        double const dev = std::abs(est - clipped) / std::max(sigma, 1e-300);
        if (std::abs(est - clipped) > 4 * sigma + 1e-12)
        {
            r.passed = false;
            r.detail += fmt::format("polygon {}: clipped {} vs hit-count {}; ", k,
                                    format_real(clipped), format_real(est));
        }
        if (sigma > 0)
            worst_sigma = std::max(worst_sigma, dev);
    }

    r.passed = r.passed && worst_sum <= 1e-12 && worst_corner <= 1e-12 && worst_equi <= 1e-12
               && outside == 0;
    r.detail += fmt::format(
        "sum err {:.2g}, equivolume err {:.2g}, corner measure err {:.2g}; "
        "{} of {} points outside their stratum; clipping max {:.2f} sigma",
        worst_sum, worst_equi, worst_corner, outside, drawn, worst_sigma);
    return r;
}

CheckResult check_p_theta_curve()
{
    CheckResult r{9, "P(theta) curve from the sweep CSV", true, {}, 0};
    int const d = 2;
    int const m = 2;
    auto grid = linspace(0, kHalfPi, 200);
    grid.push_back(kArctanHalf);
    std::sort(grid.begin(), grid.end());
    std::ostringstream csv;
    write_sweep_csv(csv, sweep(Family::ModelI, d, m, grid));

    std::istringstream in(csv.str());
    std::string line;
    std::getline(in, line);
    bool header_ok = line == "param,value,baseline,correction";
    double const scale = std::pow(3.0, d) * std::pow(double(m), 3 * d);
    std::vector<std::pair<double, double>> curve;
    while (std::getline(in, line))
    {
        std::istringstream row(line);
        std::string f[4];
        for (auto& s : f)
            std::getline(row, s, ',');
        curve.emplace_back(std::stod(f[0]), std::stod(f[3]) * scale);
    }
    auto argmin = std::min_element(curve.begin(), curve.end(),
                                   [](auto a, auto b) { return a.second < b.second; });
    std::size_t at_min = 0;
    for (auto const& [t, p] : curve)
        at_min += std::abs(p - argmin->second) <= 1e-12 ? 1 : 0;

    r.passed = header_ok && curve.size() == grid.size() && curve.front().second == 0
               && curve.back().second == 0 && argmin->first == kArctanHalf
               && std::abs(argmin->second + 0.4) <= 1e-12 && at_min == 1;
    r.detail = fmt::format("{} rows, endpoints {} / {}, minimum {} at theta = {}", curve.size(),
                           curve.front().second, curve.back().second, format_real(argmin->second),
                           format_real(argmin->first));
    return r;
}
}  // namespace

std::vector<std::string> suite_names()
{
    return {"default", "quick"};
}

std::vector<CheckResult> run_suite(SuiteOptions const& options, CheckReporter const& report)
{
    Sizes const sz = sizes_for(options.suite);
    std::vector<std::function<CheckResult()>> checks{
        [] { return check_p_anchor(); },
        [] { return check_degeneration(); },
        [] { return check_seam(); },
        [&] { return check_mc_matrix(sz, options); },
        [&] { return check_quadrature(sz, options); },
        [&] { return check_warnock(sz, options); },
        [] { return check_dominance(); },
        [&] { return check_geometry(sz, options); },
        [] { return check_p_theta_curve(); },
    };

    std::vector<CheckResult> results;
    for (auto const& check : checks)
    {
        auto start = std::chrono::steady_clock::now();
        CheckResult res = check();
        res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (report)
            report(res);
        results.push_back(std::move(res));
    }
    return results;
}

std::string format_check(CheckResult const& r)
{
    return fmt::format("[{}] {} {}: {} ({:.2f} s)", r.passed ? "PASS" : "FAIL", r.id, r.name,
                       r.detail, r.seconds);
}

}  // namespace stratdisc
