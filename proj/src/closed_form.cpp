#include "stratdisc/closed_form.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/core.h>

#include "stratdisc/errors.hpp"

namespace stratdisc
{
const double kArctanHalf = std::atan(0.5);

namespace
{
double ipow(double base, int e)
{
    double r = 1;
    for (int i = 0; i < e; ++i)
        r *= base;
    return r;
}

void check_grid(int d, int m, int min_d)
{
    if (d < min_d)
        throw DomainError(fmt::format("dimension d must be >= {}", min_d));
    if (m < 2)
        throw DomainError("grid resolution m must be >= 2");
}

double checked_t(double b, int m)
{
    if (!model2_b_in_range(m, b))
    {
        throw DomainError(fmt::format(
            "b = {} is outside [3/(2m), 2/m] = [{}, {}]", b, 1.5 / m, 2.0 / m));
    }
    return std::clamp(m * b, 1.5, 2.0);
}
void check_t(double t)
{
    if (!(t >= 1.5 && t <= 2.0))
        throw DomainError(fmt::format("t = m*b = {} is outside [3/2, 2]", t));
}
}  // namespace

double jittered_expected(int d, int m)
{
    check_grid(d, m, 1);
    // a^d - b^d = (a - b) sum_k a^k b^(d-1-k) with a - b = 1/6 exactly.
    double const a = 0.5 * m;
    double const b = 0.5 * (m - 1) + 1.0 / 3.0;
    double sum = 0;
    for (int k = 0; k < d; ++k)
        sum += ipow(a, k) * ipow(b, d - 1 - k);
    return sum / 6.0 / ipow(m, 2 * d);
}

double simple_expected(int n, int d)
{
    if (n < 1 || d < 1)
        throw DomainError("simple sampling needs n >= 1 and d >= 1");
    return (std::pow(2.0, -d) - std::pow(3.0, -d)) / n;
}

double p_theta(double theta)
{
    if (!(theta >= 0 && theta <= kHalfPi))
        throw DomainError(fmt::format("theta = {} is outside [0, pi/2]", theta));
    if (theta == kHalfPi)
        return 0.0;
    if (theta == kArctanHalf)
        return -0.4;

    double const t = std::tan(theta);
    if (t < 0.5)
        return t * (t * (0.4 * t + 1.2) - 1.5);
    if (t == 0.5)
        return -0.4;
    double const c = std::cos(theta) / std::sin(theta);
    return c * (-3.0 / 8.0 + c * (3.0 / 40.0 + c / 160.0));
}

double p0_of_t(double t)
{
    check_t(t);
    double const t2 = t * t;
    return (8 - t2) / 3 - 16 / (24 - 3 * t2);
}

double p1_of_t(double t)
{
    check_t(t);
    double const t2 = t * t;
    double const t3 = t2 * t;
    return t2 * t2 / 40 + 114 * t2 / 40 + 19.0 / 5.0
           - (6 * t3 - 3 * t3 * t2 + 352) / (40 - 5 * t2);
}

double p0(double b, int m)
{
    return p0_of_t(checked_t(b, m));
}

double p1(double b, int m)
{
    return p1_of_t(checked_t(b, m));
}

ClosedFormResult model1_expected(int d, int m, double theta)
{
    check_grid(d, m, 1);
    ClosedFormResult r;
    r.params = PartitionSpec::model1(d, m, theta);
    r.p = p_theta(theta);
    r.components.baseline = jittered_expected(d, m);
    r.components.correction = *r.p / (ipow(3, d) * ipow(m, 3 * d));
    r.value = r.components.baseline + r.components.correction;
    return r;
}

ClosedFormResult model2_expected(int d, int m, double b)
{
    check_grid(d, m, 2);
    double const t = checked_t(b, m);
    double const scale = ipow(m, 3 * d);
    ClosedFormResult r;
    r.params = PartitionSpec::model2(d, m, b);
    r.p0 = p0_of_t(t);
    r.p1 = p1_of_t(t);
    r.components.baseline = jittered_expected(d, m);
    r.components.correction = -*r.p0 / (ipow(2, d) * scale) - *r.p1 / (ipow(3, d) * scale);
    r.value = r.components.baseline + r.components.correction;
    return r;
}

ClosedFormResult expected(PartitionSpec const& spec)
{
    switch (spec.family)
    {
        case Family::Simple: {
            spec.validate();
            ClosedFormResult r;
            r.params = spec;
            r.value = r.components.baseline = simple_expected(spec.n, spec.d);
            return r;
        }
        case Family::Jittered: {
            spec.validate();
            ClosedFormResult r;
            r.params = spec;
            r.value = r.components.baseline = jittered_expected(spec.d, spec.m);
            return r;
        }
        case Family::ModelI:
            spec.validate();
            return model1_expected(spec.d, spec.m, spec.theta);
        case Family::ModelII:
            return model2_expected(spec.d, spec.m, spec.b);
    }
    throw DomainError("unknown family");
}

SweepTable sweep(Family family, int d, int m, std::span<const double> param_grid)
{
    if (family != Family::ModelI && family != Family::ModelII)
        throw DomainError("sweeps are defined for model1 (theta) and model2 (b)");
    SweepTable table{family, d, m, {}};
    table.rows.reserve(param_grid.size());
    for (double v : param_grid)
    {
        auto r = family == Family::ModelI ? model1_expected(d, m, v) : model2_expected(d, m, v);
        table.rows.push_back({v, r});
    }
    return table;
}

std::vector<double> linspace(double lo, double hi, int n)
{
    if (n < 1)
        throw DomainError("grid must have at least one point");
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    if (n > 1)
        out.back() = hi;
    return out;
}

std::vector<double> default_grid(Family family, int m, int n)
{
    if (family == Family::ModelI)
        return linspace(0, kHalfPi, n);
    if (family == Family::ModelII)
    {
        if (m < 2)
            throw DomainError("grid resolution m must be >= 2");
        return linspace(1.5 / m, 2.0 / m, n);
    }
    throw DomainError("sweeps are defined for model1 (theta) and model2 (b)");
}

}  // namespace stratdisc
