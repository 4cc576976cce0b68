#include "stratdisc/discrepancy.hpp"

#include <algorithm>
#include <vector>

#include <fmt/core.h>

#include "compensated_sum.hpp"
#include "stratdisc/errors.hpp"

namespace stratdisc
{
namespace
{
void check_unit_cube(std::span<const double> coords)
{
    for (double v : coords)
    {
        if (!(v >= 0 && v <= 1))
            throw DomainError(fmt::format("coordinate {} lies outside [0, 1]", v));
    }
}
}  // namespace

double l2_star_squared(std::span<const double> coords, std::size_t d)
{
    if (d == 0)
        throw DomainError("dimension must be >= 1");
    check_unit_cube(coords);
    std::size_t const n = coords.size() / d;
    if (n == 0)
        throw DomainError("point set is empty");

    auto x = [&](std::size_t i, std::size_t j) { return coords[i * d + j]; };

    detail::CompensatedSum single;
    for (std::size_t i = 0; i < n; ++i)
    {
        double prod = 1;
        for (std::size_t j = 0; j < d; ++j)
            prod *= 0.5 * (1 - x(i, j) * x(i, j));
        single += prod;
    }

    // Pairwise kernel is symmetric: diagonal once, upper triangle twice.
    detail::CompensatedSum pairs;
    for (std::size_t i = 0; i < n; ++i)
    {
        double diag = 1;
        for (std::size_t j = 0; j < d; ++j)
            diag *= 1 - x(i, j);
        pairs += diag;
        for (std::size_t k = i + 1; k < n; ++k)
        {
            double prod = 1;
            for (std::size_t j = 0; j < d; ++j)
                prod *= 1 - std::max(x(i, j), x(k, j));
            pairs += 2 * prod;
        }
    }

    double const nn = static_cast<double>(n);
    detail::CompensatedSum total;
    total += std::pow(3.0, -static_cast<double>(d));
    total += -2 / nn * single.value();
    total += pairs.value() / (nn * nn);
    return std::max(0.0, total.value());
}

DiscrepancyValue l2_star_squared(PointSet const& ps)
{
    return {l2_star_squared(ps.coords(), ps.dim()), ps.size(), ps.dim()};
}

double discrepancy_function(PointSet const& ps, std::span<const double> z)
{
    if (z.size() != ps.dim())
        throw DomainError("anchor dimension does not match the point set");
    double volume = 1;
    for (double zj : z)
        volume *= zj;
    std::size_t count = 0;
    for (std::size_t i = 0; i < ps.size(); ++i)
    {
        auto p = ps.point(i);
        bool inside = true;
        for (std::size_t j = 0; j < z.size() && inside; ++j)
            inside = p[j] < z[j];
        count += inside ? 1 : 0;
    }
    return volume - static_cast<double>(count) / static_cast<double>(ps.size());
}

double l2_star_squared_bruteforce(PointSet const& ps, int grid_per_axis)
{
    std::size_t const d = ps.dim();
    if (d > 3)
        throw DomainError("brute-force quadrature is limited to d <= 3");
    if (grid_per_axis < 1)
        throw DomainError("grid_per_axis must be >= 1");
    check_unit_cube(ps.coords());

    std::size_t const g = static_cast<std::size_t>(grid_per_axis);
    std::size_t const n = ps.size();
    double const h = 1.0 / static_cast<double>(g);

    // first[i*d+j]: smallest node index k with (k+1/2)h > x_ij, i.e. the
    // first node along axis j whose half-open box contains point i.
    std::vector<std::size_t> first(n * d);
    for (std::size_t i = 0; i < n; ++i)
    {
        for (std::size_t j = 0; j < d; ++j)
        {
            double x = ps.point(i)[j];
            auto k = static_cast<std::size_t>(std::max(0.0, std::floor(x * g - 0.5)));
            while (k < g && (k + 0.5) * h <= x)
                ++k;
            while (k > 0 && (k - 0.5) * h > x)
                --k;
            first[i * d + j] = k;
        }
    }

    std::size_t nodes = 1;
    for (std::size_t j = 0; j < d; ++j)
        nodes *= g;

    detail::CompensatedSum sum;
    std::vector<std::size_t> idx(d, 0);
    for (std::size_t node = 0; node < nodes; ++node)
    {
        double volume = 1;
        for (std::size_t j = 0; j < d; ++j)
            volume *= (static_cast<double>(idx[j]) + 0.5) * h;
        std::size_t count = 0;
        for (std::size_t i = 0; i < n; ++i)
        {
            bool inside = true;
            for (std::size_t j = 0; j < d && inside; ++j)
                inside = idx[j] >= first[i * d + j];
            count += inside ? 1 : 0;
        }
        double delta = volume - static_cast<double>(count) / static_cast<double>(n);
        sum += delta * delta;

        for (std::size_t j = 0; j < d; ++j)
        {
            if (++idx[j] < g)
                break;
            idx[j] = 0;
        }
    }
    return sum.value() / static_cast<double>(nodes);
}

}  // namespace stratdisc
