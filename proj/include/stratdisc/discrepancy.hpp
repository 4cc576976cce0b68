#pragma once

#include <cmath>
#include <cstddef>
#include <span>

#include "sampling.hpp"

namespace stratdisc
{
struct DiscrepancyValue
{
    double l2_squared = 0;
    std::size_t n = 0;
    std::size_t d = 0;

    double l2() const { return std::sqrt(l2_squared); }
};

//---------------------------------------------------------------------------//
/*!
 * Squared L2 star discrepancy by Warnock's closed form:
 *
 *   3^-d - (2/N) sum_i prod_j (1 - x_ij^2)/2
 *        + (1/N^2) sum_{i,k} prod_j (1 - max(x_ij, x_kj)).
 *
 * O(N^2 d). Throws DomainError for coordinates outside [0,1].
 */
DiscrepancyValue l2_star_squared(PointSet const& ps);

//! Same on raw row-major coordinates; the Monte Carlo hot path.
double l2_star_squared(std::span<const double> coords, std::size_t d);

//! Δ(z) = prod z_j - #{i : x_i < z componentwise} / N (half-open box).
double discrepancy_function(PointSet const& ps, std::span<const double> z);

//! Midpoint-rule quadrature of Δ^2 on grid_per_axis^d nodes; d <= 3.
double l2_star_squared_bruteforce(PointSet const& ps, int grid_per_axis);

}  // namespace stratdisc
