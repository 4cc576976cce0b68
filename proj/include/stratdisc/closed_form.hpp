#pragma once

#include <optional>
#include <span>
#include <vector>

#include "partition.hpp"

namespace stratdisc
{
//! arctan(1/2): the ModelI angle whose cut is the merged rectangle's diagonal.
extern const double kArctanHalf;

//---------------------------------------------------------------------------//
/*!
 * Expected squared L2 star discrepancy of one design, split into the
 * jittered baseline and the family's correction term.
 */
struct ClosedFormResult
{
    struct Components
    {
        double baseline = 0;
        double correction = 0;
    };

    double value = 0;
    PartitionSpec params;
    Components components;
    //! Correction polynomials: p for ModelI, p0/p1 for ModelII.
    std::optional<double> p;
    std::optional<double> p0;
    std::optional<double> p1;
};

//! (1/m^{2d}) [ (m/2)^d - ((m-1)/2 + 1/3)^d ], m >= 2, d >= 1.
double jittered_expected(int d, int m);

//! (2^-d - 3^-d) / n for n i.i.d. uniform points.
double simple_expected(int n, int d);

//! Piecewise correction polynomial in tan(theta); theta in [0, pi/2].
double p_theta(double theta);

//! Corrections of the unequal split, in t = m*b with t in [3/2, 2].
double p0_of_t(double t);
double p1_of_t(double t);
double p0(double b, int m);
double p1(double b, int m);

//! Jittered baseline + P(theta) / (3^d m^{3d}). Accepts d >= 1 so the
//! degeneration identity can be checked for d = 1 as well.
ClosedFormResult model1_expected(int d, int m, double theta);

//! Jittered baseline - P0/(2^d m^{3d}) - P1/(3^d m^{3d}); b in [3/(2m), 2/m].
ClosedFormResult model2_expected(int d, int m, double b);

//! Dispatch on spec.family (Simple and Jittered have zero correction).
ClosedFormResult expected(PartitionSpec const& spec);

//---------------------------------------------------------------------------//
struct SweepRow
{
    double param = 0;
    ClosedFormResult result;
};

struct SweepTable
{
    Family family = Family::ModelI;
    int d = 2;
    int m = 2;
    std::vector<SweepRow> rows;
};

//! Evaluate the closed form of a ModelI (theta) or ModelII (b) family over a
//! parameter grid.
SweepTable sweep(Family family, int d, int m, std::span<const double> param_grid);

//! n evenly spaced values from lo to hi inclusive (n == 1 gives {lo}).
std::vector<double> linspace(double lo, double hi, int n);

//! The family's full parameter range sampled at n points.
std::vector<double> default_grid(Family family, int m, int n);

}  // namespace stratdisc
