#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "geometry.hpp"

namespace stratdisc
{
enum class Family
{
    Simple,    //!< i.i.d. uniform points, no strata
    Jittered,  //!< m^d grid of cubes
    ModelI,    //!< merged corner pair split through its centre at angle theta
    ModelII,   //!< merged corner pair with a corner triangle of legs b, b/2
};

std::string_view to_string(Family f);
//! Accepts "simple", "jittered", "model1", "model2".
Family parse_family(std::string_view name);

inline constexpr double kHalfPi = 1.57079632679489661923;

//---------------------------------------------------------------------------//
/*!
 * Declarative description of one sampling design.
 *
 * `theta` is read only for ModelI, `b` only for ModelII (in cube units), and
 * `n` only for Simple. Grid families use N = m^d points.
 */
struct PartitionSpec
{
    Family family = Family::Jittered;
    int d = 2;
    int m = 2;
    double theta = 0;
    double b = 0;
    int n = 0;

    static PartitionSpec simple(int n, int d);
    static PartitionSpec jittered(int d, int m);
    static PartitionSpec model1(int d, int m, double theta);
    static PartitionSpec model2(int d, int m, double b);

    //! Number of sample points N.
    std::size_t num_points() const;

    //! Throws DomainError when the parameters are outside the family's range.
    void validate() const;
};

//! ModelII range check: m*b in [3/2, 2] up to kGeomTolerance.
bool model2_b_in_range(int m, double b);

//! The merged rectangle [(m-2)/m, 1] x [(m-1)/m, 1] in coordinates (x1, x2).
Box2 merged_rectangle(int m);

//---------------------------------------------------------------------------//
/*!
 * Ordered list of strata covering [0,1]^d.
 *
 * For every grid family strata 0 and 1 are the two cells of the merged
 * rectangle (stratum 0 holds its lower-left corner); the remaining grid cubes
 * follow in index order with x1 varying fastest.
 */
class Partition
{
  public:
    Partition(PartitionSpec spec, std::vector<Stratum> strata);

    PartitionSpec const& spec() const { return spec_; }
    std::span<const Stratum> strata() const { return strata_; }
    std::size_t size() const { return strata_.size(); }
    Stratum const& operator[](std::size_t i) const { return strata_[i]; }

    double total_measure() const;

  private:
    PartitionSpec spec_;
    std::vector<Stratum> strata_;
};

//! Build the explicit strata. Simple has no strata and is rejected.
Partition build_partition(PartitionSpec const& spec);

}  // namespace stratdisc
