#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "partition.hpp"

namespace stratdisc
{
//! Single-pass mean/variance (Welford) with an ordered pairwise merge (Chan).
class RunningMoments
{
  public:
    void add(double x);
    void merge(RunningMoments const& other);

    std::size_t count() const { return count_; }
    double mean() const { return mean_; }
    //! Unbiased sample variance; 0 for fewer than two samples.
    double variance() const;

  private:
    std::size_t count_ = 0;
    double mean_ = 0;
    double m2_ = 0;
};

struct McEstimate
{
    double mean = 0;
    double std_error = 0;  //!< sample std / sqrt(replications)
    std::size_t replications = 0;
    std::uint64_t seed = 0;
};

struct QuadratureEstimate
{
    double value = 0;
    int nodes_per_axis = 0;
    //! |value(g) - value(g/2)|
    double error_indicator = 0;
};

//! Replications per work unit; fixes the reduction tree independently of the
//! worker count.
inline constexpr std::size_t kReplicationChunk = 2048;

//! Mean of the squared L2 star discrepancy over independent replications of
//! the design. `workers` = 0 uses the hardware concurrency.
McEstimate mc_expected_l2sq(PartitionSpec const& spec,
                            std::size_t replications,
                            std::uint64_t seed,
                            unsigned workers = 0);

//! Tensor midpoint quadrature of (1/N^2) sum_i q_i (1 - q_i) over [0,1]^d
//! with q_i(x) = λ(Ω_i ∩ [0,x]) / λ(Ω_i). Equivolume families only; d <= 3;
//! nodes_per_axis even.
QuadratureEstimate prop2_expected_l2sq(PartitionSpec const& spec,
                                       int nodes_per_axis,
                                       unsigned workers = 0);

//! The quadrature value at a single resolution, no refinement.
double prop2_quadrature(Partition const& partition, int nodes_per_axis, unsigned workers = 0);

//---------------------------------------------------------------------------//
enum class ProbeRegion
{
    Anchored,  //!< [0, z)
    Corner,    //!< [O', z) with O' the lower-left corner of the merged cuboid
    Outside,   //!< [0, z) \ [O', z)
};

struct StratumIndicator
{
    double hit_rate = 0;       //!< empirical P(s_i in box)
    double variance = 0;       //!< hit_rate (1 - hit_rate)
    double expected_rate = 0;  //!< λ(Ω_i ∩ box) / λ(Ω_i)
};

struct ProbeDiagnostic
{
    ProbeRegion region = ProbeRegion::Anchored;
    std::vector<double> z;
    //! (1/N) sum_i 1_box(s_i) over replications.
    McEstimate fraction;
    //! Closed identity: λ(box) for equivolume designs and for the Outside
    //! region; 4 m^{d-2} / (8 m^{d-2} - N b^2) λ([O',z)) for the ModelII corner.
    double formula = 0;
    //! (1/N) sum_i λ(Ω_i ∩ box) / λ(Ω_i) from the strata geometry.
    double exact = 0;
    std::vector<StratumIndicator> strata;
};

//! Lower-left corner O' of the merged cuboid, (m-2)/m then (m-1)/m repeated.
std::vector<double> merged_corner(int d, int m);

/*!
 * Check the unbiasedness identities behind the variance decomposition of
 * the expected discrepancy at a fixed probe point z.
 *
 * The Corner region requires z inside the merged cuboid; for ModelII the box
 * must also stay below the dividing line (z1 + 2 z2 <= 3 - b).
 */
ProbeDiagnostic mc_variance_decomposition(PartitionSpec const& spec,
                                          std::span<const double> z,
                                          ProbeRegion region,
                                          std::size_t replications,
                                          std::uint64_t seed,
                                          unsigned workers = 0);

}  // namespace stratdisc
