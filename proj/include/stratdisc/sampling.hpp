#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "partition.hpp"
#include "rng.hpp"

namespace stratdisc
{
//! Rejection attempts before sample_stratum reports a geometry bug.
inline constexpr int kMaxRejections = 10000;

//---------------------------------------------------------------------------//
/*!
 * N points in [0,1]^d stored row-major, with the seed and design that
 * produced them. Point sets read from files carry no spec.
 */
class PointSet
{
  public:
    PointSet(std::size_t dim,
             std::vector<double> coords,
             std::uint64_t seed = 0,
             std::optional<PartitionSpec> spec = std::nullopt);

    std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
    std::size_t dim() const { return dim_; }
    std::span<const double> point(std::size_t i) const
    {
        return std::span<const double>(coords_).subspan(i * dim_, dim_);
    }
    std::span<const double> coords() const { return coords_; }
    std::uint64_t seed() const { return seed_; }
    std::optional<PartitionSpec> const& spec() const { return spec_; }

    friend bool operator==(PointSet const& a, PointSet const& b)
    {
        return a.dim_ == b.dim_ && a.coords_ == b.coords_;
    }

  private:
    std::size_t dim_;
    std::vector<double> coords_;
    std::uint64_t seed_;
    std::optional<PartitionSpec> spec_;
};

//! Draw one point uniformly from `s` into `out` (length s.dim()).
void sample_stratum(Stratum const& s, RngStream& rng, std::span<double> out);
std::vector<double> sample_stratum(Stratum const& s, RngStream& rng);

//! One point per stratum, stratum i drawing from stream (seed, replication, i).
void sample_partition_into(Partition const& p,
                           std::uint64_t seed,
                           std::uint64_t replication,
                           std::span<double> out);
PointSet sample_partition(Partition const& p, std::uint64_t seed, std::uint64_t replication);

//! n i.i.d. uniform points; point i draws from stream (seed, replication, i).
void sample_simple_into(std::size_t n,
                        std::size_t d,
                        std::uint64_t seed,
                        std::uint64_t replication,
                        std::span<double> out);
PointSet sample_simple(std::size_t n, int d, std::uint64_t seed, std::uint64_t replication = 0);

//! Dispatch on the family: simple sampling or one point per stratum.
PointSet sample_spec(PartitionSpec const& spec, std::uint64_t seed, std::uint64_t replication = 0);

}  // namespace stratdisc
