#pragma once

#include <cstdint>
#include <limits>

namespace stratdisc
{
//! SplitMix64 finalizer: a bijective 64-bit mixer.
std::uint64_t mix64(std::uint64_t x);

//---------------------------------------------------------------------------//
/*!
 * Counter-based random stream keyed by (seed, replication, stratum).
 *
 * The i-th output is mix64(key + i * golden), so any stream can be created
 * independently on any worker and always yields the same sequence. Satisfies
 * UniformRandomBitGenerator.
 */
class RngStream
{
  public:
    using result_type = std::uint64_t;

    RngStream(std::uint64_t seed, std::uint64_t replication, std::uint64_t stratum);

    result_type operator()();

    //! Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace stratdisc
