#include "stratdisc/rng.hpp"

namespace stratdisc
{
namespace
{
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kRepSalt = 0xd1b54a32d192ed03ULL;
constexpr std::uint64_t kStratumSalt = 0xaef17502108ef2d9ULL;
}  // namespace

std::uint64_t mix64(std::uint64_t x)
{
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t replication, std::uint64_t stratum)
{
    std::uint64_t k = mix64(seed + kGolden);
    k = mix64(k ^ (replication * kRepSalt + kGolden));
    k = mix64(k ^ (stratum * kStratumSalt + kRepSalt));
    key_ = k;
}

RngStream::result_type RngStream::operator()()
{
    ++counter_;
    return mix64(key_ + counter_ * kGolden);
}

}  // namespace stratdisc
