#include "stratdisc/sampling.hpp"

#include <fmt/core.h>

#include "stratdisc/errors.hpp"

namespace stratdisc
{
PointSet::PointSet(std::size_t dim,
                   std::vector<double> coords,
                   std::uint64_t seed,
                   std::optional<PartitionSpec> spec)
    : dim_(dim), coords_(std::move(coords)), seed_(seed), spec_(spec)
{
    if (dim_ == 0)
        throw DomainError("point dimension must be >= 1");
    if (coords_.size() % dim_ != 0)
        throw DomainError("coordinate count is not a multiple of the dimension");
}

void sample_stratum(Stratum const& s, RngStream& rng, std::span<double> out)
{
    ConvexPolygon const& base = s.base();
    Box2 const& bb = base.bounds();
    double const w = bb.hi.x - bb.lo.x;
    double const h = bb.hi.y - bb.lo.y;

    int attempt = 0;
    for (;; ++attempt)
    {
        if (attempt == kMaxRejections)
        {
            throw DiagnosticFailure(fmt::format(
                "rejection sampler made {} attempts without accepting; "
                "stratum base area {} vs bounding box {}",
                kMaxRejections, base.area(), bb.area()));
        }
        Vec2 p{bb.lo.x + w * rng.uniform(), bb.lo.y + h * rng.uniform()};
        // A rectangle fills its bounding box, so the first draw is accepted.
        if (base.is_axis_aligned_box() || base.contains(p, 0.0))
        {
            out[0] = p.x;
            out[1] = p.y;
            break;
        }
    }
    auto ext = s.extrusion();
    for (std::size_t i = 0; i < ext.size(); ++i)
        out[i + 2] = ext[i].lo + ext[i].length() * rng.uniform();
}

std::vector<double> sample_stratum(Stratum const& s, RngStream& rng)
{
    std::vector<double> out(s.dim());
    sample_stratum(s, rng, out);
    return out;
}

void sample_partition_into(Partition const& p,
                           std::uint64_t seed,
                           std::uint64_t replication,
                           std::span<double> out)
{
    std::size_t const d = static_cast<std::size_t>(p.spec().d);
    for (std::size_t i = 0; i < p.size(); ++i)
    {
        RngStream rng(seed, replication, i);
        sample_stratum(p[i], rng, out.subspan(i * d, d));
    }
}

PointSet sample_partition(Partition const& p, std::uint64_t seed, std::uint64_t replication)
{
    std::size_t const d = static_cast<std::size_t>(p.spec().d);
    std::vector<double> coords(p.size() * d);
    sample_partition_into(p, seed, replication, coords);
    return PointSet(d, std::move(coords), seed, p.spec());
}

void sample_simple_into(std::size_t n,
                        std::size_t d,
                        std::uint64_t seed,
                        std::uint64_t replication,
                        std::span<double> out)
{
    for (std::size_t i = 0; i < n; ++i)
    {
        RngStream rng(seed, replication, i);
        for (std::size_t j = 0; j < d; ++j)
            out[i * d + j] = rng.uniform();
    }
}

PointSet sample_simple(std::size_t n, int d, std::uint64_t seed, std::uint64_t replication)
{
    auto spec = PartitionSpec::simple(static_cast<int>(n), d);
    spec.validate();
    std::vector<double> coords(n * static_cast<std::size_t>(d));
    sample_simple_into(n, static_cast<std::size_t>(d), seed, replication, coords);
    return PointSet(static_cast<std::size_t>(d), std::move(coords), seed, spec);
}

PointSet sample_spec(PartitionSpec const& spec, std::uint64_t seed, std::uint64_t replication)
{
    if (spec.family == Family::Simple)
        return sample_simple(static_cast<std::size_t>(spec.n), spec.d, seed, replication);
    return sample_partition(build_partition(spec), seed, replication);
}

}  // namespace stratdisc
