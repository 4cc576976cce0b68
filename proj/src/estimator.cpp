#include "stratdisc/estimator.hpp"

#include <cmath>
#include <optional>

#include <fmt/core.h>

#include "compensated_sum.hpp"
#include "parallel.hpp"
#include "stratdisc/discrepancy.hpp"
#include "stratdisc/errors.hpp"
#include "stratdisc/sampling.hpp"

namespace stratdisc
{
namespace
{
std::size_t chunk_count(std::size_t replications)
{
    return (replications + kReplicationChunk - 1) / kReplicationChunk;
}

McEstimate to_estimate(RunningMoments const& m, std::uint64_t seed)
{
    McEstimate e;
    e.mean = m.mean();
    e.replications = m.count();
    e.std_error = std::sqrt(m.variance() / static_cast<double>(m.count()));
    e.seed = seed;
    return e;
}

// Draws replication `rep` of the design into `coords`.
class ReplicationSampler
{
  public:
    explicit ReplicationSampler(PartitionSpec const& spec) : spec_(spec)
    {
        spec.validate();
        if (spec.family != Family::Simple)
            partition_.emplace(build_partition(spec));
    }

    std::size_t num_points() const { return spec_.num_points(); }
    std::size_t dim() const { return static_cast<std::size_t>(spec_.d); }
    std::optional<Partition> const& partition() const { return partition_; }

    void draw(std::uint64_t seed, std::uint64_t rep, std::span<double> coords) const
    {
        if (partition_)
            sample_partition_into(*partition_, seed, rep, coords);
        else
            sample_simple_into(num_points(), dim(), seed, rep, coords);
    }

  private:
    PartitionSpec spec_;
    std::optional<Partition> partition_;
};

double volume(std::span<const double> lo, std::span<const double> hi)
{
    double v = 1;
    for (std::size_t j = 0; j < lo.size(); ++j)
        v *= std::max(0.0, hi[j] - lo[j]);
    return v;
}
}  // namespace

//---------------------------------------------------------------------------//
void RunningMoments::add(double x)
{
    ++count_;
    double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
}

void RunningMoments::merge(RunningMoments const& other)
{
    if (other.count_ == 0)
        return;
    if (count_ == 0)
    {
        *this = other;
        return;
    }
    double const na = static_cast<double>(count_);
    double const nb = static_cast<double>(other.count_);
    double const n = na + nb;
    double const delta = other.mean_ - mean_;
    mean_ += delta * nb / n;
    m2_ += other.m2_ + delta * delta * na * nb / n;
    count_ += other.count_;
}

double RunningMoments::variance() const
{
    return count_ < 2 ? 0.0 : m2_ / static_cast<double>(count_ - 1);
}

//---------------------------------------------------------------------------//
McEstimate mc_expected_l2sq(PartitionSpec const& spec,
                            std::size_t replications,
                            std::uint64_t seed,
                            unsigned workers)
{
    if (replications < 2)
        throw DomainError("need at least two replications");
    ReplicationSampler const sampler(spec);
    std::size_t const n_chunks = chunk_count(replications);
    std::vector<RunningMoments> partial(n_chunks);

    detail::parallel_for(n_chunks, workers, [&](std::size_t c) {
        std::vector<double> coords(sampler.num_points() * sampler.dim());
        std::size_t const begin = c * kReplicationChunk;
        std::size_t const end = std::min(replications, begin + kReplicationChunk);
        for (std::size_t rep = begin; rep < end; ++rep)
        {
            sampler.draw(seed, rep, coords);
            partial[c].add(l2_star_squared(coords, sampler.dim()));
        }
    });

    RunningMoments total;
    for (auto const& m : partial)
        total.merge(m);
    return to_estimate(total, seed);
}

//---------------------------------------------------------------------------//
double prop2_quadrature(Partition const& partition, int nodes_per_axis, unsigned workers)
{
    std::size_t const d = static_cast<std::size_t>(partition.spec().d);
    if (d > 3)
        throw DomainError("partition-identity quadrature is limited to d <= 3");
    if (nodes_per_axis < 1)
        throw DomainError("nodes_per_axis must be >= 1");

    std::size_t const g = static_cast<std::size_t>(nodes_per_axis);
    double const h = 1.0 / static_cast<double>(g);
    std::size_t slab_nodes = 1;
    for (std::size_t j = 0; j + 1 < d; ++j)
        slab_nodes *= g;

    // One slab per index of the last coordinate; slabs are summed in order.
    std::vector<double> slab_sum(g, 0.0);
    detail::parallel_for(g, workers, [&](std::size_t slab) {
        std::vector<double> x(d);
        std::vector<std::size_t> idx(d - 1, 0);
        x[d - 1] = (static_cast<double>(slab) + 0.5) * h;
        detail::CompensatedSum sum;
        for (std::size_t node = 0; node < slab_nodes; ++node)
        {
            for (std::size_t j = 0; j + 1 < d; ++j)
                x[j] = (static_cast<double>(idx[j]) + 0.5) * h;
            double local = 0;
            for (Stratum const& s : partition.strata())
            {
                double q = stratum_anchored_measure(s, x) / s.measure();
                local += q * (1 - q);
            }
            sum += local;
            for (std::size_t j = 0; j + 1 < d; ++j)
            {
                if (++idx[j] < g)
                    break;
                idx[j] = 0;
            }
        }
        slab_sum[slab] = sum.value();
    });

    detail::CompensatedSum total;
    for (double v : slab_sum)
        total += v;
    double const n = static_cast<double>(partition.size());
    return total.value() / (n * n) / (static_cast<double>(slab_nodes) * static_cast<double>(g));
}

QuadratureEstimate prop2_expected_l2sq(PartitionSpec const& spec, int nodes_per_axis, unsigned workers)
{
    spec.validate();
    if (spec.family != Family::Jittered && spec.family != Family::ModelI)
    {
        throw DomainError(fmt::format(
            "the partition identity E L2^2 = (1/N^2) sum_i int q_i (1 - q_i) "
            "assumes an equivolume partition; {} is not equivolume",
            to_string(spec.family)));
    }
    if (spec.d > 3)
        throw DomainError("partition-identity quadrature is limited to d <= 3");
    if (nodes_per_axis < 2 || nodes_per_axis % 2 != 0)
        throw DomainError("nodes_per_axis must be even and >= 2");

    Partition const partition = build_partition(spec);
    QuadratureEstimate q;
    q.nodes_per_axis = nodes_per_axis;
    q.value = prop2_quadrature(partition, nodes_per_axis, workers);
    double const coarse = prop2_quadrature(partition, nodes_per_axis / 2, workers);
    q.error_indicator = std::abs(q.value - coarse);
    return q;
}

//---------------------------------------------------------------------------//
std::vector<double> merged_corner(int d, int m)
{
    std::vector<double> corner(static_cast<std::size_t>(d), double(m - 1) / m);
    corner[0] = double(m - 2) / m;
    return corner;
}

ProbeDiagnostic mc_variance_decomposition(PartitionSpec const& spec,
                                          std::span<const double> z,
                                          ProbeRegion region,
                                          std::size_t replications,
                                          std::uint64_t seed,
                                          unsigned workers)
{
    if (replications < 2)
        throw DomainError("need at least two replications");
    ReplicationSampler const sampler(spec);
    if (!sampler.partition())
        throw DomainError("probe diagnostics need a stratified design");
    Partition const& partition = *sampler.partition();
    std::size_t const d = sampler.dim();
    std::size_t const n = sampler.num_points();
    if (z.size() != d)
        throw DomainError("probe point dimension does not match the design");
    for (double v : z)
    {
        if (!(v >= 0 && v <= 1))
            throw DomainError("probe point must lie in [0,1]^d");
    }

    std::vector<double> const origin(d, 0.0);
    std::vector<double> const corner = merged_corner(spec.d, spec.m);
    std::vector<double> corner_hi(d);
    for (std::size_t j = 0; j < d; ++j)
        corner_hi[j] = std::max(corner[j], z[j]);

    if (region == ProbeRegion::Corner)
    {
        for (std::size_t j = 0; j < d; ++j)
        {
            if (z[j] < corner[j])
                throw DomainError("corner probe needs z inside the merged cuboid");
        }
        if (spec.family == Family::ModelII && z[0] + 2 * z[1] > 3 - spec.b + kGeomTolerance)
            throw DomainError("corner probe box crosses the ModelII dividing line");
    }

    auto in_anchored = [&](std::span<const double> s) {
        for (std::size_t j = 0; j < d; ++j)
        {
            if (!(s[j] < z[j]))
                return false;
        }
        return true;
    };
    auto in_corner = [&](std::span<const double> s) {
        for (std::size_t j = 0; j < d; ++j)
        {
            if (!(s[j] >= corner[j] && s[j] < z[j]))
                return false;
        }
        return true;
    };
    auto in_box = [&](std::span<const double> s) {
        switch (region)
        {
            case ProbeRegion::Anchored:
                return in_anchored(s);
            case ProbeRegion::Corner:
                return in_corner(s);
            case ProbeRegion::Outside:
                return in_anchored(s) && !in_corner(s);
        }
        return false;
    };

    ProbeDiagnostic diag;
    diag.region = region;
    diag.z.assign(z.begin(), z.end());

    double const anchored_volume = volume(origin, z);
    double const corner_volume = volume(corner, corner_hi);
    switch (region)
    {
        case ProbeRegion::Anchored:
            diag.formula = anchored_volume;
            break;
        case ProbeRegion::Outside:
            diag.formula = anchored_volume - corner_volume;
            break;
        case ProbeRegion::Corner:
            if (spec.family == Family::ModelII)
            {
                double const md2 = std::pow(double(spec.m), spec.d - 2);
                double const nb2 = static_cast<double>(n) * spec.b * spec.b;
                diag.formula = 4 * md2 / (8 * md2 - nb2) * corner_volume;
            }
            else
            {
                diag.formula = corner_volume;
            }
            break;
    }

    detail::CompensatedSum exact;
    diag.strata.resize(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        Stratum const& s = partition[i];
        double anchored = stratum_anchored_measure(s, z);
        double cornered = stratum_box_measure(s, corner, corner_hi);
        double meas = region == ProbeRegion::Anchored ? anchored
                      : region == ProbeRegion::Corner ? cornered
                                                      : anchored - cornered;
        diag.strata[i].expected_rate = std::max(0.0, meas) / s.measure();
        exact += diag.strata[i].expected_rate;
    }
    diag.exact = exact.value() / static_cast<double>(n);

    std::size_t const n_chunks = chunk_count(replications);
    std::vector<RunningMoments> partial(n_chunks);
    std::vector<std::vector<std::size_t>> hits(n_chunks, std::vector<std::size_t>(n, 0));
    detail::parallel_for(n_chunks, workers, [&](std::size_t c) {
        std::vector<double> coords(n * d);
        std::size_t const begin = c * kReplicationChunk;
        std::size_t const end = std::min(replications, begin + kReplicationChunk);
        for (std::size_t rep = begin; rep < end; ++rep)
        {
            sampler.draw(seed, rep, coords);
            std::size_t count = 0;
            for (std::size_t i = 0; i < n; ++i)
            {
                if (in_box(std::span<const double>(coords).subspan(i * d, d)))
                {
                    ++hits[c][i];
                    ++count;
                }
            }
            partial[c].add(static_cast<double>(count) / static_cast<double>(n));
        }
    });

    RunningMoments total;
    for (std::size_t c = 0; c < n_chunks; ++c)
    {
        total.merge(partial[c]);
        for (std::size_t i = 0; i < n; ++i)
            diag.strata[i].hit_rate += static_cast<double>(hits[c][i]);
    }
    for (auto& s : diag.strata)
    {
        s.hit_rate /= static_cast<double>(replications);
        s.variance = s.hit_rate * (1 - s.hit_rate);
    }
    diag.fraction = to_estimate(total, seed);
    return diag;
}

}  // namespace stratdisc
