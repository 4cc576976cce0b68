#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "stratdisc/discrepancy.hpp"
#include "stratdisc/errors.hpp"

using namespace stratdisc;

namespace
{
PointSet points_1d(std::vector<double> xs)
{
    return PointSet(1, std::move(xs));
}

// Exact L2 discrepancy in one dimension: Δ(z) = z - c/N is linear between
// consecutive sorted points, so each segment integrates in closed form.
double exact_1d(std::vector<double> xs)
{
    std::sort(xs.begin(), xs.end());
    double const n = static_cast<double>(xs.size());
    double total = 0;
    double left = 0;
    for (std::size_t c = 0; c <= xs.size(); ++c)
    {
        double const right = c < xs.size() ? xs[c] : 1.0;
        double const shift = static_cast<double>(c) / n;
        auto cube = [&](double z) { return (z - shift) * (z - shift) * (z - shift) / 3; };
        total += cube(right) - cube(left);
        left = right;
    }
    return total;
}

PointSet random_points(std::mt19937_64& gen, std::size_t n, std::size_t d)
{
    std::uniform_real_distribution<double> u(0, 1);
    std::vector<double> c(n * d);
    for (auto& v : c)
        v = u(gen);
    return PointSet(d, std::move(c));
}
}  // namespace

TEST_CASE("closed-form anchors")
{
    CHECK(l2_star_squared(points_1d({0.0})).l2_squared == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(l2_star_squared(points_1d({1.0})).l2_squared == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(l2_star_squared(points_1d({0.25, 0.75})).l2_squared == doctest::Approx(1.0 / 48).epsilon(1e-14));

    auto v = l2_star_squared(points_1d({0.25, 0.75}));
    CHECK(v.n == 2);
    CHECK(v.d == 1);
    CHECK(v.l2() == doctest::Approx(std::sqrt(1.0 / 48)));
}

TEST_CASE("agrees with the exact piecewise integral in 1D")
{
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(0, 1);
    for (int trial = 0; trial < 100; ++trial)
    {
        std::vector<double> xs(1 + trial % 12);
        for (auto& x : xs)
            x = u(gen);
        CHECK(l2_star_squared(points_1d(xs)).l2_squared == doctest::Approx(exact_1d(xs)).epsilon(1e-12));
    }
}

TEST_CASE("discrepancy function")
{
    auto ps = points_1d({0.25, 0.75});
    std::vector<double> half{0.5};
    CHECK(discrepancy_function(ps, half) == doctest::Approx(0.0));
    std::vector<double> zero{0.0};
    CHECK(discrepancy_function(ps, zero) == 0.0);

    PointSet centre(2, {0.5, 0.5});
    std::vector<double> ones{1, 1};
    CHECK(discrepancy_function(centre, ones) == 0.0);
    // Points on the upper face are outside the half-open box.
    std::vector<double> edge{0.5, 1};
    CHECK(discrepancy_function(centre, edge) == doctest::Approx(0.5));
}

TEST_CASE("quadrature oracle")
{
    CHECK(std::abs(l2_star_squared_bruteforce(points_1d({0.0}), 1000000) - 1.0 / 3) <= 1e-5);

    std::mt19937_64 gen(21);
    for (int trial = 0; trial < 20; ++trial)
    {
        auto ps = random_points(gen, 4, 2);
        double const closed = l2_star_squared(ps).l2_squared;
        CHECK(std::abs(closed - l2_star_squared_bruteforce(ps, 2000)) <= 2e-3);
    }

    auto ps = random_points(gen, 5, 1);
    double const closed = l2_star_squared(ps).l2_squared;
    double const e2 = std::abs(l2_star_squared_bruteforce(ps, 100) - closed);
    double const e3 = std::abs(l2_star_squared_bruteforce(ps, 1000) - closed);
    double const e4 = std::abs(l2_star_squared_bruteforce(ps, 10000) - closed);
    CHECK(e3 < e2);
    CHECK(e4 < e3);

    PointSet four_d(4, {0.1, 0.2, 0.3, 0.4});
    CHECK_THROWS_AS(l2_star_squared_bruteforce(four_d, 10), DomainError);
}

TEST_CASE("permutation invariance and nonnegativity")
{
    std::mt19937_64 gen(8);
    for (int trial = 0; trial < 50; ++trial)
    {
        std::size_t const d = 1 + static_cast<std::size_t>(trial % 4);
        auto ps = random_points(gen, 9, d);
        std::vector<std::size_t> order(ps.size());
        for (std::size_t i = 0; i < order.size(); ++i)
            order[i] = i;
        std::shuffle(order.begin(), order.end(), gen);
        std::vector<double> c;
        for (auto i : order)
            for (double v : ps.point(i))
                c.push_back(v);
        PointSet shuffled(d, c);
        double const a = l2_star_squared(ps).l2_squared;
        CHECK(a >= 0.0);
        CHECK(a == l2_star_squared(shuffled).l2_squared);
    }
}

TEST_CASE("coordinates outside the unit cube are rejected")
{
    CHECK_THROWS_AS(l2_star_squared(points_1d({1.5})), DomainError);
    CHECK_THROWS_AS(l2_star_squared(points_1d({-0.1})), DomainError);
}
