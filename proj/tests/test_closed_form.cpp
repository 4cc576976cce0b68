#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "stratdisc/closed_form.hpp"
#include "stratdisc/errors.hpp"

using namespace stratdisc;

namespace
{
// Branch polynomials written out directly, independent of the library.
double first_branch(double theta)
{
    double const t = std::tan(theta);
    return 0.4 * t * t * t + 1.2 * t * t - 1.5 * t;
}

double third_branch(double theta)
{
    double const t = std::tan(theta);
    return -3.0 / (8 * t) + 3.0 / (40 * t * t) + 1.0 / (160 * t * t * t);
}

double rel(double a, double b)
{
    return std::abs(a - b) / std::abs(b);
}
}  // namespace

TEST_CASE("jittered baseline")
{
    CHECK(jittered_expected(2, 2) == doctest::Approx(11.0 / 576).epsilon(1e-15));
    CHECK(jittered_expected(1, 2) == doctest::Approx(1.0 / 24).epsilon(1e-15));
    CHECK(jittered_expected(3, 2) == doctest::Approx(91.0 / 216 / 64).epsilon(1e-15));
    CHECK_THROWS_AS(jittered_expected(2, 1), DomainError);
    CHECK_THROWS_AS(jittered_expected(0, 2), DomainError);
}

TEST_CASE("simple sampling expectation")
{
    CHECK(simple_expected(1, 1) == doctest::Approx(1.0 / 2 - 1.0 / 3));
    CHECK(simple_expected(4, 2) == doctest::Approx((0.25 - 1.0 / 9) / 4));
}

TEST_CASE("P(theta) values")
{
    CHECK(p_theta(kArctanHalf) == -0.4);
    CHECK(p_theta(0) == 0.0);
    CHECK(p_theta(kHalfPi) == 0.0);
    CHECK(std::abs(p_theta(kArctanHalf - 1e-8) + 0.4) <= 1e-7);
    CHECK(std::abs(p_theta(kArctanHalf + 1e-8) + 0.4) <= 1e-7);
    CHECK(p_theta(0.3) == doctest::Approx(first_branch(0.3)).epsilon(1e-14));
    CHECK(p_theta(1.2) == doctest::Approx(third_branch(1.2)).epsilon(1e-14));
    CHECK_THROWS_AS(p_theta(-1e-3), DomainError);
    CHECK_THROWS_AS(p_theta(kHalfPi + 1e-3), DomainError);
}

TEST_CASE("P(theta) is continuous at arctan(1/2)")
{
    double prev_lo = 1, prev_hi = 1;
    for (double eps : {1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9})
    {
        double const lo = std::abs(p_theta(kArctanHalf - eps) + 0.4);
        double const hi = std::abs(p_theta(kArctanHalf + eps) + 0.4);
        CHECK(lo < prev_lo);
        CHECK(hi < prev_hi);
        CHECK(lo <= 10 * eps);
        CHECK(hi <= 10 * eps);
        prev_lo = lo;
        prev_hi = hi;
    }
}

TEST_CASE("P(theta) shape")
{
    auto grid = linspace(0, kHalfPi, 1000);
    grid.push_back(kArctanHalf);
    std::sort(grid.begin(), grid.end());
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
        double const v = p_theta(grid[i]);
        CHECK(v <= 0.0);
        if (grid[i] > 0 && grid[i] < kHalfPi)
            CHECK(v < 0.0);
        if (i == 0)
            continue;
        double const prev = p_theta(grid[i - 1]);
        if (grid[i] <= kArctanHalf)
            CHECK(v < prev);
        else
            CHECK(v > prev);
    }
}

TEST_CASE("model I closed form")
{
    auto r = model1_expected(2, 2, kHalfPi);
    CHECK(r.value == jittered_expected(2, 2));
    CHECK(r.value == doctest::Approx(11.0 / 576).epsilon(1e-15));
    CHECK(r.components.correction == 0.0);

    auto diag = model1_expected(2, 2, kArctanHalf);
    CHECK(diag.value == doctest::Approx(53.0 / 2880).epsilon(1e-14));
    REQUIRE(diag.p.has_value());
    CHECK(*diag.p == -0.4);

    CHECK(model1_expected(3, 2, 0).value == jittered_expected(3, 2));
    for (int d = 1; d <= 4; ++d)
        for (int m = 2; m <= 5; ++m)
            CHECK(model1_expected(d, m, kHalfPi).value == jittered_expected(d, m));

    CHECK_THROWS_AS(model1_expected(2, 1, 0.3), DomainError);
}

TEST_CASE("model II polynomials")
{
    CHECK(std::abs(p0_of_t(2)) <= 1e-15);
    CHECK(p1_of_t(2) == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(p0_of_t(1.5) == doctest::Approx(5.75 / 3 - 16 / 17.25).epsilon(1e-14));
    CHECK(p0_of_t(1.5) == doctest::Approx(0.98913).epsilon(1e-5));
    CHECK(p1_of_t(1.5) == doctest::Approx(-1.81636).epsilon(1e-5));
    CHECK(p0(0.75, 2) == p0_of_t(1.5));
    CHECK(p1(1.0, 2) == p1_of_t(2.0));
    CHECK_THROWS_AS(p0_of_t(1.4), DomainError);
    CHECK_THROWS_AS(p1_of_t(2.1), DomainError);
}

TEST_CASE("model II closed form")
{
    CHECK(model2_expected(2, 2, 1.0).value == doctest::Approx(53.0 / 2880).epsilon(1e-14));
    CHECK(model2_expected(2, 2, 0.75).value == doctest::Approx(0.0183868556).epsilon(1e-9));
    CHECK(model2_expected(3, 2, 1.0).value
          == doctest::Approx(jittered_expected(3, 2) - 0.4 / (27 * 512)).epsilon(1e-14));
    CHECK_THROWS_AS(model2_expected(1, 2, 1.0), DomainError);
    CHECK_THROWS_AS(model2_expected(2, 2, 0.5), DomainError);
}

TEST_CASE("result invariants")
{
    for (int d : {2, 3, 4})
    {
        for (int m : {2, 3, 4})
        {
            for (double theta : linspace(0, kHalfPi, 25))
            {
                auto r = model1_expected(d, m, theta);
                CHECK(r.value > 0);
                CHECK(std::abs(r.value - (r.components.baseline + r.components.correction))
                      <= 1e-15 * r.value);
            }
            for (double b : default_grid(Family::ModelII, m, 11))
            {
                auto r = model2_expected(d, m, b);
                CHECK(r.value > 0);
                CHECK(std::abs(r.value - (r.components.baseline + r.components.correction))
                      <= 1e-15 * r.value);
            }
        }
    }
}

TEST_CASE("seam between the two families")
{
    for (int d : {2, 3, 4})
        for (int m : {2, 3, 4, 5})
            CHECK(rel(model2_expected(d, m, 2.0 / m).value, model1_expected(d, m, kArctanHalf).value) <= 1e-14);
}

TEST_CASE("model II beats every model I angle")
{
    for (int d : {2, 3})
    {
        for (int m : {2, 3, 4})
        {
            auto const thetas = linspace(0, kHalfPi, 200);
            double grid_best = INFINITY;
            for (double t : thetas)
                grid_best = std::min(grid_best, model1_expected(d, m, t).value);
            double const best = model1_expected(d, m, kArctanHalf).value;
            CHECK(best < grid_best);

            auto table = sweep(Family::ModelII, d, m, default_grid(Family::ModelII, m, 11));
            REQUIRE(table.rows.size() == 11);
            for (std::size_t i = 0; i < table.rows.size(); ++i)
            {
                double const v = table.rows[i].result.value;
                CHECK(v < grid_best);
                // b = 2/m reproduces the diagonal cut, so it ties with the
                // exact optimum; every smaller b is strictly better.
                if (i + 1 < table.rows.size())
                    CHECK(v < best);
                else
                    CHECK(rel(v, best) <= 1e-14);
            }
        }
    }
}

TEST_CASE("sweep tables")
{
    std::vector<double> grid{0, M_PI / 8, kArctanHalf, M_PI / 4, kHalfPi};
    auto table = sweep(Family::ModelI, 2, 2, grid);
    REQUIRE(table.rows.size() == 5);
    auto best = std::min_element(table.rows.begin(), table.rows.end(), [](auto const& a, auto const& b) {
        return a.result.value < b.result.value;
    });
    CHECK(best->param == kArctanHalf);

    std::vector<double> single{0.2};
    CHECK(sweep(Family::ModelI, 2, 2, single).rows.size() == 1);

    auto lin = linspace(0, 1, 5);
    REQUIRE(lin.size() == 5);
    CHECK(lin.front() == 0.0);
    CHECK(lin.back() == 1.0);
    CHECK(linspace(0.3, 1, 1) == std::vector<double>{0.3});

    auto b_grid = default_grid(Family::ModelII, 3, 11);
    CHECK(b_grid.front() == doctest::Approx(0.5));
    CHECK(b_grid.back() == doctest::Approx(2.0 / 3));
    std::vector<double> bad{0.9};
    CHECK_THROWS_AS(sweep(Family::ModelII, 2, 3, bad), DomainError);
}

TEST_CASE("dispatch on the spec")
{
    CHECK(expected(PartitionSpec::jittered(2, 3)).value == jittered_expected(2, 3));
    CHECK(expected(PartitionSpec::model1(2, 3, 0.4)).value == model1_expected(2, 3, 0.4).value);
    CHECK(expected(PartitionSpec::model2(2, 3, 0.6)).value == model2_expected(2, 3, 0.6).value);
    CHECK(expected(PartitionSpec::simple(9, 2)).value == simple_expected(9, 2));
}
