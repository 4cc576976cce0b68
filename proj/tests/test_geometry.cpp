#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "stratdisc/errors.hpp"
#include "stratdisc/geometry.hpp"
#include "stratdisc/partition.hpp"

using namespace stratdisc;

namespace
{
ConvexPolygon unit_square()
{
    return ConvexPolygon::rectangle({{0, 0}, {1, 1}});
}

std::vector<double> thetas()
{
    std::vector<double> out;
    for (double t = 0; t < kHalfPi; t += 0.1)
        out.push_back(t);
    out.push_back(kHalfPi);
    return out;
}
}  // namespace

TEST_CASE("polygon area")
{
    CHECK(unit_square().area() == doctest::Approx(1.0).epsilon(1e-15));
    auto tri = ConvexPolygon::from_vertices({{0, 0}, {1, 0}, {0, 1}});
    CHECK(tri.area() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(std::abs(tri.area() - area(tri.vertices())) < 1e-14);

    std::vector<Vec2> degenerate{{0, 0}, {1, 1}};
    CHECK(area(degenerate) == 0.0);
}

TEST_CASE("canonical vertex order")
{
    auto a = ConvexPolygon::from_vertices({{1, 1}, {0, 1}, {0, 0}, {1, 0}});
    auto b = ConvexPolygon::from_vertices({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    CHECK(vertex_distance(a, b) == 0.0);
    CHECK(a.vertices()[0].x == 0.0);
    CHECK(a.vertices()[0].y == 0.0);
    CHECK(a.is_axis_aligned_box());
}

TEST_CASE("invalid polygons are rejected")
{
    CHECK_THROWS_AS(ConvexPolygon::from_vertices({{0, 0}, {1, 1}}), DomainError);
    CHECK_THROWS_AS(ConvexPolygon::from_vertices({{0, 0}, {1, 1}, {2, 2}}), DomainError);
    CHECK_THROWS_AS(ConvexPolygon::from_vertices({{0, 0}, {2, 0}, {1, 0.2}, {1, 2}}), DomainError);
}

TEST_CASE("clip to anchored box")
{
    auto sq = unit_square();
    auto full = clip_polygon_to_box(sq, {1, 1});
    REQUIRE(full);
    CHECK(vertex_distance(*full, sq) < 1e-15);

    auto quarter = clip_polygon_to_box(sq, {0.5, 0.5});
    REQUIRE(quarter);
    CHECK(quarter->area() == doctest::Approx(0.25).epsilon(1e-15));

    auto tri = ConvexPolygon::from_vertices({{0, 0}, {2, 0}, {0, 1}});
    auto clipped = clip_polygon_to_box(tri, {1, 1});
    REQUIRE(clipped);
    CHECK(clipped->area() == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(clipped->size() == 4);
    CHECK(clipped_area(tri, {1, 1}) == doctest::Approx(0.75).epsilon(1e-15));

    CHECK_FALSE(clip_polygon_to_box(sq, {0, 0.5}));
    auto shifted = ConvexPolygon::rectangle({{0.5, 0.5}, {1, 1}});
    CHECK_FALSE(clip_polygon_to_box(shifted, {0.5, 1}));
    CHECK(clipped_area(shifted, {0.5, 1}) == 0.0);
}

TEST_CASE("anchored measure of a stratum")
{
    Stratum cell(ConvexPolygon::rectangle({{0.5, 0.5}, {1, 1}}), {});
    std::vector<double> x{0.75, 0.75};
    CHECK(stratum_anchored_measure(cell, x) == doctest::Approx(1.0 / 16).epsilon(1e-15));

    auto p = build_partition(PartitionSpec::model2(3, 2, 0.8));
    std::vector<double> ones{1, 1, 1};
    for (auto const& s : p.strata())
    {
        CHECK(stratum_anchored_measure(s, ones) == doctest::Approx(s.measure()).epsilon(1e-14));
        std::vector<double> left{s.base().bounds().lo.x, 1, 1};
        CHECK(stratum_anchored_measure(s, left) == 0.0);
    }
}

TEST_CASE("anchored measure is monotone")
{
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(0, 1);
    for (auto spec : {PartitionSpec::model1(3, 2, 0.7), PartitionSpec::model2(3, 3, 0.6)})
    {
        auto p = build_partition(spec);
        for (int trial = 0; trial < 500; ++trial)
        {
            std::vector<double> a(3), b(3);
            for (int j = 0; j < 3; ++j)
            {
                a[j] = u(gen);
                b[j] = a[j] + (1 - a[j]) * u(gen);
            }
            for (auto const& s : p.strata())
                CHECK(stratum_anchored_measure(s, a) <= stratum_anchored_measure(s, b) + 1e-15);
        }
    }
}

TEST_CASE("box measure by inclusion-exclusion")
{
    auto p = build_partition(PartitionSpec::model1(2, 2, 0.3));
    std::vector<double> lo{0.1, 0.2}, hi{0.9, 0.95};
    double total = 0;
    for (auto const& s : p.strata())
        total += stratum_box_measure(s, lo, hi);
    CHECK(total == doctest::Approx(0.8 * 0.75).epsilon(1e-14));
}

TEST_CASE("partition completeness and equivolume")
{
    for (int d : {2, 3})
    {
        for (int m : {2, 3, 4})
        {
            double const inv_n = std::pow(m, -d);
            for (double theta : thetas())
            {
                auto p = build_partition(PartitionSpec::model1(d, m, theta));
                CHECK(p.size() == static_cast<std::size_t>(std::pow(m, d)));
                CHECK(std::abs(p.total_measure() - 1) <= 1e-12);
                for (auto const& s : p.strata())
                    CHECK(std::abs(s.measure() - inv_n) <= 1e-12);
            }
            auto j = build_partition(PartitionSpec::jittered(d, m));
            CHECK(std::abs(j.total_measure() - 1) <= 1e-12);

            for (int k = 0; k <= 10; ++k)
            {
                double const b = (1.5 + 0.05 * k) / m;
                auto p2 = build_partition(PartitionSpec::model2(d, m, b));
                CHECK(std::abs(p2.total_measure() - 1) <= 1e-12);
                double const omega2 = b * b / 4 * std::pow(m, -(d - 2));
                CHECK(std::abs(p2[1].measure() - omega2) <= 1e-12);
                CHECK(std::abs(p2[0].measure() - (2 * inv_n - omega2)) <= 1e-12);
            }
        }
    }
}

TEST_CASE("model1 at pi/2 coincides with the jittered grid")
{
    for (int d : {2, 3, 4})
    {
        for (int m : {2, 3, 5})
        {
            auto a = build_partition(PartitionSpec::model1(d, m, kHalfPi));
            auto b = build_partition(PartitionSpec::jittered(d, m));
            REQUIRE(a.size() == b.size());
            for (std::size_t i = 0; i < a.size(); ++i)
            {
                CHECK(vertex_distance(a[i].base(), b[i].base()) <= 1e-12);
                CHECK(a[i].base().is_axis_aligned_box());
            }
        }
    }

    auto p = build_partition(PartitionSpec::model1(2, 2, kHalfPi));
    CHECK(p.size() == 4);
    for (auto const& s : p.strata())
    {
        auto box = s.base().bounds();
        CHECK(box.hi.x - box.lo.x == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(box.hi.y - box.lo.y == doctest::Approx(0.5).epsilon(1e-15));
    }
}

TEST_CASE("model1 strata hold the lower-left corner in stratum 0")
{
    for (double theta : thetas())
    {
        auto p = build_partition(PartitionSpec::model1(2, 3, theta));
        Box2 const rect = merged_rectangle(3);
        std::vector<double> corner{rect.lo.x, rect.lo.y};
        CHECK(p[0].contains(corner));
    }
}

TEST_CASE("model1 at arctan(1/2) in the normalized frame")
{
    // The cut is the diagonal of the merged 2x1 rectangle; each side has area 1
    // in the normalized frame, i.e. 1/m^2 in cube units.
    double const theta = std::atan(0.5);
    auto p = build_partition(PartitionSpec::model1(2, 2, theta));
    CHECK(p[0].base().size() == 3);
    CHECK(p[1].base().size() == 3);
    CHECK(p[0].base().area() * 4 == doctest::Approx(1.0).epsilon(1e-14));

    auto p3 = build_partition(PartitionSpec::model1(3, 2, theta));
    for (int i : {0, 1})
    {
        CHECK(std::abs(p3[i].measure() - 0.125) <= 1e-12);
        REQUIRE(p3[i].extrusion().size() == 1);
        CHECK(p3[i].extrusion()[0].lo == 0.5);
        CHECK(p3[i].extrusion()[0].hi == 1.0);
    }
}

TEST_CASE("model2 at b = 2/m cuts along the diagonal")
{
    auto p = build_partition(PartitionSpec::model2(2, 2, 1.0));
    auto expected = ConvexPolygon::from_vertices({{0, 1}, {1, 1}, {1, 0.5}});
    CHECK(vertex_distance(p[1].base(), expected) <= 1e-12);
    CHECK(p[1].measure() == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(p[0].measure() == doctest::Approx(0.25).epsilon(1e-15));

    auto diag = build_partition(PartitionSpec::model1(2, 2, std::atan(0.5)));
    CHECK(vertex_distance(p[0].base(), diag[0].base()) <= 1e-12);
    CHECK(vertex_distance(p[1].base(), diag[1].base()) <= 1e-12);
}

TEST_CASE("partition specs are validated")
{
    CHECK_THROWS_AS(build_partition(PartitionSpec::jittered(1, 2)), DomainError);
    CHECK_THROWS_AS(build_partition(PartitionSpec::jittered(2, 1)), DomainError);
    CHECK_THROWS_AS(build_partition(PartitionSpec::model1(2, 2, -0.1)), DomainError);
    CHECK_THROWS_AS(build_partition(PartitionSpec::model1(2, 2, 1.6)), DomainError);
    CHECK_THROWS_AS(build_partition(PartitionSpec::model2(2, 2, 0.7)), DomainError);
    CHECK_THROWS_AS(build_partition(PartitionSpec::model2(2, 2, 1.01)), DomainError);
    CHECK_THROWS_AS(build_partition(PartitionSpec::simple(4, 2)), DomainError);
    CHECK_THROWS_AS(parse_family("model3"), DomainError);
    CHECK(parse_family("model2") == Family::ModelII);
}

TEST_CASE("clipping agrees with hit counting")
{
    std::mt19937_64 gen(2024);
    std::uniform_real_distribution<double> u(0, 1);
    constexpr int kSamples = 1000000;
    for (int trial = 0; trial < 5; ++trial)
    {
        std::vector<Vec2> pts;
        for (int k = 0; k < 8; ++k)
            pts.push_back({u(gen), u(gen)});
        // Convex hull by monotone chain.
        std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
        std::vector<Vec2> hull;
        for (int pass = 0; pass < 2; ++pass)
        {
            std::size_t const start = hull.size();
            for (auto const& q : pts)
            {
                while (hull.size() >= start + 2 && cross(hull[hull.size() - 2], hull.back(), q) <= 0)
                    hull.pop_back();
                hull.push_back(q);
            }
            hull.pop_back();
            std::reverse(pts.begin(), pts.end());
        }
        auto poly = ConvexPolygon::from_vertices(hull);
        Vec2 const xmax{u(gen), u(gen)};
        double const exact = clipped_area(poly, xmax);

        std::size_t hits = 0;
        for (int s = 0; s < kSamples; ++s)
        {
            Vec2 const q{u(gen), u(gen)};
            if (q.x <= xmax.x && q.y <= xmax.y && poly.contains(q, 0))
                ++hits;
        }
        double const rate = static_cast<double>(hits) / kSamples;
        double const sigma = std::sqrt(std::max(exact * (1 - exact), 1e-12) / kSamples);
        CHECK(std::abs(rate - exact) <= 4 * sigma);
    }
}
