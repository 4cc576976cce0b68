#include "stratdisc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "stratdisc/errors.hpp"

namespace stratdisc
{
namespace
{
bool near(Vec2 a, Vec2 b)
{
    return std::abs(a.x - b.x) <= kGeomTolerance
           && std::abs(a.y - b.y) <= kGeomTolerance;
}

// Drop consecutive duplicates (cyclically) and collinear middle vertices.
void simplify(std::vector<Vec2>& ring)
{
    std::vector<Vec2> out;
    out.reserve(ring.size());
    for (Vec2 p : ring)
    {
        if (out.empty() || !near(out.back(), p))
            out.push_back(p);
    }
    while (out.size() > 1 && near(out.front(), out.back()))
        out.pop_back();

    bool changed = true;
    while (changed && out.size() >= 3)
    {
        changed = false;
        for (std::size_t i = 0; i < out.size() && out.size() >= 3; ++i)
        {
            Vec2 prev = out[(i + out.size() - 1) % out.size()];
            Vec2 next = out[(i + 1) % out.size()];
            if (std::abs(cross(prev, out[i], next)) <= kGeomTolerance)
            {
                out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
        }
    }
    ring = std::move(out);
}

Box2 bounding_box(std::span<const Vec2> ring)
{
    Box2 box{ring.front(), ring.front()};
    for (Vec2 p : ring)
    {
        box.lo.x = std::min(box.lo.x, p.x);
        box.lo.y = std::min(box.lo.y, p.y);
        box.hi.x = std::max(box.hi.x, p.x);
        box.hi.y = std::max(box.hi.y, p.y);
    }
    return box;
}

bool is_axis_box(std::span<const Vec2> ring)
{
    if (ring.size() != 4)
        return false;
    for (std::size_t i = 0; i < 4; ++i)
    {
        Vec2 a = ring[i];
        Vec2 b = ring[(i + 1) % 4];
        if (a.x != b.x && a.y != b.y)
            return false;
    }
    return true;
}

std::vector<Vec2> clip_box(std::span<const Vec2> ring, Vec2 xmax)
{
    auto once = clip_half_plane(ring, {1, 0}, xmax.x);
    return clip_half_plane(once, {0, 1}, xmax.y);
}
}  // namespace

double area(std::span<const Vec2> ring)
{
    if (ring.size() < 3)
        return 0;
    // Shoelace relative to the first vertex.
    Vec2 o = ring.front();
    double twice = 0;
    for (std::size_t i = 1; i + 1 < ring.size(); ++i)
        twice += cross(o, ring[i], ring[i + 1]);
    return 0.5 * twice;
}

std::optional<ConvexPolygon> ConvexPolygon::try_from_vertices(std::vector<Vec2> vertices)
{
    simplify(vertices);
    if (vertices.size() < 3)
        return std::nullopt;
    if (stratdisc::area(vertices) < 0)
        std::reverse(vertices.begin(), vertices.end());

    std::size_t const n = vertices.size();
    for (std::size_t i = 0; i < n; ++i)
    {
        if (cross(vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n])
            < -kGeomTolerance)
        {
            throw DomainError("polygon is not convex");
        }
    }
    auto first = std::min_element(
        vertices.begin(), vertices.end(), [](Vec2 a, Vec2 b) {
            return a.x < b.x || (a.x == b.x && a.y < b.y);
        });
    std::rotate(vertices.begin(), first, vertices.end());

    ConvexPolygon poly;
    poly.area_ = stratdisc::area(vertices);
    if (!(poly.area_ > 0))
        return std::nullopt;
    poly.bounds_ = bounding_box(vertices);
    poly.axis_box_ = is_axis_box(vertices);
    poly.vertices_ = std::move(vertices);
    return poly;
}

ConvexPolygon ConvexPolygon::from_vertices(std::vector<Vec2> vertices)
{
    auto poly = try_from_vertices(std::move(vertices));
    if (!poly)
        throw DomainError("polygon has fewer than three distinct vertices or zero area");
    return std::move(*poly);
}

ConvexPolygon ConvexPolygon::rectangle(Box2 const& box)
{
    return from_vertices({box.lo, {box.hi.x, box.lo.y}, box.hi, {box.lo.x, box.hi.y}});
}

bool ConvexPolygon::contains(Vec2 p, double tol) const
{
    if (p.x < bounds_.lo.x - tol || p.x > bounds_.hi.x + tol
        || p.y < bounds_.lo.y - tol || p.y > bounds_.hi.y + tol)
    {
        return false;
    }
    std::size_t const n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i)
    {
        Vec2 a = vertices_[i];
        Vec2 b = vertices_[(i + 1) % n];
        double len = std::hypot(b.x - a.x, b.y - a.y);
        // Signed distance to the edge line, positive inside.
        if (cross(a, b, p) / len < -tol)
            return false;
    }
    return true;
}

double vertex_distance(ConvexPolygon const& a, ConvexPolygon const& b)
{
    if (a.size() != b.size())
        return std::numeric_limits<double>::infinity();
    double dist = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        dist = std::max(dist, std::abs(a.vertices()[i].x - b.vertices()[i].x));
        dist = std::max(dist, std::abs(a.vertices()[i].y - b.vertices()[i].y));
    }
    return dist;
}

std::vector<Vec2> clip_half_plane(std::span<const Vec2> ring, Vec2 normal, double offset)
{
    std::vector<Vec2> out;
    out.reserve(ring.size() + 1);
    auto side = [&](Vec2 p) { return normal.x * p.x + normal.y * p.y - offset; };
    auto crossing = [&](Vec2 a, Vec2 b, double sa, double sb) {
        double t = sa / (sa - sb);
        Vec2 p{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
        // Land exactly on axis-aligned clip lines.
        if (normal.y == 0)
            p.x = offset / normal.x;
        else if (normal.x == 0)
            p.y = offset / normal.y;
        return p;
    };

    std::size_t const n = ring.size();
    for (std::size_t i = 0; i < n; ++i)
    {
        Vec2 a = ring[i];
        Vec2 b = ring[(i + 1) % n];
        double sa = side(a);
        double sb = side(b);
        if (sa <= 0)
            out.push_back(a);
        if ((sa < 0 && sb > 0) || (sa > 0 && sb < 0))
            out.push_back(crossing(a, b, sa, sb));
    }
    return out;
}

std::optional<ConvexPolygon> clip_polygon_to_box(ConvexPolygon const& poly, Vec2 xmax)
{
    Box2 const& bb = poly.bounds();
    if (xmax.x <= bb.lo.x || xmax.y <= bb.lo.y)
        return std::nullopt;
    if (xmax.x >= bb.hi.x && xmax.y >= bb.hi.y)
        return poly;
    return ConvexPolygon::try_from_vertices(clip_box(poly.vertices(), xmax));
}

double clipped_area(ConvexPolygon const& poly, Vec2 xmax)
{
    Box2 const& bb = poly.bounds();
    if (xmax.x <= bb.lo.x || xmax.y <= bb.lo.y)
        return 0;
    if (xmax.x >= bb.hi.x && xmax.y >= bb.hi.y)
        return poly.area();
    if (poly.is_axis_aligned_box())
    {
        return (std::min(xmax.x, bb.hi.x) - bb.lo.x)
               * (std::min(xmax.y, bb.hi.y) - bb.lo.y);
    }
    return std::max(0.0, area(clip_box(poly.vertices(), xmax)));
}

//---------------------------------------------------------------------------//
Stratum::Stratum(ConvexPolygon base, std::vector<Interval> extrusion)
    : base_(std::move(base)), extrusion_(std::move(extrusion))
{
    measure_ = base_.area();
    for (Interval const& iv : extrusion_)
    {
        if (!(iv.hi > iv.lo))
            throw DomainError("stratum extrusion interval must have positive length");
        measure_ *= iv.length();
    }
}

bool Stratum::contains(std::span<const double> x, double tol) const
{
    if (x.size() != dim())
        return false;
    if (!base_.contains({x[0], x[1]}, tol))
        return false;
    for (std::size_t i = 0; i < extrusion_.size(); ++i)
    {
        if (x[i + 2] < extrusion_[i].lo - tol || x[i + 2] > extrusion_[i].hi + tol)
            return false;
    }
    return true;
}

double stratum_anchored_measure(Stratum const& s, std::span<const double> x)
{
    auto ext = s.extrusion();
    double tail = 1;
    for (std::size_t i = 0; i < ext.size(); ++i)
    {
        tail *= ext[i].length_below(x[i + 2]);
        if (tail == 0)
            return 0;
    }
    return clipped_area(s.base(), {x[0], x[1]}) * tail;
}

double stratum_box_measure(Stratum const& s,
                           std::span<const double> lo,
                           std::span<const double> hi)
{
    auto ext = s.extrusion();
    double tail = 1;
    for (std::size_t i = 0; i < ext.size(); ++i)
    {
        tail *= std::max(0.0, ext[i].length_below(hi[i + 2]) - ext[i].length_below(lo[i + 2]));
        if (tail == 0)
            return 0;
    }
    ConvexPolygon const& base = s.base();
    double a = clipped_area(base, {hi[0], hi[1]}) - clipped_area(base, {lo[0], hi[1]})
               - clipped_area(base, {hi[0], lo[1]}) + clipped_area(base, {lo[0], lo[1]});
    return std::max(0.0, a) * tail;
}

}  // namespace stratdisc
