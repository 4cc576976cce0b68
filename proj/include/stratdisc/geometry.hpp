#pragma once

#include <optional>
#include <span>
#include <vector>

namespace stratdisc
{
//! Absolute tolerance for containment, degeneracy and convexity checks.
inline constexpr double kGeomTolerance = 1e-12;

struct Vec2
{
    double x = 0;
    double y = 0;
};

//! Twice the signed area of triangle (o, a, b); positive for a left turn.
inline double cross(Vec2 o, Vec2 a, Vec2 b)
{
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

struct Box2
{
    Vec2 lo;
    Vec2 hi;

    double area() const { return (hi.x - lo.x) * (hi.y - lo.y); }
};

//! Closed interval [lo, hi].
struct Interval
{
    double lo = 0;
    double hi = 0;

    double length() const { return hi - lo; }

    //! Length of [lo, hi] ∩ [0, x].
    double length_below(double x) const
    {
        if (x <= lo)
            return 0;
        return (x < hi ? x : hi) - lo;
    }
};

//! Shoelace area of a vertex ring. Fewer than three vertices gives 0.
double area(std::span<const Vec2> ring);

//---------------------------------------------------------------------------//
/*!
 * Convex polygon with canonical vertex order.
 *
 * Vertices are stored counter-clockwise starting at the lexicographically
 * smallest vertex, with near-duplicate and collinear vertices removed, so two
 * polygons describing the same region compare equal vertex by vertex.
 */
class ConvexPolygon
{
  public:
    //! Normalize and validate; throws DomainError for degenerate or
    //! non-convex input.
    static ConvexPolygon from_vertices(std::vector<Vec2> vertices);

    //! Like from_vertices but returns nullopt for zero-area input.
    static std::optional<ConvexPolygon> try_from_vertices(std::vector<Vec2> vertices);

    static ConvexPolygon rectangle(Box2 const& box);

    std::span<const Vec2> vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    double area() const { return area_; }
    Box2 const& bounds() const { return bounds_; }
    bool is_axis_aligned_box() const { return axis_box_; }

    //! Closed containment with absolute slack `tol`.
    bool contains(Vec2 p, double tol = kGeomTolerance) const;

  private:
    ConvexPolygon() = default;

    std::vector<Vec2> vertices_;
    double area_ = 0;
    Box2 bounds_;
    bool axis_box_ = false;
};

//! Max vertex distance between two canonical polygons; infinity if the
//! vertex counts differ.
double vertex_distance(ConvexPolygon const& a, ConvexPolygon const& b);

//! Intersection with [0, xmax.x] × [0, xmax.y]; nullopt when it has zero area.
std::optional<ConvexPolygon> clip_polygon_to_box(ConvexPolygon const& poly, Vec2 xmax);

//! Area of poly ∩ [0, xmax.x] × [0, xmax.y] without building the result.
double clipped_area(ConvexPolygon const& poly, Vec2 xmax);

//! Clip a vertex ring against the half-plane n·p <= c.
std::vector<Vec2> clip_half_plane(std::span<const Vec2> ring, Vec2 normal, double offset);

//---------------------------------------------------------------------------//
/*!
 * One cell of a partition: a convex polygon in coordinates (x1, x2) extruded
 * by closed intervals in coordinates 3..d.
 */
class Stratum
{
  public:
    Stratum(ConvexPolygon base, std::vector<Interval> extrusion);

    ConvexPolygon const& base() const { return base_; }
    std::span<const Interval> extrusion() const { return extrusion_; }
    std::size_t dim() const { return 2 + extrusion_.size(); }
    double measure() const { return measure_; }

    bool contains(std::span<const double> x, double tol = kGeomTolerance) const;

  private:
    ConvexPolygon base_;
    std::vector<Interval> extrusion_;
    double measure_;
};

//! λ(s ∩ [0, x]) for x in [0,1]^d.
double stratum_anchored_measure(Stratum const& s, std::span<const double> x);

//! λ(s ∩ [lo, hi]) for lo <= hi componentwise, by inclusion-exclusion of
//! anchored boxes on the base.
double stratum_box_measure(Stratum const& s,
                           std::span<const double> lo,
                           std::span<const double> hi);

}  // namespace stratdisc
