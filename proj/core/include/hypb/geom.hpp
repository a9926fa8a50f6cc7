// Planar primitives shared by the billiard modules: vectors, 2x2 matrices,
// double cone sectors, lines and convex polygons.
#pragma once

#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace hypb {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
    constexpr Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
    constexpr Vec2& operator*=(double s) { x *= s; y *= s; return *this; }

    friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
    friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend constexpr Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
    friend constexpr bool operator==(Vec2, Vec2) = default;
};

using Point = Vec2;

/// Planar cross product w1.x*w2.y - w1.y*w2.x.
constexpr double cross(Vec2 w1, Vec2 w2) { return w1.x * w2.y - w1.y * w2.x; }
constexpr double dot(Vec2 w1, Vec2 w2) { return w1.x * w2.x + w1.y * w2.y; }
inline double norm(Vec2 w) { return std::hypot(w.x, w.y); }
inline double distance(Point p, Point q) { return norm(p - q); }

/// Unit vector along w. Throws std::invalid_argument for the zero vector.
Vec2 normalized(Vec2 w);

inline bool is_finite(Vec2 w) { return std::isfinite(w.x) && std::isfinite(w.y); }

/// Quarter turn counter-clockwise about the center (1/2, 1/2) of the unit square.
constexpr Point rotate_quarter(Point p) { return {1.0 - p.y, p.x}; }
/// Quarter turn counter-clockwise of a tangent vector.
constexpr Vec2 rotate_quarter_vec(Vec2 w) { return {-w.y, w.x}; }

/// Row-major 2x2 matrix.
struct Mat2 {
    double m00 = 1.0, m01 = 0.0;
    double m10 = 0.0, m11 = 1.0;

    static constexpr Mat2 identity() { return {}; }
    static constexpr Mat2 scalar(double s) { return {s, 0.0, 0.0, s}; }

    constexpr double det() const { return m00 * m11 - m01 * m10; }
    constexpr double trace() const { return m00 + m11; }
    /// Throws std::domain_error when singular.
    Mat2 inverse() const;
    /// Largest singular value.
    double spectral_norm() const;

    friend constexpr Vec2 operator*(const Mat2& m, Vec2 w) {
        return {m.m00 * w.x + m.m01 * w.y, m.m10 * w.x + m.m11 * w.y};
    }
    friend constexpr Mat2 operator*(const Mat2& a, const Mat2& b) {
        return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
                a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
    }
    friend constexpr bool operator==(const Mat2&, const Mat2&) = default;
};

/// Threshold applied to the normalized product [u,w][w,v] of unit vectors.
inline constexpr double kSectorTolerance = 1e-12;

enum class Containment { inside, boundary, outside };
enum class AngleType { acute, right, obtuse };

const char* to_string(Containment c);
const char* to_string(AngleType t);

/// Unordered double sector C = { w : [u,w][w,v] > 0 }.
///
/// The set is symmetric under w -> -w, so it is the cone spanned by u and v
/// together with its negative. Boundary directions are stored normalized;
/// scaling either one by a positive constant does not change the set, and
/// replacing (u, v) by (-u, -v) does not either.
class ConeSector {
public:
    /// Throws std::invalid_argument if u or v is zero or u is parallel to v.
    ConeSector(Vec2 u, Vec2 v);

    Vec2 u() const { return u_; }
    Vec2 v() const { return v_; }

    /// Image of the sector under a linear map.
    ConeSector mapped(const Mat2& m) const { return ConeSector(m * u_, m * v_); }

    /// Unit bisector of the nappe spanned by u and v.
    Vec2 bisector() const;

private:
    Vec2 u_;
    Vec2 v_;
};

/// Classifies w against the open sector; zero w throws std::invalid_argument.
Containment sector_contains(const ConeSector& c, Vec2 w);

/// Normalized product [u,w][w,v] used by sector_contains.
double sector_product(const ConeSector& c, Vec2 w);

/// True iff both boundary vectors of `inner` lie strictly inside `outer`
/// and in the same nappe, i.e. inner (minus the origin) is contained in
/// the interior of outer.
bool sector_strictly_inside(const ConeSector& outer, const ConeSector& inner);

/// Closed containment: boundary vectors of `inner` inside or on the
/// boundary of `outer`, in the same nappe.
bool sector_inside(const ConeSector& outer, const ConeSector& inner);

AngleType sector_angle_type(const ConeSector& c);

/// Infinite line through `origin` with direction `dir`.
struct Line {
    Point origin;
    Vec2 dir;

    static Line through(Point p, Point q) { return {p, q - p}; }
    /// Signed side of p: positive to the left of dir.
    double side(Point p) const { return cross(dir, p - origin); }
};

/// Intersection parameters (s, t) with l1.origin + s*l1.dir == l2.origin + t*l2.dir.
/// Returns false for parallel lines.
bool intersect(const Line& l1, const Line& l2, double& s, double& t);
/// Intersection point; throws std::domain_error for parallel lines.
Point intersection_point(const Line& l1, const Line& l2);

/// Closed segment [p, q].
struct Segment {
    Point p;
    Point q;
};

/// Proper intersection of two segments (interiors cross at one point).
bool segments_cross(const Segment& s1, const Segment& s2, Point* where = nullptr);

/// Strictly convex polygon with counter-clockwise vertices.
class ConvexPolygon {
public:
    /// Throws std::invalid_argument unless there are at least three vertices
    /// and every turn is strictly to the left.
    explicit ConvexPolygon(std::vector<Point> vertices);

    static ConvexPolygon unit_square();
    /// Regular k-gon inscribed in the circle of radius 1/2 about (1/2, 1/2).
    static ConvexPolygon regular(int k);

    std::span<const Point> vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    Point vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }
    /// Edge i runs from vertex i to vertex i+1.
    Segment edge(std::size_t i) const { return {vertex(i), vertex(i + 1)}; }
    double area() const { return area_; }

    bool contains(Point p) const;

private:
    std::vector<Point> vertices_;
    double area_ = 0.0;
};

/// Shoelace area, positive for counter-clockwise vertex order.
double signed_area(std::span<const Point> vertices);

}  // namespace hypb
