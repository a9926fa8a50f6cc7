// The one-parameter outer billiard table inscribed in the unit square.
//
// For 0 < a < 1/4 the table B is the set of points of the unit square with
//
//     X*Y >= a,  (1-X)*Y >= a,  (1-X)*(1-Y) >= a,  X*(1-Y) >= a,
//
// i.e. the region left after cutting off every chord of area 2a. Its
// boundary is made of four hyperbolic arcs, arc k lying near the square
// corner k (counter-clockwise from the origin), which meet at the four
// B-corners on the midlines of the square. Arc k is the curve x*y = a in the
// corner frame k, for frame abscissa x in [2a, 1/2]. The boundary is traversed
// counter-clockwise, so arc k runs from B-corner k-1 to B-corner k.
#pragma once

#include <array>

#include "hypb/errors.hpp"
#include "hypb/geom.hpp"

namespace hypb {

/// Tolerance on the frame abscissa of a tangency before it counts as an arc endpoint.
inline constexpr double kEndpointTolerance = 1e-12;

enum class Region { B, D, gamma_boundary, outside };
const char* to_string(Region r);

/// Orthonormal frame attached to a corner of the unit square.
///
/// The origin is the square corner, the x-axis follows the edge along which
/// counter-clockwise traversal leaves the corner and the y-axis the edge along
/// which it arrives. Frame k+1 is frame k turned a quarter about the center,
/// and the conversions below are written so that this relation is exact in
/// floating point for the first rotation.
class CornerFrame {
public:
    explicit CornerFrame(int index);

    int index() const { return index_; }
    Point origin() const;
    Vec2 x_axis() const;
    Vec2 y_axis() const;

    Point to_frame(Point global) const;
    Point to_global(Point local) const;
    Vec2 vec_to_frame(Vec2 global) const;
    Vec2 vec_to_global(Vec2 local) const;

private:
    int index_;
};

enum class TangencyKind { arc, corner };

/// Point of the table boundary touched by a supporting segment.
struct BoundaryPoint {
    TangencyKind kind = TangencyKind::arc;
    /// Arc index for arc tangencies, B-corner index for corners.
    int index = 0;
    /// Frame abscissa of an arc tangency (frame `index`); NaN for corners.
    double t = 0.0;
    Point point;
    /// Tangency at an arc endpoint or on a corner wedge boundary.
    bool singular = false;

    bool is_arc() const { return kind == TangencyKind::arc; }
    bool is_corner() const { return kind == TangencyKind::corner; }
};

class SquareTable {
public:
    /// Throws ParameterError unless 0 < a < 1/4.
    explicit SquareTable(double a);

    double a() const { return a_; }
    /// a < (3 - sqrt 5)/8, the range where cone preservation is proved.
    bool hyperbolic_regime() const { return hyperbolic_; }

    /// Frame abscissa range [2a, 1/2] carried by each arc.
    double t_min() const { return 2.0 * a_; }
    double t_max() const { return 0.5; }

    /// B-corner j joins arc j to arc j+1:
    /// (1/2, 2a), (1-2a, 1/2), (1/2, 1-2a), (2a, 1/2).
    Point b_corner(int j) const;
    std::array<Point, 4> b_corners() const;

    static CornerFrame frame(int k) { return CornerFrame(k); }

    Region region_of(Point p) const;

    /// Global position of the arc point with frame abscissa t.
    Point arc_point(int arc, double t) const;
    /// Counter-clockwise tangent direction (not normalized) of arc `arc` at t.
    Vec2 arc_tangent(int arc, double t) const;

    /// Tangent directions of the two arcs meeting at B-corner j: the end of
    /// arc j and the start of arc j+1. Points reflecting in the corner see it
    /// strictly between these directions.
    std::pair<Vec2, Vec2> corner_wedge(int j) const;

    /// Tangency point of the forward supporting segment from p.
    ///
    /// Arc tangencies come from the closed form t = (a + sqrt(a^2 - a x y)) / y
    /// in each corner frame; when no frame yields t inside the arc the point
    /// reflects in the B-corner whose wedge contains it. Tangencies at an arc
    /// endpoint or on a wedge boundary are flagged singular.
    /// Throws DomainError for points in B or outside the closed square.
    BoundaryPoint forward_tangency(Point p) const;
    /// Tangency point of the segment that ends at p (used by the inverse map).
    BoundaryPoint backward_tangency(Point p) const;

    /// Intersection of the ray from the forward tangency point through p
    /// with the square boundary. Points already on the boundary map to
    /// themselves. Throws DomainError when p coincides with its tangency.
    Point boundary_projection(Point p) const;

private:
    template <bool Forward>
    BoundaryPoint tangency(Point p) const;

    double a_;
    bool hyperbolic_;
};

/// Side of the unit square containing a boundary point: 0 bottom, 1 right,
/// 2 top, 3 left. Square corners (within tol) return -1.
int square_side(Point p, double tol = 1e-12);

/// Threshold (3 - sqrt 5)/8 of the hyperbolic regime, the root of
/// 16 a^2 - 12 a + 1 = 0 equivalent to 2 sqrt(a) + 4a = 1.
double hyperbolic_threshold();

}  // namespace hypb
