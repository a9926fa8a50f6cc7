// Invariant cone field on D_h and the audit of its eventual strict
// preservation under the derivative of the billiard map.
//
// At a point p whose tangency lies inside arc k the cone is the double
// sector spanned by u(p) = (1, -y/x) (tangent to the hyperbola x*y = const
// through p, written in frame k) and v(p) = p - p_t. Points reflecting in a
// B-corner get the cone of the next arc-reflecting point of their orbit:
// the derivative there is -I, which fixes every double sector.
#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "hypb/dynamics.hpp"
#include "hypb/geom.hpp"
#include "hypb/table.hpp"

namespace hypb {

inline constexpr int kDefaultMaxIter = 1000;

struct ConeAtPoint {
    Point base;
    /// Sector in global coordinates.
    ConeSector sector;
    /// u and v in the coordinates of `frame` (unnormalized).
    Vec2 frame_u;
    Vec2 frame_v;
    /// Arc whose frame defines u and v.
    int frame = 0;
    /// Number of corner reflections pulled back through; 0 for a direct cone.
    int pullback_depth = 0;
};

/// Cone at p. Throws DomainError when no forward iterate within max_iter
/// reflects inside an arc (p is not in D_h), SingularError when the
/// pullback chain crosses a singularity line.
ConeAtPoint cone_at(const SquareTable& table, Point p, int max_iter = kDefaultMaxIter);

enum class Verdict { strict, non_strict, violated };

/// How the tangencies of p and of the next arc-reflecting orbit point relate.
enum class Configuration {
    same_arc,
    adjacent_arcs,
    opposite_arcs,
    order_1,
    order_2,
    order_3,
    /// p itself reflects in a corner: the derivative is -I.
    corner_transit,
};

const char* to_string(Verdict v);
const char* to_string(Configuration c);

/// Inclusion verdict of `inner` in `outer`.
Verdict compare_sectors(const ConeSector& outer, const ConeSector& inner);

struct PreservationReport {
    Point at;
    Verdict verdict = Verdict::non_strict;
    Configuration configuration = Configuration::same_arc;
    /// dT_p C(p)
    ConeSector image_sector;
    /// C(T(p))
    ConeSector target_sector;
};

/// Compares dT_p C(p) with C(T(p)). Throws SingularError on singular orbit
/// points and DomainError outside D_h.
PreservationReport preservation_at(const SquareTable& table, Point p, int max_iter = kDefaultMaxIter);

enum class StrictnessStatus { strict, violated, exhausted, singular, not_applicable };
const char* to_string(StrictnessStatus s);

struct StepVerdict {
    std::size_t step = 0;
    Configuration configuration = Configuration::same_arc;
    Verdict verdict = Verdict::non_strict;
};

struct StrictnessResult {
    StrictnessStatus status = StrictnessStatus::exhausted;
    /// n(p): first step at which the transported cone is strictly inside.
    std::optional<std::size_t> n;
    std::vector<StepVerdict> verdicts;
    /// Orders (0..3) of the corner runs following each arc reflection seen.
    std::array<std::size_t, 4> order_histogram{};
};

/// Transports C(p) forward by the derivative cocycle and reports the first
/// n <= max_iter with dT^n C(p) strictly inside C(T^n(p)). Edges found on
/// the boundary of the target cone are carried along on that boundary.
StrictnessResult eventual_strictness(const SquareTable& table, Point p, std::size_t max_iter);

enum class RegionLabel { Dh, black, singular, undecided };
const char* to_string(RegionLabel l);

/// Dh if some iterate (forward and backward, alternating) reflects inside
/// an arc; black if p reflects in four corners and T^4(p) = p within 1e-12.
RegionLabel classify_point(const SquareTable& table, Point p, int max_iter = kDefaultMaxIter);

/// Number of consecutive corner reflections in the segment starting at
/// `from_step`: the run after an arc reflection, or the run beginning at a
/// corner reflection. Empty when the run is not closed by an arc reflection
/// inside the orbit or touches a singularity.
std::optional<int> order_of_segment(const Orbit& orbit, std::size_t from_step);

/// Length of the corner run containing p (0 when p reflects inside an arc).
/// Empty on singular or unbracketed runs.
std::optional<int> corner_run_order(const SquareTable& table, Point p, int max_iter = kDefaultMaxIter);

/// 2 sqrt(a) + 4a < 1, evaluated as a < (3 - sqrt 5)/8 so that the boundary
/// value itself is excluded.
bool threshold_predicate(double a);

/// Tangent lines to the two arcs meeting at B-corner j: the end of arc j
/// and the start of arc j+1. Each passes through a corner of the square.
std::pair<Line, Line> mu_lines_by_tangent(const SquareTable& table, int j);

/// The same lines built as chords through square corners that cut off
/// area 2a, found by bisection on the chord endpoint.
std::pair<Line, Line> mu_lines_by_area(const SquareTable& table, int j);

/// Tangent to arc k at its midpoint (sqrt a, sqrt a): x + y = 2 sqrt(a) in frame k.
Line midpoint_tangent(const SquareTable& table, int k);

/// Triangle bounded by the mu-lines of B-corner j and the square: the set of
/// points that reflect in corner j.
std::array<Point, 3> corner_wedge_triangle(const SquareTable& table, int j);

/// True iff, for every corner j, the wedge triangle of corner j misses the
/// midpoint tangent of arc j-1 (the configuration of order-two segments).
bool geometric_threshold_check(const SquareTable& table);

/// True iff the eight segments from square corners to the B-corners they
/// see along mu-lines have no crossing inside D.
bool structural_invariance_check(const SquareTable& table);

/// Side of the square hit by boundary_projection for each of the first n
/// orbit points (-1 at square corners or when undefined).
std::vector<int> boundary_side_sequence(const SquareTable& table, Point p, std::size_t n);

}  // namespace hypb
