// Secant-area construction: the envelope of all chords of a convex polygon
// that cut off a fixed area. The envelope is the boundary of an outer
// billiard table for which the polygon is an invariant curve.
#pragma once

#include <vector>

#include "hypb/errors.hpp"
#include "hypb/geom.hpp"

namespace hypb {

/// Directed chord with direction (cos theta, sin theta) leaving `area` on its left.
struct Chord {
    double theta = 0.0;
    Point entry;
    Point exit;
    std::size_t entry_edge = 0;
    std::size_t exit_edge = 0;

    Line line() const { return Line::through(entry, exit); }
};

/// The unique constant-area chord with direction angle theta.
/// Throws ParameterError unless 0 < area < polygon area.
Chord area_chord(const ConvexPolygon& polygon, double theta, double area);

/// Area of the polygon strictly to the left of a directed line.
double area_left_of(const ConvexPolygon& polygon, const Line& line);

/// One smooth piece of the envelope: all chords in [theta_begin, theta_end]
/// run between the same pair of polygon edges.
struct EnvelopePiece {
    std::size_t entry_edge = 0;
    std::size_t exit_edge = 0;
    double theta_begin = 0.0;
    double theta_end = 0.0;
    std::vector<double> s;      ///< normalized piece parameter in [0, 1]
    std::vector<Point> points;
    std::vector<bool> is_cusp;
    /// Parallel edges: every chord passes through one point, a corner of the table.
    bool degenerate = false;
};

/// Closed envelope curve as an ordered list of sampled pieces.
struct PiecewiseConicTable {
    double area = 0.0;
    std::vector<EnvelopePiece> pieces;

    bool has_cusps() const;
    /// Convex when no cusps were detected.
    bool convex() const { return !has_cusps(); }
    std::vector<Point> polyline() const;
};

/// Envelope of the constant-area chord family.
///
/// Each envelope point is the limit of intersections of neighbouring chords
/// at angular spacing h, refined by halving h with Richardson extrapolation
/// until successive estimates move less than 1e-8. Breakpoints where a chord
/// endpoint crosses a polygon vertex split the curve into pieces; cusps are
/// flagged where the envelope reverses its direction of travel.
PiecewiseConicTable secant_envelope(const ConvexPolygon& polygon, double area, int samples);

}  // namespace hypb
