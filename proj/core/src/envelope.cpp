#include "hypb/envelope.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <utility>

namespace hypb {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Vec2 direction(double theta) { return {std::cos(theta), std::sin(theta)}; }

// Points x on the line satisfy cross(d, x) == offset; the left side has
// cross(d, x) > offset.
Line line_at(Vec2 d, double offset) {
    // Closest point to the origin: cross(d, o) = offset with o = offset * (-d.y, d.x).
    return {Point{-d.y * offset, d.x * offset}, d};
}

std::pair<Point, Point> chord_endpoints(const ConvexPolygon& polygon, const Line& line,
                                        std::size_t& entry_edge, std::size_t& exit_edge) {
    const std::size_t n = polygon.size();
    Point pts[2];
    std::size_t edges[2] = {0, 0};
    int found = 0;
    for (std::size_t i = 0; i < n && found < 2; ++i) {
        const Point a = polygon.vertex(i);
        const Point b = polygon.vertex(i + 1);
        const double fa = line.side(a);
        const double fb = line.side(b);
        if ((fa > 0.0) != (fb > 0.0)) {
            const double w = fa / (fa - fb);
            pts[found] = a + w * (b - a);
            edges[found] = i;
            ++found;
        }
    }
    if (found < 2) throw DomainError("line does not cross the polygon");
    if (dot(pts[0], line.dir) > dot(pts[1], line.dir)) {
        std::swap(pts[0], pts[1]);
        std::swap(edges[0], edges[1]);
    }
    entry_edge = edges[0];
    exit_edge = edges[1];
    return {pts[0], pts[1]};
}

Point intersect_chords(const ConvexPolygon& polygon, double t1, double t2, double area) {
    return intersection_point(area_chord(polygon, t1, area).line(),
                              area_chord(polygon, t2, area).line());
}

std::pair<std::size_t, std::size_t> edge_pair(const ConvexPolygon& polygon, double theta, double area) {
    const Chord c = area_chord(polygon, theta, area);
    return {c.entry_edge, c.exit_edge};
}

// Envelope point at theta from neighbouring chords inside [lo, hi].
Point envelope_point(const ConvexPolygon& polygon, double area, double theta, double lo, double hi) {
    const double width = hi - lo;
    double h = std::min(1e-2, 0.25 * width);
    const bool central = theta - lo >= h && hi - theta >= h;
    const bool forward = theta - lo < hi - theta;

    const auto estimate = [&](double step) {
        if (central) return intersect_chords(polygon, theta - step, theta + step, area);
        return forward ? intersect_chords(polygon, theta, theta + step, area)
                       : intersect_chords(polygon, theta - step, theta, area);
    };
    const auto extrapolate = [&](Point coarse, Point fine) {
        return central ? (1.0 / 3.0) * (4.0 * fine - coarse) : 2.0 * fine - coarse;
    };

    Point coarse = estimate(h);
    std::optional<Point> previous;
    Point best = coarse;
    for (int level = 0; level < 30 && h > 1e-7; ++level) {
        const Point fine = estimate(0.5 * h);
        best = extrapolate(coarse, fine);
        if (previous && distance(best, *previous) < 1e-8) break;
        previous = best;
        coarse = fine;
        h *= 0.5;
    }
    return best;
}

}  // namespace

double area_left_of(const ConvexPolygon& polygon, const Line& line) {
    std::vector<Point> clipped;
    clipped.reserve(polygon.size() + 2);
    const std::size_t n = polygon.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point a = polygon.vertex(i);
        const Point b = polygon.vertex(i + 1);
        const double fa = line.side(a);
        const double fb = line.side(b);
        if (fa > 0.0) clipped.push_back(a);
        if ((fa > 0.0) != (fb > 0.0)) {
            const double w = fa / (fa - fb);
            clipped.push_back(a + w * (b - a));
        }
    }
    if (clipped.size() < 3) return 0.0;
    return signed_area(clipped);
}

Chord area_chord(const ConvexPolygon& polygon, double theta, double area) {
    if (!(area > 0.0 && area < polygon.area())) {
        throw ParameterError("chord area must lie in (0, " + std::to_string(polygon.area()) + ")");
    }
    const Vec2 d = direction(theta);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const Point& v : polygon.vertices()) {
        lo = std::min(lo, cross(d, v));
        hi = std::max(hi, cross(d, v));
    }
    // Left area decreases from the full area at `lo` to zero at `hi`.
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (area_left_of(polygon, line_at(d, mid)) > area) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Chord chord;
    chord.theta = theta;
    const auto [entry, exit] = chord_endpoints(polygon, line_at(d, 0.5 * (lo + hi)), chord.entry_edge, chord.exit_edge);
    chord.entry = entry;
    chord.exit = exit;
    return chord;
}

bool PiecewiseConicTable::has_cusps() const {
    for (const auto& piece : pieces) {
        for (bool c : piece.is_cusp) {
            if (c) return true;
        }
    }
    return false;
}

std::vector<Point> PiecewiseConicTable::polyline() const {
    std::vector<Point> out;
    for (const auto& piece : pieces) {
        out.insert(out.end(), piece.points.begin(), piece.points.end());
    }
    return out;
}

PiecewiseConicTable secant_envelope(const ConvexPolygon& polygon, double area, int samples) {
    if (!(area > 0.0 && area < polygon.area())) {
        throw ParameterError("envelope area must lie in (0, polygon area)");
    }
    if (samples < 3) throw ParameterError("envelope needs at least 3 samples per piece");

    // Breakpoints: chord directions at which an endpoint crosses a vertex.
    const std::size_t grid = std::max<std::size_t>(4096, 128 * polygon.size());
    std::vector<double> breaks;
    auto prev_pair = edge_pair(polygon, 0.0, area);
    for (std::size_t i = 1; i <= grid; ++i) {
        const double theta = kTwoPi * static_cast<double>(i) / static_cast<double>(grid);
        const auto pair = edge_pair(polygon, theta, area);
        if (pair != prev_pair) {
            double lo = kTwoPi * static_cast<double>(i - 1) / static_cast<double>(grid);
            double hi = theta;
            while (hi - lo > 1e-14) {
                const double mid = 0.5 * (lo + hi);
                if (mid <= lo || mid >= hi) break;
                if (edge_pair(polygon, mid, area) == prev_pair) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            breaks.push_back(std::fmod(0.5 * (lo + hi), kTwoPi));
        }
        prev_pair = pair;
    }
    if (breaks.empty()) throw DomainError("constant-area chord family has no breakpoints");
    std::sort(breaks.begin(), breaks.end());

    PiecewiseConicTable table;
    table.area = area;
    const std::size_t m = breaks.size();
    int last_sign = 0;
    for (std::size_t i = 0; i < m; ++i) {
        EnvelopePiece piece;
        piece.theta_begin = breaks[i];
        piece.theta_end = (i + 1 < m) ? breaks[i + 1] : breaks[0] + kTwoPi;
        const double mid = 0.5 * (piece.theta_begin + piece.theta_end);
        const auto pair = edge_pair(polygon, mid, area);
        piece.entry_edge = pair.first;
        piece.exit_edge = pair.second;

        piece.s.reserve(static_cast<std::size_t>(samples));
        piece.points.reserve(static_cast<std::size_t>(samples));
        for (int j = 0; j < samples; ++j) {
            const double s = static_cast<double>(j) / static_cast<double>(samples - 1);
            const double theta = piece.theta_begin + s * (piece.theta_end - piece.theta_begin);
            piece.s.push_back(s);
            piece.points.push_back(envelope_point(polygon, area, theta, piece.theta_begin, piece.theta_end));
        }

        double spread = 0.0;
        for (const Point& p : piece.points) spread = std::max(spread, distance(p, piece.points.front()));
        piece.degenerate = spread < 1e-9;

        // Envelope tangent is parallel to the chord direction; a cusp shows
        // up as a reversal of travel along it.
        piece.is_cusp.assign(piece.points.size(), false);
        for (std::size_t j = 0; j + 1 < piece.points.size(); ++j) {
            const double theta = piece.theta_begin + piece.s[j] * (piece.theta_end - piece.theta_begin);
            const double move = dot(piece.points[j + 1] - piece.points[j], direction(theta));
            const int sign = move > 1e-12 ? 1 : (move < -1e-12 ? -1 : 0);
            if (sign == 0) continue;
            if (last_sign != 0 && sign != last_sign) piece.is_cusp[j] = true;
            last_sign = sign;
        }
        table.pieces.push_back(std::move(piece));
    }
    return table;
}

}  // namespace hypb
