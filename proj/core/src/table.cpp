#include "hypb/table.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace hypb {

namespace {

int wrap4(int k) { return ((k % 4) + 4) % 4; }

}  // namespace

const char* to_string(Region r) {
    switch (r) {
        case Region::B: return "B";
        case Region::D: return "D";
        case Region::gamma_boundary: return "gamma_boundary";
        case Region::outside: return "outside";
    }
    return "?";
}

double hyperbolic_threshold() {
    static const double value = (3.0 - std::sqrt(5.0)) / 8.0;
    return value;
}

CornerFrame::CornerFrame(int index) : index_(wrap4(index)) {}

Point CornerFrame::origin() const { return to_global({0.0, 0.0}); }
Vec2 CornerFrame::x_axis() const { return vec_to_global({1.0, 0.0}); }
Vec2 CornerFrame::y_axis() const { return vec_to_global({0.0, 1.0}); }

Point CornerFrame::to_frame(Point g) const {
    switch (index_) {
        case 0: return {g.x, g.y};
        case 1: return {g.y, 1.0 - g.x};
        case 2: return {1.0 - g.x, 1.0 - g.y};
        default: return {1.0 - g.y, g.x};
    }
}

Point CornerFrame::to_global(Point f) const {
    switch (index_) {
        case 0: return {f.x, f.y};
        case 1: return {1.0 - f.y, f.x};
        case 2: return {1.0 - f.x, 1.0 - f.y};
        default: return {f.y, 1.0 - f.x};
    }
}

Vec2 CornerFrame::vec_to_frame(Vec2 g) const {
    switch (index_) {
        case 0: return {g.x, g.y};
        case 1: return {g.y, -g.x};
        case 2: return {-g.x, -g.y};
        default: return {-g.y, g.x};
    }
}

Vec2 CornerFrame::vec_to_global(Vec2 f) const {
    switch (index_) {
        case 0: return {f.x, f.y};
        case 1: return {-f.y, f.x};
        case 2: return {-f.x, -f.y};
        default: return {f.y, -f.x};
    }
}

SquareTable::SquareTable(double a) : a_(a) {
    if (!(a > 0.0 && a < 0.25)) {
        throw ParameterError("table parameter a must lie in (0, 1/4), got " + std::to_string(a));
    }
    hyperbolic_ = a < hyperbolic_threshold();
}

Point SquareTable::b_corner(int j) const {
    // End point of arc j: frame abscissa 1/2, ordinate 2a.
    return CornerFrame(j).to_global({0.5, 2.0 * a_});
}

std::array<Point, 4> SquareTable::b_corners() const {
    return {b_corner(0), b_corner(1), b_corner(2), b_corner(3)};
}

Region SquareTable::region_of(Point p) const {
    if (!is_finite(p) || p.x < 0.0 || p.x > 1.0 || p.y < 0.0 || p.y > 1.0) return Region::outside;
    if (p.x == 0.0 || p.x == 1.0 || p.y == 0.0 || p.y == 1.0) return Region::gamma_boundary;
    const double X = p.x, Y = p.y;
    if (X * Y >= a_ && (1.0 - X) * Y >= a_ && (1.0 - X) * (1.0 - Y) >= a_ && X * (1.0 - Y) >= a_) {
        return Region::B;
    }
    return Region::D;
}

Point SquareTable::arc_point(int arc, double t) const {
    return CornerFrame(arc).to_global({t, a_ / t});
}

Vec2 SquareTable::arc_tangent(int arc, double t) const {
    return CornerFrame(arc).vec_to_global({1.0, -a_ / (t * t)});
}

std::pair<Vec2, Vec2> SquareTable::corner_wedge(int j) const {
    // End of arc j has frame slope -a/(1/4); start of arc j+1 has slope -1/(4a).
    const Vec2 in = CornerFrame(j).vec_to_global({1.0, -4.0 * a_});
    const Vec2 out = CornerFrame(j + 1).vec_to_global({4.0 * a_, -1.0});
    return {in, out};
}

template <bool Forward>
BoundaryPoint SquareTable::tangency(Point p) const {
    const Region region = region_of(p);
    if (region == Region::B) throw DomainError("point lies in the table B");
    if (region == Region::outside) throw DomainError("point lies outside the unit square");

    const double lo = t_min();
    const double hi = t_max();
    for (int k = 0; k < 4; ++k) {
        const CornerFrame frame(k);
        const Point f = frame.to_frame(p);
        const double disc = a_ * a_ - a_ * f.x * f.y;
        if (disc < 0.0) continue;
        const double s = std::sqrt(disc);
        double t = 0.0;
        if constexpr (Forward) {
            if (!(f.y > 0.0)) continue;
            t = (a_ + s) / f.y;
        } else {
            // Smaller root written without cancellation; finite on y = 0.
            t = a_ * f.x / (a_ + s);
        }
        if (std::abs(t - hi) <= kEndpointTolerance) {
            return {TangencyKind::corner, k, std::numeric_limits<double>::quiet_NaN(), b_corner(k), true};
        }
        if (std::abs(t - lo) <= kEndpointTolerance) {
            const int j = wrap4(k - 1);
            return {TangencyKind::corner, j, std::numeric_limits<double>::quiet_NaN(), b_corner(j), true};
        }
        if (t > lo && t < hi) {
            return {TangencyKind::arc, k, t, frame.to_global({t, a_ / t}), false};
        }
    }

    // No arc carries the tangency: p sees exactly one B-corner inside its wedge.
    int best = -1;
    double best_margin = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < 4; ++j) {
        const Point c = b_corner(j);
        const Vec2 w = Forward ? c - p : p - c;
        if (norm(w) == 0.0) continue;
        const Vec2 wn = normalized(w);
        const auto [in, out] = corner_wedge(j);
        const double margin = std::min(cross(normalized(in), wn), cross(wn, normalized(out)));
        if (margin > best_margin) {
            best_margin = margin;
            best = j;
        }
    }
    if (best < 0) throw DomainError("point coincides with a table corner");
    const bool singular = best_margin <= kSectorTolerance;
    return {TangencyKind::corner, best, std::numeric_limits<double>::quiet_NaN(), b_corner(best), singular};
}

BoundaryPoint SquareTable::forward_tangency(Point p) const { return tangency<true>(p); }
BoundaryPoint SquareTable::backward_tangency(Point p) const { return tangency<false>(p); }

Point SquareTable::boundary_projection(Point p) const {
    if (region_of(p) == Region::gamma_boundary) return p;
    const Point pt = forward_tangency(p).point;
    const Vec2 dir = p - pt;
    if (norm(dir) == 0.0) throw DomainError("degenerate ray: point coincides with its tangency");

    double lambda = std::numeric_limits<double>::infinity();
    int hit = -1;
    const auto consider = [&](double num, double den, int side) {
        if (den == 0.0) return;
        const double l = num / den;
        if (l > 0.0 && l < lambda) {
            lambda = l;
            hit = side;
        }
    };
    consider(0.0 - pt.y, dir.y, 0);
    consider(1.0 - pt.x, dir.x, 1);
    consider(1.0 - pt.y, dir.y, 2);
    consider(0.0 - pt.x, dir.x, 3);

    Point pb = pt + lambda * dir;
    switch (hit) {
        case 0: pb.y = 0.0; break;
        case 1: pb.x = 1.0; break;
        case 2: pb.y = 1.0; break;
        case 3: pb.x = 0.0; break;
        default: break;
    }
    pb.x = std::clamp(pb.x, 0.0, 1.0);
    pb.y = std::clamp(pb.y, 0.0, 1.0);
    return pb;
}

int square_side(Point p, double tol) {
    const bool bottom = std::abs(p.y) <= tol;
    const bool right = std::abs(p.x - 1.0) <= tol;
    const bool top = std::abs(p.y - 1.0) <= tol;
    const bool left = std::abs(p.x) <= tol;
    if (bottom + right + top + left != 1) return -1;
    if (bottom) return 0;
    if (right) return 1;
    if (top) return 2;
    return 3;
}

}  // namespace hypb
