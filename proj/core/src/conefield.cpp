#include "hypb/conefield.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hypb/envelope.hpp"

namespace hypb {

namespace {

int wrap4(int k) { return ((k % 4) + 4) % 4; }

ConeAtPoint direct_cone(Point base, Point defining, const BoundaryPoint& t, int depth) {
    const CornerFrame frame(t.index);
    const Point f = frame.to_frame(defining);
    const Point ft = frame.to_frame(t.point);
    // (x, -y) is a positive multiple of (1, -y/x) and stays finite on the frame's y-axis.
    const Vec2 u{f.x, -f.y};
    const Vec2 v = f - ft;
    return ConeAtPoint{base, ConeSector(frame.vec_to_global(u), frame.vec_to_global(v)), u, v, t.index, depth};
}

Configuration configuration_for(const MapStep& st, const ConeAtPoint& target) {
    if (st.is_corner()) return Configuration::corner_transit;
    switch (target.pullback_depth) {
        case 0: break;
        case 1: return Configuration::order_1;
        case 2: return Configuration::order_2;
        default: return Configuration::order_3;
    }
    const int diff = wrap4(target.frame - st.tangency.index);
    if (diff == 0) return Configuration::same_arc;
    if (diff == 2) return Configuration::opposite_arcs;
    return Configuration::adjacent_arcs;
}

// Replace an edge lying on the target boundary by that boundary direction,
// keeping its orientation, so roundoff does not accumulate across
// non-strict steps.
Vec2 snap_edge(const ConeSector& target, Vec2 edge) {
    if (sector_contains(target, edge) != Containment::boundary) return edge;
    const Vec2 e = std::abs(cross(edge, target.u())) <= std::abs(cross(edge, target.v())) ? target.u() : target.v();
    return dot(edge, e) >= 0.0 ? e : -e;
}

Verdict verdict_for(const ConeSector& outer, Vec2 iu, Vec2 iv) {
    const Containment cu = sector_contains(outer, iu);
    const Containment cv = sector_contains(outer, iv);
    const Vec2 m = outer.bisector();
    const bool same_nappe = dot(iu, m) * dot(iv, m) > 0.0;
    if (cu == Containment::outside || cv == Containment::outside || !same_nappe) return Verdict::violated;
    if (cu == Containment::inside && cv == Containment::inside) return Verdict::strict;
    return Verdict::non_strict;
}

// Bisection for the point Q on `edge` such that the chord pivot->Q cuts
// off `area` from the unit square on its smaller side.
Line area_chord_through(Point pivot, Segment edge, double area) {
    static const ConvexPolygon square = ConvexPolygon::unit_square();
    const auto small_side = [&](double s) {
        const Point q = edge.p + s * (edge.q - edge.p);
        const double left = area_left_of(square, Line::through(pivot, q));
        return std::min(left, square.area() - left);
    };
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (small_side(mid) < area) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return Line::through(pivot, edge.p + (0.5 * (lo + hi)) * (edge.q - edge.p));
}

}  // namespace

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::strict: return "strict";
        case Verdict::non_strict: return "non_strict";
        case Verdict::violated: return "violated";
    }
    return "?";
}

const char* to_string(Configuration c) {
    switch (c) {
        case Configuration::same_arc: return "same_arc";
        case Configuration::adjacent_arcs: return "adjacent_arcs";
        case Configuration::opposite_arcs: return "opposite_arcs";
        case Configuration::order_1: return "order_1";
        case Configuration::order_2: return "order_2";
        case Configuration::order_3: return "order_3";
        case Configuration::corner_transit: return "corner_transit";
    }
    return "?";
}

const char* to_string(StrictnessStatus s) {
    switch (s) {
        case StrictnessStatus::strict: return "strict";
        case StrictnessStatus::violated: return "violated";
        case StrictnessStatus::exhausted: return "exhausted";
        case StrictnessStatus::singular: return "singular";
        case StrictnessStatus::not_applicable: return "not_applicable";
    }
    return "?";
}

const char* to_string(RegionLabel l) {
    switch (l) {
        case RegionLabel::Dh: return "Dh";
        case RegionLabel::black: return "black";
        case RegionLabel::singular: return "singular";
        case RegionLabel::undecided: return "undecided";
    }
    return "?";
}

Verdict compare_sectors(const ConeSector& outer, const ConeSector& inner) {
    return verdict_for(outer, inner.u(), inner.v());
}

ConeAtPoint cone_at(const SquareTable& table, Point p, int max_iter) {
    Point q = p;
    for (int depth = 0; depth <= max_iter; ++depth) {
        const BoundaryPoint t = table.forward_tangency(q);
        if (t.singular) throw SingularError("cone pullback crosses a singularity line");
        if (t.is_arc()) return direct_cone(p, q, t, depth);
        q = snap_to_square(2.0 * t.point - q);
    }
    throw DomainError("orbit reflects only in corners: point is not in D_h");
}

PreservationReport preservation_at(const SquareTable& table, Point p, int max_iter) {
    const MapStep st = step(table, p);
    if (st.singular()) throw SingularError("preservation undefined on a singularity line");
    const ConeAtPoint here = cone_at(table, p, max_iter);
    const ConeAtPoint there = cone_at(table, st.post, max_iter);
    const ConeSector image = here.sector.mapped(*st.derivative);
    return PreservationReport{p, compare_sectors(there.sector, image), configuration_for(st, there), image,
                              there.sector};
}

StrictnessResult eventual_strictness(const SquareTable& table, Point p, std::size_t max_iter) {
    StrictnessResult result;
    std::optional<ConeAtPoint> start;
    try {
        start = cone_at(table, p);
    } catch (const SingularError&) {
        result.status = StrictnessStatus::singular;
        return result;
    } catch (const DomainError&) {
        result.status = StrictnessStatus::not_applicable;
        return result;
    }

    Vec2 ku = start->sector.u();
    Vec2 kv = start->sector.v();
    Point q = p;
    for (std::size_t n = 1; n <= max_iter; ++n) {
        const MapStep st = step(table, q);
        if (st.singular()) {
            result.status = StrictnessStatus::singular;
            return result;
        }
        ku = normalized(*st.derivative * ku);
        kv = normalized(*st.derivative * kv);

        std::optional<ConeAtPoint> target;
        try {
            target = cone_at(table, st.post);
        } catch (const SingularError&) {
            result.status = StrictnessStatus::singular;
            return result;
        }
        const Configuration config = configuration_for(st, *target);
        if (st.is_arc()) ++result.order_histogram[static_cast<std::size_t>(std::min(target->pullback_depth, 3))];

        const Verdict verdict = verdict_for(target->sector, ku, kv);
        result.verdicts.push_back({n, config, verdict});
        if (verdict == Verdict::strict) {
            result.status = StrictnessStatus::strict;
            result.n = n;
            return result;
        }
        if (verdict == Verdict::violated) {
            result.status = StrictnessStatus::violated;
            result.n = n;
            return result;
        }
        ku = snap_edge(target->sector, ku);
        kv = snap_edge(target->sector, kv);
        q = st.post;
    }
    result.status = StrictnessStatus::exhausted;
    return result;
}

RegionLabel classify_point(const SquareTable& table, Point p, int max_iter) {
    Point fwd = p;
    Point bwd = p;
    for (int k = 1; k <= max_iter; ++k) {
        const MapStep f = step(table, fwd);
        if (f.singular()) return RegionLabel::singular;
        if (f.is_arc()) return RegionLabel::Dh;
        fwd = f.post;
        if (k == 4 && distance(fwd, p) < 1e-12) return RegionLabel::black;

        const MapStep b = step_inverse(table, bwd);
        if (b.singular()) return RegionLabel::singular;
        if (b.is_arc()) return RegionLabel::Dh;
        bwd = b.post;
    }
    return RegionLabel::undecided;
}

std::optional<int> order_of_segment(const Orbit& orbit, std::size_t from_step) {
    const auto& steps = orbit.steps;
    std::size_t i = from_step;
    if (i >= steps.size() || steps[i].singular()) return std::nullopt;
    if (steps[i].is_arc()) ++i;
    int count = 0;
    while (i < steps.size() && steps[i].is_corner()) {
        if (steps[i].singular()) return std::nullopt;
        ++count;
        ++i;
    }
    if (i >= steps.size() || steps[i].singular()) return std::nullopt;
    return count;
}

std::optional<int> corner_run_order(const SquareTable& table, Point p, int max_iter) {
    const BoundaryPoint t = table.forward_tangency(p);
    if (t.singular) return std::nullopt;
    if (t.is_arc()) return 0;
    int count = 1;
    Point q = p;
    bool closed = false;
    for (int k = 0; k < max_iter; ++k) {
        const MapStep st = step(table, q);
        q = st.post;
        const BoundaryPoint next = table.forward_tangency(q);
        if (next.singular) return std::nullopt;
        if (next.is_arc()) {
            closed = true;
            break;
        }
        ++count;
    }
    if (!closed) return std::nullopt;
    q = p;
    closed = false;
    for (int k = 0; k < max_iter; ++k) {
        const MapStep st = step_inverse(table, q);
        if (st.singular()) return std::nullopt;
        if (st.is_arc()) {
            closed = true;
            break;
        }
        ++count;
        q = st.post;
    }
    if (!closed) return std::nullopt;
    return count;
}

bool threshold_predicate(double a) {
    if (!(a > 0.0 && a < 0.25)) throw ParameterError("threshold predicate needs a in (0, 1/4)");
    // Equivalent to 16 a^2 - 12 a + 1 > 0 on (0, 1/4).
    return a < hyperbolic_threshold();
}

std::pair<Line, Line> mu_lines_by_tangent(const SquareTable& table, int j) {
    const Point c = table.b_corner(j);
    const auto [in, out] = table.corner_wedge(j);
    return {Line{c, in}, Line{c, out}};
}

std::pair<Line, Line> mu_lines_by_area(const SquareTable& table, int j) {
    const CornerFrame frame(j);
    const double area = 2.0 * table.a();
    // End of arc j: chord from frame point (1, 0) to the frame y-axis.
    const Line first = area_chord_through(frame.to_global({1.0, 0.0}),
                                          {frame.to_global({0.0, 0.0}), frame.to_global({0.0, 1.0})}, area);
    // Start of arc j+1: chord from the frame origin to the edge x = 1.
    const Line second = area_chord_through(frame.to_global({0.0, 0.0}),
                                           {frame.to_global({1.0, 0.0}), frame.to_global({1.0, 1.0})}, area);
    return {first, second};
}

Line midpoint_tangent(const SquareTable& table, int k) {
    const double t = std::sqrt(table.a());
    return Line{table.arc_point(k, t), table.arc_tangent(k, t)};
}

std::array<Point, 3> corner_wedge_triangle(const SquareTable& table, int j) {
    const CornerFrame frame(j);
    const auto [mu1, mu2] = mu_lines_by_tangent(table, j);
    const Line y_axis{frame.origin(), frame.y_axis()};
    return {frame.origin(), intersection_point(mu1, y_axis), intersection_point(mu1, mu2)};
}

bool geometric_threshold_check(const SquareTable& table) {
    for (int j = 0; j < 4; ++j) {
        const auto tri = corner_wedge_triangle(table, j);
        const Line ell = midpoint_tangent(table, j - 1 < 0 ? 3 : j - 1);
        int positive = 0, negative = 0;
        for (const Point& v : tri) {
            const double s = ell.side(v);
            if (s > 0.0) ++positive;
            if (s < 0.0) ++negative;
        }
        if (positive != 3 && negative != 3) return false;
    }
    return true;
}

bool structural_invariance_check(const SquareTable& table) {
    std::vector<Segment> segments;
    for (int j = 0; j < 4; ++j) {
        const CornerFrame frame(j);
        const Point c = table.b_corner(j);
        segments.push_back({frame.to_global({1.0, 0.0}), c});
        segments.push_back({frame.origin(), c});
    }
    for (std::size_t i = 0; i < segments.size(); ++i) {
        for (std::size_t k = i + 1; k < segments.size(); ++k) {
            Point where;
            if (segments_cross(segments[i], segments[k], &where) && table.region_of(where) == Region::D) {
                return false;
            }
        }
    }
    return true;
}

std::vector<int> boundary_side_sequence(const SquareTable& table, Point p, std::size_t n) {
    std::vector<int> sides;
    sides.reserve(n);
    Point q = p;
    for (std::size_t k = 0; k < n; ++k) {
        const BoundaryPoint t = table.forward_tangency(q);
        sides.push_back(t.singular ? -1 : square_side(table.boundary_projection(q), 1e-12));
        q = snap_to_square(2.0 * t.point - q);
    }
    return sides;
}

}  // namespace hypb
