#include "hypb/geom.hpp"

#include <algorithm>
#include <numbers>

namespace hypb {

Vec2 normalized(Vec2 w) {
    const double n = norm(w);
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw std::invalid_argument("cannot normalize a zero or non-finite vector");
    }
    return {w.x / n, w.y / n};
}

Mat2 Mat2::inverse() const {
    const double d = det();
    if (d == 0.0 || !std::isfinite(d)) {
        throw std::domain_error("singular 2x2 matrix");
    }
    return {m11 / d, -m01 / d, -m10 / d, m00 / d};
}

double Mat2::spectral_norm() const {
    // sigma_max^2 is the larger eigenvalue of M^T M.
    const double a = m00 * m00 + m10 * m10;
    const double b = m00 * m01 + m10 * m11;
    const double c = m01 * m01 + m11 * m11;
    const double half_tr = 0.5 * (a + c);
    const double disc = std::sqrt(std::max(0.0, 0.25 * (a - c) * (a - c) + b * b));
    return std::sqrt(half_tr + disc);
}

const char* to_string(Containment c) {
    switch (c) {
        case Containment::inside: return "inside";
        case Containment::boundary: return "boundary";
        case Containment::outside: return "outside";
    }
    return "?";
}

const char* to_string(AngleType t) {
    switch (t) {
        case AngleType::acute: return "acute";
        case AngleType::right: return "right";
        case AngleType::obtuse: return "obtuse";
    }
    return "?";
}

ConeSector::ConeSector(Vec2 u, Vec2 v) : u_(normalized(u)), v_(normalized(v)) {
    if (std::abs(cross(u_, v_)) <= kSectorTolerance) {
        throw std::invalid_argument("degenerate cone sector: u parallel to v");
    }
}

Vec2 ConeSector::bisector() const { return normalized(u_ + v_); }

double sector_product(const ConeSector& c, Vec2 w) {
    const Vec2 wn = normalized(w);
    return cross(c.u(), wn) * cross(wn, c.v());
}

Containment sector_contains(const ConeSector& c, Vec2 w) {
    const double prod = sector_product(c, w);
    if (prod > kSectorTolerance) return Containment::inside;
    if (prod < -kSectorTolerance) return Containment::outside;
    return Containment::boundary;
}

namespace {

// Both boundary vectors of `inner` must sit in the same nappe of `outer`;
// otherwise the cone they span sweeps across the complement.
bool same_nappe(const ConeSector& outer, const ConeSector& inner) {
    const Vec2 m = outer.bisector();
    return dot(inner.u(), m) * dot(inner.v(), m) > 0.0;
}

}  // namespace

bool sector_strictly_inside(const ConeSector& outer, const ConeSector& inner) {
    return sector_contains(outer, inner.u()) == Containment::inside &&
           sector_contains(outer, inner.v()) == Containment::inside &&
           same_nappe(outer, inner);
}

bool sector_inside(const ConeSector& outer, const ConeSector& inner) {
    return sector_contains(outer, inner.u()) != Containment::outside &&
           sector_contains(outer, inner.v()) != Containment::outside &&
           same_nappe(outer, inner);
}

AngleType sector_angle_type(const ConeSector& c) {
    const double d = dot(c.u(), c.v());
    if (d > kSectorTolerance) return AngleType::acute;
    if (d < -kSectorTolerance) return AngleType::obtuse;
    return AngleType::right;
}

bool intersect(const Line& l1, const Line& l2, double& s, double& t) {
    const double den = cross(l1.dir, l2.dir);
    if (den == 0.0) return false;
    const Vec2 d = l2.origin - l1.origin;
    s = cross(d, l2.dir) / den;
    t = cross(d, l1.dir) / den;
    return true;
}

Point intersection_point(const Line& l1, const Line& l2) {
    double s = 0.0, t = 0.0;
    if (!intersect(l1, l2, s, t)) {
        throw std::domain_error("parallel lines do not intersect");
    }
    return l1.origin + s * l1.dir;
}

bool segments_cross(const Segment& s1, const Segment& s2, Point* where) {
    double s = 0.0, t = 0.0;
    if (!intersect(Line::through(s1.p, s1.q), Line::through(s2.p, s2.q), s, t)) {
        return false;
    }
    if (s <= 0.0 || s >= 1.0 || t <= 0.0 || t >= 1.0) return false;
    if (where != nullptr) *where = s1.p + s * (s1.q - s1.p);
    return true;
}

double signed_area(std::span<const Point> vertices) {
    double twice = 0.0;
    const std::size_t n = vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        twice += cross(vertices[i], vertices[(i + 1) % n]);
    }
    return 0.5 * twice;
}

ConvexPolygon::ConvexPolygon(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
    const std::size_t n = vertices_.size();
    if (n < 3) throw std::invalid_argument("polygon needs at least three vertices");
    for (std::size_t i = 0; i < n; ++i) {
        if (!is_finite(vertices_[i])) throw std::invalid_argument("non-finite polygon vertex");
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Point a = vertices_[i];
        const Point b = vertices_[(i + 1) % n];
        const Point c = vertices_[(i + 2) % n];
        if (!(cross(b - a, c - b) > 0.0)) {
            throw std::invalid_argument("polygon is not strictly convex and counter-clockwise");
        }
    }
    area_ = signed_area(vertices_);
}

ConvexPolygon ConvexPolygon::unit_square() {
    return ConvexPolygon({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}});
}

ConvexPolygon ConvexPolygon::regular(int k) {
    if (k < 3) throw std::invalid_argument("regular polygon needs k >= 3");
    std::vector<Point> v;
    v.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        const double phi = -0.5 * std::numbers::pi + 2.0 * std::numbers::pi * i / k;
        v.push_back({0.5 + 0.5 * std::cos(phi), 0.5 + 0.5 * std::sin(phi)});
    }
    return ConvexPolygon(std::move(v));
}

bool ConvexPolygon::contains(Point p) const {
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (cross(vertex(i + 1) - vertex(i), p - vertex(i)) < 0.0) return false;
    }
    return true;
}

}  // namespace hypb
