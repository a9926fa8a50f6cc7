#include "hypb/dynamics.hpp"

#include <cmath>

namespace hypb {

namespace {

// Derivative of p -> 2 p_t(p) - p in the arc frame. sigma = +1 uses the
// forward tangency root, sigma = -1 the backward one.
Mat2 arc_derivative(const SquareTable& table, const BoundaryPoint& tangency, Point p, double sigma) {
    const CornerFrame frame(tangency.index);
    const Point f = frame.to_frame(p);
    const double a = table.a();
    const double s = std::sqrt(a * a - a * f.x * f.y);
    const double t = tangency.t;
    const double t2 = t * t;
    const double k = sigma / s;
    const Mat2 local{k * -a - 1.0, k * -t2, k * a * a / t2, k * a - 1.0};
    // Conjugate by the frame rotation.
    const Vec2 c0 = frame.vec_to_global(local * frame.vec_to_frame({1.0, 0.0}));
    const Vec2 c1 = frame.vec_to_global(local * frame.vec_to_frame({0.0, 1.0}));
    return {c0.x, c1.x, c0.y, c1.y};
}

Mat2 derivative_for(const SquareTable& table, const BoundaryPoint& tangency, Point p, double sigma) {
    if (tangency.singular) throw SingularError("derivative undefined on a singularity line");
    if (tangency.is_corner()) return Mat2::scalar(-1.0);
    return arc_derivative(table, tangency, p, sigma);
}

MapStep make_step(const SquareTable& table, Point p, const BoundaryPoint& tangency, double sigma) {
    MapStep st;
    st.pre = p;
    st.tangency = tangency;
    st.post = snap_to_square(2.0 * tangency.point - p);
    if (!tangency.singular) st.derivative = derivative_for(table, tangency, p, sigma);
    return st;
}

}  // namespace

Point snap_to_square(Point p) {
    const auto snap = [](double v) {
        if (v < 0.0) {
            if (v < -kSnapTolerance) throw DomainError("orbit left the unit square");
            return 0.0;
        }
        if (v > 1.0) {
            if (v > 1.0 + kSnapTolerance) throw DomainError("orbit left the unit square");
            return 1.0;
        }
        return v;
    };
    return {snap(p.x), snap(p.y)};
}

MapStep step(const SquareTable& table, Point p) {
    return make_step(table, p, table.forward_tangency(p), 1.0);
}

MapStep step_inverse(const SquareTable& table, Point p) {
    return make_step(table, p, table.backward_tangency(p), -1.0);
}

Mat2 jacobian(const SquareTable& table, Point p) {
    return derivative_for(table, table.forward_tangency(p), p, 1.0);
}

Mat2 inverse_jacobian(const SquareTable& table, Point p) {
    return derivative_for(table, table.backward_tangency(p), p, -1.0);
}

Orbit iterate(const SquareTable& table, Point p, std::size_t n, TimeDirection direction) {
    Orbit orbit;
    orbit.initial = p;
    orbit.steps.reserve(n);
    Point current = p;
    for (std::size_t k = 0; k < n; ++k) {
        MapStep st = direction == TimeDirection::forward ? step(table, current) : step_inverse(table, current);
        current = st.post;
        const bool singular = st.singular();
        orbit.steps.push_back(std::move(st));
        if (singular) {
            orbit.singular_hit = k;
            break;
        }
    }
    return orbit;
}

LyapunovEstimate lyapunov(const SquareTable& table, Point p, std::size_t n, const LyapunovOptions& options) {
    LyapunovEstimate est;
    Vec2 v = normalized(options.initial_vector);
    // Growth is measured against the norm right after the last renormalization,
    // so isometric steps add exactly log(1) = 0.
    double ref = norm(v);
    double log_growth = 0.0;
    Point current = p;
    std::size_t done = 0;
    std::size_t since_renorm = 0;
    for (; done < n; ++done) {
        const MapStep st = options.direction == TimeDirection::forward ? step(table, current)
                                                                       : step_inverse(table, current);
        if (st.singular()) {
            est.truncated = true;
            break;
        }
        v = *st.derivative * v;
        current = st.post;
        ++since_renorm;
        const double len = norm(v);
        if (since_renorm >= options.renormalize_every || len > options.renormalize_above) {
            log_growth += std::log(len / ref);
            v = (1.0 / len) * v;
            ref = norm(v);
            since_renorm = 0;
            ++est.renormalizations;
        }
    }
    log_growth += std::log(norm(v) / ref);
    est.n = done;
    est.lambda_plus = done > 0 ? log_growth / static_cast<double>(done) : 0.0;
    est.final_point = current;
    return est;
}

}  // namespace hypb
