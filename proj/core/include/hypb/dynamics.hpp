// The outer billiard map about a SquareTable, its inverse, its derivative
// and Lyapunov exponent estimates along orbits.
#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hypb/geom.hpp"
#include "hypb/table.hpp"

namespace hypb {

/// Orbit points may leave the closed square by at most this much before
/// they are snapped back; larger excursions are errors.
inline constexpr double kSnapTolerance = 1e-14;

/// One application of the map: post = 2 * tangency - pre.
struct MapStep {
    Point pre;
    Point post;
    BoundaryPoint tangency;
    /// Derivative at `pre`; absent for singular steps.
    std::optional<Mat2> derivative;

    bool singular() const { return tangency.singular; }
    bool is_arc() const { return tangency.is_arc() && !tangency.singular; }
    bool is_corner() const { return tangency.is_corner(); }
};

/// Forward map T. Throws DomainError for points in B or outside the square.
/// Singular tangencies are returned with the flag set; the image is still
/// defined there because T is continuous.
MapStep step(const SquareTable& table, Point p);

/// Inverse map. `pre` is the input, `post` its preimage and `derivative`
/// the derivative of the inverse map at the input.
MapStep step_inverse(const SquareTable& table, Point p);

/// Analytic derivative of T at p: -I for corner reflections, and
/// (1/s) [[-a, -t^2], [a^2/t^2, a]] - I in the arc frame otherwise, where
/// s = sqrt(a^2 - a x y) and t is the tangency abscissa.
/// Throws SingularError on the discontinuity lines of the derivative.
Mat2 jacobian(const SquareTable& table, Point p);

/// Derivative of the inverse map at p.
Mat2 inverse_jacobian(const SquareTable& table, Point p);

struct Orbit {
    Point initial;
    std::vector<MapStep> steps;
    /// Index of the first singular step; iteration stops after it.
    std::optional<std::size_t> singular_hit;

    Point last() const { return steps.empty() ? initial : steps.back().post; }
};

enum class TimeDirection { forward, backward };

/// Up to n steps, stopping after the first singular step.
Orbit iterate(const SquareTable& table, Point p, std::size_t n,
              TimeDirection direction = TimeDirection::forward);

struct LyapunovOptions {
    std::size_t renormalize_every = 64;
    double renormalize_above = 1e100;
    Vec2 initial_vector{1.0, 0.5};
    TimeDirection direction = TimeDirection::forward;
};

struct LyapunovEstimate {
    /// Mean logarithmic growth per iteration.
    double lambda_plus = 0.0;
    /// Iterations actually used.
    std::size_t n = 0;
    std::size_t renormalizations = 0;
    /// The orbit hit a singularity before n iterations.
    bool truncated = false;
    Point final_point;
};

/// Largest Lyapunov exponent by renormalized growth of a tangent vector
/// along the derivative cocycle.
LyapunovEstimate lyapunov(const SquareTable& table, Point p, std::size_t n,
                          const LyapunovOptions& options = {});

/// Clamps points within kSnapTolerance of the square back onto it.
/// Throws DomainError for larger excursions.
Point snap_to_square(Point p);

}  // namespace hypb
