#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "hypb/conefield.hpp"
#include "oracles.hpp"

using namespace hypb;
using hypb::testing::rotate;
using hypb::testing::rotate_vec;
using hypb::testing::same_direction;
using hypb::testing::sample_nonsingular;

namespace {

bool same_line(Vec2 a, Vec2 b, double tol) { return same_direction(a, b, tol) || same_direction(a, -b, tol); }

Point sample_dh(const SquareTable& t, Rng& rng) {
    for (;;) {
        const Point p = sample_nonsingular(t, rng);
        if (classify_point(t, p) == RegionLabel::Dh) return p;
    }
}

}  // namespace

TEST(ConeAt, KnownValue) {
    const SquareTable t(0.09);
    const ConeAtPoint c = cone_at(t, {0.5, 0.02});
    EXPECT_EQ(c.frame, 1);
    EXPECT_EQ(c.pullback_depth, 0);
    // u = (1, -25) up to positive scaling.
    EXPECT_TRUE(same_direction(c.frame_u, {1, -25}, 1e-15));
    EXPECT_NEAR(c.frame_v.x, -0.3297056274847714, 1e-15);
    EXPECT_NEAR(c.frame_v.y, 0.2426406871192851, 1e-15);
    EXPECT_NEAR(c.frame_v.x, -0.329706, 1e-6);
    EXPECT_NEAR(c.frame_v.y, 0.242647, 1e-5);
    EXPECT_EQ(sector_angle_type(c.sector), AngleType::obtuse);
}

TEST(ConeAt, DiagonalPointsHaveAntidiagonalU) {
    const SquareTable t(0.09);
    for (double s : {0.05, 0.1, 0.2, 0.25}) {
        for (int k = 0; k < 4; ++k) {
            const Point p = CornerFrame(k).to_global({s, s});
            if (classify_point(t, p) != RegionLabel::Dh) continue;
            const ConeAtPoint c = cone_at(t, p);
            if (c.pullback_depth != 0) continue;
            EXPECT_TRUE(same_direction(c.frame_u, {1, -1}, 1e-15));
        }
    }
}

// Image of (0.5, 0.02): a point of D_h that reflects in a B-corner.
static Point corner_point_in_dh(const SquareTable& t) { return step(t, {0.5, 0.02}).post; }

TEST(ConeAt, CornerPointPullsBack) {
    const SquareTable t(0.09);
    const Point q = corner_point_in_dh(t);
    ASSERT_TRUE(step(t, q).is_corner());
    const ConeAtPoint c = cone_at(t, q);
    const ConeAtPoint next = cone_at(t, step(t, q).post);
    EXPECT_EQ(c.pullback_depth, next.pullback_depth + 1);
    EXPECT_EQ(c.base, q);
    EXPECT_TRUE(same_line(c.sector.u(), next.sector.u(), 1e-12));
    EXPECT_TRUE(same_line(c.sector.v(), next.sector.v(), 1e-12));
}

TEST(ConeAt, BlackPointIsNotInDh) {
    const SquareTable t(0.09);
    Rng rng(51);
    for (;;) {
        const Point p = sample_region_d(t, rng);
        if (classify_point(t, p) != RegionLabel::black) continue;
        EXPECT_THROW(cone_at(t, p), DomainError);
        break;
    }
}

TEST(ConeAt, RotationEquivariant) {
    const SquareTable t(0.09);
    Rng rng(52);
    for (int i = 0; i < 1000; ++i) {
        const Point p = sample_dh(t, rng);
        const ConeAtPoint c = cone_at(t, p);
        for (int k = 1; k < 4; ++k) {
            const ConeAtPoint r = cone_at(t, rotate(p, k));
            EXPECT_EQ(r.frame, (c.frame + k) % 4);
            EXPECT_EQ(r.pullback_depth, c.pullback_depth);
            EXPECT_TRUE(same_direction(r.sector.u(), rotate_vec(c.sector.u(), k), 1e-12));
            EXPECT_TRUE(same_direction(r.sector.v(), rotate_vec(c.sector.v(), k), 1e-12));
        }
    }
}

TEST(ConeLemmas, ObtuseAcuteDichotomy) {
    for (double a : {0.05, 0.09}) {
        const SquareTable t(a);
        Rng rng(53);
        int checked = 0;
        while (checked < 2000) {
            const Point p = sample_nonsingular(t, rng);
            const BoundaryPoint bp = t.forward_tangency(p);
            if (!bp.is_arc()) continue;
            const ConeAtPoint c = cone_at(t, p);
            EXPECT_EQ(sector_angle_type(c.sector), AngleType::obtuse);
            EXPECT_EQ(sector_angle_type(c.sector.mapped(jacobian(t, p))), AngleType::acute);
            ++checked;
        }
    }
}

TEST(ConeLemmas, NestingAlongTangentRays) {
    const SquareTable t(0.09);
    Rng rng(54);
    int checked = 0;
    while (checked < 1000) {
        const Point p = sample_nonsingular(t, rng);
        const BoundaryPoint bp = t.forward_tangency(p);
        if (!bp.is_arc()) continue;
        const Point q = bp.point + (0.05 + 0.9 * uniform01(rng)) * (p - bp.point);
        const BoundaryPoint bq = t.forward_tangency(q);
        if (bq.singular || !bq.is_arc()) continue;
        const ConeAtPoint cp = cone_at(t, p);
        const ConeAtPoint cq = cone_at(t, q);
        // p is farther from the tangency than q.
        EXPECT_TRUE(sector_inside(cq.sector, cp.sector));
        EXPECT_TRUE(sector_inside(cp.sector.mapped(jacobian(t, p)), cq.sector.mapped(jacobian(t, q))));
        ++checked;
    }
}

TEST(Preservation, SameArcIsNonStrictOnTheUEdge) {
    const SquareTable t(0.09);
    Rng rng(55);
    int checked = 0;
    while (checked < 200) {
        const Point p = sample_nonsingular(t, rng);
        const MapStep st = step(t, p);
        if (!st.is_arc()) continue;
        const BoundaryPoint next = t.forward_tangency(st.post);
        if (next.singular || !next.is_arc() || next.index != st.tangency.index) continue;
        const PreservationReport r = preservation_at(t, p);
        EXPECT_EQ(r.configuration, Configuration::same_arc);
        EXPECT_EQ(r.verdict, Verdict::non_strict);
        EXPECT_TRUE(same_line(r.image_sector.u(), r.target_sector.u(), 1e-9));
        ++checked;
    }
}

TEST(Preservation, AdjacentArcsAreStrict) {
    for (double a : {0.05, 0.09, 0.12}) {
        const SquareTable t(a);
        Rng rng(56);
        int checked = 0;
        while (checked < 500) {
            const Point p = sample_nonsingular(t, rng);
            const MapStep st = step(t, p);
            if (!st.is_arc()) continue;
            const BoundaryPoint next = t.forward_tangency(st.post);
            if (next.singular || !next.is_arc() || next.index == st.tangency.index) continue;
            const PreservationReport r = preservation_at(t, p);
            EXPECT_EQ(r.configuration, Configuration::adjacent_arcs);
            EXPECT_EQ(r.verdict, Verdict::strict);
            EXPECT_EQ(r.verdict == Verdict::strict, sector_strictly_inside(r.target_sector, r.image_sector));
            ++checked;
        }
    }
}

TEST(Preservation, CornerStepsFixTheCone) {
    const SquareTable t(0.09);
    const PreservationReport r = preservation_at(t, corner_point_in_dh(t));
    EXPECT_EQ(r.configuration, Configuration::corner_transit);
    EXPECT_EQ(r.verdict, Verdict::non_strict);
}

TEST(Preservation, SingularThrows) {
    const SquareTable t(0.09);
    EXPECT_THROW(preservation_at(t, {0.0, 0.36}), SingularError);
}

TEST(EventualStrictness, HyperbolicRegimeAlwaysSucceeds) {
    for (double a : {0.05, 0.09}) {
        const SquareTable t(a);
        Rng rng(57);
        std::map<std::size_t, int> order_two;
        for (int i = 0; i < 2000; ++i) {
            const Point p = sample_region_d(t, rng);
            const StrictnessResult r = eventual_strictness(t, p, 10000);
            if (r.status == StrictnessStatus::singular || r.status == StrictnessStatus::not_applicable) continue;
            ASSERT_EQ(r.status, StrictnessStatus::strict) << p.x << "," << p.y;
            EXPECT_EQ(r.verdicts.back().verdict, Verdict::strict);
            EXPECT_EQ(r.verdicts.size(), *r.n);
            for (const StepVerdict& v : r.verdicts) EXPECT_NE(v.verdict, Verdict::violated);
        }
    }
}

TEST(EventualStrictness, OrderTwoIsStrictBelowThreshold) {
    const SquareTable t(0.05);
    Rng rng(58);
    int seen = 0;
    for (int i = 0; i < 5000 && seen < 20; ++i) {
        const StrictnessResult r = eventual_strictness(t, sample_region_d(t, rng), 10000);
        for (const StepVerdict& v : r.verdicts) {
            if (v.configuration != Configuration::order_2) continue;
            EXPECT_EQ(v.verdict, Verdict::strict);
            ++seen;
        }
    }
    EXPECT_GT(seen, 0);
}

TEST(EventualStrictness, OrderTwoCanFailAboveThreshold) {
    const SquareTable t(0.12);
    Rng rng(59);
    std::map<Verdict, int> order_two;
    for (int i = 0; i < 2000; ++i) {
        const StrictnessResult r = eventual_strictness(t, sample_region_d(t, rng), 10000);
        for (const StepVerdict& v : r.verdicts) {
            if (v.configuration == Configuration::order_2) ++order_two[v.verdict];
            if (v.verdict == Verdict::violated) {
                EXPECT_EQ(v.configuration, Configuration::order_2);
            }
        }
    }
    EXPECT_GT(order_two[Verdict::violated], 0);
}

TEST(EventualStrictness, ImmediateAdjacentCrossingIsOneStep) {
    const SquareTable t(0.05);
    Rng rng(60);
    int checked = 0;
    while (checked < 50) {
        const Point p = sample_nonsingular(t, rng);
        const MapStep st = step(t, p);
        if (!st.is_arc()) continue;
        const BoundaryPoint next = t.forward_tangency(st.post);
        if (next.singular || !next.is_arc() || next.index == st.tangency.index) continue;
        const StrictnessResult r = eventual_strictness(t, p, 100);
        EXPECT_EQ(r.status, StrictnessStatus::strict);
        EXPECT_EQ(r.n, 1u);
        ++checked;
    }
}

TEST(EventualStrictness, BlackPointsAreNotApplicable) {
    const SquareTable t(0.05);
    Rng rng(61);
    int checked = 0;
    while (checked < 10) {
        const Point p = sample_region_d(t, rng);
        if (classify_point(t, p) != RegionLabel::black) continue;
        EXPECT_EQ(eventual_strictness(t, p, 100).status, StrictnessStatus::not_applicable);
        ++checked;
    }
}

TEST(ClassifyPoint, KnownPoints) {
    const SquareTable t(0.09);
    EXPECT_EQ(classify_point(t, {0.5, 0.02}), RegionLabel::Dh);
    // Period 4 through the four B-corners.
    EXPECT_EQ(classify_point(t, {0.2, 0.2}), RegionLabel::black);
    EXPECT_EQ(classify_point(t, corner_point_in_dh(t)), RegionLabel::Dh);
    EXPECT_EQ(classify_point(t, {0.0, 0.36}), RegionLabel::singular);
    Rng rng(62);
    int black = 0;
    for (int i = 0; i < 2000; ++i) {
        const Point p = sample_region_d(t, rng);
        if (classify_point(t, p) != RegionLabel::black) continue;
        const Orbit o = iterate(t, p, 4);
        for (const MapStep& st : o.steps) EXPECT_TRUE(st.is_corner());
        EXPECT_LT(distance(o.last(), p), 1e-12);
        ++black;
    }
    EXPECT_GT(black, 0);
}

TEST(OrderOfSegment, Examples) {
    const SquareTable t(0.09);
    const Orbit o = iterate(t, corner_point_in_dh(t), 50);
    ASSERT_TRUE(o.steps[0].is_corner());
    const auto k = order_of_segment(o, 0);
    ASSERT_TRUE(k.has_value());
    EXPECT_GE(*k, 1);

    // Step 0 of this orbit is an arc reflection followed by another arc reflection.
    Rng rng(63);
    int zero = 0;
    for (int i = 0; i < 500; ++i) {
        const Orbit r = iterate(t, sample_nonsingular(t, rng), 3);
        if (r.steps.size() == 3 && r.steps[0].is_arc() && r.steps[1].is_arc()) {
            EXPECT_EQ(order_of_segment(r, 0), 0);
            ++zero;
        }
    }
    EXPECT_GT(zero, 0);
}

// Up to a = 1/8 corner runs are cyclic and stop before closing a period 4.
TEST(OrderOfSegment, NeverFourInDh) {
    for (double a : {0.05, 0.09, 0.12, 0.125}) {
        const SquareTable t(a);
        Rng rng(64);
        for (int i = 0; i < 300; ++i) {
            const Orbit o = iterate(t, sample_region_d(t, rng), 300);
            for (std::size_t k = 0; k < o.steps.size(); ++k) {
                if (!o.steps[k].is_arc()) continue;
                const auto order = order_of_segment(o, k);
                if (order) {
                    EXPECT_LE(*order, 3);
                }
            }
        }
    }
}

// Beyond 1/8 opposite B-corners see each other and runs grow without bound.
TEST(OrderOfSegment, LongRunsAboveOneEighth) {
    const SquareTable t(0.2);
    Rng rng(64);
    int longest = 0;
    for (int i = 0; i < 300; ++i) {
        const Orbit o = iterate(t, sample_region_d(t, rng), 300);
        for (std::size_t k = 0; k < o.steps.size(); ++k) {
            if (!o.steps[k].is_arc()) continue;
            if (const auto order = order_of_segment(o, k)) longest = std::max(longest, *order);
        }
    }
    EXPECT_GT(longest, 3);
}

TEST(OrderOfSegment, UnbracketedIsEmpty) {
    const SquareTable t(0.09);
    const Orbit o = iterate(t, corner_point_in_dh(t), 1);
    EXPECT_FALSE(order_of_segment(o, 0).has_value());
}

TEST(OrderTwo, RunsFromArcBeforeCornerBackToSameArc) {
    const SquareTable t(0.09);
    Rng rng(65);
    int seen = 0;
    for (int i = 0; i < 500; ++i) {
        const Orbit o = iterate(t, sample_region_d(t, rng), 200);
        const auto& s = o.steps;
        for (std::size_t k = 0; k + 3 < s.size(); ++k) {
            if (!(s[k].is_arc() && s[k + 1].is_corner() && s[k + 2].is_corner() && s[k + 3].is_arc())) continue;
            const int j = s[k + 1].tangency.index;
            EXPECT_EQ(s[k].tangency.index, (j + 3) % 4);
            EXPECT_EQ(s[k + 2].tangency.index, (j + 1) % 4);
            EXPECT_EQ(s[k + 3].tangency.index, (j + 3) % 4);
            ++seen;
        }
    }
    EXPECT_GT(seen, 100);
}

TEST(Threshold, Predicate) {
    EXPECT_FALSE(threshold_predicate(hyperbolic_threshold()));
    EXPECT_TRUE(threshold_predicate(0.05));
    EXPECT_FALSE(threshold_predicate(0.12));
    EXPECT_TRUE(threshold_predicate(std::nextafter(hyperbolic_threshold(), 0.0)));
    EXPECT_THROW(threshold_predicate(0.3), ParameterError);
    EXPECT_THROW(threshold_predicate(0.0), ParameterError);
    for (double a = 0.005; a < 0.25; a += 0.005) {
        if (std::abs(a - hyperbolic_threshold()) < 1e-6) continue;
        EXPECT_EQ(threshold_predicate(a), 2 * std::sqrt(a) + 4 * a < 1) << a;
    }
}

TEST(Threshold, GeometricCheckAgrees) {
    EXPECT_TRUE(geometric_threshold_check(SquareTable(0.05)));
    EXPECT_FALSE(geometric_threshold_check(SquareTable(0.12)));
    for (int i = 0; i < 100; ++i) {
        const double a = 0.01 + (0.24 - 0.01) * (i + 0.5) / 100;
        EXPECT_EQ(geometric_threshold_check(SquareTable(a)), threshold_predicate(a)) << a;
    }
}

TEST(Threshold, FlipBracketedAtClosedForm) {
    double lo = 0.05, hi = 0.12;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        (geometric_threshold_check(SquareTable(mid)) ? lo : hi) = mid;
    }
    EXPECT_NEAR(lo, (3 - std::sqrt(5.0)) / 8, 1e-9);
}

TEST(MuLines, TangentAndAreaConstructionsAgree) {
    for (double a : {0.02, 0.05, 0.09, 0.12, 0.2}) {
        const SquareTable t(a);
        for (int j = 0; j < 4; ++j) {
            const auto [t1, t2] = mu_lines_by_tangent(t, j);
            const auto [a1, a2] = mu_lines_by_area(t, j);
            EXPECT_TRUE(same_line(t1.dir, a1.dir, 1e-9)) << a << " " << j;
            EXPECT_TRUE(same_line(t2.dir, a2.dir, 1e-9)) << a << " " << j;
            // Both pass through the B-corner.
            EXPECT_LT(std::abs(a1.side(t.b_corner(j))) / norm(a1.dir), 1e-9);
            EXPECT_LT(std::abs(a2.side(t.b_corner(j))) / norm(a2.dir), 1e-9);
        }
    }
}

TEST(StructuralInvariance, HoldsOnWholeRange) {
    EXPECT_TRUE(structural_invariance_check(SquareTable(0.09)));
    EXPECT_TRUE(structural_invariance_check(SquareTable(0.2)));
    for (int i = 0; i < 100; ++i) {
        EXPECT_TRUE(structural_invariance_check(SquareTable(0.0025 * (i + 0.5))));
    }
}

TEST(ShadedPolygons, SideSequenceIsStable) {
    const SquareTable t(0.09);
    Rng rng(66);
    int checked = 0;
    while (checked < 300) {
        const Point p = sample_nonsingular(t, rng);
        const auto run = corner_run_order(t, p);
        if (!run || *run == 0 || !t.forward_tangency(p).is_corner()) continue;
        // Corner itinerary of p until its next arc reflection.
        const auto itinerary = [&](Point q) {
            std::vector<int> out;
            for (int k = 0; k < 8; ++k) {
                const BoundaryPoint b = t.forward_tangency(q);
                if (b.singular) return std::vector<int>{-1};
                if (b.is_arc()) break;
                out.push_back(b.index);
                q = step(t, q).post;
            }
            return out;
        };
        const Point q = p + Vec2{0.02 * (uniform01(rng) - 0.5), 0.02 * (uniform01(rng) - 0.5)};
        if (t.region_of(q) != Region::D) continue;
        const auto ip = itinerary(p);
        if (ip.empty() || ip != itinerary(q)) continue;
        EXPECT_EQ(boundary_side_sequence(t, p, ip.size()), boundary_side_sequence(t, q, ip.size()));
        ++checked;
    }
}

TEST(CornerRunOrder, MatchesOrbit) {
    const SquareTable t(0.09);
    EXPECT_EQ(corner_run_order(t, {0.5, 0.02}), 0);
    EXPECT_FALSE(corner_run_order(t, {0.2, 0.2}).has_value());
    const auto k = corner_run_order(t, corner_point_in_dh(t));
    ASSERT_TRUE(k.has_value());
    EXPECT_GE(*k, 1);
    EXPECT_LE(*k, 3);
}
