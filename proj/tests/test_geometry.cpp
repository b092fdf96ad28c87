#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "vcell/geometry.hpp"

namespace vcell {
namespace {

// Circumcenter from the 2x2 system |z - a|^2 = |z - b|^2 = |z - c|^2 by Cramer's rule.
Point circumcenter_by_cramer(Point a, Point b, Point c) {
    const double a11 = 2.0 * (b.x - a.x), a12 = 2.0 * (b.y - a.y);
    const double a21 = 2.0 * (c.x - a.x), a22 = 2.0 * (c.y - a.y);
    const double r1 = dot(b, b) - dot(a, a);
    const double r2 = dot(c, c) - dot(a, a);
    const double det = a11 * a22 - a12 * a21;
    return {(r1 * a22 - a12 * r2) / det, (a11 * r2 - r1 * a21) / det};
}

TEST(Geometry, CircumcircleMatchesLinearSystem) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const Point a{u(rng), u(rng)}, b{u(rng), u(rng)}, c{u(rng), u(rng)};
        if (std::abs(orient(a, b, c)) < 1e-3) continue;
        const Circle circle = circumcircle(a, b, c);
        const Point z = circumcenter_by_cramer(a, b, c);
        const double scale = 1.0 + norm(z);
        EXPECT_NEAR(circle.center.x, z.x, 1e-9 * scale);
        EXPECT_NEAR(circle.center.y, z.y, 1e-9 * scale);
        EXPECT_NEAR(circle.radius, distance(z, a), 1e-9 * scale);
    }
}

TEST(Geometry, EquilateralSideTwoHasCircumradiusTwoOverRootThree) {
    const Circle c = circumcircle({0.0, 0.0}, {2.0, 0.0}, {1.0, std::sqrt(3.0)});
    EXPECT_NEAR(c.radius, kMinVertexRadius, 1e-15);
}

TEST(Geometry, CollinearCircumcircleIsDegenerate) {
    EXPECT_THROW(circumcircle({0.0, 0.0}, {1.0, 1.0}, {2.0, 2.0}), DegenerateError);
    EXPECT_THROW(circumcircle({0.0, 0.0}, {1.0, 0.0}, {2.0, 1e-12}), DegenerateError);
}

TEST(Geometry, PolygonAreaMatchesFanTriangulation) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const auto v = test::random_feasible_polygon(rng, 3 + trial % 8);
        const ConvexPolygon p(v);
        EXPECT_NEAR(polygon_area(p), test::fan_area(v), 1e-12 * test::fan_area(v));
    }
}

TEST(Geometry, ClockwiseInputIsReversed) {
    const std::vector<Point> cw{{0.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}, {1.0, 0.0}};
    const ConvexPolygon p(cw);
    EXPECT_GT(signed_area(p.vertices()), 0.0);
    EXPECT_DOUBLE_EQ(polygon_area(p), 1.0);
}

TEST(Geometry, ConvexPolygonRejectsBadInput) {
    EXPECT_THROW(ConvexPolygon({{0.0, 0.0}, {1.0, 0.0}}), InvalidPolygon);
    EXPECT_THROW(ConvexPolygon({{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}}), InvalidPolygon);
    EXPECT_THROW(ConvexPolygon({{0.0, 0.0}, {2.0, 0.0}, {0.5, 0.5}, {0.0, 2.0}}), InvalidPolygon);
    EXPECT_THROW(ConvexPolygon({{0.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}), InvalidPolygon);
    EXPECT_THROW(ConvexPolygon({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.5, 1.0}, {0.0, 1.0}}),
                 InvalidPolygon);
    EXPECT_THROW(ConvexPolygon({{0.0, 0.0}, {std::nan(""), 0.0}, {0.0, 1.0}}), InvalidPolygon);
    // A pentagram turns twice around.
    const auto pent = test::regular_polygon(5, 1.0);
    EXPECT_THROW(ConvexPolygon({pent[0], pent[2], pent[4], pent[1], pent[3]}), InvalidPolygon);
}

TEST(Geometry, TangentPointsAreOnCircleAndPerpendicular) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    for (int trial = 0; trial < 500; ++trial) {
        const Point o{u(rng), u(rng)}, v{u(rng), u(rng)};
        if (distance(o, v) < 1.01) continue;
        const TangentPair t = tangent_points(o, v);
        for (const Point p : {t.a, t.c}) {
            EXPECT_NEAR(distance(p, o), 1.0, 1e-12);
            EXPECT_NEAR(dot(p - o, v - p), 0.0, 1e-10 * distance(o, v));
        }
        EXPECT_GT(orient(o, v, t.a), 0.0);
        EXPECT_LT(orient(o, v, t.c), 0.0);
    }
    EXPECT_THROW(tangent_points({0.0, 0.0}, {0.5, 0.0}), DomainError);
}

TEST(Geometry, HalfPlaneIntersectionSquareAndLabels) {
    std::vector<HalfPlane> planes{HalfPlane::from_direction({1.0, 0.0}, 1.0),
                                  HalfPlane::from_direction({0.0, 1.0}, 1.0),
                                  HalfPlane::from_direction({-1.0, 0.0}, 1.0),
                                  HalfPlane::from_direction({0.0, -1.0}, 1.0)};
    const ClipResult r = halfplane_intersection(planes, 10.0);
    ASSERT_EQ(r.status, ClipStatus::kBounded);
    EXPECT_NEAR(polygon_area(*r.polygon), 4.0, 1e-12);
    std::vector<std::size_t> sources = r.edge_sources;
    std::sort(sources.begin(), sources.end());
    EXPECT_EQ(sources, (std::vector<std::size_t>{0, 1, 2, 3}));
}

TEST(Geometry, HalfPlaneIntersectionUnboundedAndEmpty) {
    std::vector<HalfPlane> one{HalfPlane::from_direction({1.0, 0.0}, 0.0)};
    const ClipResult r = halfplane_intersection(one, 5.0);
    EXPECT_EQ(r.status, ClipStatus::kUnbounded);
    EXPECT_NEAR(polygon_area(*r.polygon), 50.0, 1e-9);

    std::vector<HalfPlane> disjoint{HalfPlane::from_direction({1.0, 0.0}, -1.0),
                                    HalfPlane::from_direction({-1.0, 0.0}, -1.0)};
    const ClipResult e = halfplane_intersection(disjoint, 5.0);
    EXPECT_EQ(e.status, ClipStatus::kEmpty);
    EXPECT_FALSE(e.polygon.has_value());

    std::vector<HalfPlane> sliver{HalfPlane::from_direction({1.0, 0.0}, 0.0),
                                  HalfPlane::from_direction({-1.0, 0.0}, 0.0)};
    EXPECT_THROW(halfplane_intersection(sliver, 5.0), DegenerateError);
}

TEST(Geometry, DiskContainmentMargin) {
    const ConvexPolygon hex(test::regular_polygon(6, kMinVertexRadius));
    EXPECT_NEAR(disk_containment_margin(hex, Circle({0.0, 0.0}, 1.0)), 0.0, 1e-15);
    EXPECT_TRUE(convex_hull_contains_disk(hex, Circle({0.0, 0.0}, 1.0)));
    EXPECT_FALSE(convex_hull_contains_disk(hex, Circle({0.1, 0.0}, 1.0)));
}

TEST(Geometry, ReflectAcrossLine) {
    const Point r = reflect({1.0, 2.0}, {0.0, 0.0}, {1.0, 0.0});
    EXPECT_DOUBLE_EQ(r.x, 1.0);
    EXPECT_DOUBLE_EQ(r.y, -2.0);
}

}  // namespace
}  // namespace vcell
