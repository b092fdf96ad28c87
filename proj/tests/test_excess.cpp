#include <gtest/gtest.h>

#include "support.hpp"
#include "vcell/excess.hpp"

namespace vcell {
namespace {

TEST(Excess, LatticeCenterHasTheFloorExcess) {
    const Packing pk(test::lattice_patch19());
    const ExcessReport r = excess(pk, 0);
    EXPECT_NEAR(r.excess, kExcessFloor, 1e-9);
    EXPECT_NEAR(kExcessFloor, 0.3225089615479612, 1e-15);
    EXPECT_TRUE(r.nonclose_indices.empty());
    EXPECT_EQ(r.neighbor_indices.size(), 6u);
}

TEST(Excess, SquareCell) {
    const Packing pk({{0.0, 0.0}, {2.2, 0.0}, {0.0, 2.2}, {-2.2, 0.0}, {0.0, -2.2}});
    const ExcessReport r = excess(pk, 0);
    EXPECT_NEAR(r.cell_area, 4.84, 1e-12);
    EXPECT_NEAR(r.excess, 4.84 - kPi, 1e-12);
    EXPECT_TRUE(r.nonclose_indices.empty());
}

TEST(Excess, TwoOppositeNeighborsMovedOut) {
    std::vector<Point> pts{{0.0, 0.0}};
    for (int k = 0; k < 6; ++k) {
        const double r = (k == 0 || k == 3) ? 2.35 : 2.0;
        pts.push_back(from_polar(r, k * kPi / 3.0));
    }
    const Packing pk(pts);
    const ExcessReport r = excess(pk, 0);
    std::vector<std::size_t> nonclose = r.nonclose_indices;
    std::sort(nonclose.begin(), nonclose.end());
    EXPECT_EQ(nonclose, (std::vector<std::size_t>{1, 4}));
    EXPECT_GT(r.excess, kExcessFloor);
    ASSERT_EQ(r.neighbor_distances.size(), r.neighbor_indices.size());
    for (std::size_t k = 0; k < r.neighbor_indices.size(); ++k) {
        EXPECT_DOUBLE_EQ(r.neighbor_distances[k], norm(pk[r.neighbor_indices[k]]));
    }
}

TEST(Excess, UnboundedCellThrows) {
    const Packing pk({{0.0, 0.0}, {2.0, 0.0}});
    EXPECT_THROW(excess(pk, 0), UnboundedCellError);
}

TEST(Counterexample, Preconditions) {
    CounterexampleOptions o;
    o.budget = 0.32;
    EXPECT_THROW(find_counterexample(o), std::invalid_argument);
    o.budget = 0.42;
    o.threshold = 1.9;
    EXPECT_THROW(find_counterexample(o), std::invalid_argument);
}

TEST(Counterexample, LooseThresholdSucceedsImmediately) {
    CounterexampleOptions o;
    o.threshold = 2.0;
    o.budget = 10.0;
    const CounterexampleResult r = find_counterexample(o);
    ASSERT_TRUE(r.found);
    EXPECT_EQ(r.evaluations, 1u);
    EXPECT_GT(r.report->excess, kExcessFloor);
    EXPECT_LT(r.report->excess, kExcessFloor + 0.05);
    EXPECT_GE(r.report->nonclose_indices.size(), 2u);
    EXPECT_TRUE(verify_counterexample(r.configuration->centers(), 2.0, 10.0));
}

// Whatever the search returns must survive recomputation from the raw points.
TEST(Counterexample, ResultRevalidates) {
    CounterexampleOptions o;
    o.restarts = 6;
    const CounterexampleResult r = find_counterexample(o);
    ASSERT_TRUE(r.configuration.has_value());
    std::vector<Point> pts(r.configuration->centers().begin(), r.configuration->centers().end());
    const Packing pk(pts);
    const ExcessReport fresh = excess(pk, 0, o.threshold);
    EXPECT_NEAR(fresh.excess, r.report->excess, 1e-9);
    EXPECT_GE(fresh.excess, kExcessFloor - 1e-9);
    for (std::size_t j : {1u, 2u}) {
        EXPECT_GT(norm(pk[j]), o.threshold);
        EXPECT_NE(std::find(fresh.nonclose_indices.begin(), fresh.nonclose_indices.end(), j),
                  fresh.nonclose_indices.end());
    }
    EXPECT_EQ(r.found, fresh.excess < o.budget);
    EXPECT_EQ(r.restarts.size(), 6u);
    for (const RestartSummary& s : r.restarts) {
        if (s.valid) EXPECT_GE(s.excess, r.report->excess);
    }
}

TEST(Counterexample, Deterministic) {
    CounterexampleOptions o;
    o.restarts = 4;
    o.seed = 99;
    const CounterexampleResult a = find_counterexample(o);
    o.threads = 1;
    const CounterexampleResult b = find_counterexample(o);
    ASSERT_TRUE(a.report && b.report);
    EXPECT_EQ(a.report->excess, b.report->excess);
    EXPECT_EQ(a.best_restart, b.best_restart);
    const auto pa = a.configuration->centers();
    const auto pb = b.configuration->centers();
    EXPECT_TRUE(std::equal(pa.begin(), pa.end(), pb.begin(), pb.end()));
}

TEST(Counterexample, VerifyRejectsBadConfigurations) {
    EXPECT_FALSE(verify_counterexample(std::vector<Point>{{0.0, 0.0}, {1.0, 0.0}}, 2.3, 10.0));
    const auto lattice = test::lattice_patch19();
    EXPECT_FALSE(verify_counterexample(lattice, 2.3, 10.0));
}

}  // namespace
}  // namespace vcell
