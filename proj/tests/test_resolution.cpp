#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace fibra;
using testing_support::corpus_fiber;
using testing_support::make_fiber;
using testing_support::sing;

namespace {

std::vector<int> ms(const ResolutionLog& log) {
  std::vector<int> out;
  for (const auto& s : log.steps) out.push_back(s.m);
  return out;
}

std::vector<std::int64_t> mults(const ResolutionLog& log) {
  std::vector<std::int64_t> out;
  for (const auto& s : log.steps) out.push_back(s.exc_mult_in_total);
  return out;
}

}  // namespace

TEST(Resolution, SemistableFiberNeedsNoBlowUps) {
  for (auto n : {"kodaira-I1", "kodaira-I2", "theta", "genus2-chain", "genus2-nodal"}) {
    auto log = resolve(corpus_fiber(n));
    EXPECT_TRUE(log.steps.empty()) << n;
    EXPECT_EQ(alpha_total(log), 0);
  }
}

TEST(Resolution, CuspBlowsUpAsTwoTwoThree) {
  auto log = resolve(corpus_fiber("kodaira-II"));
  EXPECT_EQ(ms(log), (std::vector<int>{2, 2, 3}));
  EXPECT_EQ(mults(log), (std::vector<std::int64_t>{2, 3, 6}));
  EXPECT_EQ(alpha(log, "p"), 1);
  EXPECT_THROW(alpha(log, "q"), InputError);
  // strict transform meets E3 only; self-intersections of the SNC model
  auto sq = self_intersections(log.final_graph);
  EXPECT_EQ(sq["C"], -6);
  EXPECT_EQ(sq["E1"], -3);
  EXPECT_EQ(sq["E2"], -2);
  EXPECT_EQ(sq["E3"], -1);
}

TEST(Resolution, TacnodeBlowsUpAsTwoThree) {
  auto log = resolve(corpus_fiber("kodaira-III"));
  EXPECT_EQ(ms(log), (std::vector<int>{2, 3}));
  EXPECT_EQ(mults(log), (std::vector<std::int64_t>{2, 4}));
}

TEST(Resolution, OrdinaryTriplePoint) {
  auto log = resolve(corpus_fiber("kodaira-IV"));
  EXPECT_EQ(ms(log), (std::vector<int>{3}));
  EXPECT_EQ(mults(log), (std::vector<std::int64_t>{3}));
  EXPECT_EQ(alpha_total(log), 1);
}

TEST(Resolution, RhamphoidCuspTree) {
  auto log = resolve(corpus_fiber("genus2-rhamphoid"));
  EXPECT_EQ(ms(log), (std::vector<int>{2, 3, 2, 3}));
  EXPECT_EQ(mults(log), (std::vector<std::int64_t>{2, 4, 5, 10}));
  EXPECT_EQ(alpha_total(log), 2);
}

TEST(Resolution, MultiplicitiesAccountForComponentMultiplicity) {
  // cusp on a double component
  auto f = make_fiber({{"C", 1, 2, {}}}, {}, {sing("p", {"C"}, SingularityKind::Cusp)});
  auto log = resolve(f);
  EXPECT_EQ(mults(log), (std::vector<std::int64_t>{4, 6, 12}));
}

TEST(Resolution, FinalGraphIsSnc) {
  for (auto n : {"kodaira-II", "kodaira-III", "kodaira-IV", "genus2-cusp", "genus2-rhamphoid"}) {
    auto log = resolve(corpus_fiber(n));
    EXPECT_TRUE(log.final_graph.point_singularities.empty());
    EXPECT_EQ(fiber_genus(log.final_graph), fiber_genus(corpus_fiber(n))) << n;
    for (const auto& s : log.steps) EXPECT_LT(s.measure_after, s.measure_before);
  }
}

TEST(Resolution, BoundsHoldOnCorpus) {
  for (auto n : {"kodaira-II", "kodaira-III", "kodaira-IV", "genus2-cusp", "genus2-rhamphoid", "kodaira-I0star",
                 "theta", "genus3-double"}) {
    auto f = corpus_fiber(n);
    auto rb = check_resolution_bounds(resolve(f), f);
    EXPECT_TRUE(rb.ok()) << n;
  }
}

TEST(Resolution, AlphaEqualityIffTreeLike) {
  // p_a(F_red) = 0 gives equality 0 = 0
  auto f = corpus_fiber("kodaira-I0star");
  auto rb = check_resolution_bounds(resolve(f), f);
  EXPECT_TRUE(rb.alpha_check.equality());
  auto g = corpus_fiber("kodaira-II");
  auto rg = check_resolution_bounds(resolve(g), g);
  EXPECT_FALSE(rg.alpha_check.equality());
  EXPECT_TRUE(rg.equality_rule_consistent);
}

TEST(Resolution, QuadruplePointOnFourLines) {
  auto f = make_fiber({{"A", 0, 1, {}}, {"B", 0, 1, {}}, {"C", 0, 1, {}}, {"D", 0, 1, {}}}, {},
                      {sing("p", {"A", "B", "C", "D"}, SingularityKind::Ordinary, 4)});
  auto log = resolve(f);
  EXPECT_EQ(alpha_total(log), 4);
  EXPECT_EQ(pa_red(f), 3);
  auto rb = check_resolution_bounds(log, f);
  EXPECT_TRUE(rb.ok());
}
