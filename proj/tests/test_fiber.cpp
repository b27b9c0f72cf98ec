#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace fibra;
using testing_support::corpus_fiber;
using testing_support::make_fiber;
using testing_support::sing;

TEST(Fiber, SelfIntersectionsFromFiberRelation) {
  auto f = corpus_fiber("kodaira-I0star");
  auto sq = self_intersections(f);
  EXPECT_EQ(sq["C0"], -2);
  for (auto id : {"C1", "C2", "C3", "C4"}) EXPECT_EQ(sq[id], -2);
  auto d = corpus_fiber("genus2-double-elliptic");
  EXPECT_EQ(self_intersections(d)["C0"], -1);
  EXPECT_EQ(self_intersections(d)["C1"], -2);
}

TEST(Fiber, SelfNodeDoesNotEnterSelfIntersection) {
  EXPECT_EQ(self_intersections(corpus_fiber("kodaira-I1"))["C"], 0);
  EXPECT_EQ(fred_square(corpus_fiber("kodaira-I1")), 0);
}

TEST(Fiber, ArithmeticGenusOfReducedFiber) {
  EXPECT_EQ(pa_red(corpus_fiber("kodaira-I0star")), 0);
  EXPECT_EQ(pa_red(corpus_fiber("kodaira-II")), 1);
  EXPECT_EQ(pa_red(corpus_fiber("kodaira-III")), 1);
  EXPECT_EQ(pa_red(corpus_fiber("kodaira-IV")), 1);
  EXPECT_EQ(pa_red(corpus_fiber("theta")), 2);
  EXPECT_EQ(pa_red(corpus_fiber("genus2-rhamphoid")), 2);
  EXPECT_EQ(pa_red(corpus_fiber("genus2-double-elliptic")), 1);
  EXPECT_EQ(pa_red(corpus_fiber("genus3-double")), 2);
}

TEST(Fiber, GenusFromCanonicalDegree) {
  for (auto n : {"kodaira-I1", "kodaira-I2", "kodaira-I0star", "kodaira-II", "kodaira-III", "kodaira-IV",
                 "kodaira-II-star", "kodaira-III-star", "kodaira-IV-star", "kodaira-I1-star", "kodaira-2I2"})
    EXPECT_EQ(fiber_genus(corpus_fiber(n)), 1) << n;
  for (auto n : {"theta", "genus2-chain", "genus2-two-elliptic", "genus2-cusp", "genus2-rhamphoid",
                 "genus2-double-elliptic", "genus2-nodal"})
    EXPECT_EQ(fiber_genus(corpus_fiber(n)), 2) << n;
  EXPECT_EQ(fiber_genus(corpus_fiber("genus3-double")), 3);
}

TEST(Fiber, EulerNumbersOfKodairaFibers) {
  // Kodaira's table
  EXPECT_EQ(chi_top(corpus_fiber("kodaira-I1")), 1);
  EXPECT_EQ(chi_top(corpus_fiber("kodaira-II")), 2);
  EXPECT_EQ(chi_top(corpus_fiber("kodaira-III")), 3);
  EXPECT_EQ(chi_top(corpus_fiber("kodaira-IV")), 4);
  EXPECT_EQ(chi_top(corpus_fiber("kodaira-I0star")), 6);
  EXPECT_EQ(chi_top(corpus_fiber("kodaira-I1-star")), 7);
  EXPECT_EQ(chi_top(corpus_fiber("kodaira-IV-star")), 8);
  EXPECT_EQ(chi_top(corpus_fiber("kodaira-III-star")), 9);
  EXPECT_EQ(chi_top(corpus_fiber("kodaira-II-star")), 10);
}

TEST(Fiber, Classification) {
  EXPECT_EQ(classify(corpus_fiber("kodaira-I1")).kind, FiberClass::SemistableSingular);
  EXPECT_EQ(classify(corpus_fiber("kodaira-II")).kind, FiberClass::NonSemistable);
  EXPECT_EQ(classify(corpus_fiber("kodaira-2I2")).kind, FiberClass::NonSemistable);
  EXPECT_EQ(classify(make_fiber({{"C", 2, 1, {}}}, {})).kind, FiberClass::Smooth);
  auto nonmin = make_fiber({{"A", 1, 1, {}}, {"E", 0, 1, {}}, {"B", 1, 1, {}}}, {{"A", "E"}, {"E", "B"}});
  // E.F = 0 forces E^2 = -2 here, so the chain is relatively minimal
  EXPECT_TRUE(classify(nonmin).relatively_minimal);
  auto blown = make_fiber({{"A", 1, 1, {}}, {"E", 0, 2, {}}, {"B", 1, 2, {}}}, {{"A", "E"}, {"E", "B"}});
  EXPECT_THROW(self_intersections(blown), StructuralError);
}

TEST(Fiber, MinusOneCurveDetected) {
  // C + 2E with C.E = 2 forces E^2 = -1
  auto f = make_fiber({{"C", 2, 1, {}}, {"E", 0, 2, {}}}, {{"C", "E"}, {"C", "E"}});
  auto c = classify(f);
  EXPECT_FALSE(c.relatively_minimal);
  ASSERT_EQ(c.minus_one_curves.size(), 1u);
  EXPECT_EQ(c.minus_one_curves[0], "E");
}

TEST(Fiber, NodeDescriptorActsAsEdge) {
  auto f = make_fiber({{"C", 0, 1, {}}}, {}, {sing("n", {"C", "C"}, SingularityKind::Node)});
  EXPECT_EQ(pa_red(f), 1);
  EXPECT_EQ(chi_top(with_nodes_as_edges(f)), 1);
  EXPECT_TRUE(is_semistable(f));
}

TEST(Fiber, ValidationErrors) {
  EXPECT_THROW(validate_structure(make_fiber({}, {})), InputError);
  EXPECT_THROW(validate_structure(make_fiber({{"A", 0, 1, {}}, {"A", 0, 1, {}}}, {})), InputError);
  EXPECT_THROW(validate_structure(make_fiber({{"A", -1, 1, {}}}, {})), InputError);
  EXPECT_THROW(validate_structure(make_fiber({{"A", 0, 0, {}}}, {})), InputError);
  EXPECT_THROW(validate_structure(make_fiber({{"A", 0, 1, {}}}, {{"A", "Z"}})), InputError);
  EXPECT_THROW(validate_structure(make_fiber({{"A", 1, 1, {}}, {"B", 1, 1, {}}}, {})), InputError);
  EXPECT_THROW(validate_structure(make_fiber({{"A", 0, 1, {}}}, {}, {sing("p", {"A", "A"}, SingularityKind::Cusp)})),
               InputError);
  EXPECT_THROW(
      validate_structure(make_fiber({{"A", 0, 1, {}}}, {}, {sing("p", {"A", "A"}, SingularityKind::Ordinary, 2)})),
      InputError);
}

TEST(Fiber, ProximityTreeValidation) {
  auto bad = [](ProximityTree t, std::size_t nb) { EXPECT_THROW(validate_tree(t, nb, "t"), InputError); };
  bad({}, 1);
  bad({{-1, -1, {2}}}, 1);                               // branch of multiplicity 2 cannot end here
  bad({{-1, -1, {2}}, {0, -1, {1}}}, 1);                 // proximity equality fails
  bad({{-1, -1, {1, 1}}}, 2);                            // ordinary double point
  bad({{-1, -1, {2}}, {0, 5, {2}}}, 1);                  // bad satellite
  bad({{0, -1, {2}}}, 1);                                // root with parent
  EXPECT_NO_THROW(validate_tree({{-1, -1, {2}}, {0, -1, {1}}, {1, 0, {1}}}, 1, "cusp"));
  EXPECT_NO_THROW(validate_tree({{-1, -1, {2}}, {0, -1, {2}}, {1, -1, {1}}, {2, 1, {1}}}, 1, "a4"));
}

TEST(Fiber, GermInvariants) {
  auto cusp = canonical_tree({SingularityKind::Cusp, 0, {}});
  EXPECT_EQ(germ_delta(cusp, all_branches(cusp)), 1);
  auto tac = canonical_tree({SingularityKind::Tacnode, 0, {}});
  EXPECT_EQ(branch_intersection(tac, 0, 1), 2);
  EXPECT_EQ(germ_delta(tac, all_branches(tac)), 2);
  SingularityDescriptor quad{SingularityKind::Ordinary, 4, {}};
  auto t4 = canonical_tree(quad);
  EXPECT_EQ(germ_delta(t4, all_branches(t4)), 6);
}
