#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace fibra;
using testing_support::corpus_fiber;

namespace {

struct Expected {
  const char* name;
  Rational c1, c2, chi, cm1;
};

// hand-computed values
const std::vector<Expected> kTable = {
    {"kodaira-II", 0, 2, rat(1, 6), 1},
    {"kodaira-I0star", 0, 6, rat(1, 2), 2},
    {"kodaira-III", 0, 3, rat(1, 4), 1},
    {"kodaira-IV", 0, 4, rat(1, 3), 1},
    {"genus2-cusp", rat(1, 6), rat(11, 6), rat(1, 6), rat(5, 6)},
    {"genus2-double-elliptic", 2, 4, rat(1, 2), 1},
    {"genus2-rhamphoid", rat(4, 5), 4, rat(2, 5), rat(6, 5)},
    {"genus3-double", 4, 2, rat(1, 2), 0},
};

// Elliptic oracle: c1^2 = 0 (K^2 vanishes on relatively minimal elliptic surfaces and I_K >= 0),
// c2 = e(F) - e(stable fiber)/e, i.e. Kodaira's Euler number minus n for I_n^* and 0 otherwise;
// c_-1 then follows from the closed formula with hand-counted p_a, F_red^2 and alpha.
struct EllipticOracle {
  const char* name;
  int euler;
  int stable_share;
  int pa, fred_sq, alpha;
};

const std::vector<EllipticOracle> kElliptic = {
    {"kodaira-II", 2, 0, 1, 0, 1},          {"kodaira-III", 3, 0, 1, 0, 1},
    {"kodaira-IV", 4, 0, 1, 0, 1},          {"kodaira-I0star", 6, 0, 0, -2, 0},
    {"kodaira-I1-star", 7, 1, 0, -2, 0},    {"kodaira-IV-star", 8, 0, 0, -2, 0},
    {"kodaira-III-star", 9, 0, 0, -2, 0},   {"kodaira-II-star", 10, 0, 0, -2, 0},
    {"kodaira-2I2", 2, 2, 1, 0, 0},
};

}  // namespace

TEST(Invariants, HandComputedTable) {
  for (const auto& x : kTable) {
    auto inv = fiber_invariants(corpus_fiber(x.name));
    EXPECT_EQ(inv.c1_sq, x.c1) << x.name;
    EXPECT_EQ(inv.c2, x.c2) << x.name;
    EXPECT_EQ(inv.chi, x.chi) << x.name;
    EXPECT_EQ(inv.c_minus_1, x.cm1) << x.name;
  }
}

TEST(Invariants, EllipticOracle) {
  for (const auto& x : kElliptic) {
    auto inv = fiber_invariants(corpus_fiber(x.name));
    EXPECT_EQ(inv.c1_sq, 0) << x.name;
    EXPECT_EQ(inv.c2, x.euler - x.stable_share) << x.name;
    EXPECT_EQ(inv.chi, Rational(x.euler - x.stable_share, 12)) << x.name;
    EXPECT_EQ(inv.c_minus_1, 4 * (1 - x.pa) + x.fred_sq + x.alpha) << x.name;
  }
}

TEST(Invariants, SemistableFibersVanish) {
  for (auto n : {"kodaira-I1", "kodaira-I2", "theta", "genus2-chain", "genus2-two-elliptic", "genus2-nodal"}) {
    auto inv = fiber_invariants(corpus_fiber(n));
    EXPECT_EQ(inv.c1_sq, 0) << n;
    EXPECT_EQ(inv.c2, 0) << n;
    EXPECT_EQ(inv.chi, 0) << n;
    EXPECT_EQ(inv.c_minus_1, 0) << n;
  }
}

TEST(Invariants, IndependentOfBaseChangeOrder) {
  for (auto n : {"kodaira-II", "kodaira-I0star", "genus2-cusp", "genus2-double-elliptic", "genus3-double",
                 "kodaira-2I2", "kodaira-I1"}) {
    auto base = fiber_invariants(corpus_fiber(n));
    for (int k : {2, 3, 5}) {
      auto other = fiber_invariants(corpus_fiber(n), base.e_used * k);
      EXPECT_EQ(other.c1_sq, base.c1_sq) << n << " x" << k;
      EXPECT_EQ(other.c2, base.c2) << n << " x" << k;
      EXPECT_EQ(other.c_minus_1, base.c_minus_1) << n << " x" << k;
    }
  }
}

TEST(Invariants, BothRoutesAgree) {
  for (auto n : {"kodaira-II-star", "genus2-rhamphoid", "genus2-cusp", "kodaira-III"}) {
    auto inv = fiber_invariants(corpus_fiber(n));
    EXPECT_EQ(inv.c1_sq_closed, inv.c1_sq_simulated) << n;
    EXPECT_EQ(12 * inv.chi, inv.c1_sq + inv.c2) << n;
  }
}

TEST(Invariants, InadmissibleOrder) { EXPECT_THROW(fiber_invariants(corpus_fiber("kodaira-II"), 4), InputError); }

TEST(FiberBound, AssertedForGenusAtLeastTwo) {
  auto cusp = check_fiber_bound(fiber_invariants(corpus_fiber("genus2-cusp")));
  EXPECT_TRUE(cusp.asserted);
  ASSERT_EQ(cusp.checks.size(), 2u);
  EXPECT_EQ(cusp.checks[1].rhs, 4);
  EXPECT_EQ(cusp.checks[1].margin(), 3);
  EXPECT_TRUE(cusp.ok());
  auto dbl = check_fiber_bound(fiber_invariants(corpus_fiber("genus3-double")));
  EXPECT_EQ(dbl.checks[1].margin(), 4);
}

TEST(FiberBound, InformationalForEllipticFibers) {
  auto ii = check_fiber_bound(fiber_invariants(corpus_fiber("kodaira-II")));
  EXPECT_FALSE(ii.asserted);
  EXPECT_TRUE(ii.checks[0].equality());
  auto star = check_fiber_bound(fiber_invariants(corpus_fiber("kodaira-I0star")));
  EXPECT_FALSE(star.checks[0].holds());
  EXPECT_TRUE(star.ok());
}

namespace {

FibrationSummary load_fibration(const std::string& name) {
  return load_document(testing_support::corpus_path("fibrations/" + name + ".json")).fibration;
}

}  // namespace

TEST(Global, SemistableFibrationKeepsRelativeInvariants) {
  auto fs = load_fibration("genus2-semistable-five");
  auto gi = global_invariants(fs);
  EXPECT_EQ(gi.i_k, fs.ksq);
  EXPECT_EQ(gi.i_chi, fs.chi);
  EXPECT_EQ(gi.i_e, fs.e);
}

TEST(Global, RationalEllipticSurfaceWithTwoI0Star) {
  auto gi = global_invariants(load_fibration("elliptic-two-I0star"));
  EXPECT_EQ(gi.i_k, 0);
  EXPECT_EQ(gi.i_chi, 0);
  EXPECT_EQ(gi.i_e, 0);
  EXPECT_TRUE(gi.ok());
}

TEST(Global, NegativeIkFlagged) {
  auto doc = testing_support::fixture("negative-ik");
  auto gi = global_invariants(doc.fibration);
  EXPECT_LT(gi.i_k, 0);
  EXPECT_FALSE(gi.ok());
}

TEST(Global, SummaryValidation) {
  auto fs = load_fibration("genus2-mixed");
  fs.s = 3;
  EXPECT_THROW(validate_summary(fs), InputError);
  fs = load_fibration("genus2-mixed");
  fs.semistable = true;
  EXPECT_THROW(validate_summary(fs), InputError);
  fs = load_fibration("genus2-mixed");
  fs.g = 3;
  EXPECT_THROW(validate_summary(fs), InputError);
}

TEST(Scaling, IdentityDegree) {
  auto r = check_base_change_scaling(load_fibration("genus2-mixed"), 6);
  EXPECT_TRUE(r.ok());
  auto one = check_base_change_scaling(load_fibration("genus2-semistable-five"), 1);
  EXPECT_TRUE(one.ok());
  EXPECT_EQ(one.ksq_tilde, 2);
}

TEST(Scaling, EllipticFibrations) {
  auto a = check_base_change_scaling(load_fibration("elliptic-two-I0star"), 2);
  EXPECT_TRUE(a.ok());
  EXPECT_EQ(a.i_k_tilde, 0);
  EXPECT_EQ(a.e_tilde, 0);  // isotrivial: the pulled-back surface is smooth over the base
  auto b = check_base_change_scaling(load_fibration("elliptic-twelve-I1"), 3);
  EXPECT_TRUE(b.ok());
  EXPECT_EQ(b.e_tilde, 36);
  EXPECT_EQ(b.chi_tilde, 3);
}

TEST(Scaling, SemistableScalesKSquare) {
  auto r = check_base_change_scaling(load_fibration("genus2-semistable-five"), 2);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.ksq_tilde, 4);
  EXPECT_EQ(r.e_tilde, 20);
}

TEST(Scaling, InadmissibleProfileIsSkipped) {
  auto r = check_base_change_scaling(load_fibration("genus2-mixed"), 4);
  EXPECT_FALSE(r.skipped.empty());
  EXPECT_FALSE(r.ok());
  EXPECT_THROW(check_base_change_scaling(load_fibration("genus2-mixed"), 6, std::vector<int>{4, 6}), InputError);
}
