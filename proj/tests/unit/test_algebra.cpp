#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "phg/algebra.hpp"
#include "phg/error.hpp"
#include "phg/multivector.hpp"
#include "support/oracles.hpp"

using namespace phg;

namespace {

const NumericMode Q = NumericMode::ExactRational;
const NumericMode F = NumericMode::Float64;

std::vector<Signature> small_signatures(int max_d) {
  std::vector<Signature> out;
  for (int d = 0; d <= max_d; ++d) {
    for (int r = 0; r <= std::min(d, 1); ++r) {
      for (int q = 0; q + r <= d; ++q) out.push_back(Signature{d - q - r, q, r});
    }
  }
  return out;
}

Multivector mv(const std::shared_ptr<const Algebra>& alg, std::initializer_list<std::pair<const char*, long>> terms,
               NumericMode mode = Q) {
  Multivector x(alg, mode);
  for (auto [name, c] : terms) x.set(alg->parse_blade(name), Scalar::from_int(c, mode));
  return x;
}

}  // namespace

TEST(Algebra, GeneratorSquaresFollowSignature) {
  auto cl2 = build_algebra({2, 0, 0});
  EXPECT_EQ(cl2->cayley(Blade{1}, Blade{1}).sign, 1);
  EXPECT_EQ(cl2->cayley(Blade{1}, Blade{1}).result.mask, 0u);

  auto pga = build_algebra({3, 0, 1});
  EXPECT_EQ(pga->cayley(Blade{1}, Blade{1}).sign, 0);
  EXPECT_EQ(pga->generator_name(0), "e0");

  auto cl010 = build_algebra({0, 1, 0});
  EXPECT_EQ(cl010->cayley(Blade{1}, Blade{1}).sign, -1);
}

TEST(Algebra, CeilingIsEnforced) {
  EXPECT_THROW(build_algebra({9, 0, 0}), Error);
  try {
    build_algebra({5, 0, 0}, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionCeilingExceeded);
  }
  EXPECT_NO_THROW(build_algebra({4, 0, 0}, 4));
}

TEST(Algebra, BladeProductBasics) {
  auto cl2 = build_algebra({2, 0, 0});
  Blade e1{1}, e2{2}, e12{3};
  EXPECT_EQ(blade_product(*cl2, e1, e2).sign, 1);
  EXPECT_EQ(blade_product(*cl2, e1, e2).result, e12);
  EXPECT_EQ(blade_product(*cl2, e2, e1).sign, -1);
  EXPECT_EQ(blade_product(*cl2, e12, e12).sign, -1);
  EXPECT_EQ(blade_product(*cl2, e12, e12).result.mask, 0u);
}

TEST(Algebra, CayleyTableMatchesGeneratorReducer) {
  for (const Signature& sig : small_signatures(4)) {
    auto alg = build_algebra(sig);
    for (Blade a : alg->blades()) {
      for (Blade b : alg->blades()) {
        oracle::Reduced r = oracle::reduce(sig, a.mask, b.mask);
        const CayleyEntry& e = alg->cayley(a, b);
        ASSERT_EQ(e.sign, r.sign) << sig.to_string() << " " << alg->blade_name(a) << "*" << alg->blade_name(b);
        if (r.sign != 0) {
          ASSERT_EQ(e.result.mask, a.mask ^ b.mask);
          ASSERT_EQ(e.result.mask, r.mask);
        }
        CayleyEntry direct = blade_product(*alg, a, b);
        ASSERT_EQ(direct.sign, e.sign);
        if (e.sign != 0) ASSERT_EQ(direct.result, e.result);
      }
    }
  }
}

TEST(Algebra, PerKindContributionsMatchOracle) {
  for (const Signature& sig : small_signatures(4)) {
    auto alg = build_algebra(sig);
    for (ProductKind kind : kAllProductKinds) {
      for (Blade a : alg->blades()) {
        for (Blade b : alg->blades()) {
          oracle::Reduced r = oracle::contribution(sig, kind, a.mask, b.mask);
          const CayleyEntry& e = alg->contribution(kind, a, b);
          ASSERT_EQ(e.sign, r.sign) << sig.to_string() << " " << to_string(kind) << " " << alg->blade_name(a) << ","
                                    << alg->blade_name(b);
          if (r.sign != 0) ASSERT_EQ(e.result.mask, r.mask);
        }
      }
    }
  }
}

TEST(Algebra, BladeNamesRoundTrip) {
  auto alg = build_algebra({3, 0, 1});
  EXPECT_EQ(alg->blade_name(Blade{0}), "1");
  EXPECT_EQ(alg->blade_name(Blade{0b1011}), "e013");
  for (Blade b : alg->blades()) EXPECT_EQ(alg->parse_blade(alg->blade_name(b)), b);
  EXPECT_THROW(alg->parse_blade("e9"), Error);
}

TEST(Algebra, ComplementsAreInverse) {
  for (const Signature& sig : small_signatures(4)) {
    auto alg = build_algebra(sig);
    for (Blade a : alg->blades()) {
      CayleyEntry rc = alg->right_complement(a);
      CayleyEntry back = alg->left_complement(rc.result);
      EXPECT_EQ(back.result, a);
      EXPECT_EQ(rc.sign * back.sign, 1);
      EXPECT_EQ(oracle::reduce(sig, a.mask, rc.result.mask).sign, rc.sign);
    }
  }
}

TEST(Multivector, CanonicalFormDropsZeros) {
  auto alg = build_algebra({2, 0, 0});
  Multivector x(alg, Q);
  x.set(Blade{1}, Scalar::from_int(0, Q));
  EXPECT_TRUE(x.is_zero());
  x.set(Blade{1}, Scalar::from_int(2, Q));
  x -= x;
  EXPECT_TRUE(x.is_zero());
  EXPECT_EQ(x.to_string(), "0");
}

TEST(Multivector, FloatThresholdIsRelative) {
  auto alg = build_algebra({2, 0, 0});
  Multivector x(alg, F);
  x.accumulate(Blade{0}, Scalar(1.0));
  x.accumulate(Blade{1}, Scalar(1e-15));
  x.accumulate(Blade{2}, Scalar(1e-13));
  x.canonicalize();
  EXPECT_EQ(x.terms().size(), 2u);
  EXPECT_TRUE(x.get(Blade{1}).is_zero());

  Multivector small(alg, F);
  small.set(Blade{1}, Scalar(1e-20));
  small.canonicalize();
  EXPECT_FALSE(small.is_zero());
}

TEST(Multivector, ModeAndAlgebraMismatch) {
  auto a = build_algebra({2, 0, 0});
  auto b = build_algebra({3, 0, 0});
  Multivector x = Multivector::scalar(a, Scalar::one(Q));
  Multivector y = Multivector::scalar(a, Scalar::one(F));
  Multivector z = Multivector::scalar(b, Scalar::one(Q));
  try {
    geometric_product(x, y);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ModeMismatch);
  }
  try {
    geometric_product(x, z);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AlgebraMismatch);
  }
}

TEST(Products, Examples) {
  auto cl2 = build_algebra({2, 0, 0});
  EXPECT_TRUE(outer_product(mv(cl2, {{"e1", 1}}), mv(cl2, {{"e1", 1}})).is_zero());
  EXPECT_EQ(inner_product(mv(cl2, {{"e1", 1}}), mv(cl2, {{"e12", 1}})), mv(cl2, {{"e2", 1}}));

  auto pga = build_algebra({3, 0, 1});
  EXPECT_TRUE(geometric_product(mv(pga, {{"e01", 1}}), mv(pga, {{"e02", 1}})).grade_set().is_subset_of(GradeSet::of({2})));
  EXPECT_TRUE(geometric_product(mv(pga, {{"e0", 1}}), mv(pga, {{"e0", 1}})).is_zero());
}

TEST(Products, DenseMatchesOracleOnRandomInputs) {
  std::mt19937_64 rng(11);
  for (const Signature& sig : small_signatures(4)) {
    auto alg = build_algebra(sig);
    for (ProductKind kind : kAllProductKinds) {
      for (int trial = 0; trial < 10; ++trial) {
        Multivector x = gen::multivector(rng, alg, GradeSet::full(sig.dim()), Q);
        Multivector y = gen::multivector(rng, alg, GradeSet::full(sig.dim()), Q);
        ASSERT_EQ(product(kind, x, y), oracle::product(kind, x, y)) << sig.to_string() << " " << to_string(kind);
      }
    }
  }
}

TEST(Products, GradeDecompositionOfPureGradePairs) {
  std::mt19937_64 rng(12);
  for (const Signature& sig : small_signatures(4)) {
    auto alg = build_algebra(sig);
    const int d = sig.dim();
    for (int p = 0; p <= d; ++p) {
      for (int q = 0; q <= d; ++q) {
        Multivector x = gen::multivector(rng, alg, GradeSet::singleton(p), Q, 0.0);
        Multivector y = gen::multivector(rng, alg, GradeSet::singleton(q), Q, 0.0);
        Multivector g = geometric_product(x, y);
        Multivector sum(alg, Q);
        for (int k = std::abs(p - q); k <= std::min(p + q, d); k += 2) sum += grade_project(g, k);
        ASSERT_EQ(sum, g) << sig.to_string() << " " << p << "x" << q;
      }
    }
  }
}

TEST(Products, GeometricIsInnerPlusOuterForVectors) {
  std::mt19937_64 rng(13);
  for (const Signature& sig : small_signatures(4)) {
    auto alg = build_algebra(sig);
    for (int i = 0; i < 50; ++i) {
      Multivector x = gen::multivector(rng, alg, GradeSet::singleton(1), Q);
      Multivector y = gen::multivector(rng, alg, GradeSet::singleton(1), Q);
      ASSERT_EQ(geometric_product(x, y), inner_product(x, y) + outer_product(x, y));
    }
  }
}

TEST(Products, OuterIsAssociative) {
  std::mt19937_64 rng(14);
  for (const Signature& sig : small_signatures(4)) {
    auto alg = build_algebra(sig);
    for (int i = 0; i < 10; ++i) {
      auto full = GradeSet::full(sig.dim());
      Multivector x = gen::multivector(rng, alg, full, Q), y = gen::multivector(rng, alg, full, Q),
                  z = gen::multivector(rng, alg, full, Q);
      ASSERT_EQ(outer_product(outer_product(x, y), z), outer_product(x, outer_product(y, z)));
    }
  }
}

TEST(Products, ReverseIsAntiAutomorphism) {
  std::mt19937_64 rng(15);
  for (const Signature& sig : small_signatures(4)) {
    auto alg = build_algebra(sig);
    auto full = GradeSet::full(sig.dim());
    for (int i = 0; i < 10; ++i) {
      Multivector x = gen::multivector(rng, alg, full, Q), y = gen::multivector(rng, alg, full, Q);
      ASSERT_EQ(reverse(geometric_product(x, y)), geometric_product(reverse(y), reverse(x)));
      ASSERT_EQ(reverse(reverse(x)), x);
    }
  }
}

TEST(Products, ReverseSigns) {
  auto alg = build_algebra({3, 0, 0});
  EXPECT_EQ(reverse(mv(alg, {{"1", 3}})), mv(alg, {{"1", 3}}));
  EXPECT_EQ(reverse(mv(alg, {{"e12", 1}})), mv(alg, {{"e12", -1}}));
  EXPECT_EQ(reverse(mv(alg, {{"e123", 1}})), mv(alg, {{"e123", -1}}));
}

TEST(Products, RegressiveGradeArithmetic) {
  auto alg = build_algebra({3, 0, 1});
  std::mt19937_64 rng(16);
  Multivector point = gen::multivector(rng, alg, GradeSet::singleton(1), Q, 0.0);
  Multivector tri = gen::multivector(rng, alg, GradeSet::singleton(3), Q, 0.0);
  EXPECT_TRUE(regressive_product(point, tri).grade_set().is_subset_of(GradeSet::singleton(0)));
  Multivector a = gen::multivector(rng, alg, GradeSet::singleton(2), Q, 0.0);
  Multivector b = gen::multivector(rng, alg, GradeSet::singleton(3), Q, 0.0);
  EXPECT_TRUE(regressive_product(a, b).grade_set().is_subset_of(GradeSet::singleton(1)));
  EXPECT_TRUE(regressive_product(point, point).is_zero());
}

TEST(Join, GradesAndAntisymmetry) {
  auto alg = build_algebra({3, 0, 1});
  std::mt19937_64 rng(17);
  std::vector<Multivector> pts;
  for (int i = 0; i < 3; ++i) pts.push_back(gen::multivector(rng, alg, GradeSet::singleton(1), Q, 0.0));
  Multivector j = outer_join(pts);
  EXPECT_TRUE(j.grade_set().is_subset_of(GradeSet::singleton(3)));
  std::vector<Multivector> swapped{pts[1], pts[0], pts[2]};
  EXPECT_EQ(outer_join(swapped), -j);
  std::vector<Multivector> repeated{pts[0], pts[1], pts[0]};
  EXPECT_TRUE(outer_join(repeated).is_zero());
  std::vector<Multivector> five;
  for (int i = 0; i < 5; ++i) five.push_back(gen::multivector(rng, alg, GradeSet::singleton(1), Q, 0.0));
  EXPECT_TRUE(outer_join(five).is_zero());
  std::vector<Multivector> one{pts[0]};
  EXPECT_THROW(outer_join(one), Error);
}

TEST(Sandwich, IdentityAndRotation) {
  auto alg = build_algebra({2, 0, 0});
  Multivector x = mv(alg, {{"e1", 2}, {"e2", -1}});
  SandwichResult id = sandwich(Multivector::scalar(alg, Scalar::one(Q)), x);
  EXPECT_EQ(id.value, x);
  EXPECT_TRUE(id.warnings.empty());

  for (double theta : {std::numbers::pi / 2, 0.3, -1.1}) {
    Multivector r(alg, F);
    r.set(Blade{0}, Scalar(std::cos(theta / 2)));
    r.set(Blade{3}, Scalar(-std::sin(theta / 2)));
    Multivector e1 = Multivector::blade(alg, Blade{1}, Scalar(1.0));
    SandwichResult s = sandwich(r, e1);
    EXPECT_NEAR(s.value.get(Blade{1}).to_double(), std::cos(theta), 1e-12);
    EXPECT_NEAR(s.value.get(Blade{2}).to_double(), std::sin(theta), 1e-12);
  }
}

TEST(Sandwich, MixedParityWarns) {
  auto alg = build_algebra({2, 0, 0});
  Multivector r = mv(alg, {{"1", 1}, {"e1", 1}});
  SandwichResult s = sandwich(r, mv(alg, {{"e2", 1}}));
  EXPECT_FALSE(s.warnings.empty());
}

TEST(GradeProject, ExamplesAndRecomposition) {
  auto alg = build_algebra({2, 0, 0});
  Multivector x = mv(alg, {{"1", 1}, {"e1", 1}, {"e12", 1}});
  EXPECT_EQ(grade_project(x, 1), mv(alg, {{"e1", 1}}));
  EXPECT_TRUE(grade_project(mv(alg, {{"e1", 1}}), 2).is_zero());
  EXPECT_THROW(grade_project(x, 3), Error);

  std::mt19937_64 rng(18);
  for (const Signature& sig : small_signatures(4)) {
    auto a = build_algebra(sig);
    Multivector y = gen::multivector(rng, a, GradeSet::full(sig.dim()), Q);
    Multivector sum(a, Q);
    for (int k = 0; k <= sig.dim(); ++k) sum += grade_project(y, k);
    EXPECT_EQ(sum, y);
  }
}

TEST(Norm, Examples) {
  auto cl3 = build_algebra({3, 0, 0});
  EXPECT_DOUBLE_EQ(norm(mv(cl3, {{"e1", 1}})).value, 1.0);
  auto pga = build_algebra({3, 0, 1});
  EXPECT_DOUBLE_EQ(norm(mv(pga, {{"e0", 1}})).value, 0.0);
  auto cl2 = build_algebra({2, 0, 0});
  NormValue n = norm(mv(cl2, {{"e1", 3}, {"e2", 4}}));
  EXPECT_DOUBLE_EQ(n.value, 5.0);
  ASSERT_TRUE(n.exact);
  EXPECT_EQ(*n.exact, Scalar::from_int(5, Q));
  EXPECT_EQ(n.squared, Scalar::from_int(25, Q));
  NormValue irr = norm(mv(cl2, {{"e1", 1}, {"e2", 1}}));
  EXPECT_FALSE(irr.exact);
  EXPECT_EQ(irr.squared, Scalar::from_int(2, Q));
}

TEST(Scalar, ParseAndPrint) {
  EXPECT_EQ(Scalar::parse("-2/6", Q).to_string(), "-1/3");
  EXPECT_EQ(Scalar::parse("0.125", Q), Scalar::from_ratio(1, 8, Q));
  EXPECT_EQ(Scalar::parse("1e-9", Q), Scalar::from_ratio(1, 1000000000, Q));
  EXPECT_EQ(Scalar::parse("0.1", F), Scalar(0.1));
  EXPECT_THROW(Scalar::parse("1/0", Q), Error);
  EXPECT_THROW(Scalar::parse("abc", Q), Error);
  EXPECT_THROW(Scalar::from_int(1, Q) + Scalar(1.0), Error);
}
