#include <gtest/gtest.h>

#include "acceptcert/hom_check.hpp"

using namespace acceptcert;

namespace {

AmbientElement su4(std::vector<int> e) { return AmbientElement::su(su_diag_powers_of_i(e)); }

AmbientElement conj_entries(const AmbientElement& x) { return AmbientElement::su(x.matrix(0).conj()); }

GroupSpecPtr su4_mod_minus_one() {
  return make_group({FactorKind::su(4)}, {AmbientElement::su(-ExactMatrix::identity(4))});
}

FinGroupPtr c4_squared() { return formal_group(FormalGroupSpec::cyclic_product({4, 4})); }

HomPair su4_pair() {
  const auto src = c4_squared();
  const auto g = su4_mod_minus_one();
  const AmbientElement a = su4({0, 0, 1, 3}), b = su4({0, 1, 0, 3});
  return HomPair(hom_from_gens(src, src->generators(), {a, b}, g),
                 hom_from_gens(src, src->generators(), {conj_entries(a), conj_entries(b)}, g));
}

HomPair sp1_diag_pair(int m, int eps) {
  std::vector<FactorKind> kinds(static_cast<std::size_t>(m), FactorKind::sp1());
  std::vector<Quat> minus(static_cast<std::size_t>(m), -Quat::one());
  const auto g = make_group(kinds, {AmbientElement::sp1_tuple(minus)});
  std::vector<Quat> a(static_cast<std::size_t>(m), Quat::one()), b(static_cast<std::size_t>(m), Quat::i()),
      b2(static_cast<std::size_t>(m), eps > 0 ? Quat::i() : -Quat::i());
  a[static_cast<std::size_t>(m - 2)] = Quat::i();
  a[static_cast<std::size_t>(m - 1)] = Quat::i();
  b[static_cast<std::size_t>(m - 2)] = Quat::one();
  b2[static_cast<std::size_t>(m - 2)] = Quat::one();
  b2[static_cast<std::size_t>(m - 1)] = -Quat::i();
  const auto src = c4_squared();
  const auto A = AmbientElement::sp1_tuple(a);
  return HomPair(hom_from_gens(src, src->generators(), {A, AmbientElement::sp1_tuple(b)}, g),
                 hom_from_gens(src, src->generators(), {A, AmbientElement::sp1_tuple(b2)}, g));
}

}  // namespace

TEST(HomPair, RejectsMismatchedSources) {
  const auto g = su4_mod_minus_one();
  const auto s1 = c4_squared(), s2 = c4_squared();
  const AmbientElement a = su4({0, 0, 1, 3}), b = su4({0, 1, 0, 3});
  EXPECT_THROW(HomPair(hom_from_gens(s1, s1->generators(), {a, b}, g), hom_from_gens(s2, s2->generators(), {a, b}, g)),
               GroupError);
}

TEST(ElementConjugacy, SU4Example) {
  const HomPair p = su4_pair();
  const auto ec = is_element_conjugate(p);
  EXPECT_TRUE(ec.element_conjugate);
  EXPECT_FALSE(ec.witness.has_value());
}

TEST(ElementConjugacy, Sp1DiagonalExample) {
  EXPECT_TRUE(is_element_conjugate(sp1_diag_pair(3, -1)).element_conjugate);
}

TEST(ElementConjugacy, SquaringSecondGeneratorBreaksAClass) {
  const auto src = c4_squared();
  const auto g = su4_mod_minus_one();
  const AmbientElement a = su4({0, 0, 1, 3}), b = su4({0, 1, 0, 3});
  const HomPair p(hom_from_gens(src, src->generators(), {a, b}, g),
                  hom_from_gens(src, src->generators(), {a, b * b}, g));
  const auto ec = is_element_conjugate(p);
  EXPECT_FALSE(ec.element_conjugate);
  ASSERT_TRUE(ec.witness.has_value());
  EXPECT_EQ(*ec.witness, src->generators()[1]);
}

TEST(DecideGlobal, SU4ExampleIsNotGloballyConjugate) {
  const HomPair p = su4_pair();
  const auto v = decide_global(p);
  EXPECT_FALSE(v.globally_conjugate);
  EXPECT_EQ(v.seeds_examined, 4u);
  EXPECT_LE(v.consistent_twists, 4u);
  EXPECT_FALSE(decide_global(p.swapped()).globally_conjugate);
  EXPECT_FALSE(abelian_weight_oracle(p));
}

TEST(DecideGlobal, LiftChoiceDoesNotMatter) {
  const HomPair p = su4_pair();
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    DecideOptions opts;
    opts.lift_seed = seed;
    EXPECT_FALSE(decide_global(p, opts).globally_conjugate);
  }
  const HomPair same(p.phi(), p.phi());
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    DecideOptions opts;
    opts.lift_seed = seed;
    EXPECT_TRUE(decide_global(same, opts).globally_conjugate);
  }
}

TEST(DecideGlobal, SelfPairUsesIdentityTwist) {
  const HomPair p = su4_pair();
  for (const Hom& h : {p.phi(), p.phi2()}) {
    const HomPair same(h, h);
    const auto v = decide_global(same);
    ASSERT_TRUE(v.globally_conjugate);
    const std::size_t id = *same.target()->z_index(AmbientElement::identity(same.target()->factors()));
    for (std::size_t z : v.twist) EXPECT_EQ(z, id);
    EXPECT_TRUE(revalidate_twist(same, v.twist));
    EXPECT_TRUE(abelian_weight_oracle(same));
  }
}

TEST(DecideGlobal, ConjugatedPairIsGloballyConjugate) {
  const auto src = c4_squared();
  const auto g = su4_mod_minus_one();
  ExactMatrix perm(4, 4);
  perm(1, 0) = 1;
  perm(2, 1) = 1;
  perm(0, 2) = 1;
  perm(3, 3) = 1;  // 3-cycle, determinant 1
  const AmbientElement w = AmbientElement::su(perm);
  const AmbientElement a = su4({0, 0, 1, 3}), b = su4({0, 1, 0, 3});
  const HomPair p(hom_from_gens(src, src->generators(), {a, b}, g),
                  hom_from_gens(src, src->generators(), {w * a * w.inverse(), w * b * w.inverse()}, g));
  const auto v = decide_global(p);
  EXPECT_TRUE(v.globally_conjugate);
  EXPECT_TRUE(revalidate_twist(p, v.twist));
  EXPECT_TRUE(is_element_conjugate(p).element_conjugate);
  EXPECT_TRUE(abelian_weight_oracle(p));
}

TEST(DecideGlobal, TwistedPairNeedsNonTrivialTwist) {
  // phi'(g1) = -phi(g1): conjugate downstairs by the identity, but upstairs
  // only after the twist g1 -> -I.
  const auto src = c4_squared();
  const auto g = su4_mod_minus_one();
  const AmbientElement a = su4({0, 0, 1, 3}), b = su4({0, 1, 0, 3});
  const AmbientElement minus = AmbientElement::su(-ExactMatrix::identity(4));
  const HomPair p(hom_from_gens(src, src->generators(), {a, b}, g),
                  hom_from_gens(src, src->generators(), {minus * a, b}, g));
  const auto v = decide_global(p);
  EXPECT_TRUE(v.globally_conjugate);
}

TEST(DecideGlobal, Sp1DiagonalFamily) {
  for (int m = 3; m <= 5; ++m)
    for (int eps : {1, -1}) {
      const HomPair p = sp1_diag_pair(m, eps);
      EXPECT_TRUE(is_element_conjugate(p).element_conjugate) << m << " " << eps;
      const auto v = decide_global(p);
      EXPECT_FALSE(v.globally_conjugate) << m << " " << eps;
      EXPECT_FALSE(abelian_weight_oracle(p)) << m << " " << eps;
    }
}

TEST(DecideGlobal, KernelMismatchShortCircuits) {
  const auto src = c4_squared();
  const auto g = su4_mod_minus_one();
  const AmbientElement a = su4({0, 0, 1, 3}), b = su4({0, 1, 0, 3});
  const HomPair p(hom_from_gens(src, src->generators(), {a, b}, g),
                  hom_from_gens(src, src->generators(), {a, b * b}, g));
  EXPECT_FALSE(p.kernels_equal());
  const auto v = decide_global(p);
  EXPECT_FALSE(v.globally_conjugate);
  EXPECT_EQ(v.seeds_examined, 0u);
}

TEST(WeightOracle, Preconditions) {
  const auto q8 = closure({AmbientElement::sp1_tuple({Quat::i()}), AmbientElement::sp1_tuple({Quat::j()})});
  std::vector<AmbientElement> imgs;
  for (std::size_t s : q8->generators()) imgs.push_back(q8->ambient(s));
  const auto g = trivial_quotient({FactorKind::sp1()});
  const Hom h = hom_from_gens(q8, q8->generators(), imgs, g);
  EXPECT_THROW(abelian_weight_oracle(HomPair(h, h)), OracleNotApplicable);
}
