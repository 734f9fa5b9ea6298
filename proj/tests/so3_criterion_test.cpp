#include <gtest/gtest.h>

#include "acceptcert/so3_criterion.hpp"

using namespace acceptcert;

namespace {

AmbientElement rot(const Quat& q) { return adjoint_to_so3(q); }

FinGroupPtr as_group(const CentralizerResult& r) {
  const auto* g = std::get_if<FinGroupPtr>(&r);
  return g ? *g : nullptr;
}

void expect_centralizes(const FinGroup& c, const FinGroup& delta) {
  for (std::size_t x = 0; x < c.order(); ++x)
    for (std::size_t y = 0; y < delta.order(); ++y)
      EXPECT_EQ(c.ambient(x) * delta.ambient(y), delta.ambient(y) * c.ambient(x));
}

// Brute-force centralizer of delta inside a finite overgroup.
std::size_t centralizer_order_in(const FinGroup& over, const FinGroup& delta) {
  std::size_t n = 0;
  for (std::size_t x = 0; x < over.order(); ++x) {
    bool ok = true;
    for (std::size_t s : delta.generators())
      ok = ok && over.ambient(x) * delta.ambient(s) == delta.ambient(s) * over.ambient(x);
    n += ok;
  }
  return n;
}

Quat half_sum() {
  const CycNum h(Rational(1, 2));
  return {h, h, h, h};
}

}  // namespace

TEST(RotationInfo, Examples) {
  const auto s2 = rotation_info(rotation_matrix(Quat::i()));
  EXPECT_TRUE(s2.is_half_turn);
  EXPECT_EQ(s2.axis, (Vec{1, 0, 0}));
  const auto q = rotation_info(rotation_matrix(half_sum()));
  EXPECT_FALSE(q.is_half_turn);
  EXPECT_EQ(q.axis, (Vec{1, 1, 1}));
  EXPECT_EQ(q.trace, CycNum(0));
  EXPECT_TRUE(rotation_info(ExactMatrix::identity(3)).is_identity);
  EXPECT_EQ(half_turn({1, 0, 0}), rotation_matrix(Quat::i()));
  EXPECT_EQ(half_turn({0, 2, 0}), rotation_matrix(Quat::j()));
}

TEST(SO3Centralizer, DihedralOfOrderEight) {
  const auto delta = closure({rot(Quat::eta()), rot(Quat::j())});
  ASSERT_EQ(delta->order(), 8u);
  const auto c = as_group(so3_centralizer(*delta));
  ASSERT_TRUE(c);
  EXPECT_EQ(c->order(), 2u);
  EXPECT_TRUE(c->index_of(rot(Quat::i())).has_value());
  expect_centralizes(*c, *delta);
}

TEST(SO3Centralizer, KleinFour) {
  const auto delta = closure({rot(Quat::i()), rot(Quat::j())});
  const auto c = as_group(so3_centralizer(*delta));
  ASSERT_TRUE(c);
  EXPECT_EQ(c->order(), 4u);
  for (std::size_t x = 0; x < c->order(); ++x) EXPECT_TRUE(delta->index_of(c->ambient(x)).has_value());
}

TEST(SO3Centralizer, InfiniteCases) {
  EXPECT_TRUE(std::holds_alternative<InfiniteCentralizer>(
      so3_centralizer(*closure({AmbientElement::identity({FactorKind::so3()})}))));
  EXPECT_TRUE(std::holds_alternative<InfiniteCentralizer>(so3_centralizer(*closure({rot(Quat::eta())}))));
}

TEST(SO3Centralizer, AgreesWithBruteForceInsideOctahedral) {
  // Every finite centralizer of a subgroup of the rotation octahedral group
  // lies inside that group, so brute force inside it is a full check.
  const auto oct = closure({rot(Quat::eta()), rot(half_sum())});
  ASSERT_EQ(oct->order(), 24u);
  const std::vector<std::vector<Quat>> subsets = {
      {Quat::eta(), Quat::j()}, {Quat::i(), Quat::j()}, {half_sum(), Quat::eta()}, {half_sum()},
      {Quat::i(), Quat::k()},   {Quat::eta(), Quat::i()}};
  for (const auto& qs : subsets) {
    std::vector<AmbientElement> gens;
    for (const auto& q : qs) gens.push_back(rot(q));
    const auto delta = closure(gens);
    const auto c = as_group(so3_centralizer(*delta));
    if (!c) continue;
    expect_centralizes(*c, *delta);
    EXPECT_EQ(c->order(), centralizer_order_in(*oct, *delta));
  }
}

TEST(Sp1Centralizer, Examples) {
  const auto ij = as_group(sp1_centralizer(*closure({AmbientElement::sp1_tuple({Quat::i()}),
                                                     AmbientElement::sp1_tuple({Quat::j()})})));
  ASSERT_TRUE(ij);
  EXPECT_EQ(ij->order(), 2u);
  EXPECT_TRUE(std::holds_alternative<InfiniteCentralizer>(
      sp1_centralizer(*closure({AmbientElement::sp1_tuple({Quat::i()})}))));
  EXPECT_TRUE(std::holds_alternative<InfiniteCentralizer>(
      sp1_centralizer(*closure({AmbientElement::sp1_tuple({-Quat::one()})}))));
}

TEST(GammaBarPrime, TrivialCases) {
  const auto trivial = closure({AmbientElement::identity({FactorKind::so3(), FactorKind::so3(), FactorKind::so3()})});
  EXPECT_EQ(gamma_bar_prime(trivial)->order(), 1u);
  // No half-turn components anywhere: order-3 rotations in each factor.
  const auto r3 = rotation_matrix(half_sum());
  const auto c3 = closure({AmbientElement({FactorKind::so3(), FactorKind::so3(), FactorKind::so3()}, {r3, r3, r3})});
  EXPECT_EQ(gamma_bar_prime(c3)->order(), c3->order());
}

TEST(Criterion, ExampleGroup) {
  const auto s = make_setup(example_3a1_lifts());
  EXPECT_EQ(s.lambda->order(), 2 * s.gbar->order());
  const auto xd = compute_X(s);
  EXPECT_EQ(xd.z_gbar->order(), 8u);
  EXPECT_EQ(xd.pi_zg.size(), 1u);
  EXPECT_EQ(xd.x.group->order(), 8u);
  for (std::size_t c = 0; c < xd.z_gbar->order(); ++c)
    for (std::size_t g = 0; g < s.gbar->order(); ++g)
      EXPECT_EQ(xd.z_gbar->ambient(c) * s.gbar->ambient(g), s.gbar->ambient(g) * xd.z_gbar->ambient(c));

  const auto prime = gamma_bar_prime(s.gbar);
  EXPECT_EQ(s.gbar->order() / prime->order(), 16u);
  // gbar' = <(1,S^2,S^2),(S^2,1,S^2)> with S^2 the half-turn covered by i.
  const ExactMatrix one = ExactMatrix::identity(3), s2 = rotation_matrix(Quat::i());
  const FactorKind so3 = FactorKind::so3();
  EXPECT_EQ(prime->order(), 4u);
  EXPECT_TRUE(prime->index_of(AmbientElement({so3, so3, so3}, {one, s2, s2})).has_value());
  EXPECT_TRUE(prime->index_of(AmbientElement({so3, so3, so3}, {s2, one, s2})).has_value());

  const auto r = decide_criterion(s);
  EXPECT_EQ(r.z_gbar_order, 8u);
  EXPECT_EQ(r.pi_zg_order, 1u);
  EXPECT_EQ(r.x_order, 8u);
  EXPECT_EQ(r.gbar_quotient_order, 16u);
  EXPECT_EQ(r.y_order, 16u);
  EXPECT_TRUE(r.phi_injective);
  EXPECT_FALSE(r.phi_surjective);
  ASSERT_TRUE(r.witness_chi.has_value());

  const HomPair p = build_witness_pair(r, s);
  // The witness twists (i,i,i) by (-1,-1,-1) and fixes the other lifts.
  const auto& gens = s.lambda->generators();
  ASSERT_GE(gens.size(), 4u);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(p.phi().image(gens[k]), p.phi2().image(gens[k]));
  const AmbientElement z0 = AmbientElement::sp1_tuple({-Quat::one(), -Quat::one(), -Quat::one()});
  EXPECT_EQ(p.phi2().image(gens[3]), quot(s.group, z0 * s.lambda->ambient(gens[3])));
  EXPECT_TRUE(is_element_conjugate(p).element_conjugate);
  EXPECT_FALSE(decide_global(p).globally_conjugate);
}

TEST(Criterion, EveryImageCharacterGivesGloballyConjugatePair) {
  // Twisting by chi_c is realized by conjugation with a lift of c.
  const auto s = make_setup(example_3a1_lifts());
  const auto xd = compute_X(s);
  const auto& gens = s.lambda->generators();
  for (std::size_t c = 0; c < xd.z_gbar->order(); ++c) {
    const auto chi = conjugation_character(s, xd.z_gbar->ambient(c));
    std::vector<AmbientElement> id_images, twisted;
    for (std::size_t g : gens) {
      id_images.push_back(s.lambda->ambient(g));
      twisted.push_back(s.center->ambient(chi[s.projection[g]]) * s.lambda->ambient(g));
    }
    const HomPair p(hom_from_gens(s.lambda, gens, id_images, s.group),
                    hom_from_gens(s.lambda, gens, twisted, s.group));
    EXPECT_TRUE(decide_global(p).globally_conjugate);
  }
}

TEST(Criterion, AbelianPreimageIsNotApplicable) {
  const auto s = make_setup({AmbientElement::sp1_tuple({Quat::i(), Quat::i(), Quat::one()})});
  EXPECT_THROW(compute_X(s), CriterionNotApplicable);
  const auto t = make_setup({AmbientElement::sp1_tuple({Quat::one(), Quat::one(), Quat::one()})});
  EXPECT_THROW(decide_criterion(t), CriterionNotApplicable);
}

TEST(Criterion, DiagonalKleinFour) {
  // Klein four of half-turn triples covered by (i,i,i) and (j,j,j).
  const auto s = make_setup({AmbientElement::sp1_tuple({Quat::i(), Quat::i(), Quat::i()}),
                             AmbientElement::sp1_tuple({Quat::j(), Quat::j(), Quat::j()})});
  EXPECT_EQ(s.gbar->order(), 4u);
  const auto xd = compute_X(s);
  EXPECT_EQ(xd.z_gbar->order(), 64u);
  std::size_t centralizing = 0;
  for (std::size_t c = 0; c < xd.z_gbar->order(); ++c) {
    const auto chi = conjugation_character(s, xd.z_gbar->ambient(c));
    centralizing += std::all_of(chi.begin(), chi.end(), [](std::size_t v) { return v == 0; });
  }
  EXPECT_EQ(xd.pi_zg.size(), centralizing);
  const auto r = decide_criterion(s);
  EXPECT_EQ(r.x_order * r.pi_zg_order, r.z_gbar_order);
  EXPECT_TRUE(r.phi_injective);
}

TEST(Criterion, SurjectiveWhenGbarPrimeIsEverything) {
  // Diagonal octahedral group: order-3 and order-4 rotations generate it,
  // and its centralizer in SO(3) is trivial in every factor.
  const auto s = make_setup({AmbientElement::sp1_tuple({half_sum(), half_sum(), half_sum()}),
                             AmbientElement::sp1_tuple({Quat::eta(), Quat::eta(), Quat::eta()})});
  EXPECT_EQ(s.gbar->order(), 24u);
  const auto r = decide_criterion(s);
  EXPECT_EQ(r.gbar_prime_order, 24u);
  EXPECT_EQ(r.gbar_quotient_order, 1u);
  EXPECT_EQ(r.y_order, 1u);
  EXPECT_EQ(r.x_order, 1u);
  EXPECT_TRUE(r.phi_injective);
  EXPECT_TRUE(r.phi_surjective);
  EXPECT_FALSE(r.witness_chi.has_value());
  EXPECT_THROW(build_witness_pair(r, s), GroupError);
}
