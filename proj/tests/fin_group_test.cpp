#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "acceptcert/fin_group.hpp"

using namespace acceptcert;

namespace {

AmbientElement su4(std::vector<int> e) { return AmbientElement::su(su_diag_powers_of_i(e)); }
AmbientElement q1(const Quat& q) { return AmbientElement::sp1_tuple({q}); }

std::set<AmbientElement> element_set(const FinGroup& g) {
  std::set<AmbientElement> s;
  for (std::size_t i = 0; i < g.order(); ++i) s.insert(g.ambient(i));
  return s;
}

GroupSpecPtr su4_mod_minus_one() {
  return make_group({FactorKind::su(4)}, {AmbientElement::su(-ExactMatrix::identity(4))});
}

}  // namespace

TEST(Closure, DiagonalC4Squared) {
  const auto g = closure({su4({0, 0, 1, 3}), su4({0, 1, 0, 3})});
  EXPECT_EQ(g->order(), 16u);
  EXPECT_TRUE(g->is_abelian());
  EXPECT_EQ(g->exponent(), 4u);
}

TEST(Closure, TrivialAndCap) {
  const auto g = closure({AmbientElement::identity({FactorKind::su(3)})});
  EXPECT_EQ(g->order(), 1u);
  EXPECT_THROW(closure({su4({0, 0, 1, 3}), su4({0, 1, 0, 3})}, 10), ClosureCapExceeded);
}

TEST(Closure, GeneratorOrderIndependent) {
  const std::vector<AmbientElement> gens{q1(Quat::i()), q1(Quat::j()), q1(Quat::eta())};
  auto shuffled = gens;
  std::reverse(shuffled.begin(), shuffled.end());
  EXPECT_EQ(element_set(*closure(gens)), element_set(*closure(shuffled)));
}

TEST(Closure, MultiplicationTableIsAssociative) {
  const auto g = closure({q1(Quat::i()), q1(Quat::eta())});
  std::mt19937 rng(1);
  std::uniform_int_distribution<std::size_t> pick(0, g->order() - 1);
  for (int t = 0; t < 200; ++t) {
    const std::size_t a = pick(rng), b = pick(rng), c = pick(rng);
    EXPECT_EQ(g->mul(g->mul(a, b), c), g->mul(a, g->mul(b, c)));
    EXPECT_EQ(g->ambient(g->mul(a, b)), g->ambient(a) * g->ambient(b));
  }
  for (std::size_t a = 0; a < g->order(); ++a) EXPECT_EQ(g->mul(a, g->inv(a)), 0u);
}

TEST(Closure, QuotientClosure) {
  const auto g = su4_mod_minus_one();
  const auto c = closure(g, {su4({0, 0, 1, 3}), su4({0, 1, 0, 3})});
  EXPECT_EQ(c->order(), 16u);  // -I is not in the diagonal C4 x C4
  EXPECT_EQ(c->quotient(), g);
}

TEST(FormalGroup, CyclicProducts) {
  const auto c44 = formal_group(FormalGroupSpec::cyclic_product({4, 4}));
  EXPECT_EQ(c44->order(), 16u);
  EXPECT_EQ(c44->exponent(), 4u);
  EXPECT_EQ(formal_group(FormalGroupSpec::cyclic_product({3, 3}))->order(), 9u);
  EXPECT_THROW(FormalGroupSpec::cyclic_product({4, 0}), GroupError);
}

TEST(FormalGroup, CentralExtension) {
  const auto g = formal_group(FormalGroupSpec::central_ext2(4, 4));
  EXPECT_EQ(g->order(), 32u);
  const std::size_t g0 = g->index_of_checked(FormalWord{{1, 0, 0}});
  const auto z = center_indices(*g);
  EXPECT_TRUE(std::find(z.begin(), z.end(), g0) != z.end());
  const auto d = derived_subgroup_indices(*g);
  EXPECT_EQ(d, (std::vector<std::size_t>{0, g0}));
  const auto ab = quotient_by_central(g, d);
  EXPECT_EQ(ab.group->order(), 16u);
  EXPECT_TRUE(ab.group->is_abelian());
  EXPECT_EQ(ab.group->exponent(), 4u);
  EXPECT_THROW(FormalGroupSpec::central_ext2(3, 4), GroupError);
}

TEST(HomFromGens, DiagonalIntoQuotient) {
  const auto src = formal_group(FormalGroupSpec::cyclic_product({4, 4}));
  const auto g = su4_mod_minus_one();
  const Hom h = hom_from_gens(src, src->generators(), {su4({0, 0, 1, 3}), su4({0, 1, 0, 3})}, g);
  EXPECT_EQ(h.image_order(), 16u);
  EXPECT_EQ(h.kernel().size(), 1u);
  const auto plain = trivial_quotient({FactorKind::su(4)});
  const Hom lin = hom_from_gens(src, src->generators(), {su4({0, 0, 1, 3}), su4({0, 1, 0, 3})}, plain);
  EXPECT_EQ(lin.image_order(), 16u);
}

TEST(HomFromGens, OrderObstruction) {
  const auto c2 = formal_group(FormalGroupSpec::cyclic_product({2}));
  EXPECT_THROW(hom_from_gens(c2, c2->generators(), {q1(Quat::eta())}, trivial_quotient({FactorKind::sp1()})),
               NotAHomomorphism);
}

TEST(HomFromGens, InclusionIsIdentity) {
  const auto g = closure({q1(Quat::i()), q1(Quat::j())});
  std::vector<AmbientElement> imgs;
  for (std::size_t s : g->generators()) imgs.push_back(g->ambient(s));
  const Hom h = hom_from_gens(g, g->generators(), imgs, trivial_quotient({FactorKind::sp1()}));
  for (std::size_t x = 0; x < g->order(); ++x) EXPECT_EQ(h.image_rep(x), g->ambient(x));
}

TEST(Centralizer, Examples) {
  const auto q8 = closure({q1(Quat::i()), q1(Quat::j())});
  ASSERT_EQ(q8->order(), 8u);
  std::vector<std::size_t> all(q8->order());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  EXPECT_EQ(centralizer_in(q8, all)->order(), 2u);
  EXPECT_EQ(centralizer_in(q8, {0})->order(), 8u);
  const std::size_t i = q8->index_of_checked(q1(Quat::i()));
  const auto c = centralizer_in(q8, {i});
  EXPECT_EQ(c->order(), 4u);
  const std::set<AmbientElement> expect{q1(Quat::one()), q1(-Quat::one()), q1(Quat::i()), q1(-Quat::i())};
  EXPECT_EQ(element_set(*c), expect);
}

TEST(ConjugacyClasses, ClassEquation) {
  for (const auto& g : {closure({q1(Quat::i()), q1(Quat::j())}), closure({q1(Quat::i()), q1(Quat::eta())}),
                        closure({q1(Quat::i()), q1(Quat::j()), q1(Quat::eta())})}) {
    std::size_t total = 0;
    for (const auto& cls : conjugacy_classes(*g)) {
      total += cls.size();
      EXPECT_EQ(g->order() % cls.size(), 0u);
      // |class| = [G : C(x)]
      EXPECT_EQ(cls.size() * centralizer_indices(*g, {cls[0]}).size(), g->order());
    }
    EXPECT_EQ(total, g->order());
  }
}

TEST(HomSet, ElementaryAbelianCounts) {
  const auto c2_4 = formal_group(FormalGroupSpec::cyclic_product({2, 2, 2, 2}));
  const auto c2_3 = formal_group(FormalGroupSpec::cyclic_product({2, 2, 2}));
  const auto c2 = formal_group(FormalGroupSpec::cyclic_product({2}));
  const auto one = formal_group(FormalGroupSpec::cyclic_product({1}));
  const auto homs = hom_set_to_elem_abelian_2(c2_4, c2);
  EXPECT_EQ(homs.size(), 16u);
  for (const auto& h : homs) EXPECT_TRUE(h.is_homomorphism());
  std::set<std::vector<std::size_t>> distinct;
  for (const auto& h : homs) distinct.insert(h.map);
  EXPECT_EQ(distinct.size(), 16u);
  EXPECT_EQ(hom_set_to_elem_abelian_2(c2_3, c2).size(), 8u);
  EXPECT_EQ(hom_set_to_elem_abelian_2(c2_3, one).size(), 1u);
  const auto c4 = formal_group(FormalGroupSpec::cyclic_product({4}));
  EXPECT_THROW(hom_set_to_elem_abelian_2(c4, c2), GroupError);
}

TEST(Quotient, Examples) {
  const auto c44 = formal_group(FormalGroupSpec::cyclic_product({4, 4}));
  std::vector<std::size_t> all(c44->order());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  EXPECT_EQ(quotient_by_central(c44, all).group->order(), 1u);
  std::vector<std::size_t> squares;
  for (std::size_t x = 0; x < c44->order(); ++x) squares.push_back(c44->mul(x, x));
  std::sort(squares.begin(), squares.end());
  squares.erase(std::unique(squares.begin(), squares.end()), squares.end());
  const auto q = quotient_by_central(c44, squares);
  EXPECT_EQ(q.group->order(), 4u);
  EXPECT_TRUE(q.group->is_elementary_abelian_2());
  EXPECT_TRUE(q.projection.is_homomorphism());

  // <j> is not normal in the binary dihedral group generated by eta and j.
  const auto bd = closure({q1(Quat::eta()), q1(Quat::j())});
  ASSERT_EQ(bd->order(), 16u);
  const auto sub = generated_indices(*bd, {bd->index_of_checked(q1(Quat::j()))});
  EXPECT_EQ(sub.size(), 4u);
  EXPECT_THROW(quotient_by_central(bd, sub), GroupError);
}
