#include "acceptcert/hom_check.hpp"

#include <algorithm>
#include <random>

#include "acceptcert/conj.hpp"

namespace acceptcert {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// Preimage data for one homomorphism: P = <lifts, Z> inside Ghat.
struct LiftData {
  FinGroupPtr P;
  std::vector<std::size_t> lift;  // P index of a(gamma)
  std::vector<std::size_t> zP;    // P index of Z[w]
  std::vector<std::size_t> zOf;   // P index -> Z index, or kNone
  std::vector<std::vector<CycNum>> chars;
};

LiftData build_lifts(const Hom& h, std::mt19937_64* rng, std::size_t cap) {
  const GroupSpec& g = *h.target();
  const FinGroup& src = *h.source();
  const auto& zs = g.z_elements();
  std::vector<AmbientElement> a(src.order());
  std::uniform_int_distribution<std::size_t> pick(0, zs.size() - 1);
  for (std::size_t x = 0; x < src.order(); ++x) {
    a[x] = h.image_rep(x);
    if (rng) a[x] = zs[pick(*rng)] * a[x];
  }
  std::vector<AmbientElement> gens;
  for (std::size_t s : src.generators()) gens.push_back(a[s]);
  for (const auto& z : g.central_gens()) gens.push_back(z);
  gens.push_back(AmbientElement::identity(g.factors()));

  LiftData d;
  d.P = closure(gens, cap);
  if (d.P->order() != h.image_order() * zs.size())
    throw GroupError("preimage group has order " + std::to_string(d.P->order()) + ", expected " +
                     std::to_string(h.image_order() * zs.size()));
  for (std::size_t x = 0; x < src.order(); ++x) d.lift.push_back(d.P->index_of_checked(a[x]));
  d.zOf.assign(d.P->order(), kNone);
  for (std::size_t w = 0; w < zs.size(); ++w) {
    const std::size_t i = d.P->index_of_checked(zs[w]);
    d.zP.push_back(i);
    d.zOf[i] = w;
  }
  for (std::size_t x = 0; x < d.P->order(); ++x) d.chars.push_back(character_vector(d.P->ambient(x)));
  return d;
}

struct TwistContext {
  const HomPair& pair;
  LiftData A, B;
  std::vector<std::size_t> zmul;  // |Z| x |Z|
  std::vector<std::size_t> zinv;
  std::size_t nz = 0;

  std::size_t zm(std::size_t u, std::size_t v) const { return zmul[u * nz + v]; }

  // Central discrepancy a(x) a(y) a(xy)^-1 as a Z index.
  static std::size_t cocycle(const LiftData& d, const FinGroup& src, std::size_t x, std::size_t y) {
    const FinGroup& P = *d.P;
    const std::size_t r = d.zOf[P.mul(P.mul(d.lift[x], d.lift[y]), P.inv(d.lift[src.mul(x, y)]))];
    if (r == kNone) throw GroupError("lift discrepancy is not central");
    return r;
  }

  TwistContext(const HomPair& p, const DecideOptions& opts) : pair(p) {
    std::optional<std::mt19937_64> rng;
    if (opts.lift_seed) rng.emplace(*opts.lift_seed);
    A = build_lifts(p.phi(), rng ? &*rng : nullptr, opts.cap);
    B = build_lifts(p.phi2(), rng ? &*rng : nullptr, opts.cap);
    nz = p.target()->z_order();
    zmul.assign(nz * nz, 0);
    zinv.assign(nz, 0);
    const FinGroup& P = *A.P;
    for (std::size_t u = 0; u < nz; ++u)
      for (std::size_t v = 0; v < nz; ++v) zmul[u * nz + v] = A.zOf[P.mul(A.zP[u], A.zP[v])];
    const std::size_t zid = A.zOf[0];
    for (std::size_t u = 0; u < nz; ++u)
      for (std::size_t v = 0; v < nz; ++v)
        if (zmul[u * nz + v] == zid) zinv[u] = v;
  }

  // F on P indices, or empty if the twist does not give a well-defined
  // homomorphism fixing Z.
  std::vector<std::size_t> build_map(const std::vector<std::size_t>& z) const {
    const FinGroup& P = *A.P;
    const FinGroup& Q = *B.P;
    const std::size_t n = pair.source()->order();
    std::vector<std::size_t> F(P.order(), kNone);
    for (std::size_t g = 0; g < n; ++g)
      for (std::size_t w = 0; w < nz; ++w) {
        const std::size_t x = P.mul(A.zP[w], A.lift[g]);
        const std::size_t y = Q.mul(B.zP[zm(w, z[g])], B.lift[g]);
        if (F[x] == kNone) F[x] = y;
        else if (F[x] != y) return {};
      }
    for (std::size_t x = 0; x < P.order(); ++x)
      if (F[x] == kNone) return {};
    for (std::size_t w = 0; w < nz; ++w)
      if (F[A.zP[w]] != B.zP[w]) return {};
    for (std::size_t x = 0; x < P.order(); ++x)
      for (std::size_t t : P.generators())
        if (F[P.mul(x, t)] != Q.mul(F[x], F[t])) return {};
    return F;
  }

  bool characters_match(const std::vector<std::size_t>& F) const {
    for (std::size_t x = 0; x < F.size(); ++x)
      if (A.chars[x] != B.chars[F[x]]) return false;
    return true;
  }

  // Well-definedness, homomorphism on all pairs, and characters.
  bool full_check(const std::vector<std::size_t>& z) const {
    if (z.size() != pair.source()->order()) return false;
    const auto F = build_map(z);
    if (F.empty()) return false;
    const FinGroup& P = *A.P;
    const FinGroup& Q = *B.P;
    for (std::size_t x = 0; x < P.order(); ++x)
      for (std::size_t y = 0; y < P.order(); ++y)
        if (F[P.mul(x, y)] != Q.mul(F[x], F[y])) return false;
    return characters_match(F);
  }
};

}  // namespace

HomPair::HomPair(Hom phi, Hom phi2) : phi_(std::move(phi)), phi2_(std::move(phi2)) {
  if (phi_.source() != phi2_.source()) throw GroupError("homomorphisms have different sources");
  const auto& t1 = *phi_.target();
  const auto& t2 = *phi2_.target();
  if (phi_.target() != phi2_.target() &&
      (t1.factors() != t2.factors() || t1.z_elements() != t2.z_elements()))
    throw GroupError("homomorphisms have different targets");
  kernels_equal_ = phi_.kernel() == phi2_.kernel();
}

ElementConjugacy is_element_conjugate(const HomPair& p) {
  const FinGroup& ia = *p.phi().image_group();
  const FinGroup& ib = *p.phi2().image_group();
  const auto& zs = p.target()->z_elements();
  std::vector<std::optional<ConjInvariant>> inv_a(ia.order());
  std::vector<std::vector<ConjInvariant>> inv_b(ib.order());
  ElementConjugacy out;
  for (std::size_t g = 0; g < p.source()->order(); ++g) {
    const std::size_t i = p.phi().image_index(g);
    const std::size_t j = p.phi2().image_index(g);
    if (!inv_a[i]) inv_a[i] = invariant(ia.ambient(i));
    if (inv_b[j].empty())
      for (const auto& z : zs) inv_b[j].push_back(invariant(z * ib.ambient(j)));
    if (std::find(inv_b[j].begin(), inv_b[j].end(), *inv_a[i]) == inv_b[j].end()) {
      out.element_conjugate = false;
      out.witness = g;
      return out;
    }
  }
  return out;
}

GlobalVerdict decide_global(const HomPair& p, const DecideOptions& opts) {
  GlobalVerdict v;
  if (!p.kernels_equal()) {
    v.reason = "kernels differ";
    return v;
  }
  const TwistContext ctx(p, opts);
  const FinGroup& src = *p.source();
  const auto& gens = src.generators();
  const std::size_t n = src.order(), k = gens.size(), nz = ctx.nz;

  std::vector<std::size_t> delta(n * k);  // c'(g, s) c(g, s)^-1
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t i = 0; i < k; ++i)
      delta[g * k + i] = ctx.zm(TwistContext::cocycle(ctx.B, src, g, gens[i]),
                                ctx.zinv[TwistContext::cocycle(ctx.A, src, g, gens[i])]);
  const std::size_t z1 =
      ctx.zm(TwistContext::cocycle(ctx.A, src, 0, 0), ctx.zinv[TwistContext::cocycle(ctx.B, src, 0, 0)]);

  // Seed values run over Z with the identity first, so an untwisted match is
  // always the one reported.
  const std::size_t zid = ctx.A.zOf[0];
  std::vector<std::size_t> zorder{zid};
  for (std::size_t w = 0; w < nz; ++w)
    if (w != zid) zorder.push_back(w);

  std::size_t seeds = 1;
  for (std::size_t i = 0; i < k; ++i) seeds *= nz;
  std::vector<std::size_t> seed(k, 0), z(n);
  std::vector<std::size_t> queue;
  for (std::size_t s = 0; s < seeds; ++s) {
    std::size_t r = s;
    for (std::size_t i = k; i-- > 0;) {
      seed[i] = zorder[r % nz];
      r /= nz;
    }
    ++v.seeds_examined;
    std::fill(z.begin(), z.end(), kNone);
    z[0] = z1;
    queue.assign(1, 0);
    bool ok = true;
    for (std::size_t q = 0; q < queue.size() && ok; ++q) {
      const std::size_t g = queue[q];
      for (std::size_t i = 0; i < k; ++i) {
        const std::size_t h = src.mul(g, gens[i]);
        const std::size_t cand = ctx.zm(ctx.zm(z[g], seed[i]), delta[g * k + i]);
        if (z[h] == kNone) {
          z[h] = cand;
          queue.push_back(h);
        } else if (z[h] != cand) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) continue;
    const auto F = ctx.build_map(z);
    if (F.empty()) continue;
    ++v.consistent_twists;
    if (ctx.characters_match(F)) {
      v.globally_conjugate = true;
      v.twist = z;
      v.reason = "twist found";
      if (!ctx.full_check(z)) throw GroupError("twist failed revalidation");
      return v;
    }
  }
  v.reason = "no central twist matches characters";
  return v;
}

bool revalidate_twist(const HomPair& p, const std::vector<std::size_t>& twist) {
  return TwistContext(p, {}).full_check(twist);
}

namespace {

// A lift of h that is itself a homomorphism into Ghat, if one exists.
std::optional<std::vector<AmbientElement>> hom_lift(const Hom& h) {
  const FinGroup& src = *h.source();
  const auto& gens = src.generators();
  const auto& zs = h.target()->z_elements();
  const std::size_t k = gens.size(), nz = zs.size();
  std::size_t seeds = 1;
  for (std::size_t i = 0; i < k; ++i) seeds *= nz;
  for (std::size_t s = 0; s < seeds; ++s) {
    std::vector<AmbientElement> gl(k);
    std::size_t r = s;
    for (std::size_t i = k; i-- > 0;) {
      gl[i] = zs[r % nz] * h.image_rep(gens[i]);
      r /= nz;
    }
    std::vector<std::optional<AmbientElement>> L(src.order());
    L[0] = AmbientElement::identity(h.target()->factors());
    std::vector<std::size_t> queue{0};
    bool ok = true;
    for (std::size_t q = 0; q < queue.size() && ok; ++q) {
      const std::size_t g = queue[q];
      for (std::size_t i = 0; i < k; ++i) {
        const std::size_t t = src.mul(g, gens[i]);
        AmbientElement cand = *L[g] * gl[i];
        if (!L[t]) {
          L[t] = std::move(cand);
          queue.push_back(t);
        } else if (!(*L[t] == cand)) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) continue;
    std::vector<AmbientElement> out;
    for (auto& x : L) out.push_back(std::move(*x));
    return out;
  }
  return std::nullopt;
}

// All homomorphisms src -> Z, as Z indices per source element.
std::vector<std::vector<std::size_t>> characters_into_center(const FinGroup& src, const GroupSpec& g) {
  const auto& zs = g.z_elements();
  const auto& gens = src.generators();
  const std::size_t k = gens.size(), nz = zs.size();
  std::size_t seeds = 1;
  for (std::size_t i = 0; i < k; ++i) seeds *= nz;
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < seeds; ++s) {
    std::vector<std::size_t> gv(k);
    std::size_t r = s;
    for (std::size_t i = k; i-- > 0;) {
      gv[i] = r % nz;
      r /= nz;
    }
    std::vector<std::size_t> chi(src.order(), kNone);
    chi[0] = *g.z_index(AmbientElement::identity(g.factors()));
    std::vector<std::size_t> queue{0};
    bool ok = true;
    for (std::size_t q = 0; q < queue.size() && ok; ++q) {
      const std::size_t x = queue[q];
      for (std::size_t i = 0; i < k; ++i) {
        const std::size_t t = src.mul(x, gens[i]);
        const std::size_t cand = *g.z_index(zs[chi[x]] * zs[gv[i]]);
        if (chi[t] == kNone) {
          chi[t] = cand;
          queue.push_back(t);
        } else if (chi[t] != cand) {
          ok = false;
          break;
        }
      }
    }
    if (ok) out.push_back(std::move(chi));
  }
  return out;
}

void check_oracle_domain(const Hom& h) {
  const FinGroup& src = *h.source();
  for (std::size_t x = 0; x < src.order(); ++x) {
    const AmbientElement& a = h.image_rep(x);
    for (std::size_t f = 0; f < a.size(); ++f) {
      switch (a.kinds()[f].type) {
        case FactorType::SO3:
          throw OracleNotApplicable("weight oracle does not handle SO(3) factors");
        case FactorType::SU:
          if (!a.matrix(f).is_diagonal()) throw OracleNotApplicable("SU image is not diagonal");
          break;
        case FactorType::Sp1:
          if (!a.quat(f).c().is_zero() || !a.quat(f).d().is_zero())
            throw OracleNotApplicable("Sp(1) image is off the circle through i");
          break;
      }
    }
  }
}

}  // namespace

bool abelian_weight_oracle(const HomPair& p) {
  const FinGroup& src = *p.source();
  const GroupSpec& g = *p.target();
  if (!src.is_abelian()) throw OracleNotApplicable("source group is not abelian");
  check_oracle_domain(p.phi());
  check_oracle_domain(p.phi2());
  const auto L = hom_lift(p.phi());
  const auto L2 = hom_lift(p.phi2());
  if (!L || !L2) throw OracleNotApplicable("no homomorphic lift into the product");

  const std::size_t n = src.order();
  const auto& zs = g.z_elements();
  const auto& fs = g.factors();
  for (const auto& chi : characters_into_center(src, g)) {
    bool all = true;
    for (std::size_t f = 0; f < fs.size() && all; ++f) {
      if (fs[f].type == FactorType::SU) {
        const std::size_t dim = static_cast<std::size_t>(fs[f].n);
        std::vector<std::vector<CycNum>> w1(dim), w2(dim);
        for (std::size_t j = 0; j < dim; ++j)
          for (std::size_t x = 0; x < n; ++x) {
            const CycNum scale = zs[chi[x]].matrix(f)(0, 0);
            w1[j].push_back(scale * (*L)[x].matrix(f)(j, j));
            w2[j].push_back((*L2)[x].matrix(f)(j, j));
          }
        std::sort(w1.begin(), w1.end());
        std::sort(w2.begin(), w2.end());
        all = w1 == w2;
      } else {
        bool same = true, inverted = true;
        for (std::size_t x = 0; x < n; ++x) {
          const Quat& q = (*L)[x].quat(f);
          const Quat& q2 = (*L2)[x].quat(f);
          const CycNum sign = zs[chi[x]].quat(f).real();
          const CycNum u = sign * (q.a() + CycNum::i() * q.b());
          const CycNum u2 = q2.a() + CycNum::i() * q2.b();
          same = same && u == u2;
          inverted = inverted && u.conj() == u2;
        }
        all = same || inverted;
      }
    }
    if (all) return true;
  }
  return false;
}

}  // namespace acceptcert
