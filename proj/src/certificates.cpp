#include "acceptcert/certificates.hpp"

#include <fnmatch.h>

#include <chrono>

#include "acceptcert/scf.hpp"
#include "acceptcert/so3_criterion.hpp"

namespace acceptcert {

namespace {

AmbientElement su_diag(std::vector<int> e) { return AmbientElement::su(su_diag_powers_of_i(e)); }

AmbientElement entrywise_conj(const AmbientElement& x) {
  std::vector<FactorPayload> parts;
  for (std::size_t f = 0; f < x.size(); ++f) parts.emplace_back(x.matrix(f).conj());
  return AmbientElement(x.kinds(), std::move(parts));
}

FinGroupPtr cyclic_square(int n) { return formal_group(FormalGroupSpec::cyclic_product({n, n})); }

HomPair pair_on_gens(const FinGroupPtr& src, const GroupSpecPtr& g, const std::vector<AmbientElement>& a,
                     const std::vector<AmbientElement>& b) {
  return HomPair(hom_from_gens(src, src->generators(), a, g), hom_from_gens(src, src->generators(), b, g));
}

AmbientElement power_tuple(const ExactMatrix& m, int k) {
  return AmbientElement(std::vector<FactorKind>(static_cast<std::size_t>(k), FactorKind::su(4)),
                        std::vector<FactorPayload>(static_cast<std::size_t>(k), m));
}

Quat quat_pow(const Quat& q, int e) {
  Quat r = Quat::one();
  for (int i = 0; i < ((e % 4) + 4) % 4; ++i) r = r * q;
  return r;
}

int pick(std::mt19937_64& rng, int n) { return static_cast<int>(std::uniform_int_distribution<int>(0, n - 1)(rng)); }

// Diagonal exponent vector with entries in Z/4 summing to 0 mod 4.
std::vector<int> random_su4_exponents(std::mt19937_64& rng) {
  std::vector<int> e(4);
  int s = 0;
  for (std::size_t i = 0; i < 3; ++i) s += e[i] = pick(rng, 4);
  e[3] = (4 - s % 4) % 4;
  return e;
}

ExactMatrix rational_rotation(std::size_t n, std::size_t i, std::size_t j) {
  ExactMatrix m = ExactMatrix::identity(n);
  const CycNum c(Rational(3, 5)), s(Rational(4, 5));
  m(i, i) = c;
  m(i, j) = s;
  m(j, i) = -s;
  m(j, j) = c;
  return m;
}

AmbientElement random_su4_element(std::mt19937_64& rng) {
  ExactMatrix swap{{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  ExactMatrix cycle{{0, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}};
  cycle(0, 3) = -1;
  const std::vector<ExactMatrix> gens = {swap, cycle, rational_rotation(4, 0, 1), rational_rotation(4, 1, 2),
                                         su_diag_powers_of_i({1, 3, 0, 0}), su_diag_powers_of_i({0, 1, 1, 2})};
  ExactMatrix g = ExactMatrix::identity(4);
  for (int t = 0; t < 6; ++t) g = g * gens[static_cast<std::size_t>(pick(rng, static_cast<int>(gens.size())))];
  return AmbientElement::su(g);
}

Quat random_unit_quat(std::mt19937_64& rng) {
  const CycNum h(Rational(1, 2));
  const std::vector<Quat> gens = {Quat::eta(), Quat::j(), Quat{h, h, h, h},
                                  Quat{CycNum(Rational(3, 5)), 0, CycNum(Rational(4, 5)), 0}};
  Quat q = Quat::one();
  for (int t = 0; t < 5; ++t) q = q * gens[static_cast<std::size_t>(pick(rng, static_cast<int>(gens.size())))];
  return q;
}

// ---- parameter helpers ----

long int_param(const Params& p, const char* key) {
  const auto& v = p.at(key);
  if (!v.is_number_integer()) throw ParamError(std::string("parameter ") + key + " must be an integer");
  return v.get<long>();
}

void require_range(const Params& p, const char* key, long lo, long hi) {
  const long v = int_param(p, key);
  if (v < lo || v > hi)
    throw ParamError(std::string("parameter ") + key + " must lie in [" + std::to_string(lo) + ", " +
                     std::to_string(hi) + "]");
}

void require_sign(const Params& p, const char* key) {
  const long v = int_param(p, key);
  if (v != 1 && v != -1) throw ParamError(std::string("parameter ") + key + " must be 1 or -1");
}

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::vector<int> denominators(const Params& p) {
  const auto& v = p.at("denominators");
  if (!v.is_array() || v.empty()) throw ParamError("parameter denominators must be a nonempty array");
  std::vector<int> out;
  for (const auto& x : v) {
    if (!x.is_number_integer() || x.get<long>() < 1 || x.get<long>() > 60)
      throw ParamError("angle denominators must be integers in [1, 60]");
    out.push_back(x.get<int>());
  }
  return out;
}

// ---- bodies ----

void check(RunResult& r, const std::string& name, Json expected, Json computed) {
  r.checks.push_back({name, std::move(expected), std::move(computed)});
}

void homcheck_body(const HomPair& p, bool with_oracle, const RunOptions& opts, RunResult& r) {
  const auto ec = is_element_conjugate(p);
  DecideOptions d;
  d.cap = opts.cap;
  const auto v = decide_global(p, d);
  check(r, "element_conjugate", true, ec.element_conjugate);
  check(r, "globally_conjugate", false, v.globally_conjugate);
  if (with_oracle) check(r, "oracle_globally_conjugate", false, abelian_weight_oracle(p));
  r.counts["source_order"] = p.source()->order();
  r.counts["z_order"] = p.target()->z_order();
  r.counts["image_order"] = p.phi().image_order();
  r.counts["seeds_examined"] = v.seeds_examined;
  r.counts["consistent_twists"] = v.consistent_twists;
  r.details["target"] = p.target()->name();
  r.details["reason"] = v.reason;
}

void crit_body(const RunOptions& opts, RunResult& r) {
  const auto s = make_setup(example_3a1_lifts(), opts.cap);
  const auto rep = decide_criterion(s);
  check(r, "z_gbar_order", 8, rep.z_gbar_order);
  check(r, "pi_zg_order", 1, rep.pi_zg_order);
  check(r, "x_order", 8, rep.x_order);
  check(r, "gbar_quotient_order", 16, rep.gbar_quotient_order);
  check(r, "y_order", 16, rep.y_order);
  check(r, "phi_injective", true, rep.phi_injective);
  check(r, "phi_surjective", false, rep.phi_surjective);
  bool ec = false, gc = true;
  if (rep.witness_chi) {
    const HomPair p = build_witness_pair(rep, s);
    ec = is_element_conjugate(p).element_conjugate;
    DecideOptions d;
    d.cap = opts.cap;
    gc = decide_global(p, d).globally_conjugate;
  }
  check(r, "witness_element_conjugate", true, ec);
  check(r, "witness_globally_conjugate", false, gc);
  r.counts["gbar_order"] = rep.gbar_order;
  r.counts["lambda_order"] = s.lambda->order();
  r.counts["gbar_prime_order"] = rep.gbar_prime_order;
  r.counts["phi_image_order"] = rep.phi_image_order;
  r.details["report"] = rep.to_json();
}

void scf_body(SymPairFamily::Kind kind, const Params& p, RunResult& r) {
  const SymPairFamily fam{kind, static_cast<int>(int_param(p, "n"))};
  const auto rows = scan_angles(fam, denominators(p));
  Json expected = Json::array(), computed = Json::array(), table = Json::array();
  std::size_t undecided = 0;
  for (const auto& [k, m] : failing_fractions(rows)) computed.push_back(std::to_string(k) + "/" + std::to_string(m));
  if (kind == SymPairFamily::Kind::OOdd) {
    for (long q : {1L, 3L}) {
      bool present = false;
      for (const auto& row : rows) present = present || 4 * row.angle.k == q * row.angle.m;
      if (present) expected.push_back(std::to_string(q) + "/4");
    }
  }
  for (const auto& row : rows) {
    undecided += row.result.verdict == ConditionVerdict::Undecided;
    Json j;
    j["k"] = row.angle.k;
    j["m"] = row.angle.m;
    j["verdict"] = to_string(row.result.verdict);
    j["reason"] = row.result.reason;
    j["lie_dim"] = row.result.lie_dim;
    j["components"] = row.result.component_count;
    table.push_back(std::move(j));
  }
  check(r, "failing_angles", expected, computed);
  check(r, "undecided", 0, undecided);
  check(r, "matches_classification", true, matches_classification(fam, rows));
  r.counts["angles"] = rows.size();
  r.details["condition"] = rows.empty() ? "" : rows[0].result.condition;
  r.details["table"] = std::move(table);
}

void sanity_body(const Params& p, const RunOptions& opts, RunResult& r) {
  const std::string group = p.at("group").get<std::string>();
  const long count = int_param(p, "count");
  std::mt19937_64 rng(static_cast<std::uint64_t>(int_param(p, "seed")));
  long gc = 0, revalidated = 0;
  for (long t = 0; t < count; ++t) {
    const HomPair pair = random_conjugated_pair(group, rng);
    DecideOptions d;
    d.cap = opts.cap;
    const auto v = decide_global(pair, d);
    gc += v.globally_conjugate;
    revalidated += v.globally_conjugate && revalidate_twist(pair, v.twist);
  }
  check(r, "globally_conjugate_count", count, gc);
  check(r, "revalidated_count", count, revalidated);
  r.counts["pairs"] = count;
}

void validate_sanity(const Params& p) {
  const auto& g = p.at("group");
  if (!g.is_string() || (g != "su4" && g != "sp1^3")) throw ParamError("parameter group must be \"su4\" or \"sp1^3\"");
  require_range(p, "seed", 0, 1L << 40);
  require_range(p, "count", 1, 1000);
}

std::vector<Certificate> build_registry() {
  std::vector<Certificate> reg;

  reg.push_back({"su4_mod_center",
                 "SU(4)/<-I>: (C4)^2 via diag(1,1,i,-i), diag(1,i,1,-i) against the entrywise conjugate",
                 Json::object(),
                 {Json::object()},
                 [](const Params&) {},
                 [](const Params&, const RunOptions& o, RunResult& r) { homcheck_body(su4_mod_center_pair(), true, o, r); }});

  {
    Certificate c{"sp1_diag",
                  "Sp(1)^m/<(-1,...,-1)>: (C4)^2 via (1,...,1,i,i), (i,...,i,1,i) against (1,...,1,i,i), "
                  "(eps i,...,eps i,1,-i)",
                  Json{{"m", 3}, {"eps", 1}},
                  {},
                  [](const Params& p) {
                    require_range(p, "m", 3, 16);
                    require_sign(p, "eps");
                  },
                  [](const Params& p, const RunOptions& o, RunResult& r) {
                    homcheck_body(sp1_diag_pair(static_cast<int>(int_param(p, "m")), static_cast<int>(int_param(p, "eps"))),
                                  true, o, r);
                  }};
    for (int m = 3; m <= 8; ++m)
      for (int eps : {1, -1}) c.default_grid.push_back(Json{{"m", m}, {"eps", eps}});
    reg.push_back(std::move(c));
  }

  reg.push_back({"psp3_via_sp1",
                 "PSp(3) through its centralizer Sp(1)^3/<(-1,-1,-1)>: the m = 3 case of sp1_diag",
                 Json{{"eps", 1}},
                 {Json{{"eps", 1}}, Json{{"eps", -1}}},
                 [](const Params& p) { require_sign(p, "eps"); },
                 [](const Params& p, const RunOptions& o, RunResult& r) {
                   homcheck_body(sp1_diag_pair(3, static_cast<int>(int_param(p, "eps"))), true, o, r);
                 }});

  reg.push_back({"psu_odd_prime",
                 "SU(p)/mu_p: (Cp)^2 via the cyclic shift and diag(1,w,...,w^(p-1)) against its square",
                 Json{{"p", 3}},
                 {Json{{"p", 3}}, Json{{"p", 5}}},
                 [](const Params& p) {
                   require_range(p, "p", 3, 13);
                   if (!is_prime(int_param(p, "p")) || int_param(p, "p") % 2 == 0)
                     throw ParamError("parameter p must be an odd prime");
                 },
                 [](const Params& p, const RunOptions& o, RunResult& r) {
                   homcheck_body(psu_odd_prime_pair(static_cast<int>(int_param(p, "p"))), false, o, r);
                 }});

  reg.push_back({"su4_power_d4",
                 "SU(4)^k/<(-I,...,-I)>: diagonal copies of the SU(4)/<-I> pair",
                 Json{{"k", 1}},
                 {Json{{"k", 1}}, Json{{"k", 2}}},
                 [](const Params& p) { require_range(p, "k", 1, 3); },
                 [](const Params& p, const RunOptions& o, RunResult& r) {
                   homcheck_body(su4_power_pair(static_cast<int>(int_param(p, "k"))), false, o, r);
                 }});

  reg.push_back({"crit_3a1",
                 "Sp(1)^3/<(1,-1,-1),(-1,1,-1)>: X against Y for the preimage of the group lifted by "
                 "(j,eta,eta), (eta,j,eta), (eta,eta,j), (i,i,i)",
                 Json::object(),
                 {Json::object()},
                 [](const Params&) {},
                 [](const Params&, const RunOptions& o, RunResult& r) { crit_body(o, r); }});

  const Json scf_defaults{{"n", 1}, {"denominators", {4, 6, 8}}};
  auto scf_validate = [](const Params& p) {
    require_range(p, "n", 1, 4);
    denominators(p);
  };
  reg.push_back({"scf_o_odd",
                 "O(2n+1) in SO(2n+2): g in Z_G(H cap Ad(g)H) H fails exactly at quarter turns",
                 scf_defaults,
                 {Json{{"n", 1}, {"denominators", {4, 6, 8}}}, Json{{"n", 2}, {"denominators", {4, 6, 8}}}},
                 scf_validate,
                 [](const Params& p, const RunOptions&, RunResult& r) { scf_body(SymPairFamily::Kind::OOdd, p, r); }});
  reg.push_back({"scf_so_odd",
                 "SO(2n+1) in SO(2n+2): g in Z_G(H0 cap Ad(g)H0) H0 holds at every angle",
                 scf_defaults,
                 {Json{{"n", 1}, {"denominators", {4, 6, 8}}}, Json{{"n", 2}, {"denominators", {4, 6, 8}}}},
                 scf_validate,
                 [](const Params& p, const RunOptions&, RunResult& r) { scf_body(SymPairFamily::Kind::SOOdd, p, r); }});

  reg.push_back({"sanity_acceptable",
                 "SU(4) and Sp(1)^3 with trivial central quotient: pairs (phi, Ad(g) phi) are globally conjugate",
                 Json{{"group", "su4"}, {"seed", 1}, {"count", 50}},
                 {Json{{"group", "su4"}, {"seed", 1}, {"count", 50}}, Json{{"group", "sp1^3"}, {"seed", 1}, {"count", 50}}},
                 validate_sanity,
                 [](const Params& p, const RunOptions& o, RunResult& r) { sanity_body(p, o, r); }});
  return reg;
}

}  // namespace

// ---- constructions ----

HomPair su4_mod_center_pair() {
  const auto g = make_group({FactorKind::su(4)}, {AmbientElement::su(-ExactMatrix::identity(4))});
  const AmbientElement a = su_diag({0, 0, 1, 3}), b = su_diag({0, 1, 0, 3});
  return pair_on_gens(cyclic_square(4), g, {a, b}, {entrywise_conj(a), entrywise_conj(b)});
}

HomPair sp1_diag_pair(int m, int eps) {
  if (m < 3) throw ParamError("m must be at least 3");
  const auto n = static_cast<std::size_t>(m);
  const auto g = make_group(std::vector<FactorKind>(n, FactorKind::sp1()),
                            {AmbientElement::sp1_tuple(std::vector<Quat>(n, -Quat::one()))});
  std::vector<Quat> a(n, Quat::one()), b(n, Quat::i()), b2(n, eps > 0 ? Quat::i() : -Quat::i());
  a[n - 2] = a[n - 1] = Quat::i();
  b[n - 2] = b2[n - 2] = Quat::one();
  b2[n - 1] = -Quat::i();
  const AmbientElement ga = AmbientElement::sp1_tuple(a);
  return pair_on_gens(cyclic_square(4), g, {ga, AmbientElement::sp1_tuple(b)}, {ga, AmbientElement::sp1_tuple(b2)});
}

HomPair psu_odd_prime_pair(int p) {
  if (p < 3 || p % 2 == 0 || !is_prime(p)) throw ParamError("p must be an odd prime");
  const auto n = static_cast<std::size_t>(p);
  const auto g = make_group({FactorKind::su(p)}, {AmbientElement::su(ExactMatrix::scalar(n, CycNum::zeta(p)))});
  ExactMatrix shift(n, n);
  for (std::size_t r = 0; r + 1 < n; ++r) shift(r, r + 1) = 1;
  shift(n - 1, 0) = 1;
  std::vector<CycNum> d, d2;
  for (std::size_t j = 0; j < n; ++j) {
    d.push_back(CycNum::zeta(p, static_cast<long>(j)));
    d2.push_back(CycNum::zeta(p, static_cast<long>(2 * j)));
  }
  const AmbientElement a = AmbientElement::su(shift);
  return pair_on_gens(cyclic_square(p), g, {a, AmbientElement::su(ExactMatrix::diagonal(d))},
                      {a, AmbientElement::su(ExactMatrix::diagonal(d2))});
}

HomPair su4_power_pair(int k, bool literal) {
  if (k < 1) throw ParamError("k must be at least 1");
  const auto g = make_group(std::vector<FactorKind>(static_cast<std::size_t>(k), FactorKind::su(4)),
                            {power_tuple(-ExactMatrix::identity(4), k)});
  const ExactMatrix a = su_diag_powers_of_i({0, 0, 1, 3}), b = su_diag_powers_of_i({0, 1, 0, 3});
  const ExactMatrix a2 = literal ? a : a.conj();
  return pair_on_gens(cyclic_square(4), g, {power_tuple(a, k), power_tuple(b, k)},
                      {power_tuple(a2, k), power_tuple(b.conj(), k)});
}

HomPair random_conjugated_pair(const std::string& group, std::mt19937_64& rng) {
  const auto src = cyclic_square(4);
  if (group == "su4") {
    const auto g = trivial_quotient({FactorKind::su(4)});
    const AmbientElement a = su_diag(random_su4_exponents(rng)), b = su_diag(random_su4_exponents(rng));
    const AmbientElement h = random_su4_element(rng);
    return pair_on_gens(src, g, {a, b}, {h * a * h.inverse(), h * b * h.inverse()});
  }
  if (group == "sp1^3") {
    const auto g = trivial_quotient({FactorKind::sp1(), FactorKind::sp1(), FactorKind::sp1()});
    const std::vector<Quat> axes = {Quat::i(), Quat::j(), Quat::k()};
    std::vector<Quat> a, b, ha, hb;
    for (int f = 0; f < 3; ++f) {
      const Quat& u = axes[static_cast<std::size_t>(pick(rng, 3))];
      a.push_back(quat_pow(u, pick(rng, 4)));
      b.push_back(quat_pow(u, pick(rng, 4)));
      const Quat h = random_unit_quat(rng);
      ha.push_back(h * a.back() * h.conj());
      hb.push_back(h * b.back() * h.conj());
    }
    return pair_on_gens(src, g, {AmbientElement::sp1_tuple(a), AmbientElement::sp1_tuple(b)},
                        {AmbientElement::sp1_tuple(ha), AmbientElement::sp1_tuple(hb)});
  }
  throw ParamError("unknown group '" + group + "'");
}

HomPair random_abelian_pair(const std::string& group, std::mt19937_64& rng) {
  const auto src = cyclic_square(4);
  const int mode = pick(rng, 4);
  if (group == "su4") {
    const auto g = make_group({FactorKind::su(4)}, {AmbientElement::su(-ExactMatrix::identity(4))});
    std::vector<std::vector<int>> e = {random_su4_exponents(rng), random_su4_exponents(rng)}, e2 = e;
    if (mode == 0) {
      e2 = {random_su4_exponents(rng), random_su4_exponents(rng)};
    } else {
      std::vector<std::size_t> perm = {0, 1, 2, 3};
      std::shuffle(perm.begin(), perm.end(), rng);
      for (std::size_t k = 0; k < 2; ++k) {
        const int shift = pick(rng, 2) * 2;  // optional -I
        for (std::size_t i = 0; i < 4; ++i) {
          int x = e[k][perm[i]];
          if (mode >= 2) x = 4 - x;  // conjugate
          if (mode == 3) x += shift;
          e2[k][i] = ((x % 4) + 4) % 4;
        }
      }
    }
    return pair_on_gens(src, g, {su_diag(e[0]), su_diag(e[1])}, {su_diag(e2[0]), su_diag(e2[1])});
  }
  if (group == "sp1^3") {
    const auto g = make_group({FactorKind::sp1(), FactorKind::sp1(), FactorKind::sp1()},
                              {AmbientElement::sp1_tuple({-Quat::one(), -Quat::one(), -Quat::one()})});
    std::vector<std::vector<int>> e(2, std::vector<int>(3)), e2;
    for (auto& v : e)
      for (auto& x : v) x = pick(rng, 4);
    e2 = e;
    if (mode == 0) {
      for (auto& v : e2)
        for (auto& x : v) x = pick(rng, 4);
    } else {
      for (std::size_t f = 0; f < 3; ++f) {
        const bool flip = pick(rng, 2) == 1;  // i -> -i in this factor
        for (std::size_t k = 0; k < 2; ++k)
          if (flip) e2[k][f] = (4 - e2[k][f]) % 4;
      }
      if (mode >= 2)
        for (std::size_t k = 0; k < 2; ++k)
          if (pick(rng, 2))
            for (auto& x : e2[k]) x = (x + 2) % 4;  // times (-1,-1,-1)
      if (mode == 3) {
        const std::size_t f = static_cast<std::size_t>(pick(rng, 3)), k = static_cast<std::size_t>(pick(rng, 2));
        e2[k][f] = (e2[k][f] + 2) % 4;  // a single sign, usually breaking conjugacy
      }
    }
    auto tuple = [](const std::vector<int>& v) {
      return AmbientElement::sp1_tuple({quat_pow(Quat::i(), v[0]), quat_pow(Quat::i(), v[1]), quat_pow(Quat::i(), v[2])});
    };
    return pair_on_gens(src, g, {tuple(e[0]), tuple(e[1])}, {tuple(e2[0]), tuple(e2[1])});
  }
  throw ParamError("unknown group '" + group + "'");
}

// ---- registry and runs ----

bool RunResult::pass() const {
  if (!error.empty() || checks.empty()) return false;
  for (const auto& c : checks)
    if (!c.ok()) return false;
  return true;
}

Json RunResult::to_json(bool with_timing) const {
  Json j;
  j["id"] = id;
  j["params"] = params;
  j["anchor"] = anchor;
  j["pass"] = pass();
  Json cs = Json::array();
  for (const auto& c : checks) {
    Json cj;
    cj["name"] = c.name;
    cj["expected"] = c.expected;
    cj["computed"] = c.computed;
    cj["ok"] = c.ok();
    cs.push_back(std::move(cj));
  }
  j["checks"] = std::move(cs);
  j["counts"] = counts;
  j["details"] = details;
  j["error"] = error;
  if (with_timing) j["timing"] = Json{{"seconds", seconds}};
  return j;
}

RunResult RunResult::from_json(const Json& j) {
  RunResult r;
  r.id = j.at("id").get<std::string>();
  r.params = j.at("params");
  r.anchor = j.at("anchor").get<std::string>();
  for (const auto& c : j.at("checks")) r.checks.push_back({c.at("name").get<std::string>(), c.at("expected"), c.at("computed")});
  r.counts = j.at("counts");
  r.details = j.at("details");
  r.error = j.at("error").get<std::string>();
  if (j.contains("timing")) r.seconds = j.at("timing").at("seconds").get<double>();
  return r;
}

bool operator==(const RunResult& a, const RunResult& b) { return a.to_json(false) == b.to_json(false); }

const std::vector<Certificate>& registry() {
  static const std::vector<Certificate> reg = build_registry();
  return reg;
}

const Certificate* find_certificate(const std::string& id) {
  for (const auto& c : registry())
    if (c.id == id) return &c;
  return nullptr;
}

Params normalize_params(const Certificate& cert, const Params& params) {
  if (!params.is_object()) throw ParamError("parameters must be a JSON object");
  Params out = cert.defaults;
  for (const auto& [key, value] : params.items()) {
    if (!cert.defaults.contains(key)) throw ParamError("unknown parameter '" + key + "' for " + cert.id);
    out[key] = value;
  }
  cert.validate(out);
  return out;
}

RunResult run(const Certificate& cert, const Params& params, const RunOptions& opts) {
  RunResult r;
  r.id = cert.id;
  r.params = normalize_params(cert, params);
  r.anchor = cert.anchor;
  const auto start = std::chrono::steady_clock::now();
  try {
    cert.body(r.params, opts, r);
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

bool id_matches(const std::string& id, const std::string& filter) {
  return filter.empty() || fnmatch(filter.c_str(), id.c_str(), 0) == 0;
}

std::vector<RunResult> run_all(const std::string& filter, const Json& grids, const RunOptions& opts) {
  std::vector<RunResult> out;
  for (const auto& cert : registry()) {
    if (!id_matches(cert.id, filter)) continue;
    std::vector<Params> grid = cert.default_grid;
    if (grids.is_object() && grids.contains(cert.id)) {
      const auto& g = grids.at(cert.id);
      if (!g.is_array()) throw ParamError("parameter grid for " + cert.id + " must be an array");
      grid.assign(g.begin(), g.end());
    }
    for (const auto& p : grid) out.push_back(run(cert, p, opts));
  }
  return out;
}

}  // namespace acceptcert
