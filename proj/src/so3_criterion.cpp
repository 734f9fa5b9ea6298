#include "acceptcert/so3_criterion.hpp"

#include <algorithm>
#include <set>

namespace acceptcert {

namespace {

CycNum dot(const Vec& a, const Vec& b) {
  CycNum s;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vec cross(const Vec& a, const Vec& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Vec canonical_axis(Vec v) {
  auto it = std::find_if(v.begin(), v.end(), [](const CycNum& c) { return !c.is_zero(); });
  if (it == v.end()) return {};
  const CycNum s = it->inverse();
  for (auto& c : v) c *= s;
  return v;
}

bool commute(const AmbientElement& a, const AmbientElement& b) { return a * b == b * a; }

const ExactMatrix& so3_part(const FinGroup& g, std::size_t x) {
  const AmbientElement& e = g.ambient(x);
  if (e.size() != 1 || e.kinds()[0].type != FactorType::SO3)
    throw GroupError("expected single-factor SO(3) elements");
  return e.matrix(0);
}

std::vector<FactorKind> sp1_cubed() { return {FactorKind::sp1(), FactorKind::sp1(), FactorKind::sp1()}; }
std::vector<FactorKind> so3_cubed() { return {FactorKind::so3(), FactorKind::so3(), FactorKind::so3()}; }

AmbientElement so3_triple(std::vector<ExactMatrix> ms) {
  std::vector<FactorPayload> parts(ms.begin(), ms.end());
  return AmbientElement(so3_cubed(), std::move(parts));
}

// c x c^-1 for c in SO(3)^3 acting through any lift, x in Sp(1)^3.
AmbientElement conjugate_by(const AmbientElement& c, const AmbientElement& x) {
  std::vector<Quat> qs;
  for (std::size_t f = 0; f < 3; ++f) qs.push_back(rotate_quat(c.matrix(f), x.quat(f)));
  return AmbientElement::sp1_tuple(qs);
}

}  // namespace

RotationInfo rotation_info(const ExactMatrix& r) {
  RotationInfo info;
  info.trace = r.trace();
  info.is_identity = r == ExactMatrix::identity(3);
  info.is_half_turn = info.trace == CycNum(-1);
  if (!info.is_identity) {
    const Subspace fixed = nullspace(r - ExactMatrix::identity(3));
    if (fixed.dim() != 1) throw GroupError("not a rotation: fixed space of dimension " + std::to_string(fixed.dim()));
    info.axis = canonical_axis(fixed.basis()[0]);
  }
  return info;
}

ExactMatrix half_turn(const Vec& v) {
  const CycNum scale = CycNum(2) / dot(v, v);
  ExactMatrix m(3, 3);
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) m(r, c) = scale * v[r] * v[c] - CycNum(r == c ? 1 : 0);
  return m;
}

CentralizerResult so3_centralizer(const FinGroup& delta) {
  std::vector<RotationInfo> nontrivial;
  for (std::size_t x = 0; x < delta.order(); ++x) {
    RotationInfo info = rotation_info(so3_part(delta, x));
    if (!info.is_identity) nontrivial.push_back(std::move(info));
  }
  if (nontrivial.empty()) return InfiniteCentralizer{"group is trivial"};
  const Vec& first = nontrivial[0].axis;
  if (std::all_of(nontrivial.begin(), nontrivial.end(), [&](const RotationInfo& h) { return h.axis == first; }))
    return InfiniteCentralizer{"all rotations share one axis"};

  // A non-identity centralizing element is a half-turn whose axis is, for
  // every h, parallel to axis(h) or perpendicular to it with h a half-turn.
  // Such axes are among the element axes and their pairwise cross products.
  std::set<Vec> axes;
  for (const auto& h : nontrivial) axes.insert(h.axis);
  std::set<Vec> candidates(axes);
  for (auto a = axes.begin(); a != axes.end(); ++a)
    for (auto b = std::next(a); b != axes.end(); ++b) candidates.insert(canonical_axis(cross(*a, *b)));

  std::vector<AmbientElement> gens;
  for (const Vec& v : candidates) {
    const bool ok = std::all_of(nontrivial.begin(), nontrivial.end(), [&](const RotationInfo& h) {
      return h.axis == v || (h.is_half_turn && dot(h.axis, v).is_zero());
    });
    if (!ok) continue;
    const AmbientElement t = AmbientElement::so3(half_turn(v));
    for (std::size_t s : delta.generators())
      if (!commute(t, delta.ambient(s))) throw GroupError("centralizer candidate fails to commute");
    gens.push_back(t);
  }
  if (gens.empty()) gens.push_back(AmbientElement::identity({FactorKind::so3()}));
  return closure(gens);
}

CentralizerResult sp1_centralizer(const FinGroup& delta) {
  std::vector<std::array<CycNum, 3>> imags;
  for (std::size_t x = 0; x < delta.order(); ++x) {
    const AmbientElement& e = delta.ambient(x);
    if (e.size() != 1 || e.kinds()[0].type != FactorType::Sp1)
      throw GroupError("expected single-factor Sp(1) elements");
    const auto im = e.quat(0).imag();
    if (std::any_of(im.begin(), im.end(), [](const CycNum& c) { return !c.is_zero(); })) imags.push_back(im);
  }
  for (std::size_t a = 0; a < imags.size(); ++a)
    for (std::size_t b = a + 1; b < imags.size(); ++b) {
      const Vec va(imags[a].begin(), imags[a].end()), vb(imags[b].begin(), imags[b].end());
      const Vec c = cross(va, vb);
      if (std::any_of(c.begin(), c.end(), [](const CycNum& x) { return !x.is_zero(); }))
        return closure({AmbientElement::sp1_tuple({-Quat::one()})});
    }
  if (imags.empty()) return InfiniteCentralizer{"group is central"};
  return InfiniteCentralizer{"imaginary parts are parallel"};
}

GroupSpecPtr three_a1_group() {
  const Quat one = Quat::one(), m = -Quat::one();
  return make_group(sp1_cubed(), {AmbientElement::sp1_tuple({one, m, m}), AmbientElement::sp1_tuple({m, one, m})});
}

AmbientElement project_so3(const AmbientElement& x) {
  std::vector<ExactMatrix> ms;
  for (std::size_t f = 0; f < x.size(); ++f) ms.push_back(rotation_matrix(x.quat(f)));
  return so3_triple(std::move(ms));
}

FinGroupPtr gamma_bar_prime(const FinGroupPtr& gbar) {
  std::set<std::size_t> gens;
  for (std::size_t x = 0; x < gbar->order(); ++x) {
    gens.insert(gbar->mul(x, x));
    const AmbientElement& e = gbar->ambient(x);
    bool half = false;
    for (std::size_t f = 0; f < e.size(); ++f) half = half || e.matrix(f).trace() == CycNum(-1);
    if (!half) gens.insert(x);
  }
  gens.erase(0);
  const auto sub = subgroup(gbar, std::vector<std::size_t>(gens.begin(), gens.end()));
  const auto q = quotient_by_central(gbar, sub->parent_indices());
  if (!q.group->is_elementary_abelian_2()) throw GroupError("quotient by squares is not elementary abelian");
  return sub;
}

CriterionSetup make_setup(const std::vector<AmbientElement>& lifts, std::size_t cap) {
  CriterionSetup s;
  s.group = three_a1_group();
  s.center = center(s.group);
  if (s.center->order() != 2) throw GroupError("unexpected centre order");
  for (const auto& x : lifts)
    if (x.kinds() != sp1_cubed()) throw GroupError("lifts must lie in Sp(1)^3");

  std::vector<AmbientElement> gens = lifts;
  s.lambda = closure(s.group, gens, cap);
  const AmbientElement& z = s.center->ambient(1);
  if (!s.lambda->index_of(z)) {
    gens.push_back(z);
    s.lambda = closure(s.group, gens, cap);
  }

  std::vector<AmbientElement> images;
  for (const auto& x : gens) images.push_back(project_so3(x));
  s.gbar = closure(images, cap);
  s.projection.resize(s.lambda->order());
  for (std::size_t x = 0; x < s.lambda->order(); ++x)
    s.projection[x] = s.gbar->index_of_checked(project_so3(s.lambda->ambient(x)));
  if (s.lambda->order() != 2 * s.gbar->order()) throw GroupError("preimage has the wrong order");
  return s;
}

XData compute_X(const CriterionSetup& s) {
  std::vector<AmbientElement> gens;
  for (std::size_t f = 0; f < 3; ++f) {
    std::vector<AmbientElement> proj;
    for (std::size_t g : s.gbar->generators()) proj.push_back(AmbientElement::so3(s.gbar->ambient(g).matrix(f)));
    if (proj.empty()) proj.push_back(AmbientElement::identity({FactorKind::so3()}));
    const auto cent = so3_centralizer(*closure(proj));
    if (const auto* inf = std::get_if<InfiniteCentralizer>(&cent))
      throw CriterionNotApplicable("factor " + std::to_string(f + 1) + ": " + inf->reason);
    const auto& cg = std::get<FinGroupPtr>(cent);
    for (std::size_t c : cg->generators()) {
      std::vector<ExactMatrix> ms(3, ExactMatrix::identity(3));
      ms[f] = cg->ambient(c).matrix(0);
      gens.push_back(so3_triple(std::move(ms)));
    }
  }
  if (gens.empty()) gens.push_back(AmbientElement::identity(so3_cubed()));
  XData d;
  d.z_gbar = closure(gens);
  for (std::size_t c = 0; c < d.z_gbar->order(); ++c)
    for (std::size_t g : s.gbar->generators())
      if (!commute(d.z_gbar->ambient(c), s.gbar->ambient(g)))
        throw GroupError("factorwise centralizer does not centralize");

  // Conjugation by c is the same for all eight lifts of c, so a lift
  // centralizes lambda in G iff c x c^-1 x^-1 lies in Z for each generator.
  const GroupSpec& g = *s.group;
  for (std::size_t c = 0; c < d.z_gbar->order(); ++c) {
    const AmbientElement& cc = d.z_gbar->ambient(c);
    bool central = true;
    for (std::size_t x : s.lambda->generators()) {
      const AmbientElement& xx = s.lambda->ambient(x);
      central = central && g.z_index(conjugate_by(cc, xx) * xx.inverse()).has_value();
    }
    if (central) d.pi_zg.push_back(c);
  }
  d.x = quotient_by_central(d.z_gbar, d.pi_zg);
  return d;
}

std::vector<std::size_t> conjugation_character(const CriterionSetup& s, const AmbientElement& c) {
  std::vector<std::size_t> chi(s.gbar->order(), SIZE_MAX);
  for (std::size_t x = 0; x < s.lambda->order(); ++x) {
    const AmbientElement& xx = s.lambda->ambient(x);
    const AmbientElement z = conjugate_by(c, xx) * xx.inverse();
    if (!z.is_central()) throw GroupError("element does not centralize gbar");
    const std::size_t v = s.center->index_of_checked(canonical_rep(*s.group, z));
    std::size_t& slot = chi[s.projection[x]];
    if (slot != SIZE_MAX && slot != v) throw GroupError("conjugation character is not well defined");
    slot = v;
  }
  return chi;
}

CriterionReport decide_criterion(const CriterionSetup& s) {
  CriterionReport r;
  const XData xd = compute_X(s);
  const auto prime = gamma_bar_prime(s.gbar);
  const auto quot = quotient_by_central(s.gbar, prime->parent_indices());
  const auto ys = hom_set_to_elem_abelian_2(quot.group, s.center);

  r.gbar_order = s.gbar->order();
  r.gbar_prime_order = prime->order();
  r.z_gbar_order = xd.z_gbar->order();
  r.pi_zg_order = xd.pi_zg.size();
  r.x_order = xd.x.group->order();
  r.gbar_quotient_order = quot.group->order();
  r.y_order = ys.size();

  auto as_gbar_map = [&](const FinHom& y) {
    std::vector<std::size_t> v(s.gbar->order());
    for (std::size_t x = 0; x < v.size(); ++x) v[x] = y.map[quot.projection.map[x]];
    return v;
  };
  std::vector<std::vector<std::size_t>> y_maps;
  for (const auto& y : ys) y_maps.push_back(as_gbar_map(y));

  // phi on X: one representative per class, reps are the parent indices.
  std::set<std::size_t> image;
  for (std::size_t cls = 0; cls < xd.x.group->order(); ++cls) {
    const std::size_t c = xd.x.group->parent_indices()[cls];
    const auto chi = conjugation_character(s, xd.z_gbar->ambient(c));
    auto it = std::find(y_maps.begin(), y_maps.end(), chi);
    if (it == y_maps.end()) throw InjectivityViolation("conjugation character is not trivial on gbar'");
    image.insert(static_cast<std::size_t>(it - y_maps.begin()));
  }
  r.phi_image_order = image.size();
  r.phi_injective = image.size() == r.x_order;
  if (!r.phi_injective) throw InjectivityViolation("phi is not injective");
  r.phi_surjective = image.size() == r.y_order;

  // Witness: outside the image, nontrivial on the fewest lambda generators.
  std::optional<std::size_t> best;
  std::size_t best_weight = SIZE_MAX;
  for (std::size_t k = 0; k < y_maps.size(); ++k) {
    if (image.count(k)) continue;
    std::size_t w = 0;
    for (std::size_t g : s.lambda->generators()) w += y_maps[k][s.projection[g]] != 0;
    if (w < best_weight) {
      best_weight = w;
      best = k;
    }
  }
  if (best) r.witness_chi = y_maps[*best];
  return r;
}

nlohmann::ordered_json CriterionReport::to_json() const {
  nlohmann::ordered_json j;
  j["gbar_order"] = gbar_order;
  j["gbar_prime_order"] = gbar_prime_order;
  j["z_gbar_order"] = z_gbar_order;
  j["pi_zg_order"] = pi_zg_order;
  j["x_order"] = x_order;
  j["gbar_quotient_order"] = gbar_quotient_order;
  j["y_order"] = y_order;
  j["phi_image_order"] = phi_image_order;
  j["phi_injective"] = phi_injective;
  j["phi_surjective"] = phi_surjective;
  j["witness_chi"] = witness_chi ? nlohmann::ordered_json(*witness_chi) : nlohmann::ordered_json(nullptr);
  return j;
}

HomPair build_witness_pair(const CriterionReport& report, const CriterionSetup& s) {
  if (!report.witness_chi) throw GroupError("phi is surjective; no witness character");
  const auto& chi = *report.witness_chi;
  const auto& gens = s.lambda->generators();
  std::vector<AmbientElement> id_images, twisted;
  for (std::size_t g : gens) {
    const AmbientElement& x = s.lambda->ambient(g);
    id_images.push_back(x);
    twisted.push_back(s.center->ambient(chi.at(s.projection[g])) * x);
  }
  return HomPair(hom_from_gens(s.lambda, gens, id_images, s.group),
                 hom_from_gens(s.lambda, gens, twisted, s.group));
}

std::vector<AmbientElement> example_3a1_lifts() {
  const Quat i = Quat::i(), j = Quat::j(), e = Quat::eta();
  return {AmbientElement::sp1_tuple({j, e, e}), AmbientElement::sp1_tuple({e, j, e}),
          AmbientElement::sp1_tuple({e, e, j}), AmbientElement::sp1_tuple({i, i, i})};
}

std::vector<AmbientElement> lifts_from_json(const nlohmann::ordered_json& j) {
  if (!j.is_object() || !j.contains("generators") || !j["generators"].is_array())
    throw GroupError("input must be an object with a \"generators\" array");
  std::vector<AmbientElement> out;
  for (const auto& t : j["generators"]) {
    if (!t.is_array() || t.size() != 3) throw GroupError("each generator must be a triple of quaternions");
    out.push_back(AmbientElement::sp1_tuple({Quat::from_json(t[0]), Quat::from_json(t[1]), Quat::from_json(t[2])}));
  }
  if (out.empty()) throw GroupError("at least one generator is required");
  return out;
}

nlohmann::ordered_json lifts_to_json(const std::vector<AmbientElement>& lifts) {
  auto gens = nlohmann::ordered_json::array();
  for (const auto& x : lifts) {
    auto t = nlohmann::ordered_json::array();
    for (std::size_t f = 0; f < x.size(); ++f) t.push_back(x.quat(f).to_json());
    gens.push_back(std::move(t));
  }
  return {{"generators", std::move(gens)}};
}

}  // namespace acceptcert
