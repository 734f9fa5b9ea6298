#include "acceptcert/fin_group.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <sstream>

namespace acceptcert {

namespace {

constexpr std::size_t kTableLimit = 2048;

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::size_t resolve_cap(std::size_t cap) { return cap == 0 ? default_closure_cap() : cap; }

}  // namespace

std::size_t default_closure_cap() {
  if (const char* env = std::getenv("ACCEPTCERT_MAX_CLOSURE")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultClosureCap;
}

std::size_t FormalWord::hash() const {
  std::size_t h = coords.size();
  for (int c : coords) h = mix(h, static_cast<std::size_t>(c));
  return h;
}

std::string FormalWord::to_string() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < coords.size(); ++i) os << (i ? "," : "") << coords[i];
  os << ")";
  return os.str();
}

std::size_t payload_hash(const ElementPayload& x) {
  return std::visit([](const auto& v) { return v.hash(); }, x);
}

FormalGroupSpec FormalGroupSpec::cyclic_product(std::vector<int> orders) {
  if (orders.empty()) throw GroupError("cyclic product needs at least one factor");
  for (int n : orders)
    if (n <= 0) throw GroupError("cyclic factor orders must be positive");
  return {Kind::CyclicProduct, std::move(orders)};
}

FormalGroupSpec FormalGroupSpec::central_ext2(int n1, int n2) {
  if (n1 <= 0 || n2 <= 0) throw GroupError("central extension orders must be positive");
  if (n1 % 2 || n2 % 2) throw GroupError("central extension needs even n1 and n2");
  return {Kind::CentralExt2, {n1, n2}};
}

FinGroup FinGroup::build(const std::vector<ElementPayload>& gens, const ElementPayload& identity,
                         const MulFn& mul, std::size_t cap, GroupSpecPtr quotient, bool formal) {
  FinGroup g;
  g.quotient_ = std::move(quotient);
  g.formal_ = formal;
  g.elements_.push_back(identity);
  g.buckets_[payload_hash(identity)].push_back(0);
  g.parent_.push_back(0);
  g.pgen_.push_back(0);

  // Deduplicate generators; identity generators are dropped.
  std::vector<ElementPayload> uniq;
  for (const auto& x : gens) {
    if (x == identity) continue;
    if (std::find(uniq.begin(), uniq.end(), x) == uniq.end()) uniq.push_back(x);
  }
  const std::size_t k = uniq.size();

  auto lookup = [&g](const ElementPayload& x) -> std::optional<std::size_t> {
    auto it = g.buckets_.find(payload_hash(x));
    if (it == g.buckets_.end()) return std::nullopt;
    for (std::size_t i : it->second)
      if (g.elements_[i] == x) return i;
    return std::nullopt;
  };

  for (std::size_t cur = 0; cur < g.elements_.size(); ++cur) {
    for (std::size_t gi = 0; gi < k; ++gi) {
      ElementPayload y = mul(g.elements_[cur], uniq[gi]);
      std::size_t idx;
      if (auto found = lookup(y)) {
        idx = *found;
      } else {
        idx = g.elements_.size();
        if (idx >= cap) throw ClosureCapExceeded(cap);
        g.buckets_[payload_hash(y)].push_back(idx);
        g.elements_.push_back(std::move(y));
        g.parent_.push_back(static_cast<std::uint32_t>(cur));
        g.pgen_.push_back(static_cast<std::uint32_t>(gi));
      }
      g.right_.push_back(static_cast<std::uint32_t>(idx));
    }
  }
  for (const auto& x : uniq) g.generators_.push_back(*lookup(x));
  g.finish();
  return g;
}

void FinGroup::finish() {
  const std::size_t n = elements_.size();
  const std::size_t k = generators_.size();
  if (n <= kTableLimit) {
    table_.assign(n * n, 0);
    for (std::size_t a = 0; a < n; ++a) {
      table_[a * n] = static_cast<std::uint32_t>(a);
      // Elements appear in BFS order, so parents come first.
      for (std::size_t b = 1; b < n; ++b)
        table_[a * n + b] = right_[table_[a * n + parent_[b]] * k + pgen_[b]];
    }
  }
  inverse_.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    if (!table_.empty()) {
      for (std::size_t b = 0; b < n; ++b)
        if (table_[a * n + b] == 0) {
          inverse_[a] = b;
          break;
        }
    } else {
      inverse_[a] = pow(a, static_cast<long>(element_order(a)) - 1);
    }
  }
}

std::size_t FinGroup::walk(std::size_t a, std::size_t b) const {
  std::vector<std::uint32_t> word;
  while (b != 0) {
    word.push_back(pgen_[b]);
    b = parent_[b];
  }
  const std::size_t k = generators_.size();
  for (auto it = word.rbegin(); it != word.rend(); ++it) a = right_[a * k + *it];
  return a;
}

std::size_t FinGroup::mul(std::size_t a, std::size_t b) const {
  const std::size_t n = elements_.size();
  if (!table_.empty()) return table_[a * n + b];
  return walk(a, b);
}

std::size_t FinGroup::pow(std::size_t a, long k) const {
  if (k < 0) return pow(inv(a), -k);
  std::size_t r = 0;
  std::size_t base = a;
  while (k > 0) {
    if (k & 1) r = mul(r, base);
    base = mul(base, base);
    k >>= 1;
  }
  return r;
}

std::size_t FinGroup::element_order(std::size_t a) const {
  std::size_t x = a, ord = 1;
  while (x != 0) {
    x = mul(x, a);
    ++ord;
  }
  return ord;
}

const AmbientElement& FinGroup::ambient(std::size_t i) const {
  const auto* x = std::get_if<AmbientElement>(&elements_.at(i));
  if (!x) throw GroupError("element " + std::to_string(i) + " is a formal word");
  return *x;
}

std::optional<std::size_t> FinGroup::index_of(const ElementPayload& x) const {
  auto it = buckets_.find(payload_hash(x));
  if (it == buckets_.end()) return std::nullopt;
  for (std::size_t i : it->second)
    if (elements_[i] == x) return i;
  return std::nullopt;
}

std::size_t FinGroup::index_of_checked(const ElementPayload& x) const {
  auto i = index_of(x);
  if (!i) throw GroupError("element is not in the group");
  return *i;
}

bool FinGroup::is_abelian() const {
  for (std::size_t a : generators_)
    for (std::size_t b : generators_)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

std::size_t FinGroup::exponent() const {
  std::size_t e = 1;
  for (std::size_t a = 0; a < order(); ++a) e = std::lcm(e, element_order(a));
  return e;
}

bool FinGroup::is_elementary_abelian_2() const {
  if (!is_abelian()) return false;
  for (std::size_t a = 0; a < order(); ++a)
    if (mul(a, a) != 0) return false;
  return true;
}

FinGroupPtr closure(const std::vector<AmbientElement>& gens, std::size_t cap) {
  if (gens.empty()) throw GroupError("closure needs at least one generator to fix the ambient group");
  for (const auto& x : gens)
    if (x.kinds() != gens[0].kinds()) throw GroupError("closure generators live in different groups");
  std::vector<ElementPayload> ps(gens.begin(), gens.end());
  auto mul = [](const ElementPayload& a, const ElementPayload& b) -> ElementPayload {
    return std::get<AmbientElement>(a) * std::get<AmbientElement>(b);
  };
  return std::make_shared<const FinGroup>(FinGroup::build(
      ps, AmbientElement::identity(gens[0].kinds()), mul, resolve_cap(cap)));
}

FinGroupPtr closure(const GroupSpecPtr& g, const std::vector<AmbientElement>& gens, std::size_t cap) {
  std::vector<ElementPayload> ps;
  for (const auto& x : gens) ps.emplace_back(canonical_rep(*g, x));
  auto mul = [g](const ElementPayload& a, const ElementPayload& b) -> ElementPayload {
    return canonical_rep(*g, std::get<AmbientElement>(a) * std::get<AmbientElement>(b));
  };
  return std::make_shared<const FinGroup>(FinGroup::build(
      ps, canonical_rep(*g, AmbientElement::identity(g->factors())), mul, resolve_cap(cap), g));
}

FinGroupPtr formal_group(const FormalGroupSpec& spec) {
  std::vector<ElementPayload> gens;
  FinGroup::MulFn mul;
  FormalWord id;
  const std::vector<int> ord = spec.orders;
  if (spec.kind == FormalGroupSpec::Kind::CyclicProduct) {
    for (int n : ord)
      if (n <= 0) throw GroupError("cyclic factor orders must be positive");
    id.coords.assign(ord.size(), 0);
    for (std::size_t i = 0; i < ord.size(); ++i) {
      FormalWord e = id;
      e.coords[i] = 1 % ord[i];
      gens.emplace_back(e);
    }
    mul = [ord](const ElementPayload& a, const ElementPayload& b) -> ElementPayload {
      const auto& x = std::get<FormalWord>(a).coords;
      const auto& y = std::get<FormalWord>(b).coords;
      FormalWord r;
      for (std::size_t i = 0; i < ord.size(); ++i) r.coords.push_back((x[i] + y[i]) % ord[i]);
      return r;
    };
  } else {
    if (ord.size() != 2) throw GroupError("central extension takes two orders");
    const int n1 = ord[0], n2 = ord[1];
    if (n1 <= 0 || n2 <= 0 || n1 % 2 || n2 % 2) throw GroupError("central extension needs even positive orders");
    id.coords = {0, 0, 0};
    gens = {FormalWord{{1, 0, 0}}, FormalWord{{0, 1 % n1, 0}}, FormalWord{{0, 0, 1 % n2}}};
    mul = [n1, n2](const ElementPayload& a, const ElementPayload& b) -> ElementPayload {
      const auto& x = std::get<FormalWord>(a).coords;
      const auto& y = std::get<FormalWord>(b).coords;
      return FormalWord{{(x[0] + y[0] + x[2] * y[1]) % 2, (x[1] + y[1]) % n1, (x[2] + y[2]) % n2}};
    };
  }
  auto g = std::make_shared<const FinGroup>(
      FinGroup::build(gens, id, mul, resolve_cap(0), nullptr, true));
  if (spec.kind == FormalGroupSpec::Kind::CentralExt2) {
    const std::size_t g0 = g->index_of_checked(FormalWord{{1, 0, 0}});
    const std::size_t g1 = g->index_of_checked(FormalWord{{0, 1, 0}});
    const std::size_t g2 = g->index_of_checked(FormalWord{{0, 0, 1}});
    bool ok = g->pow(g1, ord[0]) == 0 && g->pow(g2, ord[1]) == 0 && g->mul(g0, g0) == 0;
    for (std::size_t x = 0; x < g->order() && ok; ++x) ok = g->mul(g0, x) == g->mul(x, g0);
    ok = ok && g->mul(g2, g1) == g->mul(g0, g->mul(g1, g2));
    if (!ok) throw GroupError("central extension table violates its relations");
  }
  return g;
}

FinGroupPtr subgroup(const FinGroupPtr& g, const std::vector<std::size_t>& gens) {
  std::vector<ElementPayload> ps;
  for (std::size_t i : gens) ps.push_back(g->payload(i));
  auto mul = [g](const ElementPayload& a, const ElementPayload& b) -> ElementPayload {
    return g->payload(g->mul(g->index_of_checked(a), g->index_of_checked(b)));
  };
  FinGroup s = FinGroup::build(ps, g->payload(0), mul, g->order() + 1, g->quotient(), g->is_formal());
  for (std::size_t i = 0; i < s.order(); ++i) s.parent_indices_.push_back(g->index_of_checked(s.payload(i)));
  return std::make_shared<const FinGroup>(std::move(s));
}

std::vector<std::size_t> centralizer_indices(const FinGroup& g, const std::vector<std::size_t>& subset) {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (std::size_t s : subset)
      if (g.mul(x, s) != g.mul(s, x)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(x);
  }
  return out;
}

FinGroupPtr centralizer_in(const FinGroupPtr& g, const std::vector<std::size_t>& subset) {
  return subgroup(g, centralizer_indices(*g, subset));
}

std::vector<std::size_t> center_indices(const FinGroup& g) {
  std::vector<std::size_t> all(g.order());
  std::iota(all.begin(), all.end(), 0);
  return centralizer_indices(g, g.generators().empty() ? all : g.generators());
}

std::vector<std::size_t> generated_indices(const FinGroup& g, const std::vector<std::size_t>& gens) {
  std::vector<char> in(g.order(), 0);
  std::vector<std::size_t> out{0};
  in[0] = 1;
  for (std::size_t cur = 0; cur < out.size(); ++cur)
    for (std::size_t s : gens) {
      const std::size_t y = g.mul(out[cur], s);
      if (!in[y]) {
        in[y] = 1;
        out.push_back(y);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> derived_subgroup_indices(const FinGroup& g) {
  std::vector<char> seen(g.order(), 0);
  std::vector<std::size_t> comms;
  for (std::size_t a = 0; a < g.order(); ++a)
    for (std::size_t b = 0; b < g.order(); ++b) {
      const std::size_t c = g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b)));
      if (!seen[c]) {
        seen[c] = 1;
        comms.push_back(c);
      }
    }
  return generated_indices(g, comms);
}

std::vector<std::vector<std::size_t>> conjugacy_classes(const FinGroup& g) {
  std::vector<char> done(g.order(), 0);
  std::vector<std::vector<std::size_t>> classes;
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (done[x]) continue;
    std::vector<std::size_t> cls;
    for (std::size_t h = 0; h < g.order(); ++h) {
      const std::size_t y = g.conj(h, x);
      if (!done[y]) {
        done[y] = 1;
        cls.push_back(y);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

FinGroupPtr center(const GroupSpecPtr& g) {
  std::vector<AmbientElement> gens;
  const auto& fs = g->factors();
  for (std::size_t f = 0; f < fs.size(); ++f) {
    if (fs[f].type == FactorType::SO3) continue;
    std::vector<FactorPayload> parts;
    for (std::size_t e = 0; e < fs.size(); ++e) {
      if (fs[e].type == FactorType::Sp1) {
        parts.emplace_back(e == f ? -Quat::one() : Quat::one());
      } else if (e == f) {
        parts.emplace_back(ExactMatrix::scalar(fs[e].n, CycNum::zeta(fs[e].n)));
      } else {
        parts.emplace_back(ExactMatrix::identity(fs[e].n));
      }
    }
    gens.emplace_back(fs, std::move(parts));
  }
  return closure(g, gens);
}

bool FinHom::is_homomorphism() const {
  if (map.size() != src->order() || map[0] != 0) return false;
  for (std::size_t a = 0; a < src->order(); ++a)
    for (std::size_t b = 0; b < src->order(); ++b)
      if (map[src->mul(a, b)] != dst->mul(map[a], map[b])) return false;
  return true;
}

CentralQuotient quotient_by_central(const FinGroupPtr& g, const std::vector<std::size_t>& n) {
  std::vector<char> in_n(g->order(), 0);
  for (std::size_t x : n) in_n.at(x) = 1;
  if (!in_n[0]) throw GroupError("subgroup must contain the identity");
  for (std::size_t a : n)
    for (std::size_t b : n)
      if (!in_n[g->mul(a, b)]) throw GroupError("subset is not a subgroup");
  for (std::size_t x = 0; x < g->order(); ++x)
    for (std::size_t m : n)
      if (!in_n[g->conj(x, m)]) throw GroupError("subgroup is not normal");

  // Coset ids in order of smallest member.
  std::vector<std::size_t> coset(g->order(), SIZE_MAX);
  std::vector<std::size_t> reps;
  for (std::size_t x = 0; x < g->order(); ++x) {
    if (coset[x] != SIZE_MAX) continue;
    const std::size_t id = reps.size();
    reps.push_back(x);
    for (std::size_t m : n) coset[g->mul(x, m)] = id;
  }
  const std::size_t q = reps.size();

  FinGroup out;
  out.quotient_ = g->quotient();
  out.formal_ = g->is_formal();
  for (std::size_t c = 0; c < q; ++c) {
    out.elements_.push_back(g->payload(reps[c]));
    out.buckets_[payload_hash(out.elements_.back())].push_back(c);
    out.parent_indices_.push_back(reps[c]);
  }
  // Generators: images of g's generators, deduplicated, identity removed.
  for (std::size_t s : g->generators()) {
    const std::size_t c = coset[s];
    if (c != 0 && std::find(out.generators_.begin(), out.generators_.end(), c) == out.generators_.end())
      out.generators_.push_back(c);
  }
  // BFS tree over the quotient generators so that word walking also works.
  const std::size_t k = out.generators_.size();
  out.right_.assign(q * k, 0);
  for (std::size_t c = 0; c < q; ++c)
    for (std::size_t gi = 0; gi < k; ++gi)
      out.right_[c * k + gi] = static_cast<std::uint32_t>(coset[g->mul(reps[c], reps[out.generators_[gi]])]);
  out.parent_.assign(q, 0);
  out.pgen_.assign(q, 0);
  {
    std::vector<char> seen(q, 0);
    std::vector<std::size_t> order{0};
    seen[0] = 1;
    for (std::size_t cur = 0; cur < order.size(); ++cur)
      for (std::size_t gi = 0; gi < k; ++gi) {
        const std::size_t y = out.right_[order[cur] * k + gi];
        if (!seen[y]) {
          seen[y] = 1;
          out.parent_[y] = static_cast<std::uint32_t>(order[cur]);
          out.pgen_[y] = static_cast<std::uint32_t>(gi);
          order.push_back(y);
        }
      }
    if (order.size() != q) throw GroupError("quotient generators do not generate");
  }
  out.table_.assign(q * q, 0);
  for (std::size_t a = 0; a < q; ++a)
    for (std::size_t b = 0; b < q; ++b)
      out.table_[a * q + b] = static_cast<std::uint32_t>(coset[g->mul(reps[a], reps[b])]);
  out.inverse_.assign(q, 0);
  for (std::size_t a = 0; a < q; ++a) out.inverse_[a] = coset[g->inv(reps[a])];

  CentralQuotient res;
  res.group = std::make_shared<const FinGroup>(std::move(out));
  res.projection = FinHom{g, res.group, coset};
  return res;
}

std::vector<std::size_t> f2_basis(const FinGroup& g) {
  if (!g.is_elementary_abelian_2()) throw GroupError("group is not an elementary abelian 2-group");
  std::vector<char> span(g.order(), 0);
  std::vector<std::size_t> members{0};
  span[0] = 1;
  std::vector<std::size_t> basis;
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (span[x]) continue;
    basis.push_back(x);
    const std::size_t m = members.size();
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t y = g.mul(members[i], x);
      span[y] = 1;
      members.push_back(y);
    }
  }
  return basis;
}

std::vector<FinHom> hom_set_to_elem_abelian_2(const FinGroupPtr& src, const FinGroupPtr& target) {
  const auto basis = f2_basis(*src);
  if (!target->is_elementary_abelian_2())
    throw GroupError("target is not an elementary abelian 2-group");
  // Coordinates of every source element in the basis.
  std::vector<std::vector<char>> coords(src->order());
  {
    std::vector<std::size_t> members{0};
    coords[0].assign(basis.size(), 0);
    for (std::size_t bi = 0; bi < basis.size(); ++bi) {
      const std::size_t m = members.size();
      for (std::size_t i = 0; i < m; ++i) {
        const std::size_t y = src->mul(members[i], basis[bi]);
        coords[y] = coords[members[i]];
        coords[y][bi] = 1;
        members.push_back(y);
      }
    }
  }
  const std::size_t t = target->order();
  std::size_t count = 1;
  for (std::size_t i = 0; i < basis.size(); ++i) count *= t;
  std::vector<FinHom> out;
  out.reserve(count);
  std::vector<std::size_t> img(basis.size(), 0);
  for (std::size_t c = 0; c < count; ++c) {
    std::size_t r = c;
    for (std::size_t i = basis.size(); i-- > 0;) {
      img[i] = r % t;
      r /= t;
    }
    FinHom h{src, target, std::vector<std::size_t>(src->order(), 0)};
    for (std::size_t x = 0; x < src->order(); ++x) {
      std::size_t y = 0;
      for (std::size_t bi = 0; bi < basis.size(); ++bi)
        if (coords[x][bi]) y = target->mul(y, img[bi]);
      h.map[x] = y;
    }
    out.push_back(std::move(h));
  }
  return out;
}

std::vector<std::size_t> Hom::kernel() const {
  std::vector<std::size_t> k;
  for (std::size_t x = 0; x < image_idx_.size(); ++x)
    if (image_idx_[x] == 0) k.push_back(x);
  return k;
}

Hom hom_from_gens(const FinGroupPtr& src, const std::vector<std::size_t>& gen_indices,
                  const std::vector<AmbientElement>& images, const GroupSpecPtr& target,
                  std::size_t cap) {
  if (gen_indices.size() != images.size()) throw GroupError("one image per generator required");
  if (gen_indices.empty() && src->order() > 1) throw GroupError("generators do not generate the source");
  Hom h;
  h.src_ = src;
  h.target_ = target;
  if (images.empty()) {
    h.image_ = closure(target, {AmbientElement::identity(target->factors())}, cap);
  } else {
    h.image_ = closure(target, images, cap);
  }
  std::vector<std::size_t> gen_img;
  for (const auto& x : images) gen_img.push_back(h.image_->index_of_checked(canonical_rep(*target, x)));

  const std::size_t n = src->order();
  h.image_idx_.assign(n, SIZE_MAX);
  h.image_idx_[0] = 0;
  std::vector<std::size_t> queue{0};
  for (std::size_t cur = 0; cur < queue.size(); ++cur) {
    const std::size_t x = queue[cur];
    for (std::size_t gi = 0; gi < gen_indices.size(); ++gi) {
      const std::size_t y = src->mul(x, gen_indices[gi]);
      const std::size_t fy = h.image_->mul(h.image_idx_[x], gen_img[gi]);
      if (h.image_idx_[y] == SIZE_MAX) {
        h.image_idx_[y] = fy;
        queue.push_back(y);
      } else if (h.image_idx_[y] != fy) {
        throw NotAHomomorphism("generator images violate a relation of the source group", x,
                               gen_indices[gi]);
      }
    }
  }
  if (queue.size() != n) throw GroupError("generators do not generate the source");
  const FinGroup& im = *h.image_;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (h.image_idx_[src->mul(a, b)] != im.mul(h.image_idx_[a], h.image_idx_[b]))
        throw NotAHomomorphism("f(xy) != f(x)f(y)", a, b);
  return h;
}

GroupSpecPtr trivial_quotient(const std::vector<FactorKind>& factors) {
  return make_group(factors, {});
}

}  // namespace acceptcert
