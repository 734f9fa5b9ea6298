#include "acceptcert/group.hpp"

#include <algorithm>
#include <deque>
#include <regex>
#include <sstream>
#include <unordered_set>

namespace acceptcert {

FactorKind FactorKind::su(int n) {
  if (n < 2) throw GroupError("SU(n) requires n >= 2");
  return {FactorType::SU, n};
}

FactorKind FactorKind::parse(const std::string& s) {
  static const std::regex su_re(R"(SU\((\d+)\))");
  std::smatch m;
  if (std::regex_match(s, m, su_re)) return su(std::stoi(m[1]));
  if (s == "Sp(1)" || s == "Sp1") return sp1();
  if (s == "SO(3)" || s == "SO3") return so3();
  throw GroupError("unsupported factor '" + s + "' (supported: SU(n), Sp(1), SO(3))");
}

std::string FactorKind::name() const {
  switch (type) {
    case FactorType::SU: return "SU(" + std::to_string(n) + ")";
    case FactorType::Sp1: return "Sp(1)";
    case FactorType::SO3: return "SO(3)";
  }
  return "?";
}

Quat Quat::eta() {
  const CycNum h = CycNum::sqrt2() * CycNum(Rational(1, 2));
  return {h, h, 0, 0};
}

bool Quat::components_real() const {
  return a_.is_real() && b_.is_real() && c_.is_real() && d_.is_real();
}

Quat operator*(const Quat& p, const Quat& q) {
  const CycNum &a1 = p.a_, &b1 = p.b_, &c1 = p.c_, &d1 = p.d_;
  const CycNum &a2 = q.a_, &b2 = q.b_, &c2 = q.c_, &d2 = q.d_;
  return {a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2, a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
          a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2, a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2};
}

std::strong_ordering operator<=>(const Quat& p, const Quat& q) {
  if (auto c = p.a_ <=> q.a_; c != 0) return c;
  if (auto c = p.b_ <=> q.b_; c != 0) return c;
  if (auto c = p.c_ <=> q.c_; c != 0) return c;
  return p.d_ <=> q.d_;
}

std::size_t Quat::hash() const {
  std::size_t h = a_.hash();
  for (const CycNum* x : {&b_, &c_, &d_}) h ^= x->hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::string Quat::to_string() const {
  std::ostringstream os;
  os << "(" << a_ << ", " << b_ << ", " << c_ << ", " << d_ << ")";
  return os.str();
}

nlohmann::ordered_json Quat::to_json() const {
  return nlohmann::ordered_json::array({a_.to_json(), b_.to_json(), c_.to_json(), d_.to_json()});
}

Quat Quat::from_json(const nlohmann::ordered_json& j) {
  if (!j.is_array() || j.size() != 4) throw GroupError("quaternion JSON must be [a, b, c, d]");
  return {CycNum::from_json(j[0]), CycNum::from_json(j[1]), CycNum::from_json(j[2]),
          CycNum::from_json(j[3])};
}

AmbientElement::AmbientElement(std::vector<FactorKind> kinds, std::vector<FactorPayload> parts)
    : kinds_(std::move(kinds)), parts_(std::move(parts)) {
  validate();
}

AmbientElement AmbientElement::unchecked(std::vector<FactorKind> kinds,
                                         std::vector<FactorPayload> parts) {
  AmbientElement x;
  x.kinds_ = std::move(kinds);
  x.parts_ = std::move(parts);
  return x;
}

void AmbientElement::validate() const {
  if (kinds_.size() != parts_.size()) throw GroupError("factor count mismatch");
  for (std::size_t f = 0; f < kinds_.size(); ++f) {
    const FactorKind& k = kinds_[f];
    if (k.type == FactorType::Sp1) {
      const Quat* q = std::get_if<Quat>(&parts_[f]);
      if (!q) throw GroupError("Sp(1) factor needs a quaternion");
      if (!q->is_unit()) throw GroupError("Sp(1) component is not a real unit quaternion: " + q->to_string());
      continue;
    }
    const ExactMatrix* m = std::get_if<ExactMatrix>(&parts_[f]);
    if (!m) throw GroupError(k.name() + " factor needs a matrix");
    if (m->rows() != static_cast<std::size_t>(k.n) || m->cols() != static_cast<std::size_t>(k.n))
      throw GroupError(k.name() + " component has wrong size");
    const ExactMatrix id = ExactMatrix::identity(k.n);
    if (k.type == FactorType::SO3) {
      if (m->conj() != *m) throw GroupError("SO(3) component has non-real entries");
      if (*m * m->transpose() != id) throw GroupError("SO(3) component is not orthogonal");
    } else if (*m * m->adjoint() != id) {
      throw GroupError(k.name() + " component is not unitary");
    }
    if (!m->det().is_one()) throw GroupError(k.name() + " component does not have determinant 1");
  }
}

AmbientElement AmbientElement::identity(const std::vector<FactorKind>& kinds) {
  std::vector<FactorPayload> parts;
  for (const auto& k : kinds) {
    if (k.type == FactorType::Sp1) parts.emplace_back(Quat::one());
    else parts.emplace_back(ExactMatrix::identity(k.n));
  }
  return unchecked(kinds, std::move(parts));
}

AmbientElement AmbientElement::sp1_tuple(const std::vector<Quat>& qs) {
  std::vector<FactorKind> kinds(qs.size(), FactorKind::sp1());
  std::vector<FactorPayload> parts(qs.begin(), qs.end());
  return AmbientElement(std::move(kinds), std::move(parts));
}

AmbientElement AmbientElement::su(const ExactMatrix& m) {
  return AmbientElement({FactorKind::su(static_cast<int>(m.rows()))}, {m});
}

AmbientElement AmbientElement::so3(const ExactMatrix& m) {
  return AmbientElement({FactorKind::so3()}, {m});
}

const ExactMatrix& AmbientElement::matrix(std::size_t i) const {
  const auto* m = std::get_if<ExactMatrix>(&parts_.at(i));
  if (!m) throw GroupError("factor " + std::to_string(i) + " is not a matrix factor");
  return *m;
}

const Quat& AmbientElement::quat(std::size_t i) const {
  const auto* q = std::get_if<Quat>(&parts_.at(i));
  if (!q) throw GroupError("factor " + std::to_string(i) + " is not an Sp(1) factor");
  return *q;
}

AmbientElement AmbientElement::inverse() const {
  std::vector<FactorPayload> parts;
  parts.reserve(parts_.size());
  for (std::size_t f = 0; f < parts_.size(); ++f) {
    if (const auto* q = std::get_if<Quat>(&parts_[f])) parts.emplace_back(q->conj());
    else parts.emplace_back(std::get<ExactMatrix>(parts_[f]).adjoint());
  }
  return unchecked(kinds_, std::move(parts));
}

bool AmbientElement::is_identity() const { return *this == identity(kinds_); }

bool AmbientElement::is_central() const {
  for (std::size_t f = 0; f < parts_.size(); ++f) {
    const FactorKind& k = kinds_[f];
    if (k.type == FactorType::Sp1) {
      const Quat& q = std::get<Quat>(parts_[f]);
      if (!(q == Quat::one() || q == -Quat::one())) return false;
      continue;
    }
    const ExactMatrix& m = std::get<ExactMatrix>(parts_[f]);
    if (k.type == FactorType::SO3) {
      if (m != ExactMatrix::identity(3)) return false;
      continue;
    }
    const CycNum w = m(0, 0);
    if (m != ExactMatrix::scalar(k.n, w)) return false;
    if (!w.pow(k.n).is_one()) return false;
  }
  return true;
}

AmbientElement operator*(const AmbientElement& x, const AmbientElement& y) {
  if (x.kinds_ != y.kinds_) throw GroupError("product of elements of different groups");
  std::vector<FactorPayload> parts;
  parts.reserve(x.parts_.size());
  for (std::size_t f = 0; f < x.parts_.size(); ++f) {
    if (const auto* q = std::get_if<Quat>(&x.parts_[f])) parts.emplace_back(*q * std::get<Quat>(y.parts_[f]));
    else parts.emplace_back(std::get<ExactMatrix>(x.parts_[f]) * std::get<ExactMatrix>(y.parts_[f]));
  }
  AmbientElement out = AmbientElement::unchecked(x.kinds_, std::move(parts));
#ifndef NDEBUG
  out.validate();
#endif
  return out;
}

std::strong_ordering operator<=>(const AmbientElement& x, const AmbientElement& y) {
  const std::size_t n = std::min(x.parts_.size(), y.parts_.size());
  for (std::size_t f = 0; f < n; ++f) {
    const auto& a = x.parts_[f];
    const auto& b = y.parts_[f];
    if (a.index() != b.index()) return a.index() <=> b.index();
    std::strong_ordering c = std::strong_ordering::equal;
    if (const auto* q = std::get_if<Quat>(&a)) c = *q <=> std::get<Quat>(b);
    else c = std::get<ExactMatrix>(a) <=> std::get<ExactMatrix>(b);
    if (c != 0) return c;
  }
  return x.parts_.size() <=> y.parts_.size();
}

std::size_t AmbientElement::hash() const {
  std::size_t h = parts_.size();
  for (const auto& p : parts_) {
    const std::size_t v = std::visit([](const auto& x) { return x.hash(); }, p);
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::string AmbientElement::to_string() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t f = 0; f < parts_.size(); ++f) {
    if (f) os << ", ";
    std::visit([&os](const auto& x) { os << x.to_string(); }, parts_[f]);
  }
  os << ")";
  return os.str();
}

nlohmann::ordered_json AmbientElement::to_json() const {
  auto factors = nlohmann::ordered_json::array();
  for (std::size_t f = 0; f < parts_.size(); ++f) {
    nlohmann::ordered_json j;
    j["kind"] = kinds_[f].name();
    if (const auto* q = std::get_if<Quat>(&parts_[f])) j["q"] = q->to_json();
    else j["m"] = std::get<ExactMatrix>(parts_[f]).to_json();
    factors.push_back(std::move(j));
  }
  return factors;
}

AmbientElement AmbientElement::from_json(const nlohmann::ordered_json& j) {
  if (!j.is_array() || j.empty()) throw GroupError("element JSON must be a non-empty array of factors");
  std::vector<FactorKind> kinds;
  std::vector<FactorPayload> parts;
  for (const auto& f : j) {
    if (!f.is_object() || !f.contains("kind") || !f["kind"].is_string())
      throw GroupError("factor JSON must carry a \"kind\" string");
    const FactorKind k = FactorKind::parse(f["kind"].get<std::string>());
    kinds.push_back(k);
    if (k.type == FactorType::Sp1) {
      if (!f.contains("q")) throw GroupError("Sp(1) factor JSON needs \"q\"");
      parts.emplace_back(Quat::from_json(f["q"]));
    } else {
      if (!f.contains("m")) throw GroupError(k.name() + " factor JSON needs \"m\"");
      parts.emplace_back(ExactMatrix::from_json(f["m"]));
    }
  }
  return AmbientElement(std::move(kinds), std::move(parts));
}

std::optional<std::size_t> GroupSpec::z_index(const AmbientElement& z) const {
  auto it = std::lower_bound(z_.begin(), z_.end(), z);
  if (it == z_.end() || !(*it == z)) return std::nullopt;
  return static_cast<std::size_t>(it - z_.begin());
}

std::string GroupSpec::name() const {
  std::ostringstream os;
  for (std::size_t f = 0; f < factors_.size(); ++f) {
    std::size_t run = 1;
    while (f + run < factors_.size() && factors_[f + run] == factors_[f]) ++run;
    if (f) os << "x";
    os << factors_[f].name();
    if (run > 1) os << "^" << run;
    f += run - 1;
  }
  if (z_.size() > 1) os << "/Z(" << z_.size() << ")";
  return os.str();
}

nlohmann::ordered_json GroupSpec::to_json() const {
  nlohmann::ordered_json j;
  auto fs = nlohmann::ordered_json::array();
  for (const auto& f : factors_) fs.push_back(f.name());
  j["factors"] = std::move(fs);
  auto gens = nlohmann::ordered_json::array();
  for (const auto& g : central_gens_) gens.push_back(g.to_json());
  j["central_gens"] = std::move(gens);
  j["z_order"] = z_.size();
  return j;
}

GroupSpecPtr make_group(std::vector<FactorKind> factors, std::vector<AmbientElement> central_gens,
                        std::size_t cap) {
  auto g = std::shared_ptr<GroupSpec>(new GroupSpec());
  for (const auto& z : central_gens) {
    if (z.kinds() != factors) throw GroupError("central generator does not match the factors");
    if (!z.is_central()) throw GroupError("generator is not central: " + z.to_string());
  }
  std::unordered_set<AmbientElement> seen;
  std::deque<AmbientElement> queue;
  const AmbientElement id = AmbientElement::identity(factors);
  seen.insert(id);
  queue.push_back(id);
  while (!queue.empty()) {
    const AmbientElement x = queue.front();
    queue.pop_front();
    for (const auto& z : central_gens) {
      AmbientElement y = x * z;
      if (seen.insert(y).second) {
        if (seen.size() > cap) throw GroupError("central subgroup exceeds closure cap");
        queue.push_back(std::move(y));
      }
    }
  }
  g->z_.assign(seen.begin(), seen.end());
  std::sort(g->z_.begin(), g->z_.end());
  g->factors_ = std::move(factors);
  g->central_gens_ = std::move(central_gens);
  return g;
}

AmbientElement canonical_rep(const GroupSpec& g, const AmbientElement& x) {
  if (x.kinds() != g.factors()) throw GroupError("element does not belong to " + g.name());
  if (g.z_order() == 1) return x;
  const AmbientElement* best = nullptr;
  AmbientElement best_val;
  for (const auto& z : g.z_elements()) {
    AmbientElement y = z * x;
    if (!best || y < best_val) {
      best_val = std::move(y);
      best = &best_val;
    }
  }
  return best_val;
}

QuotElement quot(const GroupSpecPtr& g, const AmbientElement& x) {
  return QuotElement{g, canonical_rep(*g, x)};
}

QuotElement QuotElement::inverse() const { return quot(group, rep.inverse()); }

QuotElement operator*(const QuotElement& x, const QuotElement& y) {
  if (x.group != y.group && x.group->factors() != y.group->factors())
    throw GroupError("product of elements of different quotient groups");
  return quot(x.group, x.rep * y.rep);
}

ExactMatrix rotation_matrix(const Quat& q) {
  const CycNum &a = q.a(), &b = q.b(), &c = q.c(), &d = q.d();
  const CycNum two(2);
  return ExactMatrix{
      {a * a + b * b - c * c - d * d, two * (b * c - a * d), two * (b * d + a * c)},
      {two * (b * c + a * d), a * a - b * b + c * c - d * d, two * (c * d - a * b)},
      {two * (b * d - a * c), two * (c * d + a * b), a * a - b * b - c * c + d * d}};
}

AmbientElement adjoint_to_so3(const Quat& q) {
  if (!q.is_unit()) throw GroupError("adjoint_to_so3 needs a unit quaternion");
  return AmbientElement::so3(rotation_matrix(q));
}

Quat rotate_quat(const ExactMatrix& r, const Quat& q) {
  const Vec v = mat_vec(r, {q.b(), q.c(), q.d()});
  return {q.a(), v[0], v[1], v[2]};
}

ExactMatrix su_diag_powers_of_i(const std::vector<int>& exps) {
  std::vector<CycNum> d;
  for (int e : exps) d.push_back(CycNum::zeta(4, e));
  return ExactMatrix::diagonal(d);
}

}  // namespace acceptcert
