#include "acceptcert/scf.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace acceptcert {

namespace {

ExactMatrix elementary_rotation(std::size_t n, std::size_t i, std::size_t j) {
  ExactMatrix x(n, n);
  x(i, j) = 1;
  x(j, i) = -1;
  return x;
}

ExactMatrix sign_diagonal(std::size_t n, unsigned mask) {
  std::vector<CycNum> d;
  for (std::size_t i = 0; i < n; ++i) d.emplace_back((mask >> i) & 1u ? -1 : 1);
  return ExactMatrix::diagonal(d);
}

bool commutes(const ExactMatrix& a, const ExactMatrix& b) { return a * b == b * a; }

}  // namespace

std::string SymPairFamily::name() const {
  return std::string(kind == Kind::OOdd ? "o-odd" : "so-odd") + " n=" + std::to_string(n);
}

void SymPairFamily::validate() const {
  if (n < 1) throw std::invalid_argument("family parameter n must be at least 1");
}

SymPairFamily::Kind SymPairFamily::parse_kind(const std::string& s) {
  if (s == "o-odd") return Kind::OOdd;
  if (s == "so-odd") return Kind::SOOdd;
  throw std::invalid_argument("unknown family '" + s + "' (expected o-odd or so-odd)");
}

CycNum Angle::cos() const { return CycNum::cos2pi(k, m); }
CycNum Angle::sin() const { return CycNum::sin2pi(k, m); }
std::string Angle::to_string() const { return "2pi*" + std::to_string(k) + "/" + std::to_string(m); }

ExactMatrix build_g_theta(const SymPairFamily& fam, const Angle& ang) {
  fam.validate();
  const std::size_t n = fam.dim();
  ExactMatrix g = ExactMatrix::identity(n);
  const CycNum c = ang.cos(), s = ang.sin();
  g(n - 2, n - 2) = c;
  g(n - 2, n - 1) = s;
  g(n - 1, n - 2) = -s;
  g(n - 1, n - 1) = c;
  return g;
}

bool in_h(const SymPairFamily& fam, const ExactMatrix& x) {
  const std::size_t n = fam.dim();
  if (fam.kind == SymPairFamily::Kind::OOdd) {
    std::vector<CycNum> d(n, CycNum(1));
    d[n - 1] = -1;
    return commutes(x, ExactMatrix::diagonal(d));
  }
  for (std::size_t r = 0; r < n; ++r)
    if (x(r, n - 1) != CycNum(r == n - 1 ? 1 : 0)) return false;
  return true;
}

Subspace h_lie_algebra(const SymPairFamily& fam) {
  const std::size_t n = fam.dim();
  std::vector<ExactMatrix> basis;
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = i + 1; j + 1 < n; ++j) basis.push_back(elementary_rotation(n, i, j));
  return Subspace::span_matrices(basis);
}

Subspace lie_intersection(const SymPairFamily& fam, const ExactMatrix& g) {
  const std::size_t n = fam.dim();
  const Subspace h = h_lie_algebra(fam);
  const ExactMatrix gt = g.transpose();
  std::vector<ExactMatrix> moved;
  for (const auto& x : h.basis_matrices(n)) moved.push_back(g * x * gt);
  return subspace_intersect(h, Subspace::span_matrices(moved));
}

std::vector<ExactMatrix> SubgroupDescriptor::generators() const {
  std::vector<ExactMatrix> out = lie.basis_matrices(dim);
  out.insert(out.end(), component_reps.begin(), component_reps.end());
  return out;
}

bool sign_in_identity_component(const Subspace& lie, const ExactMatrix& s) {
  const std::size_t n = s.rows();
  std::vector<std::size_t> neg;
  for (std::size_t i = 0; i < n; ++i)
    if (s(i, i) == CycNum(-1)) neg.push_back(i);
  if (neg.size() % 2) return false;
  // Perfect matching of the negative coordinates along coordinate rotations
  // contained in lie.
  std::vector<char> used(neg.size(), 0);
  auto in_lie = [&](std::size_t a, std::size_t b) { return lie.contains(flatten(elementary_rotation(n, a, b))); };
  std::function<bool()> match = [&]() -> bool {
    std::size_t first = 0;
    while (first < neg.size() && used[first]) ++first;
    if (first == neg.size()) return true;
    used[first] = 1;
    for (std::size_t other = first + 1; other < neg.size(); ++other) {
      if (used[other] || !in_lie(neg[first], neg[other])) continue;
      used[other] = 1;
      if (match()) return true;
      used[other] = 0;
    }
    used[first] = 0;
    return false;
  };
  return match();
}

SubgroupDescriptor intersection_descriptor(const SymPairFamily& fam, const ExactMatrix& g) {
  fam.validate();
  SubgroupDescriptor d;
  d.dim = fam.dim();
  d.lie = lie_intersection(fam, g);
  const ExactMatrix ginv = g.transpose();
  for (unsigned mask = 1; mask < (1u << d.dim); ++mask) {
    const ExactMatrix s = sign_diagonal(d.dim, mask);
    if (s.det() != CycNum(1) || !in_h(fam, s) || !in_h(fam, ginv * s * g)) continue;
    if (sign_in_identity_component(d.lie, s)) continue;
    bool fresh = true;
    for (const auto& t : d.component_reps) fresh = fresh && !sign_in_identity_component(d.lie, s * t);
    if (fresh) d.component_reps.push_back(s);
  }
  return d;
}

SubgroupDescriptor intersection_descriptor(const SymPairFamily& fam, const Angle& ang) {
  return intersection_descriptor(fam, build_g_theta(fam, ang));
}

CentralizerElements centralizer_of_descriptor(const SubgroupDescriptor& d) {
  const std::size_t n = d.dim;
  const auto gens = d.generators();
  const Subspace comm = commutant(gens);
  const auto basis = comm.basis_matrices(n);
  for (const auto& b : basis)
    if (!b.is_diagonal()) return NotSignPattern{comm.dim()};

  // Coordinates i, j share a block when every commutant element agrees there.
  std::vector<std::size_t> block(n, SIZE_MAX);
  std::size_t blocks = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (block[i] != SIZE_MAX) continue;
    block[i] = blocks;
    for (std::size_t j = i + 1; j < n; ++j) {
      bool same = true;
      for (const auto& b : basis) same = same && b(i, i) == b(j, j);
      if (same) block[j] = blocks;
    }
    ++blocks;
  }
  if (blocks != comm.dim()) return NotSignPattern{comm.dim()};

  std::vector<ExactMatrix> out;
  for (unsigned mask = 0; mask < (1u << blocks); ++mask) {
    std::vector<CycNum> diag;
    for (std::size_t i = 0; i < n; ++i) diag.emplace_back((mask >> block[i]) & 1u ? -1 : 1);
    ExactMatrix z = ExactMatrix::diagonal(diag);
    if (z.det() != CycNum(1)) continue;
    for (const auto& x : gens)
      if (!commutes(z, x)) throw std::logic_error("block sign pattern fails to commute");
    out.push_back(std::move(z));
  }
  return out;
}

std::string to_string(ConditionVerdict v) {
  switch (v) {
    case ConditionVerdict::Holds:
      return "holds";
    case ConditionVerdict::Fails:
      return "fails";
    case ConditionVerdict::Undecided:
      return "undecided";
  }
  return "undecided";
}

ConditionResult decide_condition(const SymPairFamily& fam, const Angle& ang) {
  const ExactMatrix g = build_g_theta(fam, ang);
  const SubgroupDescriptor k = intersection_descriptor(fam, g);
  ConditionResult r;
  r.condition = fam.kind == SymPairFamily::Kind::OOdd ? "g in Z_G(H cap Ad(g)H) H" : "g in Z_G(H0 cap Ad(g)H0) H0";
  r.lie_dim = k.lie.dim();
  r.component_count = k.component_count();

  const auto gens = k.generators();
  if (std::all_of(gens.begin(), gens.end(), [&](const ExactMatrix& x) { return commutes(g, x); })) {
    r.verdict = ConditionVerdict::Holds;
    r.reason = "g centralizes K";
    return r;
  }
  if (in_h(fam, g)) {
    r.verdict = ConditionVerdict::Holds;
    r.reason = "g in H";
    return r;
  }
  const auto cent = centralizer_of_descriptor(k);
  if (const auto* nsp = std::get_if<NotSignPattern>(&cent)) {
    r.verdict = ConditionVerdict::Undecided;
    r.reason = "centralizer has circle factors (commutant dimension " + std::to_string(nsp->commutant_dim) + ")";
    return r;
  }
  const auto& zs = std::get<std::vector<ExactMatrix>>(cent);
  for (const auto& z : zs) {
    if (in_h(fam, z.transpose() * g)) {
      r.verdict = ConditionVerdict::Holds;
      r.reason = "z^-1 g in H for a centralizing sign pattern z";
      return r;
    }
  }
  r.verdict = ConditionVerdict::Fails;
  r.reason = "no z in the " + std::to_string(zs.size()) + "-element centralizer has z^-1 g in H";
  return r;
}

std::vector<ScanRow> scan_angles(const SymPairFamily& fam, const std::vector<int>& denominators) {
  fam.validate();
  std::vector<ScanRow> rows;
  for (int m : denominators) {
    if (m < 1) throw std::invalid_argument("angle denominators must be positive");
    for (long k = 0; k < m; ++k) {
      const Angle a{k, m};
      rows.push_back({a, decide_condition(fam, a)});
    }
  }
  return rows;
}

std::vector<std::pair<long, long>> failing_fractions(const std::vector<ScanRow>& rows) {
  std::vector<std::pair<long, long>> out;
  for (const auto& row : rows) {
    if (row.result.verdict != ConditionVerdict::Fails) continue;
    const long g = std::gcd(row.angle.k, static_cast<long>(row.angle.m));
    const std::pair<long, long> f{row.angle.k / g, row.angle.m / g};
    if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first * b.second < b.first * a.second; });
  return out;
}

bool matches_classification(const SymPairFamily& fam, const std::vector<ScanRow>& rows) {
  for (const auto& row : rows) {
    const long four_k = 4 * row.angle.k;
    const bool quarter = four_k % row.angle.m == 0 && (four_k / row.angle.m) % 2 == 1;
    const bool expect_fail = fam.kind == SymPairFamily::Kind::OOdd && quarter;
    if (row.result.verdict == ConditionVerdict::Undecided) return false;
    if ((row.result.verdict == ConditionVerdict::Fails) != expect_fail) return false;
  }
  return true;
}

}  // namespace acceptcert
