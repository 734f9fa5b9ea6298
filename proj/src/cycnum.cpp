#include "acceptcert/cycnum.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <utility>

namespace acceptcert {

namespace {

struct ConductorTable {
  int n = 1;
  int phi = 1;
  std::vector<int> primes;
  // power[e] = coefficients of zeta_n^e reduced modulo Phi_n, for 0 <= e < n.
  std::vector<std::vector<Rational>> power;
};

// Q(zeta_d) as a subspace of Q(zeta_n): the embedding columns, a set of pivot
// rows on which the embedding is invertible, and that inverse.
struct SubfieldTable {
  int n = 1;
  int d = 1;
  std::vector<std::vector<Rational>> embed;
  std::vector<int> pivots;
  std::vector<std::vector<Rational>> inv;
};

std::vector<int> prime_factors(int n) {
  std::vector<int> out;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::unique_ptr<ConductorTable> build_conductor_table(int n) {
  auto t = std::make_unique<ConductorTable>();
  t->n = n;
  t->phi = static_cast<int>(euler_phi(n));
  t->primes = prime_factors(n);
  const std::vector<long> phi_poly = cyclotomic_polynomial(n);
  const int deg = t->phi;
  t->power.reserve(n);
  std::vector<Rational> cur(deg);
  cur[0] = 1;
  for (int e = 0; e < n; ++e) {
    t->power.push_back(cur);
    // multiply by zeta and reduce with the monic Phi_n
    Rational top = cur[deg - 1];
    for (int k = deg - 1; k > 0; --k) cur[k] = cur[k - 1];
    cur[0] = 0;
    if (top != 0) {
      for (int k = 0; k < deg; ++k) cur[k] -= top * phi_poly[k];
    }
  }
  return t;
}

const ConductorTable& conductor_table(int n) {
  thread_local std::unordered_map<int, const ConductorTable*> local;
  if (auto it = local.find(n); it != local.end()) return *it->second;
  static std::mutex mu;
  static std::unordered_map<int, std::unique_ptr<ConductorTable>> shared;
  const ConductorTable* ptr = nullptr;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = shared[n];
    if (!slot) slot = build_conductor_table(n);
    ptr = slot.get();
  }
  local.emplace(n, ptr);
  return *ptr;
}

// Inverts a square rational matrix by Gauss-Jordan elimination.
std::vector<std::vector<Rational>> invert_rational(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) throw ExactAlgebraError("singular rational matrix");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    const Rational s = 1 / Rational(a[col][col]);
    for (std::size_t k = 0; k < n; ++k) {
      a[col][k] *= s;
      inv[col][k] *= s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t k = 0; k < n; ++k) {
        a[r][k] -= f * a[col][k];
        inv[r][k] -= f * inv[col][k];
      }
    }
  }
  return inv;
}

std::unique_ptr<SubfieldTable> build_subfield_table(int n, int d) {
  const ConductorTable& tn = conductor_table(n);
  const int phid = static_cast<int>(euler_phi(d));
  auto s = std::make_unique<SubfieldTable>();
  s->n = n;
  s->d = d;
  const int step = n / d;
  for (int j = 0; j < phid; ++j) s->embed.push_back(tn.power[(j * step) % n]);

  // Pick pivot rows greedily: row r is kept if it is independent of the
  // rows kept so far (rows of the phi(n) x phi(d) embedding matrix).
  std::vector<std::vector<Rational>> basis;  // echelon copies of kept rows
  std::vector<int> lead;
  for (int r = 0; r < tn.phi && static_cast<int>(s->pivots.size()) < phid; ++r) {
    std::vector<Rational> row(phid);
    for (int j = 0; j < phid; ++j) row[j] = s->embed[j][r];
    for (std::size_t b = 0; b < basis.size(); ++b) {
      if (row[lead[b]] != 0) {
        const Rational f = row[lead[b]] / basis[b][lead[b]];
        for (int j = 0; j < phid; ++j) row[j] -= f * basis[b][j];
      }
    }
    auto nz = std::find_if(row.begin(), row.end(), [](const Rational& q) { return q != 0; });
    if (nz == row.end()) continue;
    lead.push_back(static_cast<int>(nz - row.begin()));
    basis.push_back(std::move(row));
    s->pivots.push_back(r);
  }
  std::vector<std::vector<Rational>> sub(phid, std::vector<Rational>(phid));
  for (int i = 0; i < phid; ++i)
    for (int j = 0; j < phid; ++j) sub[i][j] = s->embed[j][s->pivots[i]];
  s->inv = invert_rational(std::move(sub));
  return s;
}

const SubfieldTable& subfield_table(int n, int d) {
  const long key = static_cast<long>(n) * 100000 + d;
  thread_local std::unordered_map<long, const SubfieldTable*> local;
  if (auto it = local.find(key); it != local.end()) return *it->second;
  static std::mutex mu;
  static std::unordered_map<long, std::unique_ptr<SubfieldTable>> shared;
  const SubfieldTable* ptr = nullptr;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = shared[key];
    if (!slot) slot = build_subfield_table(n, d);
    ptr = slot.get();
  }
  local.emplace(key, ptr);
  return *ptr;
}

long lcm_checked(long a, long b) {
  const long l = std::lcm(a, b);
  if (l > kConductorCap) {
    throw ExactAlgebraError("conductor " + std::to_string(l) + " exceeds cap " +
                            std::to_string(kConductorCap));
  }
  return l;
}

// Reduces sum poly[e] zeta_n^e (any length) modulo Phi_n.
std::vector<Rational> reduce_poly(const std::vector<Rational>& poly, int n) {
  const ConductorTable& t = conductor_table(n);
  std::vector<Rational> out(t.phi);
  for (std::size_t e = 0; e < poly.size(); ++e) {
    if (poly[e] == 0) continue;
    const int r = static_cast<int>(e % n);
    if (r < t.phi) {
      out[r] += poly[e];
      continue;
    }
    const auto& pw = t.power[r];
    for (int k = 0; k < t.phi; ++k)
      if (pw[k] != 0) out[k] += poly[e] * pw[k];
  }
  return out;
}

bool all_zero_from(const std::vector<Rational>& v, std::size_t from) {
  for (std::size_t k = from; k < v.size(); ++k)
    if (v[k] != 0) return false;
  return true;
}

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::size_t hash_mpz(const mpz_class& z) {
  std::size_t h = static_cast<std::size_t>(mpz_get_ui(z.get_mpz_t()));
  h = mix(h, static_cast<std::size_t>(mpz_size(z.get_mpz_t())));
  return mix(h, static_cast<std::size_t>(mpz_sgn(z.get_mpz_t()) + 1));
}

}  // namespace

long euler_phi(long n) {
  if (n < 1) throw ExactAlgebraError("euler_phi of non-positive integer");
  long result = n;
  long m = n;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

std::vector<long> cyclotomic_polynomial(int n) {
  if (n < 1) throw ExactAlgebraError("cyclotomic polynomial of non-positive index");
  // x^n - 1 divided by Phi_d for every proper divisor d.
  std::vector<long> num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    const std::vector<long> den = cyclotomic_polynomial(d);
    const std::size_t dd = den.size() - 1;
    std::vector<long> quo(num.size() - dd, 0);
    for (std::size_t i = num.size() - 1; i + 1 > dd; --i) {
      const long c = num[i];  // den is monic
      quo[i - dd] = c;
      if (c != 0)
        for (std::size_t k = 0; k <= dd; ++k) num[i - dd + k] -= c * den[k];
      if (i == dd) break;
    }
    num = std::move(quo);
  }
  return num;
}

CycNum::CycNum() : conductor_(1), coeffs_{Rational(0)} {}

CycNum::CycNum(long value) : conductor_(1), coeffs_{Rational(value)} {}

CycNum::CycNum(const Rational& value) : conductor_(1), coeffs_{value} {}

CycNum::CycNum(int conductor, std::vector<Rational> coeffs, bool canonical)
    : conductor_(conductor), coeffs_(std::move(coeffs)) {
  if (!canonical) canonicalize();
}

CycNum CycNum::make(int conductor, const std::vector<Rational>& coeffs) {
  if (conductor < 1) throw ExactAlgebraError("conductor must be positive");
  if (conductor > kConductorCap)
    throw ExactAlgebraError("conductor " + std::to_string(conductor) + " exceeds cap");
  std::vector<Rational> c = coeffs;
  for (auto& q : c) q.canonicalize();
  return CycNum(conductor, reduce_poly(c, conductor), false);
}

CycNum CycNum::zeta(int n, long k) {
  if (n < 1) throw ExactAlgebraError("conductor must be positive");
  long e = k % n;
  if (e < 0) e += n;
  const ConductorTable& t = conductor_table(n);
  return CycNum(n, t.power[e], false);
}

CycNum CycNum::cos2pi(long k, int m) {
  return (zeta(m, k) + zeta(m, -k)) * CycNum(Rational(1, 2));
}

CycNum CycNum::sin2pi(long k, int m) {
  return (zeta(m, k) - zeta(m, -k)) * zeta(4, 3) * CycNum(Rational(1, 2));
}

CycNum CycNum::sqrt2() { return zeta(8, 1) + zeta(8, -1); }

void CycNum::canonicalize() {
  if (coeffs_.empty()) coeffs_.assign(1, Rational(0));
  for (;;) {
    if (all_zero_from(coeffs_, 1)) {
      coeffs_.resize(1);
      conductor_ = 1;
      return;
    }
    bool descended = false;
    const ConductorTable& t = conductor_table(conductor_);
    for (int p : t.primes) {
      int d = conductor_ / p;
      if (d % 4 == 2) d /= 2;
      if (d == conductor_) continue;
      const SubfieldTable& s = subfield_table(conductor_, d);
      const std::size_t phid = s.pivots.size();
      std::vector<Rational> y(phid);
      for (std::size_t i = 0; i < phid; ++i)
        for (std::size_t j = 0; j < phid; ++j)
          if (s.inv[i][j] != 0) y[i] += s.inv[i][j] * coeffs_[s.pivots[j]];
      bool ok = true;
      for (int r = 0; r < t.phi && ok; ++r) {
        Rational acc = 0;
        for (std::size_t j = 0; j < phid; ++j)
          if (y[j] != 0 && s.embed[j][r] != 0) acc += y[j] * s.embed[j][r];
        ok = (acc == coeffs_[r]);
      }
      if (ok) {
        coeffs_ = std::move(y);
        conductor_ = d;
        descended = true;
        break;
      }
    }
    if (!descended) return;
  }
}

std::vector<Rational> CycNum::coeffs_at(int n) const {
  if (n < 1 || n % conductor_ != 0)
    throw ExactAlgebraError("cannot embed conductor " + std::to_string(conductor_) + " into " +
                            std::to_string(n));
  if (n == conductor_) return coeffs_;
  const ConductorTable& t = conductor_table(n);
  const int step = n / conductor_;
  std::vector<Rational> out(t.phi);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k] == 0) continue;
    const auto& pw = t.power[(static_cast<long>(k) * step) % n];
    for (int j = 0; j < t.phi; ++j)
      if (pw[j] != 0) out[j] += coeffs_[k] * pw[j];
  }
  return out;
}

bool CycNum::is_zero() const { return conductor_ == 1 && coeffs_[0] == 0; }

bool CycNum::is_one() const { return conductor_ == 1 && coeffs_[0] == 1; }

Rational CycNum::to_rational() const {
  if (conductor_ != 1) throw ExactAlgebraError("value is not rational: " + to_string());
  return coeffs_[0];
}

CycNum CycNum::galois(long k) const {
  const int n = conductor_;
  long kk = k % n;
  if (kk < 0) kk += n;
  if (std::gcd(kk, static_cast<long>(n)) != 1)
    throw ExactAlgebraError("Galois exponent not coprime to conductor");
  if (n == 1) return *this;
  std::vector<Rational> poly(n);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) poly[(static_cast<long>(j) * kk) % n] += coeffs_[j];
  return CycNum(n, reduce_poly(poly, n), false);
}

CycNum CycNum::conj() const { return galois(-1); }

CycNum CycNum::inverse() const {
  if (is_zero()) throw ExactAlgebraError("division by zero");
  if (conductor_ == 1) return CycNum(Rational(1 / coeffs_[0]));
  const int n = conductor_;
  const ConductorTable& t = conductor_table(n);
  const int phi = t.phi;
  // Columns of the multiplication-by-x matrix, then solve M y = e_0.
  std::vector<std::vector<Rational>> m(phi, std::vector<Rational>(phi));
  for (int j = 0; j < phi; ++j) {
    std::vector<Rational> shifted(phi + j);
    for (int k = 0; k < phi; ++k) shifted[k + j] = coeffs_[k];
    const auto col = reduce_poly(shifted, n);
    for (int r = 0; r < phi; ++r) m[r][j] = col[r];
  }
  const auto inv = invert_rational(std::move(m));
  std::vector<Rational> y(phi);
  for (int r = 0; r < phi; ++r) y[r] = inv[r][0];
  return CycNum(n, std::move(y), false);
}

CycNum CycNum::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  CycNum result(1);
  CycNum base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

CycNum CycNum::real_part() const { return (*this + conj()) * CycNum(Rational(1, 2)); }

CycNum CycNum::imag_part() const {
  return (*this - conj()) * zeta(4, 3) * CycNum(Rational(1, 2));
}

CycNum CycNum::operator-() const {
  CycNum out = *this;
  for (auto& q : out.coeffs_) q = -q;
  return out;
}

CycNum& CycNum::operator+=(const CycNum& o) {
  if (o.is_zero()) return *this;
  if (conductor_ == o.conductor_) {
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  } else {
    const int l = static_cast<int>(lcm_checked(conductor_, o.conductor_));
    std::vector<Rational> a = coeffs_at(l);
    const std::vector<Rational> b = o.coeffs_at(l);
    for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
    coeffs_ = std::move(a);
    conductor_ = l;
  }
  canonicalize();
  return *this;
}

CycNum& CycNum::operator-=(const CycNum& o) { return *this += -o; }

CycNum operator*(const CycNum& a, const CycNum& b) {
  if (a.is_zero() || b.is_zero()) return CycNum();
  if (a.conductor_ == 1 || b.conductor_ == 1) {
    const CycNum& scalar = a.conductor_ == 1 ? a : b;
    const CycNum& other = a.conductor_ == 1 ? b : a;
    CycNum out = other;
    for (auto& q : out.coeffs_) q *= scalar.coeffs_[0];
    return out;
  }
  const int l = static_cast<int>(lcm_checked(a.conductor_, b.conductor_));
  const std::vector<Rational> ca = a.coeffs_at(l);
  const std::vector<Rational> cb = b.coeffs_at(l);
  std::vector<Rational> prod(ca.size() + cb.size() - 1);
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (ca[i] == 0) continue;
    for (std::size_t j = 0; j < cb.size(); ++j)
      if (cb[j] != 0) prod[i + j] += ca[i] * cb[j];
  }
  return CycNum(l, reduce_poly(prod, l), false);
}

CycNum& CycNum::operator*=(const CycNum& o) {
  *this = *this * o;
  return *this;
}

CycNum& CycNum::operator/=(const CycNum& o) {
  *this = *this * o.inverse();
  return *this;
}

bool operator==(const CycNum& a, const CycNum& b) {
  return a.conductor_ == b.conductor_ && a.coeffs_ == b.coeffs_;
}

std::strong_ordering operator<=>(const CycNum& a, const CycNum& b) {
  if (a.conductor_ != b.conductor_) return a.conductor_ <=> b.conductor_;
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) {
    const int c = cmp(a.coeffs_[k], b.coeffs_[k]);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::size_t CycNum::hash() const {
  std::size_t h = static_cast<std::size_t>(conductor_);
  for (const auto& q : coeffs_) {
    h = mix(h, hash_mpz(q.get_num()));
    h = mix(h, hash_mpz(q.get_den()));
  }
  return h;
}

std::string CycNum::to_string() const {
  if (conductor_ == 1) return coeffs_[0].get_str();
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const Rational& q = coeffs_[k];
    if (q == 0) continue;
    Rational mag = abs(q);
    if (!first) os << (sgn(q) < 0 ? " - " : " + ");
    else if (sgn(q) < 0) os << "-";
    first = false;
    if (k == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << "*";
    os << "z" << conductor_;
    if (k > 1) os << "^" << k;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const CycNum& x) { return os << x.to_string(); }

nlohmann::ordered_json CycNum::to_json() const {
  nlohmann::ordered_json j;
  j["n"] = conductor_;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& q : coeffs_) arr.push_back(q.get_str());
  j["c"] = std::move(arr);
  return j;
}

Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(mpz_class(s));
    const mpz_class num(s.substr(0, slash));
    const mpz_class den(s.substr(slash + 1));
    if (den == 0) throw ExactAlgebraError("zero denominator in rational '" + s + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw ExactAlgebraError("malformed rational '" + s + "'");
  }
}

CycNum CycNum::from_json(const nlohmann::ordered_json& j) {
  if (j.is_number_integer()) return CycNum(j.get<long>());
  if (j.is_string()) return CycNum(parse_rational(j.get<std::string>()));
  if (!j.is_object() || !j.contains("n") || !j.contains("c") || !j["n"].is_number_integer() ||
      !j["c"].is_array())
    throw ExactAlgebraError("CycNum JSON must be {\"n\": int, \"c\": [\"p/q\", ...]}");
  const int n = j["n"].get<int>();
  std::vector<Rational> coeffs;
  for (const auto& c : j["c"]) {
    if (c.is_string()) coeffs.push_back(parse_rational(c.get<std::string>()));
    else if (c.is_number_integer()) coeffs.emplace_back(c.get<long>());
    else throw ExactAlgebraError("CycNum coefficient must be a rational string");
  }
  return CycNum::make(n, coeffs);
}

CycNum cyc_make(int conductor, const std::vector<Rational>& coeffs) {
  return CycNum::make(conductor, coeffs);
}

CycNum cyc_embed(const CycNum& x, int new_conductor) {
  (void)x.coeffs_at(new_conductor);  // validates divisibility
  return x;
}

}  // namespace acceptcert
