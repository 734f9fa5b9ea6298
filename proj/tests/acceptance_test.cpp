// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "acceptcert/certificates.hpp"
#include "acceptcert/report.hpp"

using namespace acceptcert;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

RunResult run_id(const std::string& id, const Json& params) { return run(*find_certificate(id), params); }

std::string failures(const RunResult& r) {
  std::string s;
  for (const auto& c : r.checks)
    if (!c.ok()) s += " " + c.name + "=" + c.computed.dump() + " (want " + c.expected.dump() + ")";
  if (!r.error.empty()) s += " error: " + r.error;
  return s;
}

struct Outcome {
  bool pass = true;
  std::string note;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      note += (note.empty() ? "" : "; ") + what;
    }
  }
};

// ---- criterion 9 helpers ----

CycNum random_cyc(std::mt19937_64& rng) {
  static const int conductors[] = {1, 3, 4, 5, 8, 12, 15};
  const int n = conductors[rng() % 7];
  std::vector<Rational> c(static_cast<std::size_t>(n));
  for (auto& q : c) q = Rational(static_cast<long>(rng() % 11) - 5, static_cast<long>(rng() % 4) + 1);
  return CycNum::make(n, c);
}

std::vector<Rational> convolve(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

ExactMatrix random_matrix(std::mt19937_64& rng, std::size_t n) {
  ExactMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = rng() % 3 ? CycNum(static_cast<long>(rng() % 5) - 2) : random_cyc(rng);
  return m;
}

// Unipotent times signed permutation: always invertible.
ExactMatrix random_invertible(std::mt19937_64& rng, std::size_t n) {
  ExactMatrix u = ExactMatrix::identity(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r + 1; c < n; ++c) u(r, c) = CycNum(static_cast<long>(rng() % 5) - 2);
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  ExactMatrix p(n, n);
  for (std::size_t i = 0; i < n; ++i) p(i, perm[i]) = rng() % 2 ? 1 : -1;
  return u * p;
}

std::size_t property_failures(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::size_t bad = 0;
  auto expect = [&](bool ok) { bad += !ok; };

  for (int t = 0; t < 40; ++t) {
    const CycNum x = random_cyc(rng), y = random_cyc(rng), z = random_cyc(rng);
    expect((x + y) + z == x + (y + z));
    expect((x * y) * z == x * (y * z));
    expect(x + y == y + x);
    expect(x * y == y * x);
    expect(x * (y + z) == x * y + x * z);
    expect(x + CycNum(0) == x && x * CycNum(1) == x);
    expect((x - x).is_zero());
    if (!x.is_zero()) expect((x * x.inverse()).is_one() && (y / x) * x == y);
    expect((x * y).conj() == x.conj() * y.conj());
    expect(x.conj().conj() == x);
    // Embedding into Q(zeta_60) is a ring homomorphism.
    const int big = 60;
    const bool fits = big % x.conductor() == 0 && big % y.conductor() == 0;
    if (fits) {
      const auto ex = x.coeffs_at(big), ey = y.coeffs_at(big);
      expect(CycNum::make(big, ex) == x);
      expect(CycNum::make(big, convolve(ex, ey)) == x * y);
      std::vector<Rational> sum(ex.size());
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = ex[i] + ey[i];
      expect(CycNum::make(big, sum) == x + y);
    }
  }

  for (int n = 1; n <= 60; ++n) {
    const CycNum w = CycNum::zeta(n);
    expect(w.pow(n).is_one());
    for (int d = 1; d < n; ++d)
      if (n % d == 0) expect(!w.pow(d).is_one());
  }

  for (int t = 0; t < 6; ++t) {
    const std::size_t n = 2 + rng() % 3;
    const ExactMatrix m = random_matrix(rng, n), p = random_invertible(rng, n);
    const auto cp = char_poly(m);
    expect(char_poly(p * m * p.inverse()) == cp);
    expect(cp[0] == (n % 2 ? -m.det() : m.det()));
  }

  // Commutant of a conjugated diagonal matrix has dimension sum of squared
  // multiplicities.
  for (int t = 0; t < 6; ++t) {
    const std::size_t n = 2 + rng() % 3;
    std::vector<CycNum> d;
    std::map<long, std::size_t> mult;
    for (std::size_t i = 0; i < n; ++i) {
      const long v = static_cast<long>(rng() % 3);
      d.emplace_back(v);
      ++mult[v];
    }
    std::size_t expected = 0;
    for (const auto& [v, k] : mult) expected += k * k;
    const ExactMatrix p = random_invertible(rng, n);
    const ExactMatrix m = p * ExactMatrix::diagonal(d) * p.inverse();
    const std::vector<ExactMatrix> mats{m};
    const Subspace c = commutant(mats);
    expect(c.dim() == expected);
    for (const auto& x : c.basis_matrices(n)) expect(x * m == m * x);
  }
  return bad;
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    std::string name;
    std::function<Outcome()> body;
  };
  std::vector<Criterion> criteria;

  criteria.push_back({1, "su4_mod_center", [] {
                        Outcome o;
                        const RunResult r = run_id("su4_mod_center", Json::object());
                        o.require(r.pass(), "certificate:" + failures(r));
                        o.require(r.counts["source_order"] == 16, "source order");
                        o.require(r.counts["consistent_twists"].get<long>() <= 4, "more than 4 consistent twists");
                        o.require(r.seconds < 1.0, "runtime " + std::to_string(r.seconds) + " s");
                        return o;
                      }});

  criteria.push_back({2, "sp1_diag m=3..8, eps=+-1", [] {
                        Outcome o;
                        int passes = 0;
                        for (int m = 3; m <= 8; ++m)
                          for (int eps : {1, -1}) {
                            const RunResult r = run_id("sp1_diag", Json{{"m", m}, {"eps", eps}});
                            passes += r.pass();
                            o.require(r.pass(), "m=" + std::to_string(m) + " eps=" + std::to_string(eps) + failures(r));
                            o.require(r.seconds < 2.0, "m=" + std::to_string(m) + " runtime " + std::to_string(r.seconds));
                          }
                        o.note = std::to_string(passes) + "/12 pass" + (o.note.empty() ? "" : "; " + o.note);
                        return o;
                      }});

  criteria.push_back({3, "crit_3a1", [] {
                        Outcome o;
                        const RunResult r = run_id("crit_3a1", Json::object());
                        o.require(r.pass(), "certificate:" + failures(r));
                        o.require(r.seconds < 10.0, "runtime " + std::to_string(r.seconds) + " s");
                        return o;
                      }});

  criteria.push_back({4, "psu_odd_prime p=3,5", [] {
                        Outcome o;
                        for (int p : {3, 5}) {
                          const RunResult r = run_id("psu_odd_prime", Json{{"p", p}});
                          o.require(r.pass(), "p=" + std::to_string(p) + failures(r));
                          o.require(r.seconds < 30.0, "p=" + std::to_string(p) + " runtime " + std::to_string(r.seconds));
                        }
                        return o;
                      }});

  criteria.push_back({5, "su4_power_d4 k=1,2", [] {
                        Outcome o;
                        for (int k : {1, 2}) {
                          const RunResult r = run_id("su4_power_d4", Json{{"k", k}});
                          o.require(r.pass(), "k=" + std::to_string(k) + failures(r));
                          o.require(r.seconds < 10.0, "k=" + std::to_string(k) + " runtime " + std::to_string(r.seconds));
                        }
                        return o;
                      }});

  criteria.push_back({6, "SCF scans o-odd/so-odd n=1,2 over m=4,6,8", [] {
                        Outcome o;
                        double total = 0;
                        for (const char* id : {"scf_o_odd", "scf_so_odd"})
                          for (int n : {1, 2}) {
                            const RunResult r = run_id(id, Json{{"n", n}, {"denominators", {4, 6, 8}}});
                            total += r.seconds;
                            o.require(r.pass(), std::string(id) + " n=" + std::to_string(n) + failures(r));
                          }
                        o.require(total < 30.0, "total runtime " + std::to_string(total));
                        return o;
                      }});

  criteria.push_back({7, "decide_global agrees with the weight oracle on 200 random pairs", [] {
                        Outcome o;
                        std::mt19937_64 rng(2024);
                        int agree = 0, positive = 0;
                        for (const char* g : {"su4", "sp1^3"})
                          for (int t = 0; t < 100; ++t) {
                            const HomPair p = random_abelian_pair(g, rng);
                            const bool oracle = abelian_weight_oracle(p);
                            agree += decide_global(p).globally_conjugate == oracle;
                            positive += oracle;
                          }
                        o.require(agree == 200, std::to_string(agree) + "/200 agree");
                        if (o.pass)
                          o.note = "200/200 agree (" + std::to_string(positive) + " globally conjugate, " +
                                   std::to_string(200 - positive) + " not)";
                        return o;
                      }});

  criteria.push_back({8, "random (phi, Ad(g) phi) in SU(4) and Sp(1)^3 are globally conjugate", [] {
                        Outcome o;
                        for (const char* g : {"su4", "sp1^3"}) {
                          const RunResult r = run_id("sanity_acceptable", Json{{"group", g}, {"seed", 1}, {"count", 50}});
                          o.require(r.pass(), std::string(g) + failures(r));
                        }
                        if (o.pass) o.note = "50/50 in each group";
                        return o;
                      }});

  criteria.push_back({9, "exact arithmetic properties", [] {
                        Outcome o;
                        std::size_t bad = 0;
                        for (std::uint64_t seed : {1, 2, 3, 4, 5}) bad += property_failures(seed);
                        o.require(bad == 0, std::to_string(bad) + " property failures");
                        if (o.pass) o.note = "0 failures over 5 seeds";
                        return o;
                      }});

  criteria.push_back({10, "run_all reports identical modulo timing", [] {
                        Outcome o;
                        auto report = [] {
                          Report r;
                          r.invocation = Json{{"command", "run-all"}, {"filter", ""}};
                          r.results = run_all();
                          return r.to_json(false).dump(2);
                        };
                        const std::string a = report(), b = report();
                        o.require(a == b, "reports differ");
                        o.require(a.find("\"timing\"") == std::string::npos, "timing not stripped");
                        return o;
                      }});

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o.pass = false;
      o.note = std::string("exception: ") + e.what();
    }
    failed += !o.pass;
    std::printf("[%s] %2d  %s (%.2f s)%s%s\n", o.pass ? "PASS" : "FAIL", c.number, c.name.c_str(), since(start),
                o.note.empty() ? "" : ": ", o.note.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
