#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "acceptcert/hom_check.hpp"

namespace acceptcert {

using Json = nlohmann::ordered_json;

/// Parameters of one certificate run, as a JSON object.
using Params = Json;

class ParamError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunOptions {
  std::size_t cap = 0;
};

/// One computed quantity compared against its expected value.
struct Check {
  std::string name;
  Json expected;
  Json computed;
  bool ok() const { return expected == computed; }

  friend bool operator==(const Check&, const Check&) = default;
};

struct RunResult {
  std::string id;
  Params params;
  std::string anchor;
  std::vector<Check> checks;
  /// Sizes of the groups involved and search statistics.
  Json counts = Json::object();
  /// Certificate-specific output such as scan tables.
  Json details = Json::object();
  /// Set when the run threw; the run then fails.
  std::string error;
  double seconds = 0;

  bool pass() const;
  Json to_json(bool with_timing = true) const;
  static RunResult from_json(const Json& j);

  /// Equality ignores timing.
  friend bool operator==(const RunResult& a, const RunResult& b);
};

struct Certificate {
  std::string id;
  /// The construction being reproduced, in words.
  std::string anchor;
  /// Every accepted parameter with its default value.
  Params defaults = Json::object();
  std::vector<Params> default_grid;
  /// Throws ParamError on bad input.
  std::function<void(const Params&)> validate;
  std::function<void(const Params&, const RunOptions&, RunResult&)> body;
};

/// Fixed-order registry of every certificate.
const std::vector<Certificate>& registry();
const Certificate* find_certificate(const std::string& id);

/// Fills in defaults and validates. Throws ParamError.
Params normalize_params(const Certificate& cert, const Params& params);

RunResult run(const Certificate& cert, const Params& params, const RunOptions& opts = {});

/// Ids matching a shell glob; an empty filter matches everything.
bool id_matches(const std::string& id, const std::string& filter);

/// Every matching certificate over its grid, in registry order. grids may
/// override a certificate's default grid by id.
std::vector<RunResult> run_all(const std::string& filter = "", const Json& grids = Json::object(),
                               const RunOptions& opts = {});

// Constructions, exposed for tests.

/// Example pair on (C4)^2 into SU(4)/<-I>: phi' is the entrywise conjugate.
HomPair su4_mod_center_pair();
/// (C4)^2 into Sp(1)^m / <(-1,...,-1)>.
HomPair sp1_diag_pair(int m, int eps);
/// (Cp)^2 into SU(p)/mu_p: cyclic shift and diag(omega^j) vs its square.
HomPair psu_odd_prime_pair(int p);
/// (C4)^2 into SU(4)^k / <(-I,...,-I)>. literal = true conjugates only the
/// second generator.
HomPair su4_power_pair(int k, bool literal = false);

/// Random (phi, Ad(g) phi) with trivial Z, for "su4" or "sp1^3".
HomPair random_conjugated_pair(const std::string& group, std::mt19937_64& rng);
/// Random pair of diagonal-image homomorphisms of (C4)^2 into SU(4)/<-I> or
/// Sp(1)^3/<(-1,-1,-1)> ("su4" or "sp1^3"), in the oracle's domain.
HomPair random_abelian_pair(const std::string& group, std::mt19937_64& rng);

}  // namespace acceptcert
