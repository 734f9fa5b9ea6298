#pragma once

#include <string>
#include <variant>
#include <vector>

#include "acceptcert/exact_matrix.hpp"

namespace acceptcert {

/// H = O(2n+1) (fixed points of Ad(diag(1,...,1,-1))) or H0 = SO(2n+1)
/// (stabilizer of the last basis vector) inside SO(2n+2).
struct SymPairFamily {
  enum class Kind { OOdd, SOOdd };
  Kind kind = Kind::OOdd;
  int n = 1;

  std::size_t dim() const { return static_cast<std::size_t>(2 * n + 2); }
  std::string name() const;
  /// Throws std::invalid_argument for n < 1.
  void validate() const;
  static Kind parse_kind(const std::string& s);
};

/// theta = 2 pi k / m.
struct Angle {
  long k = 0;
  int m = 1;

  CycNum cos() const;
  CycNum sin() const;
  std::string to_string() const;
};

ExactMatrix build_g_theta(const SymPairFamily& fam, const Angle& ang);

/// Exact membership in the family's H.
bool in_h(const SymPairFamily& fam, const ExactMatrix& x);

/// Lie algebra of H as flattened antisymmetric matrices.
Subspace h_lie_algebra(const SymPairFamily& fam);

/// h \cap Ad(g) h.
Subspace lie_intersection(const SymPairFamily& fam, const ExactMatrix& g);

/// A closed subgroup given by the Lie algebra of its identity component and
/// representatives of its other components.
struct SubgroupDescriptor {
  std::size_t dim = 0;
  Subspace lie;
  std::vector<ExactMatrix> component_reps;

  std::vector<ExactMatrix> generators() const;
  std::size_t component_count() const { return component_reps.size() + 1; }
};

/// H \cap Ad(g) H, with components represented by sign-diagonal matrices
/// and reduced modulo the identity component.
SubgroupDescriptor intersection_descriptor(const SymPairFamily& fam, const ExactMatrix& g);
SubgroupDescriptor intersection_descriptor(const SymPairFamily& fam, const Angle& ang);

/// Sign diagonal s with s = exp(pi X) for X a sum of commuting coordinate
/// rotations in lie.
bool sign_in_identity_component(const Subspace& lie, const ExactMatrix& s);

struct NotSignPattern {
  std::size_t commutant_dim = 0;
};

using CentralizerElements = std::variant<std::vector<ExactMatrix>, NotSignPattern>;

/// Elements of SO(N) commuting with the descriptor when its commutant is
/// spanned by block identities on disjoint coordinate blocks.
CentralizerElements centralizer_of_descriptor(const SubgroupDescriptor& d);

enum class ConditionVerdict { Holds, Fails, Undecided };
std::string to_string(ConditionVerdict v);

struct ConditionResult {
  ConditionVerdict verdict = ConditionVerdict::Undecided;
  std::string reason;
  /// Which form of the condition was checked.
  std::string condition;
  std::size_t lie_dim = 0;
  std::size_t component_count = 0;
};

ConditionResult decide_condition(const SymPairFamily& fam, const Angle& ang);

struct ScanRow {
  Angle angle;
  ConditionResult result;
};

/// decide_condition for theta = 2 pi k / m, 0 <= k < m, in order of m then k.
std::vector<ScanRow> scan_angles(const SymPairFamily& fam, const std::vector<int>& denominators);

/// Reduced fractions k/m of the circle at which the scan fails.
std::vector<std::pair<long, long>> failing_fractions(const std::vector<ScanRow>& rows);

/// Fails exactly at 1/4 and 3/4 of the circle for OOdd, never for SOOdd, and
/// no Undecided rows.
bool matches_classification(const SymPairFamily& fam, const std::vector<ScanRow>& rows);

}  // namespace acceptcert
