#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "acceptcert/fin_group.hpp"
#include "acceptcert/hom_check.hpp"

namespace acceptcert {

struct RotationInfo {
  /// Spans the fixed line; first nonzero coordinate is 1. Empty for I.
  Vec axis;
  CycNum trace;
  bool is_half_turn = false;
  bool is_identity = false;
};

RotationInfo rotation_info(const ExactMatrix& r);

/// Half-turn about the line spanned by v.
ExactMatrix half_turn(const Vec& v);

struct InfiniteCentralizer {
  std::string reason;
};

using CentralizerResult = std::variant<FinGroupPtr, InfiniteCentralizer>;

/// Centralizer in SO(3) of a finite group of single-factor SO(3) elements.
CentralizerResult so3_centralizer(const FinGroup& delta);
/// Centralizer in Sp(1) of a finite group of single-factor Sp(1) elements.
CentralizerResult sp1_centralizer(const FinGroup& delta);

class CriterionNotApplicable : public GroupError {
 public:
  using GroupError::GroupError;
};

class InjectivityViolation : public GroupError {
 public:
  using GroupError::GroupError;
};

/// Sp(1)^3 / <(1,-1,-1), (-1,1,-1)>.
GroupSpecPtr three_a1_group();

/// Sp(1)^3 -> SO(3)^3, componentwise adjoint.
AmbientElement project_so3(const AmbientElement& x);

/// Subgroup generated by elements with no half-turn component and by all
/// squares. Throws GroupError if the quotient is not elementary abelian.
FinGroupPtr gamma_bar_prime(const FinGroupPtr& gbar);

/// A finite subgroup of SO(3)^3 given through quaternion lifts, with its
/// full preimage in G.
struct CriterionSetup {
  GroupSpecPtr group;
  /// Full preimage in G; generators are the given lifts, then the nontrivial
  /// element of Z_G when it was not already generated.
  FinGroupPtr lambda;
  FinGroupPtr gbar;
  /// lambda index -> gbar index.
  std::vector<std::size_t> projection;
  /// Z_G = Z(Sp(1)^3) / Z, order 2.
  FinGroupPtr center;
};

CriterionSetup make_setup(const std::vector<AmbientElement>& lifts, std::size_t cap = 0);

struct XData {
  /// Z_Gbar(gbar), as a closure of SO(3)^3 triples.
  FinGroupPtr z_gbar;
  /// Indices of z_gbar lying in pi(Z_G(lambda)).
  std::vector<std::size_t> pi_zg;
  CentralQuotient x;
};

/// Throws CriterionNotApplicable when a factor projection has infinite
/// centralizer.
XData compute_X(const CriterionSetup& s);

/// chi_c(xbar) for every gbar index, as indices into s.center. c must
/// centralize gbar.
std::vector<std::size_t> conjugation_character(const CriterionSetup& s, const AmbientElement& c);

struct CriterionReport {
  std::size_t gbar_order = 0;
  std::size_t gbar_prime_order = 0;
  std::size_t z_gbar_order = 0;
  std::size_t pi_zg_order = 0;
  std::size_t x_order = 0;
  std::size_t gbar_quotient_order = 0;
  std::size_t y_order = 0;
  std::size_t phi_image_order = 0;
  bool phi_injective = false;
  bool phi_surjective = false;
  /// A character of gbar / gbar' outside the image, as values on gbar.
  std::optional<std::vector<std::size_t>> witness_chi;

  nlohmann::ordered_json to_json() const;
};

CriterionReport decide_criterion(const CriterionSetup& s);

/// phi = inclusion of lambda, phi'(x) = chi(pi(x)) x. Requires a witness.
HomPair build_witness_pair(const CriterionReport& report, const CriterionSetup& s);

/// Quaternion lifts (j,eta,eta), (eta,j,eta), (eta,eta,j), (i,i,i).
std::vector<AmbientElement> example_3a1_lifts();

/// {"generators": [[q1, q2, q3], ...]} with each q in the Quat JSON form.
/// Throws GroupError or ExactAlgebraError on malformed input.
std::vector<AmbientElement> lifts_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json lifts_to_json(const std::vector<AmbientElement>& lifts);

}  // namespace acceptcert
