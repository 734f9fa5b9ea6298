#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "acceptcert/fin_group.hpp"

namespace acceptcert {

/// Two homomorphisms from the same finite group into the same G = Ghat / Z.
class HomPair {
 public:
  HomPair(Hom phi, Hom phi2);

  const FinGroupPtr& source() const { return phi_.source(); }
  const GroupSpecPtr& target() const { return phi_.target(); }
  const Hom& phi() const { return phi_; }
  const Hom& phi2() const { return phi2_; }
  bool kernels_equal() const { return kernels_equal_; }
  HomPair swapped() const { return HomPair(phi2_, phi_); }

 private:
  Hom phi_, phi2_;
  bool kernels_equal_ = false;
};

struct ElementConjugacy {
  bool element_conjugate = true;
  /// First source index whose images are not conjugate.
  std::optional<std::size_t> witness;
};

ElementConjugacy is_element_conjugate(const HomPair& p);

struct GlobalVerdict {
  bool globally_conjugate = false;
  /// For a positive verdict: z(gamma) as an index into target Z, for every
  /// source element, with F(w a(gamma)) = w z(gamma) b(gamma). Relative to
  /// the canonical lifts unless DecideOptions::lift_seed was set.
  std::vector<std::size_t> twist;
  std::size_t seeds_examined = 0;
  std::size_t consistent_twists = 0;
  std::string reason;
};

struct DecideOptions {
  /// When set, lifts are z * (canonical representative) for pseudo-random z.
  std::optional<std::uint64_t> lift_seed;
  std::size_t cap = 0;
};

/// Decides global conjugacy by enumerating central twists of the lifted
/// homomorphisms and comparing factorwise characters on the preimage group.
GlobalVerdict decide_global(const HomPair& p, const DecideOptions& opts = {});

/// Re-checks a twist returned by decide_global from scratch: F is a
/// well-defined homomorphism on the preimage group fixing Z, and factorwise
/// characters agree on every element.
bool revalidate_twist(const HomPair& p, const std::vector<std::size_t>& twist);

class OracleNotApplicable : public GroupError {
 public:
  using GroupError::GroupError;
};

/// Independent decision for abelian sources with diagonal SU images and
/// Sp(1) images on the circle through i: compares multisets of joint weights
/// under every twist character Gamma -> Z.
bool abelian_weight_oracle(const HomPair& p);

}  // namespace acceptcert
