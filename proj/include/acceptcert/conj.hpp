#pragma once

#include <vector>

#include "acceptcert/group.hpp"

namespace acceptcert {

/// Complete conjugacy invariant of a finite-order element, per factor:
/// SU(n) -> characteristic polynomial, Sp(1) -> real part, SO(3) -> trace.
struct ConjInvariant {
  std::vector<std::vector<CycNum>> per_factor;
  friend bool operator==(const ConjInvariant&, const ConjInvariant&) = default;
};

std::vector<CycNum> factor_invariant(const FactorKind& kind, const FactorPayload& x);
ConjInvariant invariant(const AmbientElement& x);

/// True iff some z in Z makes z * y.rep conjugate to x.rep in the product.
bool elements_conjugate(const GroupSpec& g, const QuotElement& x, const QuotElement& y);

/// Per factor: trace (SU(n), SO(3)) or twice the real part (Sp(1)).
std::vector<CycNum> character_vector(const AmbientElement& x);

}  // namespace acceptcert
