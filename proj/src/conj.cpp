#include "acceptcert/conj.hpp"

namespace acceptcert {

std::vector<CycNum> factor_invariant(const FactorKind& kind, const FactorPayload& x) {
  switch (kind.type) {
    case FactorType::SU:
      return char_poly(std::get<ExactMatrix>(x));
    case FactorType::Sp1:
      return {std::get<Quat>(x).real()};
    case FactorType::SO3:
      return {std::get<ExactMatrix>(x).trace()};
  }
  return {};
}

ConjInvariant invariant(const AmbientElement& x) {
  ConjInvariant inv;
  for (std::size_t f = 0; f < x.size(); ++f) inv.per_factor.push_back(factor_invariant(x.kinds()[f], x.part(f)));
  return inv;
}

bool elements_conjugate(const GroupSpec& g, const QuotElement& x, const QuotElement& y) {
  if (x.rep.kinds() != g.factors() || y.rep.kinds() != g.factors())
    throw GroupError("elements do not belong to " + g.name());
  const ConjInvariant target = invariant(x.rep);
  for (const auto& z : g.z_elements())
    if (invariant(z * y.rep) == target) return true;
  return false;
}

std::vector<CycNum> character_vector(const AmbientElement& x) {
  std::vector<CycNum> out;
  for (std::size_t f = 0; f < x.size(); ++f) {
    if (x.kinds()[f].type == FactorType::Sp1) out.push_back(CycNum(2) * x.quat(f).real());
    else out.push_back(x.matrix(f).trace());
  }
  return out;
}

}  // namespace acceptcert
