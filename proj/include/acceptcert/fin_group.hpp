#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "acceptcert/group.hpp"

namespace acceptcert {

inline constexpr std::size_t kDefaultClosureCap = 100000;

/// Closure cap used when callers pass none: kDefaultClosureCap unless
/// ACCEPTCERT_MAX_CLOSURE is set in the environment.
std::size_t default_closure_cap();

class ClosureCapExceeded : public GroupError {
 public:
  explicit ClosureCapExceeded(std::size_t cap)
      : GroupError("closure exceeded cap of " + std::to_string(cap) + " elements"), cap_(cap) {}
  std::size_t cap() const { return cap_; }

 private:
  std::size_t cap_;
};

class NotAHomomorphism : public GroupError {
 public:
  NotAHomomorphism(const std::string& what, std::size_t x, std::size_t y)
      : GroupError(what), x_(x), y_(y) {}
  /// Source indices of a failing pair (f(xy) != f(x) f(y)).
  std::size_t x() const { return x_; }
  std::size_t y() const { return y_; }

 private:
  std::size_t x_, y_;
};

/// Normal-form tuple of a presentation-backed group.
struct FormalWord {
  std::vector<int> coords;
  friend bool operator==(const FormalWord&, const FormalWord&) = default;
  std::size_t hash() const;
  std::string to_string() const;
};

using ElementPayload = std::variant<AmbientElement, FormalWord>;

struct FormalGroupSpec {
  enum class Kind { CyclicProduct, CentralExt2 };
  Kind kind = Kind::CyclicProduct;
  std::vector<int> orders;

  static FormalGroupSpec cyclic_product(std::vector<int> orders);
  /// Normal forms g0^a g1^b g2^c with g1^n1 = g2^n2 = g0^2 = 1, g0 central and
  /// g2 g1 = g0 g1 g2. Both n1 and n2 must be even.
  static FormalGroupSpec central_ext2(int n1, int n2);
};

class FinGroup;
using FinGroupPtr = std::shared_ptr<const FinGroup>;

/// A finite group with an explicit, index-addressed element list. Index 0 is
/// always the identity. Elements are either ambient elements (optionally
/// canonical representatives for a quotient GroupSpec) or formal words.
class FinGroup {
 public:
  using MulFn = std::function<ElementPayload(const ElementPayload&, const ElementPayload&)>;

  std::size_t order() const { return elements_.size(); }
  static constexpr std::size_t identity() { return 0; }
  std::size_t mul(std::size_t a, std::size_t b) const;
  std::size_t inv(std::size_t a) const { return inverse_[a]; }
  std::size_t pow(std::size_t a, long k) const;
  std::size_t element_order(std::size_t a) const;
  std::size_t conj(std::size_t g, std::size_t x) const { return mul(mul(g, x), inv(g)); }

  /// Generating set used to build the group, as element indices.
  const std::vector<std::size_t>& generators() const { return generators_; }
  const ElementPayload& payload(std::size_t i) const { return elements_.at(i); }
  const AmbientElement& ambient(std::size_t i) const;
  bool is_formal() const { return formal_; }
  /// Set when elements are canonical representatives of cosets of this
  /// group's central subgroup.
  const GroupSpecPtr& quotient() const { return quotient_; }

  std::optional<std::size_t> index_of(const ElementPayload& x) const;
  std::size_t index_of_checked(const ElementPayload& x) const;

  /// For subgroups built from a parent FinGroup: index in the parent.
  const std::vector<std::size_t>& parent_indices() const { return parent_indices_; }

  bool is_abelian() const;
  std::size_t exponent() const;
  bool is_elementary_abelian_2() const;

  /// Breadth-first closure of generators under mul. Throws ClosureCapExceeded.
  static FinGroup build(const std::vector<ElementPayload>& gens, const ElementPayload& identity,
                        const MulFn& mul, std::size_t cap, GroupSpecPtr quotient = nullptr,
                        bool formal = false);

 private:
  void finish();
  std::size_t walk(std::size_t a, std::size_t b) const;

  std::vector<ElementPayload> elements_;
  std::unordered_map<std::size_t, std::vector<std::size_t>> buckets_;
  std::vector<std::size_t> generators_;
  std::vector<std::uint32_t> right_;  // right multiplication by generator k
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> pgen_;
  std::vector<std::uint32_t> table_;  // full table for small groups
  std::vector<std::size_t> inverse_;
  std::vector<std::size_t> parent_indices_;
  GroupSpecPtr quotient_;
  bool formal_ = false;

  friend FinGroupPtr subgroup(const FinGroupPtr& g, const std::vector<std::size_t>& gens);
  friend struct CentralQuotient quotient_by_central(const FinGroupPtr& g,
                                                    const std::vector<std::size_t>& n);
};

std::size_t payload_hash(const ElementPayload& x);

/// Closure of ambient elements with plain multiplication in the product.
FinGroupPtr closure(const std::vector<AmbientElement>& gens, std::size_t cap = 0);
/// Closure inside Ghat / Z; elements are canonical representatives.
FinGroupPtr closure(const GroupSpecPtr& g, const std::vector<AmbientElement>& gens,
                    std::size_t cap = 0);
FinGroupPtr formal_group(const FormalGroupSpec& spec);

/// Subgroup generated by the given element indices of g; payloads are shared
/// with g and parent_indices() maps back.
FinGroupPtr subgroup(const FinGroupPtr& g, const std::vector<std::size_t>& gens);

/// Indices of elements of g commuting with every element of subset.
std::vector<std::size_t> centralizer_indices(const FinGroup& g, const std::vector<std::size_t>& subset);
FinGroupPtr centralizer_in(const FinGroupPtr& g, const std::vector<std::size_t>& subset);
std::vector<std::size_t> center_indices(const FinGroup& g);
/// Indices of the subgroup generated by all commutators.
std::vector<std::size_t> derived_subgroup_indices(const FinGroup& g);
/// Indices of the subgroup of g generated by gens.
std::vector<std::size_t> generated_indices(const FinGroup& g, const std::vector<std::size_t>& gens);
std::vector<std::vector<std::size_t>> conjugacy_classes(const FinGroup& g);

/// Z(Ghat) / Z for the product of factor centres.
FinGroupPtr center(const GroupSpecPtr& g);

/// A homomorphism between two FinGroups, as an index map.
struct FinHom {
  FinGroupPtr src;
  FinGroupPtr dst;
  std::vector<std::size_t> map;

  /// True when map(xy) = map(x) map(y) on every pair.
  bool is_homomorphism() const;
};

struct CentralQuotient {
  FinGroupPtr group;
  /// Projection g -> group.
  FinHom projection;
};

/// g / n for a normal subgroup n given as element indices of g. Each coset is
/// represented by its smallest index.
CentralQuotient quotient_by_central(const FinGroupPtr& g, const std::vector<std::size_t>& n);

/// F2 basis of an elementary abelian 2-group, greedily in index order.
std::vector<std::size_t> f2_basis(const FinGroup& g);

/// All homomorphisms between elementary abelian 2-groups, enumerated in
/// lexicographic order of the images of f2_basis(src).
std::vector<FinHom> hom_set_to_elem_abelian_2(const FinGroupPtr& src, const FinGroupPtr& target);

/// A homomorphism from a finite group into a (quotient) compact group. Images
/// are tracked as indices into the closure of the generator images.
class Hom {
 public:
  const FinGroupPtr& source() const { return src_; }
  const GroupSpecPtr& target() const { return target_; }
  const FinGroupPtr& image_group() const { return image_; }
  std::size_t image_index(std::size_t x) const { return image_idx_.at(x); }
  const AmbientElement& image_rep(std::size_t x) const { return image_->ambient(image_idx_.at(x)); }
  QuotElement image(std::size_t x) const { return {target_, image_rep(x)}; }
  std::vector<std::size_t> kernel() const;
  std::size_t image_order() const { return image_->order(); }

 private:
  friend Hom hom_from_gens(const FinGroupPtr&, const std::vector<std::size_t>&,
                           const std::vector<AmbientElement>&, const GroupSpecPtr&, std::size_t);
  FinGroupPtr src_;
  GroupSpecPtr target_;
  FinGroupPtr image_;
  std::vector<std::size_t> image_idx_;
};

/// Extends generator images multiplicatively and verifies f(xy) = f(x) f(y)
/// on all pairs. Throws NotAHomomorphism when no extension exists.
Hom hom_from_gens(const FinGroupPtr& src, const std::vector<std::size_t>& gen_indices,
                  const std::vector<AmbientElement>& images, const GroupSpecPtr& target,
                  std::size_t cap = 0);

/// Trivial central subgroup over the given factors.
GroupSpecPtr trivial_quotient(const std::vector<FactorKind>& factors);

}  // namespace acceptcert
