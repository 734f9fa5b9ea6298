#pragma once

#include <array>
#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "acceptcert/exact_matrix.hpp"

namespace acceptcert {

class GroupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class FactorType { SU, Sp1, SO3 };

/// One simple factor of the ambient product: SU(n) with n >= 2, Sp(1) or SO(3).
struct FactorKind {
  FactorType type = FactorType::Sp1;
  int n = 2;  // matrix size of the defining representation

  static FactorKind su(int n);
  static FactorKind sp1() { return {FactorType::Sp1, 2}; }
  static FactorKind so3() { return {FactorType::SO3, 3}; }
  /// Accepts "SU(n)", "Sp(1)", "SO(3)"; anything else (U(n), Sp(2), ...) is
  /// rejected as unsupported.
  static FactorKind parse(const std::string& s);

  std::string name() const;
  friend bool operator==(const FactorKind&, const FactorKind&) = default;
};

/// Quaternion a + b i + c j + d k with cyclotomic components.
class Quat {
 public:
  Quat() : a_(1) {}
  Quat(CycNum a, CycNum b, CycNum c, CycNum d)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {}

  static Quat one() { return {1, 0, 0, 0}; }
  static Quat i() { return {0, 1, 0, 0}; }
  static Quat j() { return {0, 0, 1, 0}; }
  static Quat k() { return {0, 0, 0, 1}; }
  /// (1 + i) / sqrt(2).
  static Quat eta();

  const CycNum& a() const { return a_; }
  const CycNum& b() const { return b_; }
  const CycNum& c() const { return c_; }
  const CycNum& d() const { return d_; }
  const CycNum& real() const { return a_; }
  std::array<CycNum, 3> imag() const { return {b_, c_, d_}; }

  CycNum norm2() const { return a_ * a_ + b_ * b_ + c_ * c_ + d_ * d_; }
  bool components_real() const;
  bool is_unit() const { return components_real() && norm2().is_one(); }
  Quat conj() const { return {a_, -b_, -c_, -d_}; }
  Quat operator-() const { return {-a_, -b_, -c_, -d_}; }
  friend Quat operator*(const Quat& p, const Quat& q);

  friend bool operator==(const Quat&, const Quat&) = default;
  friend std::strong_ordering operator<=>(const Quat& p, const Quat& q);
  std::size_t hash() const;
  std::string to_string() const;

  nlohmann::ordered_json to_json() const;
  static Quat from_json(const nlohmann::ordered_json& j);

 private:
  CycNum a_, b_, c_, d_;
};

using FactorPayload = std::variant<ExactMatrix, Quat>;

/// A point of a product of SU(n) / Sp(1) / SO(3) factors. Constructors
/// validate unitarity, orthogonality, determinant and unit norm exactly.
class AmbientElement {
 public:
  AmbientElement() = default;
  AmbientElement(std::vector<FactorKind> kinds, std::vector<FactorPayload> parts);

  static AmbientElement identity(const std::vector<FactorKind>& kinds);
  static AmbientElement sp1_tuple(const std::vector<Quat>& qs);
  static AmbientElement su(const ExactMatrix& m);
  static AmbientElement so3(const ExactMatrix& m);

  const std::vector<FactorKind>& kinds() const { return kinds_; }
  std::size_t size() const { return parts_.size(); }
  const FactorPayload& part(std::size_t i) const { return parts_.at(i); }
  const ExactMatrix& matrix(std::size_t i) const;
  const Quat& quat(std::size_t i) const;

  AmbientElement inverse() const;
  bool is_identity() const;
  /// Every component lies in the centre of its factor.
  bool is_central() const;

  friend AmbientElement operator*(const AmbientElement& x, const AmbientElement& y);
  friend bool operator==(const AmbientElement& x, const AmbientElement& y) {
    return x.parts_ == y.parts_;
  }
  friend std::strong_ordering operator<=>(const AmbientElement& x, const AmbientElement& y);

  std::size_t hash() const;
  std::string to_string() const;

  nlohmann::ordered_json to_json() const;
  static AmbientElement from_json(const nlohmann::ordered_json& j);

 private:
  static AmbientElement unchecked(std::vector<FactorKind> kinds, std::vector<FactorPayload> parts);
  void validate() const;

  std::vector<FactorKind> kinds_;
  std::vector<FactorPayload> parts_;
};

/// G = (G_1 x ... x G_s) / Z for a finite central subgroup Z given by
/// generators. Z is enumerated on construction and kept sorted.
class GroupSpec {
 public:
  const std::vector<FactorKind>& factors() const { return factors_; }
  const std::vector<AmbientElement>& central_gens() const { return central_gens_; }
  const std::vector<AmbientElement>& z_elements() const { return z_; }
  std::size_t z_order() const { return z_.size(); }
  std::optional<std::size_t> z_index(const AmbientElement& z) const;
  std::string name() const;

  nlohmann::ordered_json to_json() const;

 private:
  friend std::shared_ptr<const GroupSpec> make_group(std::vector<FactorKind>,
                                                     std::vector<AmbientElement>, std::size_t);
  std::vector<FactorKind> factors_;
  std::vector<AmbientElement> central_gens_;
  std::vector<AmbientElement> z_;
};

using GroupSpecPtr = std::shared_ptr<const GroupSpec>;

GroupSpecPtr make_group(std::vector<FactorKind> factors, std::vector<AmbientElement> central_gens,
                        std::size_t cap = 4096);

/// An element of Ghat / Z carried by its canonical representative: the
/// minimum of the Z-coset under the total order on AmbientElement.
struct QuotElement {
  GroupSpecPtr group;
  AmbientElement rep;

  QuotElement inverse() const;
  friend QuotElement operator*(const QuotElement& x, const QuotElement& y);
  friend bool operator==(const QuotElement& x, const QuotElement& y) { return x.rep == y.rep; }
  std::size_t hash() const { return rep.hash(); }
};

QuotElement quot(const GroupSpecPtr& g, const AmbientElement& x);
/// Canonical representative of the Z-coset of x.
AmbientElement canonical_rep(const GroupSpec& g, const AmbientElement& x);

/// Matrix of v -> q v q^-1 on the ordered basis (i, j, k).
ExactMatrix rotation_matrix(const Quat& q);
/// Same as rotation_matrix, wrapped as an SO(3) element.
AmbientElement adjoint_to_so3(const Quat& q);
/// Re(q) + R Im(q): conjugation of q by any unit quaternion covering R.
Quat rotate_quat(const ExactMatrix& r, const Quat& q);

/// Common constructions.
ExactMatrix su_diag_powers_of_i(const std::vector<int>& exps);

}  // namespace acceptcert

template <>
struct std::hash<acceptcert::AmbientElement> {
  std::size_t operator()(const acceptcert::AmbientElement& x) const { return x.hash(); }
};
