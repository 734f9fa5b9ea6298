#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "acceptcert/cycnum.hpp"

namespace acceptcert {

/// Dense row-major matrix of cyclotomic numbers.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols);
  ExactMatrix(std::size_t rows, std::size_t cols, std::vector<CycNum> entries);
  ExactMatrix(std::initializer_list<std::initializer_list<CycNum>> rows);

  static ExactMatrix identity(std::size_t n);
  static ExactMatrix zero(std::size_t rows, std::size_t cols) { return ExactMatrix(rows, cols); }
  static ExactMatrix diagonal(const std::vector<CycNum>& diag);
  static ExactMatrix scalar(std::size_t n, const CycNum& s);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  const CycNum& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  CycNum& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const std::vector<CycNum>& entries() const { return data_; }

  ExactMatrix transpose() const;
  ExactMatrix conj() const;
  ExactMatrix adjoint() const { return conj().transpose(); }
  CycNum trace() const;
  CycNum det() const;
  ExactMatrix inverse() const;
  std::size_t rank() const;
  bool is_diagonal() const;
  bool is_zero() const;

  ExactMatrix operator-() const;
  ExactMatrix& operator+=(const ExactMatrix& o);
  ExactMatrix& operator-=(const ExactMatrix& o);
  friend ExactMatrix operator+(ExactMatrix a, const ExactMatrix& b) { return a += b; }
  friend ExactMatrix operator-(ExactMatrix a, const ExactMatrix& b) { return a -= b; }
  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator*(const CycNum& s, const ExactMatrix& m);

  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) = default;
  friend std::strong_ordering operator<=>(const ExactMatrix& a, const ExactMatrix& b);

  std::size_t hash() const;
  std::string to_string() const;

  nlohmann::ordered_json to_json() const;
  static ExactMatrix from_json(const nlohmann::ordered_json& j);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<CycNum> data_;
};

using Vec = std::vector<CycNum>;

/// Reduced row echelon form of the given rows; zero rows are dropped and
/// pivots are scaled to 1, so the result is canonical for the row space.
std::vector<Vec> rref(std::vector<Vec> rows, std::size_t width);

/// A linear subspace of K^ambient, stored as a canonical RREF basis.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient) : ambient_(ambient) {}

  static Subspace span(std::size_t ambient, std::vector<Vec> vectors);
  static Subspace full(std::size_t ambient);
  /// Span of square matrices viewed as flattened row-major vectors.
  static Subspace span_matrices(const std::vector<ExactMatrix>& mats);

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vec>& basis() const { return basis_; }
  /// Basis vector i reshaped into an rows x cols matrix.
  ExactMatrix basis_matrix(std::size_t i, std::size_t rows, std::size_t cols) const;
  std::vector<ExactMatrix> basis_matrices(std::size_t n) const;
  bool contains(const Vec& v) const;

  friend bool operator==(const Subspace& a, const Subspace& b) = default;

 private:
  std::size_t ambient_ = 0;
  std::vector<Vec> basis_;
};

/// Monic characteristic polynomial det(xI - M), constant term first,
/// computed by the Faddeev-LeVerrier trace recursion.
std::vector<CycNum> char_poly(const ExactMatrix& m);

Subspace nullspace(const ExactMatrix& m);
Subspace subspace_intersect(const Subspace& a, const Subspace& b);
Subspace subspace_sum(const Subspace& a, const Subspace& b);

/// {X : XM = MX for every M in mats}, as flattened N x N matrices.
Subspace commutant(std::span<const ExactMatrix> mats);

Vec mat_vec(const ExactMatrix& m, const Vec& v);
Vec flatten(const ExactMatrix& m);

}  // namespace acceptcert

template <>
struct std::hash<acceptcert::ExactMatrix> {
  std::size_t operator()(const acceptcert::ExactMatrix& m) const { return m.hash(); }
};
