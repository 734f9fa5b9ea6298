#include "acceptcert/exact_matrix.hpp"

#include <sstream>
#include <utility>

namespace acceptcert {

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols, std::vector<CycNum> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) throw ExactAlgebraError("matrix entry count mismatch");
}

ExactMatrix::ExactMatrix(std::initializer_list<std::initializer_list<CycNum>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  for (const auto& r : rows) {
    if (r.size() != cols_) throw ExactAlgebraError("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

ExactMatrix ExactMatrix::identity(std::size_t n) {
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = CycNum(1);
  return m;
}

ExactMatrix ExactMatrix::diagonal(const std::vector<CycNum>& diag) {
  ExactMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ExactMatrix ExactMatrix::scalar(std::size_t n, const CycNum& s) {
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = s;
  return m;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

ExactMatrix ExactMatrix::conj() const {
  ExactMatrix out = *this;
  for (auto& x : out.data_)
    if (!x.is_rational()) x = x.conj();
  return out;
}

CycNum ExactMatrix::trace() const {
  if (!is_square()) throw ExactAlgebraError("trace of non-square matrix");
  CycNum t;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

CycNum ExactMatrix::det() const {
  if (!is_square()) throw ExactAlgebraError("determinant of non-square matrix");
  const std::size_t n = rows_;
  std::vector<Vec> a(n);
  for (std::size_t r = 0; r < n; ++r) a[r].assign(data_.begin() + r * n, data_.begin() + (r + 1) * n);
  CycNum result(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col].is_zero()) ++piv;
    if (piv == n) return CycNum();
    if (piv != col) {
      std::swap(a[piv], a[col]);
      result = -result;
    }
    result *= a[col][col];
    const CycNum inv = a[col][col].inverse();
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col].is_zero()) continue;
      const CycNum f = a[r][col] * inv;
      for (std::size_t k = col; k < n; ++k)
        if (!a[col][k].is_zero()) a[r][k] -= f * a[col][k];
    }
  }
  return result;
}

ExactMatrix ExactMatrix::inverse() const {
  if (!is_square()) throw ExactAlgebraError("inverse of non-square matrix");
  const std::size_t n = rows_;
  std::vector<Vec> a(n, Vec(2 * n));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) a[r][c] = (*this)(r, c);
    a[r][n + r] = CycNum(1);
  }
  auto red = rref(std::move(a), 2 * n);
  if (red.size() < n) throw ExactAlgebraError("matrix is singular");
  ExactMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!red[r][r].is_one()) throw ExactAlgebraError("matrix is singular");
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = red[r][n + c];
  }
  return inv;
}

std::size_t ExactMatrix::rank() const {
  std::vector<Vec> rows(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    rows[r].assign(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
  return rref(std::move(rows), cols_).size();
}

bool ExactMatrix::is_diagonal() const {
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (r != c && !(*this)(r, c).is_zero()) return false;
  return true;
}

bool ExactMatrix::is_zero() const {
  for (const auto& x : data_)
    if (!x.is_zero()) return false;
  return true;
}

ExactMatrix ExactMatrix::operator-() const {
  ExactMatrix out = *this;
  for (auto& x : out.data_) x = -x;
  return out;
}

ExactMatrix& ExactMatrix::operator+=(const ExactMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ExactAlgebraError("matrix shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

ExactMatrix& ExactMatrix::operator-=(const ExactMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ExactAlgebraError("matrix shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.cols_ != b.rows_) throw ExactAlgebraError("matrix shape mismatch in product");
  ExactMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const CycNum& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const CycNum& y = b(k, j);
        if (!y.is_zero()) out(i, j) += x * y;
      }
    }
  }
  return out;
}

ExactMatrix operator*(const CycNum& s, const ExactMatrix& m) {
  ExactMatrix out = m;
  for (auto& x : out.data_) x = s * x;
  return out;
}

std::strong_ordering operator<=>(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows_ != b.rows_) return a.rows_ <=> b.rows_;
  if (a.cols_ != b.cols_) return a.cols_ <=> b.cols_;
  for (std::size_t k = 0; k < a.data_.size(); ++k) {
    auto c = a.data_[k] <=> b.data_[k];
    if (c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::size_t ExactMatrix::hash() const {
  std::size_t h = rows_ * 131 + cols_;
  for (const auto& x : data_) h ^= x.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::string ExactMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) os << "; ";
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) os << ", ";
      os << (*this)(r, c);
    }
  }
  os << "]";
  return os.str();
}

nlohmann::ordered_json ExactMatrix::to_json() const {
  auto rows = nlohmann::ordered_json::array();
  for (std::size_t r = 0; r < rows_; ++r) {
    auto row = nlohmann::ordered_json::array();
    for (std::size_t c = 0; c < cols_; ++c) row.push_back((*this)(r, c).to_json());
    rows.push_back(std::move(row));
  }
  return rows;
}

ExactMatrix ExactMatrix::from_json(const nlohmann::ordered_json& j) {
  if (!j.is_array() || j.empty()) throw ExactAlgebraError("matrix JSON must be a non-empty array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) throw ExactAlgebraError("matrix JSON rows must be non-empty arrays");
  std::vector<CycNum> entries;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != cols) throw ExactAlgebraError("ragged matrix JSON");
    for (const auto& x : row) entries.push_back(CycNum::from_json(x));
  }
  return ExactMatrix(rows, cols, std::move(entries));
}

std::vector<Vec> rref(std::vector<Vec> rows, std::size_t width) {
  std::size_t lead_row = 0;
  for (std::size_t col = 0; col < width && lead_row < rows.size(); ++col) {
    std::size_t piv = lead_row;
    while (piv < rows.size() && rows[piv][col].is_zero()) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[lead_row]);
    Vec& p = rows[lead_row];
    if (!p[col].is_one()) {
      const CycNum inv = p[col].inverse();
      for (std::size_t k = col; k < width; ++k)
        if (!p[k].is_zero()) p[k] = p[k] * inv;
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == lead_row || rows[r][col].is_zero()) continue;
      const CycNum f = rows[r][col];
      for (std::size_t k = col; k < width; ++k)
        if (!p[k].is_zero()) rows[r][k] -= f * p[k];
    }
    ++lead_row;
  }
  rows.resize(lead_row);
  return rows;
}

Subspace Subspace::span(std::size_t ambient, std::vector<Vec> vectors) {
  for (const auto& v : vectors)
    if (v.size() != ambient) throw ExactAlgebraError("vector length does not match ambient dimension");
  Subspace s(ambient);
  s.basis_ = rref(std::move(vectors), ambient);
  return s;
}

Subspace Subspace::full(std::size_t ambient) {
  std::vector<Vec> e(ambient, Vec(ambient));
  for (std::size_t i = 0; i < ambient; ++i) e[i][i] = CycNum(1);
  Subspace s(ambient);
  s.basis_ = std::move(e);
  return s;
}

Subspace Subspace::span_matrices(const std::vector<ExactMatrix>& mats) {
  if (mats.empty()) throw ExactAlgebraError("span of an empty matrix list needs a size");
  const std::size_t amb = mats[0].rows() * mats[0].cols();
  std::vector<Vec> vs;
  for (const auto& m : mats) vs.push_back(flatten(m));
  return span(amb, std::move(vs));
}

ExactMatrix Subspace::basis_matrix(std::size_t i, std::size_t rows, std::size_t cols) const {
  if (rows * cols != ambient_) throw ExactAlgebraError("reshape does not match ambient dimension");
  return ExactMatrix(rows, cols, basis_.at(i));
}

std::vector<ExactMatrix> Subspace::basis_matrices(std::size_t n) const {
  std::vector<ExactMatrix> out;
  for (std::size_t i = 0; i < basis_.size(); ++i) out.push_back(basis_matrix(i, n, n));
  return out;
}

bool Subspace::contains(const Vec& v) const {
  if (v.size() != ambient_) return false;
  auto rows = basis_;
  rows.push_back(v);
  return rref(std::move(rows), ambient_).size() == basis_.size();
}

std::vector<CycNum> char_poly(const ExactMatrix& a) {
  if (!a.is_square()) throw ExactAlgebraError("characteristic polynomial of non-square matrix");
  const std::size_t n = a.rows();
  std::vector<CycNum> c(n + 1);
  c[n] = CycNum(1);
  ExactMatrix m = ExactMatrix::zero(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m;
    for (std::size_t i = 0; i < n; ++i) m(i, i) += c[n - k + 1];
    const CycNum t = (a * m).trace();
    c[n - k] = -t * CycNum(Rational(1, static_cast<long>(k)));
  }
  return c;
}

Subspace nullspace(const ExactMatrix& m) {
  const std::size_t w = m.cols();
  std::vector<Vec> rows(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    rows[r].assign(m.entries().begin() + r * w, m.entries().begin() + (r + 1) * w);
  const auto red = rref(std::move(rows), w);
  std::vector<std::size_t> pivot_col;
  std::vector<bool> is_pivot(w, false);
  for (const auto& row : red) {
    std::size_t c = 0;
    while (row[c].is_zero()) ++c;
    pivot_col.push_back(c);
    is_pivot[c] = true;
  }
  std::vector<Vec> basis;
  for (std::size_t f = 0; f < w; ++f) {
    if (is_pivot[f]) continue;
    Vec v(w);
    v[f] = CycNum(1);
    for (std::size_t i = 0; i < red.size(); ++i) v[pivot_col[i]] = -red[i][f];
    basis.push_back(std::move(v));
  }
  return Subspace::span(w, std::move(basis));
}

namespace {

// {y : <b, y> = 0 for every basis vector b}, with the bilinear pairing.
Subspace annihilator(const Subspace& s) {
  if (s.dim() == 0) return Subspace::full(s.ambient());
  std::vector<CycNum> entries;
  for (const auto& b : s.basis()) entries.insert(entries.end(), b.begin(), b.end());
  return nullspace(ExactMatrix(s.dim(), s.ambient(), std::move(entries)));
}

}  // namespace

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw ExactAlgebraError("subspace dimension mismatch");
  auto rows = a.basis();
  rows.insert(rows.end(), b.basis().begin(), b.basis().end());
  return Subspace::span(a.ambient(), std::move(rows));
}

Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw ExactAlgebraError("subspace dimension mismatch");
  return annihilator(subspace_sum(annihilator(a), annihilator(b)));
}

Subspace commutant(std::span<const ExactMatrix> mats) {
  if (mats.empty()) throw ExactAlgebraError("commutant of an empty list");
  const std::size_t n = mats[0].rows();
  for (const auto& m : mats)
    if (m.rows() != n || m.cols() != n) throw ExactAlgebraError("commutant: size mismatch");
  const std::size_t unknowns = n * n;
  std::vector<Vec> eqs;
  for (const auto& m : mats) {
    // (XM - MX)_{ik} = sum_j x_{ij} M_{jk} - sum_j M_{ij} x_{jk}
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        Vec row(unknowns);
        for (std::size_t j = 0; j < n; ++j) {
          row[i * n + j] += m(j, k);
          row[j * n + k] -= m(i, j);
        }
        eqs.push_back(std::move(row));
      }
    }
  }
  auto red = rref(std::move(eqs), unknowns);
  std::vector<CycNum> entries;
  for (const auto& r : red) entries.insert(entries.end(), r.begin(), r.end());
  if (red.empty()) return Subspace::full(unknowns);
  return nullspace(ExactMatrix(red.size(), unknowns, std::move(entries)));
}

Vec mat_vec(const ExactMatrix& m, const Vec& v) {
  if (m.cols() != v.size()) throw ExactAlgebraError("matrix-vector shape mismatch");
  Vec out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!m(r, c).is_zero() && !v[c].is_zero()) out[r] += m(r, c) * v[c];
  return out;
}

Vec flatten(const ExactMatrix& m) { return m.entries(); }

}  // namespace acceptcert
