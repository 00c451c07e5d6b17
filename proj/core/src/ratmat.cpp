#include "twistkl/ratmat.hpp"

#include <sstream>
#include <utility>

namespace twistkl {

QMatrix QMatrix::identity(std::size_t n) { return scalar(n, 1); }

QMatrix QMatrix::scalar(std::size_t n, const mpq_class& c) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = c;
  return m;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

mpq_class QMatrix::trace() const {
  mpq_class t = 0;
  for (std::size_t i = 0; i < rows_ && i < cols_; ++i) t += (*this)(i, i);
  return t;
}

bool QMatrix::is_zero() const {
  for (const auto& x : a_)
    if (x != 0) return false;
  return true;
}

std::optional<mpq_class> QMatrix::as_scalar() const {
  if (rows_ != cols_) return std::nullopt;
  if (rows_ == 0) return mpq_class(0);
  const mpq_class c = (*this)(0, 0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != (i == j ? c : mpq_class(0))) return std::nullopt;
  return c;
}

namespace {

// In-place reduced row echelon form on the first `cols` columns; row operations
// act on the full rows so augmented columns follow along. Returns pivot columns.
std::vector<std::size_t> rref(std::vector<QVector>& rows, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    const mpq_class inv = 1 / rows[r][c];
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const mpq_class f = rows[i][c];
      for (std::size_t j = c; j < rows[i].size(); ++j) rows[i][j] -= f * rows[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::vector<QVector> to_rows(const QMatrix& m) {
  std::vector<QVector> rows(m.rows(), QVector(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
  return rows;
}

}  // namespace

std::size_t QMatrix::rank() const {
  auto rows = to_rows(*this);
  return rref(rows, cols_).size();
}

mpq_class QMatrix::determinant() const {
  if (rows_ != cols_) return 0;
  auto rows = to_rows(*this);
  mpq_class det = 1;
  for (std::size_t c = 0; c < cols_; ++c) {
    std::size_t p = c;
    while (p < rows_ && rows[p][c] == 0) ++p;
    if (p == rows_) return 0;
    if (p != c) {
      std::swap(rows[p], rows[c]);
      det = -det;
    }
    det *= rows[c][c];
    for (std::size_t i = c + 1; i < rows_; ++i) {
      if (rows[i][c] == 0) continue;
      const mpq_class f = rows[i][c] / rows[c][c];
      for (std::size_t j = c; j < cols_; ++j) rows[i][j] -= f * rows[c][j];
    }
  }
  return det;
}

std::optional<QMatrix> QMatrix::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  const std::size_t n = rows_;
  std::vector<QVector> rows(n, QVector(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = (*this)(i, j);
    rows[i][n + i] = 1;
  }
  const auto piv = rref(rows, n);
  if (piv.size() != n) return std::nullopt;
  QMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = rows[i][n + j];
  return inv;
}

std::vector<QVector> QMatrix::nullspace() const {
  auto rows = to_rows(*this);
  const auto piv = rref(rows, cols_);
  std::vector<bool> is_pivot(cols_, false);
  for (auto p : piv) is_pivot[p] = true;
  std::vector<QVector> basis;
  for (std::size_t f = 0; f < cols_; ++f) {
    if (is_pivot[f]) continue;
    QVector x(cols_);
    x[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = -rows[r][f];
    basis.push_back(std::move(x));
  }
  return basis;
}

std::optional<QVector> QMatrix::solve(const QVector& b) const {
  std::vector<QVector> rows(rows_, QVector(cols_ + 1));
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) rows[i][j] = (*this)(i, j);
    rows[i][cols_] = b[i];
  }
  const auto piv = rref(rows, cols_ + 1);
  if (!piv.empty() && piv.back() == cols_) return std::nullopt;  // inconsistent
  if (piv.size() != cols_) return std::nullopt;                   // not unique
  QVector x(cols_);
  for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = rows[r][cols_];
  return x;
}

QVector QMatrix::apply(const QVector& x) const {
  QVector y(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != 0 && x[j] != 0) y[i] += (*this)(i, j) * x[j];
  return y;
}

QMatrix& QMatrix::operator+=(const QMatrix& o) {
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
  return *this;
}

QMatrix& QMatrix::operator-=(const QMatrix& o) {
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
  return *this;
}

QMatrix& QMatrix::operator*=(const mpq_class& c) {
  for (auto& x : a_) x *= c;
  return *this;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  QMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const mpq_class& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (b(k, j) != 0) c(i, j) += x * b(k, j);
    }
  return c;
}

std::string QMatrix::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j).get_str();
  }
  os << "]";
  return os.str();
}

bool EchelonBasis::insert(QVector v) {
  const std::size_t idx = original_.size();
  QVector combo(idx + 1);
  combo[idx] = 1;
  QVector orig = v;
  for (std::size_t k = 0; k < reduced_.size(); ++k) {
    const mpq_class c = v[pivot_[k]];
    if (c == 0) continue;
    for (std::size_t j = pivot_[k]; j < dim_; ++j)
      if (reduced_[k][j] != 0) v[j] -= c * reduced_[k][j];
    for (std::size_t j = 0; j < combo_[k].size(); ++j) combo[j] -= c * combo_[k][j];
  }
  std::size_t p = 0;
  while (p < dim_ && v[p] == 0) ++p;
  if (p == dim_) return false;
  const mpq_class inv = 1 / v[p];
  for (std::size_t j = p; j < dim_; ++j) v[j] *= inv;
  for (auto& x : combo) x *= inv;
  reduced_.push_back(std::move(v));
  pivot_.push_back(p);
  combo_.push_back(std::move(combo));
  original_.push_back(std::move(orig));
  return true;
}

std::optional<QVector> EchelonBasis::coordinates(const QVector& target) const {
  QVector v = target;
  QVector coords(original_.size());
  for (std::size_t k = 0; k < reduced_.size(); ++k) {
    const mpq_class c = v[pivot_[k]];
    if (c == 0) continue;
    for (std::size_t j = pivot_[k]; j < dim_; ++j)
      if (reduced_[k][j] != 0) v[j] -= c * reduced_[k][j];
    for (std::size_t j = 0; j < combo_[k].size(); ++j) coords[j] += c * combo_[k][j];
  }
  for (const auto& x : v)
    if (x != 0) return std::nullopt;
  return coords;
}

}  // namespace twistkl
