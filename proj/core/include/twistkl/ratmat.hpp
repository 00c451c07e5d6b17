#pragma once

// Dense matrices over Q with exact Gaussian elimination.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace twistkl {

using QVector = std::vector<mpq_class>;

class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  static QMatrix identity(std::size_t n);
  static QMatrix scalar(std::size_t n, const mpq_class& c);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  mpq_class& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const mpq_class& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  QMatrix transpose() const;
  mpq_class trace() const;
  bool is_zero() const;
  /// Returns c if this is c times the identity.
  std::optional<mpq_class> as_scalar() const;

  std::size_t rank() const;
  mpq_class determinant() const;
  std::optional<QMatrix> inverse() const;
  /// Basis of {x : A x = 0}, one vector per free column.
  std::vector<QVector> nullspace() const;
  /// Solves A x = b when the solution exists and is unique.
  std::optional<QVector> solve(const QVector& b) const;
  QVector apply(const QVector& x) const;

  QMatrix& operator+=(const QMatrix& o);
  QMatrix& operator-=(const QMatrix& o);
  QMatrix& operator*=(const mpq_class& c);
  friend QMatrix operator+(QMatrix a, const QMatrix& b) { return a += b; }
  friend QMatrix operator-(QMatrix a, const QMatrix& b) { return a -= b; }
  friend QMatrix operator*(QMatrix a, const mpq_class& c) { return a *= c; }
  friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
  friend bool operator==(const QMatrix& a, const QMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }
  friend bool operator!=(const QMatrix& a, const QMatrix& b) { return !(a == b); }

  std::string str() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<mpq_class> a_;
};

/// Incremental row-echelon basis of a subspace of Q^n. `insert` reduces a vector
/// against the current basis and keeps it when independent.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t dim) : dim_(dim) {}
  /// Returns true if v was independent of the basis (and was added).
  bool insert(QVector v);
  /// Coordinates of v in terms of the inserted vectors, in insertion order, or
  /// nullopt when v lies outside the span.
  std::optional<QVector> coordinates(const QVector& v) const;
  std::size_t size() const { return original_.size(); }
  const std::vector<QVector>& vectors() const { return original_; }

 private:
  std::size_t dim_;
  std::vector<QVector> reduced_;    // echelon rows
  std::vector<std::size_t> pivot_;  // pivot column per echelon row
  std::vector<QVector> combo_;      // reduced_[k] = sum combo_[k][j] original_[j]
  std::vector<QVector> original_;
};

}  // namespace twistkl
