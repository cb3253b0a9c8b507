#pragma once

#include <mfour/poly.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace mfour {

/// Row-major dense matrix. Used with Poly (presentations over k[s]) and
/// Rational (coefficient linear algebra).
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    for (const auto& row : init) {
      for (const auto& x : row) data_.push_back(x);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[dst] += f * row[src]
  void add_row(std::size_t dst, std::size_t src, const T& f) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += f * (*this)(src, j);
  }
  /// col[dst] += col[src] * f
  void add_col(std::size_t dst, std::size_t src, const T& f) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += (*this)(i, src) * f;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k)
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
    return out;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using PolyMatrix = Matrix<Poly>;
using RationalMatrix = Matrix<Rational>;

struct SmithForm {
  PolyMatrix U;  // rows x rows, invertible over k[s]
  PolyMatrix D;  // rows x cols, diagonal, monic, d_i | d_{i+1}
  PolyMatrix V;  // cols x cols, invertible over k[s]
  std::size_t rank = 0;

  Poly diagonal(std::size_t i) const { return i < D.rows() && i < D.cols() ? D(i, i) : Poly(); }
};

/// U * M * V = D.
SmithForm smith_normal_form(const PolyMatrix& m);
/// Same, without the divisibility chain: D is diagonal with monic entries.
/// Enough for ranks, local structure and row-space membership, and much
/// cheaper when the diagonal entries are pairwise coprime.
SmithForm diagonal_form(const PolyMatrix& m);

/// Determinant by fraction-free expansion (small matrices only).
Poly determinant(const PolyMatrix& m);

/// True iff the row vector v lies in the k[s]-row space of the matrix whose
/// Smith form is given.
bool in_row_space(const SmithForm& snf, const std::vector<Poly>& v);

/// Basis of {x : A x = 0} over Q.
std::vector<std::vector<Rational>> nullspace(const RationalMatrix& a);
std::size_t rank(const RationalMatrix& a);

}  // namespace mfour
