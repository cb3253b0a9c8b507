#include <mfour/error.hpp>
#include <mfour/matrix.hpp>

#include <limits>
#include <optional>

namespace mfour {

namespace {

struct Pivot {
  std::size_t row;
  std::size_t col;
};

std::optional<Pivot> min_degree_entry(const PolyMatrix& a, std::size_t t) {
  std::optional<Pivot> best;
  int best_deg = std::numeric_limits<int>::max();
  for (std::size_t i = t; i < a.rows(); ++i) {
    for (std::size_t j = t; j < a.cols(); ++j) {
      const Poly& e = a(i, j);
      if (!e.is_zero() && e.degree() < best_deg) {
        best_deg = e.degree();
        best = Pivot{i, j};
        if (best_deg == 0) return best;
      }
    }
  }
  return best;
}

}  // namespace

namespace {

SmithForm reduce_to_diagonal(const PolyMatrix& m, bool chain) {
  SmithForm out;
  PolyMatrix a = m;
  PolyMatrix u = PolyMatrix::identity(m.rows());
  PolyMatrix v = PolyMatrix::identity(m.cols());
  const std::size_t limit = std::min(m.rows(), m.cols());
  std::size_t t = 0;
  for (; t < limit; ++t) {
    auto piv = min_degree_entry(a, t);
    if (!piv) break;
    while (true) {
      a.swap_rows(t, piv->row);
      u.swap_rows(t, piv->row);
      a.swap_cols(t, piv->col);
      v.swap_cols(t, piv->col);
      bool clean = true;
      for (std::size_t i = t + 1; i < a.rows(); ++i) {
        if (a(i, t).is_zero()) continue;
        auto [q, r] = divmod(a(i, t), a(t, t));
        a.add_row(i, t, -q);
        u.add_row(i, t, -q);
        if (!r.is_zero()) clean = false;
      }
      for (std::size_t j = t + 1; j < a.cols(); ++j) {
        if (a(t, j).is_zero()) continue;
        auto [q, r] = divmod(a(t, j), a(t, t));
        a.add_col(j, t, -q);
        v.add_col(j, t, -q);
        if (!r.is_zero()) clean = false;
      }
      if (clean && !chain) break;
      if (clean) {
        // Divisibility chain: fold an offending row into row t.
        std::optional<std::size_t> bad;
        for (std::size_t i = t + 1; i < a.rows() && !bad; ++i)
          for (std::size_t j = t + 1; j < a.cols(); ++j)
            if (!a(i, j).is_zero() && !divides(a(t, t), a(i, j))) {
              bad = i;
              break;
            }
        if (!bad) break;
        a.add_row(t, *bad, Poly(1));
        u.add_row(t, *bad, Poly(1));
      }
      piv = min_degree_entry(a, t);
    }
    Rational lc = a(t, t).lead();
    if (lc != 1) {
      Poly inv(1 / lc);
      for (std::size_t j = 0; j < a.cols(); ++j) a(t, j) *= inv;
      for (std::size_t j = 0; j < u.cols(); ++j) u(t, j) *= inv;
    }
  }
  out.rank = t;
  out.U = std::move(u);
  out.D = std::move(a);
  out.V = std::move(v);
  return out;
}

}  // namespace

SmithForm smith_normal_form(const PolyMatrix& m) { return reduce_to_diagonal(m, true); }

SmithForm diagonal_form(const PolyMatrix& m) { return reduce_to_diagonal(m, false); }

Poly determinant(const PolyMatrix& m) {
  if (m.rows() != m.cols()) fail(ErrorCode::invalid_argument, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return Poly(1);
  if (n == 1) return m(0, 0);
  Poly det;
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j).is_zero()) continue;
    PolyMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t k = 0, c = 0; k < n; ++k)
        if (k != j) minor(i - 1, c++) = m(i, k);
    Poly term = m(0, j) * determinant(minor);
    det = (j % 2 == 0) ? det + term : det - term;
  }
  return det;
}

bool in_row_space(const SmithForm& snf, const std::vector<Poly>& v) {
  // rowspace(M) * V = rowspace(U M V) = rowspace(D).
  const std::size_t cols = snf.V.rows();
  if (v.size() != cols) fail(ErrorCode::mismatch, "row vector length does not match presentation");
  for (std::size_t j = 0; j < cols; ++j) {
    Poly w;
    for (std::size_t k = 0; k < cols; ++k) {
      if (!v[k].is_zero() && !snf.V(k, j).is_zero()) w += v[k] * snf.V(k, j);
    }
    if (j < snf.rank) {
      if (!divides(snf.D(j, j), w)) return false;
    } else if (!w.is_zero()) {
      return false;
    }
  }
  return true;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RationalMatrix& a) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(r, p);
    Rational inv = 1 / a(r, c);
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      Rational f = -a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j)
        if (a(r, j) != 0) a(i, j) += f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::vector<std::vector<Rational>> nullspace(const RationalMatrix& a) {
  RationalMatrix m = a;
  auto pivots = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> x(m.cols());
    x[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = -m(r, f);
    basis.push_back(std::move(x));
  }
  return basis;
}

std::size_t rank(const RationalMatrix& a) {
  RationalMatrix m = a;
  return rref(m).size();
}

}  // namespace mfour
