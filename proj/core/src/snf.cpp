#include "grope/snf.hpp"

#include <utility>

#include "grope/errors.hpp"

namespace grope {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row(std::size_t dst, std::size_t src, const BigInt& factor) {
  if (factor == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) {
    const BigInt& s = (*this)(src, j);
    if (s != 0) (*this)(dst, j) += factor * s;
  }
}

void IntMatrix::add_col(std::size_t dst, std::size_t src, const BigInt& factor) {
  if (factor == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) {
    const BigInt& s = (*this)(i, src);
    if (s != 0) (*this)(i, dst) += factor * s;
  }
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw DomainError("matrix shapes do not match");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const BigInt& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (b(k, j) != 0) c(i, j) += x * b(k, j);
    }
  return c;
}

IntMatrix transpose(const IntMatrix& a) {
  IntMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

namespace {

int cmpabs(const BigInt& a, const BigInt& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

// Fraction-free elimination; returns the rank and the sign of row swaps, and
// leaves the last pivot (the determinant for full-rank square input) in m.
std::size_t bareiss(IntMatrix& m, int& sign) {
  sign = 1;
  const std::size_t rows = m.rows(), cols = m.cols();
  BigInt prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      m.swap_rows(p, r);
      sign = -sign;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        m(i, j) = m(i, j) * m(r, c) - m(i, c) * m(r, j);
        mpz_divexact(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), prev.get_mpz_t());
      }
      m(i, c) = 0;
    }
    prev = m(r, c);
    ++r;
  }
  return r;
}

}  // namespace

BigInt determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw DomainError("determinant of a non-square matrix");
  if (a.rows() == 0) return 1;
  IntMatrix m = a;
  int sign = 1;
  const std::size_t r = bareiss(m, sign);
  if (r < a.rows()) return 0;
  return sign * m(a.rows() - 1, a.cols() - 1);
}

std::size_t rational_rank(const IntMatrix& a) {
  IntMatrix m = a;
  int sign = 1;
  return bareiss(m, sign);
}

SmithForm smith_normal_form(const IntMatrix& a, bool track) {
  SmithForm out;
  IntMatrix& d = out.d;
  d = a;
  const std::size_t m = a.rows(), n = a.cols();
  if (track) {
    out.u = IntMatrix::identity(m);
    out.v = IntMatrix::identity(n);
  }
  auto row_op = [&](std::size_t dst, std::size_t src, const BigInt& f) {
    d.add_row(dst, src, f);
    if (track) out.u.add_row(dst, src, f);
  };
  auto col_op = [&](std::size_t dst, std::size_t src, const BigInt& f) {
    d.add_col(dst, src, f);
    if (track) out.v.add_col(dst, src, f);
  };
  auto swap_r = [&](std::size_t x, std::size_t y) {
    d.swap_rows(x, y);
    if (track) out.u.swap_rows(x, y);
  };
  auto swap_c = [&](std::size_t x, std::size_t y) {
    d.swap_cols(x, y);
    if (track) out.v.swap_cols(x, y);
  };

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    // Smallest nonzero entry of the trailing block.
    std::size_t pi = m, pj = n;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (d(i, j) != 0 && (pi == m || cmpabs(d(i, j), d(pi, pj)) < 0)) {
          pi = i;
          pj = j;
        }
    if (pi == m) break;
    swap_r(t, pi);
    swap_c(t, pj);

    while (true) {
      bool dirty = false;
      BigInt q;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), d(i, t).get_mpz_t(), d(t, t).get_mpz_t());
        row_op(i, t, -q);
        if (d(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), d(t, j).get_mpz_t(), d(t, t).get_mpz_t());
        col_op(j, t, -q);
        if (d(t, j) != 0) dirty = true;
      }
      if (dirty) {
        // A remainder is smaller than the pivot: move it into place.
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < m; ++i)
          if (d(i, t) != 0 && cmpabs(d(i, t), d(bi, bj)) < 0) {
            bi = i;
            bj = t;
          }
        for (std::size_t j = t + 1; j < n; ++j)
          if (d(t, j) != 0 && cmpabs(d(t, j), d(bi, bj)) < 0) {
            bi = t;
            bj = j;
          }
        swap_r(t, bi);
        swap_c(t, bj);
        continue;
      }
      // Divisibility: fold a row with an offending entry into the pivot row.
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == m) break;
      row_op(t, bad, 1);
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      if (track) out.u.negate_row(t);
    }
    out.factors.push_back(d(t, t));
  }
  return out;
}

std::string to_string(const BigInt& x) { return x.get_str(); }

}  // namespace grope
