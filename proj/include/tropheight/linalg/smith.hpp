#pragma once

/**
 * @file smith.hpp
 * @brief Smith normal form with unimodular transforms: U * A * V = D.
 */

#include <algorithm>
#include <cstddef>
#include <vector>

#include "tropheight/linalg/matrix.hpp"

namespace tropheight {

struct SmithForm {
  IntMatrix D;  // diagonal, d_1 | d_2 | ... , nonnegative
  IntMatrix U;  // row transform
  IntMatrix V;  // column transform
  std::vector<Integer> diagonal() const {
    std::vector<Integer> d;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
    return d;
  }
};

namespace detail {

inline void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}
inline void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}
// row[dst] += k * row[src]
inline void add_row(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& k) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += k * m(src, j);
}
inline void add_col(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& k) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += k * m(i, src);
}

// Negate row i of D and U; U stays unimodular.
inline void negate_row(SmithForm& s, std::size_t i) {
  for (std::size_t j = 0; j < s.D.cols(); ++j) s.D(i, j) = -s.D(i, j);
  for (std::size_t j = 0; j < s.U.cols(); ++j) s.U(i, j) = -s.U(i, j);
}

}  // namespace detail

inline SmithForm smith_normal_form(const IntMatrix& a) {
  using namespace detail;
  std::size_t m = a.rows(), n = a.cols();
  SmithForm s{a, IntMatrix::identity(m), IntMatrix::identity(n)};
  IntMatrix& d = s.D;

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    bool block_zero = false;
    // Pivot: the smallest nonzero entry in the trailing block.
    for (;;) {
      std::size_t pi = m, pj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (d(i, j) != 0 && (pi == m || abs(d(i, j)) < abs(d(pi, pj)))) pi = i, pj = j;
      if (pi == m) {
        block_zero = true;
        break;
      }
      if (pi != t) swap_rows(d, t, pi), swap_rows(s.U, t, pi);
      if (pj != t) swap_cols(d, t, pj), swap_cols(s.V, t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), d(i, t).get_mpz_t(), d(t, t).get_mpz_t());
        if (q != 0) add_row(d, i, t, -q), add_row(s.U, i, t, -q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), d(t, j).get_mpz_t(), d(t, t).get_mpz_t());
        if (q != 0) add_col(d, j, t, -q), add_col(s.V, j, t, -q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: fold any entry not divisible by the pivot into row t.
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
            add_row(d, t, i, Integer(1));
            add_row(s.U, t, i, Integer(1));
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (block_zero) break;
    if (d(t, t) < 0) negate_row(s, t);
  }
  return s;
}

}  // namespace tropheight
