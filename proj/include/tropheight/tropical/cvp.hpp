#pragma once

/**
 * @file cvp.hpp
 * @brief Exact closest-vector search in Z^g under a rational positive
 *        definite quadratic form.
 *
 * min over x in Z^g of Q(x - t), Q(w) = w^T G w. The form is factored as
 * G = R^T D R with R upper unitriangular, so
 *
 *     Q(w) = sum_i d_i (w_i + sum_{j>i} R_ij w_j)^2,
 *
 * and x is enumerated from the last coordinate down. The first leaf is the
 * Babai nearest-plane point; its value seeds the radius, which shrinks on
 * every improvement. All comparisons are exact, there is no square root.
 */

#include <cstddef>
#include <vector>

#include "tropheight/linalg/matrix.hpp"

namespace tropheight {

struct CvpResult {
  Rational value;  // Q(x - t)
  IntVector x;     // a minimizer
  std::size_t nodes = 0;
};

class CvpSolver {
 public:
  explicit CvpSolver(const RatMatrix& gram) : g_(gram) {
    if (!gram.is_square()) throw InputError("CVP: Gram matrix must be square");
    std::size_t n = gram.rows();
    // Symmetric Gaussian elimination, eliminating from the last variable so
    // that the enumeration runs g-1 .. 0 with its own coordinate innermost.
    r_ = RatMatrix::identity(n);
    d_.assign(n, Rational(0));
    RatMatrix a = gram;
    for (std::size_t i = 0; i < n; ++i) {
      if (a(i, i).sign() <= 0) throw InputError("CVP: Gram matrix is not positive definite");
      d_[i] = a(i, i);
      for (std::size_t j = i + 1; j < n; ++j) r_(i, j) = a(i, j) / a(i, i);
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t k = i + 1; k < n; ++k) a(j, k) -= r_(i, j) * a(i, k);
    }
  }

  std::size_t rank() const { return d_.size(); }

  /// Exact Q-value of w.
  Rational form(const RationalVector& w) const { return bilinear(g_, w, w); }

  CvpResult closest(const RationalVector& t) const {
    std::size_t n = rank();
    if (t.size() != n) throw InputError("CVP: target has the wrong length");
    CvpResult best;
    best.x = babai(t);
    RationalVector w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = Rational(best.x[i]) - t[i];
    best.value = form(w);

    IntVector x(n, Integer(0));
    RationalVector partial(n + 1, Rational(0));  // partial[i] = sum over levels >= i
    search(t, n, x, partial, best);
    return best;
  }

 private:
  // Center of level i given the already fixed x_{i+1..n-1}:
  // w_i + sum_{j>i} R_ij w_j = 0  =>  x_i = t_i - sum_{j>i} R_ij (x_j - t_j).
  Rational center(const RationalVector& t, const IntVector& x, std::size_t i) const {
    Rational c = t[i];
    for (std::size_t j = i + 1; j < rank(); ++j) c -= r_(i, j) * (Rational(x[j]) - t[j]);
    return c;
  }

  IntVector babai(const RationalVector& t) const {
    std::size_t n = rank();
    IntVector x(n, Integer(0));
    for (std::size_t i = n; i-- > 0;) x[i] = center(t, x, i).round();
    return x;
  }

  // Enumerate level `level - 1`; levels >= level are fixed in x.
  void search(const RationalVector& t, std::size_t level, IntVector& x, RationalVector& partial,
              CvpResult& best) const {
    if (level == 0) {
      ++best.nodes;
      if (partial[0] < best.value) {
        best.value = partial[0];
        best.x = x;
      }
      return;
    }
    std::size_t i = level - 1;
    Rational c = center(t, x, i);
    Integer mid = c.round();
    // Walk outward on each side; the level cost is monotone in |x_i - c|.
    for (int dir : {0, 1}) {
      for (Integer xi = dir == 0 ? mid : Integer(mid - 1);; dir == 0 ? ++xi : --xi) {
        Rational diff = Rational(xi) - c;
        Rational cost = partial[i + 1] + d_[i] * diff * diff;
        // Only strictly better leaves matter: one minimizer is enough.
        if (cost >= best.value) break;
        x[i] = xi;
        partial[i] = cost;
        search(t, i, x, partial, best);
      }
    }
    x[i] = 0;
  }

  RatMatrix g_;
  RatMatrix r_;
  RationalVector d_;
};

}  // namespace tropheight
