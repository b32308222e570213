#pragma once

// Full eigendecomposition of a small dense symmetric matrix: Householder
// reduction to tridiagonal form followed by the implicit QL iteration with
// accumulated rotations (the EISPACK tred2/tql2 pair). Templated on the
// scalar so the pencil path can run in binary128.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <vector>

#include "pfopt/error.hpp"

namespace pfopt {

template <class Real>
struct SymmetricEigen {
  std::vector<Real> values;   // ascending
  std::vector<Real> vectors;  // column j (stride n) pairs with values[j]
  std::size_t n = 0;

  Real vector_entry(std::size_t row, std::size_t col) const { return vectors[row * n + col]; }
};

namespace detail {

template <class Real>
Real safe_hypot(const Real& a, const Real& b) {
  using std::abs;
  using std::sqrt;
  const Real x = abs(a);
  const Real y = abs(b);
  const Real big = x > y ? x : y;
  if (big == 0) return Real(0);
  const Real small = x > y ? y : x;
  const Real ratio = small / big;
  return big * sqrt(Real(1) + ratio * ratio);
}

}  // namespace detail

/// `a` is row-major n x n and must be symmetric.
template <class Real>
SymmetricEigen<Real> symmetric_eigen(std::vector<Real> a, std::size_t n) {
  using std::abs;
  using std::sqrt;
  SymmetricEigen<Real> out;
  out.n = n;
  if (n == 0) return out;

  auto V = [&](std::size_t i, std::size_t j) -> Real& { return a[i * n + j]; };
  std::vector<Real> d(n), e(n);

  // Householder tridiagonalization.
  for (std::size_t j = 0; j < n; ++j) d[j] = V(n - 1, j);
  for (std::size_t i = n - 1; i > 0; --i) {
    Real scale = 0;
    Real h = 0;
    for (std::size_t k = 0; k < i; ++k) scale += abs(d[k]);
    if (scale == 0) {
      e[i] = d[i - 1];
      for (std::size_t j = 0; j < i; ++j) {
        d[j] = V(i - 1, j);
        V(i, j) = 0;
        V(j, i) = 0;
      }
    } else {
      for (std::size_t k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      Real f = d[i - 1];
      Real g = sqrt(h);
      if (f > 0) g = -g;
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;
      for (std::size_t j = 0; j < i; ++j) e[j] = 0;
      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        V(j, i) = f;
        g = e[j] + V(j, j) * f;
        for (std::size_t k = j + 1; k + 1 <= i; ++k) {
          g += V(k, j) * d[k];
          e[k] += V(k, j) * f;
        }
        e[j] = g;
      }
      f = 0;
      for (std::size_t j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
      }
      const Real hh = f / (h + h);
      for (std::size_t j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        g = e[j];
        for (std::size_t k = j; k + 1 <= i; ++k) V(k, j) -= (f * e[k] + g * d[k]);
        d[j] = V(i - 1, j);
        V(i, j) = 0;
      }
    }
    d[i] = h;
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    V(n - 1, i) = V(i, i);
    V(i, i) = 1;
    const Real h = d[i + 1];
    if (h != 0) {
      for (std::size_t k = 0; k <= i; ++k) d[k] = V(k, i + 1) / h;
      for (std::size_t j = 0; j <= i; ++j) {
        Real g = 0;
        for (std::size_t k = 0; k <= i; ++k) g += V(k, i + 1) * V(k, j);
        for (std::size_t k = 0; k <= i; ++k) V(k, j) -= g * d[k];
      }
    }
    for (std::size_t k = 0; k <= i; ++k) V(k, i + 1) = 0;
  }
  for (std::size_t j = 0; j < n; ++j) {
    d[j] = V(n - 1, j);
    V(n - 1, j) = 0;
  }
  V(n - 1, n - 1) = 1;
  e[0] = 0;

  // Implicit QL with Wilkinson-style shift.
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0;
  Real f = 0;
  Real tst1 = 0;
  const Real eps = std::numeric_limits<Real>::epsilon();
  const int max_iter = 60 * static_cast<int>(n) + 60;
  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, Real(abs(d[l]) + abs(e[l])));
    std::size_t m = l;
    while (m < n) {
      if (abs(e[m]) <= eps * tst1) break;
      ++m;
    }
    if (m > l) {
      int iter = 0;
      do {
        if (++iter > max_iter) throw NumericalError("symmetric eigensolver did not converge");
        Real g = d[l];
        Real p = (d[l + 1] - g) / (Real(2) * e[l]);
        Real r = detail::safe_hypot(p, Real(1));
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const Real dl1 = d[l + 1];
        Real h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        Real c = 1, c2 = 1, c3 = 1;
        const Real el1 = e[l + 1];
        Real s = 0, s2 = 0;
        for (std::size_t ii = m; ii-- > l;) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[ii];
          h = c * p;
          r = detail::safe_hypot(p, e[ii]);
          e[ii + 1] = s * r;
          s = e[ii] / r;
          c = p / r;
          p = c * d[ii] - s * g;
          d[ii + 1] = h + s * (c * g + s * d[ii]);
          for (std::size_t k = 0; k < n; ++k) {
            h = V(k, ii + 1);
            V(k, ii + 1) = s * V(k, ii) + c * h;
            V(k, ii) = c * V(k, ii) - s * h;
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (abs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return d[x] < d[y]; });
  out.values.resize(n);
  out.vectors.resize(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = d[order[j]];
    for (std::size_t k = 0; k < n; ++k) out.vectors[k * n + j] = V(k, order[j]);
  }
  return out;
}

}  // namespace pfopt
