#pragma once

// Brute-force evaluations over structure constants, kept independent of the library's matrix forms.

#include <cmath>
#include <vector>

#include "aqg/presentation.hpp"

namespace oracle {

using aqg::cplx;
using aqg::Vec;

inline cplx m(const aqg::AlgebraPresentation& a, int i, int j, int k) { return a.mult(k, i * a.dim + j); }

inline Vec mul(const aqg::AlgebraPresentation& a, const Vec& x, const Vec& y) {
  const int n = a.dim;
  Vec out = Vec::Zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx c = x(i) * y(j);
      if (c == cplx(0.0)) continue;
      for (int k = 0; k < n; ++k) out(k) += c * m(a, i, j, k);
    }
  return out;
}

inline double assoc_residual(const aqg::AlgebraPresentation& a) {
  const int n = a.dim;
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Vec ei = Vec::Unit(n, i), ej = Vec::Unit(n, j), ek = Vec::Unit(n, k);
        Vec l = mul(a, mul(a, ei, ej), ek), r = mul(a, ei, mul(a, ej, ek));
        worst = std::max(worst, (l - r).cwiseAbs().maxCoeff());
      }
  return worst;
}

// (id (x) phi)(Delta(a)(b (x) 1)) - phi(a) b, worst over basis pairs.
inline double left_invariance(const aqg::QuantumGroupPresentation& p, const aqg::RowVec& phi) {
  const int n = p.dim();
  double worst = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Vec out = Vec::Zero(n);
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
          cplx c = p.comul(x * n + y, a);
          if (c == cplx(0.0)) continue;
          Vec left = mul(p.algebra, Vec::Unit(n, x), Vec::Unit(n, b));
          out += c * phi(y) * left;
        }
      out(b) -= phi(a);
      worst = std::max(worst, out.cwiseAbs().maxCoeff());
    }
  return worst;
}

// Classical Clebsch-Gordan coefficient <j1 m1; j2 m2 | J M> by the Racah formula.
// All arguments are doubled.
inline double fact_half(int two_n) { return std::tgamma(0.5 * two_n + 1.0); }

inline double classical_cg(int j1, int m1, int j2, int m2, int j, int m) {
  if (m1 + m2 != m) return 0.0;
  if (j < std::abs(j1 - j2) || j > j1 + j2 || (j1 + j2 + j) % 2) return 0.0;
  double pre = std::sqrt((j + 1.0) * fact_half(j + j1 - j2) * fact_half(j - j1 + j2) * fact_half(j1 + j2 - j) /
                         fact_half(j1 + j2 + j + 2));
  pre *= std::sqrt(fact_half(j + m) * fact_half(j - m) * fact_half(j1 - m1) * fact_half(j1 + m1) *
                   fact_half(j2 - m2) * fact_half(j2 + m2));
  double sum = 0.0;
  for (int k = 0; k <= j1 + j2 + j; k += 2) {
    int a = j1 + j2 - j - k, b = j1 - m1 - k, c = j2 + m2 - k, d = j - j2 + m1 + k, e = j - j1 - m2 + k;
    if (a < 0 || b < 0 || c < 0 || d < 0 || e < 0) continue;
    double term = 1.0 / (fact_half(k) * fact_half(a) * fact_half(b) * fact_half(c) * fact_half(d) * fact_half(e));
    sum += (k / 2) % 2 ? -term : term;
  }
  return pre * sum;
}

}  // namespace oracle
