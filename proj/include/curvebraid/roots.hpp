#pragma once
// Simultaneous polynomial root finding (Aberth-Ehrlich) with warm starting,
// plus a fiber solver that evaluates f(x0, .) for complex x0 along a path.

#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "curvebraid/poly.hpp"

namespace cb {

using cpx = std::complex<double>;

namespace detail {
inline cpx horner(const std::vector<cpx>& c, cpx z) {
  cpx v = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * z + *it;
  return v;
}
}  // namespace detail

// All roots of the polynomial with ascending coefficients c (c.back() != 0).
// A warm start of the right size is polished in place, which keeps the root
// indexing stable along a continuation path.
inline std::vector<cpx> aberth_roots(const std::vector<cpx>& c, std::vector<cpx> guess = {},
                                     double tol = 1e-13, int max_iter = 400) {
  int n = static_cast<int>(c.size()) - 1;
  while (n > 0 && std::abs(c[n]) == 0) --n;
  if (n < 1) throw std::invalid_argument("root finding needs positive degree");
  std::vector<cpx> a(c.begin(), c.begin() + n + 1);

  std::vector<cpx> z;
  if (static_cast<int>(guess.size()) == n) {
    z = std::move(guess);
  } else {
    double bound = 0;
    for (int i = 0; i < n; ++i) bound = std::max(bound, std::abs(a[i] / a[n]));
    double r = 1 + bound;
    z.resize(n);
    for (int i = 0; i < n; ++i)
      z[i] = std::polar(r * (0.5 + 0.5 * (i + 1.0) / n), 6.2831853071795864769 * i / n + 0.4);
  }

  std::vector<cpx> dc(n);
  for (int i = 1; i <= n; ++i) dc[i - 1] = a[i] * double(i);

  std::vector<double> am(n + 1);
  for (int i = 0; i <= n; ++i) am[i] = std::abs(a[i]);

  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> jitter(-1.0, 1.0);
  for (int it = 0; it < max_iter; ++it) {
    double worst = 0;
    for (int i = 0; i < n; ++i) {
      cpx p = detail::horner(a, z[i]);
      // Settle the root once |p| reaches the evaluation noise floor; at a
      // multiple root no iteration can do better than this.
      double az = std::abs(z[i]), sat = 0;
      for (int k = n; k >= 0; --k) sat = sat * az + am[k];
      if (std::abs(p) <= 8 * n * 1.1e-16 * sat) continue;
      cpx dp = detail::horner(dc, z[i]);
      if (std::abs(dp) < 1e-300) {
        z[i] += cpx(jitter(rng), jitter(rng)) * (1e-8 + std::abs(z[i]) * 1e-8);
        worst = 1;
        continue;
      }
      cpx w = p / dp;
      cpx s = 0;
      for (int j = 0; j < n; ++j)
        if (j != i) s += 1.0 / (z[i] - z[j]);
      cpx denom = 1.0 - w * s;
      cpx corr = std::abs(denom) < 1e-300 ? w : w / denom;
      z[i] -= corr;
      worst = std::max(worst, std::abs(corr) / (1 + std::abs(z[i])));
    }
    if (worst < tol) return z;
  }
  throw std::runtime_error("root iteration failed to converge");
}

// Evaluates the coefficients of y -> f(x0, y) at complex x0, in doubles.
class FiberSolver {
 public:
  explicit FiberSolver(const BPoly& f) {
    for (const UPoly& p : f.cy) cx_.push_back(p.coeffs_double());
    if (cx_.empty() || cx_.back().size() != 1)
      throw std::invalid_argument("leading y-coefficient must be a nonzero constant");
  }

  int degree() const { return static_cast<int>(cx_.size()) - 1; }

  std::vector<cpx> coefficients(cpx x0) const {
    std::vector<cpx> c(cx_.size());
    for (std::size_t j = 0; j < cx_.size(); ++j) {
      cpx v = 0;
      for (auto it = cx_[j].rbegin(); it != cx_[j].rend(); ++it) v = v * x0 + *it;
      c[j] = v;
    }
    return c;
  }

  std::vector<cpx> roots(cpx x0, std::vector<cpx> warm = {}, double tol = 1e-13) const {
    return aberth_roots(coefficients(x0), std::move(warm), tol);
  }

 private:
  std::vector<std::vector<double>> cx_;  // [y-degree][x-degree]
};

}  // namespace cb
