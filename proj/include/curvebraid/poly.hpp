#pragma once
// Exact polynomial arithmetic over Q: univariate utilities (gcd, squarefree
// decomposition, Sturm sequences, resultants, root isolation) and bivariate
// polynomials f(x, y) stored by powers of y.

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cb {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& r) { return static_cast<double>(r); }

// Univariate polynomial, coefficients ascending in degree.
struct UPoly {
  std::vector<Rat> c;

  UPoly() = default;
  explicit UPoly(std::vector<Rat> coeffs) : c(std::move(coeffs)) { trim(); }
  static UPoly constant(Rat v) { return UPoly({std::move(v)}); }
  static UPoly x() { return UPoly({Rat(0), Rat(1)}); }

  bool operator==(const UPoly& o) const { return c == o.c; }
  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  const Rat& lead() const {
    if (is_zero()) throw std::logic_error("lead of zero polynomial");
    return c.back();
  }
  Rat coeff(int k) const { return (k >= 0 && k < static_cast<int>(c.size())) ? c[k] : Rat(0); }

  UPoly operator-() const {
    UPoly r = *this;
    for (Rat& v : r.c) v = -v;
    return r;
  }
  UPoly& operator+=(const UPoly& o) {
    if (o.c.size() > c.size()) c.resize(o.c.size());
    for (std::size_t i = 0; i < o.c.size(); ++i) c[i] += o.c[i];
    trim();
    return *this;
  }
  UPoly& operator-=(const UPoly& o) {
    if (o.c.size() > c.size()) c.resize(o.c.size());
    for (std::size_t i = 0; i < o.c.size(); ++i) c[i] -= o.c[i];
    trim();
    return *this;
  }
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    UPoly r;
    r.c.assign(a.c.size() + b.c.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.c.size(); ++i)
      for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    r.trim();
    return r;
  }
  UPoly& operator*=(const UPoly& o) { return *this = *this * o; }
  UPoly& operator*=(const Rat& s) {
    for (Rat& v : c) v *= s;
    trim();
    return *this;
  }
  friend UPoly operator*(UPoly a, const Rat& s) { return a *= s; }

  Rat eval(const Rat& x) const {
    Rat v = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
    return v;
  }
  std::complex<double> eval(std::complex<double> x) const {
    std::complex<double> v = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + to_double(*it);
    return v;
  }
  UPoly derivative() const {
    UPoly r;
    for (std::size_t i = 1; i < c.size(); ++i) r.c.push_back(c[i] * Rat(i));
    r.trim();
    return r;
  }
  std::vector<double> coeffs_double() const {
    std::vector<double> r;
    r.reserve(c.size());
    for (const Rat& v : c) r.push_back(to_double(v));
    return r;
  }
};

// quotient and remainder over Q
inline std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw std::invalid_argument("division by zero polynomial");
  UPoly r = a, q;
  int db = b.degree();
  if (a.degree() >= db) q.c.assign(a.degree() - db + 1, Rat(0));
  while (!r.is_zero() && r.degree() >= db) {
    Rat f = r.lead() / b.lead();
    int shift = r.degree() - db;
    q.c[shift] = f;
    for (int i = 0; i <= db; ++i) r.c[shift + i] -= f * b.c[i];
    r.trim();
  }
  q.trim();
  return {q, r};
}
inline UPoly operator/(const UPoly& a, const UPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::logic_error("inexact polynomial division");
  return q;
}

// keeps coefficients small along remainder sequences; positive scaling only
inline UPoly normalized(UPoly p) {
  if (p.is_zero()) return p;
  Rat m = 0;
  for (const Rat& v : p.c) m = std::max(m, static_cast<Rat>(abs(v)));
  for (Rat& v : p.c) v /= m;
  return p;
}

inline UPoly gcd(UPoly a, UPoly b) {
  a = normalized(std::move(a));
  b = normalized(std::move(b));
  while (!b.is_zero()) {
    UPoly r = normalized(divmod(a, b).second);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  Rat lead = a.lead();
  for (Rat& v : a.c) v /= lead;
  return a;
}

// Yun's algorithm: returns (factor, multiplicity) pairs with factors monic,
// squarefree, pairwise coprime; product of factor^mult = input up to constant.
inline std::vector<std::pair<UPoly, int>> squarefree_decomposition(const UPoly& f) {
  std::vector<std::pair<UPoly, int>> out;
  if (f.degree() < 1) return out;
  UPoly df = f.derivative();
  UPoly g = gcd(f, df);
  UPoly ci = f / g;
  UPoly di = df / g - ci.derivative();
  for (int i = 1; !(ci.degree() < 1); ++i) {
    UPoly ai = gcd(ci, di);
    if (ai.degree() >= 1) out.emplace_back(ai, i);
    ci = ci / ai;
    di = di / ai - ci.derivative();
  }
  return out;
}

inline UPoly squarefree_part(const UPoly& f) {
  UPoly r = UPoly::constant(1);
  for (auto& [p, m] : squarefree_decomposition(f)) r *= p;
  return r;
}

// --- Sturm sequences -------------------------------------------------------

struct SturmChain {
  std::vector<UPoly> seq;

  explicit SturmChain(const UPoly& p) {
    seq.push_back(normalized(p));
    if (p.degree() >= 1) seq.push_back(normalized(p.derivative()));
    while (seq.back().degree() >= 1) {
      UPoly r = divmod(seq[seq.size() - 2], seq.back()).second;
      if (r.is_zero()) break;
      seq.push_back(normalized(-r));
    }
  }

  int sign_changes(const Rat& x) const {
    int changes = 0, prev = 0;
    for (const UPoly& p : seq) {
      Rat v = p.eval(x);
      int s = v == 0 ? 0 : (v > 0 ? 1 : -1);
      if (s != 0) {
        if (prev != 0 && s != prev) ++changes;
        prev = s;
      }
    }
    return changes;
  }
  // number of distinct real roots in (a, b]; requires a squarefree input for
  // exact semantics at endpoints that are roots
  int count(const Rat& a, const Rat& b) const { return sign_changes(a) - sign_changes(b); }
};

inline Rat cauchy_root_bound(const UPoly& p) {
  Rat m = 0;
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, static_cast<Rat>(abs(p.c[i] / p.lead())));
  return m + 1;
}

namespace detail {
// Shrinks an isolating interval around a known simple root until its width is
// at most `width`.  Returns a degenerate pair (r, r) for an exact root.
inline std::pair<Rat, Rat> refine_isolating(const UPoly& f, Rat lo, Rat hi, const Rat& width) {
  if (f.eval(hi) == 0) return {hi, hi};
  Rat vlo = f.eval(lo);
  int slo = vlo > 0 ? 1 : -1;
  while (hi - lo > width) {
    Rat mid = (lo + hi) / 2;
    Rat v = f.eval(mid);
    if (v == 0) return {mid, mid};
    ((v > 0 ? 1 : -1) == slo ? lo : hi) = mid;
  }
  return {lo, hi};
}
}  // namespace detail

// Disjoint isolating intervals (lo, hi) for the distinct real roots of a
// squarefree polynomial, refined until hi - lo <= width.  A degenerate
// interval (r, r) marks a rational root that a bisection point landed on.
inline std::vector<std::pair<Rat, Rat>> isolate_real_roots(const UPoly& f, const Rat& width) {
  std::vector<std::pair<Rat, Rat>> out;
  if (f.degree() < 1) return out;
  SturmChain chain(f);
  Rat bound = cauchy_root_bound(f);
  std::vector<std::pair<Rat, Rat>> work{{-bound, bound}};
  while (!work.empty()) {
    auto [lo, hi] = work.back();
    work.pop_back();
    int k = chain.count(lo, hi);
    if (k == 0) continue;
    if (k == 1) {
      out.push_back(detail::refine_isolating(f, lo, hi, width));
      continue;
    }
    Rat mid = (lo + hi) / 2;
    if (f.eval(mid) == 0) {
      out.emplace_back(mid, mid);
      Rat w = (hi - lo) / 8;
      while (f.eval(mid - w) == 0 || f.eval(mid + w) == 0 || chain.count(mid - w, mid + w) != 1)
        w /= 2;
      work.emplace_back(lo, mid - w);
      work.emplace_back(mid + w, hi);
    } else {
      work.emplace_back(lo, mid);
      work.emplace_back(mid, hi);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// --- resultants ------------------------------------------------------------

// res(A, B) by the Euclidean product formula.
inline Rat resultant(UPoly a, UPoly b) {
  if (a.is_zero() || b.is_zero()) return 0;
  Rat r = 1;
  while (true) {
    int m = a.degree(), n = b.degree();
    if (n == 0) {
      Rat lb = b.lead();
      Rat p = 1;
      for (int i = 0; i < m; ++i) p *= lb;
      r *= p;
      break;
    }
    if (m < n) {
      std::swap(a, b);
      if ((m & 1) && (n & 1)) r = -r;
      continue;
    }
    UPoly rem = divmod(a, b).second;
    int d = rem.is_zero() ? -1 : rem.degree();
    if (d < 0) return 0;
    Rat lb = b.lead();
    Rat p = 1;
    for (int i = 0; i < m - d; ++i) p *= lb;
    r *= p;
    if ((m & 1) && (n & 1)) r = -r;
    a = std::move(b);
    b = std::move(rem);
  }
  return r;
}

// --- bivariate polynomials --------------------------------------------------

// f(x, y) = sum_j cy[j](x) y^j
struct BPoly {
  std::vector<UPoly> cy;

  void trim() {
    while (!cy.empty() && cy.back().is_zero()) cy.pop_back();
  }
  bool is_zero() const { return cy.empty(); }
  int ydeg() const { return static_cast<int>(cy.size()) - 1; }
  int xdeg() const {
    int d = -1;
    for (const UPoly& p : cy) d = std::max(d, p.degree());
    return d;
  }
  static BPoly constant(Rat v) {
    BPoly r;
    r.cy.push_back(UPoly::constant(std::move(v)));
    r.trim();
    return r;
  }
  static BPoly x() {
    BPoly r;
    r.cy.push_back(UPoly::x());
    return r;
  }
  static BPoly y() {
    BPoly r;
    r.cy.push_back(UPoly{});
    r.cy.push_back(UPoly::constant(1));
    return r;
  }

  BPoly operator-() const {
    BPoly r = *this;
    for (UPoly& p : r.cy) p = -p;
    return r;
  }
  BPoly& operator+=(const BPoly& o) {
    if (o.cy.size() > cy.size()) cy.resize(o.cy.size());
    for (std::size_t i = 0; i < o.cy.size(); ++i) cy[i] += o.cy[i];
    trim();
    return *this;
  }
  BPoly& operator-=(const BPoly& o) { return *this += -o; }
  friend BPoly operator+(BPoly a, const BPoly& b) { return a += b; }
  friend BPoly operator-(BPoly a, const BPoly& b) { return a -= b; }
  friend BPoly operator*(const BPoly& a, const BPoly& b) {
    BPoly r;
    if (a.is_zero() || b.is_zero()) return r;
    r.cy.assign(a.cy.size() + b.cy.size() - 1, UPoly{});
    for (std::size_t i = 0; i < a.cy.size(); ++i)
      for (std::size_t j = 0; j < b.cy.size(); ++j) r.cy[i + j] += a.cy[i] * b.cy[j];
    r.trim();
    return r;
  }
  BPoly& operator*=(const BPoly& o) { return *this = *this * o; }

  BPoly pow(int e) const {
    BPoly r = constant(1), base = *this;
    for (int k = 0; k < e; ++k) r *= base;
    return r;
  }

  BPoly dy() const {
    BPoly r;
    for (std::size_t j = 1; j < cy.size(); ++j) r.cy.push_back(cy[j] * Rat(j));
    r.trim();
    return r;
  }

  // the fiber polynomial f(x0, y) in Q[y]
  UPoly at_x(const Rat& x0) const {
    UPoly r;
    r.c.reserve(cy.size());
    for (const UPoly& p : cy) r.c.push_back(p.eval(x0));
    r.trim();
    return r;
  }
};

// Res_y(f, df/dy) as a polynomial in x, by exact interpolation.  Requires the
// leading y-coefficient to be a nonzero constant so the Sylvester shape is
// uniform in x.
inline UPoly discriminant_x(const BPoly& f) {
  if (f.ydeg() < 1) throw std::invalid_argument("no y dependence");
  if (f.cy.back().degree() != 0)
    throw std::invalid_argument("leading y-coefficient must be constant");
  BPoly fy = f.dy();
  int bound = (2 * f.ydeg() - 1) * std::max(f.xdeg(), 0) + 1;
  std::vector<Rat> xs, vals;
  for (int k = 0; static_cast<int>(xs.size()) < bound; ++k) {
    Rat t = (k % 2 == 0) ? Rat(k / 2) : Rat(-(k / 2 + 1));
    UPoly a = f.at_x(t), b = fy.at_x(t);
    if (b.is_zero()) {
      xs.push_back(t);
      vals.push_back(0);
      continue;
    }
    xs.push_back(t);
    vals.push_back(resultant(a, b));
  }
  // Lagrange interpolation on (xs, vals)
  UPoly acc;
  for (int i = 0; i < bound; ++i) {
    if (vals[i] == 0) continue;
    UPoly term = UPoly::constant(vals[i]);
    Rat denom = 1;
    for (int j = 0; j < bound; ++j) {
      if (j == i) continue;
      term *= UPoly({-xs[j], Rat(1)});
      denom *= xs[i] - xs[j];
    }
    term *= Rat(1) / denom;
    acc += term;
  }
  return acc;
}

}  // namespace cb
