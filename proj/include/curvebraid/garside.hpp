#pragma once
// Left greedy normal form for braid words (classical Garside structure).
// Used as the equality oracle everywhere two braid words are compared.

#include <algorithm>
#include <optional>
#include <vector>

#include "curvebraid/braid.hpp"

namespace cb {

// A permutation braid (simple factor), stored by its position permutation:
// img[p] = end position of the strand starting at position p.
struct Perm {
  std::vector<int> img;

  bool operator==(const Perm&) const = default;
  int size() const { return static_cast<int>(img.size()); }

  static Perm identity(int n) {
    Perm p;
    p.img.resize(n);
    std::iota(p.img.begin(), p.img.end(), 0);
    return p;
  }
  // Adjacent transposition of positions i, i+1 (0-based).
  static Perm transposition(int n, int i) {
    Perm p = identity(n);
    std::swap(p.img[i], p.img[i + 1]);
    return p;
  }
  // Half twist permutation (full reversal).
  static Perm w0(int n) {
    Perm p;
    p.img.resize(n);
    for (int k = 0; k < n; ++k) p.img[k] = n - 1 - k;
    return p;
  }

  bool is_identity() const {
    for (int k = 0; k < size(); ++k)
      if (img[k] != k) return false;
    return true;
  }
  bool is_w0() const {
    int n = size();
    for (int k = 0; k < n; ++k)
      if (img[k] != n - 1 - k) return false;
    return true;
  }
  Perm inverse() const {
    Perm r;
    r.img.resize(img.size());
    for (int k = 0; k < size(); ++k) r.img[img[k]] = k;
    return r;
  }
  long inversions() const {
    long c = 0;
    for (int a = 0; a < size(); ++a)
      for (int b = a + 1; b < size(); ++b)
        if (img[a] > img[b]) ++c;
    return c;
  }
};

// Apply a, then b.
inline Perm compose(const Perm& a, const Perm& b) {
  Perm r;
  r.img.resize(a.img.size());
  for (std::size_t p = 0; p < a.img.size(); ++p) r.img[p] = b.img[a.img[p]];
  return r;
}

// tau(P) = Delta^{-1} P Delta
inline Perm tau(const Perm& p) {
  int n = p.size();
  Perm r;
  r.img.resize(n);
  for (int k = 0; k < n; ++k) r.img[k] = n - 1 - p.img[n - 1 - k];
  return r;
}

// sigma_{i+1} left-divides the factor iff i is a descent of its permutation.
inline std::vector<int> starting_set(const Perm& p) {
  std::vector<int> s;
  for (int i = 0; i + 1 < p.size(); ++i)
    if (p.img[i] > p.img[i + 1]) s.push_back(i);
  return s;
}
inline std::vector<int> finishing_set(const Perm& p) { return starting_set(p.inverse()); }

struct NormalForm {
  int strands = 1;
  long inf = 0;               // exponent of the leading Delta power
  std::vector<Perm> factors;  // left-weighted simple factors, none trivial, none Delta

  bool operator==(const NormalForm&) const = default;
  long canonical_length() const { return static_cast<long>(factors.size()); }
  bool is_trivial() const { return inf == 0 && factors.empty(); }
  long exponent_sum() const {
    long s = inf * (static_cast<long>(strands) * (strands - 1) / 2);
    for (const Perm& f : factors) s += f.inversions();
    return s;
  }
};

namespace detail {

// Makes consecutive factors left-weighted in place; drops trivial factors.
inline void left_normalize(std::vector<Perm>& f) {
  bool again = true;
  while (again) {
    again = false;
    for (std::size_t i = 0; i + 1 < f.size(); ++i) {
      Perm& a = f[i];
      Perm& b = f[i + 1];
      bool moved = true;
      while (moved) {
        moved = false;
        std::vector<int> fin = finishing_set(a);
        for (int s : starting_set(b)) {
          if (std::find(fin.begin(), fin.end(), s) == fin.end()) {
            int n = a.size();
            a = compose(a, Perm::transposition(n, s));
            b = compose(Perm::transposition(n, s), b);
            moved = true;
            again = true;
            break;
          }
        }
      }
    }
    f.erase(std::remove_if(f.begin(), f.end(), [](const Perm& p) { return p.is_identity(); }),
            f.end());
  }
}

}  // namespace detail

inline NormalForm normal_form(const BraidWord& w) {
  const int n = w.strands;
  NormalForm nf;
  nf.strands = n;
  if (n == 1) return nf;

  // Rewrite sigma_i^{-1} = Delta^{-1} Q_i with Q_i simple, then push every
  // Delta^{-1} to the far left; passing a factor applies tau once.
  long ninv = 0;
  for (int a : w.letters)
    if (a < 0) ++ninv;
  std::vector<Perm> factors;
  factors.reserve(w.letters.size());
  long seen_inv = 0;  // Delta^{-1} items to the left of the cursor
  const Perm rev = Perm::w0(n);
  for (int a : w.letters) {
    int i = std::abs(a) - 1;
    Perm f;
    if (a > 0) {
      f = Perm::transposition(n, i);
    } else {
      ++seen_inv;
      // Q_i = Delta sigma_i^{-1}: swap the two values i, i+1 after reversing.
      f.img.resize(n);
      for (int p = 0; p < n; ++p) {
        int v = rev.img[p];
        if (v == i)
          v = i + 1;
        else if (v == i + 1)
          v = i;
        f.img[p] = v;
      }
    }
    long c = ninv - seen_inv;  // Delta^{-1} items still to the right
    if (c & 1) f = tau(f);
    factors.push_back(std::move(f));
  }
  nf.inf = -ninv;
  detail::left_normalize(factors);
  while (!factors.empty() && factors.front().is_w0()) {
    ++nf.inf;
    factors.erase(factors.begin());
  }
  nf.factors = std::move(factors);
  return nf;
}

inline bool equivalent(const BraidWord& a, const BraidWord& b) {
  if (a.strands != b.strands) return false;
  return normal_form(a) == normal_form(b);
}

// Shortest positive word for a simple factor, taking left divisors greedily.
inline BraidWord factor_word(const Perm& p, int strands) {
  BraidWord w(strands);
  Perm cur = p;
  while (!cur.is_identity()) {
    std::vector<int> s = starting_set(cur);
    w.push(s.front() + 1);
    cur = compose(Perm::transposition(strands, s.front()), cur);
  }
  return w;
}

// A word representing the normal form: Delta^inf followed by the factor words.
inline BraidWord to_word(const NormalForm& nf) {
  BraidWord w = pow(half_twist_word(nf.strands), static_cast<int>(nf.inf));
  for (const Perm& f : nf.factors) w *= factor_word(f, nf.strands);
  return w;
}

inline std::string to_string(const NormalForm& nf) {
  std::string out = "D^" + std::to_string(nf.inf);
  for (const Perm& f : nf.factors) out += " | " + format_word(factor_word(f, nf.strands));
  return out;
}

}  // namespace cb
