#pragma once
// Words in the Artin generators of the braid group on a fixed number of strands.

#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cb {

// Letter +i stands for sigma_i, -i for sigma_i^{-1}, with 1 <= i <= strands-1.
// Words compose left to right: (a * b) means "do a, then b".
struct BraidWord {
  int strands = 1;
  std::vector<int> letters;

  BraidWord() = default;
  explicit BraidWord(int n) : strands(n) {
    if (n < 1) throw std::invalid_argument("strand count must be positive");
  }
  BraidWord(int n, std::vector<int> w) : BraidWord(n) {
    letters = std::move(w);
    for (int a : letters) check_letter(a);
  }

  void check_letter(int a) const {
    if (a == 0 || std::abs(a) >= strands)
      throw std::invalid_argument("braid letter out of range");
  }

  void push(int a) {
    check_letter(a);
    letters.push_back(a);
  }

  bool empty() const { return letters.empty(); }
  std::size_t size() const { return letters.size(); }

  BraidWord& operator*=(const BraidWord& o) {
    if (o.strands != strands) throw std::invalid_argument("strand count mismatch");
    letters.insert(letters.end(), o.letters.begin(), o.letters.end());
    return *this;
  }
  friend BraidWord operator*(BraidWord a, const BraidWord& b) {
    a *= b;
    return a;
  }

  BraidWord inverse() const {
    BraidWord r(strands);
    r.letters.reserve(letters.size());
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) r.letters.push_back(-*it);
    return r;
  }

  long exponent_sum() const {
    long s = 0;
    for (int a : letters) s += (a > 0) ? 1 : -1;
    return s;
  }

  // Cancels adjacent inverse pairs until none remain.
  void free_reduce() {
    std::vector<int> out;
    out.reserve(letters.size());
    for (int a : letters) {
      if (!out.empty() && out.back() == -a)
        out.pop_back();
      else
        out.push_back(a);
    }
    letters = std::move(out);
  }

  // perm[p] = final position of the strand starting at position p (0-based).
  std::vector<int> permutation() const {
    std::vector<int> pos(strands);       // strand -> current position
    std::iota(pos.begin(), pos.end(), 0);
    std::vector<int> at(strands);        // position -> strand
    std::iota(at.begin(), at.end(), 0);
    for (int a : letters) {
      int i = std::abs(a) - 1;
      int u = at[i], v = at[i + 1];
      at[i] = v;
      at[i + 1] = u;
      pos[u] = i + 1;
      pos[v] = i;
    }
    return pos;
  }
};

// g^{-1} w g
inline BraidWord conjugated(const BraidWord& w, const BraidWord& g) {
  return g.inverse() * w * g;
}

// Delta_n = (s1)(s2 s1)(s3 s2 s1)...(s_{n-1} ... s1)
inline BraidWord half_twist_word(int n) {
  BraidWord w(n);
  for (int k = 1; k < n; ++k)
    for (int i = k; i >= 1; --i) w.push(i);
  return w;
}

inline BraidWord full_twist_word(int n) { return half_twist_word(n) * half_twist_word(n); }

inline BraidWord pow(const BraidWord& w, int e) {
  BraidWord base = e >= 0 ? w : w.inverse();
  BraidWord r(w.strands);
  for (int k = 0; k < std::abs(e); ++k) r *= base;
  return r;
}

// --- text formats ---------------------------------------------------------

enum class WordStyle { ascii, sigma };

namespace detail {
inline std::string subscript_digits(int v) {
  static const char* sub[10] = {"₀", "₁", "₂", "₃", "₄",
                                "₅", "₆", "₇", "₈", "₉"};
  std::string s = std::to_string(v), out;
  for (char c : s) out += sub[c - '0'];
  return out;
}
inline std::string superscript_int(int v) {
  static const char* sup[10] = {"⁰", "¹", "²", "³", "⁴",
                                "⁵", "⁶", "⁷", "⁸", "⁹"};
  std::string out = v < 0 ? "⁻" : "";
  for (char c : std::to_string(std::abs(v))) out += sup[c - '0'];
  return out;
}
}  // namespace detail

// Renders with runs of equal letters grouped into powers, e.g. "s1^3 s2^-1" or
// sigma-subscript notation.
inline std::string format_word(const BraidWord& w, WordStyle style = WordStyle::ascii) {
  std::string out;
  std::size_t i = 0;
  while (i < w.letters.size()) {
    std::size_t j = i;
    while (j < w.letters.size() && w.letters[j] == w.letters[i]) ++j;
    int idx = std::abs(w.letters[i]);
    int exp = static_cast<int>(j - i) * (w.letters[i] > 0 ? 1 : -1);
    if (style == WordStyle::ascii) {
      if (!out.empty()) out += ' ';
      out += 's' + std::to_string(idx);
      if (exp != 1) out += '^' + std::to_string(exp);
    } else {
      out += "σ" + detail::subscript_digits(idx);
      if (exp != 1) out += detail::superscript_int(exp);
    }
    i = j;
  }
  if (out.empty()) out = style == WordStyle::ascii ? "e" : "e";
  return out;
}

// Parses "s1 s2^-1 s1^3" (separators: spaces, '*', '.', none between tokens).
// Also accepts sigma-notation with subscript/superscript digits as produced above.
inline BraidWord parse_word(const std::string& text, int strands) {
  BraidWord w(strands);
  std::size_t i = 0;
  auto skip_sep = [&] {
    while (i < text.size() &&
           (text[i] == ' ' || text[i] == '*' || text[i] == '.' || text[i] == '\t' ||
            text[i] == '\n'))
      ++i;
  };
  auto starts_with = [&](const char* s) {
    return text.compare(i, std::char_traits<char>::length(s), s) == 0;
  };
  auto utf8_digit = [&](const char* const table[10], int& digit) {
    for (int d = 0; d < 10; ++d)
      if (starts_with(table[d])) {
        digit = d;
        i += std::char_traits<char>::length(table[d]);
        return true;
      }
    return false;
  };
  static const char* sub[10] = {"₀", "₁", "₂", "₃", "₄",
                                "₅", "₆", "₇", "₈", "₉"};
  static const char* sup[10] = {"⁰", "¹", "²", "³", "⁴",
                                "⁵", "⁶", "⁷", "⁸", "⁹"};
  skip_sep();
  if (text.compare(i, 1, "e") == 0 && i + 1 == text.size()) return w;
  while (i < text.size()) {
    int idx = 0;
    if (text[i] == 's' || text[i] == 'S') {
      ++i;
      if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
        throw std::invalid_argument("expected generator index in braid word");
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        idx = idx * 10 + (text[i++] - '0');
    } else if (starts_with("σ")) {
      i += 2;
      int d;
      if (!utf8_digit(sub, d)) throw std::invalid_argument("expected subscript index after sigma");
      idx = d;
      while (utf8_digit(sub, d)) idx = idx * 10 + d;
    } else {
      throw std::invalid_argument("unexpected character in braid word");
    }
    int exp = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      bool neg = false;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) neg = text[i++] == '-';
      if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
        throw std::invalid_argument("expected exponent in braid word");
      exp = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        exp = exp * 10 + (text[i++] - '0');
      if (neg) exp = -exp;
    } else if (i < text.size() && (starts_with("⁻") || starts_with("⁰") ||
                                   starts_with("¹") || starts_with("²") ||
                                   starts_with("³") || starts_with("⁴") ||
                                   starts_with("⁵") || starts_with("⁶") ||
                                   starts_with("⁷") || starts_with("⁸") ||
                                   starts_with("⁹"))) {
      bool neg = false;
      if (starts_with("⁻")) {
        neg = true;
        i += 3;
      }
      int d;
      exp = 0;
      bool any = false;
      while (utf8_digit(sup, d)) {
        exp = exp * 10 + d;
        any = true;
      }
      if (!any) throw std::invalid_argument("expected superscript exponent");
      if (neg) exp = -exp;
    }
    for (int k = 0; k < std::abs(exp); ++k) w.push(exp >= 0 ? idx : -idx);
    skip_sep();
  }
  return w;
}

}  // namespace cb
