#pragma once
// Parsing of plane curve equations with rational coefficients, and the basic
// exact data attached to a curve: y-degree, discriminant in x, its real roots
// with multiplicities.

#include <cctype>
#include <stdexcept>
#include <string>

#include "curvebraid/poly.hpp"

namespace cb {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A curve with a repeated component; its discriminant vanishes identically.
struct DegenerateCurveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

class PolyParser {
 public:
  explicit PolyParser(std::string text) : s_(std::move(text)) {}

  BPoly parse() {
    BPoly r = expr();
    skip();
    if (i_ < s_.size()) throw ParseError("unexpected character '" + std::string(1, s_[i_]) + "'");
    return r;
  }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool peek(char c) {
    skip();
    return i_ < s_.size() && s_[i_] == c;
  }
  bool eat(char c) {
    if (!peek(c)) return false;
    ++i_;
    return true;
  }
  bool at_base() {
    skip();
    if (i_ >= s_.size()) return false;
    char c = s_[i_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == 'x' || c == 'y' ||
           c == '(';
  }

  BPoly expr() {
    skip();
    bool neg = eat('-');
    if (!neg) eat('+');
    BPoly acc = term();
    if (neg) acc = -acc;
    while (true) {
      if (eat('+'))
        acc += term();
      else if (eat('-'))
        acc -= term();
      else
        break;
    }
    return acc;
  }

  BPoly term() {
    BPoly acc = factor();
    while (true) {
      if (eat('*')) {
        acc *= factor();
      } else if (eat('/')) {
        BPoly d = factor();
        if (d.ydeg() != 0 || d.cy[0].degree() != 0)
          throw ParseError("division is only supported by nonzero constants");
        Rat v = d.cy[0].c[0];
        if (v == 0) throw ParseError("division by zero");
        BPoly inv = BPoly::constant(Rat(1) / v);
        acc *= inv;
      } else if (at_base()) {
        acc *= factor();  // juxtaposition
      } else {
        break;
      }
    }
    return acc;
  }

  BPoly factor() {
    BPoly b = base();
    if (eat('^')) {
      skip();
      bool neg = eat('-');
      int e = integer();
      if (neg) throw ParseError("negative exponents are not supported");
      b = b.pow(e);
    }
    return b;
  }

  BPoly base() {
    skip();
    if (i_ >= s_.size()) throw ParseError("unexpected end of input");
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      BPoly r = expr();
      if (!eat(')')) throw ParseError("missing closing parenthesis");
      return r;
    }
    if (c == '-') {
      ++i_;
      return -factor();
    }
    if (c == 'x') {
      ++i_;
      return BPoly::x();
    }
    if (c == 'y') {
      ++i_;
      return BPoly::y();
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return BPoly::constant(number());
    throw ParseError("unexpected character '" + std::string(1, c) + "'");
  }

  int integer() {
    skip();
    if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_])))
      throw ParseError("expected an integer");
    long v = 0;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      v = v * 10 + (s_[i_++] - '0');
      if (v > 1000000) throw ParseError("exponent too large");
    }
    return static_cast<int>(v);
  }

  Rat number() {
    skip();
    Int ip = 0;
    bool any = false;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      ip = ip * 10 + (s_[i_++] - '0');
      any = true;
    }
    Rat r(ip);
    if (i_ < s_.size() && s_[i_] == '.') {
      ++i_;
      Int fp = 0, den = 1;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
        fp = fp * 10 + (s_[i_++] - '0');
        den *= 10;
        any = true;
      }
      r += Rat(fp, den);
    }
    if (!any) throw ParseError("expected a number");
    return r;
  }

  std::string s_;
  std::size_t i_ = 0;
};

}  // namespace detail

inline BPoly parse_poly(const std::string& text) { return detail::PolyParser(text).parse(); }

// A real disc-root of the discriminant with its multiplicity (valuation).
struct DiscPoint {
  double x;                  // numeric position
  std::pair<Rat, Rat> box;   // exact isolating interval (lo == hi for a rational root)
  int valuation;             // multiplicity in the discriminant
};

struct Curve {
  BPoly f;
  BPoly fy;
  int n = 0;        // y-degree: number of strands
  UPoly disc;       // Res_y(f, df/dy)
  UPoly disc_radical;
  std::vector<DiscPoint> points;  // all real disc roots, ascending in x

  static Curve analyze(const BPoly& poly) {
    Curve c;
    c.f = poly;
    if (poly.ydeg() < 1) throw ParseError("the equation must involve y");
    if (poly.cy.back().degree() != 0)
      throw ParseError("the coefficient of the top power of y must be a nonzero constant");
    c.n = poly.ydeg();
    c.fy = poly.dy();
    c.disc = discriminant_x(poly);
    if (c.disc.is_zero()) throw DegenerateCurveError("the curve has a repeated component");
    auto decomposition = squarefree_decomposition(c.disc);
    c.disc_radical = UPoly::constant(1);
    for (auto& [p, m] : decomposition) c.disc_radical *= p;
    Rat width(1, Int("1000000000000"));
    for (auto& [p, m] : decomposition) {
      for (auto& box : isolate_real_roots(p, width)) {
        DiscPoint dp;
        dp.box = box;
        dp.x = (to_double(box.first) + to_double(box.second)) / 2;
        dp.valuation = m;
        c.points.push_back(dp);
      }
    }
    std::sort(c.points.begin(), c.points.end(),
              [](const DiscPoint& a, const DiscPoint& b) { return a.x < b.x; });
    return c;
  }

  static Curve from_text(const std::string& text) { return analyze(parse_poly(text)); }
};

}  // namespace cb
