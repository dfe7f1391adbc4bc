#pragma once
// The punctured-disk model, arcs as polylines, ambient primitive motions, and
// the extraction of braid words from arcs and motions.
//
// Model configuration for n strands with d of them complex: real punctures at
// 1..n-d on the axis, a conjugate column at n+1 +- j*i for j = 1..d/2.  The
// frame order is (Re, Im) lexicographic.

#include <cassert>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "curvebraid/motion.hpp"

namespace cb {

inline std::vector<cpx> model_config(int n, int d) {
  if (d % 2 != 0 || d < 0 || d > n) throw std::invalid_argument("bad column size");
  std::vector<cpx> pts;
  for (int i = 1; i <= n - d; ++i) pts.emplace_back(i, 0);
  for (int j = d / 2; j >= 1; --j) pts.emplace_back(n + 1, -j);
  for (int j = 1; j <= d / 2; ++j) pts.emplace_back(n + 1, j);
  std::sort(pts.begin(), pts.end(), [](cpx a, cpx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return pts;
}

// An arc between two punctures, as a polyline whose first and last vertices
// coincide with the punctures with the given indices.
struct Arc {
  int a = -1, b = -1;
  std::vector<cpx> pts;
};

inline double dist_point_segment(cpx p, cpx a, cpx b) {
  cpx ab = b - a;
  double len2 = std::norm(ab);
  if (len2 < 1e-300) return std::abs(p - a);
  double t = std::clamp(((p - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

// minimal distance from the arc's interior to punctures, ignoring the arc's
// own endpoints where the polyline touches them
inline double arc_clearance(const Arc& arc, const std::vector<cpx>& punctures) {
  double best = 1e300;
  for (std::size_t i = 0; i + 1 < arc.pts.size(); ++i) {
    for (std::size_t p = 0; p < punctures.size(); ++p) {
      if (static_cast<int>(p) == arc.a && i == 0) continue;
      if (static_cast<int>(p) == arc.b && i + 2 == arc.pts.size()) continue;
      best = std::min(best, dist_point_segment(punctures[p], arc.pts[i], arc.pts[i + 1]));
    }
  }
  return best;
}

inline void subdivide(Arc& arc, double max_len) {
  std::vector<cpx> out;
  for (std::size_t i = 0; i + 1 < arc.pts.size(); ++i) {
    cpx a = arc.pts[i], b = arc.pts[i + 1];
    out.push_back(a);
    int k = static_cast<int>(std::ceil(std::abs(b - a) / max_len));
    for (int j = 1; j < k; ++j) out.push_back(a + (b - a) * (double(j) / k));
  }
  out.push_back(arc.pts.back());
  arc.pts = std::move(out);
}

namespace detail {
inline double cross2(cpx u, cpx v) { return u.real() * v.imag() - u.imag() * v.real(); }

inline bool point_in_triangle(cpx p, cpx a, cpx b, cpx c) {
  double d1 = cross2(b - a, p - a), d2 = cross2(c - b, p - b), d3 = cross2(a - c, p - c);
  bool neg = d1 < 0 || d2 < 0 || d3 < 0, pos = d1 > 0 || d2 > 0 || d3 > 0;
  return !(neg && pos);
}

inline double dist_point_triangle(cpx p, cpx a, cpx b, cpx c) {
  if (point_in_triangle(p, a, b, c)) return 0.0;
  return std::min({dist_point_segment(p, a, b), dist_point_segment(p, b, c),
                   dist_point_segment(p, c, a)});
}

inline double dist_segment_segment(cpx p, cpx q, cpx r, cpx s) {
  double d1 = cross2(q - p, r - p), d2 = cross2(q - p, s - p);
  double d3 = cross2(s - r, p - r), d4 = cross2(s - r, q - r);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return 0.0;
  return std::min({dist_point_segment(r, p, q), dist_point_segment(s, p, q),
                   dist_point_segment(p, r, s), dist_point_segment(q, r, s)});
}

inline bool segment_meets_triangle(cpx p, cpx q, cpx a, cpx b, cpx c) {
  if (point_in_triangle(p, a, b, c) || point_in_triangle(q, a, b, c)) return true;
  return dist_segment_segment(p, q, a, b) < 1e-9 || dist_segment_segment(p, q, b, c) < 1e-9 ||
         dist_segment_segment(p, q, c, a) < 1e-9;
}
}  // namespace detail

// Removes interior vertices whenever the skipped triangle holds no puncture
// and no other strand of the arc.  The strand condition matters: pulling the
// path across a sibling strand keeps it puncture-free but changes the braid
// the arc's swap motion traces, so such removals are rejected.
inline void tighten(Arc& arc, const std::vector<cpx>& punctures, double floor_clear = 0.03) {
  auto& P = arc.pts;
  bool again = true;
  while (again && P.size() > 2) {
    again = false;
    std::size_t i = 1;
    while (i + 1 < P.size()) {
      cpx a = P[i - 1], v = P[i], b = P[i + 1];
      bool ok = true;
      for (const cpx& p : punctures) {
        if (std::abs(p - a) < 1e-12 || std::abs(p - b) < 1e-12) continue;
        if (detail::dist_point_triangle(p, a, v, b) < 1e-9 ||
            dist_point_segment(p, a, b) < floor_clear) {
          ok = false;
          break;
        }
      }
      // A flat triangle sweeps no area, so strands never obstruct it.
      bool flat = std::abs(detail::cross2(v - a, b - a)) <
                  1e-12 + 1e-9 * std::abs(v - a) * std::abs(b - a);
      if (ok && !flat) {
        double xlo = std::min({a.real(), v.real(), b.real()}) - 1e-9;
        double xhi = std::max({a.real(), v.real(), b.real()}) + 1e-9;
        double ylo = std::min({a.imag(), v.imag(), b.imag()}) - 1e-9;
        double yhi = std::max({a.imag(), v.imag(), b.imag()}) + 1e-9;
        for (std::size_t j = 0; j + 1 < P.size(); ++j) {
          if (j + 1 == i || j == i) continue;  // the two edges being replaced
          cpx p = P[j], q = P[j + 1];
          if ((p.real() < xlo && q.real() < xlo) || (p.real() > xhi && q.real() > xhi) ||
              (p.imag() < ylo && q.imag() < ylo) || (p.imag() > yhi && q.imag() > yhi))
            continue;
          // neighbours legitimately touch at a corner; test them shrunk away from it
          if (j + 2 == i) q = a + (p - a) * 1e-6;  // (prev, a): pull the a end toward prev
          if (j == i + 1) p = b + (q - b) * 1e-6;  // (b, next): pull the b end toward next
          if (detail::segment_meets_triangle(p, q, a, v, b)) {
            ok = false;
            break;
          }
        }
      }
      if (ok) {
        P.erase(P.begin() + i);  // retry the same index against its new triangle
        again = true;
      } else {
        ++i;
      }
    }
  }
}

// --- ambient primitive motions ---------------------------------------------

class Primitive {
 public:
  virtual ~Primitive() = default;
  // position at time s in [0,1] of the point that starts at z; map(0,.) = id
  virtual cpx map(double s, cpx z) const = 0;
  virtual int sample_steps() const = 0;
};

using MotionSeq = std::vector<std::shared_ptr<const Primitive>>;

namespace detail {
inline double smoothstep(double u) {
  u = std::clamp(u, 0.0, 1.0);
  return u * u * (3 - 2 * u);
}
}  // namespace detail

// Rigid counterclockwise rotation by 2*pi*turns of the closed disk |z-c|<=r,
// feathered to the identity across (r, r_out).
class Rotate : public Primitive {
 public:
  Rotate(cpx c, double r, double r_out, double turns)
      : c_(c), r_(r), rout_(r_out), turns_(turns) {
    if (!(r_out > r)) throw std::invalid_argument("rotation feather must be positive");
  }
  cpx map(double s, cpx z) const override {
    double rho = std::abs(z - c_);
    if (rho >= rout_) return z;
    double w = rho <= r_ ? 1.0 : detail::smoothstep((rout_ - rho) / (rout_ - r_));
    return c_ + (z - c_) * std::polar(1.0, 2 * 3.14159265358979323846 * turns_ * s * w);
  }
  int sample_steps() const override {
    return std::max(8, static_cast<int>(std::ceil(std::abs(turns_) * 32)));
  }

 private:
  cpx c_;
  double r_, rout_, turns_;
};

// Counterclockwise rotation of the closed annulus r1 <= |z-c| <= r2 by
// 2*pi*turns, feathered to the identity across (r1_in, r1) and (r2, r2_out).
class AnnulusRotate : public Primitive {
 public:
  AnnulusRotate(cpx c, double r1_in, double r1, double r2, double r2_out, double turns)
      : c_(c), r1i_(r1_in), r1_(r1), r2_(r2), r2o_(r2_out), turns_(turns) {
    if (!(r1_in < r1 && r1 < r2 && r2 < r2_out)) throw std::invalid_argument("bad annulus radii");
  }
  cpx map(double s, cpx z) const override {
    double rho = std::abs(z - c_);
    double w = 0;
    if (rho <= r1i_ || rho >= r2o_)
      return z;
    else if (rho < r1_)
      w = detail::smoothstep((rho - r1i_) / (r1_ - r1i_));
    else if (rho <= r2_)
      w = 1;
    else
      w = detail::smoothstep((r2o_ - rho) / (r2o_ - r2_));
    return c_ + (z - c_) * std::polar(1.0, 2 * 3.14159265358979323846 * turns_ * s * w);
  }
  int sample_steps() const override {
    return std::max(8, static_cast<int>(std::ceil(std::abs(turns_) * 32)));
  }

 private:
  cpx c_;
  double r1i_, r1_, r2_, r2o_, turns_;
};

// Carries one point (and, symmetrically, its conjugate) along a straight
// path by a chain of small local translation bumps of radius rho.
class PointPush : public Primitive {
 public:
  PointPush(cpx from, cpx to, double rho, bool with_mirror)
      : from_(from), to_(to), rho_(rho), mirror_(with_mirror) {
    double len = std::abs(to - from);
    steps_ = std::max(1, static_cast<int>(std::ceil(len / (0.4 * rho))));
  }
  cpx map(double s, cpx z) const override {
    double pos = s * steps_;
    int full = static_cast<int>(std::floor(pos));
    for (int k = 0; k < full && k < steps_; ++k) z = bump(z, k, 1.0);
    if (full < steps_) z = bump(z, full, pos - full);
    return z;
  }
  int sample_steps() const override { return std::max(8, 2 * steps_); }

 private:
  cpx center(int k) const { return from_ + (to_ - from_) * (double(k) / steps_); }
  cpx bump(cpx z, int k, double frac) const {
    cpx c = center(k);
    cpx delta = (to_ - from_) * (frac / steps_);
    double u = std::abs(z - c) / rho_;
    cpx out = z + delta * detail::smoothstep(1 - u);
    if (mirror_) {
      double v = std::abs(z - std::conj(c)) / rho_;
      out += std::conj(delta) * detail::smoothstep(1 - v);
    }
    return out;
  }

  cpx from_, to_;
  double rho_;
  bool mirror_;
  int steps_;
};

// Monotone piecewise-linear remap with smoothed time interpolation.
struct PLMap {
  std::vector<std::pair<double, double>> knots;  // (from, to), strictly increasing in both

  double operator()(double x) const {
    if (knots.empty() || x <= knots.front().first)
      return x - (knots.empty() ? 0.0 : knots.front().first - knots.front().second);
    if (x >= knots.back().first) return x - (knots.back().first - knots.back().second);
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
      if (x <= knots[i + 1].first) {
        double t = (x - knots[i].first) / (knots[i + 1].first - knots[i].first);
        return knots[i].second + t * (knots[i + 1].second - knots[i].second);
      }
    }
    return x;
  }
  void validate() const {
    for (std::size_t i = 0; i + 1 < knots.size(); ++i)
      if (!(knots[i].first < knots[i + 1].first && knots[i].second < knots[i + 1].second))
        throw std::invalid_argument("remap knots must increase");
  }
};

// Horizontal remap acting in bands |y -+ level| < w_out (full strength inside
// w_in), identity elsewhere; mirror-symmetric across the real axis.
class HorizontalPL : public Primitive {
 public:
  HorizontalPL(PLMap m, double level, double w_in, double w_out)
      : m_(std::move(m)), level_(level), win_(w_in), wout_(w_out) {
    m_.validate();
    if (!(0 <= w_in && w_in < w_out)) throw std::invalid_argument("bad band widths");
  }
  cpx map(double s, cpx z) const override {
    double dy = std::min(std::abs(z.imag() - level_), std::abs(z.imag() + level_));
    if (dy >= wout_) return z;
    double w = dy <= win_ ? 1.0 : detail::smoothstep((wout_ - dy) / (wout_ - win_));
    return z + s * w * (m_(z.real()) - z.real());
  }
  int sample_steps() const override { return 12; }

 private:
  PLMap m_;
  double level_, win_, wout_;
};

// Vertical remap of the upper half plane (extended oddly to the lower half),
// restricted to the band |x - cx| < w_out; identity near the real axis is
// guaranteed by the first knot.
class VerticalPL : public Primitive {
 public:
  VerticalPL(PLMap m, double cx, double w_in, double w_out)
      : m_(std::move(m)), cx_(cx), win_(w_in), wout_(w_out) {
    m_.validate();
    if (m_.knots.empty() || m_.knots.front().first != m_.knots.front().second)
      throw std::invalid_argument("vertical remap must fix its lowest knot");
  }
  cpx map(double s, cpx z) const override {
    double dx = std::abs(z.real() - cx_);
    if (wout_ < 1e300 && dx >= wout_) return z;
    double w = (wout_ >= 1e300 || dx <= win_)
                   ? 1.0
                   : detail::smoothstep((wout_ - dx) / (wout_ - win_));
    double y = z.imag();
    double ay = std::abs(y);
    if (ay <= m_.knots.front().first) return z;
    double mapped = m_(ay);
    double ny = ay + s * w * (mapped - ay);
    return cpx(z.real(), y >= 0 ? ny : -ny);
  }
  int sample_steps() const override { return 12; }

 private:
  PLMap m_;
  double cx_, win_, wout_;
};

// Reflection conjugate of another motion: mirrors across the real axis.
class Mirrored : public Primitive {
 public:
  explicit Mirrored(std::shared_ptr<const Primitive> inner) : inner_(std::move(inner)) {}
  cpx map(double s, cpx z) const override { return std::conj(inner_->map(s, std::conj(z))); }
  int sample_steps() const override { return inner_->sample_steps(); }

 private:
  std::shared_ptr<const Primitive> inner_;
};

// --- applying motions -------------------------------------------------------

inline std::vector<cpx> apply_motion(const Primitive& f, const std::vector<cpx>& pts,
                                     double s = 1.0) {
  std::vector<cpx> out(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) out[i] = f.map(s, pts[i]);
  return out;
}

namespace detail {

// Appends the image of segment [z0,z1] (endpoint images w0,w1; w0 already
// emitted), splitting until each chord tracks the true image curve closely.
// Uniform pre-subdivision is not enough: across a steep zone of the map, two
// nearby source points can land far apart and the straight chord between the
// images may cut across a puncture the curve actually avoids.  The deviation
// budget shrinks near punctures so a chord can never flip sides of one the
// curve passes closely.
inline void map_segment(const Primitive& f, const std::vector<cpx>& punctures, cpx z0, cpx z1,
                        cpx w0, cpx w1, int depth, std::vector<cpx>& out) {
  cpx zm = 0.5 * (z0 + z1);
  cpx wm = f.map(1.0, zm);
  double dev = std::abs(wm - 0.5 * (w0 + w1));
  double gap = std::numeric_limits<double>::infinity();
  for (cpx p : punctures) gap = std::min(gap, std::abs(wm - p));
  double tol = std::clamp(0.25 * gap, 1e-6, 2e-3);
  if (depth <= 0 || (dev <= tol && std::abs(w1 - w0) <= 0.2)) {
    out.push_back(w1);
    return;
  }
  map_segment(f, punctures, z0, zm, w0, wm, depth - 1, out);
  map_segment(f, punctures, zm, z1, wm, w1, depth - 1, out);
}

}  // namespace detail

// Transports an arc through a motion, subdividing adaptively so the image
// polyline stays faithful, then shortcutting to keep it small.
inline Arc transport(const Primitive& f, Arc arc, const std::vector<cpx>& punctures_after,
                     double pre_step = 0.05) {
  subdivide(arc, pre_step);
  std::vector<cpx> mapped;
  mapped.reserve(arc.pts.size());
  mapped.push_back(f.map(1.0, arc.pts.front()));
  for (std::size_t i = 0; i + 1 < arc.pts.size(); ++i)
    detail::map_segment(f, punctures_after, arc.pts[i], arc.pts[i + 1], mapped.back(),
                        f.map(1.0, arc.pts[i + 1]), 14, mapped);
  arc.pts = std::move(mapped);
  tighten(arc, punctures_after);
  return arc;
}

// Appends sampled frames of a motion to a frame list that starts at `start`.
inline void append_motion_frames(std::vector<std::vector<cpx>>& frames, const Primitive& f) {
  if (frames.empty()) throw std::invalid_argument("need a starting frame");
  std::vector<cpx> start = frames.back();
  int steps = f.sample_steps();
  for (int k = 1; k <= steps; ++k) frames.push_back(apply_motion(f, start, double(k) / steps));
}

inline BraidWord word_of_motion(const MotionSeq& seq, std::vector<cpx> start) {
  std::vector<std::vector<cpx>> frames{std::move(start)};
  for (const auto& f : seq) append_motion_frames(frames, *f);
  return read_motion_word(frames);
}

// --- arc to braid word ------------------------------------------------------

// The braid word of the positive half twist along an arc, read in the frame
// of the given punctures: the endpoints trade places by traveling along the
// arc, each shifted a little to its own right.
inline BraidWord word_of_arc(const Arc& arc, const std::vector<cpx>& punctures) {
  if (arc.pts.size() < 2) throw std::invalid_argument("degenerate arc");
  double clear = arc_clearance(arc, punctures);
  if (clear <= 1e-7) throw MotionError("arc passes too close to a puncture");
  double delta = 0.25 * std::min(clear, 1.0);

  // arclength parameterization
  std::vector<double> cum{0};
  for (std::size_t i = 0; i + 1 < arc.pts.size(); ++i)
    cum.push_back(cum.back() + std::abs(arc.pts[i + 1] - arc.pts[i]));
  double total = cum.back();
  if (total < 1e-12) throw std::invalid_argument("zero length arc");
  auto at = [&](double t) -> std::pair<cpx, cpx> {  // position and unit tangent
    double target = std::clamp(t, 0.0, 1.0) * total;
    std::size_t i = 1;
    while (i + 1 < cum.size() && cum[i] < target) ++i;
    double seg = cum[i] - cum[i - 1];
    double u = seg < 1e-300 ? 0.0 : (target - cum[i - 1]) / seg;
    cpx a = arc.pts[i - 1], b = arc.pts[i];
    cpx tangent = (b - a) / std::max(std::abs(b - a), 1e-300);
    return {a + u * (b - a), tangent};
  };

  int steps = std::max<int>(48, static_cast<int>(std::ceil(total / delta)) * 2);
  std::vector<std::vector<cpx>> frames;
  for (int k = 0; k <= steps; ++k) {
    double t = double(k) / steps;
    std::vector<cpx> f = punctures;
    auto [pu, tu] = at(t);
    auto [pv, tv] = at(1 - t);
    double bump_u = std::sin(3.14159265358979323846 * t);
    double bump_v = std::sin(3.14159265358979323846 * (1 - t));
    f[arc.a] = pu + delta * bump_u * (tu * cpx(0, -1));
    f[arc.b] = pv + delta * bump_v * (tv * cpx(0, 1));
    frames.push_back(std::move(f));
  }
  BraidWord w = read_motion_word(frames);
  w.free_reduce();
  return w;
}

// Chain arcs of the standard frame: straight segments between lexicographically
// consecutive punctures of the model configuration.
inline Arc frame_arc(const std::vector<cpx>& config, int i) {
  Arc arc;
  arc.a = i;
  arc.b = i + 1;
  arc.pts = {config[i], config[i + 1]};
  return arc;
}

// --- straightening a fiber into the model -----------------------------------

// Ambient motion taking an arbitrary conjugate-symmetric configuration to
// model_config(n, d): reals slide to 1..n-d in order, conjugate pairs rise to
// the column ordered by |Im|.  The motion preserves the pointwise imaginary
// order throughout, which pins its homotopy class.
inline MotionSeq spread_motion(const std::vector<cpx>& fiber, int n) {
  if (static_cast<int>(fiber.size()) != n) throw std::invalid_argument("strand count mismatch");
  std::vector<double> reals;
  std::vector<cpx> uppers;
  for (const cpx& z : fiber) {
    if (z.imag() > 1e-9)
      uppers.push_back(z);
    else if (z.imag() >= -1e-9)
      reals.push_back(z.real());
  }
  std::sort(reals.begin(), reals.end());
  std::sort(uppers.begin(), uppers.end(), [](cpx a, cpx b) { return a.imag() < b.imag(); });
  int d = 2 * static_cast<int>(uppers.size());
  if (static_cast<int>(reals.size()) + d != n)
    throw std::invalid_argument("configuration is not conjugate symmetric");

  MotionSeq seq;
  double min_im = uppers.empty() ? 1.0 : uppers.front().imag();

  // slide the reals into 1..n-d
  if (!reals.empty()) {
    PLMap m;
    for (std::size_t i = 0; i < reals.size(); ++i) {
      double from = reals[i], to = double(i + 1);
      if (!m.knots.empty() && from <= m.knots.back().first) from = m.knots.back().first + 1e-9;
      m.knots.emplace_back(from, to);
    }
    // pad so the map is well behaved outside the data
    m.knots.insert(m.knots.begin(), {m.knots.front().first - 2, m.knots.front().second - 2});
    m.knots.emplace_back(m.knots.back().first + 2, m.knots.back().second + 2);
    double w_out = 0.45 * std::min(min_im, 1.0);
    seq.push_back(std::make_shared<HorizontalPL>(std::move(m), 0.0, 0.5 * w_out, w_out));
  }

  // lift the pairs to integer heights 1..d/2
  if (!uppers.empty()) {
    PLMap v;
    double base = 0.45 * std::min(min_im, 1.0);
    v.knots.emplace_back(base, base);
    for (std::size_t j = 0; j < uppers.size(); ++j) {
      double from = uppers[j].imag(), to = double(j + 1);
      if (from <= v.knots.back().first) from = v.knots.back().first + 1e-9;
      v.knots.emplace_back(from, to);
    }
    double top = std::max(v.knots.back().first, v.knots.back().second) + 2;
    v.knots.emplace_back(top, top);
    seq.push_back(std::make_shared<VerticalPL>(std::move(v), 0.0, 0.0, 1e301));
    // carry each level sideways to the column
    for (std::size_t j = 0; j < uppers.size(); ++j) {
      PLMap h;
      double from = uppers[j].real(), to = double(n + 1);
      double lo = std::min(from, to) - 2, hi = std::max(from, to) + 2;
      h.knots.emplace_back(lo, lo);
      h.knots.emplace_back(from, to);
      h.knots.emplace_back(hi, hi);
      seq.push_back(std::make_shared<HorizontalPL>(std::move(h), double(j + 1), 0.3, 0.45));
    }
  }
  return seq;
}

}  // namespace cb
