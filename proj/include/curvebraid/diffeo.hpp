#pragma once
// Named model diffeomorphisms: each singularity type contributes a motion of
// the model disk, assembled from rotations, annulus rotations, point pushes,
// horizontal slides and column shifts.  Every builder tracks the puncture
// configuration while it assembles the motion and finally checks that the
// punctures land on a model configuration again.

#include <algorithm>
#include <optional>

#include "curvebraid/disk.hpp"
#include "curvebraid/singtype.hpp"

namespace cb {

struct DeltaSpec {
  SingType type = SingType::a1;
  int k = 1, l = 2;           // index pair of the local branch group
  int nu = 0;                 // exponent for d1,d2,f1,f2,g1,g2; branch count for c
  int orientation = 1;        // com only: -1, 0 or +1
  bool pair_swapped = false;  // e2 with the wider triple nearer the axis
  bool mirror = false;        // g1,g2 with negative line slope
};

struct NamedDelta {
  DeltaSpec spec;
  int n = 0, d_src = 0, d_tgt = 0;
  std::vector<cpx> src, tgt;
  MotionSeq prims;
  std::vector<int> strand_map;  // puncture index in src -> index in tgt
};

namespace detail {

struct DeltaBuilder {
  std::vector<cpx> cfg;
  MotionSeq seq;
  int n;

  DeltaBuilder(int n_, int d) : cfg(model_config(n_, d)), n(n_) {}

  void push_prim(std::shared_ptr<const Primitive> p) {
    cfg = apply_motion(*p, cfg);
    seq.push_back(std::move(p));
  }

  void rotate(cpx c, double r, double turns) {
    double gap = 1e300;
    for (const cpx& z : cfg) {
      double d = std::abs(z - c) - r;
      if (d > 1e-6) gap = std::min(gap, d);
    }
    double feather = std::min(0.5, gap / 2);
    if (feather < 1e-3) throw std::logic_error("rotation has no room to feather");
    push_prim(std::make_shared<Rotate>(c, r, r + feather, turns));
  }

  void annulus(cpx c, double r1, double r2, double turns) {
    double inner = 0, outer = 1e300;
    for (const cpx& z : cfg) {
      double d = std::abs(z - c);
      if (d < r1 - 1e-6) inner = std::max(inner, d);
      if (d > r2 + 1e-6) outer = std::min(outer, d - r2);
    }
    double r1_in = (r1 + inner) / 2;
    double r2_out = r2 + std::min(0.5, outer / 2);
    push_prim(std::make_shared<AnnulusRotate>(c, r1_in, r1, r2, r2_out, turns));
  }

  // carries the puncture at `from` (and its conjugate) to `to`
  void push_pair(cpx from, cpx to) {
    double statics = 1e300;
    for (const cpx& z : cfg) {
      if (std::abs(z - from) < 1e-9 || std::abs(z - std::conj(from)) < 1e-9) continue;
      statics = std::min(statics, dist_point_segment(z, from, to));
      statics = std::min(statics, dist_point_segment(z, std::conj(from), std::conj(to)));
    }
    double min_im = std::min(std::abs(from.imag()), std::abs(to.imag()));
    double rho = std::min({0.9 * statics, 0.9 * min_im, 0.5});
    if (rho < 1e-4) throw std::logic_error("point push has no room");
    push_prim(std::make_shared<PointPush>(from, to, rho, true));
  }

  double axis_band() const {
    double min_im = 1.0;
    for (const cpx& z : cfg)
      if (std::abs(z.imag()) > 1e-9) min_im = std::min(min_im, std::abs(z.imag()));
    return 0.45 * min_im;
  }

  // slides points on the real axis: knots (from, to), interpolated affinely
  void hslide(std::vector<std::pair<double, double>> knots) {
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
    double lo = 1e300, hi = -1e300;
    for (auto [f, t] : knots) {
      lo = std::min({lo, f, t});
      hi = std::max({hi, f, t});
    }
    // pad with fixed anchors between the slide and its unmoved neighbors
    double pad_lo = lo - 1, pad_hi = hi + 1;
    for (const cpx& z : cfg) {
      if (std::abs(z.imag()) > 1e-9) continue;
      bool moved = false;
      for (auto [f, t] : knots) moved = moved || std::abs(z.real() - f) < 1e-9;
      if (moved) continue;
      if (z.real() < lo - 1e-9) pad_lo = std::max(pad_lo, (z.real() + lo) / 2);
      if (z.real() > hi + 1e-9) pad_hi = std::min(pad_hi, (z.real() + hi) / 2);
    }
    // an axis puncture inside the affected zone but outside the affine span
    // would be dragged partway, which no formula intends
    double span_lo = knots.front().first, span_hi = knots.back().first;
    for (const cpx& z : cfg) {
      if (std::abs(z.imag()) > 1e-9) continue;
      double x = z.real();
      bool listed = false;
      for (auto [f, t] : knots) listed = listed || std::abs(x - f) < 1e-9;
      if (!listed && x > lo + 1e-9 && x < hi - 1e-9 &&
          (x < span_lo - 1e-9 || x > span_hi + 1e-9))
        throw std::logic_error("real slide would drag a bystander puncture");
    }
    knots.insert(knots.begin(), {pad_lo, pad_lo});
    knots.emplace_back(pad_hi, pad_hi);
    PLMap m{std::move(knots)};
    double w = axis_band();
    push_prim(std::make_shared<HorizontalPL>(std::move(m), 0.0, w / 2, w));
  }

  // shifts the column up (freeing slot 1) or down (closing slot 1)
  void cshift(bool up) {
    int top = 1;
    for (const cpx& z : cfg)
      if (std::abs(z.real() - (n + 1)) < 1e-6 && z.imag() > 0.5)
        top = std::max(top, static_cast<int>(std::lround(z.imag())) + (up ? 0 : -1));
    PLMap m;
    m.knots.emplace_back(0.5, 0.5);
    if (up) {
      m.knots.emplace_back(1, 2);
      if (top > 1) m.knots.emplace_back(top, top + 1);
      m.knots.emplace_back(top + 2.5, top + 2.5);
    } else {
      m.knots.emplace_back(2, 1);
      if (top > 1) m.knots.emplace_back(top + 1, top);
      m.knots.emplace_back(top + 3, top + 3);
    }
    double w = 1.0;
    for (const cpx& z : cfg) {
      double dx = std::abs(z.real() - (n + 1));
      if (dx > 1e-6) w = std::min(w, dx);
    }
    push_prim(std::make_shared<VerticalPL>(std::move(m), double(n + 1), 0.45 * w / 2, 0.45 * w));
  }
};

inline std::optional<std::vector<int>> match_config(const std::vector<cpx>& got,
                                                    const std::vector<cpx>& want,
                                                    double tol = 1e-5) {
  if (got.size() != want.size()) return std::nullopt;
  std::vector<int> map(got.size(), -1);
  std::vector<bool> used(want.size(), false);
  for (std::size_t i = 0; i < got.size(); ++i) {
    for (std::size_t j = 0; j < want.size(); ++j) {
      if (!used[j] && std::abs(got[i] - want[j]) < tol) {
        map[i] = static_cast<int>(j);
        used[j] = true;
        break;
      }
    }
    if (map[i] < 0) return std::nullopt;
  }
  return map;
}

}  // namespace detail

// Builds the model motion of one singularity type.  k, l and nu follow the
// local classification; d_src is the column size before the move.
inline NamedDelta build_delta(const DeltaSpec& spec, int n, int d_src) {
  using detail::DeltaBuilder;
  DeltaBuilder b(n, d_src);
  const int k = spec.k, l = spec.l, nu = spec.nu;
  const int d = d_src;
  const double col = n + 1;
  const cpx slot1{col, 1}, slot2{col, 2};

  auto open_up = [&](int from, int by) {
    // slides reals [from, n-d] right by `by`
    if (from <= n - d)
      b.hslide({{double(from), double(from + by)}, {double(n - d), double(n - d + by)}});
  };
  auto close_down = [&](int from, int by) {
    // slides reals [from, n-d+by] left by `by` (after a pair left the axis)
    if (from <= n - d + by)
      b.hslide({{double(from), double(from - by)}, {double(n - d + by), double(n - d)}});
  };

  switch (spec.type) {
    case SingType::a1:
      b.push_pair(slot1, {k + 0.5, 0.5});
      open_up(k, 2);
      b.rotate({k + 0.5, 0}, 0.5, 0.25);
      b.cshift(false);
      break;
    case SingType::a2:
      b.rotate({k + 0.5, 0}, 0.5, 0.25);
      b.cshift(true);
      b.push_pair({k + 0.5, 0.5}, slot1);
      close_down(k + 2, 2);
      break;
    case SingType::b:
      b.rotate({k + 0.5, 0}, 0.5, 1.0);
      break;
    case SingType::c:
      b.rotate({(k + l) / 2.0, 0}, (l - k) / 2.0, 0.5);
      break;
    case SingType::d1:
      if (nu % 2 == 1) {
        b.push_pair(slot1, {k + 0.5, 0.5});
        open_up(k, 2);
        b.rotate({k + 0.5, 0}, 0.5, nu / 4.0);
        b.cshift(false);
      } else {
        b.rotate({k + 0.5, 0}, 0.5, nu / 4.0);
      }
      break;
    case SingType::d2:
      if (nu % 2 == 1) {
        b.rotate({k + 0.5, 0}, 0.5, nu / 4.0);
        b.cshift(true);
        b.push_pair({k + 0.5, 0.5}, slot1);
        close_down(k + 2, 2);
      } else {
        b.push_pair(slot1, {k + 0.5, 0.5});
        open_up(k, 2);
        b.rotate({k + 0.5, 0}, 0.5, nu / 4.0);
        close_down(k + 2, 2);
        b.push_pair({k + 0.5, 0.5}, slot1);
      }
      break;
    case SingType::d3: {
      const double s3 = std::sqrt(3.0) / 4;
      b.push_pair(slot1, {k + 0.25, s3});
      open_up(k, 1);
      b.rotate({k + 0.5, 0}, 0.5, 1.0 / 3);
      b.hslide({{double(k + 1), double(k)}, {double(n - d + 1), double(n - d)}});
      b.push_pair({k + 0.25, s3}, slot1);
      break;
    }
    case SingType::e1:
      b.push_pair(slot1, {k + 0.5, 0.5});
      b.rotate({k + 0.5, 0}, 0.5, 0.75);
      b.push_pair({k + 0.5, 0.5}, slot1);
      break;
    case SingType::e2: {
      const double s3 = std::sqrt(3.0) / 4;
      cpx tri_in{l - 0.25, s3}, tri_out{k + 0.25, s3};
      if (spec.pair_swapped) std::swap(tri_in, tri_out);
      b.push_pair(slot1, tri_in);
      b.push_pair(slot2, tri_out);
      b.rotate({k + 0.5, 0}, 0.5, 1.0 / 3);
      b.push_pair(tri_out, slot2);
      b.push_pair(tri_in, slot1);
      break;
    }
    case SingType::f1:
      if (nu % 2 == 1) {
        b.push_pair(slot1, {k + 1.0, 1});
        open_up(k + 1, 2);
        b.hslide({{double(k), double(k + 1)}});
        b.rotate({k + 1.0, 0}, 1.0, nu / 4.0);
        b.cshift(false);
      } else {
        b.rotate({k + 1.0, 0}, 1.0, nu / 4.0);
      }
      break;
    case SingType::f2:
      if (nu % 2 == 1) {
        b.rotate({k + 1.0, 0}, 1.0, nu / 4.0);
        b.cshift(true);
        b.push_pair({k + 1.0, 1}, slot1);
        b.hslide({{double(k + 1), double(k)}});
        close_down(k + 3, 2);
      } else {
        b.push_pair(slot1, {k + 1.0, 1});
        open_up(k + 1, 2);
        b.hslide({{double(k), double(k + 1)}});
        b.rotate({k + 1.0, 0}, 1.0, nu / 4.0);
        b.hslide({{double(k + 1), double(k)}});
        close_down(k + 3, 2);
        b.push_pair({k + 1.0, 1}, slot1);
      }
      break;
    case SingType::g1:
      if (nu % 2 == 1) {
        open_up(k + 1, 2);
        b.push_pair(slot1, {k + 1.0, 0.5});
        b.annulus({k + 1.0, 0}, 0.75, 1.25, 0.5);
        b.rotate({k + 1.0, 0}, 0.5, nu / 4.0);
        b.hslide({{k + 0.5, double(k)}, {k + 1.5, double(k + 1)}});
        b.cshift(false);
      } else {
        b.hslide({{double(k), k + 0.5}});
        b.annulus({k + 1.5, 0}, 0.75, 1.25, 0.5);
        b.rotate({k + 1.5, 0}, 0.5, nu / 4.0);
        b.hslide({{double(k + 1), double(k)}, {double(k + 2), double(k + 1)}});
        b.hslide({{k + 2.5, double(k + 2)}});
      }
      break;
    case SingType::g2:
      if (nu % 2 == 1) {
        b.hslide({{double(k), k + 0.5}});
        b.annulus({k + 1.5, 0}, 0.75, 1.25, 0.5);
        b.rotate({k + 1.5, 0}, 0.5, nu / 4.0);
        b.cshift(true);
        b.push_pair({k + 1.5, 0.5}, slot1);
        b.hslide({{k + 2.5, double(k)}});
        close_down(k + 3, 2);
      } else {
        open_up(k + 1, 2);
        b.push_pair(slot1, {k + 1.0, 0.5});
        b.annulus({k + 1.0, 0}, 0.75, 1.25, 0.5);
        b.rotate({k + 1.0, 0}, 0.5, nu / 4.0);
        b.push_pair({k + 1.0, 0.5}, slot1);
        b.hslide({{double(k + 2), double(k)}, {double(n - d + 2), double(n - d)}});
      }
      break;
    case SingType::g3: {
      const double s3 = std::sqrt(3.0) / 4;
      b.hslide({{double(k + 1), k + 0.5}});
      b.push_pair(slot1, {k - 0.25, s3});
      b.rotate({double(k), 0}, 0.5, 1.0 / 3);
      b.push_pair({k - 0.25, s3}, slot1);
      b.hslide({{k + 0.5, double(k + 1)}});
      break;
    }
    case SingType::com:
      if (spec.orientation != 0) {
        double sign = spec.orientation > 0 ? 1.0 : -1.0;
        b.rotate({col, k + 0.5}, 0.5, sign * 0.5);
        b.rotate({col, -(k + 0.5)}, 0.5, -sign * 0.5);
      }
      break;
  }

  NamedDelta out;
  out.spec = spec;
  out.n = n;
  out.d_src = d_src;
  out.src = model_config(n, d_src);
  if (spec.mirror) {
    MotionSeq mirrored;
    for (auto& p : b.seq) mirrored.push_back(std::make_shared<Mirrored>(p));
    b.seq = std::move(mirrored);
    // retrack the punctures through the mirrored motion
    b.cfg = out.src;
    for (const auto& p : b.seq) b.cfg = apply_motion(*p, b.cfg);
  }
  out.prims = std::move(b.seq);

  for (int dt : {d_src, d_src - 2, d_src + 2}) {
    if (dt < 0 || dt > n) continue;
    std::vector<cpx> want = model_config(n, dt);
    if (auto m = detail::match_config(b.cfg, want)) {
      out.d_tgt = dt;
      out.tgt = std::move(want);
      out.strand_map = std::move(*m);
      return out;
    }
  }
  throw std::logic_error(std::string("motion for ") + to_string(spec.type) +
                         " does not land on a model configuration");
}

// Transports an arc through a named motion; endpoint indices are remapped to
// the target configuration and endpoints snapped onto their punctures.
inline Arc transport(const NamedDelta& f, Arc arc) {
  std::vector<cpx> cfg = f.src;
  for (std::size_t i = 0; i < f.prims.size(); ++i) {
    std::vector<cpx> next = apply_motion(*f.prims[i], cfg);
    arc = transport(*f.prims[i], std::move(arc), next);
    cfg = std::move(next);
  }
  arc.a = f.strand_map[arc.a];
  arc.b = f.strand_map[arc.b];
  arc.pts.front() = f.tgt[arc.a];
  arc.pts.back() = f.tgt[arc.b];
  tighten(arc, f.tgt);
  return arc;
}

// The braid word of the puncture motion itself, read in the model frame.
inline BraidWord word_of_delta(const NamedDelta& f) {
  return word_of_motion(f.prims, f.src);
}

}  // namespace cb
