// Numeric braid oracle: tracks the fiber roots of a curve along polyline
// loops in the x-plane and reads braid words off the tracked motion.  A full
// factorization loops around every critical value of a chart and conjugates
// each word into the model frame of the base fiber.
#ifndef CURVEBRAID_ORACLE_HPP
#define CURVEBRAID_ORACLE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "curvebraid/braid.hpp"
#include "curvebraid/chart.hpp"
#include "curvebraid/continuation.hpp"
#include "curvebraid/curve.hpp"
#include "curvebraid/disk.hpp"
#include "curvebraid/motion.hpp"
#include "curvebraid/roots.hpp"

namespace cb {

// One tracked loop: the polyline walked, the fiber samples along it, and the
// braid word read from the real-order exchanges of the tracked roots.
struct TrackedBraid {
  std::vector<cpx> loop;
  std::vector<std::vector<cpx>> samples;
  BraidWord word;
};

// Sampled circle, closed exactly on its first vertex.
inline std::vector<cpx> circle_polyline(cpx center, double radius, int segments = 48,
                                        double start_angle = 0) {
  std::vector<cpx> pts;
  pts.reserve(segments + 1);
  for (int k = 0; k < segments; ++k) {
    double a = start_angle + 2 * 3.14159265358979323846 * k / segments;
    pts.push_back(center + std::polar(radius, a));
  }
  pts.push_back(pts.front());
  return pts;
}

namespace detail {

inline TrackedBraid track_once(const FiberSolver& solver, const std::vector<cpx>& loop,
                               double step, const std::vector<cpx>& start) {
  TrackedBraid out;
  out.loop = loop;
  PathTracker tracker(solver, loop.front(), start);
  MotionReader reader(start);
  out.samples.push_back(start);
  for (std::size_t s = 0; s + 1 < loop.size(); ++s) {
    cpx a = loop[s], b = loop[s + 1];
    double len = std::abs(b - a);
    if (len == 0) continue;
    int m = std::max(1, static_cast<int>(std::ceil(len / step)));
    for (int k = 1; k <= m; ++k) {
      tracker.move_to(a + (b - a) * (static_cast<double>(k) / m));
      reader.advance(tracker.roots());
      out.samples.push_back(tracker.roots());
    }
  }
  out.word = reader.word();
  out.word.free_reduce();
  if (std::abs(loop.front() - loop.back()) < 1e-12) {
    // A closed loop must bring the root set back to itself.
    double scale = 1, worst = 0;
    for (const cpx& z : out.samples.front()) scale = std::max(scale, std::abs(z));
    for (const cpx& z : out.samples.back()) {
      double best = scale;
      for (const cpx& z0 : out.samples.front()) best = std::min(best, std::abs(z - z0));
      worst = std::max(worst, best);
    }
    if (worst > 1e-6 * scale)
      throw NumericError("tracked roots do not close up around the loop");
  }
  return out;
}

// Retracks with halved sampling until every crossing is cleanly resolved.
inline TrackedBraid track_resolved(const FiberSolver& solver, const std::vector<cpx>& loop,
                                   double initial_step, const std::vector<cpx>& start) {
  double step = initial_step;
  for (int attempt = 0;; ++attempt) {
    try {
      return track_once(solver, loop, step, start);
    } catch (const MotionError&) {
      if (attempt >= 10)
        throw NumericError("crossings along the loop could not be resolved at the finest step");
      step /= 2;
    }
  }
}

}  // namespace detail

// Tracks the fiber once around a polyline loop that avoids the critical
// values of the curve.
inline TrackedBraid track_loop(const Curve& curve, const std::vector<cpx>& loop,
                               double initial_step = 0.05) {
  if (loop.size() < 2) throw NumericError("a loop needs at least two vertices");
  if (!(initial_step > 0)) throw NumericError("the sampling step must be positive");
  FiberSolver solver(curve.f);
  PathTracker seed(solver, loop.front());
  return detail::track_resolved(solver, loop, initial_step, seed.roots());
}

// The standard loop around the j-th critical value of a chart: out from the
// base point along the real axis, dodging every earlier disk through its
// lower semicircle, once counterclockwise around the target disk, and back
// the same way.
inline std::vector<cpx> gamma_loop(const CriticalChart& chart, std::size_t j,
                                   int circle_segments = 48, int semi_segments = 24) {
  constexpr double kPi = 3.14159265358979323846;
  std::vector<cpx> out;
  out.push_back(cpx(chart.x0, 0));
  for (std::size_t k = 0; k < j; ++k) {
    const CriticalChart::NPoint& p = chart.n_points[k];
    for (int s = 0; s <= semi_segments; ++s)
      out.push_back(p.x + std::polar(p.alpha, -kPi * s / semi_segments));
  }
  std::size_t stem = out.size();
  const CriticalChart::NPoint& p = chart.n_points[j];
  for (int s = 0; s < circle_segments; ++s)
    out.push_back(p.x + std::polar(p.alpha, 2 * kPi * s / circle_segments));
  out.push_back(out[stem]);
  for (std::size_t k = stem; k-- > 0;) out.push_back(out[k]);
  return out;
}

struct OracleEntry {
  double x = 0;    // critical value the loop encircles
  BraidWord word;  // monodromy in the model frame of the base fiber
};

struct OracleFactorization {
  std::vector<OracleEntry> entries;  // chart order, largest x first
  BraidWord spread;                  // base fiber to model alignment word
};

// Tracks a loop around every critical value of the chart.  Words come out in
// the frame of the model configuration: real roots ascending, then conjugate
// pairs by height, carried over by the spreading motion of the base fiber.
inline OracleFactorization oracle_factorization(const Curve& curve, const CriticalChart& chart,
                                                double initial_step = 0.05) {
  OracleFactorization out;
  std::vector<FiberRoot> base = fiber_roots(curve, cpx(chart.x0, 0));
  std::vector<cpx> start;
  start.reserve(base.size());
  int d = 0;
  for (const FiberRoot& r : base) {
    start.push_back(r.value);
    if (!r.real) ++d;
  }
  int n = static_cast<int>(start.size());
  out.spread = BraidWord(n);
  if (d > 0) out.spread = word_of_motion(spread_motion(start, n), start);
  FiberSolver solver(curve.f);
  for (std::size_t j = 0; j < chart.n_points.size(); ++j) {
    TrackedBraid t = detail::track_resolved(solver, gamma_loop(chart, j), initial_step, start);
    BraidWord w = conjugated(t.word, out.spread);
    w.free_reduce();
    out.entries.push_back({chart.n_points[j].x, std::move(w)});
  }
  return out;
}

}  // namespace cb

#endif  // CURVEBRAID_ORACLE_HPP
