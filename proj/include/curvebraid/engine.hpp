// Monodromy engine: walks the critical chart from each singular value to the
// base point, conjugating the local skeleton product through the named model
// diffeomorphisms met along the way.  The result is one braid factor per real
// critical value, all expressed in the frame of the base fiber.
#ifndef CURVEBRAID_ENGINE_HPP
#define CURVEBRAID_ENGINE_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "curvebraid/braid.hpp"
#include "curvebraid/chart.hpp"
#include "curvebraid/diffeo.hpp"
#include "curvebraid/disk.hpp"
#include "curvebraid/garside.hpp"
#include "curvebraid/oracle.hpp"
#include "curvebraid/skeleton.hpp"

namespace cb {

struct EngineError : std::runtime_error {
  explicit EngineError(const std::string& what) : std::runtime_error(what) {}
};

struct FactorEntry {
  int j = 0;              // 1-based index, nearest the base point first
  double x = 0;           // critical value
  SingularityRecord rec;  // classified local data
  BraidWord braid;        // factor in the frame of the base fiber
};

struct Factorization {
  int n = 0;       // strand count
  int base_d = 0;  // nonreal roots in the base fiber
  std::vector<FactorEntry> entries;  // j ascending, x descending
  CriticalChart chart;
};

namespace detail {

// Change in the number of nonreal fiber roots when crossing a critical value
// from left to right.
inline int column_step(const SingularityRecord& rec) {
  bool odd = rec.nu % 2 != 0;
  switch (rec.type) {
    case SingType::a1: return -2;
    case SingType::a2: return 2;
    case SingType::d1:
    case SingType::f1:
    case SingType::g1: return odd ? -2 : 0;
    case SingType::d2:
    case SingType::f2:
    case SingType::g2: return odd ? 2 : 0;
    default: return 0;
  }
}

inline int column_count(const Curve& curve, double x) {
  int d = 0;
  for (const FiberRoot& r : fiber_roots(curve, cpx(x, 0)))
    if (!r.real) ++d;
  return d;
}

// gap[k] = nonreal roots over the gap left of the k-th critical value; gap[0]
// covers the stretch holding the base point.  Anchored by a fiber probe at the
// base point and checked against a second probe left of the last point.
inline std::vector<int> gap_profile(const CurveAnalysis& an) {
  const std::vector<SingularityRecord>& recs = an.singular;
  std::vector<int> gap(recs.size() + 1, 0);
  gap[0] = column_count(an.curve, an.chart.x0);
  int n = an.curve.n;
  for (std::size_t k = 1; k < gap.size(); ++k) {
    gap[k] = gap[k - 1] - column_step(recs[k - 1]);
    if (gap[k] < 0 || gap[k] > n || gap[k] % 2 != 0)
      throw EngineError("chart traversal produced an impossible fiber split");
  }
  if (!recs.empty()) {
    double span = an.chart.x0 - recs.back().x;
    double left = recs.back().x - std::max(1.0, 0.1 * span);
    if (column_count(an.curve, left) != gap.back())
      throw EngineError("fiber split disagrees with the chart traversal");
  }
  return gap;
}

inline DeltaSpec record_spec(const SingularityRecord& rec) {
  DeltaSpec s;
  s.type = rec.type;
  s.k = rec.k;
  s.l = rec.l;
  s.nu = rec.type == SingType::c ? rec.m : rec.nu;
  s.pair_swapped = rec.a_less_b;
  s.mirror = rec.mirror;
  return s;
}

inline DeltaSpec switch_spec(const BPointRecord& rec) {
  DeltaSpec s;
  s.type = SingType::com;
  s.k = rec.k;
  s.l = rec.l;
  s.orientation = rec.orientation;
  return s;
}

// Deltas met on the walk from the fiber right of the j-th critical value to
// the base point: per gap the switching points left to right, then the
// half-loop around the critical value bounding the gap on the right.
inline std::vector<NamedDelta> prefix_chain(const CurveAnalysis& an, int j,
                                            const std::vector<int>& gap) {
  const CriticalChart& chart = an.chart;
  int n = an.curve.n;
  std::vector<NamedDelta> out;
  int d = gap[j - 1];
  auto push_switches = [&](int g) {
    // b_points are stored descending in x; a gap is traversed left to right.
    for (auto it = chart.b_points.rbegin(); it != chart.b_points.rend(); ++it) {
      if (it->gap != g) continue;
      NamedDelta f = build_delta(switch_spec(it->rec), n, d);
      if (f.d_tgt != d)
        throw EngineError("a switching point changed the fiber split");
      out.push_back(std::move(f));
    }
  };
  for (int k = j - 1; k >= 1; --k) {
    push_switches(k);
    NamedDelta f = build_delta(record_spec(an.singular[k - 1]), n, d);
    if (f.d_tgt != gap[k - 1])
      throw EngineError("fiber split mismatch along the conjugating chain");
    d = f.d_tgt;
    out.push_back(std::move(f));
  }
  push_switches(0);
  return out;
}

}  // namespace detail

// Ordered model diffeomorphisms conjugating the local product of the j-th
// critical value into the base frame, j = 1 nearest the base point.
inline std::vector<NamedDelta> conjugating_prefix(int j, const CurveAnalysis& an) {
  if (j < 1 || j > static_cast<int>(an.singular.size()))
    throw EngineError("critical value index out of range");
  return detail::prefix_chain(an, j, detail::gap_profile(an));
}

inline Factorization braid_monodromy(const CurveAnalysis& an) {
  std::vector<int> gap = detail::gap_profile(an);
  int n = an.curve.n;
  Factorization out;
  out.n = n;
  out.base_d = gap[0];
  out.chart = an.chart;
  std::vector<cpx> base = model_config(n, gap[0]);
  for (std::size_t idx = 0; idx < an.singular.size(); ++idx) {
    int j = static_cast<int>(idx) + 1;
    const SingularityRecord& rec = an.singular[idx];
    GeneralizedSkeleton sk = generalized_skeleton(rec, n, gap[idx]);
    std::vector<NamedDelta> prefix = detail::prefix_chain(an, j, gap);
    std::map<std::pair<int, int>, BraidWord> words;
    BraidWord braid(n);
    for (const Arc& twist : sk.twists) {
      std::pair<int, int> key{twist.a, twist.b};
      auto found = words.find(key);
      if (found == words.end()) {
        Arc carried = twist;
        for (const NamedDelta& f : prefix) carried = transport(f, carried);
        found = words.emplace(key, word_of_arc(carried, base)).first;
      }
      braid *= found->second;
    }
    braid.free_reduce();
    out.entries.push_back({j, rec.x, rec, std::move(braid)});
  }
  return out;
}

inline Factorization braid_monodromy(const Curve& curve,
                                     const AnalysisOptions& opt = {}) {
  return braid_monodromy(analyze_curve(curve.f, opt));
}

struct VerifyReport {
  bool permutations_ok = true;
  bool exponents_ok = true;
  bool product_ok = true;
  bool oracle_checked = false;
  long exponent_total = 0;
  std::string detail;  // first failure, empty when every check passed
  bool ok() const { return permutations_ok && exponents_ok && product_ok; }
};

namespace detail {

inline std::vector<int> cycle_type(const std::vector<int>& perm) {
  std::vector<int> out;
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t p = i; !seen[p]; p = static_cast<std::size_t>(perm[p])) {
      seen[p] = true;
      ++len;
    }
    out.push_back(len);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// One counterclockwise loop from the base point around every critical value,
// tracked numerically and aligned to the model frame of the base fiber.
inline BraidWord boundary_braid(const Curve& curve, const CriticalChart& chart) {
  std::vector<FiberRoot> base = fiber_roots(curve, cpx(chart.x0, 0));
  std::vector<cpx> start;
  start.reserve(base.size());
  int d = 0;
  for (const FiberRoot& r : base) {
    start.push_back(r.value);
    if (!r.real) ++d;
  }
  int n = static_cast<int>(start.size());
  BraidWord spread(n);
  if (d > 0) spread = word_of_motion(spread_motion(start, n), start);
  double leftmost = chart.x0 - 2.0;
  for (const auto& np : chart.n_points)
    leftmost = std::min(leftmost, np.x - 2.0 * np.alpha);
  for (const auto& bp : chart.b_points)
    leftmost = std::min(leftmost, bp.rec.x - 2.0 * bp.delta);
  cpx center(0.5 * (chart.x0 + leftmost), 0);
  double radius = chart.x0 - center.real();
  FiberSolver solver(curve.f);
  TrackedBraid t =
      track_resolved(solver, circle_polyline(center, radius, 96), 0.05, start);
  BraidWord w = conjugated(t.word, spread);
  w.free_reduce();
  return w;
}

}  // namespace detail

// Checks a factorization against invariants of its records and, optionally,
// against the tracked braid of the loop around all critical values.
inline VerifyReport verify_factorization(const Factorization& f,
                                         const Curve& curve,
                                         bool with_oracle = true) {
  VerifyReport rep;
  auto fail = [&rep](bool& flag, const std::string& msg) {
    flag = false;
    if (rep.detail.empty()) rep.detail = msg;
  };
  BraidWord prod(f.n);
  for (const FactorEntry& e : f.entries) {
    BraidWord local = local_braid_word(e.rec);
    std::vector<int> want = detail::cycle_type(local.permutation());
    for (int i = local.strands; i < f.n; ++i) want.push_back(1);
    std::sort(want.begin(), want.end());
    if (detail::cycle_type(e.braid.permutation()) != want)
      fail(rep.permutations_ok,
           "entry " + std::to_string(e.j) + " permutation type mismatch");
    long exp = e.braid.exponent_sum();
    rep.exponent_total += exp;
    if (exp != e.rec.valuation)
      fail(rep.exponents_ok,
           "entry " + std::to_string(e.j) + " exponent sum mismatch");
    prod *= e.braid;
  }
  if (with_oracle) {
    rep.oracle_checked = true;
    BraidWord boundary = detail::boundary_braid(curve, f.chart);
    if (!equivalent(prod, boundary))
      fail(rep.product_ok, "factor product differs from the boundary braid");
  }
  return rep;
}

}  // namespace cb

#endif  // CURVEBRAID_ENGINE_HPP
