#pragma once
// Geometry of a real plane curve over the x axis: certified fiber roots,
// clusters of colliding strands at critical values, classification of the
// supported singularity types, Lefschetz pairs, switching points where two
// conjugate strand pairs exchange imaginary order, and the critical chart
// that assembles all of it.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "curvebraid/continuation.hpp"
#include "curvebraid/curve.hpp"
#include "curvebraid/poly.hpp"
#include "curvebraid/roots.hpp"
#include "curvebraid/singtype.hpp"

namespace cb {

// Options shared by every analysis entry point.
struct AnalysisOptions {
  double precision = 1e-10;  // enclosure radius accepted for fiber roots
  double probe_scale = 1.0;  // scales the side probe offsets
  int b_samples = 128;       // samples per segment in the switching scan
};

struct GenericityReport {
  struct Item {
    bool pass = true;
    bool evaluated = false;
    std::string witness;
  };
  // 0: every discriminant zero is real, 1: one singular point per vertical
  // line, 2: finitely many switching points, 3: switching points are simple,
  // 4: switching points avoid critical values.
  Item cond[5];
  bool all() const {
    for (const Item& c : cond)
      if (!c.pass) return false;
    return true;
  }
};

struct GenericityError : std::runtime_error {
  GenericityReport report;
  explicit GenericityError(const std::string& what, GenericityReport rep = {})
      : std::runtime_error(what), report(std::move(rep)) {}
};

// A certified fiber root: the true root lies within radius of value.
struct FiberRoot {
  cpx value;
  double radius = 0;
  bool real = false;
};

// A classified singular point or branch point over one critical value.
struct SingularityRecord {
  double x = 0;
  int curve_index = 0;  // index into Curve::points
  SingType type = SingType::a1;
  int m = 0;              // branch count for transversal crossings
  int nu = 0;             // tangency order for the d1/d2/f/g families
  bool a_less_b = false;  // double cusp: smaller cusp coefficient below
  bool mirror = false;    // reflected variant (d3, g1, g2, g3)
  int valuation = 0;      // multiplicity in the discriminant
  double y0 = 0;          // height of the singular point
  int k = 0, l = 0;       // strand interval met by the local cluster
  std::pair<int, int> exponent{1, 1};  // reduced local branch exponent
};

// A point where two conjugate strand pairs exchange imaginary order.
struct BPointRecord {
  double x = 0;
  int k = 0, l = 0;     // the adjacent pair ranks that meet
  int orientation = 0;  // +1 / -1 for a crossing, 0 for a tangential touch
};

struct ChartBPoint {
  BPointRecord rec;
  double delta = 0;  // disk radius around the point
  int gap = 0;       // number of critical values to its right
};

struct CriticalChart {
  struct NPoint {
    double x = 0;
    double alpha = 0;  // disk radius
    int curve_index = 0;
  };
  std::vector<NPoint> n_points;       // descending in x
  std::vector<ChartBPoint> b_points;  // descending in x
  double x0 = 1;                      // base point on the real axis
};

struct CurveAnalysis {
  Curve curve;
  GenericityReport genericity;
  CriticalChart chart;
  std::vector<SingularityRecord> singular;  // descending in x
};

// The colliding fiber roots over one critical value.
struct LocalCluster {
  double y0 = 0;     // cluster centre (real)
  int mu = 0;        // number of colliding strands
  double sep = 0;    // distance from the centre to the nearest other strand
  double x_ref = 0;  // x where the cluster was solved
  double h_cap = 0;  // largest safe probe offset
};

namespace detail {

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

// Exact conversion of a double to a rational.
inline Rat dyadic(double v) {
  if (v == 0) return Rat(0);
  int e = 0;
  double m = std::frexp(v, &e);
  long long mant = std::llround(std::ldexp(m, 53));  // exact: |mant| < 2^53
  int shift = e - 53;
  Rat r = Rat(Int(mant), Int(1));
  if (shift >= 0) return r * Rat(Int(1) << shift, Int(1));
  return r / Rat(Int(1) << -shift, Int(1));
}

inline std::pair<int, int> reduced(int p, int q) {
  int g = std::gcd(p, q);
  return {p / g, q / g};
}

// Number of distinct real roots of p.
inline int real_root_count(const UPoly& p) {
  if (p.degree() < 1) return 0;
  Rat b = cauchy_root_bound(p) + 1;
  return SturmChain(p).count(-b, b);
}

inline std::vector<cpx> fiber_values(const FiberSolver& solver, cpx x) {
  try {
    return solver.roots(x);
  } catch (const std::runtime_error& e) {
    throw NumericError(std::string("fiber solve failed: ") + e.what());
  }
}

}  // namespace detail

// Solves the fiber over x and certifies every root with an enclosure radius.
// Over real x the roots are split exactly into real ones and conjugate
// pairs; real roots come first, in ascending order.
inline std::vector<FiberRoot> fiber_roots(const Curve& curve, cpx x, double precision = 1e-10) {
  FiberSolver solver(curve.f);
  std::vector<cpx> z = detail::fiber_values(solver, x);
  std::vector<cpx> c = solver.coefficients(x);
  std::vector<cpx> dc(c.size() > 1 ? c.size() - 1 : 0);
  for (std::size_t i = 0; i + 1 < c.size(); ++i) dc[i] = c[i + 1] * cpx(double(i + 1));

  std::vector<FiberRoot> out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    cpx p = detail::horner(c, z[i]);
    cpx dp = detail::horner(dc, z[i]);
    double r = std::abs(dp) == 0 ? 1e300 : curve.n * std::abs(p) / std::abs(dp);
    if (!(r <= precision))
      throw NumericError("a fiber root over x=" + detail::fmt(x.real()) +
                         " cannot be enclosed at the requested precision");
    out[i] = {z[i], r, false};
  }

  if (x.imag() == 0) {
    int expected = detail::real_root_count(curve.f.at_x(detail::dyadic(x.real())));
    std::sort(out.begin(), out.end(), [](const FiberRoot& a, const FiberRoot& b) {
      return std::abs(a.value.imag()) < std::abs(b.value.imag());
    });
    int n = static_cast<int>(out.size());
    if (expected > n) throw NumericError("fiber reality count mismatch");
    if (expected < n) {
      double re = expected > 0 ? std::abs(out[expected - 1].value.imag()) : 0.0;
      double im = std::abs(out[expected].value.imag());
      if (50 * re >= im)
        throw NumericError("cannot separate real strands from complex ones over x=" +
                           detail::fmt(x.real()));
    }
    for (int i = 0; i < expected; ++i) {
      out[i].real = true;
      out[i].value = cpx(out[i].value.real(), 0);
    }
    // complex approximations of a real fiber pair up conjugately
    std::vector<cpx> rest;
    for (int i = expected; i < n; ++i) rest.push_back(out[i].value);
    while (!rest.empty()) {
      cpx z0 = rest.back();
      rest.pop_back();
      double best = 1e300;
      std::size_t bi = rest.size();
      for (std::size_t i = 0; i < rest.size(); ++i) {
        double d = std::abs(rest[i] - std::conj(z0));
        if (d < best) {
          best = d;
          bi = i;
        }
      }
      if (bi == rest.size() || best > 1e-6 * (1 + std::abs(z0)))
        throw NumericError("complex strands do not pair conjugately over x=" +
                           detail::fmt(x.real()));
      rest.erase(rest.begin() + bi);
    }
  }

  std::sort(out.begin(), out.end(), [](const FiberRoot& a, const FiberRoot& b) {
    if (a.real != b.real) return a.real;
    if (a.real) return a.value.real() < b.value.real();
    if (a.value.imag() != b.value.imag()) return a.value.imag() < b.value.imag();
    return a.value.real() < b.value.real();
  });
  return out;
}

// Locates the cluster of fiber roots colliding over curve.points[index].
inline LocalCluster find_cluster(const Curve& curve, int index, const AnalysisOptions& opt = {}) {
  (void)opt;
  const DiscPoint& pt = curve.points.at(index);
  Rat lo = pt.box.first, hi = pt.box.second;
  if (lo != hi) {
    Rat width = Rat(Int(1), Int(1) << 60);
    if (hi - lo > width && curve.disc_radical.eval(lo) * curve.disc_radical.eval(hi) < 0) {
      auto r = detail::refine_isolating(curve.disc_radical, lo, hi, width);
      lo = r.first;
      hi = r.second;
    }
  }
  double xr = to_double((lo + hi) / 2);

  FiberSolver solver(curve.f);
  std::vector<cpx> z = detail::fiber_values(solver, cpx(xr));
  const int n = static_cast<int>(z.size());
  double scale = 1.0;
  for (cpx v : z) scale = std::max(scale, std::abs(v));
  double tau = 0.02 * scale;

  // connected components of the fiber under distance tau
  std::vector<int> comp(n, -1);
  int nc = 0;
  for (int i = 0; i < n; ++i) {
    if (comp[i] >= 0) continue;
    comp[i] = nc;
    std::vector<int> stack{i};
    while (!stack.empty()) {
      int a = stack.back();
      stack.pop_back();
      for (int b = 0; b < n; ++b)
        if (comp[b] < 0 && std::abs(z[a] - z[b]) < tau) {
          comp[b] = nc;
          stack.push_back(b);
        }
    }
    ++nc;
  }
  std::vector<std::vector<int>> groups(nc);
  for (int i = 0; i < n; ++i) groups[comp[i]].push_back(i);
  std::vector<int> multi;
  for (int g = 0; g < nc; ++g)
    if (groups[g].size() > 1) multi.push_back(g);
  if (multi.empty())
    throw NumericError("no colliding strands over the critical value x=" + detail::fmt(pt.x));

  double gl = index > 0 ? pt.x - curve.points[index - 1].x : 1e300;
  double gr = index + 1 < static_cast<int>(curve.points.size())
                  ? curve.points[index + 1].x - pt.x
                  : 1e300;

  int chosen = multi[0];
  if (multi.size() > 1) {
    // The genuine cluster has collapsed at x; a close pair that collides
    // elsewhere keeps its diameter on a vertical detour into the upper
    // half plane.
    double h_test = std::min({gl / 4, gr / 4, 0.02 * (1 + std::abs(xr))});
    auto diameter = [&](const std::vector<cpx>& w, const std::vector<int>& g) {
      double d = 0;
      for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i + 1; j < g.size(); ++j)
          d = std::max(d, std::abs(w[g[i]] - w[g[j]]));
      return d;
    };
    bool tried = false, have_lifted = false;
    std::vector<cpx> lifted;
    std::vector<int> genuine;
    for (int g : multi) {
      double near = diameter(z, groups[g]);
      if (near < 1e-9 * scale) {
        genuine.push_back(g);
        continue;
      }
      if (!tried) {
        tried = true;
        try {
          PathTracker tr(solver, cpx(xr), z);
          tr.move_to(cpx(xr, h_test));
          lifted = tr.roots();
          have_lifted = true;
        } catch (const NumericError&) {
        }
      }
      if (!have_lifted || diameter(lifted, groups[g]) > 3 * near) genuine.push_back(g);
    }
    if (genuine.empty())
      throw NumericError("no colliding strands over the critical value x=" + detail::fmt(pt.x));
    if (genuine.size() > 1)
      throw GenericityError("two distinct singular points over the line x=" + detail::fmt(pt.x));
    chosen = genuine[0];
  }

  const std::vector<int>& members = groups[chosen];
  LocalCluster cl;
  cl.mu = static_cast<int>(members.size());
  cpx mean = 0;
  for (int i : members) mean += z[i];
  mean /= double(cl.mu);
  if (std::abs(mean.imag()) > 1e-7 * scale)
    throw NumericError("the strands colliding over x=" + detail::fmt(pt.x) +
                       " have no real centre");
  cl.y0 = mean.real();
  cl.x_ref = xr;
  cl.sep = 4 * scale;
  for (int i = 0; i < n; ++i)
    if (comp[i] != chosen) cl.sep = std::min(cl.sep, std::abs(z[i] - cpx(cl.y0)));
  cl.h_cap = std::min(std::min(gl, gr) / 4, 0.05 * (1 + std::abs(xr)));
  return cl;
}

namespace detail {

// The certified fiber a little to one side of a critical value, split into
// cluster strands and the rest.
struct ProbeView {
  double h = 0;
  std::vector<double> reals;          // all certified real strands, ascending
  std::vector<double> cluster_reals;  // the real cluster strands
  std::vector<cpx> cluster_others;    // the complex cluster strands
  int below = 0;                      // real strands outside the cluster under y0
};

inline std::optional<ProbeView> raw_probe(const Curve& curve, const LocalCluster& cl, int side,
                                          double h, const AnalysisOptions& opt) {
  std::vector<FiberRoot> roots;
  try {
    // Close to the critical value the colliding strands limit the attainable
    // enclosure radius; the reality split stays exact under a loose one.
    roots = fiber_roots(curve, cpx(cl.x_ref + side * h), std::max(opt.precision, 1e-6));
  } catch (const NumericError&) {
    return std::nullopt;
  }
  ProbeView out;
  out.h = h;
  double win = cl.sep / 3;
  for (const FiberRoot& r : roots) {
    double d = std::abs(r.value - cpx(cl.y0));
    if (d >= win && d < 2 * win) return std::nullopt;  // ambiguous membership
    bool member = d < win;
    if (r.real) {
      out.reals.push_back(r.value.real());
      if (member)
        out.cluster_reals.push_back(r.value.real());
      else if (r.value.real() < cl.y0)
        ++out.below;
    } else if (member) {
      out.cluster_others.push_back(r.value);
    }
  }
  if (out.cluster_reals.size() + out.cluster_others.size() != std::size_t(cl.mu))
    return std::nullopt;  // probe too far: the cluster has dispersed
  return out;
}

struct StableProbe {
  ProbeView at_h, at_half;
};

// Shrinks the probe offset until two consecutive scales agree on the strand
// counts, which puts the probe inside the asymptotic regime of the cluster.
inline StableProbe stable_probe(const Curve& curve, const LocalCluster& cl, int side, double h0,
                                const AnalysisOptions& opt) {
  double h = h0;
  for (int i = 0; i < 26; ++i, h /= 2) {
    std::optional<ProbeView> a = raw_probe(curve, cl, side, h, opt);
    if (!a) continue;
    std::optional<ProbeView> b = raw_probe(curve, cl, side, h / 2, opt);
    if (!b) continue;
    if (a->reals.size() == b->reals.size() &&
        a->cluster_reals.size() == b->cluster_reals.size() && a->below == b->below)
      return {*a, *b};
  }
  throw NumericError("side fibers near x=" + fmt(cl.x_ref) + " do not stabilize");
}

// Classification of the cluster over curve.points[index]; k and l are left
// for lefschetz_impl.
inline SingularityRecord classify_impl(const Curve& curve, const LocalCluster& cl, int index,
                                       const AnalysisOptions& opt) {
  const DiscPoint& pt = curve.points[index];
  SingularityRecord rec;
  rec.x = pt.x;
  rec.curve_index = index;
  rec.valuation = pt.valuation;
  rec.y0 = cl.y0;
  const int v = pt.valuation;
  const int mu = cl.mu;

  double h0 = std::min(cl.h_cap, std::max(1e-7, opt.probe_scale * cl.h_cap));
  StableProbe right = stable_probe(curve, cl, +1, h0, opt);
  StableProbe left = stable_probe(curve, cl, -1, h0, opt);
  const int rp = static_cast<int>(right.at_h.cluster_reals.size());
  const int rm = static_cast<int>(left.at_h.cluster_reals.size());

  auto unsupported = [&] {
    return GenericityError("unsupported singularity over x=" + fmt(pt.x) + " (" +
                           std::to_string(mu) + " strands, valuation " + std::to_string(v) + ")");
  };
  const double tiny = 1e-9 * (1 + std::abs(cl.y0));
  auto near_one = [](double s) { return s > 0.75 && s < 1.3; };

  // Offset growth exponents of the real cluster strands on one side; 99
  // marks a strand glued to the centre.
  auto offset_exps = [&](const StableProbe& p) {
    std::vector<double> s;
    for (std::size_t i = 0; i < p.at_h.cluster_reals.size(); ++i) {
      double o1 = std::abs(p.at_h.cluster_reals[i] - cl.y0);
      double o2 = std::abs(p.at_half.cluster_reals[i] - cl.y0);
      if (o1 < tiny || o2 < tiny) {
        s.push_back(99);
        continue;
      }
      s.push_back(std::log2(o1 / o2));
    }
    return s;
  };

  // m smooth branches crossing transversally
  if (v == mu * (mu - 1) && rp == mu && rm == mu) {
    std::vector<double> s = offset_exps(right);
    bool lines = true;
    for (double si : s) lines = lines && (near_one(si) || si == 99);
    std::vector<double> slope;
    for (double y : right.at_h.cluster_reals) slope.push_back((y - cl.y0) / right.at_h.h);
    std::sort(slope.begin(), slope.end());
    double span = std::max(1.0, slope.back() - slope.front());
    for (std::size_t i = 0; i + 1 < slope.size(); ++i)
      if (slope[i + 1] - slope[i] < 1e-3 * span) lines = false;
    if (lines) {
      rec.type = SingType::c;
      rec.m = mu;
      rec.exponent = {1, 1};
      return rec;
    }
  }

  if (mu == 2) {
    rec.exponent = v == 1 ? std::pair<int, int>{1, 2} : reduced(v, 2);
    if (v == 1 && rp == 2 && rm == 0) {
      rec.type = SingType::a1;
      return rec;
    }
    if (v == 1 && rp == 0 && rm == 2) {
      rec.type = SingType::a2;
      return rec;
    }
    if (v == 4 && rp == 2 && rm == 2) {
      rec.type = SingType::b;
      return rec;
    }
    if (v >= 3) {
      bool even = v % 2 == 0;
      if (rp == 2 && rm == (even ? 2 : 0)) {
        rec.type = SingType::d1;
        rec.nu = v;
        return rec;
      }
      if (rp == 0 && rm == (even ? 0 : 2)) {
        rec.type = SingType::d2;
        rec.nu = v;
        return rec;
      }
    }
    throw unsupported();
  }

  if (mu == 3) {
    if (v == 4 && rp == 1 && rm == 1) {
      rec.type = SingType::d3;
      rec.mirror = right.at_h.cluster_reals[0] < cl.y0;
      rec.exponent = {2, 3};
      return rec;
    }
    // f against g: an f cluster keeps one strand glued to the centre of the
    // other two, a g cluster separates every strand linearly.
    const StableProbe& wide = rp >= rm ? right : left;
    auto deltas = [&](const ProbeView& view) {
      std::vector<double> d;
      if (view.cluster_reals.size() == 3) {
        for (int i = 0; i < 3; ++i) {
          double others = 0;
          for (int j = 0; j < 3; ++j)
            if (j != i) others += view.cluster_reals[j];
          d.push_back(std::abs(view.cluster_reals[i] - others / 2));
        }
      } else if (view.cluster_reals.size() == 1 && view.cluster_others.size() == 2) {
        cpx centre = 0.5 * (view.cluster_others[0] + view.cluster_others[1]);
        d.push_back(std::abs(view.cluster_reals[0] - centre.real()));
      }
      return d;
    };
    // Probe at finer offsets as well: the square-root tails of the other
    // branches perturb the growth rate at coarse offsets.
    int wside = rp >= rm ? +1 : -1;
    std::vector<ProbeView> levels{wide.at_h, wide.at_half};
    while (levels.size() < 6) {
      std::optional<ProbeView> vv = raw_probe(curve, cl, wside, levels.back().h / 2, opt);
      if (!vv || vv->cluster_reals.size() != levels.front().cluster_reals.size()) break;
      levels.push_back(*vv);
    }
    std::vector<double> dmin;
    for (const ProbeView& view : levels) {
      std::vector<double> d = deltas(view);
      if (d.empty()) break;
      dmin.push_back(*std::min_element(d.begin(), d.end()));
    }
    if (dmin.size() < 2) throw unsupported();
    double m1 = dmin[dmin.size() - 2], m2 = dmin.back();
    bool f_flavor = false, g_flavor = false;
    if (m1 < tiny && m2 < tiny) {
      f_flavor = true;
    } else if (m1 >= tiny && m2 >= tiny) {
      double s = std::log2(m1 / m2);
      f_flavor = s >= 1.4;
      g_flavor = near_one(s);
    }
    bool pat1 = false, pat2 = false;
    auto patterns = [&](int nu) {
      bool odd = nu % 2 == 1;
      pat1 = odd ? (rp == 3 && rm == 1) : (rp == 3 && rm == 3);
      pat2 = odd ? (rp == 1 && rm == 3) : (rp == 1 && rm == 1);
    };
    if (g_flavor && v - 4 >= 3) {
      int nu = v - 4;
      patterns(nu);
      if (!pat1 && !pat2) throw unsupported();
      rec.type = pat1 ? SingType::g1 : SingType::g2;
      rec.nu = nu;
      rec.exponent = reduced(nu, 2);
      // the transversal smooth branch fixes the mirror flag
      double line_y = 0, line_h = 0;
      int line_side = 1;
      if (nu % 2 == 1) {  // the lone real strand on the narrow side
        const StableProbe& narrow = pat1 ? left : right;
        line_side = pat1 ? -1 : 1;
        line_y = narrow.at_h.cluster_reals[0];
        line_h = narrow.at_h.h;
      } else if (rp == 1) {  // one real strand on both sides
        line_y = right.at_h.cluster_reals[0];
        line_h = right.at_h.h;
      } else {  // three real strands: the branch with unit growth
        std::vector<double> s = offset_exps(right);
        int cnt = 0;
        std::size_t at = 0;
        for (std::size_t i = 0; i < s.size(); ++i)
          if (near_one(s[i])) {
            ++cnt;
            at = i;
          }
        if (cnt != 1) throw unsupported();
        line_y = right.at_h.cluster_reals[at];
        line_h = right.at_h.h;
      }
      rec.mirror = (line_y - cl.y0) / (line_side * line_h) < 0;
      return rec;
    }
    if (f_flavor && v % 3 == 0 && v / 3 >= 3) {
      int nu = v / 3;
      patterns(nu);
      if (!pat1 && !pat2) throw unsupported();
      rec.type = pat1 ? SingType::f1 : SingType::f2;
      rec.nu = nu;
      rec.exponent = reduced(nu, 2);
      return rec;
    }
    throw unsupported();
  }

  if (mu == 4 && rp == 2 && rm == 2) {
    if (v == 8) {  // smooth branch through a vertical cusp
      rec.type = SingType::g3;
      rec.exponent = {2, 3};
      double o0 = right.at_h.cluster_reals[0] - cl.y0;
      double o1 = right.at_h.cluster_reals[1] - cl.y0;
      rec.mirror = (std::abs(o0) > std::abs(o1) ? o0 : o1) < 0;
      return rec;
    }
    if (v == 18) {  // two opposite vertical branch points
      rec.type = SingType::e1;
      rec.exponent = {3, 2};
      return rec;
    }
  }

  if (mu == 6 && v == 20 && rp == 2 && rm == 2) {
    // two vertical cusps opening up and down
    double below = 0, above = 0;
    for (double y : right.at_h.cluster_reals)
      (y < cl.y0 ? below : above) = std::abs(y - cl.y0);
    int re_up = 0, re_down = 0;
    for (cpx zc : right.at_h.cluster_others) ++(zc.real() > cl.y0 ? re_up : re_down);
    if (below == 0 || above == 0 || re_up != 2 || re_down != 2) throw unsupported();
    double ratio = std::pow(below / above, 3.0);  // estimates the coefficient ratio
    if (std::abs(ratio - 1) < 0.004)
      throw GenericityError("the two cusps over x=" + fmt(pt.x) + " have equal coefficients");
    rec.type = SingType::e2;
    rec.a_less_b = below < above;
    rec.exponent = {1, 3};
    return rec;
  }

  throw unsupported();
}

inline int expected_span(const SingularityRecord& rec) {
  switch (rec.type) {
    case SingType::a1:
    case SingType::a2:
    case SingType::b:
    case SingType::d1:
    case SingType::e1:
    case SingType::e2:
    case SingType::g3:
      return 2;
    case SingType::c:
      return rec.m;
    case SingType::d3:
      return 1;
    case SingType::d2:
      return rec.nu % 2 ? 2 : 0;
    case SingType::f1:
    case SingType::g1:
      return 3;
    case SingType::f2:
    case SingType::g2:
      return rec.nu % 2 ? 3 : 1;
    default:
      return 0;
  }
}

// The strand interval (k, l) occupied by the cluster in the fiber next to
// the critical value, probed on the side where the local braid is read.
inline std::pair<int, int> lefschetz_impl(const Curve& curve, const LocalCluster& cl,
                                          const SingularityRecord& rec,
                                          const AnalysisOptions& opt) {
  bool odd = rec.nu % 2 == 1;
  bool from_left = rec.type == SingType::a2 || rec.type == SingType::g2 ||
                   ((rec.type == SingType::d2 || rec.type == SingType::f2) && odd);
  int side = from_left ? -1 : 1;
  double h0 = std::min(cl.h_cap, std::max(1e-7, opt.probe_scale * cl.h_cap));
  StableProbe p = stable_probe(curve, cl, side, h0, opt);
  int span = expected_span(rec);
  if (static_cast<int>(p.at_h.cluster_reals.size()) != span)
    throw NumericError("the side fiber near x=" + fmt(rec.x) +
                       " shows an unexpected strand count");
  int k = 1 + p.at_h.below;
  return {k, k + std::max(span - 1, 0)};
}

}  // namespace detail

inline SingularityRecord classify_singularity(const Curve& curve, int index,
                                              const AnalysisOptions& opt = {}) {
  LocalCluster cl = find_cluster(curve, index, opt);
  return detail::classify_impl(curve, cl, index, opt);
}

inline std::pair<int, int> lefschetz_pair(const Curve& curve, const SingularityRecord& rec,
                                          const AnalysisOptions& opt = {}) {
  LocalCluster cl = find_cluster(curve, rec.curve_index, opt);
  return detail::lefschetz_impl(curve, cl, rec, opt);
}

namespace detail {

struct BScanOut {
  std::vector<BPointRecord> points;  // ascending in x
  std::string bad3, bad4, bad5;      // first witnesses against conditions 3..5
};

// Bisects a sign change of the imaginary gap between two upper strands.
inline double refine_crossing(const FiberSolver& solver, const std::vector<cpx>& seed,
                              double x_seed, double L, double R, int i, int j, bool lower,
                              double xscale) {
  PathTracker tr(solver, cpx(x_seed), seed);
  auto g_at = [&](double x) {
    tr.move_to(cpx(x));
    const std::vector<cpx>& z = tr.roots();
    double si = lower ? -z[i].imag() : z[i].imag();
    double sj = lower ? -z[j].imag() : z[j].imag();
    return si - sj;
  };
  double a = L, b = R, ga = g_at(L);
  while (b - a > 1e-11 * xscale) {
    double m = 0.5 * (a + b);
    double gm = g_at(m);
    if (gm == 0) return m;
    if ((ga < 0) != (gm < 0))
      b = m;
    else {
      a = m;
      ga = gm;
    }
  }
  return 0.5 * (a + b);
}

// Ternary search for the minimum of the absolute imaginary gap.
inline std::pair<double, double> refine_touch(const FiberSolver& solver,
                                              const std::vector<cpx>& seed, double x_seed,
                                              double L, double R, int i, int j, bool lower) {
  PathTracker tr(solver, cpx(x_seed), seed);
  auto g_at = [&](double x) {
    tr.move_to(cpx(x));
    const std::vector<cpx>& z = tr.roots();
    double si = lower ? -z[i].imag() : z[i].imag();
    double sj = lower ? -z[j].imag() : z[j].imag();
    return si - sj;
  };
  double a = L, b = R;
  for (int it = 0; it < 200 && b - a > 1e-13 * (1 + std::abs(a) + std::abs(b)); ++it) {
    double m1 = a + (b - a) / 3, m2 = b - (b - a) / 3;
    if (std::abs(g_at(m1)) <= std::abs(g_at(m2)))
      b = m2;
    else
      a = m1;
  }
  double xm = 0.5 * (a + b);
  return {xm, g_at(xm)};
}

// Scans one segment between consecutive critical values for points where
// two conjugate strand pairs meet in imaginary part.
inline void scan_segment(const Curve& curve, const FiberSolver& solver, double a, double b,
                         bool crit_a, bool crit_b, bool lower, const AnalysisOptions& opt,
                         BScanOut& out) {
  if (curve.n < 4 || !(b > a)) return;
  const double len = b - a;
  const double xscale = std::max({1.0, std::abs(a), std::abs(b)});
  const double margin = std::min(len / 8, 1e-6 * xscale);
  const double lo = a + margin, hi = b - margin;
  const int N = std::max(8, opt.b_samples);

  // One certified fiber pins which strand indices are real on all of (a, b).
  // So close to a critical value only a loose enclosure is attainable; the
  // reality split is still exact.
  std::vector<FiberRoot> start = fiber_roots(curve, cpx(lo), std::max(opt.precision, 1e-6));
  int reals = 0;
  for (const FiberRoot& r : start) reals += r.real;
  if (curve.n - reals < 4) return;  // fewer than two conjugate pairs

  double yscale = 1;
  for (const FiberRoot& r : start) yscale = std::max(yscale, std::abs(r.value));
  auto sel = [&](const std::vector<cpx>& z, int i) {
    return lower ? -z[i].imag() : z[i].imag();
  };
  std::vector<int> up;
  std::vector<cpx> z0(start.size());
  for (std::size_t i = 0; i < start.size(); ++i) {
    z0[i] = start[i].value;
    if (!start[i].real && sel(z0, int(i)) > 0) up.push_back(int(i));
  }

  PathTracker tracker(solver, cpx(lo), z0);
  std::vector<double> xs(N);
  std::vector<std::vector<cpx>> zs(N);
  for (int s = 0; s < N; ++s) {
    xs[s] = lo + (hi - lo) * s / (N - 1);
    tracker.move_to(cpx(xs[s]));
    zs[s] = tracker.roots();
  }

  struct Cand {
    double x;
    int i, j;
  };
  std::vector<Cand> cands;
  for (std::size_t ai = 0; ai < up.size(); ++ai)
    for (std::size_t aj = ai + 1; aj < up.size(); ++aj) {
      int i = up[ai], j = up[aj];
      std::vector<double> g(N);
      for (int s = 0; s < N; ++s) g[s] = sel(zs[s], i) - sel(zs[s], j);

      // imaginary parts that agree along a stretch of samples
      int run = 0;
      for (int s = 0; s < N && out.bad3.empty(); ++s) {
        run = std::abs(g[s]) < 1e-10 * yscale ? run + 1 : 0;
        if (run >= 3)
          out.bad3 = "two conjugate strand pairs keep equal imaginary parts near x=" +
                     fmt(xs[s]);
      }
      if (!out.bad3.empty()) return;

      // a meeting pushed into a critical value
      if (crit_a && std::abs(g[0]) < 1e-6 * yscale && out.bad5.empty())
        out.bad5 = "imaginary parts coincide at the critical value x=" + fmt(a);
      if (crit_b && std::abs(g[N - 1]) < 1e-6 * yscale && out.bad5.empty())
        out.bad5 = "imaginary parts coincide at the critical value x=" + fmt(b);

      for (int s = 0; s + 1 < N; ++s)
        if (g[s] * g[s + 1] < 0)
          cands.push_back({refine_crossing(solver, zs[s], xs[s], xs[s], xs[s + 1], i, j, lower,
                                           xscale),
                           i, j});

      for (int s = 0; s < N; ++s) {
        bool dips = (s == 0 || std::abs(g[s]) < std::abs(g[s - 1])) &&
                    (s + 1 == N || std::abs(g[s]) <= std::abs(g[s + 1]));
        if (!dips || std::abs(g[s]) >= 1e-3 * yscale) continue;
        if (s > 0 && g[s - 1] * g[s] < 0) continue;  // belongs to a crossing
        if (s + 1 < N && g[s] * g[s + 1] < 0) continue;
        int sl = std::max(0, s - 1), sr = std::min(N - 1, s + 1);
        auto [xb, gmin] = refine_touch(solver, zs[sl], xs[sl], xs[sl], xs[sr], i, j, lower);
        if (std::abs(gmin) < 1e-8 * yscale) cands.push_back({xb, i, j});
      }
    }
  if (cands.empty()) return;

  std::sort(cands.begin(), cands.end(), [](const Cand& p, const Cand& q) { return p.x < q.x; });
  std::vector<Cand> uniq;
  for (const Cand& cd : cands) {  // merge rediscoveries of the same meeting
    if (!uniq.empty() && uniq.back().i == cd.i && uniq.back().j == cd.j &&
        std::abs(uniq.back().x - cd.x) < 1e-7 * xscale)
      continue;
    uniq.push_back(cd);
  }

  for (std::size_t t = 0; t < uniq.size(); ++t) {
    const Cand& cd = uniq[t];
    if ((crit_a && cd.x - a < 16 * margin) || (crit_b && b - cd.x < 16 * margin)) {
      if (out.bad5.empty())
        out.bad5 = "a switching point coincides with the critical value x=" +
                   fmt(crit_a && cd.x - a < 16 * margin ? a : b);
      continue;
    }
    double nearest = 1e300;
    for (std::size_t u = 0; u < uniq.size(); ++u)
      if (u != t) nearest = std::min(nearest, std::abs(uniq[u].x - cd.x));
    if (nearest < 1e-7 * xscale) {
      if (out.bad4.empty()) out.bad4 = "two switching points share x=" + fmt(cd.x);
      continue;
    }

    double dp = std::min({(cd.x - a) / 2, (b - cd.x) / 2, len / 32, nearest / 4});
    dp = std::max(dp, std::min({1e-6 * xscale, (cd.x - a) / 2, (b - cd.x) / 2}));
    double step = (hi - lo) / (N - 1);
    int s0 = std::clamp(int(std::lround((cd.x - lo) / step)), 0, N - 1);
    PathTracker tr(solver, cpx(xs[s0]), zs[s0]);
    tr.move_to(cpx(cd.x - dp));
    std::vector<cpx> zl = tr.roots();
    tr.move_to(cpx(cd.x + dp));
    std::vector<cpx> zr = tr.roots();
    tr.move_to(cpx(cd.x));
    std::vector<cpx> zb = tr.roots();

    // no third pair may meet at the same point
    bool crowded = false;
    for (std::size_t ai = 0; ai < up.size() && !crowded; ++ai)
      for (std::size_t aj = ai + 1; aj < up.size() && !crowded; ++aj) {
        int p = up[ai], q = up[aj];
        if (p == cd.i && q == cd.j) continue;
        if (std::abs(sel(zb, p) - sel(zb, q)) < 1e-6 * yscale) crowded = true;
      }
    if (crowded) {
      if (out.bad4.empty())
        out.bad4 = "more than two conjugate pairs meet over x=" + fmt(cd.x);
      continue;
    }

    auto order = [&](const std::vector<cpx>& z) {
      std::vector<int> ord = up;
      std::sort(ord.begin(), ord.end(), [&](int p, int q) { return sel(z, p) < sel(z, q); });
      return ord;
    };
    auto rank_of = [](const std::vector<int>& ord, int idx) {
      return int(std::find(ord.begin(), ord.end(), idx) - ord.begin());
    };
    std::vector<int> ol = order(zl), orr = order(zr);
    int li = rank_of(ol, cd.i), lj = rank_of(ol, cd.j);
    int ri = rank_of(orr, cd.i), rj = rank_of(orr, cd.j);
    int kl = std::min(li, lj);
    if (std::abs(li - lj) != 1 || std::abs(ri - rj) != 1 || kl != std::min(ri, rj))
      throw NumericError("inconsistent strand ranks at the switching point x=" + fmt(cd.x));

    double thr = 1e-7 * yscale;
    double dL = zl[ol[kl]].real() - zl[ol[kl + 1]].real();
    double dR = zr[orr[kl]].real() - zr[orr[kl + 1]].real();
    int orient = 0;
    if (dL > thr && dR < -thr)
      orient = 1;
    else if (dL < -thr && dR > thr)
      orient = -1;
    out.points.push_back({cd.x, kl + 1, kl + 2, orient});
  }
}

inline BScanOut scan_b(const Curve& curve, double lo, double hi, const AnalysisOptions& opt,
                       bool lower) {
  BScanOut out;
  if (!(hi > lo) || curve.n < 4) return out;
  FiberSolver solver(curve.f);
  std::vector<double> cuts{lo};
  for (const DiscPoint& p : curve.points)
    if (p.x > lo && p.x < hi) cuts.push_back(p.x);
  cuts.push_back(hi);
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s)
    scan_segment(curve, solver, cuts[s], cuts[s + 1], s > 0, s + 2 < cuts.size(), lower, opt,
                 out);
  return out;
}

}  // namespace detail

// All switching points with x in (lo, hi), seen from above the real axis by
// default or from below with lower set.
inline std::vector<BPointRecord> find_b_points(const Curve& curve, double lo, double hi,
                                               bool lower = false,
                                               const AnalysisOptions& opt = {}) {
  detail::BScanOut out = detail::scan_b(curve, lo, hi, opt, lower);
  if (!out.bad3.empty()) throw GenericityError(out.bad3);
  if (!out.bad4.empty()) throw GenericityError(out.bad4);
  if (!out.bad5.empty()) throw GenericityError(out.bad5);
  return out.points;
}

namespace detail {

struct Prepared {
  GenericityReport rep;
  std::optional<Curve> curve;
  std::vector<BPointRecord> bpoints;  // ascending in x
  double x0 = 1;
};

inline Prepared prepare(const BPoly& poly, const AnalysisOptions& opt, bool keep_going) {
  Prepared out;
  auto fail = [&](int ci, const std::string& w) {
    GenericityReport::Item& item = out.rep.cond[ci];
    item.evaluated = true;
    if (item.pass) {
      item.pass = false;
      item.witness = w;
    }
    if (!keep_going) throw GenericityError(w, out.rep);
  };

  out.rep.cond[0].evaluated = true;
  try {
    out.curve = Curve::analyze(poly);
  } catch (const DegenerateCurveError& e) {
    fail(0, e.what());
    return out;  // nothing else is well defined
  }
  const Curve& c = *out.curve;
  int real_val = 0;
  for (const DiscPoint& p : c.points) real_val += p.valuation;
  if (real_val != c.disc.degree())
    fail(0, std::to_string(c.disc.degree() - real_val) +
                " discriminant zeros lie off the real axis");

  out.rep.cond[1].evaluated = true;
  for (std::size_t i = 0; i + 1 < c.points.size(); ++i)
    if (c.points[i + 1].box.first < c.points[i].box.second) {
      fail(1, "two critical values are closer than the isolation width near x=" +
                  fmt(c.points[i].x));
      break;
    }
  for (int i = 0; i < static_cast<int>(c.points.size()); ++i) {
    try {
      find_cluster(c, i, opt);
    } catch (const GenericityError& e) {
      fail(1, e.what());
    }
  }

  std::size_t p = c.points.size();
  double x1 = p ? c.points.back().x : 0;
  double xp = p ? c.points.front().x : 0;
  double window_lo;
  if (p == 0) {
    out.x0 = 1;
    window_lo = -1;
  } else if (p == 1) {
    out.x0 = x1 + 1;
    window_lo = xp - 1;
  } else {
    double span = x1 - xp;
    out.x0 = x1 + 0.1 * span;
    window_lo = xp - std::max(1.0, 0.1 * span);
  }

  BScanOut scan = scan_b(c, window_lo, out.x0, opt, false);
  out.rep.cond[2].evaluated = true;
  out.rep.cond[3].evaluated = true;
  out.rep.cond[4].evaluated = true;
  if (!scan.bad3.empty()) fail(2, scan.bad3);
  if (!scan.bad4.empty()) fail(3, scan.bad4);
  if (!scan.bad5.empty()) fail(4, scan.bad5);
  out.bpoints = scan.points;

  // keep every switching point strictly left of the base point
  double beyond = 1e300;
  for (const BPointRecord& bp : out.bpoints)
    if (bp.x > x1) beyond = std::min(beyond, bp.x);
  if (beyond < 1e300) {
    out.x0 = 0.5 * (x1 + beyond);
    out.bpoints.erase(std::remove_if(out.bpoints.begin(), out.bpoints.end(),
                                     [&](const BPointRecord& bp) { return bp.x >= out.x0; }),
                      out.bpoints.end());
  }
  return out;
}

}  // namespace detail

// Evaluates all five admissibility conditions without stopping at the first
// failure; the report carries a witness for everything that failed.
inline GenericityReport validate_genericity(const BPoly& poly, const AnalysisOptions& opt = {}) {
  return detail::prepare(poly, opt, true).rep;
}

// Full analysis: admissibility, classification of every critical value and
// the chart of disks around them.  Throws GenericityError on inadmissible
// input and NumericError when certification fails.
inline CurveAnalysis analyze_curve(const BPoly& poly, const AnalysisOptions& opt = {}) {
  detail::Prepared pre = detail::prepare(poly, opt, false);
  CurveAnalysis out;
  out.curve = std::move(*pre.curve);
  out.genericity = pre.rep;
  const Curve& c = out.curve;

  for (int i = static_cast<int>(c.points.size()) - 1; i >= 0; --i) {
    LocalCluster cl = find_cluster(c, i, opt);
    SingularityRecord rec = detail::classify_impl(c, cl, i, opt);
    std::pair<int, int> kl = detail::lefschetz_impl(c, cl, rec, opt);
    rec.k = kl.first;
    rec.l = kl.second;
    out.singular.push_back(rec);
  }

  out.chart.x0 = pre.x0;
  for (const SingularityRecord& r : out.singular)
    out.chart.n_points.push_back({r.x, 0.0, r.curve_index});
  std::vector<BPointRecord> bs = pre.bpoints;
  std::sort(bs.begin(), bs.end(),
            [](const BPointRecord& a, const BPointRecord& b) { return a.x > b.x; });
  for (const BPointRecord& b : bs) {
    int gap = 0;
    for (const CriticalChart::NPoint& np : out.chart.n_points) gap += np.x > b.x;
    out.chart.b_points.push_back({b, 0.0, gap});
  }

  // disk radii: a third of the distance to the closest other chart point
  std::vector<double> centres{out.chart.x0};
  for (const CriticalChart::NPoint& np : out.chart.n_points) centres.push_back(np.x);
  for (const ChartBPoint& bp : out.chart.b_points) centres.push_back(bp.rec.x);
  auto radius = [&](double x) {
    double d = 1e300;
    for (double cx : centres)
      if (cx != x) d = std::min(d, std::abs(cx - x));
    return d / 3;
  };
  for (CriticalChart::NPoint& np : out.chart.n_points) np.alpha = radius(np.x);
  for (ChartBPoint& bp : out.chart.b_points) bp.delta = radius(bp.rec.x);
  return out;
}

}  // namespace cb
