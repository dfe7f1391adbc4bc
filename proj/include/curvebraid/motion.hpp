#pragma once
// Reads an Artin word off a piecewise-linear motion of points in the plane.
//
// Strands are ordered by (Re, Im) lexicographically; a crossing letter is
// emitted whenever two order-adjacent strands exchange real parts.  The Im
// tie-break realizes the convention that the projection direction is rotated
// clockwise by a small angle, so a strand leaving a vertical alignment in the
// "wrong" horizontal order counts as a crossing at that instant.  The letter
// is positive when the strand coming from the right passes above (larger Im).

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "curvebraid/braid.hpp"

namespace cb {

using cpx = std::complex<double>;

struct MotionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class MotionReader {
 public:
  explicit MotionReader(std::vector<cpx> start, double re_tol = 1e-9, double im_tol = 1e-9)
      : pos_(std::move(start)), re_tol_(re_tol), im_tol_(im_tol) {
    const int n = static_cast<int>(pos_.size());
    if (n == 0) throw std::invalid_argument("empty configuration");
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0);
    std::sort(order_.begin(), order_.end(), [&](int a, int b) { return less(pos_[a], pos_[b]); });
    for (int p = 0; p + 1 < n; ++p)
      if (!less(pos_[order_[p]], pos_[order_[p + 1]]))
        throw MotionError("coincident points in starting configuration");
  }

  int strands() const { return static_cast<int>(pos_.size()); }
  const std::vector<int>& order() const { return order_; }
  const std::vector<cpx>& positions() const { return pos_; }
  const std::vector<int>& letters() const { return letters_; }
  BraidWord word() const { return BraidWord(strands(), letters_); }

  // Moves every strand linearly from its current position to next[i],
  // appending the crossing letters encountered along the way.
  void advance(const std::vector<cpx>& next) {
    const int n = strands();
    if (static_cast<int>(next.size()) != n) throw std::invalid_argument("strand count changed");

    struct Event {
      double t;
      int u, v;
    };
    std::vector<Event> events;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        double d0 = pos_[u].real() - pos_[v].real();
        double d1 = next[u].real() - next[v].real();
        bool tied0 = std::abs(d0) <= re_tol_, tied1 = std::abs(d1) <= re_tol_;
        if (tied0 && tied1) {
          // standing vertical pair: the imaginary order must not flip
          double e0 = pos_[u].imag() - pos_[v].imag();
          double e1 = next[u].imag() - next[v].imag();
          if (e0 * e1 < 0) throw MotionError("strands collide on a vertical line");
          continue;
        }
        if (tied0) {
          bool u_right_after = d1 > 0;
          if (u_right_after != tracked_right_of(u, v)) events.push_back({0.0, u, v});
          continue;
        }
        if (tied1) continue;  // settled by the end-of-frame fix-up
        if ((d0 > 0) != (d1 > 0)) events.push_back({d0 / (d0 - d1), u, v});
      }
    }
    std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) { return a.t < b.t; });

    std::size_t i = 0;
    while (i < events.size()) {
      std::size_t j = i + 1;
      while (j < events.size() && events[j].t - events[j - 1].t < cluster_tol_) ++j;
      resolve_cluster(events, i, j, next);
      i = j;
    }

    pos_ = next;
    fixup_final_order();
  }

 private:
  bool less(const cpx& a, const cpx& b) const {
    if (a.real() < b.real() - re_tol_) return true;
    if (a.real() > b.real() + re_tol_) return false;
    return a.imag() < b.imag();
  }
  bool tracked_right_of(int u, int v) const { return place(u) > place(v); }
  int place(int strand) const {
    for (int p = 0; p < strands(); ++p)
      if (order_[p] == strand) return p;
    throw std::logic_error("strand not in order");
  }
  cpx lerp(int s, const std::vector<cpx>& next, double t) const {
    return pos_[s] + t * (next[s] - pos_[s]);
  }

  void emit_swap(int p, int u_left, int u_right, const cpx& zl, const cpx& zr) {
    if (std::abs(zl.imag() - zr.imag()) <= im_tol_) throw MotionError("strands collide at a crossing");
    int letter = (zr.imag() > zl.imag()) ? (p + 1) : -(p + 1);
    letters_.push_back(letter);
    order_[p] = u_right;
    order_[p + 1] = u_left;
  }

  template <typename Events>
  void resolve_cluster(const Events& events, std::size_t lo, std::size_t hi,
                       const std::vector<cpx>& next) {
    std::vector<std::pair<int, int>> pending;
    double t = 0;
    for (std::size_t k = lo; k < hi; ++k) {
      int u = events[k].u, v = events[k].v;
      pending.emplace_back(std::min(u, v), std::max(u, v));
      t = std::max(t, events[k].t);
    }
    // Bubble the affected block: each performed swap must be an actual event pair.
    bool progressed = true;
    while (!pending.empty() && progressed) {
      progressed = false;
      for (int p = 0; p + 1 < strands(); ++p) {
        int a = order_[p], b = order_[p + 1];
        auto key = std::make_pair(std::min(a, b), std::max(a, b));
        auto it = std::find(pending.begin(), pending.end(), key);
        if (it == pending.end()) continue;
        pending.erase(it);
        emit_swap(p, a, b, lerp(a, next, t), lerp(b, next, t));
        progressed = true;
      }
    }
    if (!pending.empty())
      throw MotionError("simultaneous crossings could not be ordered; refine the motion");
  }

  // After the frame, strands tied in Re are ordered by Im; consummate any
  // crossing finished exactly on a vertical alignment.
  void fixup_final_order() {
    const int n = strands();
    for (bool again = true; again;) {
      again = false;
      for (int p = 0; p + 1 < n; ++p) {
        int a = order_[p], b = order_[p + 1];
        if (less(pos_[a], pos_[b])) continue;
        if (std::abs(pos_[a].real() - pos_[b].real()) <= re_tol_) {
          emit_swap(p, a, b, pos_[a], pos_[b]);
          again = true;
        } else {
          throw MotionError("strand order lost; refine the motion");
        }
      }
    }
  }

  std::vector<cpx> pos_;
  std::vector<int> order_;
  std::vector<int> letters_;
  double re_tol_, im_tol_;
  double cluster_tol_ = 1e-6;
};

// Reads the whole word of a sampled motion given as a list of frames.
inline BraidWord read_motion_word(const std::vector<std::vector<cpx>>& frames, double re_tol = 1e-9,
                                  double im_tol = 1e-9) {
  if (frames.empty()) throw std::invalid_argument("no frames");
  MotionReader r(frames.front(), re_tol, im_tol);
  for (std::size_t k = 1; k < frames.size(); ++k) r.advance(frames[k]);
  return r.word();
}

}  // namespace cb
