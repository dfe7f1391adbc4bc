#pragma once
// Fiber root continuation along paths in the base: warm started solves with
// adaptive step halving.  A step is accepted only when every root moves by
// less than half of its distance to the other roots, which pins the matching
// between consecutive fibers.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "curvebraid/roots.hpp"

namespace cb {

struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class PathTracker {
 public:
  PathTracker(const FiberSolver& solver, cpx x0) : solver_(&solver), x_(x0) {
    try {
      z_ = solver_->roots(x0);
    } catch (const std::runtime_error& e) {
      throw NumericError(std::string("fiber solve failed: ") + e.what());
    }
  }

  // Starts from externally computed roots of the fiber at x0.
  PathTracker(const FiberSolver& solver, cpx x0, std::vector<cpx> start)
      : solver_(&solver), x_(x0), z_(std::move(start)) {}

  cpx position() const { return x_; }
  const std::vector<cpx>& roots() const { return z_; }

  // Follows the straight segment to x1 keeping root indices matched.
  void move_to(cpx x1) { advance(x1, 0); }

 private:
  void advance(cpx x1, int depth) {
    // 80 halvings cover paths that start right next to a singular fiber.
    if (depth > 80) throw NumericError("root tracking step underflow");
    std::vector<cpx> next;
    bool solved = true;
    try {
      next = solver_->roots(x1, z_);
    } catch (const std::runtime_error&) {
      solved = false;
    }
    if (solved && small_step(next)) {
      z_ = std::move(next);
      x_ = x1;
      return;
    }
    cpx mid = 0.5 * (x_ + x1);
    advance(mid, depth + 1);
    advance(x1, depth + 1);
  }

  bool small_step(const std::vector<cpx>& next) const {
    for (std::size_t i = 0; i < z_.size(); ++i) {
      double sep = 1e300;
      for (std::size_t j = 0; j < z_.size(); ++j)
        if (j != i) sep = std::min(sep, std::abs(z_[i] - z_[j]));
      if (std::abs(next[i] - z_[i]) > 0.45 * sep) return false;
    }
    return true;
  }

  const FiberSolver* solver_;
  cpx x_;
  std::vector<cpx> z_;
};

}  // namespace cb
