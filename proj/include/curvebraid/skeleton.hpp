#pragma once
// Generalized skeletons: each singularity type contributes an ordered product
// of half-twists along arcs of the model disk.  The arcs chain through the
// punctures occupied by the local branches (reals at ranks k.., conjugate
// pairs at the lowest column slots) and the product describes the local braid
// monodromy of the point.  Mirrored variants reverse the twist indices.

#include <stdexcept>
#include <string>
#include <vector>

#include "curvebraid/braid.hpp"
#include "curvebraid/chart.hpp"
#include "curvebraid/disk.hpp"
#include "curvebraid/singtype.hpp"

namespace cb {

struct GeneralizedSkeleton {
  std::vector<Arc> twists;   // ordered, with repetition per the product
  std::string product_spec;  // formal product, e.g. "(h2 h1 h3)^6"
};

namespace detail {

struct LocalShape {
  int reals = 0;  // local strands real on the right edge of the disk
  int pairs = 0;  // local conjugate pairs, occupying column slots 1..pairs
};

inline LocalShape local_shape(const SingularityRecord& rec) {
  switch (rec.type) {
    case SingType::a1: return {2, 0};
    case SingType::a2: return {0, 1};
    case SingType::b: return {2, 0};
    case SingType::c:
      if (rec.m < 2) throw std::invalid_argument("transversal crossing needs m >= 2");
      return {rec.m, 0};
    case SingType::d1: return {2, 0};
    case SingType::d2: return {0, 1};
    case SingType::d3: return {1, 1};
    case SingType::e1: return {2, 1};
    case SingType::e2: return {2, 2};
    case SingType::f1: return {3, 0};
    case SingType::f2: return {1, 1};
    case SingType::g1: return {3, 0};
    case SingType::g2: return {1, 1};
    case SingType::g3: return {2, 1};
    default: throw std::invalid_argument("type has no generalized skeleton");
  }
}

inline int order_exponent(const SingularityRecord& rec) {
  if (rec.nu < 1) throw std::invalid_argument("tangency order must be positive");
  return rec.nu;
}

// h-index sequence and formal product of a skeleton, with mirrored records
// taking the index-reversed sequence
struct TwistProduct {
  std::vector<int> seq;
  std::string spec;
};

inline TwistProduct twist_product(const SingularityRecord& rec, int mu) {
  auto h = [&](int i) { return rec.mirror ? mu - i : i; };
  auto hs = [&](int i) { return "h" + std::to_string(h(i)); };
  TwistProduct out;
  auto block = [&](std::vector<int> idx, int times) {
    std::string grp;
    for (int i : idx) grp += (grp.empty() ? "" : " ") + hs(i);
    out.spec = times == 1 ? grp : "(" + grp + ")^" + std::to_string(times);
    for (int t = 0; t < times; ++t)
      for (int i : idx) out.seq.push_back(h(i));
  };
  switch (rec.type) {
    case SingType::a1:
    case SingType::a2:
      block({1}, 1);
      break;
    case SingType::b:
      out.seq = {h(1), h(1)};
      out.spec = hs(1) + "^2";
      break;
    case SingType::c: {
      // two half turns of the m local strands
      std::string turn;
      std::vector<int> seq;
      for (int top = mu - 1; top >= 1; --top) {
        turn += "(";
        for (int i = 1; i <= top; ++i) {
          seq.push_back(h(i));
          turn += (i == 1 ? "" : " ") + hs(i);
        }
        turn += ")";
      }
      for (int t = 0; t < 2; ++t)
        out.seq.insert(out.seq.end(), seq.begin(), seq.end());
      out.spec = turn + " " + turn;
      break;
    }
    case SingType::d1:
    case SingType::d2: {
      int nu = order_exponent(rec);
      out.seq.assign(nu, h(1));
      out.spec = hs(1) + "^" + std::to_string(nu);
      break;
    }
    case SingType::d3:
      block({1, 2}, 2);
      break;
    case SingType::e1:
      block({2, 1, 3}, 6);
      break;
    case SingType::e2:
      block({2, 4, 1, 3, 5}, 4);
      break;
    case SingType::f1:
      block({1, 2, 1}, order_exponent(rec));
      break;
    case SingType::f2:
      block({2, 1, 2}, order_exponent(rec));
      break;
    case SingType::g1:
    case SingType::g2: {
      int nu = order_exponent(rec);
      out.seq = {h(2), h(1)};
      out.seq.insert(out.seq.end(), nu, h(2));
      out.seq.push_back(h(1));
      out.seq.push_back(h(2));
      out.spec = hs(2) + " " + hs(1) + " " + hs(2) + "^" + std::to_string(nu) + " " + hs(1) +
                 " " + hs(2);
      break;
    }
    case SingType::g3:
      block({1, 2, 3, 2}, 2);
      break;
    default:
      throw std::invalid_argument("type has no generalized skeleton");
  }
  return out;
}

}  // namespace detail

// The local braid monodromy of the singularity in its minimal strand count.
inline BraidWord local_braid_word(const SingularityRecord& rec) {
  detail::LocalShape shape = detail::local_shape(rec);
  int mu = shape.reals + 2 * shape.pairs;
  auto g = [&](int i) { return rec.mirror ? mu - i : i; };
  BraidWord w(mu);
  auto block = [&](std::vector<int> idx, int times) {
    for (int t = 0; t < times; ++t)
      for (int i : idx) w.push(g(i));
  };
  switch (rec.type) {
    case SingType::a1:
    case SingType::a2: block({1}, 1); break;
    case SingType::b: block({1}, 2); break;
    case SingType::c: {
      std::vector<int> turn;
      for (int top = mu - 1; top >= 1; --top)
        for (int i = 1; i <= top; ++i) turn.push_back(i);
      block(turn, 2);
      break;
    }
    case SingType::d1:
    case SingType::d2: block({1}, detail::order_exponent(rec)); break;
    case SingType::d3: block({1, 2}, 2); break;
    case SingType::e1: block({2, 1, 3}, 6); break;
    case SingType::e2: block({2, 4, 1, 3, 5}, 4); break;
    case SingType::f1:
    case SingType::f2: block({2, 1, 2}, detail::order_exponent(rec)); break;
    case SingType::g1:
    case SingType::g2: {
      int nu = detail::order_exponent(rec);
      block({2, 1}, 1);
      block({2}, nu);
      block({1, 2}, 1);
      break;
    }
    case SingType::g3: block({1, 2, 3, 2}, 2); break;
    default: throw std::invalid_argument("type has no generalized skeleton");
  }
  return w;
}

// Skeleton of the record in the disk with n strands and d column punctures:
// local reals occupy ranks k.., local pairs the column slots nearest the axis,
// and the twist arcs chain through these punctures in lexicographic order.
inline GeneralizedSkeleton generalized_skeleton(const SingularityRecord& rec, int n, int d) {
  detail::LocalShape shape = detail::local_shape(rec);
  if (2 * shape.pairs > d)
    throw std::invalid_argument("skeleton needs more column punctures than the disk has");
  if (rec.k < 1 || rec.k - 1 + shape.reals > n - d)
    throw std::invalid_argument("skeleton does not fit the real punctures");
  std::vector<cpx> config = model_config(n, d);
  std::vector<int> loc;
  for (int r = 0; r < shape.reals; ++r) loc.push_back(rec.k - 1 + r);
  for (int j = shape.pairs; j >= 1; --j) loc.push_back(n - d + d / 2 - j);
  for (int j = 1; j <= shape.pairs; ++j) loc.push_back(n - d + d / 2 + j - 1);
  int mu = static_cast<int>(loc.size());

  std::vector<Arc> chain;
  for (int i = 0; i + 1 < mu; ++i) {
    Arc a;
    a.a = loc[i];
    a.b = loc[i + 1];
    a.pts = {config[loc[i]], config[loc[i + 1]]};
    chain.push_back(a);
  }
  // Real punctures right of the local cluster separate the column from the
  // collision site: the innermost pair arc then crosses the axis just left of
  // rank k + reals, running below the axis on the lower-slot side.
  if (shape.pairs > 0 && n - d >= rec.k + shape.reals) {
    double ax = rec.k + shape.reals - 0.5;
    Arc& inner = chain[shape.reals + shape.pairs - 1];
    inner.pts = {config[inner.a], {ax, -0.6}, {ax, 0.6}, config[inner.b]};
  }

  detail::TwistProduct prod = detail::twist_product(rec, mu);
  GeneralizedSkeleton out;
  for (int i : prod.seq) out.twists.push_back(chain[i - 1]);
  out.product_spec = std::move(prod.spec);
  return out;
}

}  // namespace cb
