#pragma once
// Singularity type tags shared by the curve analysis and the model motions.

namespace cb {

enum class SingType { a1, a2, b, c, d1, d2, d3, e1, e2, f1, f2, g1, g2, g3, com };

inline const char* to_string(SingType t) {
  switch (t) {
    case SingType::a1: return "a1";
    case SingType::a2: return "a2";
    case SingType::b: return "b";
    case SingType::c: return "c";
    case SingType::d1: return "d1";
    case SingType::d2: return "d2";
    case SingType::d3: return "d3";
    case SingType::e1: return "e1";
    case SingType::e2: return "e2";
    case SingType::f1: return "f1";
    case SingType::f2: return "f2";
    case SingType::g1: return "g1";
    case SingType::g2: return "g2";
    case SingType::g3: return "g3";
    case SingType::com: return "com";
  }
  return "?";
}

}  // namespace cb
