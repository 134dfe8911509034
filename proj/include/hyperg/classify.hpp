#pragma once

#include "templates.hpp"

namespace hyperg {

struct Verdict {
  enum class Kind { kPLinearSymmetry, kPBoundedWidth, kNPComplete, kUnknown };

  Kind kind = Kind::kUnknown;
  std::optional<BehaviourTable> p1;
  std::optional<BehaviourTable> m;
  std::optional<BehaviourTable> width_witness;
  std::string detail;
};

inline const char* verdict_name(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::kPLinearSymmetry: return "P-linear-symmetry";
    case Verdict::Kind::kPBoundedWidth: return "P-bounded-width";
    case Verdict::Kind::kNPComplete: return "NP-complete";
    case Verdict::Kind::kUnknown: return "unknown";
  }
  return "?";
}

// Classification by canonical behaviour search. A projection-acting binary
// table together with a minority table gives the linear path; failing that, a
// majority or semilattice table gives bounded width; when every searched
// shape fails the template has no suitable canonical polymorphism and its
// problem is NP-complete. Over clique-free classes the dichotomy is open, so
// the verdict stays unknown.
inline Verdict classify(const Template& t) {
  Verdict v;
  if (t.cls.kind == HypergraphClass::Kind::kCliqueFree) {
    v.kind = Verdict::Kind::kUnknown;
    v.detail = "classification over clique-free classes is not decided here";
    return v;
  }
  auto rels = t.relation_sets();

  v.p1 = t.supplied_p1 ? t.supplied_p1 : search_table(rels, ActionKind::kP1, t.cls);
  if (v.p1) {
    v.m = t.supplied_m ? t.supplied_m : search_table(rels, ActionKind::kMinority, t.cls);
    if (v.m) {
      v.kind = Verdict::Kind::kPLinearSymmetry;
      v.detail = "projection-acting binary table and minority table found";
      return v;
    }
  }
  for (ActionKind a : {ActionKind::kMajority, ActionKind::kOr, ActionKind::kAnd}) {
    if (auto w = search_table(rels, a, t.cls)) {
      v.kind = Verdict::Kind::kPBoundedWidth;
      v.width_witness = std::move(w);
      v.detail = std::string("table with ") + action_name(a) + " action found";
      return v;
    }
  }
  v.kind = Verdict::Kind::kNPComplete;
  v.detail = "no searched table shape preserves every relation";
  return v;
}

}  // namespace hyperg
