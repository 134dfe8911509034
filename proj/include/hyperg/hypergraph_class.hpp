#pragma once

#include "errors.hpp"

namespace hyperg {

// Ambient class of finite ell-uniform hypergraphs: either all of them, or
// those omitting a complete hypergraph on forbidden_clique vertices. Both
// classes are closed under substructures and free amalgamation.
struct HypergraphClass {
  enum class Kind { kAll, kCliqueFree };

  Kind kind = Kind::kAll;
  int ell = 3;
  int forbidden_clique = 0;

  static HypergraphClass all(int ell) {
    if (ell < 3) throw ArityError("hypergraph class needs ell >= 3");
    return {Kind::kAll, ell, 0};
  }

  static HypergraphClass clique_free(int ell, int r) {
    if (ell < 3) throw ArityError("hypergraph class needs ell >= 3");
    if (r <= ell) throw ClassViolation("forbidden clique must exceed the edge size");
    return {Kind::kCliqueFree, ell, r};
  }

  // arity that minimality levels must reach for the class
  int bound() const { return kind == Kind::kAll ? ell : forbidden_clique; }

  bool operator==(const HypergraphClass&) const = default;
};

}  // namespace hyperg
