#pragma once

#include <memory>
#include <string>

#include "behaviour.hpp"
#include "formula.hpp"

namespace hyperg {

// A named relation of the template, defined by a formula or an explicit
// member list. Compiled sets are cached per position placement so a scope can
// be reordered into ambient order without symbolic renaming.
struct Relation {
  std::string name;
  int arity = 0;
  std::optional<Formula> formula;
  std::string formula_text;
  std::vector<OrbitType> explicit_members;

  const SymbolicOrbitSet& set(const HypergraphClass& cls, const std::vector<int>& place) const {
    if (static_cast<int>(place.size()) != arity) throw ArityMismatch("placement length != arity");
    auto it = compiled_.find(place);
    if (it != compiled_.end()) return it->second;
    SymbolicOrbitSet s(arity, cls);
    if (formula) {
      s = compile_formula(*formula, arity, place, cls);
    } else {
      std::vector<int> inv(place.size());
      for (std::size_t i = 0; i < place.size(); ++i) inv[static_cast<std::size_t>(place[i])] = static_cast<int>(i);
      for (const auto& m : explicit_members) {
        if (m.arity() != arity) throw ArityMismatch("member arity != relation arity");
        std::vector<std::uint8_t> order(static_cast<std::size_t>(m.blocks()));
        std::iota(order.begin(), order.end(), std::uint8_t{0});
        s.add_member(permute_positions({m, order}, inv).base);
      }
    }
    return compiled_.emplace(place, std::move(s)).first->second;
  }

  const SymbolicOrbitSet& set(const HypergraphClass& cls) const {
    std::vector<int> id(static_cast<std::size_t>(arity));
    std::iota(id.begin(), id.end(), 0);
    return set(cls, id);
  }

 private:
  mutable std::map<std::vector<int>, SymbolicOrbitSet> compiled_;
};

// Constraint language over the generic hypergraph of a class: finitely many
// relations, optionally shipped with behaviour tables that unlock the linear
// solving path without a fresh search.
struct Template {
  HypergraphClass cls = HypergraphClass::all(3);
  std::map<std::string, Relation> relations;
  std::optional<BehaviourTable> supplied_p1;
  std::optional<BehaviourTable> supplied_m;

  const Relation& relation(const std::string& name) const {
    auto it = relations.find(name);
    if (it == relations.end()) throw Error("unknown relation: " + name);
    return it->second;
  }

  std::vector<const SymbolicOrbitSet*> relation_sets() const {
    std::vector<const SymbolicOrbitSet*> out;
    for (const auto& [n, r] : relations) out.push_back(&r.set(cls));
    return out;
  }

  void validate() const {
    for (const auto& [n, r] : relations) {
      if (r.arity < 1) throw ArityError("relation arity must be positive: " + n);
      r.set(cls);
    }
    if (supplied_p1) {
      if (supplied_p1->action != ActionKind::kP1)
        throw AssumptionViolated("supplied p1 table must act as first projection");
      validate_table(*supplied_p1, cls);
      check_supplied(*supplied_p1, "p1");
    }
    if (supplied_m) {
      if (supplied_m->action != ActionKind::kMinority)
        throw AssumptionViolated("supplied m table must act as minority");
      validate_table(*supplied_m, cls);
      check_supplied(*supplied_m, "m");
    }
  }

 private:
  // Preservation of a supplied table is re-checked relation by relation;
  // relations whose check exceeds the budget stay accepted as asserted.
  void check_supplied(const BehaviourTable& table, const std::string& which) const {
    for (const auto& [n, r] : relations) {
      std::optional<std::string> why;
      try {
        why = check_preservation(r.set(cls), table);
      } catch (const ResourceLimit&) {
        continue;
      }
      if (why)
        throw AssumptionViolated("supplied " + which + " table does not preserve " + n + ": " + *why);
    }
  }
};

}  // namespace hyperg
