#pragma once

#include <functional>
#include <memory>

#include <json.hpp>

#include "templates.hpp"

namespace hyperg {

using Json = nlohmann::json;

inline Json orbit_to_json(const OrbitType& o) {
  Json edges = Json::array();
  for (std::uint16_t e : o.edges) {
    Json blocks = Json::array();
    for (int b = 0; b < 16; ++b)
      if (e & (1u << b)) blocks.push_back(b);
    edges.push_back(blocks);
  }
  return Json{{"kernel", o.kernel}, {"edges", edges}};
}

struct Trace {
  bool enabled = false;
  Json events = Json::array();

  void add(Json e) {
    if (enabled) events.push_back(std::move(e));
  }
};

// One constraint of an instance. Scopes are sorted in ambient variable order;
// the placement permutation is applied when the relation is compiled, so the
// stored set always lives on the sorted scope. Distinct constraints on the
// same scope stay distinct: minimality may only synchronize them through
// subsets up to the agreement level, never conjoin them wholesale.
struct ConstraintEntry {
  std::vector<int> scope;
  SymbolicOrbitSet set;
  bool coverage = false;  // synthesized to cover an n-subset, not user-given
  std::uint64_t version = 1;
  std::uint64_t swept = 0;
};

// A constraint instance over a template: named variables with a fixed ambient
// order, a list of scoped constraints, and the derived subset constraints
// minimality maintains for every small subset of the active variables.
// Identification merges variables through the union-find and drops merged ids
// from the active list; names and ids are never reused.
struct Instance {
  std::shared_ptr<const Template> tmpl;
  std::vector<std::string> names;  // index = variable id, fixed for life
  std::vector<int> parent;         // union-find over variable ids
  std::vector<int> active;         // representative ids, ascending
  std::vector<ConstraintEntry> entries;

  // derived constraints keyed by sorted subsets of active, sizes 1..minimal_m
  std::map<std::vector<int>, SymbolicOrbitSet> sub;
  std::map<std::vector<int>, std::uint64_t> sub_version;
  std::map<std::vector<int>, std::uint64_t> sub_swept;

  struct Scoped {
    std::string rel;
    std::vector<int> scope;  // user order, original variable ids
  };
  std::vector<Scoped> original;  // 1:1 with the leading non-coverage entries

  std::uint64_t clock = 1;
  int minimal_m = 0, minimal_n = 0;

  const HypergraphClass& cls() const { return tmpl->cls; }

  int find(int v) const {
    while (parent[static_cast<std::size_t>(v)] != v) v = parent[static_cast<std::size_t>(v)];
    return v;
  }

  bool trivial() const {
    for (const auto& e : entries)
      if (e.set.empty()) return true;
    for (const auto& [k, q] : sub)
      if (q.empty()) return true;
    return false;
  }

  void touch_entry(ConstraintEntry& e, SymbolicOrbitSet next) {
    if (e.set == next) return;
    e.set = std::move(next);
    e.version = ++clock;
  }

  void touch_sub(const std::vector<int>& key, SymbolicOrbitSet next) {
    auto it = sub.find(key);
    if (it != sub.end() && it->second == next) return;
    sub.insert_or_assign(key, std::move(next));
    sub_version[key] = ++clock;
  }

  void invalidate_minimality() {
    minimal_m = 0;
    minimal_n = 0;
  }
};

// Raw description of an instance, as read from input: variable names in
// ambient order and (relation, scope) pairs in user order.
struct InstanceDesc {
  std::vector<std::string> variables;
  std::vector<std::pair<std::string, std::vector<std::string>>> constraints;
};

inline Instance make_instance(std::shared_ptr<const Template> tmpl,
                              const std::vector<std::string>& variables,
                              const std::vector<std::pair<std::string, std::vector<std::string>>>& constraints) {
  Instance inst;
  inst.tmpl = std::move(tmpl);
  inst.names = variables;
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < variables.size(); ++i) {
    if (!index.emplace(variables[i], static_cast<int>(i)).second)
      throw Error("duplicate variable name: " + variables[i]);
    inst.parent.push_back(static_cast<int>(i));
    inst.active.push_back(static_cast<int>(i));
  }
  for (const auto& [rel_name, scope_names] : constraints) {
    const Relation& rel = inst.tmpl->relation(rel_name);
    if (static_cast<int>(scope_names.size()) != rel.arity)
      throw ArityMismatch("scope length != arity of " + rel_name);
    std::vector<int> scope;
    for (const auto& n : scope_names) {
      auto it = index.find(n);
      if (it == index.end()) throw Error("unknown variable in scope: " + n);
      scope.push_back(it->second);
    }
    std::vector<int> sorted = scope;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error("scope repeats a variable in " + rel_name);
    // place relation position i at the rank of its variable in the sorted scope
    std::vector<int> place;
    for (int v : scope)
      place.push_back(static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin()));
    inst.entries.push_back({sorted, rel.set(inst.tmpl->cls, place), false, 1, 0});
    inst.original.push_back({rel_name, scope});
  }
  return inst;
}

inline Instance make_instance(std::shared_ptr<const Template> tmpl, const InstanceDesc& d) {
  return make_instance(std::move(tmpl), d.variables, d.constraints);
}

// positions of the sorted subset sub within the sorted list sup
inline std::vector<int> positions_in(const std::vector<int>& sub, const std::vector<int>& sup) {
  std::vector<int> out;
  std::size_t j = 0;
  for (int v : sub) {
    while (j < sup.size() && sup[j] != v) ++j;
    if (j == sup.size()) throw InternalError("subset not contained in superset");
    out.push_back(static_cast<int>(j));
  }
  return out;
}

namespace detail {

// sorted subsets of the sorted list scope with sizes 1..cap, smallest first
inline std::vector<std::vector<int>> subsets_up_to(const std::vector<int>& scope, int cap) {
  std::vector<std::vector<int>> out;
  int s = static_cast<int>(scope.size());
  for (int k = 1; k <= std::min(cap, s); ++k) {
    for (const auto& pick : combinations(s, k)) {
      std::vector<int> key;
      for (int i : pick) key.push_back(scope[static_cast<std::size_t>(i)]);
      out.push_back(std::move(key));
    }
  }
  return out;
}

}  // namespace detail

// projection onto the strictly increasing tuple v as witnessed by the
// constraints covering it; the full set when nothing covers v
inline SymbolicOrbitSet proj(const Instance& inst, const std::vector<int>& v) {
  if (!std::is_sorted(v.begin(), v.end()) ||
      std::adjacent_find(v.begin(), v.end()) != v.end())
    throw ArityError("proj expects a strictly increasing tuple");
  auto it = inst.sub.find(v);
  if (it != inst.sub.end()) return it->second;
  bool have = false;
  SymbolicOrbitSet out(static_cast<int>(v.size()), inst.cls());
  auto take = [&](const std::vector<int>& key, const SymbolicOrbitSet& q) {
    if (key.size() < v.size()) return;
    if (!std::includes(key.begin(), key.end(), v.begin(), v.end())) return;
    SymbolicOrbitSet p = q.project_exists(positions_in(v, key));
    if (!have) {
      out = std::move(p);
      have = true;
    } else if (!(out == p)) {
      throw NotMinimal("covering constraints disagree on the tuple");
    }
  };
  for (const auto& e : inst.entries) take(e.scope, e.set);
  for (const auto& [key, q] : inst.sub) take(key, q);
  return have ? out : SymbolicOrbitSet::full_set(static_cast<int>(v.size()), inst.cls());
}

// Establishes (m, n)-minimality: every at-most-n subset of active variables
// is covered by some constraint scope, and all constraints agree on every
// subset of size at most m through the derived subset constraints. Returns
// false when propagation emptied a constraint.
inline bool mn_minimality(Instance& inst, int m, int n) {
  if (m < 1 || n < m) throw ArityError("minimality levels need 1 <= m <= n");
  int nv = static_cast<int>(inst.active.size());
  int msz = std::min(m, nv), nsz = std::min(n, nv);
  if (nv == 0) {
    inst.minimal_m = m;
    inst.minimal_n = n;
    return true;
  }

  std::uint64_t key_total = 0;
  for (int k = 1; k <= msz; ++k) key_total += binomial(nv, k);
  key_total += binomial(nv, nsz);
  if (key_total > budget().search_step_cap()) throw ResourceLimit("minimality above budget");

  for (const auto& key : detail::subsets_up_to(inst.active, msz)) {
    if (!inst.sub.count(key)) {
      inst.sub.emplace(key, SymbolicOrbitSet::full_set(static_cast<int>(key.size()), inst.cls()));
      inst.sub_version[key] = ++inst.clock;
    }
  }

  // cover n-subsets that no constraint scope contains; only needed above the
  // agreement level, below it the derived constraints are themselves scopes
  if (nsz > msz) {
    for (const auto& pick : combinations(nv, nsz)) {
      std::vector<int> key;
      for (int i : pick) key.push_back(inst.active[static_cast<std::size_t>(i)]);
      bool covered = false;
      for (const auto& e : inst.entries) {
        if (std::includes(e.scope.begin(), e.scope.end(), key.begin(), key.end())) {
          covered = true;
          break;
        }
      }
      if (!covered)
        inst.entries.push_back({key, SymbolicOrbitSet::full_set(nsz, inst.cls()), true, ++inst.clock, 0});
    }
  }

  // exchanges one constraint with the derived constraints below it; sub keys
  // skip themselves, entries exchange with their own scope key as well
  auto sweep = [&](const std::vector<int>& scope, SymbolicOrbitSet& set,
                   std::uint64_t& version, std::uint64_t& swept, bool self_exchange) -> bool {
    auto keys = detail::subsets_up_to(scope, msz);
    std::uint64_t high = version;
    for (const auto& key : keys) {
      if (!self_exchange && key.size() == scope.size()) continue;
      auto vit = inst.sub_version.find(key);
      if (vit != inst.sub_version.end()) high = std::max(high, vit->second);
    }
    if (swept >= high) return false;
    SymbolicOrbitSet next = set;
    for (const auto& key : keys) {
      if (!self_exchange && key.size() == scope.size()) continue;
      auto vit = inst.sub_version.find(key);
      if (vit == inst.sub_version.end() || vit->second <= swept) continue;
      next.restrict_to(positions_in(key, scope), inst.sub.at(key));
    }
    if (!(next == set)) {
      set = std::move(next);
      version = ++inst.clock;
    }
    for (const auto& key : keys) {
      if (key.size() == scope.size()) {
        if (self_exchange) inst.touch_sub(key, set);
        continue;
      }
      inst.touch_sub(key, set.project_exists(positions_in(key, scope)));
    }
    swept = inst.clock;
    return set.empty();
  };

  bool stable = false;
  while (!stable) {
    std::uint64_t before = inst.clock;
    for (auto& e : inst.entries)
      if (sweep(e.scope, e.set, e.version, e.swept, true)) {
        inst.invalidate_minimality();
        return false;
      }
    std::vector<std::vector<int>> keys;
    for (const auto& [key, q] : inst.sub)
      if (key.size() >= 2) keys.push_back(key);
    std::sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) {
      return a.size() != b.size() ? a.size() > b.size() : a < b;
    });
    for (const auto& key : keys) {
      SymbolicOrbitSet cur = inst.sub.at(key);
      std::uint64_t version = inst.sub_version.at(key);
      std::uint64_t swept = inst.sub_swept.count(key) ? inst.sub_swept.at(key) : 0;
      bool dead = sweep(key, cur, version, swept, false);
      inst.sub_swept[key] = swept;
      if (!(cur == inst.sub.at(key))) {
        inst.sub.insert_or_assign(key, std::move(cur));
        inst.sub_version[key] = version;
        inst.sub_swept[key] = inst.clock;
      }
      if (dead) {
        inst.invalidate_minimality();
        return false;
      }
    }
    stable = inst.clock == before;
  }
  inst.minimal_m = m;
  inst.minimal_n = n;
  return !inst.trivial();
}

namespace detail {

// quotient of a constraint under the variable merge f: equalize merged
// positions, keep the first position of each class, re-sort the scope
inline std::pair<std::vector<int>, SymbolicOrbitSet> quotient_constraint(
    const std::vector<int>& key, const SymbolicOrbitSet& q, const std::function<int(int)>& f) {
  std::vector<int> reps;
  std::vector<int> group_of(key.size());
  for (std::size_t i = 0; i < key.size(); ++i) {
    int r = f(key[i]);
    auto it = std::find(reps.begin(), reps.end(), r);
    if (it == reps.end()) {
      group_of[i] = static_cast<int>(reps.size());
      reps.push_back(r);
    } else {
      group_of[i] = static_cast<int>(it - reps.begin());
    }
  }
  SymbolicOrbitSet q2 = q;
  if (reps.size() < key.size()) {
    SymbolicOrbitSet filtered(q.arity(), q.hclass());
    for (const auto& [kern, fr] : q.layers()) {
      bool ok = true;
      for (std::size_t i = 0; i < key.size() && ok; ++i)
        for (std::size_t j = i + 1; j < key.size() && ok; ++j)
          if (group_of[i] == group_of[j] && kern[i] != kern[j]) ok = false;
      if (ok) filtered.set_layer(kern, fr);
    }
    std::vector<int> keep;
    for (std::size_t g = 0; g < reps.size(); ++g)
      keep.push_back(static_cast<int>(std::find(group_of.begin(), group_of.end(), static_cast<int>(g)) - group_of.begin()));
    std::sort(keep.begin(), keep.end());
    q2 = filtered.project_exists(keep);
    // after projection, position order follows first occurrences; align reps
    std::vector<int> occ_reps;
    for (int i : keep) occ_reps.push_back(f(key[static_cast<std::size_t>(i)]));
    reps = occ_reps;
  }
  std::vector<int> sorted = reps;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != reps) {
    std::vector<int> perm;
    for (int r : sorted)
      perm.push_back(static_cast<int>(std::find(reps.begin(), reps.end(), r) - reps.begin()));
    q2 = q2.permute_set(perm);
  }
  return {std::move(sorted), std::move(q2)};
}

}  // namespace detail

// Merges variables whose pair constraint is the pure diagonal; the least
// variable of each class stays as representative. Returns true when anything
// merged.
inline bool identify_all_equal(Instance& inst, Trace& trace) {
  if (inst.minimal_m < 2) throw NotMinimal("identification needs pair constraints");
  std::vector<int> root = inst.parent;
  std::function<int(int)> f = [&](int v) {
    while (root[static_cast<std::size_t>(v)] != v) v = root[static_cast<std::size_t>(v)];
    return v;
  };
  bool merged = false;
  for (const auto& [key, q] : inst.sub) {
    if (key.size() != 2) continue;
    if (q.layer({0, 1}) == BddManager::zero) {
      int a = f(key[0]), b = f(key[1]);
      if (a != b) {
        root[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
        merged = true;
      }
    }
  }
  if (!merged) return false;

  std::map<int, std::vector<int>> classes;
  for (int v : inst.active) classes[f(v)].push_back(v);
  Json jclasses = Json::array();
  for (const auto& [rep, vs] : classes) {
    if (vs.size() < 2) continue;
    Json jnames = Json::array();
    for (int v : vs) jnames.push_back(inst.names[static_cast<std::size_t>(v)]);
    jclasses.push_back(jnames);
  }
  trace.add({{"step", "identify"}, {"classes", jclasses}});

  inst.parent = root;
  std::vector<int> fresh;
  for (int v : inst.active)
    if (f(v) == v) fresh.push_back(v);
  inst.active = fresh;

  for (auto& e : inst.entries) {
    auto [key2, q2] = detail::quotient_constraint(e.scope, e.set, f);
    e.scope = std::move(key2);
    e.set = std::move(q2);
    e.version = ++inst.clock;
    e.swept = 0;
  }
  std::map<std::vector<int>, SymbolicOrbitSet> old;
  old.swap(inst.sub);
  inst.sub_version.clear();
  inst.sub_swept.clear();
  for (const auto& [key, q] : old) {
    auto [key2, q2] = detail::quotient_constraint(key, q, f);
    auto it = inst.sub.find(key2);
    if (it == inst.sub.end()) {
      inst.sub.emplace(std::move(key2), std::move(q2));
    } else {
      it->second.conjoin(q2);
    }
  }
  for (const auto& [key, q] : inst.sub) inst.sub_version[key] = ++inst.clock;
  inst.invalidate_minimality();
  return true;
}

// restricts every constraint covering the strictly increasing tuple v to the
// members whose projection onto v lies in allowed
inline void restrict_tuple(Instance& inst, const std::vector<int>& v,
                           const std::vector<OrbitType>& allowed) {
  SymbolicOrbitSet keep = SymbolicOrbitSet::from_members(static_cast<int>(v.size()),
                                                         inst.cls(), allowed);
  for (auto& e : inst.entries) {
    if (!std::includes(e.scope.begin(), e.scope.end(), v.begin(), v.end())) continue;
    SymbolicOrbitSet next = e.set;
    next.restrict_to(positions_in(v, e.scope), keep);
    inst.touch_entry(e, std::move(next));
  }
  for (auto& [key, q] : inst.sub) {
    if (key.size() < v.size()) continue;
    if (!std::includes(key.begin(), key.end(), v.begin(), v.end())) continue;
    SymbolicOrbitSet next = q;
    if (key == v) {
      next.conjoin(keep);
    } else {
      next.restrict_to(positions_in(v, key), keep);
    }
    inst.touch_sub(key, std::move(next));
  }
  inst.invalidate_minimality();
}

}  // namespace hyperg
