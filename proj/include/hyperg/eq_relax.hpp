#pragma once

#include <set>

#include "finitise.hpp"

namespace hyperg {

// Equality-language relaxation of an instance: every constraint keeps only
// the kernel partitions of its members, edges are forgotten.
struct EqInstance {
  std::vector<int> variables;  // sorted, ambient ids

  struct Entry {
    std::vector<int> scope;
    std::set<std::vector<std::uint8_t>> kernels;
  };
  std::vector<Entry> entries;
};

inline EqInstance eq_relax(const Instance& inst) {
  EqInstance out;
  out.variables = inst.active;
  auto add = [&](const std::vector<int>& scope, const SymbolicOrbitSet& set) {
    EqInstance::Entry e;
    e.scope = scope;
    for (const auto& [k, f] : set.layers()) e.kernels.insert(k);
    out.entries.push_back(std::move(e));
  };
  for (const auto& e : inst.entries) add(e.scope, e.set);
  for (const auto& [key, q] : inst.sub) add(key, q);
  return out;
}

namespace detail {

// kernel of k restricted to the positions idx, canonicalized
inline std::vector<std::uint8_t> kernel_at(const std::vector<std::uint8_t>& k, const std::vector<int>& idx) {
  std::vector<std::uint8_t> raw;
  for (int i : idx) raw.push_back(k[static_cast<std::size_t>(i)]);
  return canonical_kernel(raw);
}

}  // namespace detail

// Solvability of an equality-language instance through kernel-level
// minimality: tables over every at-most-3-subset of variables, filtered
// against entries and each other on full overlaps until stable; solvable
// exactly when nothing empties.
inline bool eq_solvable(const EqInstance& eq) {
  int n = static_cast<int>(eq.variables.size());
  for (const auto& e : eq.entries)
    if (e.kernels.empty()) return false;
  if (n == 0) return true;

  std::map<std::vector<int>, std::set<std::vector<std::uint8_t>>> tables;
  for (int k = 1; k <= std::min(3, n); ++k) {
    for (const auto& pick : combinations(n, k)) {
      std::vector<int> key;
      for (int i : pick) key.push_back(eq.variables[static_cast<std::size_t>(i)]);
      std::set<std::vector<std::uint8_t>> all;
      for_each_partition(k, [&](const std::vector<std::uint8_t>& kern) { all.insert(kern); });
      tables.emplace(std::move(key), std::move(all));
    }
  }
  auto entries = eq.entries;

  // overlap of two sorted scopes plus its positions in each
  auto overlap = [](const std::vector<int>& a, const std::vector<int>& b,
                    std::vector<int>& pa, std::vector<int>& pb) {
    pa.clear();
    pb.clear();
    for (std::size_t i = 0, j = 0; i < a.size() && j < b.size();) {
      if (a[i] < b[j]) {
        ++i;
      } else if (a[i] > b[j]) {
        ++j;
      } else {
        pa.push_back(static_cast<int>(i));
        pb.push_back(static_cast<int>(j));
        ++i;
        ++j;
      }
    }
    return !pa.empty();
  };
  auto filter = [&](std::set<std::vector<std::uint8_t>>& mine, const std::vector<int>& my_scope,
                    const std::set<std::vector<std::uint8_t>>& theirs, const std::vector<int>& their_scope) {
    std::vector<int> pa, pb;
    if (!overlap(my_scope, their_scope, pa, pb)) return false;
    std::set<std::vector<std::uint8_t>> seen;
    for (const auto& k : theirs) seen.insert(detail::kernel_at(k, pb));
    bool changed = false;
    for (auto it = mine.begin(); it != mine.end();) {
      if (seen.count(detail::kernel_at(*it, pa))) {
        ++it;
      } else {
        it = mine.erase(it);
        changed = true;
      }
    }
    return changed;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& [key, tab] : tables) {
      for (const auto& e : entries) changed |= filter(tab, key, e.kernels, e.scope);
      if (tab.empty()) return false;
    }
    for (auto& e : entries) {
      for (const auto& [key, tab] : tables) changed |= filter(e.kernels, e.scope, tab, key);
      if (e.kernels.empty()) return false;
    }
  }
  return true;
}

// eq-relaxation after restricting tuple v to the single kernel k, done at the
// kernel level; equivalent to the symbolic restriction for non-injective
// ell-ary orbits, which carry no edges
inline EqInstance eq_restrict(const EqInstance& eq, const std::vector<int>& v,
                              const std::vector<std::uint8_t>& k) {
  EqInstance out = eq;
  for (auto& e : out.entries) {
    if (!std::includes(e.scope.begin(), e.scope.end(), v.begin(), v.end())) continue;
    auto pos = positions_in(v, e.scope);
    for (auto it = e.kernels.begin(); it != e.kernels.end();) {
      if (detail::kernel_at(*it, pos) == k) {
        ++it;
      } else {
        it = e.kernels.erase(it);
      }
    }
  }
  return out;
}

// One subdirectness pass: at every ell-tuple, keep the injective orbits plus
// each non-injective orbit whose restriction leaves the eq-relaxation
// solvable. Returns false when the instance trivializes.
inline bool eq_subdirect_pass(Instance& inst, Trace& trace, bool& changed) {
  int ell = inst.cls().ell;
  for (const auto& v : all_ell_tuples(inst)) {
    std::vector<OrbitType> members = proj(inst, v).members();
    EqInstance eq = eq_relax(inst);
    std::vector<OrbitType> keep;
    std::vector<OrbitType> removed;
    for (const auto& o : members) {
      if (o.injective()) {
        keep.push_back(o);
        continue;
      }
      if (eq_solvable(eq_restrict(eq, v, o.kernel))) {
        keep.push_back(o);
      } else {
        removed.push_back(o);
      }
    }
    if (removed.empty()) continue;
    changed = true;
    Json names = Json::array();
    for (int id : v) names.push_back(inst.names[static_cast<std::size_t>(id)]);
    Json gone = Json::array();
    for (const auto& o : removed) gone.push_back(orbit_to_string(o));
    trace.add({{"step", "eq_subdirect"}, {"tuple", names}, {"removed", gone}});
    restrict_tuple(inst, v, keep);
    if (!mn_minimality(inst, ell, ell)) return false;
  }
  return !inst.trivial();
}

// Combined fixpoint: full minimality at the ambient levels alternated with
// subdirectness passes until both are stable.
inline bool minimal_eq_subdirect(Instance& inst, Trace& trace) {
  int ell = inst.cls().ell;
  int m = 2 * ell;
  int n = std::max(3 * ell, inst.cls().bound());
  while (true) {
    if (!mn_minimality(inst, m, n)) return false;
    bool changed = false;
    if (!eq_subdirect_pass(inst, trace, changed)) return false;
    if (!changed) return true;
  }
}

}  // namespace hyperg
