#pragma once

#include <random>

#include "instance.hpp"

namespace hyperg {

struct OracleConfig {
  int max_quotient = 0;            // largest vertex count tried, 0 means one per variable
  std::uint64_t node_budget = 0;   // extra bdd nodes allowed for the run, 0 means unbounded
  std::uint64_t seed = 0;          // order in which variable quotients are tried
};

enum class OracleStatus { kSat, kUnsat, kBudgetExceeded };

struct OracleResult {
  OracleStatus status = OracleStatus::kUnsat;
  std::optional<Witness> witness;
};

namespace detail {

// renames a kernel layer of rel onto the global edge variables of a concrete
// vertex tuple; tuples whose blocks repeat never occur in the layer support
inline std::vector<int> global_var_map(const std::vector<std::uint8_t>& kernel,
                                       const std::vector<int>& vertex_of_block, int arity,
                                       int q, int ell) {
  const auto& tuples = position_tuples(arity, ell);
  std::vector<int> to(tuples.size());
  for (std::size_t r = 0; r < tuples.size(); ++r) {
    std::uint16_t mask = block_mask(kernel, tuples[r]);
    if (std::popcount(static_cast<unsigned>(mask)) != ell) {
      to[r] = static_cast<int>(r);
      continue;
    }
    std::vector<int> verts;
    for (int b = 0; b < 16; ++b)
      if (mask & (1u << b)) verts.push_back(vertex_of_block[static_cast<std::size_t>(b)]);
    std::sort(verts.begin(), verts.end());
    to[r] = combination_rank(verts, q);
  }
  return to;
}

}  // namespace detail

// Complete satisfiability check: every quotient of the variables onto at most
// max_quotient vertices is tried in a seeded random order; for each one the
// constraints become a single boolean condition on the edge set of the
// quotient hypergraph. The first solvable quotient yields the witness with
// the fewest edges.
inline OracleResult brute_force_solve(const Template& t, const InstanceDesc& d,
                                      const OracleConfig& cfg = {}) {
  int nv = static_cast<int>(d.variables.size());
  int ell = t.cls.ell;
  std::map<std::string, int> index;
  for (int i = 0; i < nv; ++i)
    if (!index.emplace(d.variables[static_cast<std::size_t>(i)], i).second)
      throw Error("duplicate variable name: " + d.variables[static_cast<std::size_t>(i)]);
  std::vector<std::pair<const SymbolicOrbitSet*, std::vector<int>>> resolved;
  for (const auto& [rel_name, scope_names] : d.constraints) {
    const Relation& rel = t.relation(rel_name);
    if (static_cast<int>(scope_names.size()) != rel.arity)
      throw ArityMismatch("scope length != arity of " + rel_name);
    std::vector<int> scope;
    for (const auto& n : scope_names) {
      auto it = index.find(n);
      if (it == index.end()) throw Error("unknown variable in scope: " + n);
      scope.push_back(it->second);
    }
    resolved.push_back({&rel.set(t.cls), std::move(scope)});
  }
  if (nv == 0) {
    Witness w;
    return {OracleStatus::kSat, std::move(w)};
  }

  int maxq = cfg.max_quotient > 0 ? std::min(cfg.max_quotient, nv) : nv;
  std::vector<std::vector<std::uint8_t>> quotients;
  for_each_partition(nv, [&](const std::vector<std::uint8_t>& rgs) {
    if (block_count(rgs) <= maxq) quotients.push_back(rgs);
  });
  std::mt19937_64 rng(cfg.seed);
  std::shuffle(quotients.begin(), quotients.end(), rng);

  std::size_t base = bdd().node_count();
  try {
    for (const auto& rgs : quotients) {
      if (cfg.node_budget && bdd().node_count() - base > cfg.node_budget)
        return {OracleStatus::kBudgetExceeded, std::nullopt};
      int q = block_count(rgs);
      const auto& gvars = q >= ell ? position_tuples(q, ell) : position_tuples(ell, ell);
      std::size_t nvars = q >= ell ? gvars.size() : 0;
      BddManager::Ref g = BddManager::one;
      for (const auto& [set, scope] : resolved) {
        std::vector<std::uint8_t> raw;
        for (int v : scope) raw.push_back(rgs[static_cast<std::size_t>(v)]);
        auto kernel = canonical_kernel(raw);
        BddManager::Ref layer = set->layer(kernel);
        if (layer == BddManager::zero) {
          g = BddManager::zero;
          break;
        }
        std::vector<int> vertex_of_block(static_cast<std::size_t>(block_count(kernel)), -1);
        for (std::size_t i = 0; i < raw.size(); ++i)
          if (vertex_of_block[kernel[i]] < 0) vertex_of_block[kernel[i]] = raw[i];
        auto to = detail::global_var_map(kernel, vertex_of_block,
                                         static_cast<int>(scope.size()), q, ell);
        g = bdd().land(g, bdd().remap(layer, to));
        if (g == BddManager::zero) break;
      }
      if (g != BddManager::zero && t.cls.kind == HypergraphClass::Kind::kCliqueFree &&
          q >= t.cls.forbidden_clique) {
        for (const auto& sub : combinations(q, t.cls.forbidden_clique)) {
          BddManager::Ref clique = BddManager::one;
          for (const auto& e : combinations(t.cls.forbidden_clique, ell)) {
            std::vector<int> verts;
            for (int i : e) verts.push_back(sub[static_cast<std::size_t>(i)]);
            clique = bdd().land(clique, bdd().var(combination_rank(verts, q)));
          }
          g = bdd().land(g, bdd().lnot(clique));
          if (g == BddManager::zero) break;
        }
      }
      if (g == BddManager::zero) continue;

      Witness w;
      w.vertex_count = q;
      std::vector<int> ranks(nvars);
      std::iota(ranks.begin(), ranks.end(), 0);
      bdd().enumerate(g, ranks, [&](const BddManager::VarMask& model) {
        for (std::size_t r = 0; r < nvars; ++r)
          if (model[r]) w.edges.push_back(gvars[r]);
        return false;
      });
      std::sort(w.edges.begin(), w.edges.end());
      for (int i = 0; i < nv; ++i)
        w.assignment[d.variables[static_cast<std::size_t>(i)]] = rgs[static_cast<std::size_t>(i)];
      return {OracleStatus::kSat, std::move(w)};
    }
  } catch (const ResourceLimit&) {
    return {OracleStatus::kBudgetExceeded, std::nullopt};
  }
  return {OracleStatus::kUnsat, std::nullopt};
}

// Checks a witness against the instance without trusting any solver state:
// the hypergraph must lie in the class, the assignment must be total, and
// every constraint's scope must land in an orbit of its relation.
inline bool verify_witness(const Template& t, const InstanceDesc& d, const Witness& w) {
  if (w.vertex_count < 0) return false;
  for (const auto& e : w.edges) {
    if (static_cast<int>(e.size()) != t.cls.ell) return false;
    std::vector<int> s = e;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) return false;
    if (s.front() < 0 || s.back() >= w.vertex_count) return false;
  }
  if (!witness_in_class(w, t.cls)) return false;
  std::map<std::string, int> value;
  for (const auto& n : d.variables) {
    auto it = w.assignment.find(n);
    if (it == w.assignment.end()) return false;
    if (it->second < 0 || it->second >= w.vertex_count) return false;
    value[n] = it->second;
  }
  for (const auto& [rel_name, scope_names] : d.constraints) {
    const Relation& rel = t.relation(rel_name);
    if (static_cast<int>(scope_names.size()) != rel.arity) return false;
    std::vector<int> labels;
    for (const auto& n : scope_names) {
      auto it = value.find(n);
      if (it == value.end()) return false;
      labels.push_back(it->second);
    }
    OrbitType o;
    try {
      o = canonicalize_orbit(labels, w.edges, t.cls);
    } catch (const Error&) {
      return false;
    }
    if (!rel.set(t.cls).contains(o)) return false;
  }
  return true;
}

}  // namespace hyperg
