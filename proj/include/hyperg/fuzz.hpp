#pragma once

#include "json_io.hpp"

namespace hyperg {

// Seeded random instance over the template: variable count and scopes are
// drawn from one generator stream so a seed pins the whole instance.
inline InstanceDesc random_instance(const Template& t, std::mt19937_64& rng, int max_vars) {
  int min_arity = 0;
  std::vector<std::pair<std::string, int>> rels;
  for (const auto& [name, r] : t.relations) {
    rels.push_back({name, r.arity});
    if (min_arity == 0 || r.arity < min_arity) min_arity = r.arity;
  }
  if (rels.empty()) throw Error("template has no relations to draw from");
  if (min_arity > max_vars) throw Error("every relation needs more variables than max_vars");
  int nv = std::uniform_int_distribution<int>(min_arity, max_vars)(rng);
  InstanceDesc d;
  for (int i = 0; i < nv; ++i) d.variables.push_back("x" + std::to_string(i + 1));
  std::vector<int> fit;
  for (std::size_t i = 0; i < rels.size(); ++i)
    if (rels[i].second <= nv) fit.push_back(static_cast<int>(i));
  int ncons = std::uniform_int_distribution<int>(1, 2 * nv)(rng);
  for (int c = 0; c < ncons; ++c) {
    const auto& [name, arity] = rels[static_cast<std::size_t>(
        fit[static_cast<std::size_t>(std::uniform_int_distribution<int>(
            0, static_cast<int>(fit.size()) - 1)(rng))])];
    std::vector<int> order(static_cast<std::size_t>(nv));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::string> scope;
    for (int i = 0; i < arity; ++i)
      scope.push_back(d.variables[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])]);
    d.constraints.push_back({name, std::move(scope)});
  }
  return d;
}

struct FuzzRound {
  InstanceDesc instance;
  bool solver_sat = false;
  bool oracle_sat = false;
  bool agree = false;
  bool witness_ok = false;  // both produced witnesses verify
  bool skipped = false;     // oracle ran out of budget
};

// One cross-validation round: the polynomial solver against the brute-force
// oracle on a fresh random instance.
inline FuzzRound fuzz_round(const std::shared_ptr<const Template>& tmpl, std::uint64_t seed,
                            int max_vars, SolveMode mode = SolveMode::kAuto) {
  FuzzRound r;
  std::mt19937_64 rng(seed);
  r.instance = random_instance(*tmpl, rng, max_vars);
  SolveOptions opt;
  opt.mode = mode;
  SolveResult sr = solve(tmpl, r.instance, opt);
  r.solver_sat = sr.sat;
  OracleConfig cfg;
  cfg.seed = seed;
  OracleResult orc = brute_force_solve(*tmpl, r.instance, cfg);
  if (orc.status == OracleStatus::kBudgetExceeded) {
    r.skipped = true;
    return r;
  }
  r.oracle_sat = orc.status == OracleStatus::kSat;
  r.agree = r.solver_sat == r.oracle_sat;
  r.witness_ok = true;
  if (sr.witness && !verify_witness(*tmpl, r.instance, *sr.witness)) r.witness_ok = false;
  if (orc.witness && !verify_witness(*tmpl, r.instance, *orc.witness)) r.witness_ok = false;
  return r;
}

}  // namespace hyperg
