#include <CLI11.hpp>
#include <hyperg/fuzz.hpp>
#include <iostream>

namespace {

using namespace hyperg;

std::shared_ptr<const Template> load_template(const std::string& path) {
  return std::make_shared<const Template>(template_from_json(load_json(path)));
}

int cmd_solve(const std::string& tmpl_path, const std::string& inst_path, const std::string& mode,
              const std::string& witness_path, const std::string& dump_path, bool trace) {
  auto tmpl = load_template(tmpl_path);
  InstanceDesc desc = instance_from_json(load_json(inst_path));
  SolveOptions opt;
  opt.mode = solve_mode_from_name(mode);
  opt.trace = trace;
  opt.dump_linear = !dump_path.empty();
  SolveResult r = solve(tmpl, desc, opt);
  if (!witness_path.empty() && r.witness) save_json(witness_path, witness_to_json(*r.witness));
  if (!dump_path.empty()) {
    std::ofstream out(dump_path);
    if (!out) throw Error("cannot write " + dump_path);
    out << r.linear_dump;
  }
  std::cout << result_to_json(r).dump(1) << '\n';
  return r.sat ? 0 : 1;
}

int cmd_classify(const std::string& tmpl_path, const std::string& emit_path, bool allow_unknown) {
  auto tmpl = load_template(tmpl_path);
  const Verdict& v = classify_cached(*tmpl);
  if (!emit_path.empty()) {
    Json tables{{"format", kFormatTag}};
    if (v.p1) tables["p1"] = table_to_json(*v.p1);
    if (v.m) tables["m"] = table_to_json(*v.m);
    if (v.width_witness) tables["width"] = table_to_json(*v.width_witness);
    save_json(emit_path, tables);
  }
  std::cout << verdict_to_json(v).dump(1) << '\n';
  if (v.kind == Verdict::Kind::kUnknown && !allow_unknown) return 2;
  return 0;
}

int cmd_oracle(const std::string& tmpl_path, const std::string& inst_path, int max_quotient,
               std::uint64_t node_budget, std::uint64_t seed) {
  auto tmpl = load_template(tmpl_path);
  InstanceDesc desc = instance_from_json(load_json(inst_path));
  OracleConfig cfg;
  cfg.max_quotient = max_quotient;
  cfg.node_budget = node_budget;
  cfg.seed = seed;
  OracleResult r = brute_force_solve(*tmpl, desc, cfg);
  Json j{{"format", kFormatTag}};
  switch (r.status) {
    case OracleStatus::kSat: j["status"] = "sat"; break;
    case OracleStatus::kUnsat: j["status"] = "unsat"; break;
    case OracleStatus::kBudgetExceeded: j["status"] = "budget-exceeded"; break;
  }
  if (r.witness) j["witness"] = witness_to_json(*r.witness);
  std::cout << j.dump(1) << '\n';
  if (r.status == OracleStatus::kBudgetExceeded) return 2;
  return r.status == OracleStatus::kSat ? 0 : 1;
}

int cmd_fuzz(const std::string& tmpl_path, std::uint64_t seed, int count, int max_vars,
             const std::string& mode) {
  auto tmpl = load_template(tmpl_path);
  SolveMode m = solve_mode_from_name(mode);
  int agreed = 0, skipped = 0;
  Json failures = Json::array();
  for (int i = 0; i < count; ++i) {
    std::uint64_t round_seed = seed + static_cast<std::uint64_t>(i);
    FuzzRound r = fuzz_round(tmpl, round_seed, max_vars, m);
    if (r.skipped) {
      ++skipped;
      continue;
    }
    if (r.agree && r.witness_ok) {
      ++agreed;
      continue;
    }
    failures.push_back({{"seed", round_seed},
                        {"solver", r.solver_sat ? "sat" : "unsat"},
                        {"oracle", r.oracle_sat ? "sat" : "unsat"},
                        {"witness_ok", r.witness_ok},
                        {"instance", instance_to_json(r.instance)}});
  }
  Json j{{"format", kFormatTag},
         {"rounds", count},
         {"agreed", agreed},
         {"skipped", skipped},
         {"failures", failures}};
  std::cout << j.dump(1) << '\n';
  return failures.empty() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"constraint solver over homogeneous hypergraph templates"};
  app.require_subcommand(1);

  std::string s_tmpl, s_inst, s_mode = "auto", s_witness, s_dump;
  bool s_trace = false;
  auto* s = app.add_subcommand("solve", "decide an instance in polynomial time");
  s->add_option("-t,--template", s_tmpl, "template json file")->required();
  s->add_option("-i,--instance", s_inst, "instance json file")->required();
  s->add_option("--mode", s_mode, "auto, linear or width")->default_val("auto");
  s->add_option("--witness", s_witness, "write the witness to this file on sat");
  s->add_option("--dump-linear", s_dump, "write the stacked affine system to this file");
  s->add_flag("--trace", s_trace, "record pipeline events in the result");

  std::string c_tmpl, c_emit;
  bool c_allow_unknown = false;
  auto* c = app.add_subcommand("classify", "classify a template by behaviour search");
  c->add_option("-t,--template", c_tmpl, "template json file")->required();
  c->add_option("--emit-tables", c_emit, "write the found behaviour tables to this file");
  c->add_flag("--allow-unknown", c_allow_unknown, "exit 0 even when the verdict is unknown");

  std::string o_tmpl, o_inst;
  int o_maxq = 0;
  std::uint64_t o_budget = 0, o_seed = 0;
  auto* o = app.add_subcommand("oracle", "brute-force ground truth over finite quotients");
  o->add_option("-t,--template", o_tmpl, "template json file")->required();
  o->add_option("-i,--instance", o_inst, "instance json file")->required();
  o->add_option("--max-quotient", o_maxq, "largest vertex count tried, 0 means one per variable");
  o->add_option("--budget", o_budget, "extra bdd nodes allowed, 0 means unbounded");
  o->add_option("--seed", o_seed, "order in which quotients are tried");

  std::string f_tmpl, f_mode = "auto";
  std::uint64_t f_seed = 0;
  int f_count = 100, f_max_vars = 6;
  auto* f = app.add_subcommand("fuzz", "cross-validate the solver against the oracle");
  f->add_option("--template", f_tmpl, "template json file")->required();
  f->add_option("--seed", f_seed, "base seed, round i uses seed + i");
  f->add_option("--count", f_count, "number of rounds");
  f->add_option("--max-vars", f_max_vars, "largest instance size drawn")->default_val(6);
  f->add_option("--mode", f_mode, "solve mode for the rounds")->default_val("auto");

  CLI11_PARSE(app, argc, argv);

  try {
    if (s->parsed()) return cmd_solve(s_tmpl, s_inst, s_mode, s_witness, s_dump, s_trace);
    if (c->parsed()) return cmd_classify(c_tmpl, c_emit, c_allow_unknown);
    if (o->parsed()) return cmd_oracle(o_tmpl, o_inst, o_maxq, o_budget, o_seed);
    if (f->parsed()) return cmd_fuzz(f_tmpl, f_seed, f_count, f_max_vars, f_mode);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
