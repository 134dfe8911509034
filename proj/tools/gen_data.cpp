#include <filesystem>
#include <hyperg/json_io.hpp>
#include <iostream>

namespace {

using namespace hyperg;

// the three variable triples of the 9-ary walkthrough relations, 1-based
const int kTriples[3][3] = {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}};

std::string var(int i) { return "x" + std::to_string(i); }

std::string eq(int a, int b) { return var(a) + "=" + var(b); }

std::string edge(const int* t) {
  return "E(" + var(t[0]) + "," + var(t[1]) + "," + var(t[2]) + ")";
}

// every variable of one triple differs from every variable of another
std::string cross_disequalities() {
  std::string s;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      for (int a : kTriples[i])
        for (int b : kTriples[j]) {
          if (!s.empty()) s += " & ";
          s += "!(" + eq(a, b) + ")";
        }
  return s;
}

std::string all_constant() {
  std::string s;
  for (const int* t : kTriples) {
    if (!s.empty()) s += " & ";
    s += eq(t[0], t[1]) + " & " + eq(t[1], t[2]);
  }
  return s;
}

std::string all_nonconstant() {
  std::string s;
  for (const int* t : kTriples) {
    if (!s.empty()) s += " & ";
    s += "!(" + eq(t[0], t[1]) + " & " + eq(t[0], t[2]) + ")";
  }
  return s;
}

// true on a non-constant triple exactly when its injective image carries the
// edge: repeated points count as edged
std::string num_is_edge(const int* t) {
  return "(" + edge(t) + " | " + eq(t[0], t[1]) + " | " + eq(t[0], t[2]) + " | " +
         eq(t[1], t[2]) + ")";
}

std::string parity(int target) {
  std::string terms;
  for (int bits = 0; bits < 8; ++bits) {
    int ones = (bits & 1) + ((bits >> 1) & 1) + ((bits >> 2) & 1);
    if (ones % 2 != target) continue;
    std::string term;
    for (int j = 0; j < 3; ++j) {
      if (!term.empty()) term += " & ";
      std::string n = num_is_edge(kTriples[j]);
      term += (bits >> j) & 1 ? n : "!" + n;
    }
    if (!terms.empty()) terms += " | ";
    terms += "(" + term + ")";
  }
  return terms;
}

std::string walkthrough_formula(int target) {
  return cross_disequalities() + " & ((" + all_constant() + ") | ((" + all_nonconstant() +
         ") & (" + parity(target) + ")))";
}

char num(const OrderedOrbitType& o) { return o.base.injective() ? status(o.base) : 'E'; }

// Behaviour of the canonical functions the walkthrough template is preserved
// by: projections follow their first non-constant argument, the minority sums
// edge indicators whenever no argument is constant.
BehaviourTable make_table(ActionKind action, const HypergraphClass& cls) {
  BehaviourTable t;
  t.action = action;
  t.k = action_arity(action);
  CellClasses classes(t.k, cls);
  for (const auto& [cell, cid] : classes.all_cells()) {
    auto args = classes.args_of(cell);
    char v = 0;
    if (action == ActionKind::kMinority) {
      bool all_nc = true;
      for (const auto& a : args)
        if (a.base.constant()) all_nc = false;
      if (all_nc) {
        int ones = 0;
        for (const auto& a : args) ones += num(a) == 'E';
        v = ones % 2 ? 'E' : 'N';
      } else {
        for (const auto& a : args)
          if (!a.base.constant()) {
            v = num(a);
            break;
          }
      }
    } else {
      v = !args[0].base.constant() ? num(args[0]) : num(args[1]);
    }
    t.cells[args] = v;
  }
  return t;
}

// fourfold biconditional: two triples have the same equality pattern and the
// same edge status
std::string same_formula() {
  const int u[3] = {1, 2, 3};
  const int v[3] = {4, 5, 6};
  auto iff = [](const std::string& a, const std::string& b) {
    return "((" + a + " & " + b + ") | (!(" + a + ") & !(" + b + ")))";
  };
  std::string s;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      if (!s.empty()) s += " & ";
      s += iff(eq(u[i], u[j]), eq(v[i], v[j]));
    }
  return s + " & " + iff(edge(u), edge(v));
}

Json instance_json(const std::vector<std::string>& vars,
                   const std::vector<std::pair<std::string, std::vector<std::string>>>& cons,
                   const std::string& template_ref) {
  InstanceDesc d;
  d.variables = vars;
  d.constraints = cons;
  return instance_to_json(d, template_ref);
}

Json golden_trace() {
  Json non_constant = Json::array({"001:", "010:", "011:", "012:", "012:012"});
  Json triples = Json::array({Json::array({"x1", "x2", "x3"}), Json::array({"x4", "x5", "x6"}),
                              Json::array({"x7", "x8", "x9"})});
  Json removed = Json::array();
  for (const auto& t : triples) removed.push_back({{"tuple", t}, {"orbits", non_constant}});
  Json trace = Json::array();
  trace.push_back({{"step", "partition_unsat"},
                   {"seed", Json::array({"x1", "x2", "x3"})},
                   {"classes", Json::array({non_constant, Json::array({"000:"})})},
                   {"s", triples}});
  trace.push_back({{"step", "class_removal"}, {"removed", removed}});
  trace.push_back({{"step", "identify"}, {"classes", triples}});
  return Json{{"format", kFormatTag}, {"trace", trace}};
}

void emit(const std::filesystem::path& dir, const std::string& name, const Json& j) {
  save_json((dir / name).string(), j);
  std::cout << "wrote " << (dir / name).string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  std::filesystem::path dir = argc > 1 ? argv[1] : "data";
  std::filesystem::create_directories(dir);
  try {
    Json order{{"format", kFormatTag},
               {"ell", 3},
               {"class", "all"},
               {"relations",
                {{"R",
                  {{"arity", 4},
                   {"orbits", Json::array({"0011:", "0101:", "0123:012,013", "0123:012,023",
                                           "0123:013,123", "0123:023,123"})}}}}}};
    template_from_json(order);
    emit(dir, "order.json", order);

    emit(dir, "order_instance.json",
         instance_json({"x1", "x2", "x3", "x4", "x5", "x6"},
                       {{"R", {"x1", "x2", "x3", "x4"}}, {"R", {"x3", "x4", "x5", "x6"}}},
                       "order.json"));

    Json edge_tmpl{{"format", kFormatTag},
                   {"ell", 3},
                   {"class", "all"},
                   {"relations", {{"EDGE", {{"arity", 3}, {"formula", "E(x1,x2,x3)"}}}}}};
    template_from_json(edge_tmpl);
    emit(dir, "edge.json", edge_tmpl);

    Json t_rel{{"format", kFormatTag},
               {"ell", 3},
               {"class", "all"},
               {"relations", {{"T", {{"arity", 4}, {"orbits", Json::array({"0011:", "0101:"})}}}}}};
    template_from_json(t_rel);
    emit(dir, "t_rel.json", t_rel);

    Json eq_sd{{"format", kFormatTag},
               {"ell", 3},
               {"class", "all"},
               {"relations", {{"same", {{"arity", 6}, {"formula", same_formula()}}}}}};
    template_from_json(eq_sd);
    emit(dir, "eq_sd.json", eq_sd);

    emit(dir, "eq_sd_instance.json",
         instance_json({"u1", "u2", "u3", "v1", "v2", "v3"},
                       {{"same", {"u1", "u2", "u3", "v1", "v2", "v3"}},
                        {"same", {"u2", "u3", "u1", "v1", "v2", "v3"}}},
                       "eq_sd.json"));

    HypergraphClass cls = HypergraphClass::all(3);
    Json walkthrough{{"format", kFormatTag},
                     {"ell", 3},
                     {"class", "all"},
                     {"relations",
                      {{"C0", {{"arity", 9}, {"formula", walkthrough_formula(0)}}},
                       {"C1", {{"arity", 9}, {"formula", walkthrough_formula(1)}}}}},
                     {"behaviours",
                      {{"p1", table_to_json(make_table(ActionKind::kP1, cls))},
                       {"m", table_to_json(make_table(ActionKind::kMinority, cls))}}}};
    template_from_json(walkthrough);
    emit(dir, "inj_irred.json", walkthrough);

    emit(dir, "inj_irred_instance.json",
         instance_json({"x1", "x2", "x3", "x4", "x5", "x6", "x7", "x8", "x9"},
                       {{"C0", {"x1", "x2", "x3", "x4", "x5", "x6", "x7", "x8", "x9"}},
                        {"C1", {"x1", "x2", "x3", "x4", "x5", "x6", "x7", "x8", "x9"}}},
                       "inj_irred.json"));

    emit(dir, "golden_trace.json", golden_trace());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
