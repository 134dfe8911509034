#pragma once

#include <fstream>

#include "solve.hpp"

namespace hyperg {

inline constexpr const char* kFormatTag = "hyperg/1";

inline Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw SyntaxError(path + ": " + e.what());
  }
  return j;
}

inline void save_json(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(1) << '\n';
}

inline void check_format(const Json& j, const std::string& what) {
  if (!j.is_object()) throw SyntaxError(what + " must be a json object");
  if (j.value("format", "") != kFormatTag)
    throw SyntaxError(what + " lacks \"format\": \"" + kFormatTag + "\"");
}

inline std::string cell_key(const std::vector<OrderedOrbitType>& cell) {
  std::string s;
  for (std::size_t i = 0; i < cell.size(); ++i) {
    if (i) s += '|';
    s += ordered_to_string(cell[i]);
  }
  return s;
}

inline std::vector<OrderedOrbitType> cell_from_key(const std::string& key) {
  std::vector<OrderedOrbitType> cell;
  std::size_t start = 0;
  while (start <= key.size()) {
    std::size_t end = key.find('|', start);
    if (end == std::string::npos) end = key.size();
    cell.push_back(ordered_from_string(key.substr(start, end - start)));
    start = end + 1;
  }
  return cell;
}

inline Json table_to_json(const BehaviourTable& t) {
  Json cells = Json::object();
  for (const auto& [cell, v] : t.cells) cells[cell_key(cell)] = std::string(1, v);
  return Json{{"action", action_name(t.action)},
              {"order_rule", t.order_rule},
              {"cells", std::move(cells)}};
}

inline BehaviourTable table_from_json(const Json& j) {
  BehaviourTable t;
  auto kind = action_from_name(j.at("action").get<std::string>());
  if (!kind) throw SyntaxError("unknown behaviour action: " + j.at("action").get<std::string>());
  t.action = *kind;
  t.k = action_arity(t.action);
  if (j.contains("order_rule")) t.order_rule = j.at("order_rule").get<std::string>();
  for (const auto& [key, v] : j.at("cells").items()) {
    auto cell = cell_from_key(key);
    if (static_cast<int>(cell.size()) != t.k)
      throw SyntaxError("cell width differs from action arity: " + key);
    std::string s = v.get<std::string>();
    if (s != "E" && s != "N") throw SyntaxError("cell value must be \"E\" or \"N\": " + key);
    t.cells[cell] = s[0];
  }
  return t;
}

inline Json class_to_json(const HypergraphClass& c) {
  if (c.kind == HypergraphClass::Kind::kAll) return "all";
  return Json{{"clique_free", c.forbidden_clique}};
}

inline HypergraphClass class_from_json(const Json& j, int ell) {
  if (j.is_string() && j.get<std::string>() == "all") return HypergraphClass::all(ell);
  if (j.is_object() && j.contains("clique_free"))
    return HypergraphClass::clique_free(ell, j.at("clique_free").get<int>());
  throw SyntaxError("class must be \"all\" or {\"clique_free\": r}");
}

inline Json template_to_json(const Template& t) {
  Json rels = Json::object();
  for (const auto& [name, r] : t.relations) {
    Json jr{{"arity", r.arity}};
    if (r.formula) {
      jr["formula"] = r.formula_text;
    } else {
      Json orbits = Json::array();
      for (const auto& m : r.explicit_members) orbits.push_back(orbit_to_string(m));
      jr["orbits"] = std::move(orbits);
    }
    rels[name] = std::move(jr);
  }
  Json j{{"format", kFormatTag},
         {"ell", t.cls.ell},
         {"class", class_to_json(t.cls)},
         {"relations", std::move(rels)}};
  if (t.supplied_p1 || t.supplied_m) {
    Json b = Json::object();
    if (t.supplied_p1) b["p1"] = table_to_json(*t.supplied_p1);
    if (t.supplied_m) b["m"] = table_to_json(*t.supplied_m);
    j["behaviours"] = std::move(b);
  }
  return j;
}

inline Template template_from_json(const Json& j) {
  check_format(j, "template");
  Template t;
  int ell = j.at("ell").get<int>();
  t.cls = class_from_json(j.value("class", Json("all")), ell);
  for (const auto& [name, jr] : j.at("relations").items()) {
    Relation r;
    r.name = name;
    r.arity = jr.at("arity").get<int>();
    if (jr.contains("formula")) {
      r.formula_text = jr.at("formula").get<std::string>();
      r.formula = parse_formula(r.formula_text, t.cls.ell);
    } else if (jr.contains("orbits")) {
      for (const auto& s : jr.at("orbits")) r.explicit_members.push_back(orbit_from_string(s.get<std::string>()));
    } else {
      throw SyntaxError("relation " + name + " needs \"formula\" or \"orbits\"");
    }
    t.relations.emplace(name, std::move(r));
  }
  if (j.contains("behaviours")) {
    const Json& b = j.at("behaviours");
    if (b.contains("p1")) t.supplied_p1 = table_from_json(b.at("p1"));
    if (b.contains("m")) t.supplied_m = table_from_json(b.at("m"));
  }
  t.validate();
  return t;
}

inline Json instance_to_json(const InstanceDesc& d, const std::string& template_ref = "") {
  Json cons = Json::array();
  for (const auto& [rel, scope] : d.constraints) cons.push_back({{"rel", rel}, {"scope", scope}});
  Json j{{"format", kFormatTag}, {"variables", d.variables}, {"constraints", std::move(cons)}};
  if (!template_ref.empty()) j["template"] = template_ref;
  return j;
}

inline InstanceDesc instance_from_json(const Json& j) {
  check_format(j, "instance");
  InstanceDesc d;
  for (const auto& v : j.at("variables")) d.variables.push_back(v.get<std::string>());
  for (const auto& c : j.at("constraints")) {
    std::vector<std::string> scope;
    for (const auto& s : c.at("scope")) scope.push_back(s.get<std::string>());
    d.constraints.push_back({c.at("rel").get<std::string>(), std::move(scope)});
  }
  return d;
}

inline Json witness_to_json(const Witness& w) {
  Json edges = Json::array();
  for (const auto& e : w.edges) edges.push_back(e);
  Json assign = Json::object();
  for (const auto& [name, v] : w.assignment) assign[name] = v;
  return Json{{"vertices", w.vertex_count}, {"edges", std::move(edges)}, {"assignment", std::move(assign)}};
}

inline Witness witness_from_json(const Json& j) {
  Witness w;
  w.vertex_count = j.at("vertices").get<int>();
  for (const auto& e : j.at("edges")) {
    std::vector<int> edge;
    for (const auto& v : e) edge.push_back(v.get<int>());
    w.edges.push_back(std::move(edge));
  }
  std::sort(w.edges.begin(), w.edges.end());
  for (const auto& [name, v] : j.at("assignment").items()) w.assignment[name] = v.get<int>();
  return w;
}

inline Json result_to_json(const SolveResult& r) {
  Json j{{"format", kFormatTag}, {"status", r.sat ? "sat" : "unsat"}};
  if (r.witness) j["witness"] = witness_to_json(*r.witness);
  j["trace"] = r.trace;
  return j;
}

inline Json verdict_to_json(const Verdict& v) {
  Json j{{"format", kFormatTag}, {"verdict", verdict_name(v.kind)}, {"detail", v.detail}};
  if (v.kind == Verdict::Kind::kNPComplete) j["caveat"] = "assumes the template is a model-complete core";
  return j;
}

}  // namespace hyperg
