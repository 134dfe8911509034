#pragma once

#include "classify.hpp"
#include "inj_irred.hpp"
#include "oracle.hpp"

namespace hyperg {

enum class SolveMode { kAuto, kLinear, kWidth };

inline SolveMode solve_mode_from_name(const std::string& s) {
  if (s == "auto") return SolveMode::kAuto;
  if (s == "linear") return SolveMode::kLinear;
  if (s == "width") return SolveMode::kWidth;
  throw Error("unknown solve mode: " + s);
}

struct SolveOptions {
  SolveMode mode = SolveMode::kAuto;
  bool trace = false;
  bool dump_linear = false;
};

struct SolveResult {
  bool sat = false;
  std::optional<Witness> witness;
  Json trace = Json::array();
  std::string linear_dump;
};

namespace detail {

inline std::string template_key(const Template& t) {
  std::ostringstream os;
  os << static_cast<int>(t.cls.kind) << ' ' << t.cls.ell << ' ' << t.cls.forbidden_clique << '\n';
  for (const auto& [n, r] : t.relations) {
    os << n << ' ' << r.arity << ' ' << r.formula_text;
    for (const auto& m : r.explicit_members) os << ' ' << orbit_to_string(m);
    os << '\n';
  }
  auto table = [&](const std::optional<BehaviourTable>& bt) {
    if (!bt) {
      os << "-\n";
      return;
    }
    os << action_name(bt->action);
    for (const auto& [cell, v] : bt->cells) {
      os << ' ';
      for (const auto& o : cell) os << ordered_to_string(o) << '|';
      os << '=' << static_cast<int>(v);
    }
    os << '\n';
  };
  table(t.supplied_p1);
  table(t.supplied_m);
  return os.str();
}

}  // namespace detail

// classification is deterministic in the template content, so repeated solves
// against the same template reuse one verdict
inline const Verdict& classify_cached(const Template& t) {
  static std::map<std::string, Verdict> cache;
  std::string key = detail::template_key(t);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(std::move(key), classify(t)).first;
  return it->second;
}

namespace detail {

inline Witness witness_shell(const Instance& inst) {
  Witness w;
  w.vertex_count = static_cast<int>(inst.active.size());
  std::map<int, int> vertex;
  for (std::size_t i = 0; i < inst.active.size(); ++i)
    vertex[inst.active[i]] = static_cast<int>(i);
  for (std::size_t v = 0; v < inst.names.size(); ++v)
    w.assignment[inst.names[v]] = vertex.at(inst.find(static_cast<int>(v)));
  return w;
}

inline Witness extract_witness_linear(const Instance& inst, bool dump, std::string* dump_out) {
  Witness w = witness_shell(inst);
  auto S = all_ell_tuples(inst);
  if (S.empty()) return w;
  AffineSystem sys;
  InjFinResult res = solve_injective_finitisation(inst, S, InjFinMode::kLinear, &sys);
  if (dump && dump_out) *dump_out = dump_affine(sys, inst.names);
  if (!res.sat) throw InternalError("injective finitisation unsolvable on an irreducible instance");
  std::map<int, int> vertex;
  for (std::size_t i = 0; i < inst.active.size(); ++i)
    vertex[inst.active[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < S.size(); ++i) {
    if (!res.values[i]) continue;
    std::vector<int> e;
    for (int id : S[i]) e.push_back(vertex.at(id));
    w.edges.push_back(std::move(e));
  }
  std::sort(w.edges.begin(), w.edges.end());
  return w;
}

// drives the instance to one orbit per tuple, preferring injective values,
// then reads the quotient hypergraph off the singletons
inline std::optional<Witness> solve_width_path(Instance& inst, Trace& tr) {
  int mm = 2 * inst.cls().ell;
  int nn = std::max(3 * inst.cls().ell, inst.cls().bound());
  if (!mn_minimality(inst, mm, nn)) return std::nullopt;
  for (const auto& v : all_ell_tuples(inst)) {
    auto ms = proj(inst, v).members();
    if (ms.size() <= 1) continue;
    std::stable_sort(ms.begin(), ms.end(), [](const OrbitType& a, const OrbitType& b) {
      return a.injective() > b.injective();
    });
    bool narrowed = false;
    for (const auto& o : ms) {
      Instance trial = inst;
      restrict_tuple(trial, v, {o});
      if (!mn_minimality(trial, mm, nn)) continue;
      inst = std::move(trial);
      narrowed = true;
      break;
    }
    if (!narrowed) throw InternalError("no orbit choice survives minimality on a nontrivial instance");
  }
  while (identify_all_equal(inst, tr))
    if (!mn_minimality(inst, mm, nn))
      throw InternalError("identification broke minimality on singleton orbits");
  Witness w = witness_shell(inst);
  std::map<int, int> vertex;
  for (std::size_t i = 0; i < inst.active.size(); ++i)
    vertex[inst.active[i]] = static_cast<int>(i);
  for (const auto& v : all_ell_tuples(inst)) {
    auto ms = proj(inst, v).members();
    if (ms.size() != 1) throw InternalError("tuple not singleton after width reduction");
    if (ms[0].edges.empty()) continue;
    std::vector<int> e;
    for (int id : v) e.push_back(vertex.at(id));
    w.edges.push_back(std::move(e));
  }
  std::sort(w.edges.begin(), w.edges.end());
  return w;
}

}  // namespace detail

// Decides the instance over its template. Auto mode takes the linear path
// when behaviour tables are supplied or found by classification, the width
// path when classification finds a width witness, and refuses otherwise.
// Forced linear searches for the tables it needs; forced width runs on the
// caller's assertion that the template has bounded width.
inline SolveResult solve(const std::shared_ptr<const Template>& tmpl, const InstanceDesc& desc,
                         const SolveOptions& opt = {}) {
  const Template& t = *tmpl;
  bool linear = false;
  std::optional<BehaviourTable> p1 = t.supplied_p1;
  switch (opt.mode) {
    case SolveMode::kAuto: {
      if (t.supplied_p1 && t.supplied_m) {
        linear = true;
        break;
      }
      const Verdict& v = classify_cached(t);
      if (v.kind == Verdict::Kind::kPLinearSymmetry) {
        linear = true;
        p1 = v.p1;
      } else if (v.kind == Verdict::Kind::kPBoundedWidth) {
        linear = false;
      } else {
        throw ModeUnavailable(std::string("no polynomial solving path, template classifies as ") +
                              verdict_name(v.kind));
      }
      break;
    }
    case SolveMode::kLinear: {
      std::optional<BehaviourTable> m = t.supplied_m;
      if (!p1) p1 = search_table(t.relation_sets(), ActionKind::kP1, t.cls);
      if (p1 && !m) m = search_table(t.relation_sets(), ActionKind::kMinority, t.cls);
      if (!p1 || !m)
        throw ModeUnavailable("linear mode needs a projection-acting table and a minority table");
      linear = true;
      break;
    }
    case SolveMode::kWidth:
      linear = false;
      break;
  }

  Instance inst = make_instance(tmpl, desc);
  Trace tr{opt.trace, Json::array()};
  SolveResult out;
  if (linear) {
    auto det_map = classify_orbit_determinism(*p1, t.cls);
    std::set<OrbitType> deterministic;
    for (const auto& [o, d] : det_map)
      if (d.deterministic) deterministic.insert(o);
    if (inj_irreducibility(inst, deterministic, tr))
      out.witness = detail::extract_witness_linear(inst, opt.dump_linear, &out.linear_dump);
  } else {
    out.witness = detail::solve_width_path(inst, tr);
  }
  out.trace = std::move(tr.events);
  if (out.witness) {
    if (!verify_witness(t, desc, *out.witness))
      throw InternalError("extracted witness failed verification");
    out.sat = true;
  }
  return out;
}

}  // namespace hyperg
