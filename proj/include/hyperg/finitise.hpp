#pragma once

#include <optional>
#include <sstream>

#include "instance.hpp"

namespace hyperg {

// increasing ell-subsets of the active variables, ascending
inline std::vector<std::vector<int>> all_ell_tuples(const Instance& inst) {
  std::vector<std::vector<int>> out;
  int nv = static_cast<int>(inst.active.size());
  int ell = inst.cls().ell;
  if (nv < ell) return out;
  for (const auto& pick : combinations(nv, ell)) {
    std::vector<int> t;
    for (int i : pick) t.push_back(inst.active[static_cast<std::size_t>(i)]);
    out.push_back(std::move(t));
  }
  return out;
}

// Finite-domain companion of an instance on a set of ell-tuples: one finite
// variable per tuple, values are ell-ary orbit types, and each source
// constraint contributes the explicit set of orbit maps its members realize.
struct FiniteInstance {
  HypergraphClass cls = HypergraphClass::all(3);
  std::vector<std::vector<int>> tuples;
  std::vector<OrbitType> domain;

  struct Constraint {
    std::string name;
    std::vector<int> vars;                // finite variable indices, ascending
    std::vector<std::vector<int>> rows;   // rows of domain indices, lex ascending
  };
  std::vector<Constraint> constraints;

  int var_of(const std::vector<int>& t) const {
    auto it = std::lower_bound(tuples.begin(), tuples.end(), t);
    if (it == tuples.end() || *it != t) return -1;
    return static_cast<int>(it - tuples.begin());
  }

  bool trivialized() const {
    for (const auto& c : constraints)
      if (c.rows.empty()) return true;
    return false;
  }
};

namespace detail {

// realized orbit maps of one constraint on the finite variables covered by
// its scope, found by depth-first choice of one orbit per tuple with symbolic
// pruning of the remainder
inline void realized_rows(const SymbolicOrbitSet& set, const std::vector<int>& scope,
                          const std::vector<std::vector<int>>& covered,
                          const std::vector<OrbitType>& domain,
                          std::vector<std::vector<int>>& rows) {
  std::vector<std::vector<int>> pos;
  for (const auto& t : covered) pos.push_back(positions_in(t, scope));
  std::vector<int> row(covered.size(), -1);
  std::uint64_t cap = budget().member_enumeration_cap();
  std::function<void(const SymbolicOrbitSet&, std::size_t)> dfs =
      [&](const SymbolicOrbitSet& cur, std::size_t d) {
        if (d == covered.size()) {
          if (rows.size() >= cap) throw ResourceLimit("finitisation above budget");
          rows.push_back(row);
          return;
        }
        for (const OrbitType& o : cur.project_exists(pos[d]).members()) {
          SymbolicOrbitSet next = cur;
          next.restrict_to(pos[d], std::vector<OrbitType>{o});
          if (next.empty()) continue;
          row[d] = static_cast<int>(std::lower_bound(domain.begin(), domain.end(), o) - domain.begin());
          dfs(next, d + 1);
        }
      };
  dfs(set, 0);
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
}

}  // namespace detail

// finitisation on an explicit tuple set; tuples must be increasing
// ell-subsets of active variables, sorted ascending
inline FiniteInstance finitise(const Instance& inst, const std::vector<std::vector<int>>& S) {
  FiniteInstance out;
  out.cls = inst.cls();
  out.tuples = S;
  out.domain = enumerate_orbits(inst.cls().ell, inst.cls());
  auto add = [&](const std::string& name, const std::vector<int>& scope, const SymbolicOrbitSet& set) {
    if (static_cast<int>(scope.size()) < inst.cls().ell) return;
    FiniteInstance::Constraint c;
    c.name = name;
    std::vector<std::vector<int>> covered;
    for (const auto& t : S) {
      if (!std::includes(scope.begin(), scope.end(), t.begin(), t.end())) continue;
      covered.push_back(t);
      c.vars.push_back(out.var_of(t));
    }
    if (covered.empty()) {
      if (set.empty()) out.constraints.push_back(std::move(c));  // unsatisfiable marker
      return;
    }
    detail::realized_rows(set, scope, covered, out.domain, c.rows);
    out.constraints.push_back(std::move(c));
  };
  for (std::size_t i = 0; i < inst.entries.size(); ++i) {
    const auto& e = inst.entries[i];
    std::string name = e.coverage ? "coverage" : inst.original[i].rel;
    add(name, e.scope, e.set);
  }
  for (const auto& [key, q] : inst.sub) add("derived", key, q);
  return out;
}

inline FiniteInstance finitise(const Instance& inst) { return finitise(inst, all_ell_tuples(inst)); }

// restriction to the two injective orbit values
inline FiniteInstance injectivise(const FiniteInstance& j) {
  FiniteInstance out = j;
  std::vector<bool> keep(j.domain.size());
  for (std::size_t i = 0; i < j.domain.size(); ++i) keep[i] = j.domain[i].injective();
  for (auto& c : out.constraints) {
    std::vector<std::vector<int>> rows;
    for (const auto& r : c.rows) {
      bool ok = true;
      for (int v : r)
        if (!keep[static_cast<std::size_t>(v)]) {
          ok = false;
          break;
        }
      if (ok) rows.push_back(r);
    }
    c.rows = std::move(rows);
  }
  return out;
}

namespace detail {

// assignments over a subset of finite variables consistent with every
// constraint through projection membership
struct SubsetTable {
  std::vector<int> vars;
  std::vector<std::vector<int>> rows;
};

inline std::vector<int> overlap_positions(const std::vector<int>& inner, const std::vector<int>& outer) {
  std::vector<int> out;
  for (int v : inner) {
    auto it = std::find(outer.begin(), outer.end(), v);
    if (it != outer.end()) out.push_back(static_cast<int>(it - outer.begin()));
  }
  return out;
}

}  // namespace detail

// finite (2,3)-minimality: adds one constraint per at-most-3-subset of finite
// variables holding the locally consistent assignments, filters the original
// rows through them, and propagates to a fixpoint
inline FiniteInstance two_three_minimality(const FiniteInstance& j) {
  FiniteInstance out = j;
  int n = static_cast<int>(j.tuples.size());
  int dsz = static_cast<int>(j.domain.size());
  std::map<std::vector<int>, std::vector<std::vector<int>>> tables;
  for (int k = 1; k <= std::min(3, n); ++k) {
    for (const auto& pick : combinations(n, k)) {
      std::vector<std::vector<int>> rows;
      std::vector<int> row(pick.size());
      std::function<void(std::size_t)> gen = [&](std::size_t d) {
        if (d == pick.size()) {
          rows.push_back(row);
          return;
        }
        for (int v = 0; v < dsz; ++v) {
          row[d] = v;
          gen(d + 1);
        }
      };
      gen(0);
      tables.emplace(pick, std::move(rows));
    }
  }
  auto filter_by = [&](std::vector<std::vector<int>>& rows, const std::vector<int>& vars,
                       const std::vector<std::vector<int>>& other_rows, const std::vector<int>& other_vars) {
    std::vector<int> shared;
    for (int v : other_vars)
      if (std::find(vars.begin(), vars.end(), v) != vars.end()) shared.push_back(v);
    if (shared.empty()) return false;
    auto mine = detail::overlap_positions(shared, vars);
    auto theirs = detail::overlap_positions(shared, other_vars);
    std::set<std::vector<int>> seen;
    for (const auto& r : other_rows) {
      std::vector<int> p;
      for (int i : theirs) p.push_back(r[static_cast<std::size_t>(i)]);
      seen.insert(std::move(p));
    }
    std::vector<std::vector<int>> next;
    for (const auto& r : rows) {
      std::vector<int> p;
      for (int i : mine) p.push_back(r[static_cast<std::size_t>(i)]);
      if (seen.count(p)) next.push_back(r);
    }
    bool changed = next.size() != rows.size();
    rows = std::move(next);
    return changed;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& [vars, rows] : tables) {
      for (const auto& c : out.constraints)
        changed |= filter_by(rows, vars, c.rows, c.vars);
      for (const auto& [vars2, rows2] : tables) {
        if (vars2 == vars) continue;
        changed |= filter_by(rows, vars, rows2, vars2);
      }
    }
    for (auto& c : out.constraints)
      for (const auto& [vars, rows] : tables)
        changed |= filter_by(c.rows, c.vars, rows, vars);
  }
  for (auto& [vars, rows] : tables)
    out.constraints.push_back({"minimality", vars, std::move(rows)});
  return out;
}

// complete backtracking search; fills assignment (domain indices per finite
// variable) when solvable
inline bool finite_solvable(const FiniteInstance& j, std::vector<int>* assignment = nullptr) {
  int n = static_cast<int>(j.tuples.size());
  int dsz = static_cast<int>(j.domain.size());
  for (const auto& c : j.constraints)
    if (c.rows.empty()) return false;
  std::vector<int> value(static_cast<std::size_t>(n), -1);
  std::function<bool(int)> dfs = [&](int v) {
    if (v == n) return true;
    for (int d = 0; d < dsz; ++d) {
      value[static_cast<std::size_t>(v)] = d;
      bool ok = true;
      for (const auto& c : j.constraints) {
        bool any = false;
        for (const auto& r : c.rows) {
          bool fits = true;
          for (std::size_t i = 0; i < c.vars.size(); ++i) {
            int w = c.vars[i];
            if (w <= v && value[static_cast<std::size_t>(w)] != r[i]) {
              fits = false;
              break;
            }
          }
          if (fits) {
            any = true;
            break;
          }
        }
        if (!any) {
          ok = false;
          break;
        }
      }
      if (ok && dfs(v + 1)) return true;
    }
    value[static_cast<std::size_t>(v)] = -1;
    return false;
  };
  if (!dfs(0)) return false;
  if (assignment) *assignment = value;
  return true;
}

// partition of the realized values at finite variable v into linked classes:
// two values are linked when connected through co-occurrence in constraint
// rows; returns one class id per domain index, -1 for values outside the
// projection at v
inline std::vector<int> linkedness_congruence(const FiniteInstance& j, int v) {
  int n = static_cast<int>(j.tuples.size());
  int dsz = static_cast<int>(j.domain.size());
  std::vector<int> uf(static_cast<std::size_t>(n * dsz));
  for (std::size_t i = 0; i < uf.size(); ++i) uf[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int x) {
    while (uf[static_cast<std::size_t>(x)] != x) x = uf[static_cast<std::size_t>(x)];
    return x;
  };
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) uf[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  };
  for (const auto& c : j.constraints)
    for (const auto& r : c.rows)
      for (std::size_t i = 1; i < c.vars.size(); ++i)
        unite(c.vars[0] * dsz + r[0], c.vars[i] * dsz + r[i]);
  // realized = present in the projection of every covering constraint
  std::vector<bool> realized(static_cast<std::size_t>(dsz), true);
  for (const auto& c : j.constraints) {
    auto it = std::find(c.vars.begin(), c.vars.end(), v);
    if (it == c.vars.end()) continue;
    std::size_t pos = static_cast<std::size_t>(it - c.vars.begin());
    std::vector<bool> seen(static_cast<std::size_t>(dsz), false);
    for (const auto& r : c.rows) seen[static_cast<std::size_t>(r[pos])] = true;
    for (int d = 0; d < dsz; ++d) realized[static_cast<std::size_t>(d)] = realized[static_cast<std::size_t>(d)] && seen[static_cast<std::size_t>(d)];
  }
  std::vector<int> out(static_cast<std::size_t>(dsz), -1);
  for (int d = 0; d < dsz; ++d)
    if (realized[static_cast<std::size_t>(d)]) out[static_cast<std::size_t>(d)] = find(v * dsz + d);
  return out;
}

// Stacked GF(2) equations over tuple variables; E maps to 1 and N to 0.
struct AffineSystem {
  std::vector<std::vector<int>> variables;       // column i describes tuple variables[i]
  std::vector<std::vector<std::uint8_t>> rows;   // coefficient rows
  std::vector<std::uint8_t> rhs;

  void add_row(std::vector<std::uint8_t> row, std::uint8_t b) {
    rows.push_back(std::move(row));
    rhs.push_back(b);
  }
};

namespace detail {

// RREF over GF(2); returns pivot column per row, rows without pivot dropped
inline std::vector<int> gf2_rref(std::vector<std::vector<std::uint8_t>>& rows,
                                 std::vector<std::uint8_t>* rhs) {
  std::vector<int> pivots;
  std::size_t rank = 0;
  std::size_t width = rows.empty() ? 0 : rows[0].size();
  for (std::size_t col = 0; col < width && rank < rows.size(); ++col) {
    std::size_t pick = rank;
    while (pick < rows.size() && !rows[pick][col]) ++pick;
    if (pick == rows.size()) continue;
    std::swap(rows[rank], rows[pick]);
    if (rhs) std::swap((*rhs)[rank], (*rhs)[pick]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || !rows[r][col]) continue;
      for (std::size_t c = 0; c < width; ++c) rows[r][c] ^= rows[rank][c];
      if (rhs) (*rhs)[r] ^= (*rhs)[rank];
    }
    pivots.push_back(static_cast<int>(col));
    ++rank;
  }
  return pivots;
}

// null-space check rows of the span of the given difference vectors, with
// right-hand sides anchored at base; emitted ascending by free column
inline void null_space_rows(std::vector<std::vector<std::uint8_t>> basis,
                            const std::vector<std::uint8_t>& base, AffineSystem& sys) {
  std::size_t width = base.size();
  auto pivots = gf2_rref(basis, nullptr);
  std::vector<bool> is_pivot(width, false);
  for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  for (std::size_t j = 0; j < width; ++j) {
    if (is_pivot[j]) continue;
    std::vector<std::uint8_t> row(width, 0);
    row[j] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i)
      row[static_cast<std::size_t>(pivots[i])] = basis[i][j];
    std::uint8_t b = 0;
    for (std::size_t c = 0; c < width; ++c) b ^= static_cast<std::uint8_t>(row[c] & base[c]);
    sys.add_row(std::move(row), b);
  }
}

}  // namespace detail

// Encodes a set of {0,1}-vectors as an affine system when the set is
// minority-closed (equivalently, an affine subspace over GF(2)); returns
// nothing otherwise. The empty set encodes as the single row 0 = 1.
inline std::optional<AffineSystem> affine_encode(const std::vector<std::vector<std::uint8_t>>& maps,
                                                 std::vector<std::vector<int>> variables) {
  AffineSystem sys;
  sys.variables = std::move(variables);
  std::size_t width = sys.variables.size();
  if (maps.empty()) {
    sys.add_row(std::vector<std::uint8_t>(width, 0), 1);
    return sys;
  }
  std::vector<std::vector<std::uint8_t>> diffs;
  for (const auto& m : maps) {
    if (m.size() != width) throw ArityMismatch("map width differs from variable count");
    std::vector<std::uint8_t> d(width);
    for (std::size_t c = 0; c < width; ++c) d[c] = static_cast<std::uint8_t>(m[c] ^ maps[0][c]);
    diffs.push_back(std::move(d));
  }
  auto reduced = diffs;
  std::size_t rank = detail::gf2_rref(reduced, nullptr).size();
  if (rank >= 63 || maps.size() != (1ull << rank)) return std::nullopt;
  reduced.resize(rank);
  detail::null_space_rows(reduced, maps[0], sys);
  return sys;
}

// Same encoding for a set given as a BDD over the listed variable ids; the
// hull is grown one independent difference at a time, so the member set is
// never enumerated.
inline std::optional<AffineSystem> affine_encode_bdd(BddManager::Ref f, const std::vector<int>& vars,
                                                     std::vector<std::vector<int>> variables) {
  AffineSystem sys;
  sys.variables = std::move(variables);
  std::size_t width = vars.size();
  if (f == BddManager::zero) {
    sys.add_row(std::vector<std::uint8_t>(width, 0), 1);
    return sys;
  }
  unsigned __int128 total = bdd().count(f, vars);
  auto lex_least = [&](BddManager::Ref g) {
    std::vector<std::uint8_t> m(width, 0);
    bdd().enumerate(g, vars, [&](const BddManager::VarMask& model) {
      for (std::size_t i = 0; i < width; ++i) m[i] = model[static_cast<std::size_t>(vars[i])];
      return false;
    });
    return m;
  };
  std::vector<std::uint8_t> base = lex_least(f);
  std::vector<std::vector<std::uint8_t>> basis;
  // grow the basis by violating one null-space check at a time; the hull
  // itself is never materialized, so intermediate subspaces stay cheap
  while (true) {
    AffineSystem hull;
    hull.variables = sys.variables;
    detail::null_space_rows(basis, base, hull);
    bool grew = false;
    for (std::size_t r = 0; r < hull.rows.size() && !grew; ++r) {
      BddManager::Ref par = BddManager::zero;
      for (std::size_t c = 0; c < width; ++c)
        if (hull.rows[r][c]) par = bdd().lxor(par, bdd().var(vars[c]));
      BddManager::Ref outside = bdd().land(f, hull.rhs[r] ? bdd().lnot(par) : par);
      if (outside == BddManager::zero) continue;
      std::vector<std::uint8_t> m = lex_least(outside);
      for (std::size_t c = 0; c < width; ++c) m[c] = static_cast<std::uint8_t>(m[c] ^ base[c]);
      basis.push_back(std::move(m));
      if (basis.size() > width) throw InternalError("affine basis exceeded width");
      grew = true;
    }
    if (!grew) {
      if (basis.size() >= 63 || total != (static_cast<unsigned __int128>(1) << basis.size()))
        return std::nullopt;
      sys.rows = std::move(hull.rows);
      sys.rhs = std::move(hull.rhs);
      return sys;
    }
  }
}

// Gaussian elimination; free variables take 0. Returns the assignment per
// column or nothing when inconsistent.
inline std::optional<std::vector<std::uint8_t>> gauss_solve(const AffineSystem& sys) {
  auto rows = sys.rows;
  auto rhs = sys.rhs;
  std::size_t width = sys.variables.size();
  auto pivots = detail::gf2_rref(rows, &rhs);
  for (std::size_t r = pivots.size(); r < rows.size(); ++r)
    if (rhs[r]) return std::nullopt;
  std::vector<std::uint8_t> value(width, 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    std::uint8_t b = rhs[i];
    for (std::size_t c = 0; c < width; ++c)
      if (c != static_cast<std::size_t>(pivots[i]) && rows[i][c]) b ^= value[c];
    value[static_cast<std::size_t>(pivots[i])] = b;
  }
  return value;
}

inline std::string dump_affine(const AffineSystem& sys, const std::vector<std::string>& names) {
  std::ostringstream os;
  for (std::size_t r = 0; r < sys.rows.size(); ++r) {
    bool first = true;
    for (std::size_t c = 0; c < sys.rows[r].size(); ++c) {
      if (!sys.rows[r][c]) continue;
      if (!first) os << " + ";
      first = false;
      os << "x_{(";
      for (std::size_t i = 0; i < sys.variables[c].size(); ++i) {
        if (i) os << ",";
        os << names[static_cast<std::size_t>(sys.variables[c][i])];
      }
      os << ")}";
    }
    if (first) os << "0";
    os << " = " << static_cast<int>(sys.rhs[r]) << "\n";
  }
  return os.str();
}

enum class InjFinMode { kLinear, kGeneric };

struct InjFinResult {
  bool sat = false;
  std::vector<std::uint8_t> values;  // per tuple of S, 1 = E
};

// Solves the injective finitisation restricted to the tuple set S. Linear
// mode stacks the affine encodings of every restricted constraint; generic
// mode materializes the finite instance and searches after a (2,3) pass.
inline InjFinResult solve_injective_finitisation(const Instance& inst,
                                                 const std::vector<std::vector<int>>& S,
                                                 InjFinMode mode,
                                                 AffineSystem* system_out = nullptr) {
  InjFinResult res;
  if (mode == InjFinMode::kGeneric) {
    FiniteInstance j = injectivise(finitise(inst, S));
    j = two_three_minimality(j);
    std::vector<int> assignment;
    if (j.trivialized() || !finite_solvable(j, &assignment)) return res;
    res.sat = true;
    for (int d : assignment)
      res.values.push_back(static_cast<std::uint8_t>(j.domain[static_cast<std::size_t>(d)].edges.empty() ? 0 : 1));
    return res;
  }

  AffineSystem sys;
  sys.variables = S;
  auto stack = [&](const std::string& name, const std::vector<int>& scope, const SymbolicOrbitSet& set) -> bool {
    int k = static_cast<int>(scope.size());
    if (k < inst.cls().ell) return true;
    std::vector<std::uint8_t> discrete(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) discrete[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
    BddManager::Ref f = set.layer(discrete);
    const auto& tuples = position_tuples(k, inst.cls().ell);
    BddManager::VarMask drop;
    std::vector<int> kept_rank;
    std::vector<int> kept_col;
    for (std::size_t r = 0; r < tuples.size(); ++r) {
      std::vector<int> t;
      for (int p : tuples[r]) t.push_back(scope[static_cast<std::size_t>(p)]);
      auto it = std::lower_bound(S.begin(), S.end(), t);
      if (it != S.end() && *it == t) {
        kept_rank.push_back(static_cast<int>(r));
        kept_col.push_back(static_cast<int>(it - S.begin()));
      } else {
        drop.set(r);
      }
    }
    if (kept_rank.empty()) return f != BddManager::zero;
    BddManager::Ref g = bdd().exists(f, drop);
    std::vector<std::vector<int>> local_vars;
    for (int c : kept_col) local_vars.push_back(S[static_cast<std::size_t>(c)]);
    auto enc = affine_encode_bdd(g, kept_rank, local_vars);
    if (!enc)
      throw AssumptionViolated("constraint " + name + " is not affine under injective finitisation");
    for (std::size_t r = 0; r < enc->rows.size(); ++r) {
      std::vector<std::uint8_t> row(S.size(), 0);
      for (std::size_t c = 0; c < kept_col.size(); ++c)
        row[static_cast<std::size_t>(kept_col[c])] = enc->rows[r][c];
      sys.add_row(std::move(row), enc->rhs[r]);
    }
    return true;
  };
  bool feasible = true;
  for (std::size_t i = 0; i < inst.entries.size() && feasible; ++i) {
    const auto& e = inst.entries[i];
    feasible = stack(e.coverage ? "coverage" : inst.original[i].rel, e.scope, e.set);
  }
  if (feasible)
    for (const auto& [key, q] : inst.sub) {
      if (!stack("derived", key, q)) {
        feasible = false;
        break;
      }
    }
  if (system_out) *system_out = sys;
  if (!feasible) return res;
  auto sol = gauss_solve(sys);
  if (!sol) return res;
  res.sat = true;
  res.values = *sol;
  return res;
}

}  // namespace hyperg
