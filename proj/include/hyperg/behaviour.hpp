#pragma once

#include <optional>
#include <set>

#include "orbit_set.hpp"

namespace hyperg {

// Actions a canonical polymorphism can induce on edge statuses of cells whose
// arguments are all injective.
enum class ActionKind { kP1, kP2, kMinority, kMajority, kOr, kAnd };

inline int action_arity(ActionKind a) {
  return a == ActionKind::kMinority || a == ActionKind::kMajority ? 3 : 2;
}

inline const char* action_name(ActionKind a) {
  switch (a) {
    case ActionKind::kP1: return "p1";
    case ActionKind::kP2: return "p2";
    case ActionKind::kMinority: return "minority";
    case ActionKind::kMajority: return "majority";
    case ActionKind::kOr: return "or";
    case ActionKind::kAnd: return "and";
  }
  return "?";
}

inline std::optional<ActionKind> action_from_name(const std::string& s) {
  for (ActionKind a : {ActionKind::kP1, ActionKind::kP2, ActionKind::kMinority,
                       ActionKind::kMajority, ActionKind::kOr, ActionKind::kAnd})
    if (s == action_name(a)) return a;
  return std::nullopt;
}

inline char action_value(ActionKind a, const std::vector<char>& bits) {
  auto b = [&](int i) { return bits[static_cast<std::size_t>(i)] == 'E'; };
  bool r = false;
  switch (a) {
    case ActionKind::kP1: r = b(0); break;
    case ActionKind::kP2: r = b(1); break;
    case ActionKind::kMinority: r = b(0) ^ b(1) ^ b(2); break;
    case ActionKind::kMajority: r = (b(0) && b(1)) || (b(0) && b(2)) || (b(1) && b(2)); break;
    case ActionKind::kOr: r = b(0) || b(1); break;
    case ActionKind::kAnd: r = b(0) && b(1); break;
  }
  return r ? 'E' : 'N';
}

// edge status of an injective ell-orbit
inline char status(const OrbitType& o) {
  std::uint16_t full = static_cast<std::uint16_t>((1u << o.blocks()) - 1);
  return std::binary_search(o.edges.begin(), o.edges.end(), full) ? 'E' : 'N';
}

// a cell exists when the arguments jointly separate every pair of positions
inline bool cell_exists(const std::vector<OrderedOrbitType>& cell, int ell) {
  for (int i = 0; i < ell; ++i) {
    for (int j = i + 1; j < ell; ++j) {
      bool separated = false;
      for (const auto& o : cell) {
        if (o.base.kernel[static_cast<std::size_t>(i)] != o.base.kernel[static_cast<std::size_t>(j)]) {
          separated = true;
          break;
        }
      }
      if (!separated) return false;
    }
  }
  return true;
}

// Edge statuses a k-ary canonical function assigns to injective images: one
// entry per existing cell (k-tuple of ordered ell-orbits separating all
// positions). The action tag fixes values on all-injective cells; the order
// rule names how output ranks are formed and is metadata here.
struct BehaviourTable {
  ActionKind action = ActionKind::kP1;
  int k = 2;
  std::string order_rule = "lexicographic-first-argument";
  std::map<std::vector<OrderedOrbitType>, char> cells;

  char at(const std::vector<OrderedOrbitType>& cell) const {
    auto it = cells.find(cell);
    if (it == cells.end()) throw MissingCell("behaviour table lacks a cell");
    return it->second;
  }
};

// Cells grouped by the simultaneous position action of the symmetric group;
// a canonical function is constant on each group.
class CellClasses {
 public:
  CellClasses(int k, const HypergraphClass& cls) : k_(k), cls_(cls) {
    pool_ = enumerate_ordered_orbits(cls.ell, cls);
    for (std::size_t i = 0; i < pool_.size(); ++i) pool_index_[pool_[i]] = static_cast<int>(i);

    std::vector<int> perm(static_cast<std::size_t>(cls.ell));
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::vector<int> act(pool_.size());
      for (std::size_t i = 0; i < pool_.size(); ++i)
        act[i] = pool_index_.at(permute_positions(pool_[i], perm));
      actions_.push_back(std::move(act));
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::vector<int> cell(static_cast<std::size_t>(k), 0);
    std::map<std::vector<int>, int> canon_to_class;
    while (true) {
      std::vector<OrderedOrbitType> args;
      for (int id : cell) args.push_back(pool_[static_cast<std::size_t>(id)]);
      if (cell_exists(args, cls.ell)) {
        std::vector<int> canon = canonical(cell);
        auto it = canon_to_class.find(canon);
        int cid;
        if (it == canon_to_class.end()) {
          cid = static_cast<int>(reps_.size());
          canon_to_class.emplace(canon, cid);
          reps_.push_back(canon);
        } else {
          cid = it->second;
        }
        class_of_[cell] = cid;
      }
      int i = k - 1;
      while (i >= 0 && cell[static_cast<std::size_t>(i)] == static_cast<int>(pool_.size()) - 1) --i;
      if (i < 0) break;
      ++cell[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j) cell[static_cast<std::size_t>(j)] = 0;
    }
  }

  const std::vector<OrderedOrbitType>& pool() const { return pool_; }
  int pool_id(const OrderedOrbitType& o) const {
    auto it = pool_index_.find(o);
    if (it == pool_index_.end()) throw InternalError("ordered orbit outside pool");
    return it->second;
  }
  std::size_t cell_count() const { return class_of_.size(); }
  std::size_t class_count() const { return reps_.size(); }
  int class_of(const std::vector<int>& cell) const { return class_of_.at(cell); }
  const std::vector<int>& rep(int cid) const { return reps_[static_cast<std::size_t>(cid)]; }
  const std::map<std::vector<int>, int>& all_cells() const { return class_of_; }

  std::vector<OrderedOrbitType> args_of(const std::vector<int>& cell) const {
    std::vector<OrderedOrbitType> out;
    for (int id : cell) out.push_back(pool_[static_cast<std::size_t>(id)]);
    return out;
  }

 private:
  std::vector<int> canonical(const std::vector<int>& cell) const {
    std::vector<int> best;
    for (const auto& act : actions_) {
      std::vector<int> img;
      for (int id : cell) img.push_back(act[static_cast<std::size_t>(id)]);
      if (best.empty() || img < best) best = std::move(img);
    }
    return best;
  }

  int k_;
  HypergraphClass cls_;
  std::vector<OrderedOrbitType> pool_;
  std::map<OrderedOrbitType, int> pool_index_;
  std::vector<std::vector<int>> actions_;
  std::map<std::vector<int>, int> class_of_;
  std::vector<std::vector<int>> reps_;
};

namespace detail {

// ordered members of a relation: every member under every block order
inline std::vector<OrderedOrbitType> ordered_members(const SymbolicOrbitSet& rel) {
  std::vector<OrderedOrbitType> out;
  for (const auto& m : rel.members()) {
    std::vector<std::uint8_t> order(static_cast<std::size_t>(m.blocks()));
    std::iota(order.begin(), order.end(), std::uint8_t{0});
    do {
      out.push_back({m, order});
    } while (std::next_permutation(order.begin(), order.end()));
  }
  return out;
}

struct PreservationRow {
  std::vector<int> cell_classes;       // one per output block subset, ascending
  std::vector<std::uint32_t> allowed;  // admissible edge bit vectors
};

// output kernel of a k-tuple of ordered members applied coordinatewise
inline std::vector<std::uint8_t> meet_kernel(const std::vector<const OrderedOrbitType*>& args, int n) {
  std::vector<std::vector<std::uint8_t>> sig(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (const auto* a : args) sig[static_cast<std::size_t>(i)].push_back(a->base.kernel[static_cast<std::size_t>(i)]);
  std::map<std::vector<std::uint8_t>, std::uint8_t> ids;
  std::vector<std::uint8_t> kernel(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto it = ids.find(sig[static_cast<std::size_t>(i)]);
    if (it == ids.end()) it = ids.emplace(sig[static_cast<std::size_t>(i)], static_cast<std::uint8_t>(ids.size())).first;
    kernel[static_cast<std::size_t>(i)] = it->second;
  }
  return canonical_kernel(kernel);
}

// rows constraining a table of arity k against one relation; nullopt when
// some row admits no value at all
inline std::optional<std::vector<PreservationRow>> build_rows(const SymbolicOrbitSet& rel,
                                                              const CellClasses& classes, int k) {
  const auto& cls = rel.hclass();
  auto oms = ordered_members(rel);
  if (oms.empty()) return std::vector<PreservationRow>{};
  std::uint64_t combos = 1;
  for (int j = 0; j < k; ++j) {
    combos *= oms.size();
    if (combos > budget().search_step_cap()) throw ResourceLimit("preservation rows above budget");
  }
  int n = rel.arity();
  std::set<std::pair<std::vector<int>, std::vector<std::uint32_t>>> seen;
  std::vector<PreservationRow> rows;
  std::vector<std::size_t> pick(static_cast<std::size_t>(k), 0);
  while (true) {
    std::vector<const OrderedOrbitType*> args;
    for (std::size_t j = 0; j < pick.size(); ++j) args.push_back(&oms[pick[j]]);
    auto kernel = meet_kernel(args, n);
    int q = block_count(kernel);
    auto subsets = ell_subsets(q, cls.ell);

    std::vector<int> rep_first(static_cast<std::size_t>(q), -1);
    for (int i = 0; i < n; ++i)
      if (rep_first[kernel[static_cast<std::size_t>(i)]] < 0) rep_first[kernel[static_cast<std::size_t>(i)]] = i;

    std::vector<int> cell_classes;
    for (std::uint16_t bm : subsets) {
      std::vector<int> pos;
      for (int b = 0; b < q; ++b)
        if (bm & (1u << b)) pos.push_back(rep_first[static_cast<std::size_t>(b)]);
      std::sort(pos.begin(), pos.end());
      std::vector<int> cell;
      for (const auto* a : args) cell.push_back(classes.pool_id(restrict_ordered(*a, pos)));
      cell_classes.push_back(classes.class_of(cell));
    }

    std::vector<std::uint32_t> allowed;
    for (std::uint32_t mask = 0; mask < (1u << subsets.size()); ++mask) {
      OrbitType out{kernel, {}};
      for (std::size_t t = 0; t < subsets.size(); ++t)
        if (mask & (1u << t)) out.edges.push_back(subsets[t]);
      if (orbit_valid(out, cls) && rel.contains(out)) allowed.push_back(mask);
    }
    if (allowed.empty()) return std::nullopt;
    if (allowed.size() < (1u << subsets.size())) {
      auto key = std::make_pair(cell_classes, allowed);
      if (seen.insert(key).second) rows.push_back({std::move(key.first), std::move(key.second)});
    }

    std::size_t j = pick.size();
    while (j > 0 && pick[j - 1] == oms.size() - 1) --j;
    if (j == 0) break;
    ++pick[j - 1];
    for (std::size_t t = j; t < pick.size(); ++t) pick[t] = 0;
  }
  return rows;
}

// value tried first at each class: follow an injective argument where one
// exists, otherwise put an edge exactly when the lowest-ranked block of the
// projection argument is unrepeated
inline char preferred_value(ActionKind kind, const CellClasses& classes, int cid) {
  if (kind != ActionKind::kP1 && kind != ActionKind::kP2) return 'E';
  auto args = classes.args_of(classes.rep(cid));
  const OrderedOrbitType& o1 = kind == ActionKind::kP1 ? args[0] : args[1];
  const OrderedOrbitType& o2 = kind == ActionKind::kP1 ? args[1] : args[0];
  if (o1.base.injective()) return status(o1.base);
  if (o2.base.injective()) return status(o2.base);
  int minb = -1;
  for (std::size_t b = 0; b < o1.order.size(); ++b)
    if (o1.order[b] == 0) minb = static_cast<int>(b);
  int occurrences = 0;
  for (std::uint8_t b : o1.base.kernel)
    if (b == minb) ++occurrences;
  return occurrences == 1 ? 'E' : 'N';
}

}  // namespace detail

// Searches for a behaviour table with the given action preserving every
// relation. Deterministic: cells are grouped into symmetry classes, the
// all-injective classes are fixed by the action, and the rest are assigned by
// depth-first search trying the preferred value first.
inline std::optional<BehaviourTable> search_table(const std::vector<const SymbolicOrbitSet*>& relations,
                                                  ActionKind kind, const HypergraphClass& cls) {
  int k = action_arity(kind);
  CellClasses classes(k, cls);

  std::vector<char> fixed(classes.class_count(), 0);
  for (const auto& [cell, cid] : classes.all_cells()) {
    auto args = classes.args_of(cell);
    bool all_inj = true;
    std::vector<char> bits;
    for (const auto& a : args) {
      if (!a.base.injective()) {
        all_inj = false;
        break;
      }
      bits.push_back(status(a.base));
    }
    if (!all_inj) continue;
    char v = action_value(kind, bits);
    if (fixed[static_cast<std::size_t>(cid)] && fixed[static_cast<std::size_t>(cid)] != v) return std::nullopt;
    fixed[static_cast<std::size_t>(cid)] = v;
  }

  std::vector<detail::PreservationRow> rows;
  for (const auto* rel : relations) {
    auto r = detail::build_rows(*rel, classes, k);
    if (!r) return std::nullopt;
    rows.insert(rows.end(), r->begin(), r->end());
  }

  std::vector<std::vector<std::size_t>> touching(classes.class_count());
  for (std::size_t ri = 0; ri < rows.size(); ++ri)
    for (int cid : rows[ri].cell_classes) touching[static_cast<std::size_t>(cid)].push_back(ri);
  for (auto& t : touching) {
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
  }

  std::vector<char> values = fixed;
  auto row_consistent = [&](const detail::PreservationRow& row) {
    for (std::uint32_t mask : row.allowed) {
      bool ok = true;
      for (std::size_t t = 0; t < row.cell_classes.size(); ++t) {
        char v = values[static_cast<std::size_t>(row.cell_classes[t])];
        if (!v) continue;
        if (((mask >> t) & 1u) != (v == 'E' ? 1u : 0u)) {
          ok = false;
          break;
        }
      }
      if (ok) return true;
    }
    return false;
  };

  for (std::size_t ri = 0; ri < rows.size(); ++ri)
    if (!row_consistent(rows[ri])) return std::nullopt;

  std::vector<int> free_ids;
  for (std::size_t cid = 0; cid < values.size(); ++cid)
    if (!values[cid]) free_ids.push_back(static_cast<int>(cid));

  std::uint64_t steps = 0;
  std::function<bool(std::size_t)> dfs = [&](std::size_t i) -> bool {
    if (++steps > budget().search_step_cap()) throw ResourceLimit("table search above budget");
    if (i == free_ids.size()) return true;
    int cid = free_ids[i];
    char pref = detail::preferred_value(kind, classes, cid);
    for (char v : {pref, static_cast<char>(pref == 'E' ? 'N' : 'E')}) {
      values[static_cast<std::size_t>(cid)] = v;
      bool ok = true;
      for (std::size_t ri : touching[static_cast<std::size_t>(cid)]) {
        if (!row_consistent(rows[ri])) {
          ok = false;
          break;
        }
      }
      if (ok && dfs(i + 1)) return true;
    }
    values[static_cast<std::size_t>(cid)] = 0;
    return false;
  };
  if (!dfs(0)) return std::nullopt;

  BehaviourTable table;
  table.action = kind;
  table.k = k;
  for (const auto& [cell, cid] : classes.all_cells())
    table.cells[classes.args_of(cell)] = values[static_cast<std::size_t>(cid)];
  return table;
}

// checks one table against one relation, returning a description of the
// first violated row
inline std::optional<std::string> check_preservation(const SymbolicOrbitSet& rel,
                                                     const BehaviourTable& table) {
  CellClasses classes(table.k, rel.hclass());
  auto rows_opt = detail::build_rows(rel, classes, table.k);
  if (!rows_opt) return "some output admits no edge assignment at all";
  // reuse the row structure: the table's value vector must satisfy every row
  for (const auto& row : *rows_opt) {
    std::uint32_t got = 0;
    for (std::size_t t = 0; t < row.cell_classes.size(); ++t) {
      auto args = classes.args_of(classes.rep(row.cell_classes[t]));
      if (table.at(args) == 'E') got |= (1u << t);
    }
    if (std::find(row.allowed.begin(), row.allowed.end(), got) == row.allowed.end()) {
      std::string what = "violated row with cells";
      for (int cid : row.cell_classes) {
        what += ' ';
        for (const auto& a : classes.args_of(classes.rep(cid))) what += ordered_to_string(a) + "/";
      }
      return what;
    }
  }
  return std::nullopt;
}

struct Determinism {
  bool deterministic = false;
  std::vector<std::uint8_t> order;  // witnessing block order when deterministic
};

// An orbit is deterministic for p1 when some ordering makes the value blind
// to the second, injective argument.
inline std::map<OrbitType, Determinism> classify_orbit_determinism(const BehaviourTable& p1,
                                                                   const HypergraphClass& cls) {
  if (p1.action != ActionKind::kP1) throw AssumptionViolated("determinism needs a p1 table");
  std::map<OrbitType, Determinism> out;
  std::vector<std::uint8_t> idkernel(static_cast<std::size_t>(cls.ell));
  std::iota(idkernel.begin(), idkernel.end(), std::uint8_t{0});
  std::uint16_t full = static_cast<std::uint16_t>((1u << cls.ell) - 1);
  std::vector<std::uint8_t> idorder(static_cast<std::size_t>(cls.ell));
  std::iota(idorder.begin(), idorder.end(), std::uint8_t{0});
  OrderedOrbitType inc_e{{idkernel, {full}}, idorder};
  OrderedOrbitType inc_n{{idkernel, {}}, idorder};

  for (const auto& o : enumerate_orbits(cls.ell, cls)) {
    if (o.injective()) {
      out[o] = {true, idorder};
      continue;
    }
    Determinism d;
    std::vector<std::uint8_t> order(static_cast<std::size_t>(o.blocks()));
    std::iota(order.begin(), order.end(), std::uint8_t{0});
    do {
      OrderedOrbitType left{o, order};
      if (p1.at({left, inc_e}) == p1.at({left, inc_n})) {
        d = {true, order};
        break;
      }
    } while (std::next_permutation(order.begin(), order.end()));
    out[o] = d;
  }
  return out;
}

// structural checks for supplied tables: full cell domain, symmetry
// invariance, action consistency on all-injective cells
inline void validate_table(const BehaviourTable& table, const HypergraphClass& cls) {
  CellClasses classes(table.k, cls);
  if (table.cells.size() != classes.cell_count())
    throw MissingCell("table does not cover the cell domain exactly");
  for (const auto& [cell, cid] : classes.all_cells()) {
    auto args = classes.args_of(cell);
    char v = table.at(args);
    char r = table.at(classes.args_of(classes.rep(cid)));
    if (v != r) throw AssumptionViolated("table not invariant under the position action");
  }
  for (const auto& [cell, v] : table.cells) {
    bool all_inj = true;
    std::vector<char> bits;
    for (const auto& a : cell) {
      if (!a.base.injective()) {
        all_inj = false;
        break;
      }
      bits.push_back(status(a.base));
    }
    if (all_inj && v != action_value(table.action, bits))
      throw AssumptionViolated("table disagrees with its action on injective cells");
  }
}

}  // namespace hyperg
