#pragma once

#include <bit>
#include <map>
#include <optional>
#include <tuple>

#include "bdd.hpp"
#include "orbit.hpp"

namespace hyperg {

// Variables of the per-arity boolean space: one per increasing ell-subset of
// positions, numbered by lexicographic rank.
inline const std::vector<std::vector<int>>& position_tuples(int arity, int ell) {
  static std::map<std::pair<int, int>, std::vector<std::vector<int>>> cache;
  auto key = std::make_pair(arity, ell);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, combinations(arity, ell)).first;
  return it->second;
}

inline std::uint16_t block_mask(const std::vector<std::uint8_t>& kernel, const std::vector<int>& positions) {
  std::uint16_t m = 0;
  for (int p : positions) m |= static_cast<std::uint16_t>(1u << kernel[static_cast<std::size_t>(p)]);
  return m;
}

// A set of k-orbits, one BDD per kernel. Models of a layer are exactly the
// edge assignments of the set's members, written once per realizable block
// set on the lex-least position tuple naming it; other tuples never enter
// the support, so layer equality is set equality. Keeping one carrier per
// block set matters: constraining all copies equal instead blows up the
// fixed-order BDD exponentially once copies interleave.
class SymbolicOrbitSet {
 public:
  using Kernel = std::vector<std::uint8_t>;
  using Ref = BddManager::Ref;

  SymbolicOrbitSet(int arity, const HypergraphClass& cls) : arity_(arity), cls_(cls) {
    if (arity < 1) throw ArityError("orbit set arity must be positive");
  }

  int arity() const { return arity_; }
  const HypergraphClass& hclass() const { return cls_; }
  bool empty() const { return layers_.empty(); }

  bool operator==(const SymbolicOrbitSet& o) const {
    return arity_ == o.arity_ && cls_ == o.cls_ && layers_ == o.layers_;
  }

  static SymbolicOrbitSet empty_set(int arity, const HypergraphClass& cls) {
    return SymbolicOrbitSet(arity, cls);
  }

  static SymbolicOrbitSet full_set(int arity, const HypergraphClass& cls) {
    SymbolicOrbitSet s(arity, cls);
    for_each_partition(arity, [&](const Kernel& k) {
      Ref b = layer_base(k, cls);
      if (b != BddManager::zero) s.layers_[k] = b;
    });
    return s;
  }

  static SymbolicOrbitSet from_members(int arity, const HypergraphClass& cls,
                                       const std::vector<OrbitType>& members) {
    SymbolicOrbitSet s(arity, cls);
    for (const auto& o : members) s.add_member(o);
    return s;
  }

  void add_member(const OrbitType& o) {
    if (o.arity() != arity_) throw ArityMismatch("member arity differs from set arity");
    if (o.kernel != canonical_kernel(o.kernel)) throw InternalError("member kernel not canonical");
    if (!orbit_valid(o, cls_)) throw ClassViolation("member violates the ambient class");
    Ref m = bdd().land(layer_base(o.kernel, cls_), minterm(o));
    auto it = layers_.find(o.kernel);
    Ref merged = it == layers_.end() ? m : bdd().lor(it->second, m);
    set_layer(o.kernel, merged);
  }

  void remove_member(const OrbitType& o) {
    auto it = layers_.find(o.kernel);
    if (it == layers_.end()) return;
    set_layer(o.kernel, bdd().land(it->second, bdd().lnot(minterm(o))));
  }

  Ref layer(const Kernel& k) const {
    auto it = layers_.find(k);
    return it == layers_.end() ? BddManager::zero : it->second;
  }

  const std::map<Kernel, Ref>& layers() const { return layers_; }

  std::vector<Kernel> kernels() const {
    std::vector<Kernel> out;
    for (const auto& [k, f] : layers_) out.push_back(k);
    return out;
  }

  void conjoin(const SymbolicOrbitSet& other) {
    if (other.arity_ != arity_) throw ArityMismatch("conjoin arity mismatch");
    std::vector<Kernel> dead;
    for (auto& [k, f] : layers_) {
      f = bdd().land(f, other.layer(k));
      if (f == BddManager::zero) dead.push_back(k);
    }
    for (const auto& k : dead) layers_.erase(k);
  }

  void join(const SymbolicOrbitSet& other) {
    if (other.arity_ != arity_) throw ArityMismatch("join arity mismatch");
    for (const auto& [k, f] : other.layers_) {
      auto it = layers_.find(k);
      layers_[k] = it == layers_.end() ? f : bdd().lor(it->second, f);
    }
  }

  // set of restrictions onto strictly increasing positions keep
  SymbolicOrbitSet project_exists(const std::vector<int>& keep) const {
    check_positions(keep);
    SymbolicOrbitSet out(static_cast<int>(keep.size()), cls_);
    const auto& src_tuples = position_tuples(arity_, cls_.ell);
    std::vector<int> pos_index(static_cast<std::size_t>(arity_), -1);
    for (std::size_t j = 0; j < keep.size(); ++j) pos_index[static_cast<std::size_t>(keep[j])] = static_cast<int>(j);
    for (const auto& [k, f] : layers_) {
      // per block set: its carrier and the lex-least tuple inside keep; the
      // image of that tuple is the carrier of the projected layer
      std::map<std::uint16_t, int> kept;
      for (std::size_t r = 0; r < src_tuples.size(); ++r) {
        std::vector<int> mapped;
        for (int p : src_tuples[r]) {
          if (pos_index[static_cast<std::size_t>(p)] < 0) break;
          mapped.push_back(pos_index[static_cast<std::size_t>(p)]);
        }
        if (mapped.size() != src_tuples[r].size()) continue;
        std::uint16_t bm = block_mask(k, src_tuples[r]);
        if (std::popcount(static_cast<unsigned>(bm)) != cls_.ell) continue;
        kept.try_emplace(bm, combination_rank(mapped, static_cast<int>(keep.size())));
      }
      std::vector<int> to(src_tuples.size());
      std::iota(to.begin(), to.end(), 0);
      BddManager::VarMask drop;
      for (const auto& [bm, r] : rep_ranks(k, cls_.ell)) {
        auto it = kept.find(bm);
        if (it == kept.end())
          drop.set(static_cast<std::size_t>(r));
        else
          to[static_cast<std::size_t>(r)] = it->second;
      }
      Ref g = bdd().remap(bdd().exists(f, drop), to);
      if (g == BddManager::zero) continue;
      Kernel sub;
      for (int p : keep) sub.push_back(k[static_cast<std::size_t>(p)]);
      Kernel tk = canonical_kernel(sub);
      auto it = out.layers_.find(tk);
      out.layers_[tk] = it == out.layers_.end() ? g : bdd().lor(it->second, g);
    }
    return out;
  }

  // keep only members whose restriction onto positions idx lies in allowed
  void restrict_to(const std::vector<int>& idx, const SymbolicOrbitSet& allowed) {
    check_positions(idx);
    if (allowed.arity_ != static_cast<int>(idx.size()))
      throw ArityMismatch("restriction arity mismatch");
    const auto& small = position_tuples(static_cast<int>(idx.size()), cls_.ell);
    std::vector<Kernel> dead;
    for (auto& [k, f] : layers_) {
      Kernel sub;
      for (int p : idx) sub.push_back(k[static_cast<std::size_t>(p)]);
      Ref g = allowed.layer(canonical_kernel(sub));
      if (g == BddManager::zero) {
        f = BddManager::zero;
        dead.push_back(k);
        continue;
      }
      // lift each block set's carrier onto the carrier of the same blocks in
      // the larger kernel
      auto rep = rep_ranks(k, cls_.ell);
      std::vector<int> to(small.size());
      std::iota(to.begin(), to.end(), 0);
      for (std::size_t r = 0; r < small.size(); ++r) {
        std::vector<int> src;
        for (int p : small[r]) src.push_back(idx[static_cast<std::size_t>(p)]);
        std::uint16_t bm = block_mask(k, src);
        if (std::popcount(static_cast<unsigned>(bm)) != cls_.ell) continue;
        to[r] = rep.at(bm);
      }
      f = bdd().land(f, bdd().remap(g, to));
      if (f == BddManager::zero) dead.push_back(k);
    }
    for (const auto& k : dead) layers_.erase(k);
  }

  void restrict_to(const std::vector<int>& idx, const std::vector<OrbitType>& allowed) {
    restrict_to(idx, from_members(static_cast<int>(idx.size()), cls_, allowed));
  }

  unsigned __int128 member_count() const {
    unsigned __int128 n = 0;
    for (const auto& [k, f] : layers_) n += bdd().count(f, distinct_ranks(k, cls_.ell));
    return n;
  }

  // ascending by kernel, then by edge assignment
  std::vector<OrbitType> members(std::uint64_t cap = 0) const {
    std::uint64_t limit = cap ? cap : budget().member_enumeration_cap();
    std::vector<OrbitType> out;
    const auto& tuples = position_tuples(arity_, cls_.ell);
    for (const auto& [k, f] : layers_) {
      auto ranks = distinct_ranks(k, cls_.ell);
      bool fit = bdd().enumerate(f, ranks, [&](const BddManager::VarMask& model) {
        if (out.size() >= limit) return false;
        OrbitType o{k, {}};
        for (int r : ranks) {
          std::uint16_t bm = block_mask(k, tuples[static_cast<std::size_t>(r)]);
          if (model[static_cast<std::size_t>(r)])
            o.edges.insert(std::lower_bound(o.edges.begin(), o.edges.end(), bm), bm);
        }
        out.push_back(std::move(o));
        return true;
      });
      if (!fit) throw ResourceLimit("member enumeration above budget");
    }
    return out;
  }

  bool contains(const OrbitType& o) const {
    if (o.arity() != arity_) throw ArityMismatch("contains arity mismatch");
    auto it = layers_.find(o.kernel);
    if (it == layers_.end()) return false;
    return bdd().eval(it->second, member_assignment(o));
  }

  // same kernels, arbitrary edges: the closure under equality of kernels
  SymbolicOrbitSet kernel_closure() const {
    SymbolicOrbitSet out(arity_, cls_);
    for (const auto& [k, f] : layers_) out.layers_[k] = layer_base(k, cls_);
    return out;
  }

  // reindex positions so new position i carries old position perm[i]
  SymbolicOrbitSet permute_set(const std::vector<int>& perm) const {
    if (static_cast<int>(perm.size()) != arity_) throw ArityMismatch("permutation length != arity");
    std::vector<int> inv(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) inv[static_cast<std::size_t>(perm[i])] = static_cast<int>(i);
    const auto& tuples = position_tuples(arity_, cls_.ell);
    SymbolicOrbitSet out(arity_, cls_);
    for (const auto& [k, f] : layers_) {
      std::vector<std::uint8_t> raw;
      for (int p : perm) raw.push_back(k[static_cast<std::size_t>(p)]);
      Kernel tk = canonical_kernel(raw);
      if (out.layers_.count(tk)) throw InternalError("kernel collision under permutation");
      auto rep = rep_ranks(tk, cls_.ell);
      std::vector<int> to(tuples.size());
      std::iota(to.begin(), to.end(), 0);
      for (std::size_t r = 0; r < tuples.size(); ++r) {
        std::vector<int> mapped;
        for (int p : tuples[r]) mapped.push_back(inv[static_cast<std::size_t>(p)]);
        std::sort(mapped.begin(), mapped.end());
        std::uint16_t bm = block_mask(tk, mapped);
        if (std::popcount(static_cast<unsigned>(bm)) != cls_.ell) continue;
        to[r] = rep.at(bm);
      }
      Ref g = bdd().remap(f, to);
      if (g != BddManager::zero) out.layers_[tk] = g;
    }
    return out;
  }

  // evaluates the layer at a concrete edge assignment given per block tuple
  BddManager::VarMask member_assignment(const OrbitType& o) const {
    const auto& tuples = position_tuples(arity_, cls_.ell);
    BddManager::VarMask values;
    for (std::size_t r = 0; r < tuples.size(); ++r) {
      std::uint16_t bm = block_mask(o.kernel, tuples[r]);
      if (std::binary_search(o.edges.begin(), o.edges.end(), bm)) values.set(r);
    }
    return values;
  }

  void set_layer(const Kernel& k, Ref f) {
    if (f == BddManager::zero)
      layers_.erase(k);
    else
      layers_[k] = f;
  }

  // lex-least rank carrying each realizable block set
  static std::map<std::uint16_t, int> rep_ranks(const Kernel& k, int ell) {
    const auto& tuples = position_tuples(static_cast<int>(k.size()), ell);
    std::map<std::uint16_t, int> out;
    for (std::size_t r = 0; r < tuples.size(); ++r) {
      std::uint16_t bm = block_mask(k, tuples[r]);
      if (std::popcount(static_cast<unsigned>(bm)) == ell) out.try_emplace(bm, static_cast<int>(r));
    }
    return out;
  }

  // carrier ranks of one kernel, ascending
  static std::vector<int> distinct_ranks(const Kernel& k, int ell) {
    std::vector<int> out;
    for (const auto& [bm, r] : rep_ranks(k, ell)) out.push_back(r);
    std::sort(out.begin(), out.end());
    return out;
  }

  // class validity for one kernel
  static Ref layer_base(const Kernel& k, const HypergraphClass& cls) {
    if (cls.kind == HypergraphClass::Kind::kAll) return BddManager::one;
    static std::map<std::tuple<Kernel, int, int>, Ref> cache;
    auto key = std::make_tuple(k, cls.ell, cls.forbidden_clique);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto rep = rep_ranks(k, cls.ell);
    Ref base = BddManager::one;
    int q = block_count(k);
    if (q >= cls.forbidden_clique) {
      for (const auto& sub : combinations(q, cls.forbidden_clique)) {
        Ref clique = BddManager::one;
        for (const auto& pick : combinations(cls.forbidden_clique, cls.ell)) {
          std::uint16_t bm = 0;
          for (int j : pick) bm |= static_cast<std::uint16_t>(1u << sub[static_cast<std::size_t>(j)]);
          auto cit = rep.find(bm);
          if (cit == rep.end()) throw InternalError("clique edge without carrier tuple");
          clique = bdd().land(clique, bdd().var(cit->second));
        }
        base = bdd().land(base, bdd().lnot(clique));
      }
    }
    cache.emplace(key, base);
    return base;
  }

 private:
  void check_positions(const std::vector<int>& idx) const {
    if (idx.empty()) throw ArityError("position list must be nonempty");
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (idx[i] < 0 || idx[i] >= arity_) throw ArityError("position out of range");
      if (i > 0 && idx[i] <= idx[i - 1]) throw ArityError("positions must be strictly increasing");
    }
  }

  Ref minterm(const OrbitType& o) const {
    const auto& tuples = position_tuples(arity_, cls_.ell);
    Ref m = BddManager::one;
    for (int r : distinct_ranks(o.kernel, cls_.ell)) {
      std::uint16_t bm = block_mask(o.kernel, tuples[static_cast<std::size_t>(r)]);
      bool present = std::binary_search(o.edges.begin(), o.edges.end(), bm);
      m = bdd().land(m, present ? bdd().var(r) : bdd().nvar(r));
    }
    return m;
  }

  int arity_;
  HypergraphClass cls_;
  std::map<Kernel, Ref> layers_;
};

}  // namespace hyperg
