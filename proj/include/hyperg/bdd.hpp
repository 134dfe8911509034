#pragma once

#include <bitset>
#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

#include "errors.hpp"

namespace hyperg {

// Reduced ordered binary decision diagrams with hash-consed nodes. One
// process-wide manager backs every symbolic set, so two sets denote the same
// function exactly when they hold the same ref. Variable ids are ordered by
// value and must stay below kMaxVar; renames must be strictly increasing on
// the support or node ordering would break.
class BddManager {
 public:
  using Ref = std::uint32_t;
  static constexpr Ref zero = 0;
  static constexpr Ref one = 1;
  static constexpr int kMaxVar = 126;
  using VarMask = std::bitset<kMaxVar>;

  BddManager() {
    nodes_.push_back({kTermVar, zero, zero});
    nodes_.push_back({kTermVar, one, one});
  }

  Ref var(int v) { return mk(v, zero, one); }
  Ref nvar(int v) { return mk(v, one, zero); }

  Ref land(Ref a, Ref b) { return apply(kAnd, a, b); }
  Ref lor(Ref a, Ref b) { return apply(kOr, a, b); }
  Ref lxor(Ref a, Ref b) { return apply(kXor, a, b); }
  Ref lnot(Ref a) { return apply(kXor, a, one); }
  Ref ite(Ref f, Ref g, Ref h) { return lor(land(f, g), land(lnot(f), h)); }

  Ref exists(Ref a, const VarMask& vars) {
    std::unordered_map<Ref, Ref> memo;
    return exists_rec(a, vars, memo);
  }

  // to[v] gives the replacement variable; must be strictly increasing on the
  // support of a
  Ref rename(Ref a, const std::vector<int>& to) {
    std::unordered_map<Ref, Ref> memo;
    return rename_rec(a, to, memo);
  }

  // arbitrary replacement map, rebuilt node by node; costlier than rename but
  // free of the monotonicity requirement
  Ref remap(Ref a, const std::vector<int>& to) {
    std::unordered_map<Ref, Ref> memo;
    return remap_rec(a, to, memo);
  }

  Ref cofactor(Ref a, const VarMask& vars, const VarMask& values) {
    std::unordered_map<Ref, Ref> memo;
    return cofactor_rec(a, vars, values, memo);
  }

  // f(x xor mask): swaps children at every flipped variable
  Ref flip(Ref a, const VarMask& mask) {
    std::unordered_map<Ref, Ref> memo;
    return flip_rec(a, mask, memo);
  }

  bool eval(Ref a, const VarMask& values) const {
    while (a > one) {
      const Node& n = nodes_[a];
      a = values[static_cast<std::size_t>(n.var)] ? n.hi : n.lo;
    }
    return a == one;
  }

  // number of models over exactly the listed variables (ascending); the
  // support of a must be contained in the list
  unsigned __int128 count(Ref a, const std::vector<int>& vars) {
    std::unordered_map<std::uint64_t, unsigned __int128> memo;
    return count_rec(a, vars, 0, memo);
  }

  // models over the listed variables in lexicographic order (0 before 1);
  // the callback returns false to stop early
  bool enumerate(Ref a, const std::vector<int>& vars, const std::function<bool(const VarMask&)>& fn) {
    VarMask accum;
    return enumerate_rec(a, vars, 0, accum, fn);
  }

  VarMask support(Ref a) const {
    VarMask out;
    std::vector<Ref> stack{a};
    std::unordered_map<Ref, bool> seen;
    while (!stack.empty()) {
      Ref r = stack.back();
      stack.pop_back();
      if (r <= one || seen[r]) continue;
      seen[r] = true;
      out.set(static_cast<std::size_t>(nodes_[r].var));
      stack.push_back(nodes_[r].lo);
      stack.push_back(nodes_[r].hi);
    }
    return out;
  }

  std::size_t node_count() const { return nodes_.size(); }

 private:
  static constexpr int kTermVar = kMaxVar;
  enum Op : std::uint64_t { kAnd = 1, kOr = 2, kXor = 3 };

  struct Node {
    int var;
    Ref lo, hi;
  };

  int top_var(Ref a) const { return nodes_[a].var; }

  Ref mk(int v, Ref lo, Ref hi) {
    if (lo == hi) return lo;
    if (v < 0 || v >= kMaxVar) throw InternalError("bdd variable out of range");
    if ((lo > one && top_var(lo) <= v) || (hi > one && top_var(hi) <= v))
      throw InternalError("bdd ordering violated");
    std::uint64_t key = (static_cast<std::uint64_t>(v) << 56) |
                        (static_cast<std::uint64_t>(lo) << 28) | hi;
    auto it = unique_.find(key);
    if (it != unique_.end()) return it->second;
    if (nodes_.size() >= budget().node_cap() || nodes_.size() >= (1u << 28))
      throw ResourceLimit("bdd node budget exhausted");
    Ref r = static_cast<Ref>(nodes_.size());
    nodes_.push_back({v, lo, hi});
    unique_.emplace(key, r);
    return r;
  }

  Ref apply(Op op, Ref a, Ref b) {
    switch (op) {
      case kAnd:
        if (a == zero || b == zero) return zero;
        if (a == one) return b;
        if (b == one) return a;
        if (a == b) return a;
        break;
      case kOr:
        if (a == one || b == one) return one;
        if (a == zero) return b;
        if (b == zero) return a;
        if (a == b) return a;
        break;
      case kXor:
        if (a == zero) return b;
        if (b == zero) return a;
        if (a == b) return zero;
        break;
    }
    if (a > b) std::swap(a, b);
    std::uint64_t key = (static_cast<std::uint64_t>(op) << 56) |
                        (static_cast<std::uint64_t>(a) << 28) | b;
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    int va = top_var(a), vb = top_var(b);
    int v = std::min(va, vb);
    Ref alo = va == v ? nodes_[a].lo : a;
    Ref ahi = va == v ? nodes_[a].hi : a;
    Ref blo = vb == v ? nodes_[b].lo : b;
    Ref bhi = vb == v ? nodes_[b].hi : b;
    Ref r = mk(v, apply(op, alo, blo), apply(op, ahi, bhi));
    cache_.emplace(key, r);
    return r;
  }

  Ref exists_rec(Ref a, const VarMask& vars, std::unordered_map<Ref, Ref>& memo) {
    if (a <= one) return a;
    auto it = memo.find(a);
    if (it != memo.end()) return it->second;
    const Node n = nodes_[a];
    Ref lo = exists_rec(n.lo, vars, memo);
    Ref hi = exists_rec(n.hi, vars, memo);
    Ref r = vars[static_cast<std::size_t>(n.var)] ? lor(lo, hi) : mk(n.var, lo, hi);
    memo.emplace(a, r);
    return r;
  }

  Ref rename_rec(Ref a, const std::vector<int>& to, std::unordered_map<Ref, Ref>& memo) {
    if (a <= one) return a;
    auto it = memo.find(a);
    if (it != memo.end()) return it->second;
    const Node n = nodes_[a];
    if (n.var >= static_cast<int>(to.size())) throw InternalError("rename map too short");
    Ref r = mk(to[static_cast<std::size_t>(n.var)], rename_rec(n.lo, to, memo),
               rename_rec(n.hi, to, memo));
    memo.emplace(a, r);
    return r;
  }

  Ref remap_rec(Ref a, const std::vector<int>& to, std::unordered_map<Ref, Ref>& memo) {
    if (a <= one) return a;
    auto it = memo.find(a);
    if (it != memo.end()) return it->second;
    const Node n = nodes_[a];
    if (n.var >= static_cast<int>(to.size())) throw InternalError("remap map too short");
    Ref lo = remap_rec(n.lo, to, memo);
    Ref hi = remap_rec(n.hi, to, memo);
    Ref r = ite(var(to[static_cast<std::size_t>(n.var)]), hi, lo);
    memo.emplace(a, r);
    return r;
  }

  Ref cofactor_rec(Ref a, const VarMask& vars, const VarMask& values,
                   std::unordered_map<Ref, Ref>& memo) {
    if (a <= one) return a;
    auto it = memo.find(a);
    if (it != memo.end()) return it->second;
    const Node n = nodes_[a];
    auto idx = static_cast<std::size_t>(n.var);
    Ref r;
    if (vars[idx]) {
      r = cofactor_rec(values[idx] ? n.hi : n.lo, vars, values, memo);
    } else {
      r = mk(n.var, cofactor_rec(n.lo, vars, values, memo),
             cofactor_rec(n.hi, vars, values, memo));
    }
    memo.emplace(a, r);
    return r;
  }

  Ref flip_rec(Ref a, const VarMask& mask, std::unordered_map<Ref, Ref>& memo) {
    if (a <= one) return a;
    auto it = memo.find(a);
    if (it != memo.end()) return it->second;
    const Node n = nodes_[a];
    Ref lo = flip_rec(n.lo, mask, memo);
    Ref hi = flip_rec(n.hi, mask, memo);
    Ref r = mask[static_cast<std::size_t>(n.var)] ? mk(n.var, hi, lo) : mk(n.var, lo, hi);
    memo.emplace(a, r);
    return r;
  }

  unsigned __int128 count_rec(Ref a, const std::vector<int>& vars, std::size_t idx,
                              std::unordered_map<std::uint64_t, unsigned __int128>& memo) {
    if (a == zero) return 0;
    if (idx == vars.size()) {
      if (a != one) throw InternalError("count: support outside variable list");
      return 1;
    }
    std::uint64_t key = (static_cast<std::uint64_t>(a) << 16) | idx;
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    unsigned __int128 r;
    int v = top_var(a);
    if (a != one && v < vars[idx]) throw InternalError("count: support outside variable list");
    if (a != one && v == vars[idx]) {
      r = count_rec(nodes_[a].lo, vars, idx + 1, memo) +
          count_rec(nodes_[a].hi, vars, idx + 1, memo);
    } else {
      r = 2 * count_rec(a, vars, idx + 1, memo);
    }
    memo.emplace(key, r);
    return r;
  }

  bool enumerate_rec(Ref a, const std::vector<int>& vars, std::size_t idx, VarMask& accum,
                     const std::function<bool(const VarMask&)>& fn) {
    if (a == zero) return true;
    if (idx == vars.size()) {
      if (a != one) throw InternalError("enumerate: support outside variable list");
      return fn(accum);
    }
    auto bit = static_cast<std::size_t>(vars[idx]);
    int v = top_var(a);
    if (a != one && v < vars[idx]) throw InternalError("enumerate: support outside variable list");
    Ref lo = a, hi = a;
    if (a != one && v == vars[idx]) {
      lo = nodes_[a].lo;
      hi = nodes_[a].hi;
    }
    accum.reset(bit);
    if (!enumerate_rec(lo, vars, idx + 1, accum, fn)) return false;
    accum.set(bit);
    bool ok = enumerate_rec(hi, vars, idx + 1, accum, fn);
    accum.reset(bit);
    return ok;
  }

  std::vector<Node> nodes_;
  std::unordered_map<std::uint64_t, Ref> unique_;
  std::unordered_map<std::uint64_t, Ref> cache_;
};

inline BddManager& bdd() {
  static BddManager m;
  return m;
}

}  // namespace hyperg
