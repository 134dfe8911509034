#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "errors.hpp"
#include "hypergraph_class.hpp"
#include "util.hpp"

namespace hyperg {

// Orbit of a k-tuple under automorphisms of the generic hypergraph: the
// equality pattern of the coordinates plus the set of hyperedges on the
// distinct points. Kernels are restricted growth strings, edges bitmasks of
// block ids in ascending numeric order.
struct OrbitType {
  std::vector<std::uint8_t> kernel;
  std::vector<std::uint16_t> edges;

  int arity() const { return static_cast<int>(kernel.size()); }
  int blocks() const { return block_count(kernel); }
  bool injective() const { return blocks() == arity(); }
  bool constant() const { return blocks() <= 1; }

  auto operator<=>(const OrbitType&) const = default;
};

// Orbit under the order-expanded structure: order[b] is the rank of block b
// among the blocks
struct OrderedOrbitType {
  OrbitType base;
  std::vector<std::uint8_t> order;

  auto operator<=>(const OrderedOrbitType&) const = default;
};

inline std::vector<std::uint16_t> ell_subsets(int q, int ell) {
  std::vector<std::uint16_t> out;
  for (const auto& c : combinations(q, ell)) {
    std::uint16_t m = 0;
    for (int b : c) m |= static_cast<std::uint16_t>(1u << b);
    out.push_back(m);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool orbit_valid(const OrbitType& o, const HypergraphClass& cls) {
  if (cls.kind == HypergraphClass::Kind::kAll) return true;
  int q = o.blocks();
  if (q < cls.forbidden_clique) return true;
  for (const auto& sub : combinations(q, cls.forbidden_clique)) {
    std::uint16_t pts = 0;
    for (int b : sub) pts |= static_cast<std::uint16_t>(1u << b);
    bool complete = true;
    for (std::uint16_t e : ell_subsets(cls.forbidden_clique, cls.ell)) {
      std::uint16_t lifted = 0;
      int bit = 0;
      for (int b : sub) {
        if (e & (1u << bit)) lifted |= static_cast<std::uint16_t>(1u << b);
        ++bit;
      }
      if (!std::binary_search(o.edges.begin(), o.edges.end(), lifted)) {
        complete = false;
        break;
      }
    }
    if (complete) return false;
  }
  return true;
}

// all k-orbits: kernels in restricted-growth order, edge sets by ascending
// inclusion mask over the ascending edge candidates
inline std::vector<OrbitType> enumerate_orbits(int k, const HypergraphClass& cls) {
  if (k < 1) throw ArityError("enumerate_orbits: arity must be positive");
  int c = static_cast<int>(binomial(k, cls.ell));
  if (c < 64 && bell_number(k) * (1ull << c) > budget().orbit_enumeration_cap())
    throw ResourceLimit("orbit enumeration above budget");
  if (c >= 64) throw ResourceLimit("orbit enumeration above budget");
  std::vector<OrbitType> out;
  for_each_partition(k, [&](const std::vector<std::uint8_t>& kernel) {
    auto cands = ell_subsets(block_count(kernel), cls.ell);
    for (std::uint64_t mask = 0; mask < (1ull << cands.size()); ++mask) {
      OrbitType o{kernel, {}};
      for (std::size_t i = 0; i < cands.size(); ++i)
        if (mask & (1ull << i)) o.edges.push_back(cands[i]);
      if (orbit_valid(o, cls)) out.push_back(std::move(o));
    }
  });
  return out;
}

inline std::vector<OrderedOrbitType> enumerate_ordered_orbits(int k, const HypergraphClass& cls) {
  std::vector<OrderedOrbitType> out;
  for (const auto& o : enumerate_orbits(k, cls)) {
    std::vector<std::uint8_t> order(static_cast<std::size_t>(o.blocks()));
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<std::uint8_t>(i);
    do {
      out.push_back({o, order});
    } while (std::next_permutation(order.begin(), order.end()));
  }
  return out;
}

// substructure induced on strictly increasing positions idx
inline OrbitType restrict_orbit(const OrbitType& o, const std::vector<int>& idx) {
  std::vector<std::uint8_t> raw;
  raw.reserve(idx.size());
  std::vector<int> touched(static_cast<std::size_t>(o.blocks()), -1);
  for (int i : idx) {
    if (i < 0 || i >= o.arity()) throw ArityError("restrict_orbit: position out of range");
    raw.push_back(o.kernel[static_cast<std::size_t>(i)]);
  }
  auto kernel = canonical_kernel(raw);
  for (std::size_t j = 0; j < idx.size(); ++j)
    touched[raw[j]] = kernel[j];
  OrbitType out{std::move(kernel), {}};
  for (std::uint16_t e : o.edges) {
    std::uint16_t mapped = 0;
    bool keep = true;
    for (int b = 0; b < o.blocks(); ++b) {
      if (!(e & (1u << b))) continue;
      if (touched[static_cast<std::size_t>(b)] < 0) {
        keep = false;
        break;
      }
      mapped |= static_cast<std::uint16_t>(1u << touched[static_cast<std::size_t>(b)]);
    }
    if (keep) out.edges.push_back(mapped);
  }
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

// orbit of the tuple (t[idx[0]], ..., t[idx[k-1]]) for t in o; idx may repeat
// positions and come in any order, an edge survives iff all its blocks are hit
inline OrbitType project_orbit(const OrbitType& o, const std::vector<int>& idx) {
  return restrict_orbit(o, idx);
}

// canonical orbit of a concrete tuple: arbitrary point labels plus hyperedges
// given as label sets
inline OrbitType canonicalize_orbit(const std::vector<int>& labels,
                                    const std::vector<std::vector<int>>& edges,
                                    const HypergraphClass& cls) {
  std::vector<int> uniq;
  std::vector<std::uint8_t> kernel(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto it = std::find(uniq.begin(), uniq.end(), labels[i]);
    if (it == uniq.end()) {
      uniq.push_back(labels[i]);
      it = uniq.end() - 1;
    }
    kernel[i] = static_cast<std::uint8_t>(it - uniq.begin());
  }
  OrbitType o{std::move(kernel), {}};
  for (const auto& e : edges) {
    if (static_cast<int>(e.size()) != cls.ell) throw ArityError("edge size differs from ell");
    std::uint16_t mask = 0;
    for (int lab : e) {
      auto it = std::find(uniq.begin(), uniq.end(), lab);
      if (it == uniq.end()) continue;
      std::uint16_t bit = static_cast<std::uint16_t>(1u << (it - uniq.begin()));
      if (mask & bit) throw ArityError("repeated label inside an edge");
      mask |= bit;
    }
    if (static_cast<int>(std::popcount(static_cast<unsigned>(mask))) == cls.ell)
      o.edges.push_back(mask);
  }
  std::sort(o.edges.begin(), o.edges.end());
  o.edges.erase(std::unique(o.edges.begin(), o.edges.end()), o.edges.end());
  if (!orbit_valid(o, cls)) throw ClassViolation("edge pattern leaves the hypergraph class");
  return o;
}

inline OrderedOrbitType restrict_ordered(const OrderedOrbitType& o, const std::vector<int>& idx) {
  std::vector<std::uint8_t> raw;
  for (int i : idx) raw.push_back(o.base.kernel[static_cast<std::size_t>(i)]);
  auto kernel = canonical_kernel(raw);
  std::vector<int> old_of_new(static_cast<std::size_t>(block_count(kernel)), -1);
  for (std::size_t j = 0; j < idx.size(); ++j) old_of_new[kernel[j]] = raw[j];
  OrderedOrbitType out{restrict_orbit(o.base, idx), {}};
  // compress surviving block ranks, preserving their relative order
  std::vector<std::pair<std::uint8_t, int>> ranked;
  for (std::size_t nb = 0; nb < old_of_new.size(); ++nb)
    ranked.push_back({o.order[static_cast<std::size_t>(old_of_new[nb])], static_cast<int>(nb)});
  std::sort(ranked.begin(), ranked.end());
  out.order.resize(old_of_new.size());
  for (std::size_t r = 0; r < ranked.size(); ++r)
    out.order[static_cast<std::size_t>(ranked[r].second)] = static_cast<std::uint8_t>(r);
  return out;
}

// reindex positions so new position i carries old position perm[i]
inline OrderedOrbitType permute_positions(const OrderedOrbitType& o, const std::vector<int>& perm) {
  std::vector<std::uint8_t> raw;
  raw.reserve(perm.size());
  for (int p : perm) raw.push_back(o.base.kernel[static_cast<std::size_t>(p)]);
  auto kernel = canonical_kernel(raw);
  std::vector<int> relabel(static_cast<std::size_t>(o.base.blocks()), -1);
  for (std::size_t j = 0; j < perm.size(); ++j) relabel[raw[j]] = kernel[j];
  OrderedOrbitType out;
  out.base.kernel = kernel;
  for (std::uint16_t e : o.base.edges) {
    std::uint16_t mapped = 0;
    for (int b = 0; b < o.base.blocks(); ++b)
      if (e & (1u << b)) mapped |= static_cast<std::uint16_t>(1u << relabel[static_cast<std::size_t>(b)]);
    out.base.edges.push_back(mapped);
  }
  std::sort(out.base.edges.begin(), out.base.edges.end());
  out.order.resize(relabel.size());
  for (std::size_t b = 0; b < relabel.size(); ++b)
    out.order[static_cast<std::size_t>(relabel[b])] = o.order[b];
  return out;
}

inline std::string orbit_to_string(const OrbitType& o) {
  std::string s;
  for (std::uint8_t b : o.kernel) s += static_cast<char>('0' + b);
  s += ':';
  bool first = true;
  for (std::uint16_t e : o.edges) {
    if (!first) s += ',';
    first = false;
    for (int b = 0; b < 16; ++b)
      if (e & (1u << b)) s += static_cast<char>('0' + b);
  }
  return s;
}

inline std::string ordered_to_string(const OrderedOrbitType& o) {
  std::string s = orbit_to_string(o.base);
  s += ':';
  for (std::uint8_t r : o.order) s += static_cast<char>('0' + r);
  return s;
}

inline OrbitType orbit_from_string(const std::string& s) {
  std::size_t p1 = s.find(':');
  if (p1 == std::string::npos) throw SyntaxError("orbit descriptor missing ':'");
  OrbitType o;
  for (std::size_t i = 0; i < p1; ++i) {
    if (s[i] < '0' || s[i] > '9') throw SyntaxError("bad kernel digit", i);
    o.kernel.push_back(static_cast<std::uint8_t>(s[i] - '0'));
  }
  std::size_t p2 = s.find(':', p1 + 1);
  std::size_t end = p2 == std::string::npos ? s.size() : p2;
  std::uint16_t cur = 0;
  bool any = false;
  for (std::size_t i = p1 + 1; i <= end; ++i) {
    if (i == end || s[i] == ',') {
      if (any) o.edges.push_back(cur);
      cur = 0;
      any = false;
      continue;
    }
    if (s[i] < '0' || s[i] > '9') throw SyntaxError("bad edge digit", i);
    cur |= static_cast<std::uint16_t>(1u << (s[i] - '0'));
    any = true;
  }
  std::sort(o.edges.begin(), o.edges.end());
  if (o.kernel != canonical_kernel(o.kernel)) throw SyntaxError("kernel not in canonical form");
  return o;
}

// finite hypergraph on vertices 0..vertex_count-1 together with the variable
// assignment it certifies
struct Witness {
  int vertex_count = 0;
  std::vector<std::vector<int>> edges;
  std::map<std::string, int> assignment;

  bool has_edge(std::vector<int> e) const {
    std::sort(e.begin(), e.end());
    return std::binary_search(edges.begin(), edges.end(), e);
  }
};

inline bool witness_in_class(const Witness& w, const HypergraphClass& cls) {
  if (cls.kind == HypergraphClass::Kind::kAll) return true;
  int r = cls.forbidden_clique;
  if (w.vertex_count < r) return true;
  for (const auto& sub : combinations(w.vertex_count, r)) {
    bool complete = true;
    for (const auto& e : combinations(r, cls.ell)) {
      std::vector<int> lifted;
      for (int i : e) lifted.push_back(sub[static_cast<std::size_t>(i)]);
      if (!w.has_edge(lifted)) {
        complete = false;
        break;
      }
    }
    if (complete) return false;
  }
  return true;
}

inline OrderedOrbitType ordered_from_string(const std::string& s) {
  std::size_t p2 = s.rfind(':');
  std::size_t p1 = s.find(':');
  if (p1 == std::string::npos || p2 == p1) throw SyntaxError("ordered descriptor needs two ':'");
  OrderedOrbitType o;
  o.base = orbit_from_string(s.substr(0, p2));
  for (std::size_t i = p2 + 1; i < s.size(); ++i)
    o.order.push_back(static_cast<std::uint8_t>(s[i] - '0'));
  if (static_cast<int>(o.order.size()) != o.base.blocks())
    throw SyntaxError("order length does not match block count");
  return o;
}

}  // namespace hyperg
