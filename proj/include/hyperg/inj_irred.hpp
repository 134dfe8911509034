#pragma once

#include "eq_relax.hpp"

namespace hyperg {

// Partition of the member orbits at one ell-tuple. Class 0 is distinguished:
// it contains every injective member and no non-deterministic one.
struct TuplePartition {
  std::vector<int> tuple;
  std::vector<std::vector<OrbitType>> classes;
};

namespace detail {

inline bool any_nondeterministic(const std::vector<OrbitType>& os, const std::set<OrbitType>& det) {
  for (const auto& o : os)
    if (!det.count(o)) return true;
  return false;
}

}  // namespace detail

// Candidate partitions of the members at a tuple: the distinguished class
// runs over supersets of the injective members within the deterministic ones,
// larger candidates first, then lexicographic; the remainder is partitioned
// in restricted-growth order. A single class is allowed when nothing remains.
inline std::vector<std::vector<std::vector<OrbitType>>> enumerate_partitions(
    const std::vector<OrbitType>& members, const std::set<OrbitType>& deterministic) {
  std::vector<OrbitType> injective, optional_det, nondet;
  for (const auto& o : members) {
    if (o.injective()) {
      injective.push_back(o);
    } else if (deterministic.count(o)) {
      optional_det.push_back(o);
    } else {
      nondet.push_back(o);
    }
  }
  std::vector<std::vector<std::vector<OrbitType>>> out;
  int od = static_cast<int>(optional_det.size());
  for (int k = od; k >= 0; --k) {
    for (const auto& pick : combinations(od, k)) {
      std::vector<OrbitType> first = injective;
      std::vector<bool> taken(static_cast<std::size_t>(od), false);
      for (int i : pick) {
        first.push_back(optional_det[static_cast<std::size_t>(i)]);
        taken[static_cast<std::size_t>(i)] = true;
      }
      if (first.empty()) continue;
      std::sort(first.begin(), first.end());
      std::vector<OrbitType> rest;
      for (int i = 0; i < od; ++i)
        if (!taken[static_cast<std::size_t>(i)]) rest.push_back(optional_det[static_cast<std::size_t>(i)]);
      for (const auto& o : nondet) rest.push_back(o);
      std::sort(rest.begin(), rest.end());
      if (rest.empty()) {
        out.push_back({first});
        continue;
      }
      for_each_partition(static_cast<int>(rest.size()), [&](const std::vector<std::uint8_t>& rgs) {
        std::vector<std::vector<OrbitType>> classes{first};
        classes.resize(1 + static_cast<std::size_t>(block_count(rgs)));
        for (std::size_t i = 0; i < rest.size(); ++i)
          classes[1 + rgs[i]].push_back(rest[i]);
        out.push_back(std::move(classes));
      });
    }
  }
  return out;
}

// Extends a partition at one tuple to further tuples: a tuple w joins when,
// through the derived constraint on v ∪ w for some already-covered v, the
// images of the classes are pairwise disjoint and the image of class 0 stays
// free of non-deterministic orbits. Coverage of the whole projection at w is
// automatic from minimality.
inline std::map<std::vector<int>, std::vector<std::vector<OrbitType>>> extend_partition(
    const Instance& inst, const TuplePartition& start, const std::set<OrbitType>& deterministic) {
  std::map<std::vector<int>, std::vector<std::vector<OrbitType>>> part;
  part[start.tuple] = start.classes;
  auto tuples = all_ell_tuples(inst);
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& w : tuples) {
      if (part.count(w)) continue;
      for (const auto& [v, vclasses] : part) {
        std::vector<int> key;
        std::set_union(v.begin(), v.end(), w.begin(), w.end(), std::back_inserter(key));
        auto dit = inst.sub.find(key);
        if (dit == inst.sub.end()) throw NotMinimal("missing derived constraint for tuple pair");
        auto pos_v = positions_in(v, key);
        auto pos_w = positions_in(w, key);
        std::vector<std::vector<OrbitType>> images;
        for (const auto& cls : vclasses) {
          SymbolicOrbitSet slice = dit->second;
          slice.restrict_to(pos_v, cls);
          images.push_back(slice.project_exists(pos_w).members());
        }
        bool ok = !detail::any_nondeterministic(images[0], deterministic);
        for (std::size_t a = 0; a < images.size() && ok; ++a)
          for (std::size_t b = a + 1; b < images.size() && ok; ++b) {
            std::vector<OrbitType> both;
            std::set_intersection(images[a].begin(), images[a].end(),
                                  images[b].begin(), images[b].end(), std::back_inserter(both));
            ok = both.empty();
          }
        if (!ok) continue;
        part[w] = std::move(images);
        grew = true;
        break;
      }
    }
  }
  return part;
}

// Removes refutable orbit classes until the instance is inj-irreducible: at
// every tuple and candidate partition, the partition is spread as far as it
// goes; when the injective finitisation on the covered tuples has no
// solution, the distinguished class is removed everywhere and the pipeline
// restarts. Returns false when the instance trivializes.
inline bool inj_irreducibility(Instance& inst, const std::set<OrbitType>& deterministic, Trace& trace) {
  while (true) {
    if (!minimal_eq_subdirect(inst, trace)) return false;
    while (identify_all_equal(inst, trace))
      if (!minimal_eq_subdirect(inst, trace)) return false;
    bool removed = false;
    for (const auto& u : all_ell_tuples(inst)) {
      std::vector<OrbitType> members = proj(inst, u).members();
      for (const auto& classes : enumerate_partitions(members, deterministic)) {
        auto part = extend_partition(inst, {u, classes}, deterministic);
        std::vector<std::vector<int>> S;
        for (const auto& [w, wc] : part) S.push_back(w);
        if (solve_injective_finitisation(inst, S, InjFinMode::kLinear).sat) continue;

        Json jseed = Json::array();
        for (int id : u) jseed.push_back(inst.names[static_cast<std::size_t>(id)]);
        Json jclasses = Json::array();
        for (const auto& cls : classes) {
          Json jc = Json::array();
          for (const auto& o : cls) jc.push_back(orbit_to_string(o));
          jclasses.push_back(jc);
        }
        Json js = Json::array();
        for (const auto& w : S) {
          Json jw = Json::array();
          for (int id : w) jw.push_back(inst.names[static_cast<std::size_t>(id)]);
          js.push_back(jw);
        }
        trace.add({{"step", "partition_unsat"}, {"seed", jseed}, {"classes", jclasses}, {"s", js}});

        Json jremoved = Json::array();
        for (const auto& [w, wclasses] : part) {
          std::vector<OrbitType> keep;
          for (std::size_t t = 1; t < wclasses.size(); ++t)
            for (const auto& o : wclasses[t]) keep.push_back(o);
          std::sort(keep.begin(), keep.end());
          Json jw = Json::array();
          for (int id : w) jw.push_back(inst.names[static_cast<std::size_t>(id)]);
          Json jo = Json::array();
          for (const auto& o : wclasses[0]) jo.push_back(orbit_to_string(o));
          jremoved.push_back({{"tuple", jw}, {"orbits", jo}});
          restrict_tuple(inst, w, keep);
        }
        trace.add({{"step", "class_removal"}, {"removed", jremoved}});
        removed = true;
        break;
      }
      if (removed) break;
    }
    if (!removed) break;
  }
  return !inst.trivial();
}

// Literal check of inj-irreducibility: for every non-empty tuple set S, the
// restricted finitisation must either have a solvable injectivisation, keep E
// and N unlinked at some tuple, or link an injective orbit with a
// non-deterministic one.
inline bool validate_inj_irreducible(const Instance& inst, const std::set<OrbitType>& deterministic) {
  auto tuples = all_ell_tuples(inst);
  if (tuples.size() >= 20) throw ResourceLimit("exhaustive tuple-set check above budget");
  auto domain = enumerate_orbits(inst.cls().ell, inst.cls());
  int e_idx = -1, n_idx = -1;
  for (std::size_t i = 0; i < domain.size(); ++i) {
    if (!domain[i].injective()) continue;
    (domain[i].edges.empty() ? n_idx : e_idx) = static_cast<int>(i);
  }
  for (std::uint64_t mask = 1; mask < (1ull << tuples.size()); ++mask) {
    std::vector<std::vector<int>> S;
    for (std::size_t i = 0; i < tuples.size(); ++i)
      if (mask & (1ull << i)) S.push_back(tuples[i]);
    FiniteInstance j = finitise(inst, S);
    if (finite_solvable(injectivise(j))) continue;
    bool excused = false;
    for (std::size_t v = 0; v < S.size() && !excused; ++v) {
      auto comp = linkedness_congruence(j, static_cast<int>(v));
      if (comp[static_cast<std::size_t>(e_idx)] >= 0 && comp[static_cast<std::size_t>(n_idx)] >= 0 &&
          comp[static_cast<std::size_t>(e_idx)] != comp[static_cast<std::size_t>(n_idx)])
        excused = true;
      for (std::size_t a = 0; a < domain.size() && !excused; ++a) {
        if (comp[a] < 0 || !domain[a].injective()) continue;
        for (std::size_t b = 0; b < domain.size() && !excused; ++b) {
          if (comp[b] < 0 || deterministic.count(domain[b])) continue;
          if (comp[a] == comp[b]) excused = true;
        }
      }
    }
    if (!excused) return false;
  }
  return true;
}

}  // namespace hyperg
