#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include <hyperg/orbit_set.hpp>

using namespace hyperg;

namespace {

const HypergraphClass kAll3 = HypergraphClass::all(3);

std::vector<OrbitType> sorted_unique(std::vector<OrbitType> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<OrbitType> ref_project(const std::vector<OrbitType>& members, const std::vector<int>& keep) {
  std::vector<OrbitType> out;
  for (const auto& o : members) out.push_back(restrict_orbit(o, keep));
  return sorted_unique(std::move(out));
}

std::vector<OrbitType> ref_restrict(const std::vector<OrbitType>& members, const std::vector<int>& idx,
                                    const std::vector<OrbitType>& allowed) {
  std::vector<OrbitType> out;
  for (const auto& o : members) {
    OrbitType r = restrict_orbit(o, idx);
    if (std::find(allowed.begin(), allowed.end(), r) != allowed.end()) out.push_back(o);
  }
  return sorted_unique(std::move(out));
}

OrbitType ref_permute(const OrbitType& o, const std::vector<int>& perm) {
  std::vector<std::uint8_t> order(static_cast<std::size_t>(o.blocks()));
  std::iota(order.begin(), order.end(), std::uint8_t{0});
  return permute_positions({o, order}, perm).base;
}

std::vector<OrbitType> random_subset(const std::vector<OrbitType>& pool, std::mt19937_64& rng) {
  std::vector<OrbitType> out;
  for (const auto& o : pool)
    if (rng() % 3 == 0) out.push_back(o);
  return out;
}

}  // namespace

TEST_CASE("full set carries the whole census") {
  for (int k : {3, 4, 5}) {
    auto set = SymbolicOrbitSet::full_set(k, kAll3);
    auto census = enumerate_orbits(k, kAll3);
    CHECK(static_cast<std::uint64_t>(set.member_count()) == census.size());
    CHECK(set.members() == census);
  }
  auto pruned = SymbolicOrbitSet::full_set(4, HypergraphClass::clique_free(3, 4));
  CHECK(static_cast<std::uint64_t>(pruned.member_count()) == 35);
}

TEST_CASE("members round-trip through from_members") {
  std::mt19937_64 rng(11);
  auto pool = enumerate_orbits(4, kAll3);
  for (int round = 0; round < 20; ++round) {
    auto sub = sorted_unique(random_subset(pool, rng));
    auto set = SymbolicOrbitSet::from_members(4, kAll3, sub);
    CHECK(set.members() == sub);
    for (const auto& o : pool) {
      bool in = std::binary_search(sub.begin(), sub.end(), o);
      CHECK(set.contains(o) == in);
    }
  }
}

TEST_CASE("add and remove single members") {
  auto set = SymbolicOrbitSet::empty_set(3, kAll3);
  OrbitType e = orbit_from_string("012:012");
  OrbitType n = orbit_from_string("012:");
  set.add_member(e);
  set.add_member(n);
  set.add_member(e);
  CHECK(static_cast<std::uint64_t>(set.member_count()) == 2);
  set.remove_member(e);
  CHECK(set.members() == std::vector<OrbitType>{n});
  set.remove_member(n);
  CHECK(set.empty());
  CHECK_THROWS_AS(set.add_member(orbit_from_string("0123:")), ArityMismatch);
}

TEST_CASE("set equality is membership equality") {
  auto a = SymbolicOrbitSet::empty_set(3, kAll3);
  auto b = SymbolicOrbitSet::empty_set(3, kAll3);
  a.add_member(orbit_from_string("012:012"));
  a.add_member(orbit_from_string("001:"));
  b.add_member(orbit_from_string("001:"));
  b.add_member(orbit_from_string("012:012"));
  CHECK(a == b);
  b.add_member(orbit_from_string("012:"));
  CHECK_FALSE(a == b);
}

TEST_CASE("conjoin and join act as intersection and union") {
  std::mt19937_64 rng(23);
  auto pool = enumerate_orbits(4, kAll3);
  for (int round = 0; round < 10; ++round) {
    auto sa = sorted_unique(random_subset(pool, rng));
    auto sb = sorted_unique(random_subset(pool, rng));
    auto a = SymbolicOrbitSet::from_members(4, kAll3, sa);
    auto b = SymbolicOrbitSet::from_members(4, kAll3, sb);
    std::vector<OrbitType> want_meet, want_join;
    std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(want_meet));
    std::set_union(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(want_join));
    auto meet = a;
    meet.conjoin(b);
    CHECK(meet.members() == want_meet);
    auto uni = a;
    uni.join(b);
    CHECK(uni.members() == want_join);
  }
}

TEST_CASE("projection agrees with the member-level reference") {
  std::mt19937_64 rng(37);
  for (int arity : {3, 4, 5}) {
    auto pool = enumerate_orbits(arity, kAll3);
    for (int round = 0; round < 8; ++round) {
      auto sub = sorted_unique(random_subset(pool, rng));
      auto set = SymbolicOrbitSet::from_members(arity, kAll3, sub);
      for (int k = 1; k <= arity; ++k) {
        for (const auto& keep : combinations(arity, k)) {
          CHECK(set.project_exists(keep).members() == ref_project(sub, keep));
        }
      }
    }
  }
}

TEST_CASE("restriction agrees with the member-level reference") {
  std::mt19937_64 rng(41);
  for (int arity : {3, 4, 5}) {
    auto pool = enumerate_orbits(arity, kAll3);
    for (int round = 0; round < 8; ++round) {
      auto sub = sorted_unique(random_subset(pool, rng));
      auto set = SymbolicOrbitSet::from_members(arity, kAll3, sub);
      int k = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(arity));
      auto picks = combinations(arity, k);
      auto idx = picks[rng() % picks.size()];
      auto small_pool = enumerate_orbits(k, kAll3);
      auto allowed = random_subset(small_pool, rng);
      auto restricted = set;
      restricted.restrict_to(idx, allowed);
      CHECK(restricted.members() == ref_restrict(sub, idx, allowed));
    }
  }
}

TEST_CASE("position permutation agrees with the member-level reference") {
  std::mt19937_64 rng(53);
  for (int arity : {3, 4, 5}) {
    auto pool = enumerate_orbits(arity, kAll3);
    for (int round = 0; round < 8; ++round) {
      auto sub = sorted_unique(random_subset(pool, rng));
      auto set = SymbolicOrbitSet::from_members(arity, kAll3, sub);
      std::vector<int> perm(static_cast<std::size_t>(arity));
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      std::vector<OrbitType> want;
      for (const auto& o : sub) want.push_back(ref_permute(o, perm));
      std::sort(want.begin(), want.end());
      CHECK(set.permute_set(perm).members() == want);
    }
  }
}

TEST_CASE("kernel closure forgets edges but keeps partitions") {
  auto set = SymbolicOrbitSet::empty_set(3, kAll3);
  set.add_member(orbit_from_string("012:012"));
  set.add_member(orbit_from_string("001:"));
  auto closed = set.kernel_closure();
  auto ms = closed.members();
  CHECK(ms == std::vector<OrbitType>{orbit_from_string("001:"), orbit_from_string("012:"),
                                     orbit_from_string("012:012")});
}

TEST_CASE("restriction against an empty window kills every layer") {
  auto set = SymbolicOrbitSet::full_set(4, kAll3);
  set.restrict_to({0, 1, 2}, std::vector<OrbitType>{});
  CHECK(set.empty());
  CHECK(static_cast<std::uint64_t>(set.member_count()) == 0);
}

TEST_CASE("position lists are validated") {
  auto set = SymbolicOrbitSet::full_set(4, kAll3);
  CHECK_THROWS_AS(set.project_exists({2, 1}), ArityError);
  CHECK_THROWS_AS(set.project_exists({0, 0}), ArityError);
  CHECK_THROWS_AS(set.project_exists({4}), ArityError);
  CHECK_THROWS_AS(set.project_exists({}), ArityError);
  CHECK_THROWS_AS(set.restrict_to({0, 1}, SymbolicOrbitSet::full_set(3, kAll3)), ArityMismatch);
}

TEST_CASE("layers store one carrier variable per block set") {
  // kernel (0,1,2,3,0): the block set {0,1,2} is named by ranks 0 and one
  // later tuple; only the lex-least rank may appear in the layer support
  auto reps = SymbolicOrbitSet::rep_ranks({0, 1, 2, 3, 0}, 3);
  CHECK(reps.size() == 4);
  const auto& tuples = position_tuples(5, 3);
  for (const auto& [bm, r] : reps) {
    for (std::size_t q = 0; q < static_cast<std::size_t>(r); ++q)
      CHECK(block_mask({0, 1, 2, 3, 0}, tuples[q]) != bm);
  }
  auto set = SymbolicOrbitSet::full_set(5, kAll3);
  auto sup = bdd().support(set.layer({0, 1, 2, 3, 0}));
  std::vector<int> expect = SymbolicOrbitSet::distinct_ranks({0, 1, 2, 3, 0}, 3);
  for (int v = 0; v < static_cast<int>(tuples.size()); ++v) {
    bool is_rep = std::binary_search(expect.begin(), expect.end(), v);
    if (sup[static_cast<std::size_t>(v)]) CHECK(is_rep);
  }
}
