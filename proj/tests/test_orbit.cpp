#include <catch2/catch_amalgamated.hpp>

#include <hyperg/orbit.hpp>

using namespace hyperg;

TEST_CASE("counting helpers") {
  CHECK(binomial(9, 3) == 84);
  CHECK(binomial(4, 0) == 1);
  CHECK(binomial(3, 5) == 0);
  std::vector<std::uint64_t> bells{1, 2, 5, 15, 52, 203, 877, 4140, 21147};
  for (int n = 1; n <= 9; ++n) CHECK(bell_number(n) == bells[static_cast<std::size_t>(n - 1)]);
}

TEST_CASE("combinations are lexicographic and rank inverts them") {
  auto cs = combinations(5, 3);
  CHECK(cs.size() == 10);
  CHECK(cs.front() == std::vector<int>{0, 1, 2});
  CHECK(cs.back() == std::vector<int>{2, 3, 4});
  for (std::size_t i = 0; i < cs.size(); ++i)
    CHECK(combination_rank(cs[i], 5) == static_cast<int>(i));
}

TEST_CASE("partitions enumerate restricted growth strings") {
  std::vector<std::vector<std::uint8_t>> all;
  for_each_partition(3, [&](const std::vector<std::uint8_t>& rgs) { all.push_back(rgs); });
  std::vector<std::vector<std::uint8_t>> expected{
      {0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {0, 1, 1}, {0, 1, 2}};
  CHECK(all == expected);
}

TEST_CASE("canonical kernel relabels by first use") {
  CHECK(canonical_kernel({2, 0, 2, 1}) == std::vector<std::uint8_t>{0, 1, 0, 2});
  CHECK(canonical_kernel({0, 1, 2}) == std::vector<std::uint8_t>{0, 1, 2});
  // sub-kernel labels may exceed the sub-kernel's own length
  CHECK(canonical_kernel({3}) == std::vector<std::uint8_t>{0});
  CHECK(canonical_kernel({7, 7, 2}) == std::vector<std::uint8_t>{0, 0, 1});
}

TEST_CASE("ternary orbit census") {
  auto orbits = enumerate_orbits(3, HypergraphClass::all(3));
  CHECK(orbits.size() == 6);
  int injective = 0;
  for (const auto& o : orbits)
    if (o.injective()) ++injective;
  CHECK(injective == 2);
}

TEST_CASE("quaternary orbit census") {
  auto orbits = enumerate_orbits(4, HypergraphClass::all(3));
  CHECK(orbits.size() == 36);
  int injective = 0;
  for (const auto& o : orbits)
    if (o.injective()) ++injective;
  CHECK(injective == 16);
}

TEST_CASE("ordered orbit census") {
  CHECK(enumerate_ordered_orbits(2, HypergraphClass::all(3)).size() == 3);
  CHECK(enumerate_ordered_orbits(3, HypergraphClass::all(3)).size() == 19);
}

TEST_CASE("clique-free classes prune complete patterns") {
  auto cls = HypergraphClass::clique_free(3, 4);
  OrbitType clique{{0, 1, 2, 3}, {0b0111, 0b1011, 0b1101, 0b1110}};
  CHECK_FALSE(orbit_valid(clique, cls));
  OrbitType almost{{0, 1, 2, 3}, {0b0111, 0b1011, 0b1101}};
  CHECK(orbit_valid(almost, cls));
  auto orbits = enumerate_orbits(4, cls);
  CHECK(orbits.size() == 35);
}

TEST_CASE("orbit strings round-trip") {
  for (const char* s : {"000:", "001:", "012:", "012:012", "0123:012,013", "0011:"}) {
    OrbitType o = orbit_from_string(s);
    CHECK(orbit_to_string(o) == s);
  }
  CHECK_THROWS_AS(orbit_from_string("012"), SyntaxError);
  CHECK_THROWS_AS(orbit_from_string("021:"), SyntaxError);
  CHECK_THROWS_AS(orbit_from_string("0a2:"), SyntaxError);
}

TEST_CASE("ordered orbit strings round-trip") {
  for (const char* s : {"012:012:012", "001::10", "012::201"}) {
    OrderedOrbitType o = ordered_from_string(s);
    CHECK(ordered_to_string(o) == s);
  }
  CHECK_THROWS_AS(ordered_from_string("012:"), SyntaxError);
  CHECK_THROWS_AS(ordered_from_string("012::01"), SyntaxError);
}

TEST_CASE("restrict_orbit keeps edges inside the window") {
  OrbitType o = orbit_from_string("0123:012,013");
  CHECK(orbit_to_string(restrict_orbit(o, {0, 1, 2})) == "012:012");
  CHECK(orbit_to_string(restrict_orbit(o, {1, 2, 3})) == "012:");
  CHECK(orbit_to_string(restrict_orbit(o, {3})) == "0:");
  CHECK(orbit_to_string(restrict_orbit(o, {0, 1})) == "01:");
  CHECK_THROWS_AS(restrict_orbit(o, {4}), ArityError);
}

TEST_CASE("restrict_orbit handles repeated blocks") {
  OrbitType o = orbit_from_string("0120:012");
  CHECK(orbit_to_string(restrict_orbit(o, {0, 1, 2, 3})) == "0120:012");
  CHECK(orbit_to_string(restrict_orbit(o, {1, 2, 3})) == "012:012");
  CHECK(orbit_to_string(restrict_orbit(o, {0, 2, 3})) == "010:");
  CHECK(orbit_to_string(restrict_orbit(o, {0, 1})) == "01:");
}

TEST_CASE("canonicalize_orbit reads labels and edge lists") {
  auto cls = HypergraphClass::all(3);
  OrbitType o = canonicalize_orbit({7, 3, 7, 5}, {{3, 7, 5}, {1, 2, 9}}, cls);
  CHECK(orbit_to_string(o) == "0102:012");
  CHECK_THROWS_AS(canonicalize_orbit({1, 2}, {{1, 2}}, cls), ArityError);
  CHECK_THROWS_AS(canonicalize_orbit({1, 2}, {{1, 1, 2}}, cls), ArityError);
}

TEST_CASE("permute_positions relabels kernels and edges") {
  OrderedOrbitType o = ordered_from_string("011::10");
  auto p = permute_positions(o, {2, 1, 0});
  CHECK(ordered_to_string(p) == "001::01");
  auto back = permute_positions(p, {2, 1, 0});
  CHECK(back == o);
  OrderedOrbitType inj = ordered_from_string("012:012:201");
  CHECK(ordered_to_string(permute_positions(inj, {1, 2, 0})) == "012:012:012");
}

TEST_CASE("restrict_ordered compresses surviving ranks") {
  OrderedOrbitType o = ordered_from_string("012:012:201");
  auto r = restrict_ordered(o, {0, 1});
  CHECK(ordered_to_string(r) == "01::10");
}

TEST_CASE("witness membership in a clique-free class") {
  Witness w;
  w.vertex_count = 4;
  w.edges = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
  std::sort(w.edges.begin(), w.edges.end());
  CHECK(witness_in_class(w, HypergraphClass::all(3)));
  CHECK_FALSE(witness_in_class(w, HypergraphClass::clique_free(3, 4)));
  w.edges.pop_back();
  CHECK(witness_in_class(w, HypergraphClass::clique_free(3, 4)));
}

TEST_CASE("hypergraph class constructors enforce their bounds") {
  CHECK_THROWS_AS(HypergraphClass::all(2), ArityError);
  CHECK_THROWS_AS(HypergraphClass::clique_free(3, 3), ClassViolation);
  CHECK(HypergraphClass::all(3).bound() == 3);
  CHECK(HypergraphClass::clique_free(3, 5).bound() == 5);
}
