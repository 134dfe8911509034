#include <catch2/catch_amalgamated.hpp>

#include <hyperg/behaviour.hpp>

using namespace hyperg;

namespace {

const HypergraphClass kAll3 = HypergraphClass::all(3);

OrderedOrbitType oos(const std::string& s) { return ordered_from_string(s); }

SymbolicOrbitSet edge_relation() {
  return SymbolicOrbitSet::from_members(3, kAll3, {orbit_from_string("012:012")});
}

// exactly one of the four block triples of an injective 4-tuple is an edge
SymbolicOrbitSet one_edge_relation() {
  return SymbolicOrbitSet::from_members(
      4, kAll3,
      {orbit_from_string("0123:012"), orbit_from_string("0123:013"),
       orbit_from_string("0123:023"), orbit_from_string("0123:123")});
}

}  // namespace

TEST_CASE("action names and arities") {
  CHECK(action_arity(ActionKind::kP1) == 2);
  CHECK(action_arity(ActionKind::kP2) == 2);
  CHECK(action_arity(ActionKind::kMinority) == 3);
  CHECK(action_arity(ActionKind::kMajority) == 3);
  CHECK(action_arity(ActionKind::kOr) == 2);
  CHECK(action_arity(ActionKind::kAnd) == 2);
  for (ActionKind a : {ActionKind::kP1, ActionKind::kP2, ActionKind::kMinority,
                       ActionKind::kMajority, ActionKind::kOr, ActionKind::kAnd})
    CHECK(action_from_name(action_name(a)) == a);
  CHECK_FALSE(action_from_name("ternary-discriminator").has_value());
}

TEST_CASE("action values over edge statuses") {
  CHECK(action_value(ActionKind::kP1, {'E', 'N'}) == 'E');
  CHECK(action_value(ActionKind::kP2, {'E', 'N'}) == 'N');
  CHECK(action_value(ActionKind::kMinority, {'E', 'N', 'N'}) == 'E');
  CHECK(action_value(ActionKind::kMinority, {'E', 'E', 'N'}) == 'N');
  CHECK(action_value(ActionKind::kMinority, {'E', 'E', 'E'}) == 'E');
  CHECK(action_value(ActionKind::kMajority, {'E', 'N', 'N'}) == 'N');
  CHECK(action_value(ActionKind::kMajority, {'E', 'E', 'N'}) == 'E');
  CHECK(action_value(ActionKind::kOr, {'N', 'N'}) == 'N');
  CHECK(action_value(ActionKind::kOr, {'E', 'N'}) == 'E');
  CHECK(action_value(ActionKind::kAnd, {'E', 'N'}) == 'N');
  CHECK(action_value(ActionKind::kAnd, {'E', 'E'}) == 'E');
}

TEST_CASE("status reads the full-tuple edge") {
  CHECK(status(orbit_from_string("012:012")) == 'E');
  CHECK(status(orbit_from_string("012:")) == 'N');
}

TEST_CASE("cells need jointly separating arguments") {
  CHECK(cell_exists({oos("012:012:012"), oos("000::0")}, 3));
  CHECK_FALSE(cell_exists({oos("000::0"), oos("001::01")}, 3));
  CHECK(cell_exists({oos("001::01"), oos("011::01")}, 3));
}

TEST_CASE("cell census is frozen") {
  CHECK(enumerate_ordered_orbits(3, kAll3).size() == 19);
  CellClasses binary(2, kAll3);
  CHECK(binary.cell_count() == 336);
  CellClasses ternary(3, kAll3);
  CHECK(ternary.cell_count() == 6780);
  CHECK(binary.class_count() * 6 >= binary.cell_count());
  CHECK(binary.class_count() < binary.cell_count());
}

TEST_CASE("cell classes are invariant under the joint position action") {
  CellClasses classes(2, kAll3);
  std::vector<int> perm{1, 2, 0};
  for (const auto& [cell, cid] : classes.all_cells()) {
    std::vector<int> image;
    for (int id : cell) image.push_back(classes.pool_id(permute_positions(classes.pool()[static_cast<std::size_t>(id)], perm)));
    CHECK(classes.class_of(image) == cid);
  }
}

TEST_CASE("table lookup requires the cell") {
  BehaviourTable t;
  CHECK_THROWS_AS(t.at({oos("012:012:012"), oos("012::012")}), MissingCell);
}

TEST_CASE("edge relation admits projection and minority tables") {
  auto edge = edge_relation();
  auto p1 = search_table({&edge}, ActionKind::kP1, kAll3);
  REQUIRE(p1.has_value());
  CHECK(p1->action == ActionKind::kP1);
  CHECK(p1->k == 2);
  CHECK_NOTHROW(validate_table(*p1, kAll3));
  CHECK_FALSE(check_preservation(edge, *p1).has_value());

  auto m = search_table({&edge}, ActionKind::kMinority, kAll3);
  REQUIRE(m.has_value());
  CHECK_NOTHROW(validate_table(*m, kAll3));
  CHECK_FALSE(check_preservation(edge, *m).has_value());

  auto again = search_table({&edge}, ActionKind::kP1, kAll3);
  REQUIRE(again.has_value());
  CHECK(again->cells == p1->cells);
}

TEST_CASE("one-edge relation rejects every non-projection action") {
  auto rel = one_edge_relation();
  CHECK_FALSE(search_table({&rel}, ActionKind::kMinority, kAll3).has_value());
  CHECK_FALSE(search_table({&rel}, ActionKind::kMajority, kAll3).has_value());
  CHECK_FALSE(search_table({&rel}, ActionKind::kOr, kAll3).has_value());
  CHECK_FALSE(search_table({&rel}, ActionKind::kAnd, kAll3).has_value());
  auto p1 = search_table({&rel}, ActionKind::kP1, kAll3);
  REQUIRE(p1.has_value());
  CHECK_FALSE(check_preservation(rel, *p1).has_value());
}

TEST_CASE("validate_table rejects structural damage") {
  auto edge = edge_relation();
  auto p1 = search_table({&edge}, ActionKind::kP1, kAll3);
  REQUIRE(p1.has_value());

  BehaviourTable missing = *p1;
  missing.cells.erase(missing.cells.begin());
  CHECK_THROWS_AS(validate_table(missing, kAll3), MissingCell);

  BehaviourTable flipped_one = *p1;
  auto it = flipped_one.cells.begin();
  it->second = it->second == 'E' ? 'N' : 'E';
  CHECK_THROWS_AS(validate_table(flipped_one, kAll3), AssumptionViolated);
}

TEST_CASE("check_preservation reports a violated row") {
  auto edge = edge_relation();
  auto p1 = search_table({&edge}, ActionKind::kP1, kAll3);
  REQUIRE(p1.has_value());
  BehaviourTable flipped = *p1;
  for (auto& [cell, v] : flipped.cells) v = v == 'E' ? 'N' : 'E';
  auto why = check_preservation(edge, flipped);
  REQUIRE(why.has_value());
  CHECK_FALSE(why->empty());
}

TEST_CASE("orbit determinism splits on the second-argument status") {
  auto edge = edge_relation();
  auto p1 = search_table({&edge}, ActionKind::kP1, kAll3);
  REQUIRE(p1.has_value());
  auto det = classify_orbit_determinism(*p1, kAll3);
  CHECK(det.size() == 6);

  OrderedOrbitType inc_e = oos("012:012:012");
  OrderedOrbitType inc_n = oos("012::012");
  for (const auto& [o, d] : det) {
    if (o.injective()) {
      CHECK(d.deterministic);
      continue;
    }
    std::vector<std::uint8_t> order(static_cast<std::size_t>(o.blocks()));
    std::iota(order.begin(), order.end(), std::uint8_t{0});
    bool some = false;
    do {
      if (p1->at({{o, order}, inc_e}) == p1->at({{o, order}, inc_n})) some = true;
    } while (std::next_permutation(order.begin(), order.end()));
    CHECK(d.deterministic == some);
    if (d.deterministic)
      CHECK(p1->at({{o, d.order}, inc_e}) == p1->at({{o, d.order}, inc_n}));
  }

  auto m = search_table({&edge}, ActionKind::kMinority, kAll3);
  REQUIRE(m.has_value());
  CHECK_THROWS_AS(classify_orbit_determinism(*m, kAll3), AssumptionViolated);
}
