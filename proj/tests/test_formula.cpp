#include <catch2/catch_amalgamated.hpp>

#include <hyperg/formula.hpp>

using namespace hyperg;

namespace {

const HypergraphClass kAll3 = HypergraphClass::all(3);

std::vector<std::string> member_strings(const SymbolicOrbitSet& s) {
  std::vector<std::string> out;
  for (const auto& o : s.members()) out.push_back(orbit_to_string(o));
  return out;
}

}  // namespace

TEST_CASE("parser builds atoms") {
  Formula e = parse_formula("E(x1,x2,x3)", 3);
  CHECK(e.kind == Formula::Kind::kEdge);
  CHECK(e.args == std::vector<int>{0, 1, 2});
  CHECK(e.max_var() == 3);

  Formula q = parse_formula("x2 = x5", 3);
  CHECK(q.kind == Formula::Kind::kEq);
  CHECK(q.args == std::vector<int>{1, 4});
  CHECK(q.max_var() == 5);
}

TEST_CASE("parser precedence and grouping") {
  // & binds tighter than |
  Formula f = parse_formula("x1=x2 | x1=x3 & x2=x3", 3);
  REQUIRE(f.kind == Formula::Kind::kOr);
  CHECK(f.sub[0].kind == Formula::Kind::kEq);
  REQUIRE(f.sub[1].kind == Formula::Kind::kAnd);
  CHECK(f.sub[1].sub[0].args == std::vector<int>{0, 2});

  Formula g = parse_formula("(x1=x2 | x1=x3) & x2=x3", 3);
  REQUIRE(g.kind == Formula::Kind::kAnd);
  CHECK(g.sub[0].kind == Formula::Kind::kOr);

  Formula n = parse_formula("!x1=x2 & x1=x3", 3);
  REQUIRE(n.kind == Formula::Kind::kAnd);
  CHECK(n.sub[0].kind == Formula::Kind::kNot);
  CHECK(n.sub[0].sub[0].kind == Formula::Kind::kEq);
}

TEST_CASE("parser rejects malformed input with offsets") {
  CHECK_THROWS_AS(parse_formula("E(x1,x2)", 3), SyntaxError);
  try {
    parse_formula("E(x1,x2)", 3);
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.position == 7);
  }
  CHECK_THROWS_AS(parse_formula("x0=x1", 3), SyntaxError);
  CHECK_THROWS_AS(parse_formula("x1=x2 x3", 3), SyntaxError);
  CHECK_THROWS_AS(parse_formula("(x1=x2", 3), SyntaxError);
  CHECK_THROWS_AS(parse_formula("x1 =", 3), SyntaxError);
  CHECK_THROWS_AS(parse_formula("E x1", 3), SyntaxError);
  CHECK_THROWS_AS(parse_formula("", 3), SyntaxError);
  CHECK_THROWS_AS(parse_formula("y1=y2", 3), SyntaxError);
}

TEST_CASE("edge formula compiles to the injective edge orbit") {
  auto set = compile_formula(parse_formula("E(x1,x2,x3)", 3), 3, kAll3);
  CHECK(member_strings(set) == std::vector<std::string>{"012:012"});
}

TEST_CASE("negated clique formula compiles to the injective non-edge orbit") {
  auto f = parse_formula("!E(x1,x2,x3) & !(x1=x2) & !(x1=x3) & !(x2=x3)", 3);
  auto set = compile_formula(f, 3, kAll3);
  CHECK(member_strings(set) == std::vector<std::string>{"012:"});
}

TEST_CASE("equality formula keeps exactly the matching kernels") {
  auto set = compile_formula(parse_formula("x1=x2", 3), 4, kAll3);
  std::vector<OrbitType> want;
  for (const auto& o : enumerate_orbits(4, kAll3))
    if (o.kernel[0] == o.kernel[1]) want.push_back(o);
  CHECK(set.members() == want);
}

TEST_CASE("edge atom over repeated variables is empty") {
  auto set = compile_formula(parse_formula("E(x1,x1,x2)", 3), 3, kAll3);
  CHECK(set.empty());
}

TEST_CASE("placement maps formula variables onto positions") {
  auto f = parse_formula("E(x1,x2,x3)", 3);
  auto set = compile_formula(f, 4, {0, 1, 3}, kAll3);
  std::vector<OrbitType> want;
  OrbitType edge = orbit_from_string("012:012");
  for (const auto& o : enumerate_orbits(4, kAll3))
    if (restrict_orbit(o, {0, 1, 3}) == edge) want.push_back(o);
  CHECK(set.members() == want);
}

TEST_CASE("compile validates variable counts and placements") {
  auto f = parse_formula("E(x1,x2,x4)", 3);
  CHECK_THROWS_AS(compile_formula(f, 3, kAll3), ArityMismatch);
  auto g = parse_formula("x1=x2", 3);
  CHECK_THROWS_AS(compile_formula(g, 3, {0, 5}, kAll3), ArityError);
}

TEST_CASE("disjunction compiles to the union of the parts") {
  auto u = compile_formula(parse_formula("E(x1,x2,x3) | x1=x2", 3), 3, kAll3);
  auto a = compile_formula(parse_formula("E(x1,x2,x3)", 3), 3, kAll3);
  auto b = compile_formula(parse_formula("x1=x2", 3), 3, kAll3);
  a.join(b);
  CHECK(u == a);
}
