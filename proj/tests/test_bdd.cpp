#include <catch2/catch_amalgamated.hpp>

#include <hyperg/bdd.hpp>

using namespace hyperg;

namespace {

BddManager::VarMask mask_of(std::initializer_list<int> vars) {
  BddManager::VarMask m;
  for (int v : vars) m.set(static_cast<std::size_t>(v));
  return m;
}

}  // namespace

TEST_CASE("terminal constants evaluate as expected") {
  CHECK(bdd().eval(BddManager::one, {}));
  CHECK_FALSE(bdd().eval(BddManager::zero, {}));
}

TEST_CASE("connectives match their truth tables") {
  auto a = bdd().var(0);
  auto b = bdd().var(1);
  for (int va = 0; va <= 1; ++va) {
    for (int vb = 0; vb <= 1; ++vb) {
      BddManager::VarMask m;
      if (va) m.set(0);
      if (vb) m.set(1);
      CHECK(bdd().eval(bdd().land(a, b), m) == (va && vb));
      CHECK(bdd().eval(bdd().lor(a, b), m) == (va || vb));
      CHECK(bdd().eval(bdd().lxor(a, b), m) == (va != vb));
      CHECK(bdd().eval(bdd().lnot(a), m) == !va);
      CHECK(bdd().eval(bdd().nvar(1), m) == !vb);
    }
  }
}

TEST_CASE("hash consing gives one ref per function") {
  auto f = bdd().lor(bdd().var(2), bdd().var(3));
  auto g = bdd().lor(bdd().var(3), bdd().var(2));
  CHECK(f == g);
  CHECK(bdd().land(f, f) == f);
  CHECK(bdd().lnot(bdd().lnot(f)) == f);
  CHECK(bdd().lxor(f, f) == BddManager::zero);
}

TEST_CASE("ite composes from the basic connectives") {
  auto f = bdd().var(0);
  auto g = bdd().var(1);
  auto h = bdd().var(2);
  auto r = bdd().ite(f, g, h);
  for (unsigned bits = 0; bits < 8; ++bits) {
    BddManager::VarMask m;
    for (int v = 0; v < 3; ++v)
      if (bits & (1u << v)) m.set(static_cast<std::size_t>(v));
    bool expected = m[0] ? m[1] : m[2];
    CHECK(bdd().eval(r, m) == expected);
  }
}

TEST_CASE("exists quantifies a variable away") {
  auto f = bdd().land(bdd().var(0), bdd().var(1));
  auto g = bdd().exists(f, mask_of({0}));
  CHECK(g == bdd().var(1));
  CHECK(bdd().exists(f, mask_of({0, 1})) == BddManager::one);
  CHECK(bdd().exists(BddManager::zero, mask_of({0})) == BddManager::zero);
}

TEST_CASE("rename shifts variables upward") {
  auto f = bdd().land(bdd().var(0), bdd().lnot(bdd().var(2)));
  std::vector<int> to{5, 6, 7};
  auto g = bdd().rename(f, to);
  CHECK(g == bdd().land(bdd().var(5), bdd().lnot(bdd().var(7))));
}

TEST_CASE("remap handles order-reversing maps") {
  auto f = bdd().land(bdd().var(0), bdd().lnot(bdd().var(1)));
  std::vector<int> swap{1, 0};
  auto g = bdd().remap(f, swap);
  CHECK(g == bdd().land(bdd().var(1), bdd().lnot(bdd().var(0))));

  // collapsing two variables onto one keeps only the consistent models
  std::vector<int> collapse{4, 4};
  CHECK(bdd().remap(f, collapse) == BddManager::zero);
  auto h = bdd().land(bdd().var(0), bdd().var(1));
  CHECK(bdd().remap(h, collapse) == bdd().var(4));
}

TEST_CASE("cofactor pins variables to values") {
  auto f = bdd().lxor(bdd().var(0), bdd().var(1));
  CHECK(bdd().cofactor(f, mask_of({0}), mask_of({0})) == bdd().lnot(bdd().var(1)));
  CHECK(bdd().cofactor(f, mask_of({0}), mask_of({})) == bdd().var(1));
}

TEST_CASE("flip negates the chosen variables") {
  auto f = bdd().land(bdd().var(0), bdd().var(1));
  auto g = bdd().flip(f, mask_of({0}));
  CHECK(g == bdd().land(bdd().lnot(bdd().var(0)), bdd().var(1)));
  CHECK(bdd().flip(g, mask_of({0})) == f);
}

TEST_CASE("count is exact over the listed variables") {
  std::vector<int> vars{0, 1, 2};
  auto f = bdd().lor(bdd().var(0), bdd().var(1));
  CHECK(static_cast<std::uint64_t>(bdd().count(f, vars)) == 6);
  CHECK(static_cast<std::uint64_t>(bdd().count(BddManager::one, vars)) == 8);
  CHECK(static_cast<std::uint64_t>(bdd().count(BddManager::zero, vars)) == 0);
}

TEST_CASE("enumerate walks models in lex order with zero first") {
  std::vector<int> vars{0, 1};
  auto f = bdd().lor(bdd().var(0), bdd().var(1));
  std::vector<std::pair<bool, bool>> seen;
  bdd().enumerate(f, vars, [&](const BddManager::VarMask& m) {
    seen.push_back({m[0], m[1]});
    return true;
  });
  std::vector<std::pair<bool, bool>> expected{{false, true}, {true, false}, {true, true}};
  CHECK(seen == expected);
}

TEST_CASE("enumerate stops when the callback declines") {
  std::vector<int> vars{0, 1};
  int calls = 0;
  bool finished = bdd().enumerate(BddManager::one, vars, [&](const BddManager::VarMask&) {
    ++calls;
    return calls < 2;
  });
  CHECK_FALSE(finished);
  CHECK(calls == 2);
}

TEST_CASE("enumerate rejects a variable list missing support") {
  auto f = bdd().var(3);
  std::vector<int> vars{0, 1};
  CHECK_THROWS_AS(bdd().enumerate(f, vars, [](const BddManager::VarMask&) { return true; }),
                  InternalError);
}

TEST_CASE("support reports exactly the decision variables") {
  auto f = bdd().land(bdd().var(2), bdd().lor(bdd().var(5), bdd().lnot(bdd().var(2))));
  auto s = bdd().support(f);
  CHECK(s[2]);
  CHECK(s[5]);
  CHECK_FALSE(s[0]);
}
