#include <catch2/catch_amalgamated.hpp>

#include <hyperg/classify.hpp>

#include "helpers.hpp"

using namespace hyperg;
using testutil::explicit_template;

TEST_CASE("order template gets the linear-symmetry verdict") {
  Template t = testutil::load_template("order.json");
  Verdict v = classify(t);
  CHECK(v.kind == Verdict::Kind::kPLinearSymmetry);
  CHECK(v.detail == "projection-acting binary table and minority table found");
  REQUIRE(v.p1.has_value());
  REQUIRE(v.m.has_value());
  CHECK_NOTHROW(validate_table(*v.p1, t.cls));
  CHECK_NOTHROW(validate_table(*v.m, t.cls));
  for (const auto* rel : t.relation_sets()) {
    CHECK_FALSE(check_preservation(*rel, *v.p1).has_value());
    CHECK_FALSE(check_preservation(*rel, *v.m).has_value());
  }

  // on cells pairing a non-injective argument with an injective one the
  // searched table puts an edge exactly when the first argument's
  // lowest-ranked block is unrepeated
  int half_injective = 0;
  for (const auto& [cell, value] : v.p1->cells) {
    if (cell[0].base.injective() || !cell[1].base.injective()) continue;
    ++half_injective;
    int minb = -1;
    for (std::size_t b = 0; b < cell[0].order.size(); ++b)
      if (cell[0].order[b] == 0) minb = static_cast<int>(b);
    int occurrences = 0;
    for (std::uint8_t b : cell[0].base.kernel)
      if (static_cast<int>(b) == minb) ++occurrences;
    CHECK(value == (occurrences == 1 ? 'E' : 'N'));
  }
  CHECK(half_injective > 0);
}

TEST_CASE("edge template is linear even though wider tables exist") {
  Template t = testutil::load_template("edge.json");
  Verdict v = classify(t);
  CHECK(v.kind == Verdict::Kind::kPLinearSymmetry);
  CHECK(v.p1.has_value());
  CHECK(v.m.has_value());
  CHECK_FALSE(v.width_witness.has_value());
}

TEST_CASE("majority-closed member set gets the bounded-width verdict") {
  // injective members closed under bitwise majority of the edge indicators
  // but not under their sum, so the linear path is refused first
  Template t = explicit_template(
      "U", 4, {"0123:012", "0123:013", "0123:012,013", "0123:012,013,023,123"});
  Verdict v = classify(t);
  CHECK(v.kind == Verdict::Kind::kPBoundedWidth);
  REQUIRE(v.width_witness.has_value());
  CHECK(v.width_witness->action == ActionKind::kMajority);
  CHECK(v.detail == "table with majority action found");
  CHECK_NOTHROW(validate_table(*v.width_witness, t.cls));
  CHECK_FALSE(check_preservation(t.relation("U").set(t.cls), *v.width_witness).has_value());
}

TEST_CASE("exactly-one-edge template is NP-complete") {
  Template t = explicit_template("ONE", 4, {"0123:012", "0123:013", "0123:023", "0123:123"});
  Verdict v = classify(t);
  CHECK(v.kind == Verdict::Kind::kNPComplete);
  CHECK(v.detail == "no searched table shape preserves every relation");
  CHECK_FALSE(v.m.has_value());
  CHECK_FALSE(v.width_witness.has_value());
}

TEST_CASE("pairing relation alone is NP-complete") {
  // members with two doubled blocks force injective outputs the relation
  // lacks, so no row admits any value
  Template t = explicit_template("T", 4, {"0011:", "0101:"});
  Verdict v = classify(t);
  CHECK(v.kind == Verdict::Kind::kNPComplete);
}

TEST_CASE("clique-free templates stay unclassified") {
  Template t;
  t.cls = HypergraphClass::clique_free(3, 4);
  Relation r;
  r.name = "EDGE";
  r.arity = 3;
  r.formula = parse_formula("E(x1,x2,x3)", 3);
  r.formula_text = "E(x1,x2,x3)";
  t.relations["EDGE"] = std::move(r);
  Verdict v = classify(t);
  CHECK(v.kind == Verdict::Kind::kUnknown);
  CHECK(v.detail == "classification over clique-free classes is not decided here");
  CHECK_FALSE(v.p1.has_value());
}

TEST_CASE("supplied tables bypass the search") {
  Template base;
  base.cls = HypergraphClass::all(3);
  Relation r;
  r.name = "EDGE";
  r.arity = 3;
  r.formula = parse_formula("E(x1,x2,x3)", 3);
  r.formula_text = "E(x1,x2,x3)";
  base.relations["EDGE"] = std::move(r);

  auto rels = base.relation_sets();
  auto p1 = search_table(rels, ActionKind::kP1, base.cls);
  auto m = search_table(rels, ActionKind::kMinority, base.cls);
  REQUIRE(p1.has_value());
  REQUIRE(m.has_value());
  base.supplied_p1 = p1;
  base.supplied_m = m;
  CHECK_NOTHROW(base.validate());

  Verdict v = classify(base);
  CHECK(v.kind == Verdict::Kind::kPLinearSymmetry);
  CHECK(v.p1->cells == p1->cells);
  CHECK(v.m->cells == m->cells);
}
