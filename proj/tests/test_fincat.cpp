#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <set>
#include <vector>

#include "core/fincat.hpp"
#include "core/sites.hpp"
#include "doctest.h"
#include "support/test_cats.hpp"

using namespace etendue;
using namespace etendue::testcats;

namespace {

std::vector<FinCategory> corpus() {
  return {make_terminal(), make_monoid_1e(), make_z4(),          make_chain2(),
          make_parallel_pair(), build_delta(2),  build_finset(2), make_empty()};
}

void check_flag_implications(const FinCategory& cat) {
  for (MorId f = 0; f < cat.morphism_count(); ++f) {
    const MorphismClass& c = cat.class_of(f);
    if (c.iso) {
      CHECK(c.mono);
      CHECK(c.epi);
      CHECK(c.split_mono);
      CHECK(c.split_epi);
      CHECK(c.strong_epi);
    }
    if (c.split_epi) CHECK(c.strong_epi);
    if (c.strong_epi) CHECK(c.epi);
    if (c.split_mono) CHECK(c.mono);
    if (cat.is_identity(f)) CHECK(c.iso);
  }
}

}  // namespace

TEST_CASE("terminal category validates and its morphism is an iso") {
  CategoryBuilder b;
  ObjId s = b.add_object("*");
  MorId i = b.add_morphism("id", s, s);
  b.set_identity(s, i);
  b.set_compose(i, i, i);
  ValidationResult res = b.finish_validated();
  REQUIRE(res.ok());
  const FinCategory& cat = res.category;
  CHECK(cat.object_count() == 1);
  CHECK(cat.morphism_count() == 1);
  CHECK(cat.class_of(0).iso);
  CHECK(cat.height(0) == 0);
}

TEST_CASE("missing identity is reported with the object") {
  CategoryBuilder b;
  b.add_object("a");
  ValidationResult res = b.finish_validated();
  REQUIRE_FALSE(res.ok());
  CHECK(res.violations.front().find("a") != std::string::npos);
}

TEST_CASE("missing composite is reported with the pair") {
  // Identity composites are derivable and get filled in; a missing
  // non-identity one must be reported.
  FinCategory delta1 = build_delta(1);
  MorId collapse = *delta1.find_morphism("d0:00");
  MorId point1 = *delta1.find_morphism("d1:1");
  CategoryBuilder b = copy_builder(delta1, collapse, point1);
  ValidationResult res = b.finish_validated();
  REQUIRE_FALSE(res.ok());
  CHECK(res.violations.front().find("missing composite") != std::string::npos);
  CHECK(res.violations.front().find("d0:00") != std::string::npos);
  CHECK(res.violations.front().find("d1:1") != std::string::npos);
}

TEST_CASE("a corrupted composition entry fails associativity with a witness triple") {
  FinCategory delta1 = build_delta(1);
  // Replace the composite of the two maps [0] -> [1] -> [0] -> [1] legs:
  // (point 1) after (collapse) is the constant map at 1; store constant 0.
  MorId point1 = *delta1.find_morphism("d1:1");
  MorId collapse = *delta1.find_morphism("d0:00");
  MorId const0 = *delta1.find_morphism("d1:00");
  CategoryBuilder b = copy_builder(delta1, point1, collapse);
  b.set_compose(point1, collapse, const0);
  ValidationResult res = b.finish_validated();
  REQUIRE_FALSE(res.ok());
  CHECK(res.violations.front().find("associativity") != std::string::npos);
}

TEST_CASE("an identity that is not a unit is reported") {
  FinCategory z4 = make_z4();
  MorId g0 = *z4.find_morphism("g0");
  MorId g2 = *z4.find_morphism("g2");
  CategoryBuilder b = copy_builder(z4, g2, g0);
  b.set_compose(g2, g0, *z4.find_morphism("g1"));
  ValidationResult res = b.finish_validated();
  REQUIRE_FALSE(res.ok());
  CHECK(res.violations.front().find("unit") != std::string::npos);
}

TEST_CASE("duplicate names and dangling references are rejected while building") {
  CategoryBuilder b;
  ObjId a = b.add_object("a");
  CHECK_THROWS_AS(b.add_object("a"), Error);
  MorId i = b.add_morphism("i", a, a);
  CHECK_THROWS_AS(b.add_morphism("i", a, a), Error);
  CHECK_THROWS_AS(b.add_morphism("j", a, 7), Error);
  b.set_identity(a, i);
  CHECK_THROWS_AS(b.set_compose(i, i, 5), Error);
}

TEST_CASE("classification flag implications hold across the corpus") {
  for (const FinCategory& cat : corpus()) check_flag_implications(cat);
}

TEST_CASE("audit classification agrees with the fast one everywhere") {
  for (const FinCategory& cat : corpus()) {
    for (MorId f = 0; f < cat.morphism_count(); ++f) {
      MorphismClass slow = classify_morphism_audit(cat, f);
      const MorphismClass& fast = cat.class_of(f);
      CHECK(slow.mono == fast.mono);
      CHECK(slow.epi == fast.epi);
      CHECK(slow.split_mono == fast.split_mono);
      CHECK(slow.split_epi == fast.split_epi);
      CHECK(slow.strong_epi == fast.strong_epi);
      CHECK(slow.iso == fast.iso);
    }
  }
}

TEST_CASE("monic endomorphisms are isomorphisms in every corpus category") {
  for (const FinCategory& cat : corpus()) {
    for (MorId f = 0; f < cat.morphism_count(); ++f) {
      if (cat.dom(f) != cat.cod(f)) continue;
      if (cat.class_of(f).mono) CHECK(cat.class_of(f).iso);
      if (cat.class_of(f).epi) CHECK(cat.class_of(f).iso);
    }
  }
}

TEST_CASE("the idempotent in the two-element monoid is neither mono nor epi") {
  FinCategory m = make_monoid_1e();
  MorId e = *m.find_morphism("e");
  const MorphismClass& c = m.class_of(e);
  CHECK_FALSE(c.mono);
  CHECK_FALSE(c.epi);
  CHECK_FALSE(c.strong_epi);
  CHECK_FALSE(c.split_mono);
  CHECK_FALSE(c.split_epi);
  // e is orthogonal to the only mono (the identity) yet must not count as a
  // strong epi, or the flag implications above would break.
}

TEST_CASE("groupoids classify every morphism as an iso and have height zero") {
  FinCategory z4 = make_z4();
  for (MorId f = 0; f < z4.morphism_count(); ++f) CHECK(z4.class_of(f).iso);
  CHECK(z4.height(0) == 0);
  CHECK(z4.iso_class_count() == 1);
}

TEST_CASE("factorize returns (identity, f) for monos") {
  FinCategory chain = make_chain2();
  MorId f = *chain.find_morphism("le");
  auto fac = factorize(chain, f, EpiMode::split);
  REQUIRE(fac.has_value());
  CHECK(chain.is_identity(fac->first));
  CHECK(fac->second == f);
}

TEST_CASE("factorize picks the smallest pair for the constant edge map") {
  FinCategory delta2 = build_delta(2);
  MorId f = *delta2.find_morphism("d1:00");
  for (EpiMode mode : {EpiMode::split, EpiMode::strong}) {
    auto fac = factorize(delta2, f, mode);
    REQUIRE(fac.has_value());
    CHECK(delta2.morphism_name(fac->first) == "d0:00");
    CHECK(delta2.morphism_name(fac->second) == "d1:0");
  }
}

TEST_CASE("factorizations recompose and carry the asserted classes") {
  for (const FinCategory& cat : {build_delta(2), build_finset(2)}) {
    for (MorId f = 0; f < cat.morphism_count(); ++f) {
      for (EpiMode mode : {EpiMode::split, EpiMode::strong}) {
        auto fac = factorize(cat, f, mode);
        REQUIRE(fac.has_value());
        auto [e, m] = *fac;
        CHECK(cat.compose(m, e) == f);
        CHECK(cat.class_of(m).mono);
        if (mode == EpiMode::split) CHECK(cat.class_of(e).split_epi);
        if (mode == EpiMode::strong) CHECK(cat.class_of(e).strong_epi);
      }
    }
  }
}

TEST_CASE("the idempotent monoid has no epi/mono factorization for e") {
  FinCategory m = make_monoid_1e();
  MorId e = *m.find_morphism("e");
  CHECK_FALSE(factorize(m, e, EpiMode::split).has_value());
  CHECK_FALSE(factorize(m, e, EpiMode::strong).has_value());
  HypothesisReport rep = check_hypotheses(m);
  CHECK_FALSE(rep.split_epi_mono_factorization);
  CHECK_FALSE(rep.strong_epi_mono_factorization);
  CHECK(rep.acc);
  CHECK(rep.well_founded);
  REQUIRE_FALSE(rep.witnesses.empty());
  CHECK(rep.witnesses.front().find("e") != std::string::npos);
}

TEST_CASE("standard sites satisfy every hypothesis") {
  for (const FinCategory& cat : {build_delta(3), build_finset(3)}) {
    HypothesisReport rep = check_hypotheses(cat);
    CHECK(rep.split_epi_mono_factorization);
    CHECK(rep.strong_epi_mono_factorization);
    CHECK(rep.acc);
    CHECK(rep.well_founded);
    CHECK(rep.all());
    CHECK(rep.witnesses.empty());
  }
}

TEST_CASE("height is monotone along monos") {
  for (const FinCategory& cat : corpus()) {
    for (MorId f = 0; f < cat.morphism_count(); ++f)
      if (cat.class_of(f).mono) CHECK(cat.height(cat.dom(f)) <= cat.height(cat.cod(f)));
  }
}

TEST_CASE("heights count proper mono chains in the chain poset") {
  FinCategory chain = make_chain2();
  CHECK(chain.height(*chain.find_object("a")) == 0);
  CHECK(chain.height(*chain.find_object("b")) == 1);
}

TEST_CASE("minimal and extreme objects") {
  FinCategory delta2 = build_delta(2);
  CHECK(is_minimal_object(delta2, *delta2.find_object("[0]")));
  CHECK_FALSE(is_minimal_object(delta2, *delta2.find_object("[1]")));
  CHECK_FALSE(is_extreme(delta2, *delta2.find_object("[0]")));
  FinCategory z4 = make_z4();
  CHECK(is_extreme(z4, 0));
  CHECK(is_minimal_object(z4, 0));
  FullSubcat mins = min_full_subcategory(delta2);
  REQUIRE(mins.object_of.size() == 1);
  CHECK(delta2.object_name(mins.object_of[0]) == "[0]");
}

TEST_CASE("full subcategory of the simplex site on the first two objects") {
  FinCategory delta2 = build_delta(2);
  FullSubcat sub = full_subcategory(
      delta2, {*delta2.find_object("[0]"), *delta2.find_object("[1]")});
  CHECK(sub.cat.object_count() == 2);
  CHECK(sub.cat.morphism_count() == 7);
  for (MorId f = 0; f < sub.cat.morphism_count(); ++f) {
    const MorphismClass& inner = sub.cat.class_of(f);
    const MorphismClass& outer = delta2.class_of(sub.morphism_of[f]);
    // Full inclusions into the simplex site preserve and reflect these.
    CHECK(inner.iso == outer.iso);
    CHECK(inner.split_mono == outer.split_mono);
    CHECK(inner.split_epi == outer.split_epi);
  }
}

TEST_CASE("levels of the empty and terminal categories") {
  std::vector<Level> none = enumerate_levels(make_empty());
  REQUIRE(none.size() == 1);
  CHECK(none[0].ideal.empty());
  REQUIRE(none[0].subcategory.has_value());
  CHECK(none[0].subcategory->empty());
  CHECK(none[0].level_e);

  std::vector<Level> term = enumerate_levels(make_terminal());
  REQUIRE(term.size() == 2);
  CHECK(term[0].ideal.empty());
  CHECK(term[1].ideal.size() == 1);
  CHECK(term[1].level_e);
}

TEST_CASE("levels of the simplex site match the truncation subcategories") {
  FinCategory delta2 = build_delta(2);
  std::vector<Level> levels = enumerate_levels(delta2);
  REQUIRE(levels.size() == 4);
  std::vector<std::vector<std::string>> subcats;
  for (const Level& l : levels) {
    REQUIRE(l.subcategory.has_value());
    std::vector<std::string> names;
    for (ObjId a : *l.subcategory) names.push_back(delta2.object_name(a));
    subcats.push_back(names);
  }
  CHECK(subcats[0] == std::vector<std::string>{});
  CHECK(subcats[1] == std::vector<std::string>{"[0]"});
  CHECK(subcats[2] == std::vector<std::string>{"[0]", "[1]"});
  CHECK(subcats[3] == std::vector<std::string>{"[0]", "[1]", "[2]"});
  CHECK(levels[1].level_e);
  CHECK_FALSE(levels[0].level_e);
  CHECK_FALSE(levels[2].level_e);
  CHECK_FALSE(levels[3].level_e);
}

TEST_CASE("levels of the finite-set site") {
  FinCategory f2 = build_finset(2);
  std::vector<Level> levels = enumerate_levels(f2);
  REQUIRE(levels.size() == 3);
  CHECK(levels[0].ideal.empty());
  CHECK(levels[1].ideal.size() == 6);
  CHECK(levels[2].ideal.size() == 8);
  REQUIRE(levels[1].subcategory.has_value());
  REQUIRE(levels[1].subcategory->size() == 1);
  CHECK(f2.object_name(levels[1].subcategory->front()) == "1");
  CHECK(levels[1].level_e);
}

TEST_CASE("all-monic level subcategories live inside the minimal objects") {
  for (const FinCategory& cat : {build_delta(2), build_finset(2), make_z4(), make_chain2()}) {
    std::set<ObjId> mins;
    for (ObjId a : min_full_subcategory(cat).object_of) mins.insert(a);
    for (const Level& l : enumerate_levels(cat)) {
      if (!l.subcategory) continue;
      FullSubcat sub = full_subcategory(cat, *l.subcategory);
      bool all_monic = true;
      for (MorId f = 0; f < sub.cat.morphism_count(); ++f)
        if (!sub.cat.class_of(f).mono) all_monic = false;
      if (!all_monic) continue;
      for (ObjId a : *l.subcategory) CHECK(mins.count(a) == 1);
    }
  }
}

TEST_CASE("level enumeration respects its morphism budget") {
  CHECK_THROWS_AS(enumerate_levels(build_delta(3)), Error);
  try {
    enumerate_levels(build_delta(3));
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::budget_exceeded);
  }
}

TEST_CASE("empty category is fully degenerate and valid") {
  FinCategory e = make_empty();
  CHECK(e.object_count() == 0);
  CHECK(e.morphism_count() == 0);
  CHECK(check_hypotheses(e).all());
  CHECK(e.iso_class_count() == 0);
  CHECK(min_full_subcategory(e).object_of.empty());
}
