#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cstdint>
#include <vector>

#include "core/fincat.hpp"
#include "core/sites.hpp"
#include "doctest.h"
#include "support/test_cats.hpp"

using namespace etendue;

namespace {

// Independent counting oracles.

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

// Monotone maps [m] -> [n] are multisets of size m+1 from n+1 values.
std::int64_t delta_morphism_count(int k) {
  std::int64_t total = 0;
  for (int m = 0; m <= k; ++m)
    for (int n = 0; n <= k; ++n) total += binomial(n + m + 1, m + 1);
  return total;
}

std::int64_t finset_morphism_count(int k) {
  std::int64_t total = 0;
  for (int m = 1; m <= k; ++m)
    for (int n = 1; n <= k; ++n) {
      std::int64_t p = 1;
      for (int i = 0; i < m; ++i) p *= n;
      total += p;
    }
  return total;
}

// Families of nonempty subsets of {0..n} closed under nonempty subsets;
// these are exactly the sieves on the top object of the simplex truncation.
std::int64_t downset_family_count(int n) {
  const int verts = n + 1;
  const int faces = (1 << verts) - 1;  // nonempty subsets, mask - 1 as index
  std::int64_t count = 0;
  for (std::uint32_t fam = 0; fam < (1u << faces); ++fam) {
    bool closed = true;
    for (int s = 1; s <= faces && closed; ++s) {
      if (!(fam >> (s - 1) & 1)) continue;
      for (int t = (s - 1) & s; t > 0; t = (t - 1) & s) {
        if (!(fam >> (t - 1) & 1)) {
          closed = false;
          break;
        }
      }
    }
    if (closed) ++count;
  }
  return count;
}

// Sieve enumeration by raw subset filtering, independent of the omega table.
std::int64_t sieves_by_subset_filter(const FinCategory& cat, ObjId d) {
  const auto& ins = cat.into(d);
  const int k = static_cast<int>(ins.size());
  REQUIRE(k <= 20);
  std::int64_t count = 0;
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    bool closed = true;
    for (int i = 0; i < k && closed; ++i) {
      if (!(mask >> i & 1)) continue;
      for (MorId g : cat.into(cat.dom(ins[i]))) {
        MorId c = cat.compose(ins[i], g);
        int j = static_cast<int>(std::find(ins.begin(), ins.end(), c) - ins.begin());
        if (!(mask >> j & 1)) {
          closed = false;
          break;
        }
      }
    }
    if (closed) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("simplex truncations have the multiset-counted morphisms") {
  CHECK(build_delta(0).morphism_count() == 1);
  CHECK(build_delta(1).morphism_count() == 7);
  CHECK(build_delta(2).morphism_count() == 31);
  CHECK(build_delta(3).morphism_count() == 121);
  CHECK(build_delta(4).morphism_count() == 456);
  for (int k = 0; k <= 4; ++k) {
    FinCategory d = build_delta(k);
    CHECK(d.object_count() == k + 1);
    CHECK(d.morphism_count() == delta_morphism_count(k));
  }
}

TEST_CASE("finite-set truncations have the power-counted morphisms") {
  CHECK(build_finset(1).morphism_count() == 1);
  CHECK(build_finset(2).morphism_count() == 8);
  CHECK(build_finset(3).morphism_count() == 56);
  CHECK(build_finset(4).morphism_count() == 494);
  for (int k = 1; k <= 4; ++k) {
    FinCategory f = build_finset(k);
    CHECK(f.object_count() == k);
    CHECK(f.morphism_count() == finset_morphism_count(k));
  }
}

TEST_CASE("generated sites pass full axiom validation") {
  for (const FinCategory& cat : {build_delta(2), build_finset(2)}) {
    ValidationResult res = etendue::testcats::copy_builder(cat).finish_validated();
    CHECK(res.ok());
    CHECK(res.category.morphism_count() == cat.morphism_count());
  }
}

TEST_CASE("names encode value sequences and identities look right") {
  FinCategory d2 = build_delta(2);
  CHECK(d2.object_name(0) == "[0]");
  CHECK(d2.object_name(2) == "[2]");
  CHECK(d2.morphism_name(0) == "d0:0");
  CHECK(d2.morphism_name(d2.identity(*d2.find_object("[2]"))) == "d2:012");
  REQUIRE(d2.find_morphism("d1:001").has_value());
  MorId f = *d2.find_morphism("d1:001");
  CHECK(d2.object_name(d2.dom(f)) == "[2]");
  CHECK(d2.object_name(d2.cod(f)) == "[1]");

  FinCategory f2 = build_finset(2);
  CHECK(f2.object_name(0) == "1");
  CHECK(f2.morphism_name(f2.identity(*f2.find_object("2"))) == "f2:01");
  REQUIRE(f2.find_morphism("f2:10").has_value());
}

TEST_CASE("composition is function composition") {
  FinCategory d1 = build_delta(1);
  MorId collapse = *d1.find_morphism("d0:00");
  MorId point1 = *d1.find_morphism("d1:1");
  CHECK(d1.morphism_name(d1.compose(collapse, point1)) == "d0:0");
  CHECK(d1.morphism_name(d1.compose(point1, collapse)) == "d1:11");

  FinCategory f2 = build_finset(2);
  MorId swap = *f2.find_morphism("f2:10");
  CHECK(f2.morphism_name(f2.compose(swap, swap)) == "f2:01");
  CHECK(f2.class_of(swap).iso);
}

TEST_CASE("monos are injections, epis are surjections in generated sites") {
  FinCategory d2 = build_delta(2);
  CHECK(d2.class_of(*d2.find_morphism("d1:0")).split_mono);
  CHECK_FALSE(d2.class_of(*d2.find_morphism("d1:0")).epi);
  CHECK(d2.class_of(*d2.find_morphism("d0:00")).split_epi);
  CHECK(d2.class_of(*d2.find_morphism("d0:00")).strong_epi);
  CHECK_FALSE(d2.class_of(*d2.find_morphism("d0:00")).mono);
  const MorphismClass& c = d2.class_of(*d2.find_morphism("d1:00"));
  CHECK_FALSE(c.mono);
  CHECK_FALSE(c.epi);
  FinCategory f2 = build_finset(2);
  CHECK(f2.class_of(*f2.find_morphism("f1:00")).split_epi);
  CHECK_FALSE(f2.class_of(*f2.find_morphism("f1:00")).mono);
  CHECK(f2.class_of(*f2.find_morphism("f2:0")).split_mono);
}

TEST_CASE("heights follow the closed forms") {
  FinCategory d3 = build_delta(3);
  for (int m = 0; m <= 3; ++m) CHECK(d3.height(*d3.find_object("[" + std::to_string(m) + "]")) == m);
  FinCategory f4 = build_finset(4);
  for (int m = 1; m <= 4; ++m) CHECK(f4.height(*f4.find_object(std::to_string(m))) == m - 1);
}

TEST_CASE("sieve counts on the simplex truncations") {
  FinCategory d1 = build_delta(1);
  const OmegaTable& om1 = d1.omega();
  CHECK(om1.count(*d1.find_object("[0]")) == 2);
  CHECK(om1.count(*d1.find_object("[1]")) == 5);
  CHECK(downset_family_count(1) == 5);

  FinCategory d2 = build_delta(2);
  CHECK(d2.omega().count(*d2.find_object("[2]")) == 19);
  CHECK(downset_family_count(2) == 19);

  FinCategory d3 = build_delta(3);
  CHECK(d3.omega().count(*d3.find_object("[3]")) == 167);
  CHECK(downset_family_count(3) == 167);
}

TEST_CASE("sieve counts agree with raw subset filtering") {
  FinCategory d1 = build_delta(1);
  for (ObjId a = 0; a < d1.object_count(); ++a)
    CHECK(sieves_by_subset_filter(d1, a) == d1.omega().count(a));
  FinCategory f2 = build_finset(2);
  CHECK(f2.omega().count(*f2.find_object("1")) == 2);
  CHECK(f2.omega().count(*f2.find_object("2")) == 5);
  for (ObjId a = 0; a < f2.object_count(); ++a)
    CHECK(sieves_by_subset_filter(f2, a) == f2.omega().count(a));
}

TEST_CASE("sieve tables are canonical, bounded, and functorial") {
  FinCategory d2 = build_delta(2);
  const OmegaTable& om = d2.omega();
  for (ObjId a = 0; a < d2.object_count(); ++a) {
    REQUIRE(om.max_index[a] >= 0);
    REQUIRE(om.empty_index[a] == 0);
    CHECK(om.is_max[a][om.max_index[a]] == 1);
    CHECK(static_cast<int>(om.sieves[a][om.max_index[a]].size()) ==
          static_cast<int>(d2.into(a).size()));
    // Canonical order: ascending size.
    for (int i = 1; i < om.count(a); ++i)
      CHECK(om.sieves[a][i - 1].size() <= om.sieves[a][i].size());
  }
  // Identity restriction is the identity permutation.
  for (ObjId a = 0; a < d2.object_count(); ++a)
    for (int i = 0; i < om.count(a); ++i) CHECK(om.restr[d2.identity(a)][i] == i);
  // Contravariant functoriality of restriction.
  for (MorId g = 0; g < d2.morphism_count(); ++g)
    for (MorId f = 0; f < d2.morphism_count(); ++f) {
      if (!d2.composable(g, f)) continue;
      MorId gf = d2.compose(g, f);
      for (int i = 0; i < om.count(d2.cod(g)); ++i)
        CHECK(om.restr[gf][i] == om.restr[f][om.restr[g][i]]);
    }
}

TEST_CASE("sieve enumeration respects its budget") {
  FinCategory d2 = build_delta(2);
  CHECK_THROWS_AS(d2.omega(10), Error);
}

TEST_CASE("size guards reject oversized truncations") {
  CHECK_THROWS_AS(build_delta(7), Error);
  CHECK_THROWS_AS(build_finset(5), Error);
  CHECK_THROWS_AS(build_finset(0), Error);
  try {
    build_delta(7);
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::budget_exceeded);
  }
  // Guards are caller-adjustable in both directions.
  CHECK_THROWS_AS(build_delta(3, 2), Error);
  CHECK(build_delta(3, 3).morphism_count() == 121);
}

TEST_CASE("single-object truncations are terminal categories") {
  FinCategory d0 = build_delta(0);
  CHECK(d0.object_count() == 1);
  CHECK(d0.morphism_count() == 1);
  FinCategory f1 = build_finset(1);
  CHECK(f1.object_count() == 1);
  CHECK(f1.morphism_count() == 1);
}
