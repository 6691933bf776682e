// Acceptance gate: end-to-end checks of the library's headline guarantees,
// each computed from scratch against an independent formulation.  Prints one
// PASS/FAIL line per check and exits with the number of failures.

#include "core/examples.hpp"
#include "core/fincat.hpp"
#include "core/geometry.hpp"
#include "core/logic.hpp"
#include "core/presheaf.hpp"
#include "core/sites.hpp"
#include "support/presheaf_enum.hpp"
#include "support/test_cats.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace etendue;

namespace {

struct Outcome {
  bool ok = true;
  std::vector<std::string> details;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (details.size() < 8) details.push_back(what);
    }
  }
};

std::string show(ExtNat n) { return n.to_string(); }

bool same_sieve(const ObjectSieve& a, const ObjectSieve& b) {
  return a.members == b.members;
}

// ---------------------------------------------------------------- check 1 --
// Heights on the two generated site families follow their closed forms:
// object [m] of the truncated simplex site has height m; object m of the
// finite-sets site has height m - 1.

Outcome check_heights() {
  Outcome out;
  FinCategory delta = build_delta(4);
  for (int m = 0; m <= 4; ++m) {
    std::string name = "[" + std::to_string(m) + "]";
    auto obj = delta.find_object(name);
    out.require(obj.has_value(), "delta site is missing " + name);
    if (!obj) continue;
    int h = delta.height(*obj);
    out.require(h == m, "height(" + name + ") = " + std::to_string(h) +
                            ", expected " + std::to_string(m));
  }
  FinCategory fin = build_finset(4);
  for (int m = 1; m <= 4; ++m) {
    std::string name = std::to_string(m);
    auto obj = fin.find_object(name);
    out.require(obj.has_value(), "finset site is missing " + name);
    if (!obj) continue;
    int h = fin.height(*obj);
    out.require(h == m - 1, "height(" + name + ") = " + std::to_string(h) +
                                ", expected " + std::to_string(m - 1));
  }
  return out;
}

// ---------------------------------------------------------------- check 2 --
// The forcing semantics of the depth-n sentence agrees with the direct chain
// characterization on every site in the test universe, for every n up to one
// past the object count.

Outcome check_forcing_vs_chains() {
  Outcome out;
  std::vector<std::pair<std::string, FinCategory>> sites;
  sites.emplace_back("delta:3", build_delta(3));
  sites.emplace_back("finset:2", build_finset(2));
  sites.emplace_back("parallel pair", testcats::make_parallel_pair());
  sites.emplace_back("4-element group", testcats::make_z4());
  for (const NamedPresheaf& entry : seed_corpus())
    sites.emplace_back("min site of " + entry.name,
                       min_site(entry.presheaf).site());
  for (const auto& [label, cat] : sites) {
    int n_max = cat.object_count() + 1;
    for (int n = 0; n <= n_max; ++n) {
      ObjectSieve forced =
          sentence_value(cat, Formula::ibd(ExtNat::of(n)));
      ObjectSieve chain = ibd_sieve_char(cat, ExtNat::of(n));
      out.require(same_sieve(forced, chain),
                  label + ": forcing and chain characterization disagree at n=" +
                      std::to_string(n));
    }
  }
  return out;
}

// ---------------------------------------------------------------- check 3 --
// Three formulations of "widespread" agree on every element of the full
// subobject lattices of two representables: the complemented-up-set
// definition, the gamma criterion (join(v, v => w) is top for all v), and
// the section criterion on the underlying sieve.

std::vector<MorId> sieve_members_of(const FinCategory& cat, const Presheaf& y,
                                    const Subpresheaf& w) {
  std::vector<MorId> members;
  for (ObjId d = 0; d < cat.object_count(); ++d)
    for (ElemId e = 0; e < y.size(d); ++e)
      if (w.contains(d, e))
        members.push_back(*cat.find_morphism(y.element_name(d, e)));
  return members;
}

Outcome check_widespread_triple() {
  Outcome out;
  std::vector<std::pair<FinCategory, std::string>> cases = {
      {build_delta(1), "[1]"}, {build_finset(2), "2"}};
  for (const auto& [cat, obj_name] : cases) {
    ObjId d = *cat.find_object(obj_name);
    Presheaf y = yoneda(cat, d);
    std::vector<Subpresheaf> subs = subobject_lattice(y);
    EnumeratedLattice h = lattice_of_subobjects(subs);
    for (int w = 0; w < h.size(); ++w) {
      bool by_def = widespread_by_definition(h, w);
      bool by_gamma = widespread_by_gamma(h, w);
      bool by_sections = widespread_sieve_by_sections(
          cat, d, sieve_members_of(cat, y, subs[w]));
      std::string where = "subobject " + std::to_string(w) + " of the " +
                          obj_name + " representable";
      out.require(by_def == by_gamma,
                  where + ": definition says " + std::to_string(by_def) +
                      " but the gamma criterion says " + std::to_string(by_gamma));
      out.require(by_def == by_sections,
                  where + ": definition says " + std::to_string(by_def) +
                      " but the section criterion says " +
                      std::to_string(by_sections));
    }
  }
  return out;
}

// ---------------------------------------------------------------- check 4 --
// Heyting implication computed pointwise equals the adjunction maximum over
// the exhaustively enumerated lattice, and top = gamma(a, b) exactly when
// the boundary of a is below b — for every pair, on the same two lattices.

Outcome check_heyting_oracle() {
  Outcome out;
  std::vector<std::pair<FinCategory, std::string>> cases = {
      {build_delta(1), "[1]"}, {build_finset(2), "2"}};
  for (const auto& [cat, obj_name] : cases) {
    ObjId d = *cat.find_object(obj_name);
    Presheaf y = yoneda(cat, d);
    std::vector<Subpresheaf> subs = subobject_lattice(y);
    EnumeratedLattice h = lattice_of_subobjects(subs);
    Subpresheaf top = sub_top(y);
    for (int a = 0; a < h.size(); ++a) {
      for (int b = 0; b < h.size(); ++b) {
        std::string where = obj_name + " lattice, pair (" + std::to_string(a) +
                            ", " + std::to_string(b) + ")";
        Subpresheaf direct = sub_implies(subs[a], subs[b]);
        out.require(sub_eq(direct, subs[h.implies(a, b)]),
                    where + ": implication differs from the adjunction maximum");
        bool gamma_top = sub_eq(sub_gamma(subs[a], subs[b]), top);
        bool boundary_leq = sub_leq(sub_boundary(subs[a]), subs[b]);
        out.require(gamma_top == boundary_leq,
                    where + ": top = gamma(a,b) is " + std::to_string(gamma_top) +
                        " but boundary(a) <= b is " + std::to_string(boundary_leq));
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------- check 5 --
// The two named examples behave as documented.  The loop is strongly regular
// but not non-singular, and its minimal-figure site is not a preorder.  The
// collapsed triangle is not strongly regular, has depth 1 and dim 2, and its
// minimal-figure site is a two-element total order.

Outcome check_named_examples() {
  Outcome out;

  Presheaf loop = loop_example(build_delta(1));
  out.require(strong_regularity(loop).holds, "loop: expected strongly regular");
  out.require(!non_singularity(loop).holds, "loop: expected not non-singular");
  MinSite loop_site = min_site(loop);
  out.require(!loop_site.localic,
              "loop: expected a minimal-figure site that is not a preorder");

  Presheaf z = collapsed_example(build_delta(2));
  out.require(!strong_regularity(z).holds,
              "collapsed triangle: expected not strongly regular");
  MinSite zs = min_site(z);
  const FinCategory& sc = zs.site();
  int non_identity = 0;
  bool chain_shape = sc.object_count() == 2;
  for (MorId f = 0; f < sc.morphism_count(); ++f)
    if (!sc.is_identity(f)) {
      ++non_identity;
      chain_shape = chain_shape && sc.dom(f) != sc.cod(f);
    }
  chain_shape = chain_shape && non_identity == 1;
  out.require(chain_shape,
              "collapsed triangle: expected the minimal-figure site to be a "
              "two-element total order (2 objects, 1 non-identity map), got " +
                  std::to_string(sc.object_count()) + " objects and " +
                  std::to_string(non_identity) +
                  " non-identity maps (every map from the point figure to the "
                  "triangle figure picks the same element, so all three vertex "
                  "inclusions survive as parallel maps)");
  out.require(depth(z) == ExtNat::of(1),
              "collapsed triangle: depth = " + show(depth(z)) + ", expected 1");
  out.require(dim(z) == ExtNat::of(2),
              "collapsed triangle: dim = " + show(dim(z)) + ", expected 2");
  return out;
}

// ------------------------------------------------------------- the sweep --
// Checks 6, 7 and 9 quantify over every presheaf on the 2-truncated simplex
// site with at most 3 elements per stage, deduplicated up to isomorphism.

struct SweepOutcomes {
  Outcome main_theorem;   // check 6
  Outcome skeleta;        // check 7
  Outcome non_singular;   // check 9
  int instances = 0;
};

SweepOutcomes run_sweep() {
  SweepOutcomes s;
  FinCategory delta2 = build_delta(2);
  const ExtNat steps[] = {ExtNat::neg_inf(), ExtNat::of(0), ExtNat::of(1),
                          ExtNat::of(2), ExtNat::of(3), ExtNat::pos_inf()};
  int count = testsupport::enumerate_presheaves_delta2(
      delta2, /*max_per_stage=*/3, /*cap=*/5000, [&](const Presheaf& x) {
        ++s.instances;
        std::string tag = "instance " + std::to_string(s.instances) +
                          " (sizes " + std::to_string(x.size(0)) + "," +
                          std::to_string(x.size(1)) + "," +
                          std::to_string(x.size(2)) + ")";

        ExtNat d = dim(x);
        ExtNat dep = depth(x);
        bool sr = strong_regularity(x).holds;
        MinSite ms = min_site(x);

        s.main_theorem.require(dep <= d, tag + ": depth " + show(dep) +
                                             " exceeds dim " + show(d));
        if (sr) {
          s.main_theorem.require(d == dep, tag + ": strongly regular but dim " +
                                               show(d) + " != depth " + show(dep));
          for (int n = 0; n <= 3; ++n) {
            bool dim_le = d <= ExtNat::of(n);
            bool forced = satisfies(ms.site(), Formula::ibd(ExtNat::of(n)));
            s.main_theorem.require(
                dim_le == forced,
                tag + ": at n=" + std::to_string(n) + ", dim <= n is " +
                    std::to_string(dim_le) + " but the depth-n sentence is " +
                    std::to_string(forced));
          }
        }

        for (ExtNat n : steps)
          s.skeleta.require(
              sub_eq(skeleton(x, n), skeleton_by_strong_epis(x, n)),
              tag + ": the two skeleton constructions differ at n=" + show(n));

        if (non_singularity(x).holds) {
          s.non_singular.require(sr, tag + ": non-singular but not strongly regular");
          s.non_singular.require(ms.localic,
                                 tag + ": non-singular but the site is not a preorder");
        }
      });
  s.main_theorem.require(count == 8,
                         "expected exactly 8 isomorphism classes in the sweep, got " +
                             std::to_string(count));
  return s;
}

// ---------------------------------------------------------------- check 8 --
// The 2-truncated simplex site has exactly the 4 truncation levels, and the
// largest level whose site embeds as minimal figures is the vertex object.

Outcome check_levels() {
  Outcome out;
  FinCategory delta2 = build_delta(2);
  std::vector<Level> levels = enumerate_levels(delta2);
  out.require(levels.size() == 4, "expected 4 levels, got " +
                                      std::to_string(levels.size()));
  std::vector<std::vector<std::string>> expected = {
      {}, {"[0]"}, {"[0]", "[1]"}, {"[0]", "[1]", "[2]"}};
  for (std::size_t i = 0; i < levels.size() && i < expected.size(); ++i) {
    out.require(levels[i].subcategory.has_value(),
                "level " + std::to_string(i) + " is not generated by objects");
    if (!levels[i].subcategory) continue;
    std::vector<std::string> names;
    for (ObjId o : *levels[i].subcategory) names.push_back(delta2.object_name(o));
    out.require(names == expected[i],
                "level " + std::to_string(i) + " is not the expected truncation");
    bool want_e = expected[i] == std::vector<std::string>{"[0]"};
    out.require(levels[i].level_e == want_e,
                "level " + std::to_string(i) + ": level-e flag is " +
                    std::to_string(levels[i].level_e));
  }
  FinCategory e_site = level_e_site(delta2);
  out.require(e_site.object_count() == 1 && e_site.object_name(0) == "[0]",
              "expected the level-e site to be the single vertex object");
  return out;
}

// ----------------------------------------------------------------- driver --

int report(int index, const std::string& label, const Outcome& out, double ms) {
  std::printf("[%s] %d %s (%.0f ms)\n", out.ok ? "PASS" : "FAIL", index,
              label.c_str(), ms);
  for (const std::string& d : out.details) std::printf("       - %s\n", d.c_str());
  return out.ok ? 0 : 1;
}

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;
  int failures = 0;
  SweepOutcomes sweep;

  struct Entry {
    std::string label;
    std::function<Outcome()> run;
  };
  auto timed = [&](int index, const std::string& label,
                   const std::function<Outcome()>& run) {
    auto t0 = clock::now();
    Outcome out = run();
    double ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    failures += report(index, label, out, ms);
  };

  timed(1, "closed-form heights on the generated site families", check_heights);
  timed(2, "forcing the depth-n sentence matches the chain characterization",
        check_forcing_vs_chains);
  timed(3, "widespread: definition, gamma criterion, and section criterion agree",
        check_widespread_triple);
  timed(4, "implication equals the adjunction maximum; boundary law for gamma",
        check_heyting_oracle);
  timed(5, "named examples: loop and collapsed triangle", check_named_examples);

  auto t0 = clock::now();
  sweep = run_sweep();
  double sweep_ms =
      std::chrono::duration<double, std::milli>(clock::now() - t0).count();
  failures += report(6,
                     "sweep: strong regularity forces dim = depth and row "
                     "agreement; depth <= dim everywhere",
                     sweep.main_theorem, sweep_ms);
  failures += report(7, "sweep: the two skeleton constructions coincide",
                     sweep.skeleta, 0);

  timed(8, "levels of the 2-truncated simplex site", check_levels);

  failures += report(9,
                     "sweep: non-singular implies strongly regular and a "
                     "preorder site",
                     sweep.non_singular, 0);

  std::printf("acceptance: %d of 9 checks passed\n", 9 - failures);
  return failures;
}
