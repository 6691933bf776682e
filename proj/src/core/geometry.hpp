#pragma once
// Minimal and preterminal figures of a presheaf, regularity flags, the site
// of minimal figures, skeleta, dimension, depth, minimal covers, and the
// verifier comparing "dimension at most n" against the bounded-depth sentence
// forced over the minimal-figure site.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "extnat.hpp"
#include "fincat.hpp"
#include "logic.hpp"
#include "presheaf.hpp"

namespace etendue {

// An element of a presheaf addressed by stage.
struct Figure {
  ObjId stage = 0;
  ElemId elem = 0;
};

// Minimal: every way of writing the element as a restriction y . f has f
// monic in the base. Restriction along a non-mono is the combinatorial
// notion of degeneracy, so minimal elements are the non-degenerate figures.
bool is_minimal_element(const Presheaf& x, ObjId stage, ElemId e);
// Preterminal: the element separates parallel pairs — x.g = x.h forces
// g = h. Equivalently the induced map from the representable is monic.
bool is_preterminal_element(const Presheaf& x, ObjId stage, ElemId e);

// Stage-major, ascending element order.
std::vector<Figure> minimal_elements(const Presheaf& x);
std::vector<Figure> preterminal_elements(const Presheaf& x);

struct RegularityReport {
  bool holds = true;
  std::vector<std::string> witnesses;  // nonempty exactly when holds is false
};

// Every monic map of the element category with minimal codomain has minimal
// domain.
RegularityReport strong_regularity(const Presheaf& x);
// Every minimal element is preterminal.
RegularityReport non_singularity(const Presheaf& x);

bool is_strongly_regular(const Presheaf& x);
bool is_non_singular(const Presheaf& x);

// The full subcategory of the element category on the minimal elements,
// built directly from the base: objects are the minimal figures, a morphism
// (x', C) -> (x, D) for every base f: C -> D with x . f = x', names matching
// elements_category. Every morphism of the site is monic (their base maps
// are monic because the sources are minimal); that is checked, not assumed.
struct MinSite {
  FinCategory site_cat;
  std::vector<Figure> figures;       // per site object, the figure it names
  std::vector<MorId> base_morphism;  // per site morphism, its base map
  bool localic = false;              // the site is a preorder
  bool etendue = false;              // all site maps are monic
  const FinCategory& site() const { return site_cat; }
};

MinSite min_site(const Presheaf& x);

// Elements reachable as y . f where f factors through a stage of height at
// most n. Always action-closed.
Subpresheaf skeleton(const Presheaf& x, ExtNat n);
// The same subpresheaf computed through strong epis g with height(cod g) at
// most n and y . g = x; agrees with skeleton whenever the base factors every
// map as a strong epi followed by a mono.
Subpresheaf skeleton_by_strong_epis(const Presheaf& x, ExtNat n);

// Least n with skeleton(x, n) everything; -inf exactly for the empty
// presheaf, finite otherwise.
ExtNat dim(const Presheaf& x);
// Least n such that the minimal-figure site forces the depth-n sentence;
// -inf exactly when that site is empty, finite otherwise.
ExtNat depth(const Presheaf& x);

// A strong epi e out of the element's stage and a minimal figure (y, D) with
// y . e the element. Deterministic: minimal elements return their identity;
// otherwise the smallest (e, y) in morphism-id then element order. Requires
// strong-epi/mono factorization and well-foundedness of the base to exist.
struct MinimalCover {
  MorId via = kNoMor;
  Figure minimal;
};
MinimalCover minimal_cover(const Presheaf& x, ObjId stage, ElemId e);

struct DimensionRow {
  std::int64_t n = 0;
  bool dim_le_n = false;
  bool ibd_n = false;
};

struct DimensionReport {
  ExtNat dim = ExtNat::neg_inf();
  ExtNat depth = ExtNat::neg_inf();
  bool strongly_regular = false;
  bool non_singular = false;
  bool localic = false;
  bool etendue = false;
  // dim_le_n == ibd_n at every table row; forced true when strongly_regular.
  bool equivalent = false;
  std::vector<DimensionRow> table;
  std::vector<std::string> witnesses;
};

// Builds the comparison table for n = 0..n_max (default: number of
// minimal-figure-site objects + 1) and asserts:
//   - dim <= n implies the depth-n sentence holds, for every row;
//   - the equivalence at every row when x is strongly regular;
//   - the height form — if every minimal figure sits at base height <= n the
//     sentence holds, and conversely under strong regularity.
// Throws hypothesis_failed when the base lacks the factorization / chain
// conditions, theorem_violation if an assertion fails (which would be a bug,
// not an input error).
DimensionReport verify_dimension_theorem(const Presheaf& x,
                                         std::optional<int> n_max = {});

// The largest full subcategory all of whose maps are monic: the minimal
// objects. Verified maximal — every object outside it has a non-cancellable
// endomorphism witnessing that no all-monic full subcategory contains it.
// Requires split-epi/mono factorization and the chain conditions.
FinCategory level_e_site(const FinCategory& cat);

}  // namespace etendue
