#pragma once
// Named example presheaves over the generated sites, and the built-in corpus
// the CLI sweeps. All constructions are deterministic: element names come
// from the underlying morphisms and colimit class representatives.

#include <string>
#include <string_view>
#include <vector>

#include "presheaf.hpp"

namespace etendue {

// The map between representables induced by a base morphism: postcomposition.
PresheafMap yoneda_map(const Presheaf& y_dom, const Presheaf& y_cod, MorId f);

// yoneda() addressed by object name; unknown names are incompatible_base.
Presheaf representable_example(const FinCategory& base, std::string_view object);

// Join of the images of the proper monos into the representable at "[n]":
// the boundary of the n-simplex. Requires a base with that object.
Presheaf boundary_example(const FinCategory& base, int n);

// Coequalizer of the two endpoint inclusions "[0]" -> "[1]" between their
// representables: a single vertex carrying a loop.
Presheaf loop_example(const FinCategory& base);

// The representable at "[2]" with its whole boundary collapsed to a point:
// one vertex, a degenerate edge, and a surviving 2-cell.
Presheaf collapsed_example(const FinCategory& base);

// Dispatch on "representable(<object>)", "boundary(<n>)", "loop_Y",
// "collapsed_Z".
Presheaf example_by_name(const FinCategory& base, std::string_view spec);

struct NamedPresheaf {
  std::string name;      // e.g. "boundary(2) + collapsed_Z"
  std::string base_ref;  // e.g. "delta:2"
  Presheaf presheaf;
};

// The built-in corpus: representables over delta:3 and finset:2, boundary(2)
// and collapsed_Z over delta:2, loop_Y over delta:1, plus every unordered
// coproduct of a pair sharing a base.
std::vector<NamedPresheaf> seed_corpus();

}  // namespace etendue
