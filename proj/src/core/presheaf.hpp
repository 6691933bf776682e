#pragma once
// Finite presheaves on a finite category: named element sets per object and
// an action table per morphism (contravariant: a morphism f: C -> D carries
// elements at D to elements at C). Presheaves are immutable shared handles,
// like their base categories.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fincat.hpp"

namespace etendue {

using ElemId = std::int32_t;
inline constexpr ElemId kNoElem = -1;

class Presheaf {
 public:
  Presheaf() = default;
  explicit operator bool() const { return d_ != nullptr; }
  bool same(const Presheaf& o) const { return d_ == o.d_; }

  const FinCategory& base() const;
  int size(ObjId stage) const;
  int total_size() const;
  const std::string& element_name(ObjId stage, ElemId x) const;
  std::optional<ElemId> find_element(ObjId stage, std::string_view name) const;
  // x . f for x at cod(f); lands at dom(f).
  ElemId act(MorId f, ElemId x) const;

 private:
  struct Data;
  std::shared_ptr<const Data> d_;
  explicit Presheaf(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  friend class PresheafBuilder;
};

// Actions on identities may be omitted and are filled in; everything else
// must be total. finish() checks totality, range, identity actions, and
// contravariant functoriality, throwing axiom_violation with a witness.
class PresheafBuilder {
 public:
  explicit PresheafBuilder(FinCategory base);
  ElemId add_element(ObjId stage, std::string name);
  void set_action(MorId f, ElemId at_cod, ElemId at_dom);
  Presheaf finish();

 private:
  FinCategory base_;
  std::vector<std::vector<std::string>> names_;
  std::vector<std::map<std::string, ElemId, std::less<>>> index_;
  std::vector<std::vector<ElemId>> act_;
};

struct PresheafMap {
  Presheaf dom, cod;
  std::vector<std::vector<ElemId>> comp;  // per stage: dom elements -> cod elements
};

// Empty when natural; otherwise a witness naming the failing square.
std::optional<std::string> naturality_violation(const PresheafMap& m);
PresheafMap map_compose(const PresheafMap& outer, const PresheafMap& inner);

Presheaf empty_presheaf(const FinCategory& cat);
Presheaf terminal_presheaf(const FinCategory& cat);

// Representable at c: elements at D are hom(D, c), named by morphism names;
// action is precomposition.
Presheaf yoneda(const FinCategory& cat, ObjId c);

struct Coproduct {
  Presheaf presheaf;
  PresheafMap left, right;
};
// Element names are prefixed "l:" / "r:".
Coproduct coproduct(const Presheaf& x, const Presheaf& y);

struct Quotient {
  Presheaf presheaf;
  PresheafMap proj;
};
// Pointwise quotient of cod(p) by the equivalence generated by p ~ q; class
// names are the lexicographically least member name.
Quotient coequalizer(const PresheafMap& p, const PresheafMap& q);

struct PushoutResult {
  Presheaf presheaf;
  PresheafMap from_left, from_right;
};
// Pushout of X <- A -> Y computed as the coequalizer of the two legs into
// the coproduct.
PushoutResult pushout(const PresheafMap& f, const PresheafMap& g);

struct Subpresheaf {
  Presheaf parent;
  std::vector<std::vector<char>> member;  // per stage, per element

  bool contains(ObjId stage, ElemId x) const { return member[stage][x] != 0; }
  int total() const;
};

Subpresheaf sub_bottom(const Presheaf& x);
Subpresheaf sub_top(const Presheaf& x);
// Smallest action-closed subpresheaf containing the raw element sets.
Subpresheaf sub_closure(const Presheaf& x, std::vector<std::vector<char>> raw);
bool sub_is_closed(const Subpresheaf& a);
bool sub_leq(const Subpresheaf& a, const Subpresheaf& b);
bool sub_eq(const Subpresheaf& a, const Subpresheaf& b);
Subpresheaf sub_meet(const Subpresheaf& a, const Subpresheaf& b);
Subpresheaf sub_join(const Subpresheaf& a, const Subpresheaf& b);
// (a => b)(D) = elements whose every restriction inside a lands in b.
Subpresheaf sub_implies(const Subpresheaf& a, const Subpresheaf& b);
Subpresheaf sub_not(const Subpresheaf& a);
// Least v with a <= b v v: the action closure of the pointwise difference.
Subpresheaf sub_subtract(const Subpresheaf& a, const Subpresheaf& b);
Subpresheaf sub_boundary(const Subpresheaf& a);
Subpresheaf sub_gamma(const Subpresheaf& a, const Subpresheaf& b);

// { x . g : g into the stage of x } — the image of the element's map from
// the representable.
Subpresheaf image_of_element(const Presheaf& x, ObjId stage, ElemId elem);

struct Realized {
  Presheaf presheaf;
  PresheafMap inclusion;
};
// A closed element set as a presheaf in its own right, with names inherited
// from the parent and the evident injection.
Realized sub_realize(const Subpresheaf& u);

// Every action-closed subpresheaf, ordered by total size then pointwise
// bitstring; throws budget_exceeded past the cap. Test oracle and small-case
// machinery only.
std::vector<Subpresheaf> subobject_lattice(const Presheaf& x, std::size_t budget = 1u << 20);

struct ElementsCategory {
  FinCategory cat;
  std::vector<std::pair<ObjId, ElemId>> label;  // per object: (base stage, element)
  std::vector<MorId> base_morphism;             // per morphism: the base map
  std::vector<std::vector<ObjId>> object_of;    // [stage][element] -> object
};
// Objects are the elements of x (named "<element>@<stage>"); a morphism
// (x', C) -> (y, D) for every base f: C -> D with y . f = x'.
ElementsCategory elements_category(const Presheaf& x);

// The subobject classifier: elements at D are the sieves on D in canonical
// table order, named "s0", "s1", ...; the action is sieve restriction.
Presheaf omega_presheaf(const FinCategory& cat);
// The classifying map of a subpresheaf into omega_presheaf(parent base).
PresheafMap characteristic(const Subpresheaf& u);

// Downward-closed object sets: the subterminals.
struct ObjectSieve {
  std::vector<char> members;  // per object
  bool contains(ObjId a) const { return members[a] != 0; }
  int count() const;
};
bool object_sieve_closed(const FinCategory& cat, const ObjectSieve& u);
// All of them, ordered by size then bitstring.
std::vector<ObjectSieve> all_object_sieves(const FinCategory& cat);
// The subterminal with that support, as a subpresheaf of the given terminal
// presheaf (parent must be terminal-shaped over the same base).
Subpresheaf object_sieve_subterminal(const Presheaf& terminal, const ObjectSieve& u);

}  // namespace etendue
