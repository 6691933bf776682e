#pragma once
// Forcing semantics for a small propositional-quantifier language over the
// sieve tables of a finite category, plus the lattice-theoretic widespread
// checks and the subpresheaf of sieves they carve out of the sieve presheaf.

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "extnat.hpp"
#include "presheaf.hpp"

namespace etendue {

// Immutable shared formula tree. Variables range over sieves (one binder per
// name along any path); constants are downward-closed object sets.
class Formula {
 public:
  enum class Kind { bottom, top, var_, and_, or_, implies, forall_omega, const_subterminal };

  Formula() = default;
  explicit operator bool() const { return n_ != nullptr; }

  static Formula bottom();
  static Formula top();
  static Formula var(std::string name);
  static Formula and_(Formula a, Formula b);
  static Formula or_(Formula a, Formula b);
  static Formula implies(Formula a, Formula b);
  static Formula forall(std::string name, Formula body);
  static Formula constant(ObjectSieve u, std::string label = {});
  // gamma(a, b) = a \/ (a => b).
  static Formula gamma(Formula a, Formula b);
  // ibd(-inf) = bot; ibd(n+1) = forall x. gamma(x, ibd(n)); ibd(inf) = top.
  static Formula ibd(ExtNat n);

  Kind kind() const;
  const std::string& var_name() const;     // var_, forall_omega
  const Formula& lhs() const;              // and_, or_, implies
  const Formula& rhs() const;              // and_, or_, implies
  const Formula& body() const;             // forall_omega
  const ObjectSieve& constant_set() const; // const_subterminal
  // Free variable names, sorted.
  const std::vector<std::string>& free_vars() const;
  std::string to_string() const;
  // Node identity for memo tables; stable across copies of the handle.
  const void* handle() const { return n_.get(); }

 private:
  struct Node;
  std::shared_ptr<const Node> n_;
  explicit Formula(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
};

// Variable bindings at a stage: name -> index into the stage's sieve table.
using Environment = std::map<std::string, int, std::less<>>;

// Stage-indexed satisfaction. Budget counts evaluation steps across the
// memoized recursion and guards runaway quantifier nesting.
bool forces(const FinCategory& cat, ObjId stage, const Environment& env, const Formula& f,
            std::size_t budget = std::size_t{1} << 24);
// { D : D forces f with the empty environment }; downward closed.
ObjectSieve sentence_value(const FinCategory& cat, const Formula& f,
                           std::size_t budget = std::size_t{1} << 24);
// True when every object forces f.
bool satisfies(const FinCategory& cat, const Formula& f,
               std::size_t budget = std::size_t{1} << 24);

// { D : every composable sequence of n+1 morphisms ending at D contains an
// iso }, computed as the longest chain of non-isos ending at each object
// (infinite when a non-iso cycle reaches the object).
ObjectSieve ibd_sieve_char(const FinCategory& cat, ExtNat n);

// A finite lattice given by its meet/join tables.
struct EnumeratedLattice {
  std::vector<std::vector<int>> meet, join;
  int bottom = -1, top = -1;

  int size() const { return static_cast<int>(meet.size()); }
  bool leq(int a, int b) const { return meet[a][b] == a; }
  // Largest u with meet(u, a) <= b (join of all of them).
  int implies(int a, int b) const;
};

EnumeratedLattice lattice_of_subobjects(const std::vector<Subpresheaf>& subs);
EnumeratedLattice lattice_of_object_sieves(const FinCategory& cat,
                                           const std::vector<ObjectSieve>& sieves);
EnumeratedLattice lattice_of_sieves_on(const FinCategory& cat, ObjId d);

// w is widespread when its up-set { v : w <= v } is complemented: every v
// above w has a u above w with meet w and join top.
bool widespread_by_definition(const EnumeratedLattice& h, int w);
// Equivalent criterion: join(v, implies(v, w)) is top for every v.
bool widespread_by_gamma(const EnumeratedLattice& h, int w);
// For a sieve on d: every morphism into d outside the sieve has a section.
bool widespread_sieve_by_sections(const FinCategory& cat, ObjId d,
                                  const std::vector<MorId>& sieve_members);
// Canonical entry point (the definition procedure).
bool widespread_element(const EnumeratedLattice& h, int w);

// { D : every c: C -> D has C in u or c iso }. Downward closed.
ObjectSieve meaning_sieve(const FinCategory& cat, const ObjectSieve& u);
// True when meaning_sieve(u) is everything: all maps between objects outside
// u are isos. Agrees with forcing forall x. gamma(x, const u).
bool internally_widespread(const FinCategory& cat, const ObjectSieve& u);

// The subpresheaf of the sieve presheaf whose sections S at D satisfy
// forall x. gamma(x, y) with y bound to S.
Subpresheaf higgs_object(const FinCategory& cat);

// Surface syntax: bot, top, ibd(N) with N in -inf|0|1|...|inf, forall x. P,
// P \/ Q, P /\ Q, P => Q (right-associative, lowest), gamma(P,Q),
// const(<name>). Const names are resolved by the callback.
Formula parse_formula(std::string_view src,
                      const std::function<ObjectSieve(std::string_view)>& resolve_const);

}  // namespace etendue
