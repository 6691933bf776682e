#pragma once
// Finite categories presented by explicit composition tables.
//
// Objects and morphisms carry dense integer ids; names are kept for I/O and
// witness messages. A FinCategory is an immutable shared handle. Derived
// tables (morphism classification, iso classes, heights, sieves) are computed
// on first use behind call_once, so handles are safe to share across threads.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"
#include "extnat.hpp"

namespace etendue {

using ObjId = std::int32_t;
using MorId = std::int32_t;
inline constexpr MorId kNoMor = -1;

struct MorphismClass {
  bool mono = false;
  bool epi = false;
  bool split_mono = false;
  bool split_epi = false;
  // epi and left orthogonal to every mono. Orthogonality alone does not give
  // epi in a finite category (the idempotent in {1,e} is a counterexample),
  // so both halves are required to keep split_epi => strong_epi => epi.
  bool strong_epi = false;
  bool iso = false;
};

// Sieves on every object plus the restriction action between stages.
// sieves[d] is the canonical enumeration for object d: ascending by size,
// ties broken lexicographically on the sorted member list. restr[f] maps an
// index into sieves[cod f] to the index of the restricted sieve in
// sieves[dom f].
struct OmegaTable {
  std::vector<std::vector<std::vector<MorId>>> sieves;
  std::vector<std::vector<char>> is_max;
  std::vector<int> max_index;
  std::vector<int> empty_index;
  std::vector<std::vector<int>> restr;
  std::vector<std::map<std::vector<MorId>, int>> index;

  int count(ObjId d) const { return static_cast<int>(sieves[d].size()); }
  // Members must be sorted; unknown sets are an internal error.
  int index_of(ObjId d, const std::vector<MorId>& sorted_members) const;
};

class FinCategory {
 public:
  FinCategory() = default;
  explicit operator bool() const { return d_ != nullptr; }
  // Handle identity; structural comparison is not needed anywhere.
  bool same(const FinCategory& o) const { return d_ == o.d_; }

  int object_count() const;
  int morphism_count() const;
  const std::string& object_name(ObjId a) const;
  const std::string& morphism_name(MorId f) const;
  std::optional<ObjId> find_object(std::string_view name) const;
  std::optional<MorId> find_morphism(std::string_view name) const;

  ObjId dom(MorId f) const;
  ObjId cod(MorId f) const;
  MorId identity(ObjId a) const;
  bool is_identity(MorId f) const;
  bool composable(MorId g, MorId f) const { return dom(g) == cod(f); }
  // g after f; precondition composable(g, f).
  MorId compose(MorId g, MorId f) const;

  const std::vector<MorId>& hom(ObjId a, ObjId b) const;
  const std::vector<MorId>& into(ObjId b) const;
  const std::vector<MorId>& from(ObjId a) const;

  // Classification by exhaustive cancellation / section search. strong_epi
  // uses the split shortcut for epis; classify_morphism_audit in this header
  // recomputes everything from the raw definitions.
  const MorphismClass& class_of(MorId f) const;

  int iso_class(ObjId a) const;
  int iso_class_count() const;
  // Longest chain of non-iso monos ending at a. Well defined on iso classes:
  // monic endos of a finite category are isos, so the chain relation is a
  // strict partial order.
  int height(ObjId a) const;

  // Sieve tables; guarded because sieve counts can explode on large posets.
  const OmegaTable& omega(std::size_t max_sieves_per_object = 1u << 20) const;

 private:
  struct Data;
  std::shared_ptr<const Data> d_;
  explicit FinCategory(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  friend class CategoryBuilder;
};

struct ValidationResult {
  FinCategory category;  // empty handle unless ok()
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Incremental builder shared by the JSON loader and the site constructors.
// finish() checks structure only (ids, identities present, table total on
// composable pairs) and is meant for categories built from genuine function
// composition; finish_validated() additionally checks unit laws and
// associativity and reports witnesses instead of throwing.
class CategoryBuilder {
 public:
  ObjId add_object(std::string name);
  MorId add_morphism(std::string name, ObjId dom, ObjId cod);
  void set_identity(ObjId a, MorId f);
  void set_compose(MorId outer, MorId inner, MorId result);

  int object_count() const { return static_cast<int>(objects_.size()); }
  int morphism_count() const { return static_cast<int>(dom_.size()); }

  FinCategory finish();
  ValidationResult finish_validated();

 private:
  std::vector<std::string> objects_;
  std::vector<std::string> mor_names_;
  std::vector<ObjId> dom_, cod_;
  std::vector<MorId> identity_;
  std::vector<MorId> table_;  // morphism_count^2, kNoMor where unset
  std::map<std::string, ObjId, std::less<>> obj_index_;
  std::map<std::string, MorId, std::less<>> mor_index_;
  void structural_errors(std::vector<std::string>* out) const;
  std::shared_ptr<FinCategory::Data> assemble() const;
};

// Classification recomputed from the definitions with no shortcuts: monos and
// epis by two-sided cancellation over all parallel pairs, strong epis by an
// explicit diagonal filler search against every mono.
MorphismClass classify_morphism_audit(const FinCategory& cat, MorId f);

enum class EpiMode { split, strong };

// Smallest (e, m) in lexicographic morphism-id order with m mono, e of the
// requested epi flavour and m . e = f; nullopt when no such pair exists.
std::optional<std::pair<MorId, MorId>> factorize(const FinCategory& cat, MorId f, EpiMode mode);

// Every morphism out of the object is an iso (resp. a mono).
bool is_extreme(const FinCategory& cat, ObjId a);
bool is_minimal_object(const FinCategory& cat, ObjId a);

struct FullSubcat {
  FinCategory cat;
  std::vector<ObjId> object_of;   // sub object -> parent object
  std::vector<MorId> morphism_of; // sub morphism -> parent morphism
  std::vector<ObjId> to_sub;      // parent object -> sub object or -1
};

FullSubcat full_subcategory(const FinCategory& cat, std::vector<ObjId> objects);
FullSubcat min_full_subcategory(const FinCategory& cat);

struct HypothesisReport {
  bool split_epi_mono_factorization = false;
  bool strong_epi_mono_factorization = false;
  bool acc = false;
  bool well_founded = false;
  std::vector<std::string> witnesses;
  bool all() const {
    return split_epi_mono_factorization && strong_epi_mono_factorization && acc && well_founded;
  }
};

// Factorization flags by exhaustive search; acc and well-foundedness by cycle
// detection in the chain state graphs, which is the finite-category reading
// of "every such chain stabilizes".
HypothesisReport check_hypotheses(const FinCategory& cat);

struct Level {
  std::vector<MorId> ideal;                        // sorted morphism ids
  std::optional<std::vector<ObjId>> subcategory;   // objects generating the ideal, when they do
  bool level_e = false;
};

// All idempotent two-sided ideals, enumerated as down-sets of the
// divisibility preorder and filtered by idempotency. Deterministic order:
// ascending ideal size, then lexicographic.
std::vector<Level> enumerate_levels(const FinCategory& cat, int morphism_budget = 40,
                                    std::size_t level_cap = 1u << 16);

}  // namespace etendue
