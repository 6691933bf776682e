#include "etendue.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "core/error.hpp"
#include "core/examples.hpp"
#include "core/geometry.hpp"
#include "core/json_io.hpp"
#include "core/logic.hpp"
#include "core/sites.hpp"

using namespace etendue;

struct etd_category {
  FinCategory cat;
};
struct etd_presheaf {
  Presheaf x;
};

namespace {

thread_local int g_last_code = ETD_OK;
thread_local std::string g_last_message;

int code_of(ErrorCode c) {
  switch (c) {
    case ErrorCode::malformed_input: return ETD_E_MALFORMED;
    case ErrorCode::axiom_violation: return ETD_E_AXIOM;
    case ErrorCode::unknown_name: return ETD_E_UNKNOWN_NAME;
    case ErrorCode::budget_exceeded: return ETD_E_BUDGET;
    case ErrorCode::parent_mismatch: return ETD_E_PARENT;
    case ErrorCode::not_natural: return ETD_E_NOT_NATURAL;
    case ErrorCode::hypothesis_failed: return ETD_E_HYPOTHESIS;
    case ErrorCode::incompatible_base: return ETD_E_INCOMPATIBLE;
    case ErrorCode::parse_error: return ETD_E_PARSE;
    case ErrorCode::theorem_violation: return ETD_E_THEOREM;
    case ErrorCode::internal: return ETD_E_INTERNAL;
  }
  return ETD_E_INTERNAL;
}

int set_error(int code, const std::string& message) {
  g_last_code = code;
  g_last_message = message;
  return code;
}

template <class Fn>
int guarded(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return set_error(code_of(e.code()), e.what());
  } catch (const std::exception& e) {
    return set_error(ETD_E_INTERNAL, e.what());
  } catch (...) {
    return set_error(ETD_E_INTERNAL, "unknown failure");
  }
  g_last_code = ETD_OK;
  g_last_message.clear();
  return ETD_OK;
}

int require(bool ok, const char* what) {
  return ok ? ETD_OK : set_error(ETD_E_NULL, std::string(what) + " must not be NULL");
}

char* copy_out(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::int64_t to_c(ExtNat n) {
  if (n.is_neg_inf()) return ETD_NEG_INF;
  if (n.is_pos_inf()) return ETD_POS_INF;
  return n.value();
}

ObjectSieve sieve_by_name(const FinCategory& cat, std::string_view name) {
  ObjectSieve u;
  u.members.assign(cat.object_count(), 0);
  if (name == "empty") return u;
  if (name == "all") {
    u.members.assign(cat.object_count(), 1);
    return u;
  }
  std::string_view rest = name;
  while (!rest.empty()) {
    const auto bar = rest.find('|');
    const std::string_view part = rest.substr(0, bar);
    auto c = cat.find_object(part);
    if (!c)
      fail(ErrorCode::unknown_name,
           "const(...) names \"all\", \"empty\", or object names joined by "
           "\"|\"; no object named \"" +
               std::string(part) + "\"");
    u.members[*c] = 1;
    if (bar == std::string_view::npos) break;
    rest.remove_prefix(bar + 1);
  }
  return u;
}

}  // namespace

extern "C" {

int etd_last_error_code(void) { return g_last_code; }

const char* etd_last_error_message(void) { return g_last_message.c_str(); }

void etd_string_free(char* s) { std::free(s); }

void etd_category_free(etd_category* cat) { delete cat; }

void etd_presheaf_free(etd_presheaf* x) { delete x; }

int etd_site(const char* kind, int max_label, etd_category** out) {
  if (int rc = require(kind != nullptr, "kind")) return rc;
  if (int rc = require(out != nullptr, "out")) return rc;
  return guarded([&] {
    *out = new etd_category{
        base_by_ref(std::string(kind) + ":" + std::to_string(max_label))};
  });
}

int etd_category_from_json(const char* text, etd_category** out) {
  if (int rc = require(text != nullptr, "text")) return rc;
  if (int rc = require(out != nullptr, "out")) return rc;
  return guarded([&] { *out = new etd_category{category_from_json(text)}; });
}

int etd_category_to_json(const etd_category* cat, char** out) {
  if (int rc = require(cat != nullptr, "cat")) return rc;
  if (int rc = require(out != nullptr, "out")) return rc;
  return guarded([&] { *out = copy_out(category_to_json(cat->cat)); });
}

int etd_category_counts(const etd_category* cat, int64_t* objects,
                        int64_t* morphisms) {
  if (int rc = require(cat != nullptr, "cat")) return rc;
  return guarded([&] {
    if (objects != nullptr) *objects = cat->cat.object_count();
    if (morphisms != nullptr) *morphisms = cat->cat.morphism_count();
  });
}

int etd_presheaf_build(const char* base_ref, const char* example,
                       etd_presheaf** out) {
  if (int rc = require(base_ref != nullptr, "base_ref")) return rc;
  if (int rc = require(example != nullptr, "example")) return rc;
  if (int rc = require(out != nullptr, "out")) return rc;
  return guarded([&] {
    *out = new etd_presheaf{example_by_name(base_by_ref(base_ref), example)};
  });
}

int etd_presheaf_from_json(const char* text, etd_presheaf** out) {
  if (int rc = require(text != nullptr, "text")) return rc;
  if (int rc = require(out != nullptr, "out")) return rc;
  return guarded([&] { *out = new etd_presheaf{presheaf_from_json(text)}; });
}

int etd_presheaf_to_json(const etd_presheaf* x, const char* base_ref,
                         char** out) {
  if (int rc = require(x != nullptr, "x")) return rc;
  if (int rc = require(out != nullptr, "out")) return rc;
  return guarded([&] {
    *out = copy_out(
        presheaf_to_json(x->x, base_ref == nullptr ? "" : base_ref));
  });
}

int etd_presheaf_total_size(const etd_presheaf* x, int64_t* total) {
  if (int rc = require(x != nullptr, "x")) return rc;
  if (int rc = require(total != nullptr, "total")) return rc;
  return guarded([&] { *total = x->x.total_size(); });
}

int etd_dim(const etd_presheaf* x, int64_t* out) {
  if (int rc = require(x != nullptr, "x")) return rc;
  if (int rc = require(out != nullptr, "out")) return rc;
  return guarded([&] { *out = to_c(dim(x->x)); });
}

int etd_depth(const etd_presheaf* x, int64_t* out) {
  if (int rc = require(x != nullptr, "x")) return rc;
  if (int rc = require(out != nullptr, "out")) return rc;
  return guarded([&] { *out = to_c(depth(x->x)); });
}

int etd_analyze_json(const etd_presheaf* x, int64_t n_max, char** out) {
  if (int rc = require(x != nullptr, "x")) return rc;
  if (int rc = require(out != nullptr, "out")) return rc;
  return guarded([&] {
    std::optional<int> bound;
    if (n_max >= 0) bound = static_cast<int>(n_max);
    *out = copy_out(dimension_report_to_json(verify_dimension_theorem(x->x, bound)));
  });
}

int etd_logic_eval_json(const etd_category* site, const char* formula,
                        char** out) {
  if (int rc = require(site != nullptr, "site")) return rc;
  if (int rc = require(formula != nullptr, "formula")) return rc;
  if (int rc = require(out != nullptr, "out")) return rc;
  return guarded([&] {
    const FinCategory& cat = site->cat;
    const Formula f = parse_formula(
        formula, [&](std::string_view name) { return sieve_by_name(cat, name); });
    const ObjectSieve value = sentence_value(cat, f);
    Json j;
    j["formula"] = f.to_string();
    j["satisfied"] = value.count() == cat.object_count();
    j["forcing_stages"] = Json::array();
    for (ObjId c = 0; c < cat.object_count(); ++c)
      if (value.contains(c)) j["forcing_stages"].push_back(cat.object_name(c));
    *out = copy_out(j.dump(2));
  });
}

int etd_levels_json(const etd_category* cat, int64_t budget, char** out) {
  if (int rc = require(cat != nullptr, "cat")) return rc;
  if (int rc = require(out != nullptr, "out")) return rc;
  return guarded([&] {
    const FinCategory& c = cat->cat;
    const std::vector<Level> levels =
        budget > 0 ? enumerate_levels(c, static_cast<int>(budget))
                   : enumerate_levels(c);
    Json j;
    j["count"] = levels.size();
    j["levels"] = Json::array();
    for (const Level& lv : levels) {
      Json row;
      row["ideal"] = Json::array();
      for (MorId f : lv.ideal) row["ideal"].push_back(c.morphism_name(f));
      if (lv.subcategory) {
        row["objects"] = Json::array();
        for (ObjId o : *lv.subcategory) row["objects"].push_back(c.object_name(o));
      } else {
        row["objects"] = nullptr;
      }
      row["level_e"] = lv.level_e;
      j["levels"].push_back(std::move(row));
    }
    *out = copy_out(j.dump(2));
  });
}

int etd_seed_corpus_json(char** out) {
  if (int rc = require(out != nullptr, "out")) return rc;
  return guarded([&] {
    Json j = Json::array();
    for (const NamedPresheaf& np : seed_corpus()) {
      Json row;
      row["name"] = np.name;
      row["base"] = np.base_ref;
      row["report"] = dimension_report_json(verify_dimension_theorem(np.presheaf));
      j.push_back(std::move(row));
    }
    *out = copy_out(j.dump(2));
  });
}

}  // extern "C"
