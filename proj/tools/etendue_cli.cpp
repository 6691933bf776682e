// Command-line front end for the etendue shared library.
//
// Every computation goes through the C API in etendue.h; this file only
// parses arguments, reads files, and renders the JSON payloads returned by
// the library as human-readable text (or passes them through with --json).
//
// Exit codes:
//   0  success
//   1  an asserted equivalence failed (TheoremViolation) or internal fault
//   2  input, parse, or hypothesis errors

#include "etendue.h"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------- errors --

const char* code_name(int rc) {
  switch (rc) {
    case ETD_OK: return "Ok";
    case ETD_E_MALFORMED: return "MalformedInput";
    case ETD_E_AXIOM: return "AxiomViolation";
    case ETD_E_UNKNOWN_NAME: return "UnknownName";
    case ETD_E_BUDGET: return "BudgetExceeded";
    case ETD_E_PARENT: return "ParentMismatch";
    case ETD_E_NOT_NATURAL: return "NotNatural";
    case ETD_E_HYPOTHESIS: return "HypothesisFailed";
    case ETD_E_INCOMPATIBLE: return "IncompatibleBase";
    case ETD_E_PARSE: return "ParseError";
    case ETD_E_THEOREM: return "TheoremViolation";
    case ETD_E_INTERNAL: return "Internal";
    case ETD_E_NULL: return "NullArgument";
    default: return "Unknown";
  }
}

// Analysis-level failures (a verified equivalence breaking, or an internal
// fault) signal a bug in the library and exit 1; everything else is an
// input problem and exits 2.
int exit_code_for(int rc) {
  if (rc == ETD_OK) return 0;
  if (rc == ETD_E_THEOREM || rc == ETD_E_INTERNAL) return 1;
  return 2;
}

int report_error(int rc) {
  const char* msg = etd_last_error_message();
  std::fprintf(stderr, "error[%s]: %s\n", code_name(rc),
               msg ? msg : "(no detail)");
  return exit_code_for(rc);
}

int report_usage_error(const std::string& what) {
  std::fprintf(stderr, "error[MalformedInput]: %s\n", what.c_str());
  return 2;
}

// ------------------------------------------------------------------ util --

// Reads a whole file; "-" means standard input.
std::optional<std::string> slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// RAII for strings allocated by the library.
struct CStr {
  char* p = nullptr;
  ~CStr() { etd_string_free(p); }
  std::string str() const { return p ? std::string(p) : std::string(); }
};

struct CatHandle {
  etd_category* p = nullptr;
  ~CatHandle() { etd_category_free(p); }
};

struct PshHandle {
  etd_presheaf* p = nullptr;
  ~PshHandle() { etd_presheaf_free(p); }
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// A dimension value in a report is either a JSON number or "-inf"/"inf".
std::string show_extended(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return std::to_string(v.get<long long>());
}

bool rows_agree(const Json& table) {
  for (const auto& row : table)
    if (row.at("dim_le_n").get<bool>() != row.at("ibd_n").get<bool>())
      return false;
  return true;
}

// ------------------------------------------------------------- rendering --

void print_report_human(const Json& r) {
  std::printf("dim:              %s   (least n whose n-skeleton is everything)\n",
              show_extended(r.at("dim")).c_str());
  std::printf("depth:            %s   (least n forcing the depth-n sentence over the minimal-figure site)\n",
              show_extended(r.at("depth")).c_str());
  std::printf("strongly_regular: %s\n", yes_no(r.at("strongly_regular").get<bool>()).c_str());
  std::printf("non_singular:     %s\n", yes_no(r.at("non_singular").get<bool>()).c_str());
  std::printf("localic:          %s\n", yes_no(r.at("localic").get<bool>()).c_str());
  std::printf("etendue:          %s\n", yes_no(r.at("etendue").get<bool>()).c_str());
  const Json& table = r.at("table");
  std::printf("rows (dim <= n versus the depth-n sentence):\n");
  for (const auto& row : table) {
    std::printf("  n=%lld: dim_le_n=%s ibd_n=%s\n",
                row.at("n").get<long long>(),
                yes_no(row.at("dim_le_n").get<bool>()).c_str(),
                yes_no(row.at("ibd_n").get<bool>()).c_str());
  }
  std::printf("rows agree:       %s\n", yes_no(rows_agree(table)).c_str());
  const Json& wit = r.at("witnesses");
  if (!wit.empty()) {
    std::printf("witnesses:\n");
    for (const auto& w : wit)
      std::printf("  - %s\n", w.get<std::string>().c_str());
  }
}

// ------------------------------------------------------------- commands --

int cmd_validate(const std::string& path, bool as_json) {
  auto text = slurp(path);
  if (!text) return report_usage_error("cannot read " + path);
  CatHandle cat;
  if (int rc = etd_category_from_json(text->c_str(), &cat.p)) return report_error(rc);
  int64_t objects = 0, morphisms = 0;
  if (int rc = etd_category_counts(cat.p, &objects, &morphisms)) return report_error(rc);
  if (as_json) {
    Json out;
    out["ok"] = true;
    out["objects"] = objects;
    out["morphisms"] = morphisms;
    std::printf("%s\n", out.dump(2).c_str());
  } else {
    std::printf("ok: %lld objects, %lld morphisms, all axioms hold\n",
                (long long)objects, (long long)morphisms);
  }
  return 0;
}

int cmd_site(const std::string& kind, int max_label, bool emit, bool as_json) {
  CatHandle cat;
  if (int rc = etd_site(kind.c_str(), max_label, &cat.p)) return report_error(rc);
  if (emit) {
    CStr js;
    if (int rc = etd_category_to_json(cat.p, &js.p)) return report_error(rc);
    std::printf("%s\n", js.p);
    return 0;
  }
  int64_t objects = 0, morphisms = 0;
  if (int rc = etd_category_counts(cat.p, &objects, &morphisms)) return report_error(rc);
  if (as_json) {
    Json out;
    out["base"] = kind + ":" + std::to_string(max_label);
    out["objects"] = objects;
    out["morphisms"] = morphisms;
    std::printf("%s\n", out.dump(2).c_str());
  } else {
    std::printf("site %s:%d: %lld objects, %lld morphisms (use --emit for the full JSON)\n",
                kind.c_str(), max_label, (long long)objects, (long long)morphisms);
  }
  return 0;
}

int cmd_presheaf_build(const std::string& example, const std::string& base,
                       bool as_json) {
  (void)as_json;  // the payload is already JSON
  PshHandle x;
  if (int rc = etd_presheaf_build(base.c_str(), example.c_str(), &x.p))
    return report_error(rc);
  CStr js;
  if (int rc = etd_presheaf_to_json(x.p, base.c_str(), &js.p)) return report_error(rc);
  std::printf("%s\n", js.p);
  return 0;
}

int load_presheaf(const std::string& path, PshHandle& x, int* out_err) {
  auto text = slurp(path);
  if (!text) {
    *out_err = -1;
    return report_usage_error("cannot read " + path);
  }
  if (int rc = etd_presheaf_from_json(text->c_str(), &x.p)) {
    *out_err = rc;
    return report_error(rc);
  }
  *out_err = 0;
  return 0;
}

int cmd_analyze(const std::string& path, int n_max, bool as_json) {
  PshHandle x;
  int err = 0;
  if (int rc = load_presheaf(path, x, &err)) return rc;
  CStr js;
  if (int rc = etd_analyze_json(x.p, n_max, &js.p)) return report_error(rc);
  if (as_json) {
    std::printf("%s\n", js.p);
  } else {
    print_report_human(Json::parse(js.str()));
  }
  return 0;
}

int cmd_dim_or_depth(const std::string& path, bool want_dim, bool as_json) {
  PshHandle x;
  int err = 0;
  if (int rc = load_presheaf(path, x, &err)) return rc;
  int64_t value = 0;
  int rc = want_dim ? etd_dim(x.p, &value) : etd_depth(x.p, &value);
  if (rc) return report_error(rc);
  std::string shown = value == ETD_NEG_INF ? "-inf"
                    : value == ETD_POS_INF ? "inf"
                    : std::to_string((long long)value);
  if (as_json) {
    Json out;
    if (value == ETD_NEG_INF || value == ETD_POS_INF)
      out[want_dim ? "dim" : "depth"] = shown;
    else
      out[want_dim ? "dim" : "depth"] = value;
    std::printf("%s\n", out.dump(2).c_str());
  } else {
    std::printf("%s\n", shown.c_str());
  }
  return 0;
}

int cmd_logic_eval(const std::string& site_path, const std::string& formula,
                   bool as_json) {
  auto text = slurp(site_path);
  if (!text) return report_usage_error("cannot read " + site_path);
  CatHandle cat;
  if (int rc = etd_category_from_json(text->c_str(), &cat.p)) return report_error(rc);
  CStr js;
  if (int rc = etd_logic_eval_json(cat.p, formula.c_str(), &js.p))
    return report_error(rc);
  if (as_json) {
    std::printf("%s\n", js.p);
    return 0;
  }
  Json out = Json::parse(js.str());
  std::printf("formula:        %s\n", out.at("formula").get<std::string>().c_str());
  std::printf("satisfied:      %s\n",
              yes_no(out.at("satisfied").get<bool>()).c_str());
  std::string stages;
  for (const auto& s : out.at("forcing_stages")) {
    if (!stages.empty()) stages += ", ";
    stages += s.get<std::string>();
  }
  std::printf("forcing stages: %s\n",
              stages.empty() ? "(none)" : stages.c_str());
  return 0;
}

int cmd_levels(const std::string& path, int budget, bool as_json) {
  auto text = slurp(path);
  if (!text) return report_usage_error("cannot read " + path);
  CatHandle cat;
  if (int rc = etd_category_from_json(text->c_str(), &cat.p)) return report_error(rc);
  CStr js;
  if (int rc = etd_levels_json(cat.p, budget, &js.p)) return report_error(rc);
  if (as_json) {
    std::printf("%s\n", js.p);
    return 0;
  }
  Json out = Json::parse(js.str());
  std::printf("%lld levels (idempotent two-sided ideals of the composition table):\n",
              out.at("count").get<long long>());
  int i = 0;
  for (const auto& lv : out.at("levels")) {
    std::string ideal;
    for (const auto& m : lv.at("ideal")) {
      if (!ideal.empty()) ideal += ", ";
      ideal += m.get<std::string>();
    }
    std::string objs = "-";
    if (!lv.at("objects").is_null()) {
      objs.clear();
      for (const auto& o : lv.at("objects")) {
        if (!objs.empty()) objs += ", ";
        objs += o.get<std::string>();
      }
      if (objs.empty()) objs = "(no objects)";
    }
    std::printf("  %d: ideal {%s}  subcategory: %s%s\n", i++,
                ideal.c_str(), objs.c_str(),
                lv.at("level_e").get<bool>() ? "  [level e]" : "");
  }
  return 0;
}

int cmd_theorem(const std::string& path, int n_max, bool as_json) {
  PshHandle x;
  int err = 0;
  if (int rc = load_presheaf(path, x, &err)) return rc;
  CStr js;
  if (int rc = etd_analyze_json(x.p, n_max, &js.p)) return report_error(rc);
  Json out = Json::parse(js.str());
  if (as_json) {
    std::printf("%s\n", js.p);
  } else {
    print_report_human(out);
    bool sr = out.at("strongly_regular").get<bool>();
    bool agree = rows_agree(out.at("table"));
    if (sr && agree) {
      std::printf("verdict: strongly regular, and dim <= n matches the depth-n sentence at every row\n");
    } else if (!sr) {
      std::printf("verdict: not strongly regular; the row-by-row match is reported but not asserted (agree: %s)\n",
                  yes_no(agree).c_str());
    }
  }
  return 0;
}

int cmd_seed_corpus(bool as_json) {
  CStr js;
  if (int rc = etd_seed_corpus_json(&js.p)) return report_error(rc);
  if (as_json) {
    std::printf("%s\n", js.p);
    return 0;
  }
  Json out = Json::parse(js.str());
  std::printf("%zu presheaves in the built-in corpus:\n", out.size());
  for (const auto& row : out) {
    const Json& r = row.at("report");
    std::printf("  %-28s [%s]  dim=%s depth=%s strongly_regular=%s rows_agree=%s\n",
                row.at("name").get<std::string>().c_str(),
                row.at("base").get<std::string>().c_str(),
                show_extended(r.at("dim")).c_str(),
                show_extended(r.at("depth")).c_str(),
                yes_no(r.at("strongly_regular").get<bool>()).c_str(),
                yes_no(rows_agree(r.at("table"))).c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite categories, finite presheaves, and dimension analysis"};
  app.require_subcommand(0, 1);

  bool as_json = false;
  app.add_flag("--json", as_json, "emit machine-readable JSON instead of text");
  bool seed_corpus = false;
  app.add_flag("--seed-corpus", seed_corpus,
               "analyze every presheaf in the built-in example corpus");

  auto* validate = app.add_subcommand(
      "validate", "check a category JSON file against all axioms");
  std::string validate_path;
  validate->add_option("file", validate_path, "category JSON file (- for stdin)")
      ->required();

  auto* site = app.add_subcommand(
      "site", "build a truncated simplex or finite-sets site");
  std::string site_kind;
  site->add_option("kind", site_kind, "site family: delta or finset")
      ->required()
      ->check(CLI::IsMember({"delta", "finset"}));
  int site_max = 0;
  site->add_option("--max", site_max, "largest object label")->required();
  bool site_emit = false;
  site->add_flag("--emit", site_emit, "print the category as JSON");

  auto* presheaf = app.add_subcommand("presheaf", "presheaf constructions");
  presheaf->require_subcommand(1);
  auto* build = presheaf->add_subcommand(
      "build", "build a named example presheaf and print its JSON");
  std::string build_example;
  build->add_option("example", build_example,
                    "example name, e.g. representable([1]), boundary(2), "
                    "loop_Y, collapsed_Z, or a '+' combination")
      ->required();
  std::string build_base;
  build->add_option("--base", build_base, "base site reference, e.g. delta:2")
      ->required();

  auto* analyze = app.add_subcommand(
      "analyze", "full dimension report for a presheaf JSON file");
  std::string analyze_path;
  analyze->add_option("file", analyze_path, "presheaf JSON file (- for stdin)")
      ->required();
  int analyze_nmax = -1;
  analyze->add_option("--nmax", analyze_nmax,
                      "largest n in the row-by-row table (default: one past "
                      "the number of minimal figures)");

  auto* dim = app.add_subcommand("dim", "print the skeletal dimension");
  std::string dim_path;
  dim->add_option("file", dim_path, "presheaf JSON file (- for stdin)")
      ->required();

  auto* depth = app.add_subcommand(
      "depth", "print the least n whose depth-n sentence holds on the "
               "minimal-figure site");
  std::string depth_path;
  depth->add_option("file", depth_path, "presheaf JSON file (- for stdin)")
      ->required();

  auto* logic = app.add_subcommand("logic", "formula evaluation");
  logic->require_subcommand(1);
  auto* eval = logic->add_subcommand(
      "eval", "force a closed formula over a finite site");
  std::string eval_site;
  eval->add_option("--site", eval_site, "category JSON file (- for stdin)")
      ->required();
  std::string eval_formula;
  eval->add_option("--formula", eval_formula,
                   "e.g. \"ibd(1)\", \"forall x. gamma(x, bot)\", "
                   "\"const(a) => bot\"")
      ->required();

  auto* levels = app.add_subcommand(
      "levels", "enumerate idempotent two-sided ideals and their levels");
  std::string levels_path;
  levels->add_option("file", levels_path, "category JSON file (- for stdin)")
      ->required();
  int levels_budget = 0;
  levels->add_option("--budget", levels_budget,
                     "morphism-count budget for enumeration (default 40)");

  auto* theorem = app.add_subcommand(
      "theorem", "verify that dim <= n matches the depth-n sentence row by "
                 "row, asserted under strong regularity");
  std::string theorem_path;
  theorem->add_option("file", theorem_path, "presheaf JSON file (- for stdin)")
      ->required();
  int theorem_nmax = -1;
  theorem->add_option("--nmax", theorem_nmax,
                      "largest n in the row-by-row table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (*validate) return cmd_validate(validate_path, as_json);
  if (*site) return cmd_site(site_kind, site_max, site_emit, as_json);
  if (*presheaf) return cmd_presheaf_build(build_example, build_base, as_json);
  if (*analyze) return cmd_analyze(analyze_path, analyze_nmax, as_json);
  if (*dim) return cmd_dim_or_depth(dim_path, /*want_dim=*/true, as_json);
  if (*depth) return cmd_dim_or_depth(depth_path, /*want_dim=*/false, as_json);
  if (*logic) return cmd_logic_eval(eval_site, eval_formula, as_json);
  if (*levels) return cmd_levels(levels_path, levels_budget, as_json);
  if (*theorem) return cmd_theorem(theorem_path, theorem_nmax, as_json);
  if (seed_corpus) return cmd_seed_corpus(as_json);

  std::fputs(app.help().c_str(), stderr);
  return 2;
}
