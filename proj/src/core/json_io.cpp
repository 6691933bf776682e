#include "json_io.hpp"

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sites.hpp"

namespace etendue {

namespace {

[[noreturn]] void bad(const std::string& what) {
  fail(ErrorCode::malformed_input, what);
}

std::string as_string(const Json& j, const char* where) {
  if (!j.is_string()) bad(std::string(where) + " must be a string");
  return j.get<std::string>();
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) bad(std::string("expected an object carrying \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field \"") + key + "\"");
  return *it;
}

ObjId object_named(const FinCategory& cat, const std::string& name) {
  auto c = cat.find_object(name);
  if (!c) fail(ErrorCode::unknown_name, "no such object: " + name);
  return *c;
}

MorId morphism_named(const FinCategory& cat, const std::string& name) {
  auto f = cat.find_morphism(name);
  if (!f) fail(ErrorCode::unknown_name, "no such morphism: " + name);
  return *f;
}

}  // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
}

Json category_json(const FinCategory& cat) {
  Json j;
  j["objects"] = Json::array();
  for (ObjId c = 0; c < cat.object_count(); ++c) j["objects"].push_back(cat.object_name(c));
  j["morphisms"] = Json::array();
  for (MorId f = 0; f < cat.morphism_count(); ++f)
    j["morphisms"].push_back({{"id", cat.morphism_name(f)},
                              {"dom", cat.object_name(cat.dom(f))},
                              {"cod", cat.object_name(cat.cod(f))}});
  j["identities"] = Json::object();
  for (ObjId c = 0; c < cat.object_count(); ++c)
    j["identities"][cat.object_name(c)] = cat.morphism_name(cat.identity(c));
  j["compose"] = Json::array();
  for (MorId g = 0; g < cat.morphism_count(); ++g) {
    if (cat.is_identity(g)) continue;
    for (MorId f = 0; f < cat.morphism_count(); ++f) {
      if (cat.is_identity(f) || cat.dom(g) != cat.cod(f)) continue;
      j["compose"].push_back({cat.morphism_name(g), cat.morphism_name(f),
                              cat.morphism_name(cat.compose(g, f))});
    }
  }
  return j;
}

FinCategory category_of_json(const Json& j) {
  CategoryBuilder b;
  std::map<std::string, ObjId> objs;
  std::map<std::string, MorId> mors;
  std::vector<ObjId> dom, cod;

  const Json& objects = field(j, "objects");
  if (!objects.is_array()) bad("\"objects\" must be an array");
  for (const Json& o : objects) {
    const std::string name = as_string(o, "object name");
    if (!objs.emplace(name, b.add_object(name)).second) bad("duplicate object: " + name);
  }
  auto obj = [&](const Json& v, const char* where) {
    const std::string name = as_string(v, where);
    auto it = objs.find(name);
    if (it == objs.end()) fail(ErrorCode::unknown_name, "no such object: " + name);
    return it->second;
  };

  const Json& morphisms = field(j, "morphisms");
  if (!morphisms.is_array()) bad("\"morphisms\" must be an array");
  for (const Json& m : morphisms) {
    const std::string name = as_string(field(m, "id"), "morphism id");
    const ObjId d = obj(field(m, "dom"), "dom");
    const ObjId c = obj(field(m, "cod"), "cod");
    if (!mors.emplace(name, b.add_morphism(name, d, c)).second)
      bad("duplicate morphism: " + name);
    dom.push_back(d);
    cod.push_back(c);
  }
  auto mor = [&](const Json& v, const char* where) {
    const std::string name = as_string(v, where);
    auto it = mors.find(name);
    if (it == mors.end()) fail(ErrorCode::unknown_name, "no such morphism: " + name);
    return it->second;
  };

  const Json& identities = field(j, "identities");
  if (!identities.is_object()) bad("\"identities\" must be an object");
  std::vector<MorId> id_of(objs.size(), kNoMor);
  for (auto it = identities.begin(); it != identities.end(); ++it) {
    const ObjId c = obj(Json(it.key()), "identity key");
    id_of[c] = mor(it.value(), "identity value");
    b.set_identity(c, id_of[c]);
  }

  const Json& compose = field(j, "compose");
  if (!compose.is_array()) bad("\"compose\" must be an array");
  std::set<std::pair<MorId, MorId>> given;
  for (const Json& entry : compose) {
    if (!entry.is_array() || entry.size() != 3)
      bad("compose entries must be [outer, inner, result]");
    const MorId g = mor(entry[0], "outer"), f = mor(entry[1], "inner"),
                r = mor(entry[2], "result");
    b.set_compose(g, f, r);
    given.insert({g, f});
  }
  // Unit-law pairs may be omitted; fill the missing ones.
  for (MorId f = 0; f < static_cast<MorId>(dom.size()); ++f) {
    const MorId li = id_of[cod[f]], ri = id_of[dom[f]];
    if (li != kNoMor && !given.count({li, f})) b.set_compose(li, f, f);
    if (ri != kNoMor && !given.count({f, ri})) b.set_compose(f, ri, f);
  }

  ValidationResult v = b.finish_validated();
  if (!v.ok()) {
    std::string msg = "category axioms fail:";
    for (const std::string& s : v.violations) msg += " " + s + ";";
    fail(ErrorCode::axiom_violation, msg);
  }
  return v.category;
}

FinCategory base_by_ref(std::string_view ref) {
  const auto colon = ref.find(':');
  if (colon != std::string_view::npos) {
    const std::string_view kind = ref.substr(0, colon);
    if (auto k = ExtNat::parse(ref.substr(colon + 1)); k && k->is_finite()) {
      if (kind == "delta") return build_delta(static_cast<int>(k->value()));
      if (kind == "finset") return build_finset(static_cast<int>(k->value()));
    }
  }
  bad("base reference must look like delta:<k> or finset:<k>, got \"" +
      std::string(ref) + "\"");
}

Json presheaf_json(const Presheaf& x, std::string_view base_ref) {
  const FinCategory& cat = x.base();
  Json j;
  if (base_ref.empty())
    j["base"] = category_json(cat);
  else
    j["base"] = std::string(base_ref);
  j["elements"] = Json::object();
  for (ObjId c = 0; c < cat.object_count(); ++c) {
    if (x.size(c) == 0) continue;
    Json arr = Json::array();
    for (ElemId e = 0; e < x.size(c); ++e) arr.push_back(x.element_name(c, e));
    j["elements"][cat.object_name(c)] = std::move(arr);
  }
  j["action"] = Json::object();
  for (MorId f = 0; f < cat.morphism_count(); ++f) {
    if (cat.is_identity(f) || x.size(cat.cod(f)) == 0) continue;
    Json col = Json::object();
    for (ElemId y = 0; y < x.size(cat.cod(f)); ++y)
      col[x.element_name(cat.cod(f), y)] = x.element_name(cat.dom(f), x.act(f, y));
    j["action"][cat.morphism_name(f)] = std::move(col);
  }
  return j;
}

Presheaf presheaf_of_json(const Json& j) {
  const Json& base = field(j, "base");
  const FinCategory cat =
      base.is_string() ? base_by_ref(base.get<std::string>()) : category_of_json(base);

  PresheafBuilder b(cat);
  std::vector<std::map<std::string, ElemId>> index(cat.object_count());
  const Json& elements = field(j, "elements");
  if (!elements.is_object()) bad("\"elements\" must be an object");
  for (ObjId c = 0; c < cat.object_count(); ++c) {
    auto it = elements.find(cat.object_name(c));
    if (it == elements.end()) continue;
    if (!it->is_array()) bad("element lists must be arrays");
    for (const Json& name : *it) {
      const std::string n = as_string(name, "element name");
      if (!index[c].emplace(n, b.add_element(c, n)).second)
        bad("duplicate element at " + cat.object_name(c) + ": " + n);
    }
  }
  for (auto it = elements.begin(); it != elements.end(); ++it)
    object_named(cat, it.key());  // reject lists for objects the base lacks

  const Json& action = field(j, "action");
  if (!action.is_object()) bad("\"action\" must be an object");
  for (auto it = action.begin(); it != action.end(); ++it) {
    const MorId f = morphism_named(cat, it.key());
    if (!it->is_object()) bad("action columns must be objects");
    for (auto col = it->begin(); col != it->end(); ++col) {
      auto at = [&](ObjId stage, const std::string& name) {
        auto found = index[stage].find(name);
        if (found == index[stage].end())
          fail(ErrorCode::unknown_name,
               "no element " + name + " at " + cat.object_name(stage));
        return found->second;
      };
      b.set_action(f, at(cat.cod(f), col.key()),
                   at(cat.dom(f), as_string(col.value(), "action value")));
    }
  }
  return b.finish();
}

Json extnat_json(ExtNat n) {
  if (n.is_finite()) return Json(n.value());
  return Json(n.to_string());
}

Json dimension_report_json(const DimensionReport& rep) {
  Json j;
  j["dim"] = extnat_json(rep.dim);
  j["depth"] = extnat_json(rep.depth);
  j["strongly_regular"] = rep.strongly_regular;
  j["non_singular"] = rep.non_singular;
  j["localic"] = rep.localic;
  j["etendue"] = rep.etendue;
  j["table"] = Json::array();
  for (const DimensionRow& row : rep.table)
    j["table"].push_back(
        {{"n", row.n}, {"dim_le_n", row.dim_le_n}, {"ibd_n", row.ibd_n}});
  j["witnesses"] = rep.witnesses;
  return j;
}

std::string category_to_json(const FinCategory& cat) { return category_json(cat).dump(2); }

FinCategory category_from_json(std::string_view text) {
  return category_of_json(parse_json(text));
}

std::string presheaf_to_json(const Presheaf& x, std::string_view base_ref) {
  return presheaf_json(x, base_ref).dump(2);
}

Presheaf presheaf_from_json(std::string_view text) {
  return presheaf_of_json(parse_json(text));
}

std::string dimension_report_to_json(const DimensionReport& rep) {
  return dimension_report_json(rep).dump(2);
}

}  // namespace etendue
