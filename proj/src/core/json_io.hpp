#pragma once
// JSON encodings used by the CLI and the shared-library API.
//
// category: {"objects": ["a", ...],
//            "morphisms": [{"id": "f", "dom": "a", "cod": "b"}, ...],
//            "identities": {"a": "id_a", ...},
//            "compose": [["g", "f", "gf"], ...]}   (outer, inner, result)
// presheaf: {"base": "delta:2" | <inline category>,
//            "elements": {"obj": ["x1", ...]},
//            "action": {"f": {"y": "x", ...}, ...}} (cod stage -> dom stage)
//
// Compose pairs forced by the unit laws, identity action columns, empty
// action columns, and empty element lists may all be omitted; the writers
// omit them and the loaders fill them back in. Loaded categories are fully
// re-validated (unit and associativity laws), loaded presheaves re-checked
// for contravariant functoriality.

#include <string>
#include <string_view>

#include "geometry.hpp"
#include "json.hpp"
#include "presheaf.hpp"

namespace etendue {

using Json = nlohmann::ordered_json;

// malformed_input instead of vendor exceptions.
Json parse_json(std::string_view text);

Json category_json(const FinCategory& cat);
FinCategory category_of_json(const Json& j);

// "delta:<k>" or "finset:<k>".
FinCategory base_by_ref(std::string_view ref);

// With an empty base_ref the base category is embedded inline.
Json presheaf_json(const Presheaf& x, std::string_view base_ref = {});
Presheaf presheaf_of_json(const Json& j);

// Finite values are JSON numbers; the infinities are "-inf" / "inf".
Json extnat_json(ExtNat n);

Json dimension_report_json(const DimensionReport& rep);

// String conveniences over the value-level functions.
std::string category_to_json(const FinCategory& cat);
FinCategory category_from_json(std::string_view text);
std::string presheaf_to_json(const Presheaf& x, std::string_view base_ref = {});
Presheaf presheaf_from_json(std::string_view text);
std::string dimension_report_to_json(const DimensionReport& rep);

}  // namespace etendue
