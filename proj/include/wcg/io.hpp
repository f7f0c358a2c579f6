#pragma once

#include <string>

#include <json.hpp>

#include "wcg/catalog.hpp"
#include "wcg/commutator.hpp"
#include "wcg/group.hpp"

namespace wcg {

/// Group description object: {"label", "kind": "cayley"|"perm"|"cyclic", ...}.
GroupPtr load_group(const nlohmann::json& spec, int order_cap = kDefaultOrderCap);
GroupPtr load_group_file(const std::string& path, int order_cap = kDefaultOrderCap);

/// Subgroup reference: {"group": label, "members": [int]} or
/// {"group": label, "generators": [int]}.
Subgroup load_subgroup(const nlohmann::json& ref, const Catalog& catalog);

/// Homomorphism: {"source": label, "target": label, "images": [int]}.
Homomorphism load_homomorphism(const nlohmann::json& ref, const Catalog& catalog);
Homomorphism load_homomorphism_file(const std::string& path, const Catalog& catalog);

/// CLI subgroup token: "all" | "trivial" | "members:a,b,c" | "gens:a,b,c"
/// (a bare comma list is read as generators).
Subgroup parse_subgroup_token(GroupPtr parent, const std::string& token);

/// CLI homomorphism token, resolved against a codomain D:
///   "id"                identity of D
///   "trivial"           C1 -> D
///   "incl:<subgroup>"   inclusion of a subgroup of D
///   "file:<path>"       homomorphism JSON (target must be D)
Homomorphism parse_hom_token(GroupPtr d, const std::string& token,
                             const Catalog& catalog);

nlohmann::json report_to_json(const CommutatorReport& report);
std::string report_to_csv_row(const CommutatorReport& report);

}  // namespace wcg
