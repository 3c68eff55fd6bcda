#pragma once

// Finite presentations of (possibly infinite) structures: a finite base, a
// list of component templates each carried with a finite or unbounded (omega)
// multiplicity, and an optional family of templates of strictly increasing
// size representing components with no size bound. `realize` truncates such a
// presentation to a concrete finite structure.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "macell/structure.hpp"

namespace macell {

struct CatalogEntry {
    Structure tmpl;
    // nullopt encodes omega (one copy per round, without bound).
    std::optional<long long> multiplicity;

    bool is_omega() const { return !multiplicity.has_value(); }
};

struct StructureCatalog {
    Structure base;
    std::vector<CatalogEntry> entries;
    // Templates of strictly increasing size; present only when the catalog
    // has components of unbounded size.
    std::vector<Structure> family;

    const Signature& signature() const { return base.signature(); }
    bool has_family() const { return !family.empty(); }
};

// Checks: signatures of base and templates agree on relations, templates are
// nonempty single-component structures without constants, family sizes
// strictly increase, multiplicities are nonnegative. Throws InputError.
void validate_catalog(const StructureCatalog& cat);

// Document form:
//   {"base": <structure or null>,
//    "entries": [{"template": <structure>, "multiplicity": 5 | "omega"}],
//    "family": {"templates": [<structure>, ...], "unbounded": true}}
// A null base yields an empty base over the first template's relations.
StructureCatalog catalog_from_json(const nlohmann::json& j);
nlohmann::json catalog_to_json(const StructureCatalog& cat);
StructureCatalog load_catalog(const std::string& json_text);
StructureCatalog load_catalog_file(const std::string& path);
std::string serialize_catalog(const StructureCatalog& cat);

struct CellularityDecision {
    bool cellular = false;
    std::string reason;
};

// A catalog without a family keeps every component within a fixed size and
// realizes only finitely many component types, so swapping like components
// witnesses cellularity; an unbounded family defeats any uniform bound.
CellularityDecision catalog_is_cellular(const StructureCatalog& cat);

// Finite truncation: the base, then finite-multiplicity copies, then omega
// entries round-robin, then family members in increasing size, adding each
// component only when it fits the remaining budget. Copy elements are named
// t{entry}_{copy}_{index} with the family numbered after the entry list.
// Throws InputError when budget < |base|.
Structure realize(const StructureCatalog& cat, long long budget);

}  // namespace macell
