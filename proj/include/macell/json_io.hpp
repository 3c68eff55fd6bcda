#pragma once

#include "json.hpp"
#include "macell/structure.hpp"

namespace macell {

// Structure document <-> nlohmann::json, shared by the file-level helpers in
// structure.cpp and the composite documents (catalogs, partitions, reports).
Structure structure_from_json(const nlohmann::json& j);
nlohmann::json structure_to_json(const Structure& m);

}  // namespace macell
