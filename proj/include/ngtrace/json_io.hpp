#pragma once
#include <string>

#include <json.hpp>

#include "ngtrace/polytope.hpp"
#include "ngtrace/trace.hpp"

namespace ngtrace {

using json = nlohmann::ordered_json;

Vec vec_from_json(const json& j);
json vec_to_json(const Vec& v);
json vecs_to_json(const std::vector<Vec>& vs);

// {"vertices": [[int,...],...]}; facets are always recomputed
LatticePolytope polytope_from_json(const json& j, size_t hull_limit = 6);

// {"generators": [[int,...],...], "grading": "last"|[int,...], "assume_cm": bool}
SemigroupPtr semigroup_from_json(const json& j, bool* assume_cm = nullptr);

struct OmegaFixture {
    SemigroupPtr ambient;
    MonomialModule module;
    std::string kind;        // "omega" or "ideal"
    std::string provenance;
    bool assume_cm = true;
};

// {"ambient": <semigroup>, "generators": [...], "kind": ..., "provenance": ...}
OmegaFixture fixture_from_json(const json& j);

json load_json_file(const std::string& path);

}  // namespace ngtrace
