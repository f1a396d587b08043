#include "ngtrace/json_io.hpp"

#include <fstream>

namespace ngtrace {

Vec vec_from_json(const json& j) {
    if (!j.is_array()) throw input_error("expected an array of integers");
    Vec v;
    for (const auto& x : j) {
        if (x.is_number_integer())
            v.emplace_back((long)x.get<long long>());
        else if (x.is_string())
            v.emplace_back(x.get<std::string>());  // big integers arrive as strings
        else
            throw input_error("expected an integer coordinate");
    }
    return v;
}

json vec_to_json(const Vec& v) {
    json a = json::array();
    for (const auto& x : v) {
        if (x.fits_slong_p())
            a.push_back((long long)x.get_si());
        else
            a.push_back(x.get_str());
    }
    return a;
}

json vecs_to_json(const std::vector<Vec>& vs) {
    json a = json::array();
    for (const auto& v : vs) a.push_back(vec_to_json(v));
    return a;
}

LatticePolytope polytope_from_json(const json& j, size_t hull_limit) {
    if (!j.contains("vertices")) throw input_error("polytope file needs a \"vertices\" key");
    std::vector<Vec> pts;
    for (const auto& row : j.at("vertices")) pts.push_back(vec_from_json(row));
    return LatticePolytope::facet_presentation(pts, hull_limit);
}

SemigroupPtr semigroup_from_json(const json& j, bool* assume_cm) {
    if (!j.contains("generators")) throw input_error("semigroup file needs a \"generators\" key");
    std::vector<Vec> gens;
    for (const auto& row : j.at("generators")) gens.push_back(vec_from_json(row));
    if (gens.empty()) throw input_error("semigroup file with no generators");
    Grading g;
    if (!j.contains("grading") || (j.at("grading").is_string() &&
                                   j.at("grading").get<std::string>() == "last")) {
        g = Grading::last_coordinate(gens[0].size());
    } else if (j.at("grading").is_array()) {
        g.weights = vec_from_json(j.at("grading"));
    } else {
        throw input_error("grading must be \"last\" or an integer array");
    }
    if (assume_cm) *assume_cm = j.value("assume_cm", true);
    return std::make_shared<AffineSemigroup>(std::move(gens), std::move(g));
}

OmegaFixture fixture_from_json(const json& j) {
    if (!j.contains("ambient") || !j.contains("generators"))
        throw input_error("module fixture needs \"ambient\" and \"generators\" keys");
    OmegaFixture f;
    f.ambient = semigroup_from_json(j.at("ambient"), &f.assume_cm);
    std::vector<Vec> gens;
    for (const auto& row : j.at("generators")) gens.push_back(vec_from_json(row));
    f.module = validate_module(f.ambient, std::move(gens));
    f.kind = j.value("kind", "omega");
    f.provenance = j.value("provenance", "");
    return f;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw input_error("cannot parse " + path + ": " + e.what());
    }
    return j;
}

}  // namespace ngtrace
