// Batch front door: parse polytope/semigroup/fixture files, run the analyses,
// emit deterministic JSON or text reports.
#include <CLI11.hpp>
#include <iostream>

#include "ngtrace/ehrhart.hpp"
#include "ngtrace/json_io.hpp"

using namespace ngtrace;

namespace {

struct CommonOpts {
    std::string input_path;
    std::string omega_path;
    std::string format = "json";
    long max_degree = 400;
    long power_bound = 32;
    long depth = 0;  // 0 = automatic: 2(|a| + dim + 1)
    bool assume_cm = true;
    bool with_thresholds = true;
};

struct Loaded {
    bool is_polytope = false;
    std::optional<LatticePolytope> P;
    SemigroupPtr S;
    MonomialModule omega;
    std::string omega_source;  // "interior-points" or "fixture"
    bool assume_cm = true;
};

long auto_depth(const MonomialModule& omega, long requested) {
    if (requested > 0) return requested;
    long a = std::abs(to_long(omega.indeg(), "indeg"));
    return 2 * (a + omega.ambient().rank() + 1);
}

Loaded load(const CommonOpts& opt, const ScanLimits& lim) {
    Loaded out;
    json j = load_json_file(opt.input_path);
    if (j.contains("vertices")) {
        out.is_polytope = true;
        if (!opt.omega_path.empty())
            throw input_error("omega fixtures apply to semigroup inputs only; "
                              "polytope canonical modules are always computed");
        out.P = polytope_from_json(j);
        out.S = cone_semigroup(*out.P, lim);
        out.omega = canonical_module(out.S, lim);
        out.omega_source = "interior-points";
        out.assume_cm = opt.assume_cm;
        return out;
    }
    if (!j.contains("generators"))
        throw input_error("input must be a polytope (vertices) or semigroup (generators) file");
    bool file_cm = true;
    out.S = semigroup_from_json(j, &file_cm);
    out.assume_cm = opt.assume_cm && file_cm;
    if (!opt.omega_path.empty()) {
        auto f = fixture_from_json(load_json_file(opt.omega_path));
        if (f.ambient->generators() != out.S->generators() ||
            f.ambient->grading().weights != out.S->grading().weights ||
            f.ambient->grading().divisor != out.S->grading().divisor)
            throw input_error("fixture ambient semigroup differs from the input semigroup");
        out.omega = validate_module(out.S, f.module.generators());
        long depth = auto_depth(out.omega, opt.depth);
        if (!duality_validate(out.omega, depth, lim))
            throw input_error("omega fixture rejected: Hilbert-series duality fails at depth " +
                              std::to_string(depth));
        out.omega_source = "fixture";
        return out;
    }
    if (!is_normal(*out.S, lim))
        throw input_error("semigroup is not normal: provide the canonical module as a "
                          "fixture via --omega");
    AffineSemigroup::Options o;
    o.assume_minimal = true;
    o.normal = true;
    out.S = std::make_shared<AffineSemigroup>(out.S->generators(), out.S->grading(), o);
    out.omega = canonical_module(out.S, lim);
    out.omega_source = "interior-points";
    return out;
}

const char* tri_str(TriBool t) {
    switch (t) {
        case TriBool::yes: return "true";
        case TriBool::no: return "false";
        default: return "unknown";
    }
}

json limits_json(const CommonOpts& opt, const Loaded& in) {
    json l;
    l["max_degree"] = opt.max_degree;
    l["power_bound"] = opt.power_bound;
    l["depth"] = opt.depth;
    l["assume_cm"] = in.assume_cm;
    return l;
}

json report_json(const PropertyReport& r) {
    json p;
    p["gorenstein"] = r.gorenstein;
    p["nearly_gorenstein"] = r.nearly_gorenstein.verdict;
    if (!r.nearly_gorenstein.verdict)
        p["nearly_gorenstein_missing"] = vecs_to_json(r.nearly_gorenstein.missing);
    p["natural"] = r.natural.verdict;
    if (!r.natural.verdict) p["natural_missing"] = vecs_to_json(r.natural.missing);
    p["punctured_gorenstein"] = tri_str(r.punctured.verdict);
    if (!r.punctured.impossible.empty())
        p["punctured_missing_rays"] = vecs_to_json(r.punctured.impossible);
    if (!r.punctured.unresolved.empty())
        p["punctured_unresolved"] = vecs_to_json(r.punctured.unresolved);
    p["minimal_multiplicity"] = r.minimal_multiplicity;
    p["level"] = r.level;
    p["h_top_is_one"] = r.h_top_is_one;
    return p;
}

json hilbert_json(const HilbertData& h) {
    json out;
    out["dim"] = h.dim;
    json hv = json::array();
    for (const auto& x : h.h) hv.push_back((long long)x.get_si());
    out["h_vector"] = hv;
    out["socle_degree"] = h.socle_degree;
    out["a_invariant"] = (long long)h.a_invariant.get_si();
    out["multiplicity"] = (long long)h.multiplicity.get_si();
    out["embdim"] = (long long)h.embdim;
    out["minimal_multiplicity"] = h.minimal_multiplicity;
    return out;
}

json thresholds_json(const Thresholds& t) {
    json out;
    if (t.standard_threshold)
        out["standard_threshold"] = (long long)t.standard_threshold->get_si();
    out["k_R"] = (long long)t.k_R.get_si();
    out["k_strict"] = (long long)t.k_strict.get_si();
    out["b"] = (long long)t.used.b.get_si();
    out["literal_rt_semigroup"] = (long long)t.literal_rt_semigroup.get_si();
    out["notes"] = t.notes;
    return out;
}

void print_text(const json& j, std::ostream& os, const std::string& prefix = "") {
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
        if (it->is_object())
            print_text(*it, os, key);
        else
            os << key << ": " << it->dump() << "\n";
    }
}

void emit(const json& j, const std::string& format) {
    if (format == "json")
        std::cout << j.dump(1) << "\n";
    else
        print_text(j, std::cout);
}

int run_analyze(const CommonOpts& opt) {
    ScanLimits lim{opt.max_degree, 0};
    Loaded in = load(opt, lim);
    auto rep = property_report(in.omega, in.assume_cm, opt.power_bound, lim);
    auto inv = inverse_module(in.omega, lim);

    json out;
    out["schema"] = 1;
    out["input"] = opt.input_path;
    out["limits"] = limits_json(opt, in);
    json ring;
    ring["ambient_dim"] = in.S->ambient_dim();
    ring["generators"] = vecs_to_json(in.S->generators());
    ring["semi_standard"] = in.S->semi_standard();
    ring["normal"] = in.S->normal() == true;
    ring["extremal_generators"] = vecs_to_json(in.S->extremal_generators());
    out["ring"] = ring;
    out["hilbert"] = hilbert_json(rep.hilbert);
    json om;
    om["source"] = in.omega_source;
    om["generators"] = vecs_to_json(in.omega.generators());
    om["indeg"] = (long long)in.omega.indeg().get_si();
    om["rt"] = (long long)in.omega.rt().get_si();
    out["omega"] = om;
    out["omega_inverse"] = vecs_to_json(inv.generators());
    out["properties"] = report_json(rep);

    if (in.is_polytope) {
        const auto& P = *in.P;
        json pj;
        pj["vertices"] = vecs_to_json(P.vertices());
        pj["codegree"] = (long long)codegree(P).get_si();
        auto T = floor_remainder_bracket(P);
        pj["floor"] = T.floor ? vecs_to_json(T.floor->vertices()) : json::array();
        pj["remainder"] = T.remainder ? vecs_to_json(T.remainder->vertices()) : json::array();
        pj["bracket"] = vecs_to_json(T.bracket.vertices());
        auto dec = decomposition_check(P);
        pj["decomposition_holds"] = dec.holds;
        pj["idp"] = is_idp(P);
        // the anti-cone route must agree with the fractional-ideal inverse
        auto anti = anticanonical_module(in.S, in.omega, lim);
        if (anti.generators() != inv.generators())
            throw consistency_error("anticanonical module disagrees with the inverse module");
        pj["anticanonical_cross_check"] = true;
        bool is01 = true;
        for (const auto& v : P.vertices())
            for (const auto& x : v)
                if (x != 0 && x != 1) is01 = false;
        if (is01) {
            auto F = product_factorization(P);
            json fj;
            fj["blocks"] = F.blocks;
            json facs = json::array();
            for (const auto& f : F.factors) facs.push_back(vecs_to_json(f.vertices()));
            fj["factors"] = facs;
            pj["factorization"] = fj;
        }
        out["polytope"] = pj;
    }

    if (opt.with_thresholds && in.S->semi_standard()) {
        try {
            out["thresholds"] = thresholds_json(ng_thresholds(in.omega, {}, lim));
        } catch (const error& e) {
            out["thresholds"] = json{{"error", e.what()}};
        }
    }
    emit(out, opt.format);
    return 0;
}

int run_check(const CommonOpts& opt, const std::string& property) {
    ScanLimits lim{opt.max_degree, 0};
    if (property == "decompose" || property == "idp") {
        json j = load_json_file(opt.input_path);
        if (!j.contains("vertices"))
            throw input_error("property '" + property + "' applies to polytope inputs");
        auto P = polytope_from_json(j);
        bool holds = property == "decompose" ? decomposition_check(P).holds : is_idp(P);
        std::cout << property << ": " << (holds ? "holds" : "fails") << "\n";
        return holds ? 0 : 3;
    }
    Loaded in = load(opt, lim);
    bool holds;
    std::vector<Vec> witness;
    if (property == "gorenstein") {
        holds = is_gorenstein(in.omega);
        if (!holds) witness = in.omega.generators();
    } else if (property == "ng") {
        auto r = is_nearly_gorenstein(in.omega);
        holds = r.verdict;
        witness = r.missing;
    } else if (property == "natural") {
        auto r = satisfies_natural(in.omega);
        holds = r.verdict;
        witness = r.missing;
    } else if (property == "minmult") {
        auto hd = hilbert_data(*in.S, in.assume_cm, lim);
        holds = hd.minimal_multiplicity;
    } else {
        throw input_error("unknown property: " + property);
    }
    std::cout << property << ": " << (holds ? "holds" : "fails") << "\n";
    for (const auto& w : witness) std::cout << "missing: " << to_string(w) << "\n";
    return holds ? 0 : 3;
}

int run_veronese(const CommonOpts& opt, const std::vector<long>& ks) {
    ScanLimits lim{opt.max_degree, 0};
    Loaded in = load(opt, lim);
    json out;
    out["schema"] = 1;
    out["input"] = opt.input_path;
    out["limits"] = limits_json(opt, in);
    json rows = json::array();
    for (long k : ks) {
        auto Sk = std::make_shared<AffineSemigroup>(veronese_semigroup(*in.S, Int(k), lim));
        auto wk = veronese_module(in.omega, Int(k), Sk, lim);
        json row;
        row["k"] = k;
        auto nat = satisfies_natural(wk);
        row["natural"] = nat.verdict;
        if (!nat.verdict) row["natural_missing"] = vecs_to_json(nat.missing);
        auto ng = is_nearly_gorenstein(wk);
        row["nearly_gorenstein"] = ng.verdict;
        if (!ng.verdict) row["nearly_gorenstein_missing"] = vecs_to_json(ng.missing);
        rows.push_back(row);
    }
    out["veronese"] = rows;
    try {
        out["thresholds"] = thresholds_json(ng_thresholds(in.omega, {}, lim));
    } catch (const error& e) {
        out["thresholds"] = json{{"error", e.what()}};
    }
    emit(out, opt.format);
    return 0;
}

int run_validate_omega(const std::string& omega_path, long depth, long max_degree,
                       const std::string& format) {
    ScanLimits lim{max_degree, 0};
    auto f = fixture_from_json(load_json_file(omega_path));
    long d = depth;
    if (d <= 0) {
        long a = std::abs(to_long(f.module.indeg(), "indeg"));
        d = 2 * (a + f.ambient->rank() + 1);
    }
    bool ok = duality_validate(f.module, d, lim);
    json out;
    out["schema"] = 1;
    out["fixture"] = omega_path;
    out["kind"] = f.kind;
    out["depth"] = d;
    out["valid"] = ok;
    emit(out, format);
    return ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact invariants of semi-standard graded affine semigroup rings "
                 "and Ehrhart rings: canonical modules, trace ideals, "
                 "nearly-Gorenstein and related properties"};
    app.require_subcommand(1);

    CommonOpts opt;
    std::string property;
    std::vector<long> ks{1, 2, 3};
    long vdepth = 0;

    auto add_common = [&](CLI::App* c, bool needs_input = true) {
        if (needs_input) c->add_option("--input", opt.input_path, "polytope or semigroup JSON")
                             ->required();
        c->add_option("--omega", opt.omega_path, "canonical-module fixture JSON");
        c->add_option("--format", opt.format, "json|text")->check(CLI::IsMember({"json", "text"}));
        c->add_option("--max-degree", opt.max_degree, "scan ceiling for closure searches");
        c->add_option("--power-bound", opt.power_bound, "power bound for radical searches");
        c->add_option("--depth", opt.depth, "duality validation depth (0 = automatic)");
        c->add_option("--assume-cm", opt.assume_cm, "treat the ring as Cohen-Macaulay");
    };

    auto* analyze = app.add_subcommand("analyze", "full report for one input");
    add_common(analyze);
    analyze->add_flag("!--no-thresholds", opt.with_thresholds,
                      "skip the Veronese threshold block");

    auto* check = app.add_subcommand("check", "single-property verdict");
    add_common(check);
    check->add_option("--property", property, "ng|natural|gorenstein|decompose|idp|minmult")
        ->required();

    auto* veronese = app.add_subcommand("veronese", "per-k property table");
    add_common(veronese);
    veronese->add_option("--k", ks, "Veronese indices")->delimiter(',');

    auto* validate = app.add_subcommand("validate-omega", "duality-check a module fixture");
    validate->add_option("--omega", opt.omega_path, "fixture JSON")->required();
    validate->add_option("--depth", vdepth, "validation depth (0 = automatic)");
    validate->add_option("--max-degree", opt.max_degree, "scan ceiling");
    validate->add_option("--format", opt.format, "json|text")
        ->check(CLI::IsMember({"json", "text"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(analyze)) return run_analyze(opt);
        if (app.got_subcommand(check)) return run_check(opt, property);
        if (app.got_subcommand(veronese)) return run_veronese(opt, ks);
        if (app.got_subcommand(validate))
            return run_validate_omega(opt.omega_path, vdepth, opt.max_degree, opt.format);
    } catch (const consistency_error& e) {
        std::cerr << "consistency violation: " << e.what() << "\n";
        return 2;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
