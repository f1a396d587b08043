#include "ngtrace/ehrhart.hpp"

#include <algorithm>

namespace ngtrace {

namespace {

// shared scan: minimal module generators of the lattice points of a shifted
// cone (shift 0: the saturation; +1: interior; -1: anti cone), reduced over S
std::vector<Vec> minimal_cone_module(const AffineSemigroup& S, int shift, long start_level,
                                     long min_levels, const ScanLimits& lim) {
    std::vector<Vec> gens;
    std::vector<long> gen_deg;
    auto reducible = [&](const Vec& p) {
        for (size_t i = 0; i < gens.size(); ++i)
            if (S.contains(vsub(p, gens[i]))) return true;
        return false;
    };
    long window = lim.window > 0 ? lim.window : std::max<long>(1, S.max_generator_degree());
    long quiet = 0;
    long scanned = 0;
    for (long k = start_level;; ++k, ++scanned) {
        if (scanned > lim.max_degree)
            throw limit_error("cone module scan: no closure within the degree limit");
        bool fresh = false;
        for (const auto& p : S.cone_slice(Int(k), shift)) {
            if (!reducible(p)) {
                gens.push_back(p);
                gen_deg.push_back(k);
                fresh = true;
            }
        }
        quiet = fresh ? 0 : quiet + 1;
        if (!gens.empty() && quiet >= window && scanned >= min_levels) break;
    }
    return gens;
}

}  // namespace

SemigroupPtr cone_semigroup(const LatticePolytope& P, const ScanLimits& lim) {
    if (!P.full_dimensional()) throw input_error("cone_semigroup: polytope not full-dimensional");
    const size_t d = P.ambient_dim();

    auto in_cone = [&](const Vec& xk) {
        const Int& k = xk[d];
        if (k < 0) return false;
        for (const auto& f : P.facets()) {
            Int s = k * f.height;
            for (size_t j = 0; j < d; ++j) s += f.normal[j] * xk[j];
            if (s < 0) return false;
        }
        return true;
    };

    std::vector<Vec> basis;
    std::vector<long> basis_deg;
    long window = lim.window > 0 ? lim.window : 1;
    long quiet = 0;
    for (long k = 1;; ++k) {
        if (k > lim.max_degree)
            throw limit_error("cone_semigroup: Hilbert basis not closed by degree " +
                              std::to_string(lim.max_degree) + " (" +
                              std::to_string(basis.size()) + " partial generators)");
        bool fresh = false;
        for (const auto& x : dilation_points(P, Int(k), Region::closed)) {
            Vec p = x;
            p.push_back(Int(k));
            bool red = false;
            for (size_t i = 0; i < basis.size() && !red; ++i) {
                if (basis_deg[i] >= k) break;
                red = in_cone(vsub(p, basis[i]));
            }
            if (!red) {
                basis.push_back(std::move(p));
                basis_deg.push_back(k);
                fresh = true;
            }
        }
        if (fresh) {
            quiet = 0;
            window = lim.window > 0 ? lim.window : std::max<long>(1, basis_deg.back());
        } else {
            ++quiet;
        }
        if (k > (long)d && quiet >= window) break;
    }

    AffineSemigroup::Options opt;
    opt.assume_minimal = true;
    opt.normal = true;
    auto S = std::make_shared<AffineSemigroup>(std::move(basis),
                                               Grading::last_coordinate(d + 1), opt);
    if (!S->semi_standard())
        throw consistency_error("cone_semigroup: Ehrhart semigroup not semi-standard");
    return S;
}

MonomialModule canonical_module(const SemigroupPtr& S, const ScanLimits& lim) {
    if (S->normal() != true)
        throw input_error("canonical_module: ambient semigroup is not known to be normal");
    auto gens = minimal_cone_module(*S, +1, 1, S->rank() + 1, lim);
    return module_from_minimal(S, std::move(gens));
}

MonomialModule anticanonical_module(const SemigroupPtr& S, const MonomialModule& omega,
                                    const ScanLimits& lim) {
    if (S->normal() != true)
        throw input_error("anticanonical_module: ambient semigroup is not known to be normal");
    // the principal (Gorenstein) case puts the generator at level -rt(omega),
    // strictly below 1 - codegree
    long start = -to_long(omega.rt(), "codegree");
    auto gens = minimal_cone_module(*S, -1, start, S->rank() + 1, lim);
    return module_from_minimal(S, std::move(gens));
}

MonomialModule canonical_module(const LatticePolytope& P, const ScanLimits& lim) {
    return canonical_module(cone_semigroup(P, lim), lim);
}

MonomialModule anticanonical_module(const LatticePolytope& P, const ScanLimits& lim) {
    auto S = cone_semigroup(P, lim);
    return anticanonical_module(S, canonical_module(S, lim), lim);
}

bool is_normal(const AffineSemigroup& S, const ScanLimits& lim) {
    // Hilbert basis of the saturation cone(S) n ZS, then containment in S
    struct Sat {
        const AffineSemigroup& S;
        bool contains(const Vec& v) const {
            Int w = dot(S.grading().weights, v);
            if (w < 0 || (w == 0 && !is_zero(v))) return false;
            auto c = S.group().coordinates(v);
            if (!c) return false;
            for (const auto& n : S.cone_normals())
                if (dot(n, *c) < 0) return false;
            return true;
        }
    } sat{S};

    std::vector<Vec> basis;
    std::vector<long> basis_deg;
    long window = lim.window > 0 ? lim.window : std::max<long>(1, S.max_generator_degree());
    long quiet = 0;
    for (long k = 1;; ++k) {
        if (k > lim.max_degree)
            throw limit_error("is_normal: saturation basis not closed within the degree limit");
        bool fresh = false;
        for (const auto& p : S.cone_slice(Int(k), 0)) {
            bool red = false;
            for (size_t i = 0; i < basis.size() && !red; ++i) {
                if (basis_deg[i] >= k) break;
                red = sat.contains(vsub(p, basis[i]));
            }
            if (!red) {
                basis.push_back(p);
                basis_deg.push_back(k);
                fresh = true;
            }
        }
        quiet = fresh ? 0 : quiet + 1;
        if (!basis.empty() && quiet >= window) break;
    }
    for (const auto& b : basis)
        if (!S.contains(b)) return false;
    return true;
}

}  // namespace ngtrace
