#include "ngtrace/trace.hpp"

#include <algorithm>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ngtrace {

MonomialModule module_from_minimal(SemigroupPtr ambient, std::vector<Vec> gens) {
    if (gens.empty()) throw consistency_error("monomial module with no generators");
    MonomialModule M;
    M.ambient_ = std::move(ambient);
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    M.gens_ = std::move(gens);
    bool first = true;
    for (const auto& g : M.gens_) {
        Int d = M.ambient_->degree_of(g);
        if (first) {
            M.indeg_ = d;
            M.rt_ = d;
            first = false;
        } else {
            if (d < M.indeg_) M.indeg_ = d;
            if (d > M.rt_) M.rt_ = d;
        }
    }
    return M;
}

MonomialModule validate_module(SemigroupPtr ambient, std::vector<Vec> raw_gens) {
    if (raw_gens.empty()) throw input_error("validate_module: no generators");
    for (const auto& g : raw_gens) {
        if (g.size() != ambient->ambient_dim())
            throw input_error("validate_module: dimension mismatch");
        if (!ambient->group().contains(g))
            throw input_error("validate_module: generator outside the group lattice ZS: " +
                              to_string(g));
        ambient->degree_of(g);  // degree must be integral in the grading
    }
    std::sort(raw_gens.begin(), raw_gens.end());
    raw_gens.erase(std::unique(raw_gens.begin(), raw_gens.end()), raw_gens.end());
    // irredundant subset: a generator reducible by a lower-degree one is dropped
    std::stable_sort(raw_gens.begin(), raw_gens.end(), [&](const Vec& a, const Vec& b) {
        return ambient->degree_of(a) < ambient->degree_of(b);
    });
    std::vector<Vec> kept;
    for (const auto& g : raw_gens) {
        bool red = false;
        for (const auto& k : kept)
            if (ambient->contains(vsub(g, k))) {
                red = true;
                break;
            }
        if (!red) kept.push_back(g);
    }
    if (kept.empty()) throw consistency_error("validate_module: reduction emptied the module");
    return module_from_minimal(std::move(ambient), std::move(kept));
}

std::vector<Vec> inverse_slice(const MonomialModule& J, const Int& k) {
    const AffineSemigroup& S = J.ambient();
    const Vec& g0 = J.generators()[0];
    Int d0 = S.degree_of(g0);
    std::vector<Vec> out;
    for (const auto& s : S.degree_slice(to_long(k + d0, "degree"))) {
        Vec a = vsub(s, g0);
        bool ok = true;
        for (const auto& g : J.generators())
            if (!S.contains(vadd(a, g))) {
                ok = false;
                break;
            }
        if (ok) out.push_back(std::move(a));
    }
    return out;  // slice order is lex, subtraction preserves it
}

MonomialModule inverse_module(const MonomialModule& J, const ScanLimits& lim) {
    const AffineSemigroup& S = J.ambient();
    Int lo = (J.generators().size() == 1) ? Int(-J.rt()) : Int(1 - J.rt());
    std::vector<Vec> gens;
    long window = lim.window > 0 ? lim.window : std::max<long>(1, S.max_generator_degree());
    long quiet = 0;
    long scanned = 0;
    for (Int k = lo;; ++k, ++scanned) {
        if (scanned > lim.max_degree)
            throw limit_error("inverse_module: no closure within the degree limit");
        bool fresh = false;
        for (const auto& a : inverse_slice(J, k)) {
            bool red = false;
            for (const auto& g : gens)
                if (S.contains(vsub(a, g))) {
                    red = true;
                    break;
                }
            if (!red) {
                gens.push_back(a);
                fresh = true;
            }
        }
        quiet = fresh ? 0 : quiet + 1;
        if (!gens.empty() && quiet >= window) break;
    }
    return module_from_minimal(J.ambient_ptr(), std::move(gens));
}

bool trace_membership(const Vec& m, const MonomialModule& J) {
    const AffineSemigroup& S = J.ambient();
    if (!S.group().contains(m))
        throw input_error("trace_membership: vector outside the group lattice ZS");
    // m lies in J . J^{-1} iff m - g is in J^{-1} for some generator g,
    // because J^{-1} is itself stable under adding semigroup elements
    for (const auto& g : J.generators()) {
        Vec a = vsub(m, g);
        bool ok = true;
        for (const auto& g2 : J.generators())
            if (!S.contains(vadd(a, g2))) {
                ok = false;
                break;
            }
        if (ok) return true;
    }
    return false;
}

bool is_gorenstein(const MonomialModule& omega) {
    bool principal = omega.generators().size() == 1;
    bool unit_in_trace = trace_membership(Vec(omega.ambient().ambient_dim(), 0), omega);
    if (principal != unit_in_trace)
        throw consistency_error("is_gorenstein: principal test disagrees with 1 in tr(omega)");
    return principal;
}

namespace {

CheckResult trace_covers(const MonomialModule& omega, const std::vector<Vec>& targets) {
    std::vector<char> in(targets.size(), 0);
#ifdef _OPENMP
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < (long)targets.size(); ++i) {
        try {
            in[i] = trace_membership(targets[i], omega) ? 1 : 0;
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
#else
    for (long i = 0; i < (long)targets.size(); ++i)
        in[i] = trace_membership(targets[i], omega) ? 1 : 0;
#endif
    CheckResult r{true, {}};
    for (size_t i = 0; i < targets.size(); ++i)
        if (!in[i]) {
            r.verdict = false;
            r.missing.push_back(targets[i]);
        }
    return r;
}

}  // namespace

CheckResult is_nearly_gorenstein(const MonomialModule& omega) {
    return trace_covers(omega, omega.ambient().generators());
}

CheckResult satisfies_natural(const MonomialModule& omega) {
    if (!omega.ambient().semi_standard())
        throw input_error("satisfies_natural: ambient semigroup is not semi-standard");
    return trace_covers(omega, omega.ambient().extremal_generators());
}

namespace {

// membership in the numerical semigroup generated by `values` (all >= 0)
bool numerical_contains(const std::vector<Int>& values, const Int& t) {
    if (t < 0) return false;
    if (t == 0) return true;
    long tt = to_long(t, "numerical semigroup target");
    std::vector<char> reach(tt + 1, 0);
    reach[0] = 1;
    for (long v = 1; v <= tt; ++v)
        for (const auto& val : values) {
            if (val == 0 || val > v) continue;
            long vv = to_long(val, "value");
            if (reach[v - vv]) {
                reach[v] = 1;
                break;
            }
        }
    return reach[tt];
}

}  // namespace

PuncturedResult punctured_gorenstein(const MonomialModule& omega, long power_bound) {
    const AffineSemigroup& S = omega.ambient();
    PuncturedResult out;
    out.power_bound = power_bound;

    // facet values of the semigroup generators, per cone facet
    std::vector<std::vector<Int>> facet_gen_values(S.cone_normals().size());
    for (const auto& g : S.generators()) {
        auto vals = S.facet_values(g);
        for (size_t f = 0; f < vals.size(); ++f) facet_gen_values[f].push_back(vals[f]);
    }

    for (const auto& g : S.generators()) {
        long found = 0;
        for (long j = 1; j <= power_bound; ++j) {
            if (trace_membership(vscale(Int(j), g), omega)) {
                found = j;
                break;
            }
        }
        if (found) {
            out.witness_powers[g] = found;
            continue;
        }
        // impossibility: on some facet vanishing on g, no generator of omega
        // can be completed to a trace element with facet value zero
        auto gvals = S.facet_values(g);
        std::vector<std::vector<Int>> wvals;
        for (const auto& w : omega.generators()) wvals.push_back(S.facet_values(w));
        bool impossible = false;
        for (size_t f = 0; f < gvals.size() && !impossible; ++f) {
            if (gvals[f] != 0) continue;
            bool some_w_feasible = false;
            for (size_t wi = 0; wi < wvals.size() && !some_w_feasible; ++wi) {
                bool all_ok = true;
                for (size_t gi = 0; gi < wvals.size(); ++gi) {
                    // an inverse element a with w + a on the ray needs
                    // n(a) = -n(w) and n(a) + n(g0) in the value semigroup
                    if (!numerical_contains(facet_gen_values[f],
                                            wvals[gi][f] - wvals[wi][f])) {
                        all_ok = false;
                        break;
                    }
                }
                some_w_feasible = all_ok;
            }
            impossible = !some_w_feasible;
        }
        if (impossible)
            out.impossible.push_back(g);
        else
            out.unresolved.push_back(g);
    }
    if (!out.impossible.empty())
        out.verdict = TriBool::no;
    else if (!out.unresolved.empty())
        out.verdict = TriBool::unknown;
    else
        out.verdict = TriBool::yes;
    return out;
}

ModuleStats module_stats(const MonomialModule& omega) {
    return {-omega.indeg(), omega.rt()};
}

MonomialModule veronese_module(const MonomialModule& J, const Int& k, SemigroupPtr Sk,
                               const ScanLimits& lim) {
    if (k < 1) throw input_error("veronese_module: k must be positive");
    const AffineSemigroup& S = J.ambient();
    if (Sk->ambient_dim() != S.ambient_dim())
        throw input_error("veronese_module: ambient mismatch");
    if (k == 1) return module_from_minimal(Sk, J.generators());

    std::vector<Vec> found;
    Int t0 = ceil_div(J.indeg(), k);
    long kk = to_long(k, "veronese index");
    long window = lim.window > 0
                      ? lim.window
                      : std::max<long>(Sk->max_generator_degree(),
                                       (S.max_generator_degree() + kk - 1) / kk + 1);
    long quiet = 0;
    long scanned = 0;
    for (Int t = t0;; ++t, ++scanned) {
        if (scanned > lim.max_degree)
            throw limit_error("veronese_module: no closure within the degree limit");
        // module slice of the original J at degree k*t
        std::set<Vec> pts;
        for (const auto& g : J.generators()) {
            Int rest = k * t - S.degree_of(g);
            if (rest < 0) continue;
            for (const auto& s : S.degree_slice(to_long(rest, "degree")))
                pts.insert(vadd(g, s));
        }
        bool fresh = false;
        for (const auto& p : pts) {
            bool red = false;
            for (const auto& f : found)
                if (Sk->contains(vsub(p, f))) {
                    red = true;
                    break;
                }
            if (!red) {
                found.push_back(p);
                fresh = true;
            }
        }
        quiet = fresh ? 0 : quiet + 1;
        if (!found.empty() && quiet >= window) break;
    }
    return module_from_minimal(std::move(Sk), std::move(found));
}

Int socle_of_artinian_quotient(const AffineSemigroup& S, const std::vector<Vec>& ideal_gens,
                               long power_bound, const ScanLimits& lim) {
    if (ideal_gens.empty()) throw input_error("socle: empty ideal");
    for (const auto& i : ideal_gens) {
        if (!S.contains(i)) throw input_error("socle: ideal generator outside the semigroup");
        if (S.degree_of(i) < 1) throw input_error("socle: ideal is not proper");
    }
    auto covered = [&](const Vec& p) {
        for (const auto& i : ideal_gens)
            if (S.contains(vsub(p, i))) return true;
        return false;
    };
    // m-primary check: every extremal monomial has a power inside the ideal
    for (const auto& e : S.extremal_generators()) {
        bool ok = false;
        for (long j = 1; j <= power_bound && !ok; ++j) ok = covered(vscale(Int(j), e));
        if (!ok)
            throw input_error("socle: ideal is not m-primary within the power bound (ray " +
                              to_string(e) + ")");
    }
    Int socle = 0;
    long dead = 0;
    long window = std::max<long>(1, S.max_generator_degree());
    for (long t = 1;; ++t) {
        if (t > lim.max_degree)
            throw limit_error("socle: scan exceeded the degree limit");
        bool alive = false;
        for (const auto& p : S.degree_slice(t))
            if (!covered(p)) {
                alive = true;
                break;
            }
        if (alive) {
            socle = t;
            dead = 0;
        } else {
            // once max-generator-degree consecutive slices die, everything above
            // is a translate of a dead slice element and dead as well
            if (++dead >= window) break;
        }
    }
    return socle;
}

namespace {

std::vector<Vec> degree_one_trace_part(const MonomialModule& omega,
                                       const AffineSemigroup& S) {
    std::vector<Vec> out;
    for (const auto& m : S.degree_slice(1))
        if (trace_membership(m, omega)) out.push_back(m);
    return out;
}

Int max3(const Int& a, const Int& b, const Int& c) {
    return std::max(a, std::max(b, c));
}

}  // namespace

Thresholds ng_thresholds(const MonomialModule& omega,
                         const std::optional<ThresholdConstants>& constants,
                         const ScanLimits& lim) {
    const AffineSemigroup& S = omega.ambient();
    if (!S.semi_standard()) throw input_error("ng_thresholds: not semi-standard");
    Thresholds out;

    auto mod1 = module_generators_over_degree_one(S, lim);
    out.literal_rt_semigroup = mod1.rt;

    bool standard = true;
    for (const auto& g : S.generators())
        if (S.degree_of(g) != 1) standard = false;
    if (standard) {
        auto tr1 = degree_one_trace_part(omega, S);
        if (tr1.empty()) {
            out.notes.push_back("degree-one trace part is empty; no standard threshold");
        } else {
            try {
                Int s = socle_of_artinian_quotient(S, tr1, 32, lim);
                out.standard_threshold = s + 1;
            } catch (const input_error& e) {
                out.notes.push_back(std::string("standard threshold unavailable: ") + e.what());
            }
        }
    }

    ThresholdConstants c;
    if (constants) {
        c = *constants;
        if (c.b != out.literal_rt_semigroup)
            out.notes.push_back("supplied semigroup rt " + c.b.get_str() +
                                " differs from the literal computation " +
                                out.literal_rt_semigroup.get_str());
    } else {
        c.b = std::max(Int(1), Int(out.literal_rt_semigroup));
        c.a_abs = abs(omega.indeg());
        c.rt_abs = std::max(abs(omega.indeg()), abs(omega.rt()));
        auto Sb = std::make_shared<AffineSemigroup>(veronese_semigroup(S, c.b, lim));
        auto wb = veronese_module(omega, c.b, Sb, lim);
        auto tr1b = degree_one_trace_part(wb, *Sb);
        if (tr1b.empty())
            throw input_error("ng_thresholds: degree-one trace part of the Veronese is empty "
                              "(ring does not satisfy the extremal-ray condition)");
        c.socle = socle_of_artinian_quotient(*Sb, tr1b, 32, lim);
    }
    out.used = c;
    out.k_R = c.b * max3(c.a_abs, c.rt_abs, c.socle + 1);
    out.k_strict = c.b * ceil_div(max3(c.a_abs, c.rt_abs, (c.socle + 1) * c.b), c.b);
    if (out.k_R != out.k_strict)
        out.notes.push_back("headline threshold " + out.k_R.get_str() +
                            " follows the worked-example arithmetic; the strict recipe gives " +
                            out.k_strict.get_str());
    return out;
}

bool duality_validate(const MonomialModule& omega, long depth, const ScanLimits& lim) {
    const AffineSemigroup& S = omega.ambient();
    HilbertData hd = hilbert_data(S, true, lim);
    const long dim = hd.dim;
    const long s = hd.socle_degree;
    const long shift = dim - s;  // indeg of omega under duality

    auto model = [&](long i) {
        Int total = 0;
        for (long j = 0; j <= s; ++j) {
            long m = i - shift - j;
            if (m < 0) continue;
            Int binom;
            mpz_bin_uiui(binom.get_mpz_t(), m + dim - 1, dim - 1);
            total += hd.h[s - j] * binom;
        }
        return total;
    };

    long lo = std::min(to_long(omega.indeg(), "indeg"), shift);
    for (long i = lo; i <= depth; ++i) {
        std::set<Vec> pts;
        for (const auto& g : omega.generators()) {
            Int rest = Int(i) - S.degree_of(g);
            if (rest < 0) continue;
            for (const auto& p : S.degree_slice(to_long(rest, "degree")))
                pts.insert(vadd(g, p));
        }
        if (Int(pts.size()) != model(i)) return false;
    }
    return true;
}

PropertyReport property_report(const MonomialModule& omega, bool assume_cm, long power_bound,
                               const ScanLimits& lim) {
    PropertyReport r{};
    r.assume_cm = assume_cm;
    r.hilbert = hilbert_data(omega.ambient(), assume_cm, lim);
    r.gorenstein = is_gorenstein(omega);
    r.nearly_gorenstein = is_nearly_gorenstein(omega);
    r.natural = satisfies_natural(omega);
    if (r.natural.verdict) {
        r.punctured.verdict = TriBool::yes;  // property implies punctured-spectrum Gorenstein
        r.punctured.power_bound = power_bound;
    } else {
        r.punctured = punctured_gorenstein(omega, power_bound);
    }
    r.minimal_multiplicity = r.hilbert.minimal_multiplicity;
    r.level = omega.indeg() == omega.rt();
    r.h_top_is_one = r.hilbert.h.back() == 1;

    if (r.gorenstein && !r.nearly_gorenstein.verdict)
        throw consistency_error("report: Gorenstein but not nearly Gorenstein");
    if (r.nearly_gorenstein.verdict && !r.natural.verdict)
        throw consistency_error("report: nearly Gorenstein ring fails the extremal condition");
    if (r.natural.verdict && r.punctured.verdict == TriBool::no)
        throw consistency_error("report: extremal condition holds but punctured spectrum fails");
    if (assume_cm && r.natural.verdict && (r.gorenstein != r.h_top_is_one))
        throw consistency_error("report: h-vector top coefficient contradicts Gorensteinness");
    if (assume_cm && r.minimal_multiplicity &&
        r.natural.verdict != r.nearly_gorenstein.verdict)
        throw consistency_error("report: minimal multiplicity but the two properties differ");
    return r;
}

}  // namespace ngtrace
