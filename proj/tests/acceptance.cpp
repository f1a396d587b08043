// Acceptance suite: runs the pinned end-to-end checks and prints one
// PASS/FAIL line per criterion.  --slow additionally runs the long Veronese
// threshold verification.
#include <chrono>
#include <cstring>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "ngtrace/ehrhart.hpp"
#include "ngtrace/json_io.hpp"

using namespace ngtrace;

namespace {

int failures = 0;

struct check_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define REQUIRE_TRUE(cond)                                                        \
    do {                                                                          \
        if (!(cond)) throw check_failure("requirement failed: " #cond);           \
    } while (0)

void criterion(int number, const std::string& what, const std::function<void()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    try {
        body();
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
        std::cout << "[PASS] criterion " << number << ": " << what << " (" << ms << " ms)\n";
    } catch (const std::exception& e) {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
        ++failures;
        std::cout << "[FAIL] criterion " << number << ": " << what << " (" << ms
                  << " ms): " << e.what() << "\n";
    }
}

std::string fixture(const std::string& name) {
    return std::string(NGTRACE_FIXTURE_DIR) + "/" + name;
}

LatticePolytope segment(long a, long b) {
    return LatticePolytope::facet_presentation({{Int(a)}, {Int(b)}});
}

// records shared across the sweep criteria
struct Instance {
    std::string label;
    LatticePolytope P;
    SemigroupPtr S;
    MonomialModule omega;
    PropertyReport report;
    bool idp = false;
    bool decomposes = false;
};

std::vector<Instance> sweep_instances;   // criterion 5
std::vector<Instance> corpus_instances;  // criterion 8
std::vector<const Instance*> all_instances() {
    std::vector<const Instance*> v;
    for (const auto& i : sweep_instances) v.push_back(&i);
    for (const auto& i : corpus_instances) v.push_back(&i);
    return v;
}

LatticePolytope product_of(const std::vector<LatticePolytope>& factors) {
    std::vector<Vec> vs{{}};
    size_t dim = 0;
    for (const auto& f : factors) dim += f.ambient_dim();
    for (const auto& f : factors) {
        std::vector<Vec> next;
        for (const auto& base : vs)
            for (const auto& v : f.vertices()) {
                Vec w = base;
                w.insert(w.end(), v.begin(), v.end());
                next.push_back(std::move(w));
            }
        vs = std::move(next);
    }
    return LatticePolytope::facet_presentation(vs);
}

}  // namespace

int main(int argc, char** argv) {
    bool slow = false;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--slow") == 0) slow = true;

    criterion(1, "rational normal curve pipeline", [] {
        auto P = segment(0, 3);
        auto S = cone_semigroup(P);
        auto w = canonical_module(S);
        auto winv = anticanonical_module(S, w);
        auto hd = hilbert_data(*S, true);
        REQUIRE_TRUE(hd.h == (std::vector<Int>{1, 2}));
        REQUIRE_TRUE(codegree(P) == 1);
        REQUIRE_TRUE(w.generators() == (std::vector<Vec>{{1, 1}, {2, 1}}));
        REQUIRE_TRUE(winv.generators() == (std::vector<Vec>{{-1, 0}, {0, 0}, {1, 0}}));
        auto rep = property_report(w, true);
        REQUIRE_TRUE(!rep.gorenstein);
        REQUIRE_TRUE(rep.nearly_gorenstein.verdict);
        REQUIRE_TRUE(rep.natural.verdict);
        REQUIRE_TRUE(rep.minimal_multiplicity);
        auto dec = decomposition_check(P);
        REQUIRE_TRUE(dec.holds);
        REQUIRE_TRUE(dec.bracket.vertices() == (std::vector<Vec>{{1}, {2}}));
        REQUIRE_TRUE(dec.remainder->vertices() == (std::vector<Vec>{{-1}, {1}}));
    });

    criterion(2, "standard graded ring failing the extremal condition at every veronese", [] {
        auto f = fixture_from_json(load_json_file(fixture("omega_A.json")));
        REQUIRE_TRUE(duality_validate(f.module, 20));
        auto hd = hilbert_data(*f.ambient, true);
        REQUIRE_TRUE(hd.dim == 3);
        REQUIRE_TRUE(hd.a_invariant == 0);
        REQUIRE_TRUE(hd.h.back() == 1);
        // the trace ideal, two-sided, against its published generators
        std::vector<Vec> tr_gens{{0, 0, 1}, {2, 2, 3}, {4, 2, 3}, {6, 6, 8}, {8, 6, 8}};
        for (const auto& m : tr_gens) REQUIRE_TRUE(trace_membership(m, f.module));
        for (long d = 1; d <= 3; ++d)
            for (const auto& m : f.ambient->degree_slice(d)) {
                bool in_published = false;
                for (const auto& t : tr_gens)
                    if (f.ambient->contains(vsub(m, t))) {
                        in_published = true;
                        break;
                    }
                REQUIRE_TRUE(trace_membership(m, f.module) == in_published);
            }
        for (Int k(1); k <= 3; ++k) {
            auto Sk = std::make_shared<AffineSemigroup>(veronese_semigroup(*f.ambient, k));
            auto wk = veronese_module(f.module, k, Sk);
            REQUIRE_TRUE(!satisfies_natural(wk).verdict);
        }
        REQUIRE_TRUE(punctured_gorenstein(f.module).verdict == TriBool::yes);
    });

    criterion(3, "nearly gorenstein ring whose second veronese is not", [] {
        auto f = fixture_from_json(load_json_file(fixture("omega_B.json")));
        REQUIRE_TRUE(duality_validate(f.module, 20));
        REQUIRE_TRUE(is_nearly_gorenstein(f.module).verdict);
        auto S2 = std::make_shared<AffineSemigroup>(veronese_semigroup(*f.ambient, 2));
        std::vector<long> exps;
        for (const auto& g : S2->generators()) {
            REQUIRE_TRUE(S2->degree_of(g) == 1);
            exps.push_back(g[0].get_si());
        }
        REQUIRE_TRUE(exps == (std::vector<long>{0, 1, 3, 4, 6, 9, 12, 15, 18}));
        auto w2 = veronese_module(f.module, 2, S2);
        auto ng = is_nearly_gorenstein(w2);
        REQUIRE_TRUE(!ng.verdict);
        REQUIRE_TRUE(std::find(ng.missing.begin(), ng.missing.end(), Vec{1, 2}) !=
                     ng.missing.end());
        REQUIRE_TRUE(trace_membership({0, 2}, w2));
        REQUIRE_TRUE(trace_membership({2, 4}, w2));
    });

    criterion(4, "veronese threshold bookkeeping for the level example", [slow] {
        auto f = fixture_from_json(load_json_file(fixture("omega_threshold.json")));
        REQUIRE_TRUE(duality_validate(f.module, 44));
        auto st = module_stats(f.module);
        REQUIRE_TRUE(abs(st.a_invariant) == 19);
        REQUIRE_TRUE(abs(st.rt) == 19);
        REQUIRE_TRUE(f.module.indeg() == f.module.rt());  // level

        auto S10 = std::make_shared<AffineSemigroup>(veronese_semigroup(*f.ambient, 10));
        auto w10 = veronese_module(f.module, 10, S10);
        std::vector<Vec> tr1;  // degree-one part of the trace in the regraded ring
        for (const auto& m : S10->degree_slice(1))
            if (trace_membership(m, w10)) tr1.push_back(m);
        REQUIRE_TRUE(socle_of_artinian_quotient(*S10, tr1) == 2);

        ThresholdConstants published{Int(10), Int(19), Int(19), Int(2)};
        auto th = ng_thresholds(f.module, published);
        REQUIRE_TRUE(th.k_R == 190);
        REQUIRE_TRUE(th.literal_rt_semigroup == 20);
        bool flagged = false;
        for (const auto& n : th.notes)
            if (n.find("differs") != std::string::npos) flagged = true;
        REQUIRE_TRUE(flagged);

        if (slow) {
            auto S190 = std::make_shared<AffineSemigroup>(veronese_semigroup(*f.ambient, 190));
            auto w190 = veronese_module(f.module, 190, S190);
            REQUIRE_TRUE(is_nearly_gorenstein(w190).verdict);
        }
    });

    criterion(5, "extremal condition matches the minkowski decomposition on random polytopes",
              [] {
                  std::mt19937_64 rng(60103);
                  std::uniform_int_distribution<long> coord(0, 4), dims(1, 3), extra(0, 3);
                  while (sweep_instances.size() < 50) {
                      size_t d = dims(rng);
                      std::vector<Vec> pts;
                      size_t count = d + 2 + extra(rng);
                      for (size_t i = 0; i < count; ++i) {
                          Vec v(d);
                          for (size_t j = 0; j < d; ++j) v[j] = coord(rng);
                          pts.push_back(std::move(v));
                      }
                      LatticePolytope P;
                      try {
                          P = LatticePolytope::facet_presentation(pts);
                      } catch (const input_error&) {
                          continue;
                      }
                      Instance inst;
                      inst.label = "sweep#" + std::to_string(sweep_instances.size());
                      inst.P = P;
                      inst.S = cone_semigroup(P);
                      inst.omega = canonical_module(inst.S);
                      inst.report = property_report(inst.omega, true);
                      inst.idp = is_idp(P);
                      inst.decomposes = decomposition_check(P).holds;
                      REQUIRE_TRUE(inst.report.natural.verdict == inst.decomposes);
                      sweep_instances.push_back(std::move(inst));
                  }
              });

    criterion(6, "the extremal condition persists in the second and third veronese", [] {
        REQUIRE_TRUE(!sweep_instances.empty());
        for (const auto& inst : sweep_instances) {
            if (!inst.report.natural.verdict) continue;
            for (Int k(2); k <= 3; ++k) {
                auto Sk = std::make_shared<AffineSemigroup>(veronese_semigroup(*inst.S, k));
                auto wk = veronese_module(inst.omega, k, Sk);
                REQUIRE_TRUE(satisfies_natural(wk).verdict);
            }
        }
    });

    criterion(7, "nearly gorenstein IDP polytopes stay nearly gorenstein in veroneses", [] {
        REQUIRE_TRUE(!sweep_instances.empty());
        for (const auto& inst : sweep_instances) {
            if (!inst.report.nearly_gorenstein.verdict || !inst.idp) continue;
            for (Int k(2); k <= 3; ++k) {
                auto Sk = std::make_shared<AffineSemigroup>(veronese_semigroup(*inst.S, k));
                auto wk = veronese_module(inst.omega, k, Sk);
                REQUIRE_TRUE(is_nearly_gorenstein(wk).verdict);
            }
        }
    });

    criterion(8, "(0,1) product corpus: the two properties coincide, factors explain them", [] {
        auto seg = segment(0, 1);
        auto tri = LatticePolytope::facet_presentation({{0, 0}, {1, 0}, {0, 1}});
        auto chain2 = LatticePolytope::facet_presentation({{0, 0}, {0, 1}, {1, 1}});
        std::vector<std::vector<LatticePolytope>> combos{
            {seg},
            {seg, seg},
            {tri},
            {chain2},
            {seg, seg, seg},
            {seg, tri},
            {seg, chain2},
            {seg, seg, seg, seg},
            {seg, seg, tri},
            {tri, tri},
            {tri, chain2},
            {chain2, chain2},
        };
        std::vector<LatticePolytope> corpus;
        for (const auto& c : combos) corpus.push_back(product_of(c));
        // order polytopes of the diamond and fence posets (connected, graded)
        auto filters_to_polytope = [](const std::vector<std::vector<int>>& filters) {
            std::vector<Vec> vs;
            for (const auto& f : filters) {
                Vec v;
                for (int x : f) v.push_back(x);
                vs.push_back(v);
            }
            return LatticePolytope::facet_presentation(vs);
        };
        // diamond a<b, a<c, b<d, c<d: up-set indicators over (a,b,c,d)
        corpus.push_back(filters_to_polytope({{0, 0, 0, 0},
                                              {0, 0, 0, 1},
                                              {0, 1, 0, 1},
                                              {0, 0, 1, 1},
                                              {0, 1, 1, 1},
                                              {1, 1, 1, 1}}));
        // fence a<c, b<c, b<d over (a,b,c,d)
        corpus.push_back(filters_to_polytope({{0, 0, 0, 0},
                                              {0, 0, 1, 0},
                                              {0, 0, 0, 1},
                                              {0, 0, 1, 1},
                                              {1, 0, 1, 0},
                                              {1, 0, 1, 1},
                                              {0, 1, 1, 1},
                                              {1, 1, 1, 1}}));
        for (size_t i = 0; i < corpus.size(); ++i) {
            const auto& P = corpus[i];
            REQUIRE_TRUE(is_idp(P));
            Instance inst;
            inst.label = "corpus#" + std::to_string(i);
            inst.P = P;
            inst.S = cone_semigroup(P);
            inst.omega = canonical_module(inst.S);
            inst.report = property_report(inst.omega, true);
            inst.idp = true;
            inst.decomposes = decomposition_check(P).holds;
            REQUIRE_TRUE(inst.report.natural.verdict == inst.report.nearly_gorenstein.verdict);
            auto F = product_factorization(P);
            bool all_gorenstein = true;
            for (const auto& fac : F.factors)
                if (!is_gorenstein(canonical_module(fac))) all_gorenstein = false;
            REQUIRE_TRUE(all_gorenstein == inst.report.nearly_gorenstein.verdict);
            corpus_instances.push_back(std::move(inst));
        }
    });

    criterion(9, "minimal multiplicity forces the two properties to agree", [] {
        size_t seen = 0;
        for (const auto* inst : all_instances())
            if (inst->report.minimal_multiplicity) {
                ++seen;
                REQUIRE_TRUE(inst->report.natural.verdict ==
                             inst->report.nearly_gorenstein.verdict);
            }
        REQUIRE_TRUE(seen > 0);
    });

    criterion(10, "under the extremal condition, gorenstein iff the top h entry is one", [] {
        size_t seen = 0;
        for (const auto* inst : all_instances())
            if (inst->report.natural.verdict) {
                ++seen;
                REQUIRE_TRUE(inst->report.gorenstein == inst->report.h_top_is_one);
            }
        REQUIRE_TRUE(seen > 0);
    });

    criterion(11, "oracle equivalences", [] {
        std::mt19937_64 rng(777);
        std::uniform_int_distribution<long> coord(0, 3), dims(1, 3);
        // hilbert basis vs naive slice minimalization on 10 random polytopes
        int done = 0;
        while (done < 10) {
            size_t d = dims(rng);
            std::vector<Vec> pts;
            for (size_t i = 0; i < d + 3; ++i) {
                Vec v(d);
                for (size_t j = 0; j < d; ++j) v[j] = coord(rng);
                pts.push_back(std::move(v));
            }
            LatticePolytope P;
            try {
                P = LatticePolytope::facet_presentation(pts);
            } catch (const input_error&) {
                continue;
            }
            auto S = cone_semigroup(P);
            long maxdeg = 0;
            for (const auto& g : S->generators())
                maxdeg = std::max(maxdeg, S->degree_of(g).get_si());
            // naive route: minimalize brute slice tables
            std::vector<std::set<Vec>> slices(maxdeg + 2);
            for (long k = 1; k <= maxdeg + 1; ++k)
                for (const auto& x : dilation_points(P, Int(k), Region::closed)) {
                    Vec p = x;
                    p.push_back(Int(k));
                    slices[k].insert(p);
                }
            std::vector<Vec> naive;
            for (long k = 1; k <= maxdeg + 1; ++k)
                for (const auto& p : slices[k]) {
                    bool red = false;
                    for (long j = 1; j < k && !red; ++j)
                        for (const auto& q : slices[j])
                            if (slices[k - j].count(vsub(p, q))) {
                                red = true;
                                break;
                            }
                    if (!red) naive.push_back(p);
                }
            std::sort(naive.begin(), naive.end());
            REQUIRE_TRUE(S->generators() == naive);
            ++done;
        }
        // membership vs exhaustive knapsack on 1000 random vectors
        AffineSemigroup SB({{0, 1}, {3, 1}, {6, 1}, {9, 1}, {1, 2}, {4, 2}},
                           Grading::last_coordinate(2));
        auto knapsack = [&](const Vec& v) {
            std::set<Vec> dead;
            std::function<bool(const Vec&)> go = [&](const Vec& w) -> bool {
                if (is_zero(w)) return true;
                Int deg = dot(SB.grading().weights, w);
                if (deg <= 0) return false;
                if (dead.count(w)) return false;
                for (const auto& g : SB.generators()) {
                    if (dot(SB.grading().weights, g) > deg) continue;
                    if (go(vsub(w, g))) return true;
                }
                dead.insert(w);
                return false;
            };
            return go(v);
        };
        std::uniform_int_distribution<long> x(-2, 40), kk(0, 8);
        for (int t = 0; t < 1000; ++t) {
            Vec v{Int(x(rng)), Int(kk(rng))};
            REQUIRE_TRUE(SB.contains(v) == knapsack(v));
        }
        // inverse slices vs a box-scan filter on 100 random module/degree pairs
        auto S3 = cone_semigroup(segment(0, 3));
        std::uniform_int_distribution<long> kd(-2, 4), pick(0, 1000);
        for (int t = 0; t < 100; ++t) {
            auto s1 = S3->degree_slice(1);
            auto s2 = S3->degree_slice(2);
            auto J = validate_module(
                S3, {s1[pick(rng) % s1.size()], s2[pick(rng) % s2.size()]});
            Int k = kd(rng);
            auto got = inverse_slice(J, k);
            std::vector<Vec> expect;
            for (long a = -22; a <= 22; ++a) {
                Vec v{Int(a), k};
                bool ok = true;
                for (const auto& g : J.generators())
                    if (!S3->contains(vadd(v, g))) {
                        ok = false;
                        break;
                    }
                if (ok) expect.push_back(v);
            }
            REQUIRE_TRUE(got == expect);
        }
    });

    criterion(12, "duality gate", [] {
        for (const auto& inst : sweep_instances) {
            REQUIRE_TRUE(duality_validate(inst.omega, 10));
        }
        auto f = fixture_from_json(load_json_file(fixture("omega_B.json")));
        REQUIRE_TRUE(duality_validate(f.module, 10));
        std::vector<Vec> broken(f.module.generators().begin(),
                                f.module.generators().end() - 1);
        REQUIRE_TRUE(!duality_validate(module_from_minimal(f.ambient, broken), 10));
    });

    if (failures) {
        std::cout << failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all criteria passed" << (slow ? " (including slow checks)" : "") << "\n";
    return 0;
}
