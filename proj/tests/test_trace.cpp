#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ngtrace/ehrhart.hpp"
#include "ngtrace/json_io.hpp"
#include "oracle.hpp"

using namespace ngtrace;

namespace {

std::string fixture(const std::string& name) {
    return std::string(NGTRACE_FIXTURE_DIR) + "/" + name;
}

OmegaFixture load(const std::string& name) {
    return fixture_from_json(load_json_file(fixture(name)));
}

LatticePolytope segment(long a, long b) {
    return LatticePolytope::facet_presentation({{Int(a)}, {Int(b)}});
}

LatticePolytope unit_square() {
    return LatticePolytope::facet_presentation({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
}

}  // namespace

TEST_CASE("module validation") {
    auto S = cone_semigroup(segment(0, 3));
    auto J = validate_module(S, {{1, 1}, {2, 1}, {3, 2}});
    CHECK(J.generators() == std::vector<Vec>{{1, 1}, {2, 1}});  // (3,2)=(1,1)+(2,1)
    auto unit = validate_module(S, {{0, 0}});
    CHECK(unit.generators() == std::vector<Vec>{{0, 0}});

    auto Ssub = std::make_shared<AffineSemigroup>(std::vector<Vec>{{0, 1}, {2, 1}},
                                                  Grading::last_coordinate(2));
    CHECK_THROWS_AS(validate_module(Ssub, {{1, 1}}), input_error);  // outside ZS
}

TEST_CASE("inverse slices of canonical modules") {
    auto S3 = cone_semigroup(segment(0, 3));
    auto w3 = canonical_module(S3);
    CHECK(inverse_slice(w3, 0) == std::vector<Vec>{{-1, 0}, {0, 0}, {1, 0}});
    CHECK(inverse_slice(w3, -1).empty());  // below the feasibility bound

    auto S1 = cone_semigroup(segment(0, 1));
    auto w1 = canonical_module(S1);
    CHECK(inverse_slice(w1, -2) == std::vector<Vec>{{-1, -2}});
}

TEST_CASE("inverse slices against a box-scan filter") {
    std::mt19937_64 rng(5150);
    auto S3 = cone_semigroup(segment(0, 3));
    auto SQ = cone_semigroup(unit_square());
    std::uniform_int_distribution<long> pick(0, 3), kdist(-2, 4);
    int runs = 0;
    for (int t = 0; t < 120; ++t) {
        auto S = (t % 2) ? S3 : SQ;
        // random small module over S
        std::vector<Vec> raw;
        auto slice1 = S->degree_slice(1);
        auto slice2 = S->degree_slice(2);
        raw.push_back(slice1[pick(rng) % slice1.size()]);
        raw.push_back(slice2[pick(rng) % slice2.size()]);
        auto J = validate_module(S, raw);
        Int k = kdist(rng);
        auto got = inverse_slice(J, k);
        // oracle: scan a generous box and keep points with a + J inside S
        std::vector<Vec> expect;
        const long B = 26;
        Vec cur(S->ambient_dim());
        auto rec = [&](auto&& self, size_t i) -> void {
            if (i == S->ambient_dim()) {
                if (S->degree_of(cur) != k) return;
                for (const auto& g : J.generators())
                    if (!S->contains(vadd(cur, g))) return;
                expect.push_back(cur);
                return;
            }
            for (long v = -B; v <= B; ++v) {
                cur[i] = v;
                self(self, i + 1);
            }
        };
        rec(rec, 0);
        std::sort(expect.begin(), expect.end());
        CHECK(got == expect);
        ++runs;
    }
    CHECK(runs >= 100);
}

TEST_CASE("inverse modules") {
    auto S1 = cone_semigroup(segment(0, 1));
    CHECK(inverse_module(canonical_module(S1)).generators() ==
          std::vector<Vec>{{-1, -2}});
    auto S3 = cone_semigroup(segment(0, 3));
    CHECK(inverse_module(canonical_module(S3)).generators() ==
          std::vector<Vec>{{-1, 0}, {0, 0}, {1, 0}});
    auto unit = validate_module(S3, {{0, 0}});
    CHECK(inverse_module(unit).generators() == std::vector<Vec>{{0, 0}});
}

TEST_CASE("trace membership basics") {
    auto S3 = cone_semigroup(segment(0, 3));
    auto w3 = canonical_module(S3);
    CHECK(trace_membership({0, 1}, w3));
    // a principal module has trace equal to the whole ring
    auto principal = validate_module(S3, {{2, 1}});
    for (const auto& m : S3->degree_slice(2)) CHECK(trace_membership(m, principal));
    CHECK_THROWS_AS(trace_membership(Vec{0}, w3), input_error);
}

TEST_CASE("trace is independent of redundant generators and of shifts") {
    auto S3 = cone_semigroup(segment(0, 3));
    auto w3 = canonical_module(S3);
    std::vector<Vec> padded = w3.generators();
    padded.push_back({3, 2});  // (1,1) + (2,1)
    padded.push_back({2, 2});  // (1,1) + (1,1)
    auto J2 = validate_module(S3, padded);
    std::vector<Vec> shifted;
    for (const auto& g : w3.generators()) shifted.push_back(vadd(g, Vec{1, 1}));
    auto J3 = validate_module(S3, shifted);
    for (const auto& m : S3->degree_slice(1)) {
        CHECK(trace_membership(m, w3) == trace_membership(m, J2));
        CHECK(trace_membership(m, w3) == trace_membership(m, J3));
    }
}

TEST_CASE("product of the module and its inverse lands in the ring") {
    auto SQ = cone_semigroup(unit_square());
    auto w = canonical_module(SQ);
    for (Int k(-2); k <= 2; ++k)
        for (const auto& a : inverse_slice(w, k))
            for (const auto& g : w.generators()) CHECK(SQ->contains(vadd(a, g)));
}

TEST_CASE("gorenstein detection") {
    CHECK(is_gorenstein(canonical_module(segment(0, 1))));
    CHECK(!is_gorenstein(canonical_module(segment(0, 3))));
    CHECK(is_gorenstein(canonical_module(unit_square())));
}

TEST_CASE("nearly gorenstein and the extremal condition on the twisted cubic") {
    auto S3 = cone_semigroup(segment(0, 3));
    auto w3 = canonical_module(S3);
    auto ng = is_nearly_gorenstein(w3);
    CHECK(ng.verdict);
    auto nat = satisfies_natural(w3);
    CHECK(nat.verdict);
}

TEST_CASE("fixture B is nearly gorenstein; its second veronese is not") {
    auto f = load("omega_B.json");
    CHECK(duality_validate(f.module, 20));
    CHECK(is_nearly_gorenstein(f.module).verdict);

    auto S2 = std::make_shared<AffineSemigroup>(veronese_semigroup(*f.ambient, 2));
    auto w2 = veronese_module(f.module, 2, S2);
    auto ng2 = is_nearly_gorenstein(w2);
    CHECK(!ng2.verdict);
    // st, i.e. exponent vector (1,2) at veronese degree 1, is the witness
    CHECK(std::find(ng2.missing.begin(), ng2.missing.end(), Vec{1, 2}) != ng2.missing.end());
    CHECK(!trace_membership({1, 2}, w2));
    CHECK(trace_membership({0, 2}, w2));   // t stays inside
    CHECK(trace_membership({2, 4}, w2));   // (st)^2 stays inside
}

TEST_CASE("standalone presentation of the second veronese of fixture B") {
    auto f = load("omega_B2.json");
    CHECK(duality_validate(f.module, 20));
    auto ng = is_nearly_gorenstein(f.module);
    CHECK(!ng.verdict);
    CHECK(std::find(ng.missing.begin(), ng.missing.end(), Vec{1, 1}) != ng.missing.end());
    CHECK(trace_membership({0, 1}, f.module));
    CHECK(trace_membership({2, 2}, f.module));
    CHECK(satisfies_natural(f.module).verdict);  // the extremal monomials survive
}

TEST_CASE("module stats") {
    auto w1 = canonical_module(segment(0, 1));
    auto s1 = module_stats(w1);
    CHECK(s1.a_invariant == -2);
    CHECK(s1.rt == 2);
    auto w3 = canonical_module(segment(0, 3));
    auto s3 = module_stats(w3);
    CHECK(s3.a_invariant == -1);
    CHECK(s3.rt == 1);
    auto f = load("omega_threshold.json");
    auto st = module_stats(f.module);
    CHECK(abs(st.a_invariant) == 19);
    CHECK(abs(st.rt) == 19);
    CHECK(f.module.indeg() == f.module.rt());  // level
}

TEST_CASE("veronese module matches the canonical module of the dilation") {
    auto S1 = cone_semigroup(segment(0, 1));
    auto w1 = canonical_module(S1);
    auto S1v2 = std::make_shared<AffineSemigroup>(veronese_semigroup(*S1, 2));
    auto wv = veronese_module(w1, 2, S1v2);
    // canonical module of [0,2], lifted through (x,k) -> (x,2k)
    auto w02 = canonical_module(segment(0, 2));
    std::vector<Vec> lifted;
    for (const auto& g : w02.generators()) lifted.push_back({g[0], 2 * g[1]});
    std::sort(lifted.begin(), lifted.end());
    CHECK(wv.generators() == lifted);
}

TEST_CASE("socle of artinian quotients") {
    auto S3 = cone_semigroup(segment(0, 3));
    auto w3 = canonical_module(S3);
    CHECK(socle_of_artinian_quotient(*S3, S3->generators()) == 0);  // s(R/m) = 0
    std::vector<Vec> tr1;
    for (const auto& m : S3->degree_slice(1))
        if (trace_membership(m, w3)) tr1.push_back(m);
    CHECK(socle_of_artinian_quotient(*S3, tr1) == 0);
    // a non-m-primary ideal is rejected
    CHECK_THROWS_AS(socle_of_artinian_quotient(*S3, {{0, 1}}), input_error);
}

TEST_CASE("thresholds of a nearly gorenstein standard graded ring") {
    auto S3 = cone_semigroup(segment(0, 3));
    auto w3 = canonical_module(S3);
    auto th = ng_thresholds(w3);
    REQUIRE(th.standard_threshold.has_value());
    CHECK(*th.standard_threshold == 1);
    CHECK(th.literal_rt_semigroup == 0);
    CHECK(th.k_R >= 1);
}

TEST_CASE("duality holds over the veronese ambient") {
    auto f = load("omega_B.json");
    auto S2 = std::make_shared<AffineSemigroup>(veronese_semigroup(*f.ambient, 2));
    auto w2 = veronese_module(f.module, 2, S2);
    CHECK(duality_validate(w2, 12));
}

TEST_CASE("duality gate accepts real canonical modules and rejects corrupted ones") {
    for (const auto& P : {segment(0, 3), unit_square()}) {
        auto S = cone_semigroup(P);
        CHECK(duality_validate(canonical_module(S), 10));
    }
    auto f = load("omega_B.json");
    std::vector<Vec> broken(f.module.generators().begin(),
                            f.module.generators().end() - 1);
    auto M = module_from_minimal(f.ambient, broken);
    CHECK(!duality_validate(M, 20));
}

TEST_CASE("punctured spectrum verdicts") {
    auto S3 = cone_semigroup(segment(0, 3));
    auto p3 = punctured_gorenstein(canonical_module(S3));
    CHECK(p3.verdict == TriBool::yes);
    for (const auto& [g, j] : p3.witness_powers) CHECK(j == 1);

    auto f = load("omega_punctured.json");
    CHECK(duality_validate(f.module, 12));
    auto pf = punctured_gorenstein(f.module);
    CHECK(pf.verdict == TriBool::no);
    CHECK(std::find(pf.impossible.begin(), pf.impossible.end(), Vec{0, 1}) !=
          pf.impossible.end());
}

TEST_CASE("property report on the twisted cubic and the square") {
    auto S3 = cone_semigroup(segment(0, 3));
    auto r3 = property_report(canonical_module(S3), true);
    CHECK(!r3.gorenstein);
    CHECK(r3.nearly_gorenstein.verdict);
    CHECK(r3.natural.verdict);
    CHECK(r3.minimal_multiplicity);
    CHECK(r3.hilbert.h == std::vector<Int>{1, 2});

    auto SQ = cone_semigroup(unit_square());
    auto rq = property_report(canonical_module(SQ), true);
    CHECK(rq.gorenstein);
    CHECK(rq.punctured.verdict == TriBool::yes);
}

TEST_CASE("property report on fixture A") {
    auto f = load("omega_A.json");
    CHECK(duality_validate(f.module, 20));
    auto r = property_report(f.module, true);
    CHECK(!r.gorenstein);
    CHECK(!r.nearly_gorenstein.verdict);
    CHECK(!r.natural.verdict);
    CHECK(r.punctured.verdict == TriBool::yes);
    CHECK(r.h_top_is_one);
    CHECK(r.hilbert.a_invariant == 0);
}

TEST_CASE("codegree gap of two kills near-gorensteinness of a product") {
    // segment (codegree 2) times the 3-chain order simplex (codegree 4)
    std::vector<Vec> vs;
    for (long s : {0, 1})
        for (auto c : std::vector<Vec>{{0, 0, 0}, {0, 0, 1}, {0, 1, 1}, {1, 1, 1}}) {
            Vec v{Int(s)};
            v.insert(v.end(), c.begin(), c.end());
            vs.push_back(v);
        }
    auto P = LatticePolytope::facet_presentation(vs);
    CHECK(is_idp(P));
    auto S = cone_semigroup(P);
    auto w = canonical_module(S);
    auto r = property_report(w, true);
    CHECK(!r.nearly_gorenstein.verdict);
    CHECK(!r.natural.verdict);
    // both factors are gorenstein on their own
    auto F = product_factorization(P);
    for (const auto& fac : F.factors) CHECK(is_gorenstein(canonical_module(fac)));
}
