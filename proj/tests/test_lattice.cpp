#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ngtrace/lattice.hpp"

using namespace ngtrace;

TEST_CASE("hnf of an already-reduced basis") {
    auto L = hnf_lattice({{2, 0}, {0, 2}});
    CHECK(L.rank() == 2);
    CHECK(L.basis() == std::vector<Vec>{{2, 0}, {0, 2}});
}

TEST_CASE("unimodular generators span the whole lattice") {
    auto L = hnf_lattice({{0, 1}, {1, 2}});
    CHECK(L.basis() == std::vector<Vec>{{1, 0}, {0, 1}});
}

TEST_CASE("collinear generators give rank one") {
    auto L = hnf_lattice({{3, 1}, {6, 2}});
    CHECK(L.rank() == 1);
    CHECK(L.basis() == std::vector<Vec>{{3, 1}});
}

TEST_CASE("membership") {
    auto L = hnf_lattice({{2, 0}, {0, 2}});
    CHECK(L.contains({2, 2}));
    CHECK(!L.contains({1, 1}));
    auto Z2 = hnf_lattice({{1, 0}, {0, 1}});
    CHECK(Z2.contains({-7, 5}));
}

TEST_CASE("idempotence and generator containment") {
    std::vector<Vec> gens{{4, 2, 0}, {2, 4, 2}, {0, 6, 4}, {6, 0, 2}};
    auto L = hnf_lattice(gens);
    auto L2 = hnf_lattice(L.basis());
    CHECK(L.basis() == L2.basis());
    for (const auto& g : gens) CHECK(L.contains(g));
}

TEST_CASE("dimension mismatch is rejected") {
    CHECK_THROWS_AS(hnf_lattice({{1, 0}, {1}}), input_error);
}
