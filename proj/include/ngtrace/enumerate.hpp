#pragma once
#include "ngtrace/numeric.hpp"

namespace ngtrace {

// one row of a linear system: normal . x >= rhs  (integral normal, rational rhs)
struct LinearConstraint {
    Vec normal;
    Rat rhs;
};

struct LinearSystem {
    size_t dim = 0;
    std::vector<LinearConstraint> rows;        // normal . x >= rhs
    std::vector<LinearConstraint> equalities;  // normal . x == rhs

    explicit LinearSystem(size_t d) : dim(d) {}
    void add_ge(Vec normal, Rat rhs);
    void add_eq(Vec normal, Rat rhs);
};

// All lattice points satisfying the system, sorted lexicographically.
// Throws unbounded_error when the solution region is unbounded.
// enumerate_slice dispatches to the OpenMP kernel when it is worthwhile;
// the serial routine is the reference implementation.
std::vector<Vec> enumerate_slice(const LinearSystem& sys);
std::vector<Vec> enumerate_slice_serial(const LinearSystem& sys);
std::vector<Vec> enumerate_slice_parallel(const LinearSystem& sys);

}  // namespace ngtrace
