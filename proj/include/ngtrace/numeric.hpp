#pragma once
#include <gmpxx.h>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ngtrace {

using Int = mpz_class;
using Rat = mpq_class;
using Vec = std::vector<Int>;

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// bad user input: wrong dimensions, malformed files, violated preconditions
struct input_error : error {
    using error::error;
};
// a mathematical invariant failed; either the input data lies or there is a bug
struct consistency_error : error {
    using error::error;
};
// a configurable scan ceiling was exhausted before closure
struct limit_error : error {
    using error::error;
};
struct unbounded_error : input_error {
    using input_error::input_error;
};

inline Int dot(const Vec& a, const Vec& b) {
    Int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Vec vadd(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec vsub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec vneg(const Vec& a) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

inline Vec vscale(const Int& c, const Vec& a) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

inline bool is_zero(const Vec& a) {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

inline Int content(const Vec& a) {
    Int g = 0;
    for (const auto& x : a) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

// divides out the gcd of the coordinates; zero vectors stay zero
inline Vec primitive(const Vec& a) {
    Int g = content(a);
    if (g == 0 || g == 1) return a;
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] / g;
    return r;
}

inline Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Int ceil_div(const Int& a, const Int& b) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

// smallest integer >= r (mpq denominators are positive after canonicalization)
inline Int rat_ceil(const Rat& r) {
    return ceil_div(r.get_num(), r.get_den());
}

inline Int rat_floor(const Rat& r) {
    return floor_div(r.get_num(), r.get_den());
}

inline long to_long(const Int& a, const char* what = "value") {
    if (!a.fits_slong_p()) throw limit_error(std::string(what) + " does not fit a machine word");
    return a.get_si();
}

inline std::string to_string(const Vec& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].get_str();
    }
    return s + ")";
}

}  // namespace ngtrace
