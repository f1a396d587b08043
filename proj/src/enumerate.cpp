#include "ngtrace/enumerate.hpp"

#include <algorithm>
#include <map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ngtrace {

void LinearSystem::add_ge(Vec normal, Rat rhs) {
    if (normal.size() != dim) throw input_error("constraint dimension mismatch");
    rhs.canonicalize();
    rows.push_back({std::move(normal), std::move(rhs)});
}

void LinearSystem::add_eq(Vec normal, Rat rhs) {
    if (normal.size() != dim) throw input_error("constraint dimension mismatch");
    rhs.canonicalize();
    equalities.push_back({std::move(normal), std::move(rhs)});
}

namespace {

// Internal rows carry integer right-hand sides: solutions are lattice points,
// so n.x >= b can always be strengthened to n.x >= ceil(b).  Integer points
// survive every Fourier-Motzkin combination of strengthened rows, which is
// all the projections are used for.
struct Row {
    Vec n;
    Int b;
};

void normalize(Row& r) {
    Int g = content(r.n);
    if (g > 1) {
        for (auto& x : r.n) x /= g;
        r.b = ceil_div(r.b, g);
    }
}

// drop duplicate normals, keeping the strongest right-hand side
std::vector<Row> dedup(std::vector<Row> rows) {
    std::map<Vec, Int> best;
    for (auto& r : rows) {
        auto it = best.find(r.n);
        if (it == best.end())
            best.emplace(std::move(r.n), std::move(r.b));
        else if (r.b > it->second)
            it->second = r.b;
    }
    std::vector<Row> out;
    out.reserve(best.size());
    for (auto& [n, b] : best) out.push_back({n, b});
    return out;
}

// Fourier-Motzkin elimination of variable `var`.
// Returns false when a trivially infeasible row (0 >= positive) appears.
bool eliminate(std::vector<Row>& rows, size_t var) {
    std::vector<Row> zero, pos, neg;
    for (auto& r : rows) {
        int s = sgn(r.n[var]);
        if (s == 0)
            zero.push_back(std::move(r));
        else if (s > 0)
            pos.push_back(std::move(r));
        else
            neg.push_back(std::move(r));
    }
    std::vector<Row> out = std::move(zero);
    for (const auto& p : pos)
        for (const auto& q : neg) {
            // p.n[var] > 0 > q.n[var]; cancel the variable
            Int a = p.n[var], c = -q.n[var];
            Row r;
            r.n.resize(p.n.size());
            for (size_t j = 0; j < p.n.size(); ++j) r.n[j] = c * p.n[j] + a * q.n[j];
            r.b = c * p.b + a * q.b;
            normalize(r);
            out.push_back(std::move(r));
        }
    for (auto& r : out) {
        if (is_zero(r.n) && r.b > 0) return false;
    }
    std::erase_if(out, [](const Row& r) { return is_zero(r.n); });
    rows = dedup(std::move(out));
    return true;
}

struct Projections {
    // proj[k] holds rows supported on variables 0..k
    std::vector<std::vector<Row>> proj;
    bool feasible = true;
};

Projections build_projections(const LinearSystem& sys) {
    Projections P;
    const size_t n = sys.dim;
    std::vector<Row> rows;
    for (const auto& c : sys.rows) {
        Row r{c.normal, rat_ceil(c.rhs)};
        if (is_zero(r.n)) {
            if (r.b > 0) {
                P.feasible = false;
                return P;
            }
            continue;
        }
        normalize(r);
        rows.push_back(std::move(r));
    }
    rows = dedup(std::move(rows));
    P.proj.resize(n);
    for (size_t k = n; k-- > 0;) {
        P.proj[k] = rows;
        if (k > 0 && !eliminate(rows, k)) {
            P.feasible = false;
            return P;
        }
    }
    return P;
}

// integer range of variable k given the fixed prefix, from the projected rows
struct VarRange {
    Int lo, hi;
    bool empty = false;
};

VarRange var_range(const std::vector<Row>& rows, const Vec& prefix, size_t k, Int& resid) {
    bool has_lo = false, has_hi = false;
    Int lo = 0, hi = 0;
    for (const auto& r : rows) {
        resid = r.b;
        for (size_t j = 0; j < k; ++j)
            if (r.n[j] != 0)
                mpz_submul(resid.get_mpz_t(), r.n[j].get_mpz_t(), prefix[j].get_mpz_t());
        const Int& c = r.n[k];
        if (c == 0) {
            if (resid > 0) return {0, -1, true};  // prefix already infeasible
            continue;
        }
        if (c > 0) {
            Int v = ceil_div(resid, c);
            if (!has_lo || v > lo) lo = v, has_lo = true;
        } else {
            Int v = floor_div(resid, c);
            if (!has_hi || v < hi) hi = v, has_hi = true;
        }
    }
    if (!has_lo || !has_hi) throw unbounded_error("enumerate_slice: unbounded region");
    if (lo > hi) return {lo, hi, true};
    return {lo, hi, false};
}

void dfs(const Projections& P, Vec& prefix, size_t k, std::vector<Vec>& out, Int& scratch) {
    const size_t n = P.proj.size();
    VarRange r = var_range(P.proj[k], prefix, k, scratch);
    if (r.empty) return;
    if (k + 1 == n) {
        for (Int v = r.lo; v <= r.hi; ++v) {
            prefix[k] = v;
            out.push_back(prefix);
        }
        return;
    }
    for (Int v = r.lo; v <= r.hi; ++v) {
        prefix[k] = v;
        dfs(P, prefix, k + 1, out, scratch);
    }
}

}  // namespace

namespace {

using Kernel = std::vector<Vec> (*)(const LinearSystem&);

// Solves out equalities before the box scan.  An equality with a unit
// coefficient (after dividing by its content) eliminates that variable
// exactly; the rare equality without one is folded into two inequalities.
std::vector<Vec> with_equalities(const LinearSystem& sys, Kernel kernel) {
    if (sys.dim == 0) {
        for (const auto& r : sys.rows)
            if (r.rhs > 0) return {};
        for (const auto& e : sys.equalities)
            if (e.rhs != 0) return {};
        return {Vec{}};
    }
    if (sys.equalities.empty()) return kernel(sys);

    LinearConstraint eq = sys.equalities.back();
    auto rest = [&](LinearSystem& target) {
        target.rows = sys.rows;
        target.equalities.assign(sys.equalities.begin(), sys.equalities.end() - 1);
    };
    if (is_zero(eq.normal)) {
        if (eq.rhs != 0) return {};
        LinearSystem dropped(sys.dim);
        rest(dropped);
        return with_equalities(dropped, kernel);
    }
    Int g = content(eq.normal);
    if (g > 1) {
        Rat b = eq.rhs / Rat(g);
        b.canonicalize();
        for (auto& x : eq.normal) x /= g;
        eq.rhs = b;
    }
    if (eq.rhs.get_den() != 1) return {};  // integral normal, fractional value

    size_t j = sys.dim;
    int sign = 0;
    for (size_t i = 0; i < sys.dim; ++i)
        if (eq.normal[i] == 1 || eq.normal[i] == -1) {
            j = i;
            sign = eq.normal[i] > 0 ? 1 : -1;
            break;
        }
    if (j == sys.dim) {
        // no unit pivot: keep the equality as an opposite pair of rows
        LinearSystem folded(sys.dim);
        rest(folded);
        folded.rows.push_back(eq);
        folded.rows.push_back({vneg(eq.normal), -eq.rhs});
        return with_equalities(folded, kernel);
    }

    // substitute x_j = sign * (c - sum_{i != j} e_i x_i)
    Int c = eq.rhs.get_num();
    auto transform = [&](const LinearConstraint& row) {
        Int nj = row.normal[j] * sign;
        Vec n2;
        n2.reserve(sys.dim - 1);
        for (size_t i = 0; i < sys.dim; ++i) {
            if (i == j) continue;
            n2.push_back(row.normal[i] - nj * eq.normal[i]);
        }
        Rat b2 = row.rhs - Rat(nj * c);
        b2.canonicalize();
        return LinearConstraint{std::move(n2), std::move(b2)};
    };
    LinearSystem red(sys.dim - 1);
    for (const auto& r : sys.rows) red.rows.push_back(transform(r));
    for (size_t e = 0; e + 1 < sys.equalities.size(); ++e)
        red.equalities.push_back(transform(sys.equalities[e]));

    auto reduced = with_equalities(red, kernel);
    std::vector<Vec> out;
    out.reserve(reduced.size());
    for (const auto& y : reduced) {
        Vec x(sys.dim);
        size_t t = 0;
        for (size_t i = 0; i < sys.dim; ++i)
            if (i != j) x[i] = y[t++];
        Int xj = c;
        for (size_t i = 0; i < sys.dim; ++i)
            if (i != j) xj -= eq.normal[i] * x[i];
        x[j] = sign > 0 ? xj : Int(-xj);
        out.push_back(std::move(x));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Vec> serial_core(const LinearSystem& sys) {
    if (sys.dim == 0) throw input_error("enumerate_slice: zero-dimensional system");
    Projections P = build_projections(sys);
    if (!P.feasible) return {};
    std::vector<Vec> out;
    Vec prefix(sys.dim);
    Int scratch;
    dfs(P, prefix, 0, out, scratch);
    return out;
}

std::vector<Vec> parallel_core(const LinearSystem& sys) {
    if (sys.dim == 0) throw input_error("enumerate_slice: zero-dimensional system");
    Projections P = build_projections(sys);
    if (!P.feasible) return {};
    Vec empty_prefix(sys.dim);
    Int scratch0;
    VarRange r0 = var_range(P.proj[0], empty_prefix, 0, scratch0);
    if (r0.empty) return {};
    if (sys.dim == 1) {
        std::vector<Vec> out;
        for (Int v = r0.lo; v <= r0.hi; ++v) out.push_back({v});
        return out;
    }
    const long width = to_long(r0.hi - r0.lo + 1, "enumeration width");
    std::vector<std::vector<Vec>> buckets(width);
#ifdef _OPENMP
    std::exception_ptr failure;
#pragma omp parallel
    {
        // thread-local strip buffers avoid false sharing on the bucket array
        std::vector<std::pair<long, std::vector<Vec>>> local;
        Vec prefix(sys.dim);
        Int scratch;
#pragma omp for schedule(static, 1) nowait
        for (long i = 0; i < width; ++i) {
            try {
                prefix[0] = r0.lo + Int(i);
                std::vector<Vec> strip;
                dfs(P, prefix, 1, strip, scratch);
                local.emplace_back(i, std::move(strip));
            } catch (...) {
                // exceptions must not unwind through the parallel region
#pragma omp critical
                if (!failure) failure = std::current_exception();
            }
        }
        for (auto& [i, strip] : local) buckets[i] = std::move(strip);
    }
    if (failure) std::rethrow_exception(failure);
#else
    {
        Vec prefix(sys.dim);
        Int scratch;
        for (long i = 0; i < width; ++i) {
            prefix[0] = r0.lo + Int(i);
            dfs(P, prefix, 1, buckets[i], scratch);
        }
    }
#endif
    // strips concatenate in ascending first coordinate, so the result is lex sorted
    std::vector<Vec> out;
    size_t total = 0;
    for (const auto& b : buckets) total += b.size();
    out.reserve(total);
    for (auto& b : buckets)
        for (auto& v : b) out.push_back(std::move(v));
    return out;
}

std::vector<Vec> dispatch_core(const LinearSystem& sys) {
#ifdef _OPENMP
    if (sys.dim >= 2 && omp_get_max_threads() > 1) {
        // probe the top-level strip count; threading pays off only when the
        // strips amortize the scheduling and allocation overhead
        Projections P = build_projections(sys);
        if (!P.feasible) return {};
        Vec empty_prefix(sys.dim);
        Int scratch;
        VarRange r0 = var_range(P.proj[0], empty_prefix, 0, scratch);
        if (!r0.empty && r0.hi - r0.lo >= 16) return parallel_core(sys);
    }
#endif
    return serial_core(sys);
}

}  // namespace

std::vector<Vec> enumerate_slice_serial(const LinearSystem& sys) {
    return with_equalities(sys, serial_core);
}

std::vector<Vec> enumerate_slice_parallel(const LinearSystem& sys) {
    return with_equalities(sys, parallel_core);
}

std::vector<Vec> enumerate_slice(const LinearSystem& sys) {
    return with_equalities(sys, dispatch_core);
}

}  // namespace ngtrace
