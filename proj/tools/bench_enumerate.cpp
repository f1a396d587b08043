// Compares the serial reference enumeration kernel against the OpenMP one on
// progressively larger slices and prints a timing table.
#include <chrono>
#include <cstdio>
#include <string>

#include "ngtrace/enumerate.hpp"
#include "ngtrace/polytope.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace ngtrace;

namespace {

double run_ms(const std::function<std::vector<Vec>()>& f, std::vector<Vec>& out) {
    auto t0 = std::chrono::steady_clock::now();
    out = f();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

LinearSystem cube_slice(size_t d, long k) {
    LinearSystem sys(d);
    for (size_t j = 0; j < d; ++j) {
        Vec lo(d, 0), hi(d, 0);
        lo[j] = 1;
        hi[j] = -1;
        sys.add_ge(lo, Rat(0));
        sys.add_ge(hi, Rat(-k));
    }
    return sys;
}

LinearSystem simplex_slice(size_t d, long k) {
    LinearSystem sys(d);
    Vec all(d, -1);
    for (size_t j = 0; j < d; ++j) {
        Vec lo(d, 0);
        lo[j] = 1;
        sys.add_ge(lo, Rat(0));
    }
    sys.add_ge(all, Rat(-k));
    return sys;
}

LinearSystem cross_slice(size_t d, long k) {
    // all sign patterns of sum |x_i| <= k
    LinearSystem sys(d);
    for (unsigned long mask = 0; mask < (1ul << d); ++mask) {
        Vec n(d);
        for (size_t j = 0; j < d; ++j) n[j] = ((mask >> j) & 1) ? 1 : -1;
        sys.add_ge(n, Rat(-k));
    }
    return sys;
}

void bench(const char* name, const LinearSystem& sys) {
    std::vector<Vec> a, b;
    double ts = run_ms([&] { return enumerate_slice_serial(sys); }, a);
    double tp = run_ms([&] { return enumerate_slice_parallel(sys); }, b);
    std::printf("%-22s %10zu pts   serial %9.2f ms   parallel %9.2f ms   x%.2f   %s\n",
                name, a.size(), ts, tp, tp > 0 ? ts / tp : 0.0,
                a == b ? "match" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
    long scale = argc > 1 ? std::atol(argv[1]) : 1;
#ifdef _OPENMP
    std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
    std::printf("openmp: disabled (serial build)\n");
#endif
    bench("cube d=2 k=1200", cube_slice(2, 1200 * scale));
    bench("cube d=3 k=110", cube_slice(3, 110 * scale));
    bench("cube d=4 k=32", cube_slice(4, 32 * scale));
    bench("simplex d=3 k=190", simplex_slice(3, 190 * scale));
    bench("simplex d=4 k=60", simplex_slice(4, 60 * scale));
    bench("cross d=3 k=95", cross_slice(3, 95 * scale));
    bench("cross d=4 k=30", cross_slice(4, 30 * scale));
    return 0;
}
