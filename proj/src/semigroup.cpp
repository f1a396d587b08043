#include "ngtrace/semigroup.hpp"

#include <algorithm>
#include <map>

#include "ngtrace/enumerate.hpp"
#include "ngtrace/polytope.hpp"

namespace ngtrace {

Grading Grading::last_coordinate(size_t dim) {
    Grading g;
    g.weights.assign(dim, 0);
    g.weights[dim - 1] = 1;
    return g;
}

bool Grading::graded(const Vec& v) const {
    return dot(weights, v) % divisor == 0;
}

Int Grading::degree(const Vec& v) const {
    Int w = dot(weights, v);
    if (w % divisor != 0) throw input_error("vector degree is not integral in this grading");
    return w / divisor;
}

namespace {

// does the subsemigroup generated by `gens` reach v?  bounded DFS on degrees
bool subsemigroup_reaches(const std::vector<Vec>& gens, const std::vector<long>& degs,
                          const Grading& grading, const Vec& v, std::set<Vec>& dead) {
    if (is_zero(v)) return true;
    Int dv = dot(grading.weights, v);
    if (dv < 0 || dv % grading.divisor != 0) return false;
    if (dead.count(v)) return false;
    long d = to_long(dv / grading.divisor, "degree");
    for (size_t i = 0; i < gens.size(); ++i) {
        if (degs[i] > d) continue;
        if (subsemigroup_reaches(gens, degs, grading, vsub(v, gens[i]), dead)) return true;
    }
    dead.insert(v);
    return false;
}

}  // namespace

AffineSemigroup::AffineSemigroup(std::vector<Vec> generators, Grading grading, Options opt)
    : grading_(std::move(grading)) {
    if (generators.empty()) throw input_error("semigroup: empty generator list");
    ambient_ = generators[0].size();
    for (const auto& g : generators)
        if (g.size() != ambient_) throw input_error("semigroup: dimension mismatch");
    if (grading_.weights.size() != ambient_)
        throw input_error("semigroup: grading dimension mismatch");

    std::sort(generators.begin(), generators.end());
    generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
    for (const auto& g : generators)
        if (is_zero(g)) throw input_error("semigroup: zero generator");
    gens_ = std::move(generators);

    group_ = hnf_lattice(gens_);
    for (const auto& g : gens_) span_gens_.push_back(*group_.coordinates(g));
    build_cone_data();  // also rejects non-pointed input

    for (const auto& g : gens_) {
        if (!grading_.graded(g)) throw input_error("semigroup: generator degree not integral");
        Int d = grading_.degree(g);
        if (d < 1) throw input_error("semigroup: generator of non-positive degree");
    }

    if (!opt.assume_minimal) minimalize();

    gen_degrees_.clear();
    for (const auto& g : gens_) gen_degrees_.push_back(to_long(grading_.degree(g), "degree"));
    max_gen_degree_ = *std::max_element(gen_degrees_.begin(), gen_degrees_.end());
    normal_ = opt.normal;
    cache_ = std::make_shared<SliceCache>();
    cache_->dp.push_back({Vec(ambient_, 0)});

    // extremal flags: generators whose ray is a face, the minimal one per ray
    const long r = rank();
    extremal_.assign(gens_.size(), false);
    std::map<Vec, size_t> best_on_ray;
    for (size_t i = 0; i < gens_.size(); ++i) {
        const Vec& sg = span_gens_[i];
        std::vector<Vec> tight;
        for (const auto& n : cone_normals_)
            if (dot(n, sg) == 0) tight.push_back(n);
        // the tight facet normals must span a hyperplane for the ray to be a face
        bool on_ray = (r == 1) || (!tight.empty() && (long)hnf_lattice(tight).rank() == r - 1);
        if (!on_ray) continue;
        Vec dir = primitive(sg);
        auto it = best_on_ray.find(dir);
        if (it == best_on_ray.end() || gen_degrees_[it->second] > gen_degrees_[i])
            best_on_ray.insert_or_assign(dir, i);
    }
    for (auto& [dir, i] : best_on_ray) extremal_[i] = true;

    // semi-standard test: cone(degree-1 generators) must equal cone(S)
    std::vector<Vec> deg1;
    for (size_t i = 0; i < gens_.size(); ++i)
        if (gen_degrees_[i] == 1) deg1.push_back(span_gens_[i]);
    semi_standard_ = false;
    if (!deg1.empty()) {
        std::vector<Vec> pts = deg1;
        pts.push_back(Vec(deg1[0].size(), 0));
        if ((long)hnf_lattice(deg1).rank() == r) {
            LatticePolytope C = LatticePolytope::hull(pts, 8);
            bool all_in = C.full_dimensional();
            if (all_in) {
                for (const auto& sg : span_gens_) {
                    for (const auto& f : C.facets()) {
                        if (-f.height != 0) continue;  // only cone facets matter
                        if (dot(f.normal, sg) < 0) {
                            all_in = false;
                            break;
                        }
                    }
                    if (!all_in) break;
                }
                // facets off the origin never cut a cone generated by these
                // points, so the through-origin facets decide containment
            }
            semi_standard_ = all_in;
        }
    }
    if (semi_standard_) {
        for (size_t i = 0; i < gens_.size(); ++i)
            if (extremal_[i] && gen_degrees_[i] != 1)
                throw consistency_error(
                    "semi-standard semigroup with an extremal generator of degree > 1");
    }
}

void AffineSemigroup::build_cone_data() {
    const long r = rank();
    std::vector<Vec> pts = span_gens_;
    pts.push_back(Vec(r, 0));
    LatticePolytope C = LatticePolytope::hull(pts, 8);
    // pointedness: the origin must be a vertex of conv({0} u generators)
    bool zero_vertex = std::binary_search(C.vertices().begin(), C.vertices().end(), Vec(r, 0));
    if (!zero_vertex || !C.full_dimensional())
        throw input_error("semigroup is not pointed");
    for (const auto& f : C.facets())
        if (f.height == 0) cone_normals_.push_back(f.normal);
    if (cone_normals_.empty() && r > 0)
        throw consistency_error("pointed cone without facets through the origin");
}

void AffineSemigroup::minimalize() {
    bool all_deg1 = true;
    for (const auto& g : gens_)
        if (grading_.degree(g) != 1) all_deg1 = false;
    if (all_deg1) return;  // degree-1 generators are never sums of others

    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < gens_.size(); ++i) {
            std::vector<Vec> others;
            std::vector<long> degs;
            for (size_t j = 0; j < gens_.size(); ++j)
                if (j != i) {
                    others.push_back(gens_[j]);
                    degs.push_back(to_long(grading_.degree(gens_[j]), "degree"));
                }
            if (others.empty()) break;
            std::set<Vec> dead;
            if (subsemigroup_reaches(others, degs, grading_, gens_[i], dead)) {
                gens_.erase(gens_.begin() + i);
                span_gens_.erase(span_gens_.begin() + i);
                changed = true;
                break;
            }
        }
    }
}

const std::set<Vec>& AffineSemigroup::slice_locked(long k) const {
    auto& dp = cache_->dp;
    while ((long)dp.size() <= k) {
        long d = (long)dp.size();
        std::set<Vec> cur;
        for (size_t i = 0; i < gens_.size(); ++i) {
            if (gen_degrees_[i] > d) continue;
            for (const auto& p : dp[d - gen_degrees_[i]]) cur.insert(vadd(p, gens_[i]));
        }
        dp.push_back(std::move(cur));
    }
    return dp[k];
}

std::vector<Vec> AffineSemigroup::degree_slice(long k) const {
    if (k < 0) return {};
    std::lock_guard<std::mutex> lock(cache_->mu);
    if (normal_ == true) {
        auto it = cache_->poly.find(k);
        if (it == cache_->poly.end())
            it = cache_->poly.emplace(k, cone_slice(Int(k), 0)).first;
        return it->second;  // already sorted
    }
    const auto& s = slice_locked(k);
    return {s.begin(), s.end()};
}

bool AffineSemigroup::contains(const Vec& v) const {
    if (v.size() != ambient_) throw input_error("membership: dimension mismatch");
    if (is_zero(v)) return true;
    Int w = dot(grading_.weights, v);
    if (w <= 0 || w % grading_.divisor != 0) return false;
    auto coords = group_.coordinates(v);
    if (!coords) return false;
    for (const auto& n : cone_normals_)
        if (dot(n, *coords) < 0) return false;
    if (normal_ == true) return true;
    long k = to_long(w / grading_.divisor, "degree");
    std::lock_guard<std::mutex> lock(cache_->mu);
    return slice_locked(k).count(v) > 0;
}

bool AffineSemigroup::cone_contains(const Vec& v) const {
    auto rc = group_.rational_coordinates(v);
    if (!rc) return false;
    for (const auto& n : cone_normals_) {
        Rat s(0);
        for (size_t i = 0; i < n.size(); ++i) s += Rat(n[i]) * (*rc)[i];
        if (s < 0) return false;
    }
    return true;
}

Vec AffineSemigroup::span_coordinates(const Vec& v) const {
    auto c = group_.coordinates(v);
    if (!c) throw input_error("vector outside the group lattice ZS");
    return *c;
}

std::vector<Int> AffineSemigroup::facet_values(const Vec& v) const {
    Vec c = span_coordinates(v);
    std::vector<Int> vals;
    for (const auto& n : cone_normals_) vals.push_back(dot(n, c));
    return vals;
}

std::vector<Vec> AffineSemigroup::cone_slice(const Int& degree, int shift) const {
    const long r = rank();
    // grading in span coordinates: deg(sum y_i b_i) = sum y_i (w . b_i) / divisor
    Vec wspan(r);
    for (long i = 0; i < r; ++i) wspan[i] = dot(grading_.weights, group_.basis()[i]);
    LinearSystem sys(r);
    for (const auto& n : cone_normals_) sys.add_ge(n, Rat(shift));
    sys.add_eq(wspan, Rat(degree * grading_.divisor));
    auto span_pts = enumerate_slice(sys);
    std::vector<Vec> out;
    out.reserve(span_pts.size());
    for (const auto& y : span_pts) {
        Vec v(ambient_, 0);
        for (long i = 0; i < r; ++i)
            if (y[i] != 0) v = vadd(v, vscale(y[i], group_.basis()[i]));
        out.push_back(std::move(v));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Vec> AffineSemigroup::extremal_generators() const {
    std::vector<Vec> out;
    for (size_t i = 0; i < gens_.size(); ++i)
        if (extremal_[i]) out.push_back(gens_[i]);
    return out;
}

HilbertData hilbert_data(const AffineSemigroup& S, bool assume_cm, const ScanLimits& lim) {
    if (!S.semi_standard()) throw input_error("hilbert_data: semigroup is not semi-standard");
    const long dim = S.rank();
    long window = lim.window > 0 ? lim.window : std::max(dim + 1, S.max_generator_degree() + 1);

    std::vector<Int> hf{Int(1)};
    std::vector<Int> h;
    std::vector<Int> binom(dim + 1);
    for (long j = 0; j <= dim; ++j) {
        Int b;
        mpz_bin_uiui(b.get_mpz_t(), dim, j);
        binom[j] = b;
    }
    long zeros = 0;
    long i = 0;
    while (true) {
        if (i > 0) {
            if (i > lim.max_degree)
                throw limit_error("hilbert_data: numerator did not terminate by degree " +
                                  std::to_string(lim.max_degree));
            hf.push_back(Int(S.degree_slice(i).size()));
        }
        Int hi = 0;
        for (long j = 0; j <= std::min(i, dim); ++j) {
            Int term = binom[j] * hf[i - j];
            hi += (j % 2 == 0) ? term : -term;
        }
        h.push_back(hi);
        zeros = (hi == 0) ? zeros + 1 : 0;
        if (i >= dim && zeros >= window) break;
        ++i;
    }
    while (!h.empty() && h.back() == 0) h.pop_back();
    if (h.empty()) throw consistency_error("hilbert_data: zero Hilbert series");

    HilbertData out;
    out.dim = dim;
    out.h = h;
    out.socle_degree = (long)h.size() - 1;
    out.a_invariant = Int(out.socle_degree) - dim;
    out.multiplicity = 0;
    for (const auto& x : h) out.multiplicity += x;
    out.embdim = S.generators().size();
    out.assume_cm = assume_cm;
    out.window_used = window;
    if (assume_cm) {
        for (const auto& x : h)
            if (x < 0)
                throw consistency_error("hilbert_data: negative h-vector entry under CM");
        if (out.multiplicity < Int(out.embdim) - dim + 1)
            throw consistency_error("hilbert_data: multiplicity below embdim - dim + 1");
    }
    out.minimal_multiplicity = (out.multiplicity == Int(out.embdim) - dim + 1);
    return out;
}

AffineSemigroup veronese_semigroup(const AffineSemigroup& S, const Int& k,
                                   const ScanLimits& lim) {
    if (k < 1) throw input_error("veronese_semigroup: k must be positive");
    if (!S.semi_standard()) throw input_error("veronese_semigroup: semigroup not semi-standard");
    if (k == 1) return S;
    const long kk = to_long(k, "veronese index");

    std::vector<Vec> found;
    std::vector<long> found_deg;
    auto reducible = [&](const Vec& p, long t) {
        for (size_t i = 0; i < found.size(); ++i) {
            if (found_deg[i] >= t) break;  // found is degree-ordered
            if (S.contains(vsub(p, found[i]))) return true;
        }
        return false;
    };

    // generators of the Veronese live below ceil(rt/k)+1; the window covers
    // that bound and is re-verified by the quiet scan itself
    long base_window = (S.max_generator_degree() + kk - 1) / kk + 1;
    long t = 1;
    long quiet = 0;
    long window = lim.window > 0 ? lim.window : base_window;
    while (true) {
        if (t > lim.max_degree)
            throw limit_error("veronese_semigroup: no closure by degree " +
                              std::to_string(lim.max_degree));
        bool fresh = false;
        for (const auto& p : S.degree_slice(kk * t)) {
            if (!reducible(p, t)) {
                found.push_back(p);
                found_deg.push_back(t);
                fresh = true;
            }
        }
        if (fresh) {
            quiet = 0;
            window = lim.window > 0
                         ? lim.window
                         : std::max<long>(base_window, found_deg.back());
        } else if (!found.empty()) {
            ++quiet;
            if (quiet >= window) break;
        }
        ++t;
    }

    Grading g = S.grading();
    g.divisor *= k;
    AffineSemigroup::Options opt;
    opt.assume_minimal = true;
    opt.normal = S.normal() == true ? S.normal() : std::nullopt;
    return AffineSemigroup(std::move(found), std::move(g), opt);
}

DegreeOneModule module_generators_over_degree_one(const AffineSemigroup& S,
                                                  const ScanLimits& lim) {
    if (!S.semi_standard())
        throw input_error("module_generators_over_degree_one: not semi-standard");
    std::vector<Vec> deg1;
    for (const auto& g : S.generators())
        if (S.degree_of(g) == 1) deg1.push_back(g);
    AffineSemigroup::Options opt;
    opt.assume_minimal = true;
    AffineSemigroup D(deg1, S.grading(), opt);

    DegreeOneModule out;
    out.generators.push_back(Vec(S.ambient_dim(), 0));
    out.rt = 0;
    long window = lim.window > 0 ? lim.window : std::max<long>(1, S.max_generator_degree());
    long quiet = 0;
    for (long t = 1;; ++t) {
        if (t > lim.max_degree)
            throw limit_error("module_generators_over_degree_one: no closure by degree " +
                              std::to_string(lim.max_degree));
        bool fresh = false;
        for (const auto& p : S.degree_slice(t)) {
            bool covered = false;
            for (const auto& m : out.generators) {
                Vec diff = vsub(p, m);
                Int dd = dot(D.grading().weights, diff);
                if (dd < 0) continue;
                if (D.contains(diff)) {
                    covered = true;
                    break;
                }
            }
            if (!covered) {
                out.generators.push_back(p);
                out.rt = t;
                fresh = true;
            }
        }
        quiet = fresh ? 0 : quiet + 1;
        if (quiet >= window) break;
    }
    return out;
}

}  // namespace ngtrace
