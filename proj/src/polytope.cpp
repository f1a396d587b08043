#include "ngtrace/polytope.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ngtrace/lattice.hpp"

namespace ngtrace {

namespace {

// fraction-free determinant (Bareiss)
Int det_int(std::vector<Vec> m) {
    const size_t n = m.size();
    if (n == 0) return 1;
    Int denom = 1;
    int sign = 1;
    for (size_t k = 0; k < n - 1; ++k) {
        if (m[k][k] == 0) {
            size_t s = k + 1;
            while (s < n && m[s][k] == 0) ++s;
            if (s == n) return 0;
            std::swap(m[k], m[s]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / denom;
            }
        denom = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

size_t rank_of(const std::vector<Vec>& rows, size_t dim) {
    std::vector<std::vector<Rat>> m;
    for (const auto& r : rows) {
        std::vector<Rat> row(dim);
        for (size_t j = 0; j < dim; ++j) row[j] = r[j];
        m.push_back(std::move(row));
    }
    size_t rank = 0;
    for (size_t col = 0; col < dim && rank < m.size(); ++col) {
        size_t piv = rank;
        while (piv < m.size() && m[piv][col] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[rank], m[piv]);
        for (size_t i = 0; i < m.size(); ++i) {
            if (i == rank || m[i][col] == 0) continue;
            Rat f = m[i][col] / m[rank][col];
            f.canonicalize();
            for (size_t j = col; j < dim; ++j) {
                m[i][j] -= f * m[rank][j];
                m[i][j].canonicalize();
            }
        }
        ++rank;
    }
    return rank;
}

size_t affine_rank(const std::vector<Vec>& pts) {
    if (pts.empty()) return 0;
    std::vector<Vec> diffs;
    for (size_t i = 1; i < pts.size(); ++i) diffs.push_back(vsub(pts[i], pts[0]));
    if (diffs.empty()) return 0;
    return rank_of(diffs, pts[0].size());
}

// primitive normal of the hyperplane through d affinely independent points,
// via signed maximal minors of the difference matrix
Vec hyperplane_normal(const std::vector<Vec>& pts, size_t d) {
    std::vector<Vec> diffs;
    for (size_t i = 1; i < d; ++i) diffs.push_back(vsub(pts[i], pts[0]));
    Vec n(d);
    for (size_t j = 0; j < d; ++j) {
        std::vector<Vec> minor;
        for (const auto& r : diffs) {
            Vec row;
            for (size_t c = 0; c < d; ++c)
                if (c != j) row.push_back(r[c]);
            minor.push_back(std::move(row));
        }
        Int dt = det_int(std::move(minor));
        n[j] = (j % 2 == 0) ? dt : -dt;
    }
    return primitive(n);
}

struct HullFacet {
    Vec n;   // primitive, n . x >= c for all hull points
    Int c;
};

bool facet_less(const HullFacet& a, const HullFacet& b) {
    if (a.n != b.n) return a.n < b.n;
    return a.c < b.c;
}

// beneath-beyond hull of full-dimensional point set (dim >= 2)
std::vector<HullFacet> hull_facets(const std::vector<Vec>& pts, size_t d) {
    // initial simplex
    std::vector<size_t> simplex{0};
    std::vector<Vec> chosen{pts[0]};
    for (size_t i = 1; i < pts.size() && simplex.size() < d + 1; ++i) {
        chosen.push_back(pts[i]);
        if (affine_rank(chosen) == simplex.size())
            simplex.push_back(i);
        else
            chosen.pop_back();
    }
    if (simplex.size() != d + 1) throw input_error("hull: points are not full-dimensional");

    // rational interior reference point: centroid of the simplex
    std::vector<Rat> ref(d, Rat(0));
    for (size_t i : simplex)
        for (size_t j = 0; j < d; ++j) ref[j] += Rat(pts[i][j]);
    for (size_t j = 0; j < d; ++j) {
        ref[j] /= Rat((long)(d + 1));
        ref[j].canonicalize();
    }

    auto oriented = [&](Vec n, const Vec& base) -> std::optional<HullFacet> {
        Int c = dot(n, base);
        Rat at_ref(0);
        for (size_t j = 0; j < d; ++j) at_ref += Rat(n[j]) * ref[j];
        if (at_ref == Rat(c)) return std::nullopt;  // plane through the interior point
        if (at_ref < Rat(c)) {
            n = vneg(n);
            c = -c;
        }
        return HullFacet{std::move(n), std::move(c)};
    };

    std::set<std::pair<Vec, Int>> seen;
    std::vector<HullFacet> facets;
    auto push_facet = [&](HullFacet f) {
        if (seen.insert({f.n, f.c}).second) facets.push_back(std::move(f));
    };

    for (size_t skip = 0; skip <= d; ++skip) {
        std::vector<Vec> face;
        for (size_t i = 0; i <= d; ++i)
            if (i != skip) face.push_back(pts[simplex[i]]);
        Vec n = hyperplane_normal(face, d);
        if (is_zero(n)) throw consistency_error("hull: degenerate simplex facet");
        auto f = oriented(std::move(n), face[0]);
        if (!f) throw consistency_error("hull: degenerate initial simplex");
        push_facet(std::move(*f));
    }

    std::vector<size_t> processed = simplex;
    for (size_t idx = 0; idx < pts.size(); ++idx) {
        if (std::find(simplex.begin(), simplex.end(), idx) != simplex.end()) continue;
        const Vec& p = pts[idx];
        std::vector<size_t> vis, invis;
        for (size_t f = 0; f < facets.size(); ++f)
            (dot(facets[f].n, p) < facets[f].c ? vis : invis).push_back(f);
        if (vis.empty()) {
            processed.push_back(idx);
            continue;
        }
        // tight point sets of the current facets among processed points,
        // sorted so the ridge intersections below are well defined
        auto tight = [&](size_t f) {
            std::vector<size_t> t;
            for (size_t q : processed)
                if (dot(facets[f].n, pts[q]) == facets[f].c) t.push_back(q);
            std::sort(t.begin(), t.end());
            return t;
        };
        std::map<size_t, std::vector<size_t>> tight_cache;
        for (size_t f : vis) tight_cache[f] = tight(f);
        for (size_t g : invis) tight_cache[g] = tight(g);

        std::vector<HullFacet> created;
        std::set<std::pair<Vec, Int>> created_seen;
        for (size_t f : vis)
            for (size_t g : invis) {
                std::vector<size_t> ridge;
                std::set_intersection(tight_cache[f].begin(), tight_cache[f].end(),
                                      tight_cache[g].begin(), tight_cache[g].end(),
                                      std::back_inserter(ridge));
                if (ridge.size() < d - 1) continue;
                std::vector<Vec> rpts;
                for (size_t q : ridge) rpts.push_back(pts[q]);
                if (affine_rank(rpts) != d - 2) continue;
                // d - 1 affinely independent ridge points plus p span the new facet
                std::vector<Vec> span{rpts[0]};
                for (size_t i = 1; i < rpts.size() && span.size() < d - 1; ++i) {
                    span.push_back(rpts[i]);
                    if (affine_rank(span) != span.size() - 1) span.pop_back();
                }
                span.push_back(p);
                Vec n = hyperplane_normal(span, d);
                if (is_zero(n)) continue;
                auto nf = oriented(std::move(n), p);
                if (!nf) continue;
                // degenerate inputs can pair non-adjacent facets; a genuine new
                // facet must support every point processed so far
                bool supports = true;
                for (size_t q : processed)
                    if (dot(nf->n, pts[q]) < nf->c) {
                        supports = false;
                        break;
                    }
                if (!supports) continue;
                if (created_seen.insert({nf->n, nf->c}).second)
                    created.push_back(std::move(*nf));
            }
        std::vector<HullFacet> next;
        for (size_t f = 0; f < facets.size(); ++f)
            if (std::find(vis.begin(), vis.end(), f) == vis.end())
                next.push_back(std::move(facets[f]));
        seen.clear();
        for (auto& f : next) seen.insert({f.n, f.c});
        facets = std::move(next);
        for (auto& f : created) push_facet(std::move(f));
        processed.push_back(idx);
    }
    std::sort(facets.begin(), facets.end(), facet_less);
    return facets;
}

}  // namespace

LatticePolytope LatticePolytope::hull(const std::vector<Vec>& points, size_t hull_limit) {
    if (points.empty()) throw input_error("hull: no points");
    const size_t n = points[0].size();
    if (n == 0) throw input_error("hull: zero-dimensional ambient space");
    for (const auto& p : points)
        if (p.size() != n) throw input_error("hull: dimension mismatch");
    if (n > hull_limit) throw input_error("hull: ambient dimension exceeds the hull limit");

    std::vector<Vec> pts(points);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    LatticePolytope P;
    P.ambient_ = n;
    const size_t r = affine_rank(pts);
    P.dim_ = r;

    if (r == 0) {
        P.vertices_ = pts;
        return P;
    }

    if (r < n) {
        // work in exact coordinates on the affine lattice span, hull there,
        // then pull the vertex selection back
        std::vector<Vec> diffs;
        for (size_t i = 1; i < pts.size(); ++i) diffs.push_back(vsub(pts[i], pts[0]));
        IntegerLattice L = hnf_lattice(diffs);
        std::vector<Vec> reduced;
        for (const auto& p : pts) {
            auto c = L.coordinates(vsub(p, pts[0]));
            if (!c) throw consistency_error("hull: point outside its own affine lattice");
            reduced.push_back(*c);
        }
        LatticePolytope Q = hull(reduced, hull_limit);
        std::set<Vec> keep(Q.vertices_.begin(), Q.vertices_.end());
        for (size_t i = 0; i < pts.size(); ++i)
            if (keep.count(reduced[i])) P.vertices_.push_back(pts[i]);
        std::sort(P.vertices_.begin(), P.vertices_.end());
        return P;
    }

    if (n == 1) {
        P.vertices_ = {pts.front(), pts.back()};
        if (P.vertices_[0] == P.vertices_[1]) P.vertices_.pop_back();
        P.facets_.push_back({Vec{-1}, pts.back()[0]});
        P.facets_.push_back({Vec{1}, -pts.front()[0]});
        return P;
    }

    auto hf = hull_facets(pts, n);
    for (auto& f : hf) P.facets_.push_back({f.n, -f.c});

    // vertices: points whose tight facet normals span the whole space
    for (const auto& p : pts) {
        std::vector<Vec> tight_normals;
        for (const auto& f : P.facets_)
            if (dot(f.normal, p) == -f.height) tight_normals.push_back(f.normal);
        if (tight_normals.size() >= n && rank_of(tight_normals, n) == n)
            P.vertices_.push_back(p);
    }
    std::sort(P.vertices_.begin(), P.vertices_.end());

    // every facet must be tight at >= d affinely independent vertices
    for (const auto& f : P.facets_) {
        std::vector<Vec> t;
        for (const auto& v : P.vertices_)
            if (dot(f.normal, v) == -f.height) t.push_back(v);
        if (t.size() < n || affine_rank(t) != n - 1)
            throw consistency_error("hull: facet with too few tight vertices");
    }
    return P;
}

LatticePolytope LatticePolytope::facet_presentation(const std::vector<Vec>& points,
                                                    size_t hull_limit) {
    LatticePolytope P = hull(points, hull_limit);
    if (!P.full_dimensional())
        throw input_error("facet_presentation: points are not full-dimensional");
    return P;
}

bool LatticePolytope::contains(const Vec& p) const {
    if (facets_.empty()) throw input_error("contains: no facet presentation");
    for (const auto& f : facets_)
        if (dot(f.normal, p) < -f.height) return false;
    return true;
}

std::vector<Vec> dilation_points(const LatticePolytope& P, const Int& k, Region region) {
    if (!P.full_dimensional()) throw input_error("dilation_points: polytope not full-dimensional");
    if (region != Region::anti && k < 0)
        throw input_error("dilation_points: negative dilation requires the anti region");
    LinearSystem sys(P.ambient_dim());
    for (const auto& f : P.facets()) {
        Int rhs = -k * f.height;
        if (region == Region::interior) rhs += 1;
        if (region == Region::anti) rhs -= 1;
        sys.add_ge(f.normal, Rat(rhs));
    }
    return enumerate_slice(sys);
}

Int codegree(const LatticePolytope& P) {
    const size_t d = P.ambient_dim();
    for (Int k = 1; k <= Int(d) + 1; ++k)
        if (!dilation_points(P, k, Region::interior).empty()) return k;
    throw consistency_error("codegree: no interior points up to dim+1");
}

LatticePolytope minkowski_sum(const LatticePolytope& A, const LatticePolytope& B) {
    if (A.ambient_dim() != B.ambient_dim()) throw input_error("minkowski_sum: dimension mismatch");
    std::vector<Vec> sums;
    for (const auto& a : A.vertices())
        for (const auto& b : B.vertices()) sums.push_back(vadd(a, b));
    return LatticePolytope::hull(sums);
}

PolytopeTriple floor_remainder_bracket(const LatticePolytope& P) {
    Int a = codegree(P);
    PolytopeTriple T{std::nullopt, std::nullopt, LatticePolytope(), a};
    auto floor_pts = dilation_points(P, 1, Region::interior);
    if (!floor_pts.empty()) T.floor = LatticePolytope::hull(floor_pts);
    auto rem_pts = dilation_points(P, Int(1) - a, Region::anti);
    if (!rem_pts.empty()) T.remainder = LatticePolytope::hull(rem_pts);
    auto br_pts = dilation_points(P, a, Region::interior);
    if (br_pts.empty()) throw consistency_error("bracket polytope is empty");
    T.bracket = LatticePolytope::hull(br_pts);
    return T;
}

std::vector<Vec> vertices_of_inequalities(const std::vector<Vec>& normals,
                                          const std::vector<Rat>& rhs) {
    const size_t m = normals.size();
    const size_t d = normals.empty() ? 0 : normals[0].size();
    std::set<Vec> verts;
    std::vector<size_t> idx(d);
    // all d-subsets of constraints; keep integral basic solutions that satisfy
    // every inequality
    std::vector<size_t> comb;
    auto solve = [&](const std::vector<size_t>& rows_sel) {
        std::vector<std::vector<Rat>> M(d, std::vector<Rat>(d + 1));
        for (size_t i = 0; i < d; ++i) {
            for (size_t j = 0; j < d; ++j) M[i][j] = Rat(normals[rows_sel[i]][j]);
            M[i][d] = rhs[rows_sel[i]];
        }
        // gaussian elimination
        for (size_t col = 0, row = 0; col < d && row < d; ++col) {
            size_t piv = row;
            while (piv < d && M[piv][col] == 0) ++piv;
            if (piv == d) return;  // singular
            std::swap(M[row], M[piv]);
            for (size_t i = 0; i < d; ++i) {
                if (i == row || M[i][col] == 0) continue;
                Rat f = M[i][col] / M[row][col];
                f.canonicalize();
                for (size_t j = col; j <= d; ++j) {
                    M[i][j] -= f * M[row][j];
                    M[i][j].canonicalize();
                }
            }
            ++row;
        }
        Vec x(d);
        for (size_t i = 0; i < d; ++i) {
            Rat v = M[i][d] / M[i][i];
            v.canonicalize();
            if (v.get_den() != 1) return;  // non-integral basic point
            x[i] = v.get_num();
        }
        for (size_t r = 0; r < m; ++r) {
            Rat lhs(0);
            for (size_t j = 0; j < d; ++j) lhs += Rat(normals[r][j]) * Rat(x[j]);
            if (lhs < rhs[r]) return;
        }
        verts.insert(std::move(x));
    };
    std::vector<size_t> sel(d);
    auto rec = [&](auto&& self, size_t start, size_t k) -> void {
        if (k == d) {
            solve(sel);
            return;
        }
        for (size_t i = start; i < m; ++i) {
            sel[k] = i;
            self(self, i + 1, k + 1);
        }
    };
    if (d > 0 && m >= d) rec(rec, 0, 0);
    return {verts.begin(), verts.end()};
}

DecompositionResult decomposition_check(const LatticePolytope& P) {
    PolytopeTriple T = floor_remainder_bracket(P);
    if (!T.remainder) return {false, T.bracket, std::nullopt};
    LatticePolytope sum = minkowski_sum(T.bracket, *T.remainder);
    bool holds = sum.vertices() == P.vertices();
    if (holds) {
        // the inclusions of the shifted facet systems must be equalities
        auto check_equal = [&](const LatticePolytope& Q, const Int& shift_mult,
                               const Int& offset) {
            std::vector<Vec> normals;
            std::vector<Rat> rhs;
            for (const auto& f : P.facets()) {
                normals.push_back(f.normal);
                rhs.push_back(Rat(shift_mult * f.height + offset));
            }
            auto hv = vertices_of_inequalities(normals, rhs);
            if (hv != Q.vertices())
                throw consistency_error("decomposition: shifted facet system mismatch");
        };
        // [P] inside { n_F(x) >= 1 - a h_F },  {P} inside { n_F(x) >= (a-1) h_F - 1 }
        check_equal(T.bracket, -T.codegree, Int(1));
        check_equal(*T.remainder, T.codegree - 1, Int(-1));
    }
    return {holds, T.bracket, T.remainder};
}

bool is_idp(const LatticePolytope& P, long bound) {
    if (!P.full_dimensional()) throw input_error("is_idp: polytope not full-dimensional");
    const long d = (long)P.ambient_dim();
    if (bound < 0) bound = std::max<long>(2, d - 1);
    auto base = dilation_points(P, 1, Region::closed);
    std::set<Vec> reach(base.begin(), base.end());
    for (long k = 2; k <= bound; ++k) {
        std::set<Vec> next;
        for (const auto& a : reach)
            for (const auto& b : base) next.insert(vadd(a, b));
        auto target = dilation_points(P, k, Region::closed);
        for (const auto& t : target)
            if (!next.count(t)) return false;
        reach = {target.begin(), target.end()};
    }
    return true;
}

ProductFactorization product_factorization(const LatticePolytope& P) {
    const size_t d = P.ambient_dim();
    for (const auto& v : P.vertices())
        for (const auto& x : v)
            if (x != 0 && x != 1) throw input_error("product_factorization: not a (0,1)-polytope");

    ProductFactorization out;
    std::vector<size_t> live;
    for (size_t j = 0; j < d; ++j) {
        bool constant = true;
        for (const auto& v : P.vertices())
            if (v[j] != P.vertices()[0][j]) {
                constant = false;
                break;
            }
        (constant ? out.constant_coords : live).push_back(j);
    }

    auto project = [&](const std::vector<size_t>& coords) {
        std::set<Vec> pr;
        for (const auto& v : P.vertices()) {
            Vec w;
            for (size_t j : coords) w.push_back(v[j]);
            pr.insert(std::move(w));
        }
        return pr;
    };

    auto splits = [&](const std::vector<size_t>& coords, const std::set<Vec>& proj,
                      std::vector<size_t>& A, std::vector<size_t>& B) -> bool {
        const size_t k = coords.size();
        if (k <= 1) return false;
        for (unsigned long mask = 1; mask < (1ul << (k - 1)); ++mask) {
            A.clear();
            B.clear();
            for (size_t i = 0; i < k; ++i)
                ((mask >> i) & 1 ? A : B).push_back(coords[i]);
            auto pa = project(A);
            auto pb = project(B);
            if (pa.size() * pb.size() != proj.size()) continue;
            // the projection must be the full product
            std::set<Vec> prod;
            std::map<size_t, size_t> pos;
            for (size_t i = 0; i < k; ++i) pos[coords[i]] = i;
            bool ok = true;
            for (const auto& a : pa) {
                for (const auto& b : pb) {
                    Vec w(k);
                    for (size_t i = 0; i < A.size(); ++i) w[pos[A[i]]] = a[i];
                    for (size_t i = 0; i < B.size(); ++i) w[pos[B[i]]] = b[i];
                    if (!proj.count(w)) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) break;
            }
            if (ok) return true;
        }
        return false;
    };

    auto rec = [&](auto&& self, std::vector<size_t> coords) -> void {
        auto proj = project(coords);
        std::vector<size_t> A, B;
        if (splits(coords, proj, A, B)) {
            self(self, A);
            self(self, B);
        } else {
            out.blocks.push_back(coords);
        }
    };
    if (!live.empty()) rec(rec, live);
    std::sort(out.blocks.begin(), out.blocks.end());

    for (const auto& block : out.blocks) {
        auto proj = project(block);
        out.factors.push_back(
            LatticePolytope::facet_presentation({proj.begin(), proj.end()}));
    }
    return out;
}

}  // namespace ngtrace
