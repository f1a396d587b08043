#pragma once
#include <optional>

#include "ngtrace/enumerate.hpp"
#include "ngtrace/numeric.hpp"

namespace ngtrace {

// facet inequality  normal . x >= -height  with a primitive inner normal
struct Facet {
    Vec normal;
    Int height;
};

// Lattice polytope as vertex list plus, when full-dimensional, an irredundant
// facet presentation.  Lower-dimensional hulls (points, segments inside a
// bigger space) keep an empty facet list; they appear as floor/remainder/
// bracket polytopes and as Minkowski summands.
class LatticePolytope {
  public:
    // convex hull of arbitrary points; computes facets when full-dimensional
    static LatticePolytope hull(const std::vector<Vec>& points, size_t hull_limit = 6);
    // facet presentation: requires the points to span R^d affinely
    static LatticePolytope facet_presentation(const std::vector<Vec>& points,
                                              size_t hull_limit = 6);

    const std::vector<Vec>& vertices() const { return vertices_; }
    const std::vector<Facet>& facets() const { return facets_; }
    size_t ambient_dim() const { return ambient_; }
    size_t dim() const { return dim_; }
    bool full_dimensional() const { return dim_ == ambient_; }

    bool contains(const Vec& p) const;  // needs facets

  private:
    size_t ambient_ = 0;
    size_t dim_ = 0;
    std::vector<Vec> vertices_;  // lex sorted
    std::vector<Facet> facets_;
};

enum class Region { closed, interior, anti };

// lattice points of the level-k slice of the (closed/open/anti) cone over P
std::vector<Vec> dilation_points(const LatticePolytope& P, const Int& k, Region region);

// least k >= 1 such that the k-th dilation has interior lattice points
Int codegree(const LatticePolytope& P);

LatticePolytope minkowski_sum(const LatticePolytope& A, const LatticePolytope& B);

struct PolytopeTriple {
    std::optional<LatticePolytope> floor;      // empty exactly when codegree > 1
    std::optional<LatticePolytope> remainder;  // can be empty from dimension 4 on
    LatticePolytope bracket;                   // never empty: codegree definition
    Int codegree;
};

PolytopeTriple floor_remainder_bracket(const LatticePolytope& P);

struct DecompositionResult {
    bool holds;  // false outright when the remainder polytope is empty
    LatticePolytope bracket;
    std::optional<LatticePolytope> remainder;
};

// does P equal bracket + remainder?  On success the facet descriptions of the
// two summands are verified against the shifted facet systems of P.
DecompositionResult decomposition_check(const LatticePolytope& P);

// integer decomposition property; bound < 0 selects the sufficient default
// max(2, dim-1)
bool is_idp(const LatticePolytope& P, long bound = -1);

struct ProductFactorization {
    std::vector<std::vector<size_t>> blocks;  // coordinate partition
    std::vector<size_t> constant_coords;      // dropped singleton directions
    std::vector<LatticePolytope> factors;     // projections onto the blocks
};

// finest coordinate-block factorization of a (0,1)-polytope into a product
ProductFactorization product_factorization(const LatticePolytope& P);

// vertices of { x : normals[i] . x >= rhs[i] }, which must be bounded
std::vector<Vec> vertices_of_inequalities(const std::vector<Vec>& normals,
                                          const std::vector<Rat>& rhs);

}  // namespace ngtrace
