#pragma once
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>

#include "ngtrace/lattice.hpp"
#include "ngtrace/numeric.hpp"

namespace ngtrace {

// deg(v) = weights . v / divisor; the divisor tracks Veronese regrading so the
// ambient coordinates never change
struct Grading {
    Vec weights;
    Int divisor = 1;

    static Grading last_coordinate(size_t dim);
    bool graded(const Vec& v) const;  // divisor | weights . v
    Int degree(const Vec& v) const;
};

// knobs for every scan that stops via a verified closure window
struct ScanLimits {
    long max_degree = 400;
    long window = 0;  // 0 = automatic choice
};

struct SemigroupOptions {
    bool assume_minimal = false;  // skip re-minimalization
    std::optional<bool> normal;   // known normality, if any
};

class AffineSemigroup {
  public:
    using Options = SemigroupOptions;

    AffineSemigroup(std::vector<Vec> generators, Grading grading,
                    SemigroupOptions opt = SemigroupOptions());

    const std::vector<Vec>& generators() const { return gens_; }
    const Grading& grading() const { return grading_; }
    size_t ambient_dim() const { return ambient_; }
    long rank() const { return (long)group_.rank(); }  // Krull dimension of k[S]
    const IntegerLattice& group() const { return group_; }
    bool semi_standard() const { return semi_standard_; }
    std::optional<bool> normal() const { return normal_; }
    long max_generator_degree() const { return max_gen_degree_; }

    Int degree_of(const Vec& v) const { return grading_.degree(v); }

    bool contains(const Vec& v) const;
    bool pointed() const { return true; }  // construction rejects non-pointed input

    // all semigroup elements of the given degree, lex sorted
    std::vector<Vec> degree_slice(long k) const;

    // minimal generators sitting on extreme rays of the cone (one per ray)
    std::vector<Vec> extremal_generators() const;
    const std::vector<bool>& extremal_flags() const { return extremal_; }

    // lattice points of the cone over S at the given degree, with every facet
    // inequality shifted by `shift` (0 closed, +1 interior, -1 anti cone)
    std::vector<Vec> cone_slice(const Int& degree, int shift) const;

    // cone membership of an arbitrary ambient vector (rational span test)
    bool cone_contains(const Vec& v) const;

    // facet normals of the cone in span coordinates, plus evaluation on
    // arbitrary group elements
    const std::vector<Vec>& cone_normals() const { return cone_normals_; }
    Vec span_coordinates(const Vec& v) const;  // requires v in ZS
    std::vector<Int> facet_values(const Vec& v) const;

  private:
    struct SliceCache {
        std::mutex mu;
        std::vector<std::set<Vec>> dp;           // degree-by-degree, non-normal route
        std::map<long, std::vector<Vec>> poly;   // polyhedral route, normal semigroups
    };

    void build_cone_data();
    void minimalize();
    const std::set<Vec>& slice_locked(long k) const;

    size_t ambient_ = 0;
    std::vector<Vec> gens_;
    std::vector<long> gen_degrees_;
    long max_gen_degree_ = 0;
    Grading grading_;
    IntegerLattice group_;
    std::vector<Vec> span_gens_;
    std::vector<Vec> cone_normals_;  // span coordinates, primitive, n.x >= 0
    std::vector<bool> extremal_;
    bool semi_standard_ = false;
    std::optional<bool> normal_;

    // copies of a semigroup share the memoized slices
    std::shared_ptr<SliceCache> cache_;
};

struct HilbertData {
    long dim;
    std::vector<Int> h;  // h_0 .. h_s
    long socle_degree;
    Int a_invariant;
    Int multiplicity;
    size_t embdim;
    bool minimal_multiplicity;
    bool assume_cm;
    long window_used;
};

HilbertData hilbert_data(const AffineSemigroup& S, bool assume_cm, const ScanLimits& lim = {});

// the k-th Veronese subsemigroup, same ambient coordinates, regraded by deg/k
AffineSemigroup veronese_semigroup(const AffineSemigroup& S, const Int& k,
                                   const ScanLimits& lim = {});

struct DegreeOneModule {
    std::vector<Vec> generators;  // minimal module generators over <degree-1 part>
    long rt;                      // max generator degree
};

DegreeOneModule module_generators_over_degree_one(const AffineSemigroup& S,
                                                  const ScanLimits& lim = {});

}  // namespace ngtrace
