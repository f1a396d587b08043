#pragma once
#include <optional>

#include "ngtrace/numeric.hpp"

namespace ngtrace {

// Sublattice of Z^n held as a row-style basis in Hermite normal form.
// Equal lattices always carry the identical basis matrix.
class IntegerLattice {
  public:
    IntegerLattice() = default;

    const std::vector<Vec>& basis() const { return basis_; }
    size_t rank() const { return basis_.size(); }
    size_t ambient_dim() const { return ambient_; }

    bool contains(const Vec& v) const;
    // integer coordinates of v in the basis, if v lies in the lattice
    std::optional<Vec> coordinates(const Vec& v) const;
    // rational coordinates of v in the basis, if v lies in the rational span
    std::optional<std::vector<Rat>> rational_coordinates(const Vec& v) const;

    friend IntegerLattice hnf_lattice(const std::vector<Vec>& generators);

  private:
    size_t ambient_ = 0;
    std::vector<Vec> basis_;       // HNF rows
    std::vector<size_t> pivots_;   // pivot column per row
};

IntegerLattice hnf_lattice(const std::vector<Vec>& generators);

}  // namespace ngtrace
