#pragma once
#include "ngtrace/polytope.hpp"
#include "ngtrace/trace.hpp"

namespace ngtrace {

// Hilbert basis of the cone over P, graded by the cone level
SemigroupPtr cone_semigroup(const LatticePolytope& P, const ScanLimits& lim = {});

// canonical module of a normal semigroup ring: interior cone lattice points
MonomialModule canonical_module(const SemigroupPtr& S, const ScanLimits& lim = {});
// anti-canonical module: anti-cone lattice points, scanned independently of
// inverse_module so the two routes can cross-validate each other
MonomialModule anticanonical_module(const SemigroupPtr& S, const MonomialModule& omega,
                                    const ScanLimits& lim = {});

MonomialModule canonical_module(const LatticePolytope& P, const ScanLimits& lim = {});
MonomialModule anticanonical_module(const LatticePolytope& P, const ScanLimits& lim = {});

// does S equal the saturation of its cone inside ZS?
bool is_normal(const AffineSemigroup& S, const ScanLimits& lim = {});

}  // namespace ngtrace
