#pragma once
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "ngtrace/semigroup.hpp"

namespace ngtrace {

using SemigroupPtr = std::shared_ptr<const AffineSemigroup>;

// Graded monomial fractional ideal: finitely many generators inside the group
// lattice ZS, pairwise irredundant (g - g' never lies in S).
class MonomialModule {
  public:
    MonomialModule() = default;

    const std::vector<Vec>& generators() const { return gens_; }
    const AffineSemigroup& ambient() const { return *ambient_; }
    const SemigroupPtr& ambient_ptr() const { return ambient_; }
    Int indeg() const { return indeg_; }
    Int rt() const { return rt_; }

    friend MonomialModule validate_module(SemigroupPtr ambient, std::vector<Vec> raw_gens);
    friend MonomialModule module_from_minimal(SemigroupPtr ambient, std::vector<Vec> gens);

  private:
    SemigroupPtr ambient_;
    std::vector<Vec> gens_;  // lex sorted
    Int indeg_, rt_;
};

// canonical irredundant form; rejects generators outside ZS
MonomialModule validate_module(SemigroupPtr ambient, std::vector<Vec> raw_gens);
// trusted constructor for generators an internal scan already minimalized
MonomialModule module_from_minimal(SemigroupPtr ambient, std::vector<Vec> gens);

// degree-k part of J^{-1} = { a : a + J subset R }
std::vector<Vec> inverse_slice(const MonomialModule& J, const Int& k);
MonomialModule inverse_module(const MonomialModule& J, const ScanLimits& lim = {});

// m in tr(J) = J . J^{-1}; exact, no generator closure needed
bool trace_membership(const Vec& m, const MonomialModule& J);

bool is_gorenstein(const MonomialModule& omega);

struct CheckResult {
    bool verdict;
    std::vector<Vec> missing;  // monomials that fail the trace containment
};

// tr(omega) contains the maximal ideal?
CheckResult is_nearly_gorenstein(const MonomialModule& omega);
// tr(omega) contains every extremal-ray monomial?
CheckResult satisfies_natural(const MonomialModule& omega);

enum class TriBool { yes, no, unknown };

struct PuncturedResult {
    TriBool verdict;
    std::map<Vec, long> witness_powers;  // generator -> least power inside the trace
    std::vector<Vec> impossible;         // rays provably missed by the trace
    std::vector<Vec> unresolved;
    long power_bound;
};

PuncturedResult punctured_gorenstein(const MonomialModule& omega, long power_bound = 32);

struct ModuleStats {
    Int a_invariant;  // -indeg
    Int rt;           // max generator degree
};

ModuleStats module_stats(const MonomialModule& omega);

// generators over the Veronese ambient Sk of the degree-multiples-of-k part
MonomialModule veronese_module(const MonomialModule& J, const Int& k, SemigroupPtr Sk,
                               const ScanLimits& lim = {});

// socle degree s(R/I) for an m-primary monomial ideal I given by gens in S
Int socle_of_artinian_quotient(const AffineSemigroup& S, const std::vector<Vec>& ideal_gens,
                               long power_bound = 32, const ScanLimits& lim = {});

struct ThresholdConstants {
    Int b;         // rt of the semigroup over its degree-one part
    Int a_abs;     // |a(R)|
    Int rt_abs;    // |rt(omega)|
    Int socle;     // s(R^(b) / degree-one trace part)
};

struct Thresholds {
    std::optional<Int> standard_threshold;  // standard graded only: s(R/tr_1 R) + 1
    Int k_R = 0;                            // headline Veronese threshold
    Int k_strict = 0;                      // value of the strict recipe
    ThresholdConstants used;
    Int literal_rt_semigroup = 0;           // rt computed from the definition
    std::vector<std::string> notes;
};

// Veronese nearly-Gorenstein thresholds.  When `constants` is given, the
// formulas are evaluated on those numbers instead of the computed ones and
// discrepancies with the literal computation are flagged in the notes.
Thresholds ng_thresholds(const MonomialModule& omega,
                         const std::optional<ThresholdConstants>& constants = {},
                         const ScanLimits& lim = {});

// Hilbert-function check of a canonical-module candidate against the
// degreewise expansion of (-1)^dim Hilb_R(1/t); false rejects the fixture
bool duality_validate(const MonomialModule& omega, long depth, const ScanLimits& lim = {});

struct PropertyReport {
    bool gorenstein;
    CheckResult nearly_gorenstein;
    CheckResult natural;
    PuncturedResult punctured;
    bool minimal_multiplicity;
    bool level;
    bool h_top_is_one;
    HilbertData hilbert;
    bool assume_cm;
};

// full verdict set; enforces the monotone implication chain and the h-vector
// couplings, raising consistency_error when the data contradicts them
PropertyReport property_report(const MonomialModule& omega, bool assume_cm,
                               long power_bound = 32, const ScanLimits& lim = {});

}  // namespace ngtrace
