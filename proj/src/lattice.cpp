#include "ngtrace/lattice.hpp"

#include <algorithm>

namespace ngtrace {

IntegerLattice hnf_lattice(const std::vector<Vec>& generators) {
    if (generators.empty()) throw input_error("hnf_lattice: empty generator list");
    const size_t n = generators[0].size();
    for (const auto& g : generators)
        if (g.size() != n) throw input_error("hnf_lattice: dimension mismatch");

    std::vector<Vec> m = generators;
    size_t r = 0;  // rows above r are finished
    for (size_t col = 0; col < n && r < m.size(); ++col) {
        // euclid the column entries below r down to a single nonzero row
        while (true) {
            size_t best = m.size();
            for (size_t i = r; i < m.size(); ++i) {
                if (m[i][col] == 0) continue;
                if (best == m.size() || cmp(abs(m[i][col]), abs(m[best][col])) < 0) best = i;
            }
            if (best == m.size()) break;  // column clear below r
            std::swap(m[r], m[best]);
            bool others = false;
            for (size_t i = r + 1; i < m.size(); ++i) {
                if (m[i][col] == 0) continue;
                others = true;
                Int q = floor_div(m[i][col], m[r][col]);
                for (size_t j = 0; j < n; ++j) m[i][j] -= q * m[r][j];
            }
            if (!others) break;
        }
        if (m[r][col] == 0) continue;
        if (m[r][col] < 0)
            for (size_t j = 0; j < n; ++j) m[r][j] = -m[r][j];
        // reduce the entries above the pivot into [0, pivot)
        for (size_t i = 0; i < r; ++i) {
            if (m[i][col] == 0) continue;
            Int q = floor_div(m[i][col], m[r][col]);
            for (size_t j = 0; j < n; ++j) m[i][j] -= q * m[r][j];
        }
        ++r;
    }

    IntegerLattice L;
    L.ambient_ = n;
    for (size_t i = 0; i < r; ++i) {
        L.basis_.push_back(m[i]);
        size_t p = 0;
        while (m[i][p] == 0) ++p;
        L.pivots_.push_back(p);
    }
    return L;
}

bool IntegerLattice::contains(const Vec& v) const {
    return coordinates(v).has_value();
}

std::optional<Vec> IntegerLattice::coordinates(const Vec& v) const {
    if (v.size() != ambient_) throw input_error("lattice_contains: dimension mismatch");
    Vec w = v;
    Vec coords(basis_.size());
    for (size_t i = 0; i < basis_.size(); ++i) {
        const size_t p = pivots_[i];
        if (w[p] % basis_[i][p] != 0) return std::nullopt;
        Int c = w[p] / basis_[i][p];
        for (size_t j = 0; j < ambient_; ++j) w[j] -= c * basis_[i][j];
        coords[i] = c;
    }
    if (!is_zero(w)) return std::nullopt;
    return coords;
}

std::optional<std::vector<Rat>> IntegerLattice::rational_coordinates(const Vec& v) const {
    if (v.size() != ambient_) throw input_error("rational_coordinates: dimension mismatch");
    std::vector<Rat> w(ambient_);
    for (size_t j = 0; j < ambient_; ++j) w[j] = v[j];
    std::vector<Rat> coords(basis_.size());
    for (size_t i = 0; i < basis_.size(); ++i) {
        const size_t p = pivots_[i];
        Rat c = w[p] / Rat(basis_[i][p]);
        c.canonicalize();
        for (size_t j = 0; j < ambient_; ++j) {
            w[j] -= c * Rat(basis_[i][j]);
            w[j].canonicalize();
        }
        coords[i] = c;
    }
    for (const auto& x : w)
        if (x != 0) return std::nullopt;
    return coords;
}

}  // namespace ngtrace
