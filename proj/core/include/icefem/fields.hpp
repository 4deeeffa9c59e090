#pragma once

#include <cstddef>
#include <vector>

#include "icefem/types.hpp"

namespace icefem {

// Crouzeix-Raviart velocity: per edge, the normal and tangential coefficient
// of the midpoint value, v_h = sum_i (vn_i n_i + vt_i tau_i) phi_i.
struct VelocityField {
    std::vector<double> vn; // normal components [m/s]
    std::vector<double> vt; // tangential components [m/s]

    VelocityField() = default;
    explicit VelocityField(std::size_t n_edges) : vn(n_edges, 0.0), vt(n_edges, 0.0) {}

    std::size_t size() const { return vn.size(); }
};

// Per-cell symmetric stress tensor stored as (s11, s12, s22) [N/m].
struct StressField {
    std::vector<double> s11, s12, s22;

    StressField() = default;
    explicit StressField(std::size_t n_cells)
        : s11(n_cells, 0.0), s12(n_cells, 0.0), s22(n_cells, 0.0) {}

    std::size_t size() const { return s11.size(); }

    Mat2 tensor(std::size_t c) const { return {s11[c], s12[c], s12[c], s22[c]}; }
    void set(std::size_t c, const Mat2& m) {
        s11[c] = m.a11;
        s12[c] = 0.5 * (m.a12 + m.a21);
        s22[c] = m.a22;
    }
};

// One scalar per cell (mean thickness h in meters, concentration A in [0,1]).
using TracerField = std::vector<double>;

} // namespace icefem
