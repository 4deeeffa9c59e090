#pragma once

#include <array>
#include <random>

#include "icefem/cr_space.hpp"
#include "icefem/fields.hpp"
#include "icefem/mesh.hpp"

namespace test_helpers {

using namespace icefem;

inline VelocityField random_velocity(const Mesh& mesh, unsigned seed, bool zero_boundary = true) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    VelocityField v(mesh.n_edges());
    for (std::size_t e = 0; e < mesh.n_edges(); ++e) {
        if (zero_boundary && mesh.boundary_edge[e]) continue;
        v.vn[e] = dist(rng);
        v.vt[e] = dist(rng);
    }
    return v;
}

// Barycentric coordinates of p in cell c; independent of the mesh topology
// helpers used by the library.
inline std::array<double, 3> barycentric(const Mesh& mesh, std::size_t c, Vec2 p) {
    const Vec2 a = mesh.vertices[static_cast<std::size_t>(mesh.cells[c][0])];
    const Vec2 b = mesh.vertices[static_cast<std::size_t>(mesh.cells[c][1])];
    const Vec2 d = mesh.vertices[static_cast<std::size_t>(mesh.cells[c][2])];
    const double det = cross(b - a, d - a);
    const double l1 = cross(b - p, d - p) / det;
    const double l2 = cross(d - p, a - p) / det;
    return {l1, l2, 1.0 - l1 - l2};
}

// Evaluate the CR field inside cell c at point p from the basis definition
// phi_l = 1 - 2 lambda_{opposite vertex of local edge l}.
inline Vec2 evaluate_in_cell(const Mesh& mesh, const VelocityField& v, std::size_t c, Vec2 p) {
    const auto lam = barycentric(mesh, c, p);
    Vec2 out{};
    for (int l = 0; l < 3; ++l) {
        const auto e = static_cast<std::size_t>(mesh.cell_edges[c][static_cast<std::size_t>(l)]);
        // find the vertex of cell c that is not an endpoint of edge e
        int opp = -1;
        for (int k = 0; k < 3; ++k) {
            const int vtx = mesh.cells[c][static_cast<std::size_t>(k)];
            if (vtx != mesh.edges[e][0] && vtx != mesh.edges[e][1]) opp = k;
        }
        const double phi = 1.0 - 2.0 * lam[static_cast<std::size_t>(opp)];
        out += midpoint_value(mesh, v, e) * phi;
    }
    return out;
}

} // namespace test_helpers
