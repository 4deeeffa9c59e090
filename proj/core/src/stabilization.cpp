#include "icefem/stabilization.hpp"

#include "icefem/cr_space.hpp"

namespace icefem {

std::vector<EdgeStencil> build_stencils(const Mesh& mesh) {
    std::vector<EdgeStencil> stencils;
    stencils.reserve(mesh.n_edges());
    for (std::size_t e = 0; e < mesh.n_edges(); ++e) {
        if (mesh.boundary_edge[e]) continue;
        EdgeStencil st;
        st.edge = static_cast<int>(e);
        const int vb = mesh.edges[e][1];
        int slot = 0;
        for (int side = 0; side < 2; ++side) {
            const int c = mesh.edge_cells[e][static_cast<std::size_t>(side)];
            const double side_sign = (side == 0) ? 1.0 : -1.0;
            const auto cs = static_cast<std::size_t>(c);
            for (int l = 0; l < 3; ++l) {
                const int ei = mesh.cell_edges[cs][static_cast<std::size_t>(l)];
                if (ei == static_cast<int>(e)) continue;
                // vertex of the cell opposite to edge ei; it is an endpoint of e
                const auto& k = mesh.cells[cs];
                int opposite = -1;
                for (int vloc = 0; vloc < 3; ++vloc) {
                    const int v = k[static_cast<std::size_t>(vloc)];
                    const auto& ev = mesh.edges[static_cast<std::size_t>(ei)];
                    if (v != ev[0] && v != ev[1]) opposite = v;
                }
                // trace of phi_ei along e, parametrized va -> vb, is s (1-2t)
                const double s = (opposite == vb) ? 1.0 : -1.0;
                st.nbr[static_cast<std::size_t>(slot)] = ei;
                st.coeff[static_cast<std::size_t>(slot)] = side_sign * s;
                ++slot;
            }
        }
        stencils.push_back(st);
    }
    return stencils;
}

Vec2 edge_jump(const Mesh& mesh, const VelocityField& v, const EdgeStencil& st) {
    Vec2 j;
    for (int i = 0; i < 4; ++i)
        j += st.coeff[static_cast<std::size_t>(i)] *
             midpoint_value(mesh, v, static_cast<std::size_t>(st.nbr[static_cast<std::size_t>(i)]));
    return j;
}

VelocityField apply_stabilization(const Mesh& mesh, const std::vector<EdgeStencil>& stencils,
                                  const VelocityField& v, const std::vector<double>& zeta_e,
                                  double alpha_stab) {
    VelocityField r(mesh.n_edges());
    for (const auto& st : stencils) {
        const Vec2 j = edge_jump(mesh, v, st);
        const double w = 2.0 * zeta_e[static_cast<std::size_t>(st.edge)] * alpha_stab / 3.0;
        for (int i = 0; i < 4; ++i) {
            const auto ei = static_cast<std::size_t>(st.nbr[static_cast<std::size_t>(i)]);
            const Vec2 contrib = j * (w * st.coeff[static_cast<std::size_t>(i)]);
            r.vn[ei] += dot(contrib, mesh.edge_normal[ei]);
            r.vt[ei] += dot(contrib, mesh.edge_tangent[ei]);
        }
    }
    return r;
}

std::vector<double> stabilization_diagonal(const Mesh& mesh,
                                           const std::vector<EdgeStencil>& stencils,
                                           const std::vector<double>& zeta_e, double alpha_stab) {
    std::vector<double> d(mesh.n_edges(), 0.0);
    for (const auto& st : stencils) {
        const double w = 2.0 * zeta_e[static_cast<std::size_t>(st.edge)] * alpha_stab / 3.0;
        for (int i = 0; i < 4; ++i)
            d[static_cast<std::size_t>(st.nbr[static_cast<std::size_t>(i)])] +=
                w; // |coeff| = 1 and the jump is isotropic in (n, tau)
    }
    return d;
}

double stabilization_energy(const Mesh& mesh, const std::vector<EdgeStencil>& stencils,
                            const VelocityField& v, const std::vector<double>& zeta_e,
                            double alpha_stab) {
    double s = 0.0;
    for (const auto& st : stencils)
        s += 2.0 * zeta_e[static_cast<std::size_t>(st.edge)] * alpha_stab / 3.0 *
             edge_jump(mesh, v, st).norm_sq();
    return s;
}

} // namespace icefem
