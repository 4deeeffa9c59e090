#pragma once

#include <array>
#include <vector>

#include "icefem/fields.hpp"
#include "icefem/mesh.hpp"

namespace icefem {

// Coupling data of one interior edge: the 4 surrounding edges (the other two
// edges of each adjacent cell) with the signed trace coefficient c_i, so that
// the jump along the edge is [v_h](t) = (sum_i c_i V_i) (1 - 2t) with V_i the
// Cartesian midpoint value at stencil edge i. The edge's own basis function
// drops out (its jump vanishes identically along the edge).
struct EdgeStencil {
    int edge = -1;
    std::array<int, 4> nbr{};
    std::array<double, 4> coeff{};
};

// One stencil per interior edge; boundary edges carry no penalty.
std::vector<EdgeStencil> build_stencils(const Mesh& mesh);

// Jump amplitude J_e = sum_i c_i V_i of the velocity across an interior edge;
// int_e ||[v]||^2 ds = (|e|/3) ||J_e||^2.
Vec2 edge_jump(const Mesh& mesh, const VelocityField& v, const EdgeStencil& st);

// Residual of the penalty form S(v, phi) = sum_e 2 zeta_e (alpha/|e|) int_e [v][phi] ds.
// The edge integrals reduce to +-|e|/3, so stencil DOF j receives
// (2 zeta_e alpha / 3) c_j J_e, projected onto its (n, tau) frame.
VelocityField apply_stabilization(const Mesh& mesh, const std::vector<EdgeStencil>& stencils,
                                  const VelocityField& v, const std::vector<double>& zeta_e,
                                  double alpha_stab);

// Diagonal of the penalty operator per edge DOF (identical for the normal
// and tangential component): d_e = sum over stencils containing e of
// 2 zeta alpha / 3. Used to treat the penalty semi-implicitly in the
// sub-cycling solvers (Jacobi splitting; the fixed point is unchanged).
std::vector<double> stabilization_diagonal(const Mesh& mesh,
                                           const std::vector<EdgeStencil>& stencils,
                                           const std::vector<double>& zeta_e, double alpha_stab);

// Quadratic form value S(v, v) = sum_e (2 zeta_e alpha / 3) ||J_e||^2 >= 0.
double stabilization_energy(const Mesh& mesh, const std::vector<EdgeStencil>& stencils,
                            const VelocityField& v, const std::vector<double>& zeta_e,
                            double alpha_stab);

} // namespace icefem
