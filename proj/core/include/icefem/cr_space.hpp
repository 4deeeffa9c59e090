#pragma once

#include <functional>

#include "icefem/fields.hpp"
#include "icefem/mesh.hpp"

namespace icefem {

// Velocity vector at the midpoint of edge e, reconstructed from the DOFs.
inline Vec2 midpoint_value(const Mesh& mesh, const VelocityField& v, std::size_t e) {
    return mesh.edge_normal[e] * v.vn[e] + mesh.edge_tangent[e] * v.vt[e];
}

// Midpoint interpolation: vn_i = f(E_i).n_i, vt_i = f(E_i).tau_i.
VelocityField interpolate(const Mesh& mesh, const std::function<Vec2(Vec2)>& f);

// Piecewise-constant gradient of the CR field on one cell,
// grad v|_K = sum_i (vn_i n_i + vt_i tau_i) (n_i^out)^T (2/h_i).
Mat2 cell_gradient(const Mesh& mesh, const VelocityField& v, int cell);

// Symmetric part of cell_gradient.
Mat2 cell_strain_rate(const Mesh& mesh, const VelocityField& v, int cell);

// Diagonal of the mass operator, entry sum_{K contains e} |K|/6
// (|K|/3 on interior edges of a uniform mesh, |K|/6 on boundary edges).
std::vector<double> lumped_mass_diagonal(const Mesh& mesh);

// Consistent DOF quadrature weight sum_{K contains e} |K|/3, the exact value
// of both int phi_e^2 and int phi_e. Used by the time-stepping schemes so
// that pointwise force terms balance the quadrature-free stress divergence.
std::vector<double> dof_weight(const Mesh& mesh);

VelocityField apply_mass(const Mesh& mesh, const VelocityField& v);

// Assembles (sigma, grad phi) summed over cells: for each cell K and edge j,
// |K| (2/h_j) n_j . (sigma n_j^out) into the normal residual and
// |K| (2/h_j) tau_j . (sigma n_j^out) into the tangential residual.
VelocityField stress_divergence_residual(const Mesh& mesh, const StressField& s);

// Zeroes both DOFs on boundary edges (homogeneous Dirichlet).
void apply_dirichlet(const Mesh& mesh, VelocityField& v);

// sum_K |K| ||grad v||_F^2 and sum_K |K| ||eps(v)||_F^2
double grad_norm_sq(const Mesh& mesh, const VelocityField& v);
double strain_norm_sq(const Mesh& mesh, const VelocityField& v);

// Lumped L2 norm squared sum_e w_e |v_e|^2 with the consistent weights.
double velocity_norm_sq(const Mesh& mesh, const VelocityField& v);

} // namespace icefem
