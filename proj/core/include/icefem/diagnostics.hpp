#pragma once

#include <string>
#include <vector>

#include "icefem/fields.hpp"
#include "icefem/mesh.hpp"
#include "icefem/params.hpp"

namespace icefem {

// Running weighted-H1 energy E(v) = int_0^T zeta_min ||grad v||^2 dt,
// accumulated with left rectangles: one add() per completed step of length k
// using the velocity at the start of the step.
struct EnergyTrace {
    double value = 0.0;

    void add(const Mesh& mesh, const VelocityField& v, double zeta_min, double k);
};

// Snapshot form: zeta_min ||grad v||^2 at one instant.
double weighted_h1_rate(const Mesh& mesh, const VelocityField& v, double zeta_min);

// Regularized total deformation Delta per cell, for output files.
std::vector<double> total_deformation(const Mesh& mesh, const VelocityField& v,
                                      const PhysParams& p);

// Smallest generalized eigenvalue lambda of  a(v,v) = lambda ||grad v||^2
// over the CR space with both DOFs zeroed on boundary edges, where
// a(v,v) = ||eps(v)||^2, plus sum_e ||J_e||^2 / 3 when with_stabilization is
// set (the unit-weight edge-jump form). The Korn constant is 1/lambda.
// Computed by inverse iteration on dense matrices; converges when the
// eigenvalue changes by less than rtol relatively, capped at max_iters.
struct KornEstimate {
    double lambda_min = 0.0;
    double korn_constant = 0.0; // 1 / lambda_min
    int iterations = 0;
    bool converged = false;
};

KornEstimate estimate_korn_constant(const Mesh& mesh, bool with_stabilization,
                                    double rtol = 1e-8, int max_iters = 10000);

// Poincare constant c_p with ||v|| <= c_p ||grad v|| on the same constrained
// space (lumped L2 norm), from the matching generalized eigenvalue problem.
double poincare_constant(const Mesh& mesh, double rtol = 1e-8, int max_iters = 10000);

// A-priori stability bound coefficients for the linear-drag model without
// advection. With gamma = T/4 weights as below, a ||v(T)||^2 + the dissipation
// terms are controlled by b ||v||^2 and c E(v)-type terms:
//   a = rho h T / 4 + rho h / (2 gamma)
//   b = rho_w C_w1 + rho h / T + gamma rho h / 2
//   c = c_p zeta_min / (2 c_k T) + T / (4 gamma2)
// Defaults gamma = T/2 and gamma2 = rho_w C_w1. The report is only meaningful
// for linear drag and frozen tracers; valid is false otherwise.
struct BoundReport {
    bool valid = false;
    std::string reason;
    double a = 0.0, b = 0.0, c = 0.0;
    double gamma = 0.0, gamma2 = 0.0;
    double c_p = 0.0, c_k = 0.0, zeta_min = 0.0;
};

BoundReport theorem_bound_report(const PhysParams& p, double h_ice, double T,
                                 double zeta_min, double c_p, double c_k,
                                 double linear_drag_speed, bool linear_drag,
                                 bool advection_on);

} // namespace icefem
