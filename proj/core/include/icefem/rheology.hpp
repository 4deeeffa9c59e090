#pragma once

#include "icefem/fields.hpp"
#include "icefem/mesh.hpp"
#include "icefem/params.hpp"

namespace icefem {

// Hibler ice strength P = P* h exp(-C (1-A)) [N/m].
double ice_strength(const PhysParams& p, double h, double A);

// Regularized total deformation
// Delta = sqrt(delta_min^2 + 2 e^-2 eps':eps' + tr(eps)^2), e = 2.
double delta(const PhysParams& p, const Mat2& eps);

struct Viscosities {
    double zeta = 0.0; // [N s / m]
    double eta = 0.0;  // zeta / e^2
};

Viscosities viscosities(double P, double Delta);

// VP constitutive law sigma = 2 eta eps + (zeta - eta) tr(eps) I - (P/2) I.
Mat2 vp_stress(const Mat2& eps, double zeta, double eta, double P);

// Stress in the component split sigma_1 = s11+s22, sigma_2 = s11-s22, sigma_12.
struct StressComponents {
    double s1 = 0.0, s2 = 0.0, s12 = 0.0;

    static StressComponents from_tensor(const Mat2& s) {
        return {s.a11 + s.a22, s.a11 - s.a22, 0.5 * (s.a12 + s.a21)};
    }
    Mat2 tensor() const {
        return {0.5 * (s1 + s2), s12, s12, 0.5 * (s1 - s2)};
    }
};

// VP law in component form for e = 2:
// s1 = 2 zeta (eps11+eps22) - P, s2 = (zeta/2)(eps11-eps22), s12 = (zeta/2) eps12.
StressComponents vp_stress_components(const Mat2& eps, double zeta, double P);

// One implicit EVP sub-step, solved in closed form per component.
StressComponents evp_stress_step(const StressComponents& prev, const Mat2& eps,
                                 double zeta, double P, double k_s, double T_evp);

// One mEVP relaxation step sigma^s = sigma^{s-1} + (sigma_VP - sigma^{s-1}) / alpha.
StressComponents mevp_stress_step(const StressComponents& prev, const Mat2& eps,
                                  double zeta, double P, double alpha);

// Per-edge viscosity for the stabilization: arithmetic mean of the adjacent
// cells' zeta (the single value on boundary edges).
std::vector<double> edge_zeta(const Mesh& mesh, const std::vector<double>& cell_zeta);

} // namespace icefem
