#include "icefem/rheology.hpp"

#include <cmath>

namespace icefem {

double ice_strength(const PhysParams& p, double h, double A) {
    return p.P_star * h * std::exp(-p.C_conc * (1.0 - A));
}

double delta(const PhysParams& p, const Mat2& eps) {
    const double tr = eps.trace();
    const Mat2 dev = eps - Mat2::identity() * (0.5 * tr);
    // e = 2: 2 e^-2 = 1/2
    return std::sqrt(p.delta_min * p.delta_min + 0.5 * ddot(dev, dev) + tr * tr);
}

Viscosities viscosities(double P, double Delta) {
    const double zeta = P / (2.0 * Delta);
    return {zeta, zeta / 4.0};
}

Mat2 vp_stress(const Mat2& eps, double zeta, double eta, double P) {
    return eps * (2.0 * eta) + Mat2::identity() * ((zeta - eta) * eps.trace() - 0.5 * P);
}

StressComponents vp_stress_components(const Mat2& eps, double zeta, double P) {
    return {2.0 * zeta * (eps.a11 + eps.a22) - P,
            0.5 * zeta * (eps.a11 - eps.a22),
            0.5 * zeta * eps.a12};
}

StressComponents evp_stress_step(const StressComponents& prev, const Mat2& eps,
                                 double zeta, double P, double k_s, double T_evp) {
    const double e1 = eps.a11 + eps.a22;
    const double e2 = eps.a11 - eps.a22;
    const double e12 = eps.a12;
    StressComponents s;
    s.s1 = (prev.s1 / k_s + zeta * e1 / T_evp - 0.5 * P / T_evp) / (1.0 / k_s + 0.5 / T_evp);
    s.s2 = (prev.s2 / k_s + zeta * e2 / T_evp) / (1.0 / k_s + 2.0 / T_evp);
    s.s12 = (prev.s12 / k_s + zeta * e12 / T_evp) / (1.0 / k_s + 2.0 / T_evp);
    return s;
}

StressComponents mevp_stress_step(const StressComponents& prev, const Mat2& eps,
                                  double zeta, double P, double alpha) {
    const StressComponents vp = vp_stress_components(eps, zeta, P);
    return {prev.s1 + (vp.s1 - prev.s1) / alpha,
            prev.s2 + (vp.s2 - prev.s2) / alpha,
            prev.s12 + (vp.s12 - prev.s12) / alpha};
}

std::vector<double> edge_zeta(const Mesh& mesh, const std::vector<double>& cell_zeta) {
    std::vector<double> z(mesh.n_edges(), 0.0);
    for (std::size_t e = 0; e < mesh.n_edges(); ++e) {
        const int c0 = mesh.edge_cells[e][0];
        const int c1 = mesh.edge_cells[e][1];
        z[e] = (c1 < 0) ? cell_zeta[static_cast<std::size_t>(c0)]
                        : 0.5 * (cell_zeta[static_cast<std::size_t>(c0)] +
                                 cell_zeta[static_cast<std::size_t>(c1)]);
    }
    return z;
}

} // namespace icefem
