#pragma once

namespace icefem {

// Physical constants of the sea-ice momentum equation. The eccentricity of
// the elliptic yield curve is fixed to e = 2; all component formulas in the
// rheology use the resulting coefficients directly.
struct PhysParams {
    double rho = 900.0;       // sea-ice density [kg/m^3]
    double rho_a = 1.3;       // air density [kg/m^3]
    double rho_w = 1026.0;    // water density [kg/m^3]
    double C_a = 1.2e-3;      // air drag coefficient [-]
    double C_w = 5.5e-3;      // water drag coefficient [-]
    double f_c = 1.46e-4;     // Coriolis parameter [1/s]
    double P_star = 27.5e3;   // ice strength parameter [N/m^2]
    double C_conc = 20.0;     // ice concentration parameter [-]
    double delta_min = 2e-9;  // viscous regime threshold [1/s]
};

struct SolverConfig {
    double k = 600.0;         // outer time step [s]
    int n_sub = 100;          // sub-cycles / pseudo-iterations
    double T_evp = 100.0;     // EVP relaxation time [s]
    double alpha_mevp = 500.0;
    double beta_mevp = 500.0;
    bool stabilize = true;
    double alpha_stab = 1.0;

    double k_sub() const { return k / n_sub; }
};

} // namespace icefem
