#pragma once

#include <ostream>
#include <string>

#include "icefem/config.hpp"
#include "icefem/dynamics.hpp"
#include "icefem/forcing.hpp"
#include "icefem/mesh.hpp"
#include "icefem/params.hpp"

namespace icefem {

// A complete experiment description: domain, mesh width, solver, forcing
// preset and output policy. Built from a flat config file; every key has a
// default so partial configs are valid.
struct ScenarioConfig {
    std::string name = "channel"; // strain | channel | box
    double Lx = 500e3;
    double Ly = 500e3;
    double mesh_m = 50e3;
    std::string solver = "mevp"; // vp | evp | mevp
    SolverConfig solver_cfg;
    PhysParams phys;
    double T_total = 6.0 * 3600.0;
    bool advection = false;
    bool linear_drag = false;
    double linear_drag_speed = 0.1;
    double h0 = 1.0;
    int snap_every = 0; // steps between VTK snapshots; 0 writes only the last
    std::string run_dir = "run";
    double wind_period = 30.0 * 86400.0;
    // strain-test controls (explicit Euler on the constant-viscosity model)
    std::string strain_stress = "full"; // full | grad
    double strain_k = 2e-6;
    int strain_max_steps = 4000000;
    double steady_tol = 1e-8;
};

ScenarioConfig scenario_from_config(const Config& cfg);

SolverKind parse_solver(const std::string& name);

// Analytic forcing of the named scenario (ocean current, wind field).
ForcingConfig scenario_forcing(const ScenarioConfig& cfg);

// Initial tracers: box/channel use h = h0, A = x / Lx; strain uses A = 1.
void scenario_tracers(const ScenarioConfig& cfg, const Mesh& mesh, TracerField& h,
                      TracerField& A);

struct ScenarioResult {
    int steps = 0;
    double t_final = 0.0;
    bool diverged = false;
    bool steady = false;     // strain only
    double energy = 0.0;     // zeta_min * int ||grad v||^2 dt
    double zeta_min = 0.0;
    double grad_sq_integral = 0.0;
    double max_speed = 0.0;  // final step
    double max_v1 = 0.0;     // final max_e |v^1(E_e)|
    double overshoot = 0.0;  // running max of max_v1
    double h_mass_initial = 0.0;
    double h_mass_final = 0.0;
    double max_face_cfl = 0.0;
    double last_pseudo_residual = 0.0;
    VelocityField v;
    TracerField h; // final tracers (empty for the strain scenario)
    TracerField A;
};

// Runs the scenario and writes <run_dir>/trace.csv, snap_<step>.vtk and
// summary.txt. Progress lines go to *log when given. Stops early on solver
// divergence (recorded in the result, still written to summary.txt).
ScenarioResult run_scenario(const ScenarioConfig& cfg, std::ostream* log = nullptr);

} // namespace icefem
