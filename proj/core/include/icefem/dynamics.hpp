#pragma once

#include <memory>
#include <vector>

#include "icefem/fields.hpp"
#include "icefem/forcing.hpp"
#include "icefem/mesh.hpp"
#include "icefem/params.hpp"
#include "icefem/stabilization.hpp"

namespace icefem {

enum class SolverKind { vp, evp, mevp };

// Full model state advanced by the momentum/transport loop.
struct SimState {
    VelocityField v;
    StressField sigma; // sub-cycle stress memory (EVP / mEVP)
    TracerField h;
    TracerField A;
    double t = 0.0;
};

struct StepResult {
    bool diverged = false;
    double max_speed = 0.0;
    // mEVP only: relative pseudo-velocity change of the last iteration and
    // the full per-iteration history of the step.
    double pseudo_residual = 0.0;
    std::vector<double> pseudo_history;
};

// One momentum step of length cfg.k. Owns the precomputed stabilization
// stencils and DOF weights for a fixed mesh.
struct PenaltyWorkspace; // factorization cache for the implicit penalty solve

class MomentumSolver {
public:
    MomentumSolver(const Mesh& mesh, PhysParams phys, SolverConfig cfg, ForcingConfig forcing);
    ~MomentumSolver();

    StepResult step(SolverKind kind, SimState& state) const;

    // Cell viscosities zeta(v, h, A) of the last step, for the stabilization
    // energy diagnostic and VTK output.
    const std::vector<double>& cell_zeta() const { return zeta_cache_; }
    const std::vector<EdgeStencil>& stencils() const { return stencils_; }

    const PhysParams& phys() const { return phys_; }
    const SolverConfig& config() const { return cfg_; }

private:
    StepResult step_vp(SimState& state) const;
    StepResult step_evp(SimState& state) const;
    StepResult step_mevp(SimState& state) const;

    // Per-cell P, zeta and per-edge zeta for the current velocity/tracers.
    void update_viscosities(const SimState& state, std::vector<double>& P,
                            std::vector<double>& zeta, std::vector<double>& zeta_e) const;

    // Solves (diag + S(zeta_e)) v = rhs for the Cartesian midpoint values of
    // the interior edges (implicit penalty update). `v` carries the warm
    // start. With `refresh` the cached factorization used as preconditioner
    // is rebuilt from the current coefficients; subsequent calls reuse it.
    void solve_stabilized(const std::vector<double>& zeta_e, const std::vector<double>& diag,
                          const std::vector<Vec2>& rhs, std::vector<Vec2>& v,
                          bool refresh) const;

    const Mesh& mesh_;
    PhysParams phys_;
    SolverConfig cfg_;
    ForcingConfig forcing_;
    std::vector<EdgeStencil> stencils_;
    std::vector<double> weight_;  // consistent DOF weights
    std::vector<double> h_edge_scale_; // adjacency count for edge averages
    mutable std::vector<double> zeta_cache_;
    mutable std::unique_ptr<PenaltyWorkspace> penalty_;
};

// Sanity check used after every step: finite DOFs and speeds below 1 km/s.
bool velocity_diverged(const VelocityField& v, double* max_speed = nullptr);

// Explicit forward-Euler integrator for the manufactured constant-viscosity
// test m dv/dt - div sigma(v) + S(v) = R on [0,Lx] x [0,Ly], with
// sigma = (zeta/2) eps(v) ("grad_only" forcing) or the symmetric VP form
// without pressure ("full" forcing). Runs until the steady criterion
// ||v^n - v^{n-1}|| / k < tol ||v^n||_inf or max_steps.
struct StrainTestResult {
    VelocityField v;
    double max_v1 = 0.0;       // max over edge midpoints of the first component
    double max_overshoot = 0.0; // max over time of max_v1
    int steps = 0;
    bool steady = false;
    bool diverged = false;
};

StrainTestResult run_strain_test(const Mesh& mesh, RhsKind kind, bool stabilize,
                                 double Lx, double Ly, double zeta, double m,
                                 double k, int max_steps, double steady_tol = 1e-8,
                                 double alpha_stab = 1.0);

} // namespace icefem
