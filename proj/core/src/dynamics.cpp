#include "icefem/dynamics.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

#include <Eigen/Sparse>

#include "icefem/cr_space.hpp"
#include "icefem/parallel.hpp"
#include "icefem/rheology.hpp"

namespace icefem {

namespace {

// Tracer value at an edge: arithmetic mean over the adjacent cells.
double edge_tracer(const Mesh& mesh, const TracerField& q, std::size_t e) {
    const int c0 = mesh.edge_cells[e][0];
    const int c1 = mesh.edge_cells[e][1];
    if (c1 < 0) return q[static_cast<std::size_t>(c0)];
    return 0.5 * (q[static_cast<std::size_t>(c0)] + q[static_cast<std::size_t>(c1)]);
}

// (sigma, grad phi) residual for a general (possibly non-symmetric) per-cell
// tensor; same assembly as stress_divergence_residual.
VelocityField tensor_divergence_residual(const Mesh& mesh, const std::vector<Mat2>& sig) {
    VelocityField r(mesh.n_edges());
    for (std::size_t c = 0; c < mesh.n_cells(); ++c) {
        const Mat2& s = sig[c];
        for (int l = 0; l < 3; ++l) {
            const auto e = static_cast<std::size_t>(mesh.cell_edges[c][l]);
            const Vec2 n_out = mesh.outward_normal(static_cast<int>(c), l);
            const Vec2 sn{s.a11 * n_out.x + s.a12 * n_out.y,
                          s.a21 * n_out.x + s.a22 * n_out.y};
            const double scale =
                mesh.cell_area[c] * 2.0 / mesh.cell_height[c][static_cast<std::size_t>(l)];
            r.vn[e] += scale * dot(mesh.edge_normal[e], sn);
            r.vt[e] += scale * dot(mesh.edge_tangent[e], sn);
        }
    }
    return r;
}

} // namespace

// Factorization cache for the implicit penalty update. The penalty operator
// acts on the two Cartesian components independently with the same scalar
// matrix, so one factorization serves both (two right-hand-side columns).
struct PenaltyWorkspace {
    std::vector<int> index;     // edge -> interior index, -1 on the boundary
    std::vector<int> interior;  // interior index -> edge
    Eigen::SparseMatrix<double> mat;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
    bool analyzed = false;

    explicit PenaltyWorkspace(const Mesh& mesh) : index(mesh.n_edges(), -1) {
        for (std::size_t e = 0; e < mesh.n_edges(); ++e) {
            if (mesh.boundary_edge[e]) continue;
            index[e] = static_cast<int>(interior.size());
            interior.push_back(static_cast<int>(e));
        }
        mat.resize(static_cast<Eigen::Index>(interior.size()),
                   static_cast<Eigen::Index>(interior.size()));
    }

    void factorize(const std::vector<EdgeStencil>& stencils, const std::vector<double>& zeta_e,
                   double alpha_stab, const std::vector<double>& diag) {
        std::vector<Eigen::Triplet<double>> trip;
        trip.reserve(interior.size() + 16 * stencils.size());
        for (std::size_t i = 0; i < interior.size(); ++i)
            trip.emplace_back(static_cast<int>(i), static_cast<int>(i),
                              diag[static_cast<std::size_t>(interior[i])]);
        for (const auto& st : stencils) {
            const double w =
                2.0 * zeta_e[static_cast<std::size_t>(st.edge)] * alpha_stab / 3.0;
            for (int i = 0; i < 4; ++i) {
                const int ri = index[static_cast<std::size_t>(st.nbr[static_cast<std::size_t>(i)])];
                if (ri < 0) continue;
                for (int j = 0; j < 4; ++j) {
                    const int rj =
                        index[static_cast<std::size_t>(st.nbr[static_cast<std::size_t>(j)])];
                    if (rj < 0) continue;
                    trip.emplace_back(ri, rj,
                                      w * st.coeff[static_cast<std::size_t>(i)] *
                                          st.coeff[static_cast<std::size_t>(j)]);
                }
            }
        }
        mat.setFromTriplets(trip.begin(), trip.end());
        if (!analyzed) {
            ldlt.analyzePattern(mat);
            analyzed = true;
        }
        ldlt.factorize(mat);
    }
};

MomentumSolver::~MomentumSolver() = default;

// Velocity update with the penalty taken fully implicitly: solves
// (diag + S) v = rhs over the Cartesian midpoint values of the interior
// edges (homogeneous Dirichlet edges stay zero). Treating S implicitly keeps
// the update unconditionally stable without adding any damping to continuous
// (jump-free) velocity modes. The solver is preconditioned CG: the cached
// LDLT factorization (refreshed at `refresh`, i.e. once per outer step) is
// the preconditioner, so within a step only the drift of the coefficients
// between pseudo-iterations has to be corrected — a couple of iterations.
void MomentumSolver::solve_stabilized(const std::vector<double>& zeta_e,
                                      const std::vector<double>& diag,
                                      const std::vector<Vec2>& rhs, std::vector<Vec2>& v,
                                      bool refresh) const {
    if (!penalty_) penalty_ = std::make_unique<PenaltyWorkspace>(mesh_);
    PenaltyWorkspace& ws = *penalty_;
    if (refresh || !ws.analyzed) ws.factorize(stencils_, zeta_e, cfg_.alpha_stab, diag);

    const std::size_t n = mesh_.n_edges();
    const auto apply = [&](const std::vector<Vec2>& x, std::vector<Vec2>& y) {
        for (std::size_t e = 0; e < n; ++e)
            y[e] = mesh_.boundary_edge[e] ? Vec2{} : x[e] * diag[e];
        for (const auto& st : stencils_) {
            Vec2 j{};
            for (int i = 0; i < 4; ++i)
                j += st.coeff[static_cast<std::size_t>(i)] *
                     x[static_cast<std::size_t>(st.nbr[static_cast<std::size_t>(i)])];
            const double w =
                2.0 * zeta_e[static_cast<std::size_t>(st.edge)] * cfg_.alpha_stab / 3.0;
            for (int i = 0; i < 4; ++i) {
                const auto ei = static_cast<std::size_t>(st.nbr[static_cast<std::size_t>(i)]);
                if (!mesh_.boundary_edge[ei])
                    y[ei] += j * (w * st.coeff[static_cast<std::size_t>(i)]);
            }
        }
    };
    const auto precondition = [&](const std::vector<Vec2>& r, std::vector<Vec2>& z) {
        const auto m = static_cast<Eigen::Index>(ws.interior.size());
        Eigen::MatrixXd rc(m, 2);
        for (Eigen::Index i = 0; i < m; ++i) {
            const auto e = static_cast<std::size_t>(ws.interior[static_cast<std::size_t>(i)]);
            rc(i, 0) = r[e].x;
            rc(i, 1) = r[e].y;
        }
        const Eigen::MatrixXd zc = ws.ldlt.solve(rc);
        for (auto& x : z) x = Vec2{};
        for (Eigen::Index i = 0; i < m; ++i) {
            const auto e = static_cast<std::size_t>(ws.interior[static_cast<std::size_t>(i)]);
            z[e] = Vec2{zc(i, 0), zc(i, 1)};
        }
    };

    double b_sq = 0.0;
    for (std::size_t e = 0; e < n; ++e)
        if (!mesh_.boundary_edge[e]) b_sq += rhs[e].norm_sq();
    if (b_sq == 0.0) {
        for (auto& x : v) x = Vec2{};
        return;
    }
    const double tol_sq = 1e-24 * b_sq;

    std::vector<Vec2> r(n), p(n), z(n), Ap(n);
    apply(v, Ap);
    for (std::size_t e = 0; e < n; ++e)
        r[e] = mesh_.boundary_edge[e] ? Vec2{} : rhs[e] - Ap[e];
    precondition(r, z);
    double rz = 0.0;
    for (std::size_t e = 0; e < n; ++e) {
        p[e] = z[e];
        rz += dot(r[e], z[e]);
    }
    const int max_iters = 200;
    for (int it = 0; it < max_iters; ++it) {
        double r_sq = 0.0;
        for (std::size_t e = 0; e < n; ++e) r_sq += r[e].norm_sq();
        if (r_sq <= tol_sq) break;
        apply(p, Ap);
        double pAp = 0.0;
        for (std::size_t e = 0; e < n; ++e) pAp += dot(p[e], Ap[e]);
        if (pAp <= 0.0) break;
        const double a = rz / pAp;
        for (std::size_t e = 0; e < n; ++e) {
            v[e] += p[e] * a;
            r[e] -= Ap[e] * a;
        }
        precondition(r, z);
        double rz_new = 0.0;
        for (std::size_t e = 0; e < n; ++e) rz_new += dot(r[e], z[e]);
        const double beta = rz_new / rz;
        rz = rz_new;
        for (std::size_t e = 0; e < n; ++e) p[e] = z[e] + p[e] * beta;
    }
}

bool velocity_diverged(const VelocityField& v, double* max_speed) {
    double vmax = 0.0;
    bool bad = false;
    for (std::size_t e = 0; e < v.size(); ++e) {
        const double s = std::hypot(v.vn[e], v.vt[e]);
        if (!std::isfinite(s)) {
            bad = true;
            continue;
        }
        if (s > vmax) vmax = s;
    }
    if (max_speed) *max_speed = vmax;
    return bad || vmax > 1e3;
}

MomentumSolver::MomentumSolver(const Mesh& mesh, PhysParams phys, SolverConfig cfg,
                               ForcingConfig forcing)
    : mesh_(mesh), phys_(phys), cfg_(cfg), forcing_(std::move(forcing)),
      stencils_(build_stencils(mesh)), weight_(dof_weight(mesh)),
      zeta_cache_(mesh.n_cells(), 0.0) {}

void MomentumSolver::update_viscosities(const SimState& state, std::vector<double>& P,
                                        std::vector<double>& zeta,
                                        std::vector<double>& zeta_e) const {
    P.resize(mesh_.n_cells());
    zeta.resize(mesh_.n_cells());
    parallel_for(mesh_.n_cells(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t c = begin; c < end; ++c) {
            const Mat2 eps = cell_strain_rate(mesh_, state.v, static_cast<int>(c));
            P[c] = ice_strength(phys_, state.h[c], state.A[c]);
            zeta[c] = viscosities(P[c], delta(phys_, eps)).zeta;
        }
    });
    zeta_cache_ = zeta;
    zeta_e = edge_zeta(mesh_, zeta);
}

StepResult MomentumSolver::step(SolverKind kind, SimState& state) const {
    switch (kind) {
    case SolverKind::vp: return step_vp(state);
    case SolverKind::evp: return step_evp(state);
    case SolverKind::mevp: return step_mevp(state);
    }
    return {};
}

// Explicit-stress VP step: the new stress is evaluated at the old velocity,
// drag is semi-implicit, everything else explicit. Stable only for small k.
StepResult MomentumSolver::step_vp(SimState& state) const {
    std::vector<double> P, zeta, zeta_e;
    update_viscosities(state, P, zeta, zeta_e);

    for (std::size_t c = 0; c < mesh_.n_cells(); ++c) {
        const Mat2 eps = cell_strain_rate(mesh_, state.v, static_cast<int>(c));
        state.sigma.set(c, vp_stress_components(eps, zeta[c], P[c]).tensor());
    }
    const VelocityField r_div = stress_divergence_residual(mesh_, state.sigma);

    const double k = cfg_.k;
    const double t_new = state.t + k;
    const std::size_t n = mesh_.n_edges();
    std::vector<Vec2> rhs_c(n), warm(n);
    std::vector<double> diag_c(n, 1.0);
    VelocityField v_new(n);
    for (std::size_t e = 0; e < n; ++e) {
        if (mesh_.boundary_edge[e]) continue;
        const Vec2 X = mesh_.edge_midpoint[e];
        const Vec2 v_old = midpoint_value(mesh_, state.v, e);
        const double m = phys_.rho * edge_tracer(mesh_, state.h, e);
        Vec2 f{};
        double c_d = 0.0;
        if (forcing_.use_wind) f += wind_stress(phys_, forcing_.wind(X, t_new));
        const Vec2 v_w = forcing_.ocean(X);
        if (forcing_.use_ocean_drag) {
            const DragSplit d = forcing_.linear_drag
                ? ocean_drag_split_linear(phys_, v_w, forcing_.linear_drag_speed)
                : ocean_drag_split(phys_, v_old, v_w);
            f += d.explicit_part;
            c_d = d.coeff;
        }
        if (forcing_.use_coriolis)
            f += coriolis_tilt(phys_, v_old, v_w, edge_tracer(mesh_, state.h, e));
        const double w = weight_[e];
        const Vec2 r = mesh_.edge_normal[e] * r_div.vn[e] + mesh_.edge_tangent[e] * r_div.vt[e];
        const Vec2 rhs = w * (v_old * (m / k) + f) - r;
        const double dg = w * (m / k + c_d);
        if (!cfg_.stabilize) {
            const Vec2 v = rhs / dg;
            v_new.vn[e] = dot(v, mesh_.edge_normal[e]);
            v_new.vt[e] = dot(v, mesh_.edge_tangent[e]);
        } else {
            rhs_c[e] = rhs;
            diag_c[e] = dg;
            warm[e] = v_old;
        }
    }
    if (cfg_.stabilize) {
        solve_stabilized(zeta_e, diag_c, rhs_c, warm, true);
        for (std::size_t e = 0; e < n; ++e) {
            if (mesh_.boundary_edge[e]) continue;
            v_new.vn[e] = dot(warm[e], mesh_.edge_normal[e]);
            v_new.vt[e] = dot(warm[e], mesh_.edge_tangent[e]);
        }
    }
    state.v = v_new;
    state.t = t_new;

    StepResult res;
    res.diverged = velocity_diverged(state.v, &res.max_speed);
    return res;
}

// EVP: n_sub sub-cycles of length k_s advance the stress with the implicit
// closed-form update and the velocity explicitly (drag semi-implicit).
StepResult MomentumSolver::step_evp(SimState& state) const {
    const double k_s = cfg_.k_sub();
    std::vector<double> P, zeta, zeta_e;
    for (int s = 0; s < cfg_.n_sub; ++s) {
        update_viscosities(state, P, zeta, zeta_e);
        parallel_for(mesh_.n_cells(), [&](std::size_t begin, std::size_t end) {
            for (std::size_t c = begin; c < end; ++c) {
                const Mat2 eps = cell_strain_rate(mesh_, state.v, static_cast<int>(c));
                const auto prev = StressComponents::from_tensor(state.sigma.tensor(c));
                state.sigma.set(
                    c, evp_stress_step(prev, eps, zeta[c], P[c], k_s, cfg_.T_evp).tensor());
            }
        });
        const VelocityField r_div = stress_divergence_residual(mesh_, state.sigma);

        const double t_s = state.t + (s + 1) * k_s;
        const std::size_t n = mesh_.n_edges();
        std::vector<Vec2> rhs_c(n), warm(n);
        std::vector<double> diag_c(n, 1.0);
        VelocityField v_new(n);
        for (std::size_t e = 0; e < n; ++e) {
            if (mesh_.boundary_edge[e]) continue;
            const Vec2 X = mesh_.edge_midpoint[e];
            const Vec2 v_old = midpoint_value(mesh_, state.v, e);
            const double m = phys_.rho * edge_tracer(mesh_, state.h, e);
            Vec2 f{};
            double c_d = 0.0;
            if (forcing_.use_wind) f += wind_stress(phys_, forcing_.wind(X, t_s));
            const Vec2 v_w = forcing_.ocean(X);
            if (forcing_.use_ocean_drag) {
                const DragSplit d = forcing_.linear_drag
                    ? ocean_drag_split_linear(phys_, v_w, forcing_.linear_drag_speed)
                    : ocean_drag_split(phys_, v_old, v_w);
                f += d.explicit_part;
                c_d = d.coeff;
            }
            if (forcing_.use_coriolis)
                f += coriolis_tilt(phys_, v_old, v_w, edge_tracer(mesh_, state.h, e));
            const double w = weight_[e];
            const Vec2 r =
                mesh_.edge_normal[e] * r_div.vn[e] + mesh_.edge_tangent[e] * r_div.vt[e];
            const Vec2 rhs = w * (v_old * (m / k_s) + f) - r;
            const double dg = w * (m / k_s + c_d);
            if (!cfg_.stabilize) {
                const Vec2 v = rhs / dg;
                v_new.vn[e] = dot(v, mesh_.edge_normal[e]);
                v_new.vt[e] = dot(v, mesh_.edge_tangent[e]);
            } else {
                rhs_c[e] = rhs;
                diag_c[e] = dg;
                warm[e] = v_old;
            }
        }
        if (cfg_.stabilize) {
            solve_stabilized(zeta_e, diag_c, rhs_c, warm, s == 0);
            for (std::size_t e = 0; e < n; ++e) {
                if (mesh_.boundary_edge[e]) continue;
                v_new.vn[e] = dot(warm[e], mesh_.edge_normal[e]);
                v_new.vt[e] = dot(warm[e], mesh_.edge_tangent[e]);
            }
        }
        state.v = v_new;
    }
    state.t += cfg_.k;

    StepResult res;
    res.diverged = velocity_diverged(state.v, &res.max_speed);
    return res;
}

// mEVP: n_sub pseudo-time iterations whose fixed point is the backward-Euler
// VP step of length k. Stress relaxes with factor 1/alpha, velocity with
// damping beta; the physical time step k appears in both velocity terms.
StepResult MomentumSolver::step_mevp(SimState& state) const {
    const double k = cfg_.k;
    const double alpha = cfg_.alpha_mevp;
    const double beta = cfg_.beta_mevp;
    const double t_new = state.t + k;
    const VelocityField v_n = state.v;

    StepResult res;
    std::vector<double> P, zeta, zeta_e;
    for (int s = 0; s < cfg_.n_sub; ++s) {
        update_viscosities(state, P, zeta, zeta_e);
        parallel_for(mesh_.n_cells(), [&](std::size_t begin, std::size_t end) {
            for (std::size_t c = begin; c < end; ++c) {
                const Mat2 eps = cell_strain_rate(mesh_, state.v, static_cast<int>(c));
                const auto prev = StressComponents::from_tensor(state.sigma.tensor(c));
                state.sigma.set(c, mevp_stress_step(prev, eps, zeta[c], P[c], alpha).tensor());
            }
        });
        const VelocityField r_div = stress_divergence_residual(mesh_, state.sigma);

        const std::size_t n = mesh_.n_edges();
        std::vector<Vec2> rhs_c(n), warm(n);
        std::vector<double> diag_c(n, 1.0);
        VelocityField v_new(n);
        for (std::size_t e = 0; e < n; ++e) {
            if (mesh_.boundary_edge[e]) continue;
            const Vec2 X = mesh_.edge_midpoint[e];
            const Vec2 v_prev = midpoint_value(mesh_, state.v, e);
            const Vec2 v_outer = midpoint_value(mesh_, v_n, e);
            const double m = phys_.rho * edge_tracer(mesh_, state.h, e);
            Vec2 f{};
            double c_d = 0.0;
            if (forcing_.use_wind) f += wind_stress(phys_, forcing_.wind(X, t_new));
            const Vec2 v_w = forcing_.ocean(X);
            if (forcing_.use_ocean_drag) {
                const DragSplit d = forcing_.linear_drag
                    ? ocean_drag_split_linear(phys_, v_w, forcing_.linear_drag_speed)
                    : ocean_drag_split(phys_, v_prev, v_w);
                f += d.explicit_part;
                c_d = d.coeff;
            }
            if (forcing_.use_coriolis)
                f += coriolis_tilt(phys_, v_prev, v_w, edge_tracer(mesh_, state.h, e));
            const double w = weight_[e];
            const Vec2 r =
                mesh_.edge_normal[e] * r_div.vn[e] + mesh_.edge_tangent[e] * r_div.vt[e];
            const Vec2 rhs = w * ((v_prev * beta + v_outer) * (m / k) + f) - r;
            const double dg = w * (m * (1.0 + beta) / k + c_d);
            if (!cfg_.stabilize) {
                const Vec2 v = rhs / dg;
                v_new.vn[e] = dot(v, mesh_.edge_normal[e]);
                v_new.vt[e] = dot(v, mesh_.edge_tangent[e]);
            } else {
                rhs_c[e] = rhs;
                diag_c[e] = dg;
                warm[e] = v_prev;
            }
        }
        if (cfg_.stabilize) {
            solve_stabilized(zeta_e, diag_c, rhs_c, warm, s == 0);
            for (std::size_t e = 0; e < n; ++e) {
                if (mesh_.boundary_edge[e]) continue;
                v_new.vn[e] = dot(warm[e], mesh_.edge_normal[e]);
                v_new.vt[e] = dot(warm[e], mesh_.edge_tangent[e]);
            }
        }
        double diff_sq = 0.0, norm_sq = 0.0;
        for (std::size_t e = 0; e < n; ++e) {
            if (mesh_.boundary_edge[e]) continue;
            const Vec2 v_prev = midpoint_value(mesh_, state.v, e);
            const Vec2 v{v_new.vn[e] * mesh_.edge_normal[e].x +
                             v_new.vt[e] * mesh_.edge_tangent[e].x,
                         v_new.vn[e] * mesh_.edge_normal[e].y +
                             v_new.vt[e] * mesh_.edge_tangent[e].y};
            diff_sq += weight_[e] * (v - v_prev).norm_sq();
            norm_sq += weight_[e] * v.norm_sq();
        }
        state.v = v_new;
        res.pseudo_residual = norm_sq > 0.0 ? std::sqrt(diff_sq / norm_sq) : 0.0;
        res.pseudo_history.push_back(res.pseudo_residual);
    }
    state.t = t_new;
    res.diverged = velocity_diverged(state.v, &res.max_speed);
    return res;
}

StrainTestResult run_strain_test(const Mesh& mesh, RhsKind kind, bool stabilize,
                                 double Lx, double Ly, double zeta, double m,
                                 double k, int max_steps, double steady_tol,
                                 double alpha_stab) {
    const auto stencils = build_stencils(mesh);
    const auto weight = dof_weight(mesh);
    const std::vector<double> zeta_e(mesh.n_edges(), zeta);

    // Static load vector, Cartesian per DOF.
    std::vector<Vec2> load(mesh.n_edges());
    for (std::size_t e = 0; e < mesh.n_edges(); ++e) {
        const Vec2 X = mesh.edge_midpoint[e];
        load[e] = manufactured_rhs(kind, X.x, X.y, zeta, Lx, Ly) * weight[e];
    }

    StrainTestResult out;
    out.v = VelocityField(mesh.n_edges());
    std::vector<Mat2> sig(mesh.n_cells());
    for (out.steps = 0; out.steps < max_steps; ++out.steps) {
        for (std::size_t c = 0; c < mesh.n_cells(); ++c) {
            const Mat2 g = cell_gradient(mesh, out.v, static_cast<int>(c));
            sig[c] = (kind == RhsKind::grad_only ? g : g.symmetric_part()) * (0.5 * zeta);
        }
        const VelocityField r_div = tensor_divergence_residual(mesh, sig);
        VelocityField r_stab(mesh.n_edges());
        if (stabilize)
            r_stab = apply_stabilization(mesh, stencils, out.v, zeta_e, alpha_stab);

        double max_dv = 0.0, max_v = 0.0, max_v1 = 0.0;
        for (std::size_t e = 0; e < mesh.n_edges(); ++e) {
            if (mesh.boundary_edge[e]) continue;
            const Vec2 r = mesh.edge_normal[e] * (r_div.vn[e] + r_stab.vn[e]) +
                           mesh.edge_tangent[e] * (r_div.vt[e] + r_stab.vt[e]);
            const Vec2 dv = (load[e] - r) * (k / (m * weight[e]));
            out.v.vn[e] += dot(dv, mesh.edge_normal[e]);
            out.v.vt[e] += dot(dv, mesh.edge_tangent[e]);
            const Vec2 val = midpoint_value(mesh, out.v, e);
            max_dv = std::max(max_dv, dv.norm());
            max_v = std::max(max_v, val.norm());
            max_v1 = std::max(max_v1, std::abs(val.x));
        }
        out.max_v1 = max_v1;
        out.max_overshoot = std::max(out.max_overshoot, max_v1);
        if (!std::isfinite(max_v) || max_v > 1e6) {
            out.diverged = true;
            break;
        }
        if (out.steps > 0 && max_dv / k < steady_tol * max_v) {
            out.steady = true;
            ++out.steps;
            break;
        }
    }
    return out;
}

} // namespace icefem
