#include "icefem/diagnostics.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "icefem/cr_space.hpp"
#include "icefem/rheology.hpp"
#include "icefem/stabilization.hpp"

namespace icefem {

void EnergyTrace::add(const Mesh& mesh, const VelocityField& v, double zeta_min, double k) {
    value += k * weighted_h1_rate(mesh, v, zeta_min);
}

double weighted_h1_rate(const Mesh& mesh, const VelocityField& v, double zeta_min) {
    return zeta_min * grad_norm_sq(mesh, v);
}

std::vector<double> total_deformation(const Mesh& mesh, const VelocityField& v,
                                      const PhysParams& p) {
    std::vector<double> out(mesh.n_cells());
    for (std::size_t c = 0; c < mesh.n_cells(); ++c)
        out[c] = delta(p, cell_strain_rate(mesh, v, static_cast<int>(c)));
    return out;
}

namespace {

// Cartesian DOF numbering of the constrained space: interior edge e gets
// columns 2*idx[e] (x component) and 2*idx[e]+1 (y component) of the midpoint
// value; boundary DOFs are eliminated.
std::vector<int> interior_index(const Mesh& mesh, int& n_interior) {
    std::vector<int> idx(mesh.n_edges(), -1);
    n_interior = 0;
    for (std::size_t e = 0; e < mesh.n_edges(); ++e)
        if (!mesh.boundary_edge[e]) idx[e] = n_interior++;
    return idx;
}

// Per-cell gradient of the basis function of local edge l when the midpoint
// value is the Cartesian unit vector d: (d) (n_out)^T (2/h_l).
Mat2 basis_gradient(const Mesh& mesh, std::size_t c, int l, const Vec2& d) {
    const Vec2 n_out = mesh.outward_normal(static_cast<int>(c), l);
    return Mat2::outer(d, n_out) * (2.0 / mesh.cell_height[c][static_cast<std::size_t>(l)]);
}

struct DenseForms {
    Eigen::MatrixXd strain;   // sum_K |K| (eps_i : eps_j)
    Eigen::MatrixXd gradient; // sum_K |K| (grad_i : grad_j)
    Eigen::MatrixXd jump;     // sum_e ||J_e||^2 / 3
};

DenseForms assemble_forms(const Mesh& mesh, const std::vector<int>& idx, int n_interior) {
    const int dim = 2 * n_interior;
    DenseForms f{Eigen::MatrixXd::Zero(dim, dim), Eigen::MatrixXd::Zero(dim, dim),
                 Eigen::MatrixXd::Zero(dim, dim)};

    const Vec2 ex{1.0, 0.0}, ey{0.0, 1.0};
    for (std::size_t c = 0; c < mesh.n_cells(); ++c) {
        int cols[6];
        Mat2 grads[6];
        int n_loc = 0;
        for (int l = 0; l < 3; ++l) {
            const int e = mesh.cell_edges[c][static_cast<std::size_t>(l)];
            const int base = idx[static_cast<std::size_t>(e)];
            if (base < 0) continue;
            cols[n_loc] = 2 * base;
            grads[n_loc++] = basis_gradient(mesh, c, l, ex);
            cols[n_loc] = 2 * base + 1;
            grads[n_loc++] = basis_gradient(mesh, c, l, ey);
        }
        for (int i = 0; i < n_loc; ++i) {
            const Mat2 si = grads[i].symmetric_part();
            for (int j = 0; j < n_loc; ++j) {
                f.gradient(cols[i], cols[j]) += mesh.cell_area[c] * ddot(grads[i], grads[j]);
                f.strain(cols[i], cols[j]) +=
                    mesh.cell_area[c] * ddot(si, grads[j].symmetric_part());
            }
        }
    }

    for (const EdgeStencil& st : build_stencils(mesh)) {
        int cols[8];
        double cx[8], cy[8];
        int n_loc = 0;
        for (int i = 0; i < 4; ++i) {
            const auto e = static_cast<std::size_t>(st.nbr[static_cast<std::size_t>(i)]);
            const int base = idx[e];
            if (base < 0) continue;
            // J = sum_i c_i (n_i vn_i + tau_i vt_i); in Cartesian components
            // the midpoint value contributes with the plain coefficient c_i.
            cols[n_loc] = 2 * base;
            cx[n_loc] = st.coeff[static_cast<std::size_t>(i)];
            cy[n_loc++] = 0.0;
            cols[n_loc] = 2 * base + 1;
            cx[n_loc] = 0.0;
            cy[n_loc++] = st.coeff[static_cast<std::size_t>(i)];
        }
        for (int i = 0; i < n_loc; ++i)
            for (int j = 0; j < n_loc; ++j)
                f.jump(cols[i], cols[j]) += (cx[i] * cx[j] + cy[i] * cy[j]) / 3.0;
    }
    return f;
}

// Smallest lambda of A x = lambda B x (both symmetric, B positive definite on
// the constrained space) by inverse iteration with B-normalization.
double smallest_eigenvalue(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, double rtol,
                           int max_iters, int* iters, bool* converged) {
    const Eigen::Index n = A.rows();
    Eigen::LDLT<Eigen::MatrixXd> solver(A);

    Eigen::VectorXd x = Eigen::VectorXd::Ones(n);
    for (Eigen::Index i = 0; i < n; ++i) x(i) += 1e-3 * static_cast<double>(i % 7);
    x /= std::sqrt(x.dot(B * x));

    double lambda = x.dot(A * x);
    *converged = false;
    for (*iters = 1; *iters <= max_iters; ++(*iters)) {
        Eigen::VectorXd y = solver.solve(B * x);
        const double scale = std::sqrt(y.dot(B * y));
        if (!(scale > 0.0) || !std::isfinite(scale)) break;
        x = y / scale;
        const double next = x.dot(A * x);
        const bool done = std::abs(next - lambda) <= rtol * std::abs(next);
        lambda = next;
        if (done) {
            *converged = true;
            break;
        }
    }
    return lambda;
}

} // namespace

KornEstimate estimate_korn_constant(const Mesh& mesh, bool with_stabilization, double rtol,
                                    int max_iters) {
    int n_interior = 0;
    const auto idx = interior_index(mesh, n_interior);
    const DenseForms f = assemble_forms(mesh, idx, n_interior);

    Eigen::MatrixXd A = f.strain;
    if (with_stabilization) A += f.jump;

    KornEstimate est;
    est.lambda_min =
        smallest_eigenvalue(A, f.gradient, rtol, max_iters, &est.iterations, &est.converged);
    est.korn_constant = est.lambda_min > 0.0 ? 1.0 / est.lambda_min : 0.0;
    return est;
}

double poincare_constant(const Mesh& mesh, double rtol, int max_iters) {
    int n_interior = 0;
    const auto idx = interior_index(mesh, n_interior);
    const DenseForms f = assemble_forms(mesh, idx, n_interior);

    const auto w = dof_weight(mesh);
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(2 * n_interior, 2 * n_interior);
    for (std::size_t e = 0; e < mesh.n_edges(); ++e) {
        if (idx[e] < 0) continue;
        M(2 * idx[e], 2 * idx[e]) = w[e];
        M(2 * idx[e] + 1, 2 * idx[e] + 1) = w[e];
    }

    int iters = 0;
    bool converged = false;
    const double lambda = smallest_eigenvalue(f.gradient, M, rtol, max_iters, &iters, &converged);
    return lambda > 0.0 ? 1.0 / std::sqrt(lambda) : 0.0;
}

BoundReport theorem_bound_report(const PhysParams& p, double h_ice, double T, double zeta_min,
                                 double c_p, double c_k, double linear_drag_speed,
                                 bool linear_drag, bool advection_on) {
    BoundReport r;
    if (!linear_drag) {
        r.reason = "bound requires the linearized ocean drag";
        return r;
    }
    if (advection_on) {
        r.reason = "bound requires frozen tracers (advection off)";
        return r;
    }
    const double C_w1 = p.rho_w * p.C_w * linear_drag_speed;
    const double m = p.rho * h_ice;
    r.valid = true;
    r.gamma = T / 2.0;
    r.gamma2 = C_w1;
    r.c_p = c_p;
    r.c_k = c_k;
    r.zeta_min = zeta_min;
    r.a = m * T / 4.0 + m / (2.0 * r.gamma);
    r.b = C_w1 + m / T + r.gamma * m / 2.0;
    r.c = c_p * zeta_min / (2.0 * c_k * T) + T / (4.0 * r.gamma2);
    return r;
}

} // namespace icefem
