#include <doctest.h>

#include <cmath>
#include <vector>

#include "icefem/cr_space.hpp"
#include "icefem/mesh.hpp"
#include "icefem/stabilization.hpp"
#include "test_helpers.hpp"

using namespace icefem;
using test_helpers::evaluate_in_cell;
using test_helpers::random_velocity;

namespace {

double form_value(const Mesh& mesh, const std::vector<EdgeStencil>& st, const VelocityField& u,
                  const VelocityField& v, const std::vector<double>& ze, double alpha) {
    const VelocityField r = apply_stabilization(mesh, st, v, ze, alpha);
    double sum = 0.0;
    for (std::size_t e = 0; e < mesh.n_edges(); ++e) sum += r.vn[e] * u.vn[e] + r.vt[e] * u.vt[e];
    return sum;
}

} // namespace

TEST_CASE("penalty vanishes on affine interpolants") {
    const Mesh mesh = build_uniform_mesh(200.0, 160.0, 20.0);
    const auto st = build_stencils(mesh);
    const std::vector<double> ze(mesh.n_edges(), 3.0);
    const VelocityField v =
        interpolate(mesh, [](Vec2 p) { return Vec2{0.2 * p.x - 0.7 * p.y + 1.0, p.x + p.y}; });
    for (const EdgeStencil& s : st) CHECK(edge_jump(mesh, v, s).norm() < 1e-10);
    CHECK(stabilization_energy(mesh, st, v, ze, 1.0) < 1e-18);
    const VelocityField r = apply_stabilization(mesh, st, v, ze, 1.0);
    for (std::size_t e = 0; e < mesh.n_edges(); ++e) {
        CHECK(std::abs(r.vn[e]) < 1e-9);
        CHECK(std::abs(r.vt[e]) < 1e-9);
    }
}

TEST_CASE("penalty form is symmetric and positive semidefinite") {
    const Mesh mesh = build_uniform_mesh(100.0, 100.0, 12.0);
    const auto st = build_stencils(mesh);
    std::vector<double> ze(mesh.n_edges());
    for (std::size_t e = 0; e < mesh.n_edges(); ++e) ze[e] = 1.0 + 0.01 * static_cast<double>(e);

    const VelocityField u = random_velocity(mesh, 5, false);
    const VelocityField v = random_velocity(mesh, 6, false);
    const double suv = form_value(mesh, st, u, v, ze, 1.0);
    const double svu = form_value(mesh, st, v, u, ze, 1.0);
    CHECK(std::abs(suv - svu) <= 1e-10 * std::max(1.0, std::abs(suv)));

    const double svv = form_value(mesh, st, v, v, ze, 1.0);
    CHECK(svv >= 0.0);
    CHECK(svv == doctest::Approx(stabilization_energy(mesh, st, v, ze, 1.0)).epsilon(1e-12));
}

TEST_CASE("quadratic form matches the exact edge integrals") {
    // independent oracle: evaluate the CR field from both sides of each
    // interior edge via barycentric coordinates and integrate the squared
    // jump with 3-point Gauss quadrature (exact for quadratics)
    const Mesh mesh = build_uniform_mesh(90.0, 75.0, 15.0);
    const auto st = build_stencils(mesh);
    std::vector<double> ze(mesh.n_edges());
    for (std::size_t e = 0; e < mesh.n_edges(); ++e) ze[e] = 2.0 + 0.1 * static_cast<double>(e % 7);
    const double alpha = 1.3;
    const VelocityField v = random_velocity(mesh, 9, false);

    const double gp[3] = {0.5 * (1.0 - std::sqrt(0.6)), 0.5, 0.5 * (1.0 + std::sqrt(0.6))};
    const double gw[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
    double oracle = 0.0;
    for (std::size_t e = 0; e < mesh.n_edges(); ++e) {
        if (mesh.boundary_edge[e]) continue;
        const Vec2 a = mesh.vertices[static_cast<std::size_t>(mesh.edges[e][0])];
        const Vec2 b = mesh.vertices[static_cast<std::size_t>(mesh.edges[e][1])];
        const auto c0 = static_cast<std::size_t>(mesh.edge_cells[e][0]);
        const auto c1 = static_cast<std::size_t>(mesh.edge_cells[e][1]);
        double jump_sq = 0.0;
        for (int g = 0; g < 3; ++g) {
            const Vec2 p = a + (b - a) * gp[g];
            const Vec2 jump = evaluate_in_cell(mesh, v, c0, p) - evaluate_in_cell(mesh, v, c1, p);
            jump_sq += gw[g] * jump.norm_sq();
        }
        oracle += 2.0 * ze[e] * alpha * jump_sq; // (alpha/|e|) * |e| * integral
    }
    const double got = stabilization_energy(mesh, st, v, ze, alpha);
    CHECK(got == doctest::Approx(oracle).epsilon(1e-10));
}

TEST_CASE("diagonal quadratic-form entry is 2 zeta alpha / 3 per stencil membership") {
    const Mesh mesh = build_uniform_mesh(80.0, 80.0, 16.0);
    const auto st = build_stencils(mesh);
    const double zeta = 4.2, alpha = 1.0;
    const std::vector<double> ze(mesh.n_edges(), zeta);

    // pick an edge well inside the mesh and count its stencil memberships
    for (std::size_t j = 0; j < mesh.n_edges(); ++j) {
        if (mesh.boundary_edge[j]) continue;
        int uses = 0;
        for (const EdgeStencil& s : st)
            for (int i = 0; i < 4; ++i)
                if (s.nbr[static_cast<std::size_t>(i)] == static_cast<int>(j)) {
                    CHECK(std::abs(s.coeff[static_cast<std::size_t>(i)]) == 1.0);
                    ++uses;
                }
        VelocityField v(mesh.n_edges());
        v.vn[j] = 1.0;
        const double energy = stabilization_energy(mesh, st, v, ze, alpha);
        CHECK(energy ==
              doctest::Approx(static_cast<double>(uses) * 2.0 * zeta * alpha / 3.0).epsilon(1e-12));
        break;
    }
}
