#include <doctest.h>

#include <cmath>
#include <random>

#include "icefem/cr_space.hpp"
#include "icefem/mesh.hpp"
#include "test_helpers.hpp"

using namespace icefem;
using test_helpers::random_velocity;

TEST_CASE("cell gradients reproduce affine fields exactly") {
    const Mesh mesh = build_uniform_mesh(200.0, 150.0, 20.0);
    const Mat2 B{0.3, -1.7, 2.1, 0.45};
    const Vec2 a{5.0, -2.0};
    const VelocityField v =
        interpolate(mesh, [&](Vec2 p) { return a + Vec2{B.a11 * p.x + B.a12 * p.y,
                                                        B.a21 * p.x + B.a22 * p.y}; });
    for (std::size_t c = 0; c < mesh.n_cells(); ++c) {
        const Mat2 g = cell_gradient(mesh, v, static_cast<int>(c));
        CHECK(std::abs(g.a11 - B.a11) < 1e-12);
        CHECK(std::abs(g.a12 - B.a12) < 1e-12);
        CHECK(std::abs(g.a21 - B.a21) < 1e-12);
        CHECK(std::abs(g.a22 - B.a22) < 1e-12);
    }
}

TEST_CASE("rigid motions have zero strain rate") {
    const Mesh mesh = build_uniform_mesh(100.0, 100.0, 10.0);
    const Vec2 c0{40.0, 60.0};
    const VelocityField v =
        interpolate(mesh, [&](Vec2 p) { return Vec2{1.5, -0.5} + 0.7 * perp(p - c0); });
    for (std::size_t c = 0; c < mesh.n_cells(); ++c) {
        const Mat2 eps = cell_strain_rate(mesh, v, static_cast<int>(c));
        CHECK(std::abs(eps.a11) < 1e-12);
        CHECK(std::abs(eps.a12) < 1e-12);
        CHECK(std::abs(eps.a22) < 1e-12);
    }
}

TEST_CASE("lumped mass entries are |K|/3 interior and |K|/6 boundary") {
    const Mesh mesh = build_uniform_mesh(500e3, 500e3, 50e3);
    const auto m = lumped_mass_diagonal(mesh);
    for (std::size_t e = 0; e < mesh.n_edges(); ++e) {
        const auto c0 = static_cast<std::size_t>(mesh.edge_cells[e][0]);
        if (mesh.boundary_edge[e]) {
            CHECK(m[e] == doctest::Approx(mesh.cell_area[c0] / 6.0).epsilon(1e-15));
        } else {
            const auto c1 = static_cast<std::size_t>(mesh.edge_cells[e][1]);
            CHECK(m[e] ==
                  doctest::Approx((mesh.cell_area[c0] + mesh.cell_area[c1]) / 6.0).epsilon(1e-15));
            if (mesh.cell_area[c0] == mesh.cell_area[c1])
                CHECK(m[e] == doctest::Approx(mesh.cell_area[c0] / 3.0).epsilon(1e-15));
        }
    }
}

TEST_CASE("consistent DOF weights sum to the domain area") {
    const Mesh mesh = build_uniform_mesh(300.0, 200.0, 25.0);
    const auto w = dof_weight(mesh);
    double sum = 0.0;
    for (const double x : w) sum += x;
    CHECK(sum == doctest::Approx(300.0 * 200.0).epsilon(1e-12));
}

TEST_CASE("stress divergence residual is adjoint to the cell gradient") {
    const Mesh mesh = build_uniform_mesh(400.0, 300.0, 40.0);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    StressField s(mesh.n_cells());
    for (std::size_t c = 0; c < mesh.n_cells(); ++c) {
        s.s11[c] = dist(rng);
        s.s12[c] = dist(rng);
        s.s22[c] = dist(rng);
    }
    const VelocityField v = random_velocity(mesh, 11, /*zero_boundary=*/false);

    const VelocityField r = stress_divergence_residual(mesh, s);
    double lhs = 0.0;
    for (std::size_t e = 0; e < mesh.n_edges(); ++e) lhs += r.vn[e] * v.vn[e] + r.vt[e] * v.vt[e];
    double rhs = 0.0;
    for (std::size_t c = 0; c < mesh.n_cells(); ++c)
        rhs += mesh.cell_area[c] * ddot(s.tensor(c), cell_gradient(mesh, v, static_cast<int>(c)));
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
}

TEST_CASE("interpolation hits midpoint values") {
    const Mesh mesh = build_uniform_mesh(90.0, 70.0, 9.0);
    const auto f = [](Vec2 p) { return Vec2{std::sin(p.x * 0.1), std::cos(p.y * 0.2)}; };
    const VelocityField v = interpolate(mesh, f);
    for (std::size_t e = 0; e < mesh.n_edges(); ++e) {
        const Vec2 got = midpoint_value(mesh, v, e);
        const Vec2 want = f(mesh.edge_midpoint[e]);
        CHECK((got - want).norm() < 1e-12);
    }
}

TEST_CASE("dirichlet application zeroes exactly the boundary DOFs") {
    const Mesh mesh = build_uniform_mesh(50.0, 50.0, 10.0);
    VelocityField v = random_velocity(mesh, 3, /*zero_boundary=*/false);
    apply_dirichlet(mesh, v);
    for (std::size_t e = 0; e < mesh.n_edges(); ++e) {
        if (mesh.boundary_edge[e]) {
            CHECK(v.vn[e] == 0.0);
            CHECK(v.vt[e] == 0.0);
        } else {
            CHECK(v.vn[e] != 0.0);
        }
    }
}
