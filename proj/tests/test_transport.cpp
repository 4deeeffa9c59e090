#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "icefem/cr_space.hpp"
#include "icefem/mesh.hpp"
#include "icefem/transport.hpp"

using namespace icefem;

TEST_CASE("upwind step conserves tracer mass exactly") {
    const Mesh mesh = build_uniform_mesh(500e3, 500e3, 50e3);
    const VelocityField v = interpolate(mesh, [](Vec2 p) {
        return Vec2{0.1 * std::sin(p.x * 1e-5), -0.08 * std::cos(p.y * 1e-5)};
    });
    TracerField q(mesh.n_cells());
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> dist(0.2, 2.0);
    for (double& x : q) x = dist(rng);

    const double m0 = tracer_mass(mesh, q);
    TracerField cur = q;
    for (int step = 0; step < 50; ++step) cur = upwind_step(mesh, cur, v, 600.0).q;
    const double m1 = tracer_mass(mesh, cur);
    CHECK(std::abs(m1 - m0) <= 1e-12 * std::abs(m0));
}

// Normal DOFs from a vertex stream function: vn_e = (psi_b - psi_a) / |e|.
// The signed fluxes around every cell telescope to zero, so the discrete
// field is exactly divergence-free and donor-cell updates are convex
// combinations (monotone) at CFL <= 1.
static VelocityField stream_function_field(const Mesh& mesh, double L, double scale) {
    const auto psi = [&](Vec2 p) {
        return scale * std::sin(M_PI * p.x / L) * std::sin(M_PI * p.y / L);
    };
    VelocityField v(mesh.n_edges());
    for (std::size_t e = 0; e < mesh.n_edges(); ++e) {
        Vec2 a = mesh.vertices[static_cast<std::size_t>(mesh.edges[e][0])];
        Vec2 b = mesh.vertices[static_cast<std::size_t>(mesh.edges[e][1])];
        // the flux in direction n is the psi increment along the tangent
        if (dot(b - a, mesh.edge_tangent[e]) < 0.0) std::swap(a, b);
        v.vn[e] = (psi(b) - psi(a)) / mesh.edge_length[e];
    }
    return v;
}

TEST_CASE("upwind step is monotone at CFL below one") {
    const double L = 200e3;
    const Mesh mesh = build_uniform_mesh(L, L, 25e3);
    const VelocityField v = stream_function_field(mesh, L, 0.1 * L / M_PI);
    TracerField q(mesh.n_cells());
    for (std::size_t c = 0; c < mesh.n_cells(); ++c)
        q[c] = 0.5 + 0.5 * std::sin(mesh.cell_centroid(static_cast<int>(c)).x * 1e-4);
    const double lo = *std::min_element(q.begin(), q.end());
    const double hi = *std::max_element(q.begin(), q.end());

    TracerField cur = q;
    for (int step = 0; step < 100; ++step) {
        const TransportResult r = upwind_step(mesh, cur, v, 600.0);
        REQUIRE(r.max_face_cfl <= 1.0);
        CHECK_FALSE(r.cfl_exceeded);
        cur = r.q;
        CHECK(*std::min_element(cur.begin(), cur.end()) >= lo - 1e-12);
        CHECK(*std::max_element(cur.begin(), cur.end()) <= hi + 1e-12);
    }
}

TEST_CASE("constant tracers are invariant under divergence-free transport") {
    const double L = 100e3;
    const Mesh mesh = build_uniform_mesh(L, L, 20e3);
    const VelocityField v = stream_function_field(mesh, L, 0.05 * L / M_PI);
    TracerField q(mesh.n_cells(), 0.75);
    const TracerField next = upwind_step(mesh, q, v, 600.0).q;
    // signed fluxes telescope around each cell, so nothing moves
    for (std::size_t c = 0; c < mesh.n_cells(); ++c)
        CHECK(next[c] == doctest::Approx(q[c]).epsilon(1e-12));
}

TEST_CASE("tracer limits clamp A and floor h") {
    TracerField h{1.0, -0.2, 3.5};
    TracerField A{0.5, 1.4, -0.1};
    limit_tracers(h, A);
    CHECK(h[0] == 1.0);
    CHECK(h[1] == 0.0);
    CHECK(h[2] == 3.5);
    CHECK(A[0] == 0.5);
    CHECK(A[1] == 1.0);
    CHECK(A[2] == 0.0);
}

TEST_CASE("face CFL above one is flagged") {
    const Mesh mesh = build_uniform_mesh(10e3, 10e3, 2e3);
    VelocityField v(mesh.n_edges());
    for (std::size_t e = 0; e < mesh.n_edges(); ++e)
        if (!mesh.boundary_edge[e]) v.vn[e] = 50.0; // absurdly fast
    TracerField q(mesh.n_cells(), 1.0);
    const TransportResult r = upwind_step(mesh, q, v, 600.0);
    CHECK(r.cfl_exceeded);
    CHECK(r.max_face_cfl > 1.0);
}
