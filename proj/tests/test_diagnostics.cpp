#include <doctest.h>

#include <cmath>

#include "icefem/cr_space.hpp"
#include "icefem/diagnostics.hpp"
#include "icefem/mesh.hpp"
#include "icefem/rheology.hpp"
#include "test_helpers.hpp"

using namespace icefem;
using test_helpers::random_velocity;

TEST_CASE("energy trace accumulates left rectangles") {
    const Mesh mesh = build_uniform_mesh(100.0, 100.0, 20.0);
    const VelocityField v = random_velocity(mesh, 2, false);
    const double rate = weighted_h1_rate(mesh, v, 3.0);
    CHECK(rate == doctest::Approx(3.0 * grad_norm_sq(mesh, v)).epsilon(1e-14));

    EnergyTrace trace;
    trace.add(mesh, v, 3.0, 10.0);
    trace.add(mesh, v, 3.0, 5.0);
    CHECK(trace.value == doctest::Approx(15.0 * rate).epsilon(1e-14));
}

TEST_CASE("total deformation equals delta of the cell strain rate") {
    const Mesh mesh = build_uniform_mesh(100.0, 80.0, 15.0);
    PhysParams p;
    const VelocityField v = random_velocity(mesh, 4, false);
    const auto D = total_deformation(mesh, v, p);
    for (std::size_t c = 0; c < mesh.n_cells(); ++c)
        CHECK(D[c] ==
              doctest::Approx(delta(p, cell_strain_rate(mesh, v, static_cast<int>(c)))).epsilon(1e-14));
}

TEST_CASE("Poincare constant approaches the continuum value on the unit square") {
    // first Dirichlet eigenvalue of -Laplace on the unit square is 2 pi^2,
    // so c_p -> 1/sqrt(2 pi^2) ~ 0.2251
    const Mesh mesh = build_uniform_mesh(1.0, 1.0, 0.1);
    const double cp = poincare_constant(mesh);
    CHECK(cp == doctest::Approx(1.0 / std::sqrt(2.0 * M_PI * M_PI)).epsilon(0.1));
}

TEST_CASE("stabilized Korn quotient stays bounded while the plain one decays") {
    const Mesh coarse = build_uniform_mesh(1.0, 1.0, 0.25);
    const Mesh fine = build_uniform_mesh(1.0, 1.0, 0.125);

    const KornEstimate pc = estimate_korn_constant(coarse, false);
    const KornEstimate pf = estimate_korn_constant(fine, false);
    CHECK(pc.converged);
    CHECK(pf.converged);
    CHECK(pf.lambda_min < pc.lambda_min);

    const KornEstimate sc = estimate_korn_constant(coarse, true);
    const KornEstimate sf = estimate_korn_constant(fine, true);
    CHECK(sc.converged);
    CHECK(sf.converged);
    CHECK(sf.lambda_min > 0.1 * sc.lambda_min);
    CHECK(sf.lambda_min > pf.lambda_min); // the penalty only adds energy
}

TEST_CASE("bound report coefficients and applicability") {
    PhysParams p;
    const double T = 21600.0, h = 1.0, zeta_min = 1e10, cp = 0.2, ck = 2.0, speed = 0.1;

    const BoundReport quad = theorem_bound_report(p, h, T, zeta_min, cp, ck, speed, false, false);
    CHECK_FALSE(quad.valid);
    const BoundReport adv = theorem_bound_report(p, h, T, zeta_min, cp, ck, speed, true, true);
    CHECK_FALSE(adv.valid);

    const BoundReport b = theorem_bound_report(p, h, T, zeta_min, cp, ck, speed, true, false);
    REQUIRE(b.valid);
    const double Cw1 = 1026.0 * 5.5e-3 * 0.1;
    const double m = 900.0;
    CHECK(b.gamma == doctest::Approx(T / 2.0));
    CHECK(b.gamma2 == doctest::Approx(Cw1));
    CHECK(b.a == doctest::Approx(m * T / 4.0 + m / (2.0 * b.gamma)).epsilon(1e-14));
    CHECK(b.b == doctest::Approx(Cw1 + m / T + b.gamma * m / 2.0).epsilon(1e-14));
    CHECK(b.c ==
          doctest::Approx(cp * zeta_min / (2.0 * ck * T) + T / (4.0 * Cw1)).epsilon(1e-14));
}
