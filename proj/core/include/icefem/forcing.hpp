#pragma once

#include <functional>

#include "icefem/params.hpp"
#include "icefem/types.hpp"

namespace icefem {

// External force configuration. Wind and ocean fields are analytic presets
// selected by the harness; the momentum solvers only see the callables.
struct ForcingConfig {
    bool use_wind = false;
    bool use_coriolis = false;
    bool use_ocean_drag = true;
    bool linear_drag = false;
    double linear_drag_speed = 0.1; // fixed scaling speed |v_w - v|_0 [m/s]
    std::function<Vec2(Vec2, double)> wind = [](Vec2, double) { return Vec2{}; };
    std::function<Vec2(Vec2)> ocean = [](Vec2) { return Vec2{}; };
};

// Wind stress rho_a C_a ||v_a|| v_a [N/m^2].
Vec2 wind_stress(const PhysParams& p, const Vec2& v_a);

// Semi-implicit ocean drag: explicit vector c_d v_w and coefficient c_d
// multiplying the unknown new velocity, c_d = rho_w C_w ||v_w - v_old||
// (or rho_w C_w1 with the linearized drag).
struct DragSplit {
    Vec2 explicit_part;
    double coeff = 0.0;
};

DragSplit ocean_drag_split(const PhysParams& p, const Vec2& v_old, const Vec2& v_w);
DragSplit ocean_drag_split_linear(const PhysParams& p, const Vec2& v_w, double scaling_speed);

// Coriolis with the ocean-tilt substitution: rho h f_c e_r x (v_w - v).
Vec2 coriolis_tilt(const PhysParams& p, const Vec2& v, const Vec2& v_w, double h);

// Manufactured right-hand sides of the strain test. "full" is the printed
// three-term expression for the symmetric stress, "grad_only" the adjusted
// expression zeta (pi_x^2 + pi_y^2) sin(pi_x x) sin(pi_y y) for sigma_1.
enum class RhsKind { full, grad_only };

Vec2 manufactured_rhs(RhsKind kind, double x, double y, double zeta, double Lx, double Ly);

} // namespace icefem
