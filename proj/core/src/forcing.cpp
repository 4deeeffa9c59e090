#include "icefem/forcing.hpp"

#include <cmath>

namespace icefem {

Vec2 wind_stress(const PhysParams& p, const Vec2& v_a) {
    return v_a * (p.rho_a * p.C_a * v_a.norm());
}

DragSplit ocean_drag_split(const PhysParams& p, const Vec2& v_old, const Vec2& v_w) {
    const double c_d = p.rho_w * p.C_w * (v_w - v_old).norm();
    return {v_w * c_d, c_d};
}

DragSplit ocean_drag_split_linear(const PhysParams& p, const Vec2& v_w, double scaling_speed) {
    const double c_d = p.rho_w * p.C_w * scaling_speed;
    return {v_w * c_d, c_d};
}

Vec2 coriolis_tilt(const PhysParams& p, const Vec2& v, const Vec2& v_w, double h) {
    return perp(v_w - v) * (p.rho * h * p.f_c);
}

Vec2 manufactured_rhs(RhsKind kind, double x, double y, double zeta, double Lx, double Ly) {
    const double px = M_PI / Lx;
    const double py = M_PI / Ly;
    const double ss = std::sin(px * x) * std::sin(py * y);
    double r;
    if (kind == RhsKind::grad_only) {
        r = zeta * (px * px + py * py) * ss;
    } else {
        const double cc = std::cos(px * x) * std::cos(py * y);
        r = 0.5 * zeta * (px * px * ss + 0.5 * py * py * ss - 0.5 * px * py * cc);
    }
    return {r, r};
}

} // namespace icefem
