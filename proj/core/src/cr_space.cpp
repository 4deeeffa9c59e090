#include "icefem/cr_space.hpp"

namespace icefem {

VelocityField interpolate(const Mesh& mesh, const std::function<Vec2(Vec2)>& f) {
    VelocityField v(mesh.n_edges());
    for (std::size_t e = 0; e < mesh.n_edges(); ++e) {
        const Vec2 val = f(mesh.edge_midpoint[e]);
        v.vn[e] = dot(val, mesh.edge_normal[e]);
        v.vt[e] = dot(val, mesh.edge_tangent[e]);
    }
    return v;
}

Mat2 cell_gradient(const Mesh& mesh, const VelocityField& v, int cell) {
    const auto c = static_cast<std::size_t>(cell);
    Mat2 g;
    for (int l = 0; l < 3; ++l) {
        const auto e = static_cast<std::size_t>(mesh.cell_edges[c][static_cast<std::size_t>(l)]);
        const Vec2 coeff = midpoint_value(mesh, v, e);
        const Vec2 n_out = mesh.outward_normal(cell, l);
        g += Mat2::outer(coeff, n_out) * (2.0 / mesh.cell_height[c][static_cast<std::size_t>(l)]);
    }
    return g;
}

Mat2 cell_strain_rate(const Mesh& mesh, const VelocityField& v, int cell) {
    return cell_gradient(mesh, v, cell).symmetric_part();
}

std::vector<double> lumped_mass_diagonal(const Mesh& mesh) {
    std::vector<double> d(mesh.n_edges(), 0.0);
    for (std::size_t c = 0; c < mesh.n_cells(); ++c)
        for (int l = 0; l < 3; ++l)
            d[static_cast<std::size_t>(mesh.cell_edges[c][static_cast<std::size_t>(l)])] +=
                mesh.cell_area[c] / 6.0;
    return d;
}

std::vector<double> dof_weight(const Mesh& mesh) {
    std::vector<double> d(mesh.n_edges(), 0.0);
    for (std::size_t c = 0; c < mesh.n_cells(); ++c)
        for (int l = 0; l < 3; ++l)
            d[static_cast<std::size_t>(mesh.cell_edges[c][static_cast<std::size_t>(l)])] +=
                mesh.cell_area[c] / 3.0;
    return d;
}

VelocityField apply_mass(const Mesh& mesh, const VelocityField& v) {
    const auto d = lumped_mass_diagonal(mesh);
    VelocityField out(mesh.n_edges());
    for (std::size_t e = 0; e < mesh.n_edges(); ++e) {
        out.vn[e] = d[e] * v.vn[e];
        out.vt[e] = d[e] * v.vt[e];
    }
    return out;
}

VelocityField stress_divergence_residual(const Mesh& mesh, const StressField& s) {
    VelocityField r(mesh.n_edges());
    for (std::size_t c = 0; c < mesh.n_cells(); ++c) {
        const Mat2 sigma = s.tensor(c);
        for (int l = 0; l < 3; ++l) {
            const auto e = static_cast<std::size_t>(mesh.cell_edges[c][static_cast<std::size_t>(l)]);
            const double f = mesh.cell_area[c] * 2.0 / mesh.cell_height[c][static_cast<std::size_t>(l)];
            const Vec2 sn = sigma * mesh.outward_normal(static_cast<int>(c), l);
            r.vn[e] += f * dot(mesh.edge_normal[e], sn);
            r.vt[e] += f * dot(mesh.edge_tangent[e], sn);
        }
    }
    return r;
}

void apply_dirichlet(const Mesh& mesh, VelocityField& v) {
    for (std::size_t e = 0; e < mesh.n_edges(); ++e) {
        if (mesh.boundary_edge[e]) {
            v.vn[e] = 0.0;
            v.vt[e] = 0.0;
        }
    }
}

double grad_norm_sq(const Mesh& mesh, const VelocityField& v) {
    double s = 0.0;
    for (std::size_t c = 0; c < mesh.n_cells(); ++c)
        s += mesh.cell_area[c] * cell_gradient(mesh, v, static_cast<int>(c)).frobenius_sq();
    return s;
}

double strain_norm_sq(const Mesh& mesh, const VelocityField& v) {
    double s = 0.0;
    for (std::size_t c = 0; c < mesh.n_cells(); ++c)
        s += mesh.cell_area[c] * cell_strain_rate(mesh, v, static_cast<int>(c)).frobenius_sq();
    return s;
}

double velocity_norm_sq(const Mesh& mesh, const VelocityField& v) {
    const auto w = dof_weight(mesh);
    double s = 0.0;
    for (std::size_t e = 0; e < mesh.n_edges(); ++e)
        s += w[e] * (v.vn[e] * v.vn[e] + v.vt[e] * v.vt[e]);
    return s;
}

} // namespace icefem
