#include "icefem/transport.hpp"

#include <algorithm>
#include <cstdio>

namespace icefem {

TransportResult upwind_step(const Mesh& mesh, const TracerField& q,
                            const VelocityField& v, double k) {
    TransportResult out;
    out.q = q;

    double min_area = mesh.cell_area[0];
    for (const double a : mesh.cell_area) min_area = std::min(min_area, a);

    for (std::size_t e = 0; e < mesh.n_edges(); ++e) {
        if (mesh.boundary_edge[e]) continue;
        const double vn = v.vn[e];
        out.max_face_cfl = std::max(out.max_face_cfl,
                                    std::abs(vn) * k * mesh.edge_length[e] / min_area);
        // canonical normal points from edge_cells[0] to edge_cells[1]
        const auto c0 = static_cast<std::size_t>(mesh.edge_cells[e][0]);
        const auto c1 = static_cast<std::size_t>(mesh.edge_cells[e][1]);
        const double q_donor = (vn >= 0.0) ? q[c0] : q[c1];
        const double flux = vn * mesh.edge_length[e] * q_donor; // leaves c0 if vn > 0
        out.q[c0] -= k / mesh.cell_area[c0] * flux;
        out.q[c1] += k / mesh.cell_area[c1] * flux;
    }

    if (out.max_face_cfl > 1.0) {
        out.cfl_exceeded = true;
        std::fprintf(stderr, "upwind_step: face CFL %.3f exceeds 1\n", out.max_face_cfl);
    }
    return out;
}

void limit_tracers(TracerField& h, TracerField& A) {
    for (double& x : h) x = std::max(x, 0.0);
    for (double& x : A) x = std::clamp(x, 0.0, 1.0);
}

double tracer_mass(const Mesh& mesh, const TracerField& q) {
    double m = 0.0;
    for (std::size_t c = 0; c < mesh.n_cells(); ++c) m += mesh.cell_area[c] * q[c];
    return m;
}

} // namespace icefem
