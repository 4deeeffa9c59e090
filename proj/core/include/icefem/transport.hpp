#pragma once

#include "icefem/fields.hpp"
#include "icefem/mesh.hpp"

namespace icefem {

struct TransportResult {
    TracerField q;
    double max_face_cfl = 0.0; // max_e |v.n| k |e| / min|K|
    bool cfl_exceeded = false;
};

// First-order donor-cell upwind step: flux F_e = (v.n)_e |e| q_donor through
// each interior edge, using the normal DOF as the face velocity; boundary
// edges contribute no flux. Warns on stderr if the face CFL exceeds 1 but
// still returns the update.
TransportResult upwind_step(const Mesh& mesh, const TracerField& q,
                            const VelocityField& v, double k);

// Clamp A to [0,1] and h to [0, inf).
void limit_tracers(TracerField& h, TracerField& A);

// Total tracer mass sum_K |K| q_K.
double tracer_mass(const Mesh& mesh, const TracerField& q);

} // namespace icefem
