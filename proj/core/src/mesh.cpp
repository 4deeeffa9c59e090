#include "icefem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

namespace icefem {

namespace {

double triangle_area(const Vec2& a, const Vec2& b, const Vec2& c) {
    return 0.5 * cross(b - a, c - a);
}

// Triangulates the strip between two x-monotone vertex rows (bottom below
// top) by greedily advancing the pointer that yields the shorter diagonal.
void zipper_strip(const std::vector<Vec2>& pts,
                  const std::vector<int>& bottom, const std::vector<int>& top,
                  std::vector<std::array<int, 3>>& cells) {
    std::size_t a = 0, b = 0;
    while (a + 1 < bottom.size() || b + 1 < top.size()) {
        const bool can_bottom = a + 1 < bottom.size();
        const bool can_top = b + 1 < top.size();
        bool advance_bottom;
        if (!can_top) {
            advance_bottom = true;
        } else if (!can_bottom) {
            advance_bottom = false;
        } else {
            const double d_bottom = (pts[static_cast<std::size_t>(bottom[a + 1])] -
                                     pts[static_cast<std::size_t>(top[b])]).norm_sq();
            const double d_top = (pts[static_cast<std::size_t>(top[b + 1])] -
                                  pts[static_cast<std::size_t>(bottom[a])]).norm_sq();
            advance_bottom = d_bottom <= d_top;
        }
        if (advance_bottom) {
            cells.push_back({bottom[a], bottom[a + 1], top[b]});
            ++a;
        } else {
            cells.push_back({bottom[a], top[b + 1], top[b]});
            ++b;
        }
    }
}

} // namespace

Mesh build_uniform_mesh(double Lx, double Ly, double target_h) {
    if (Lx <= 0.0 || Ly <= 0.0 || target_h <= 0.0)
        throw std::invalid_argument("build_uniform_mesh: sizes must be positive");
    if (target_h > std::min(Lx, Ly))
        throw std::invalid_argument("build_uniform_mesh: target_h exceeds domain size");

    const int nx = std::max(1, static_cast<int>(std::lround(Lx / target_h)));
    const double dx = Lx / nx;
    const double row_h = target_h * std::sqrt(3.0) / 2.0;
    const int ny = std::max(1, static_cast<int>(std::lround(Ly / row_h)));
    const double dy = Ly / ny;

    Mesh m;
    std::vector<std::vector<int>> rows(static_cast<std::size_t>(ny) + 1);
    for (int j = 0; j <= ny; ++j) {
        const double y = j * dy;
        auto& row = rows[static_cast<std::size_t>(j)];
        const bool offset = (j % 2 == 1) && nx > 1;
        if (offset) {
            row.push_back(static_cast<int>(m.vertices.size()));
            m.vertices.push_back({0.0, y});
            for (int i = 0; i < nx; ++i) {
                row.push_back(static_cast<int>(m.vertices.size()));
                m.vertices.push_back({(i + 0.5) * dx, y});
            }
            row.push_back(static_cast<int>(m.vertices.size()));
            m.vertices.push_back({Lx, y});
        } else {
            for (int i = 0; i <= nx; ++i) {
                row.push_back(static_cast<int>(m.vertices.size()));
                m.vertices.push_back({i * dx, y});
            }
        }
    }
    for (int j = 0; j < ny; ++j)
        zipper_strip(m.vertices, rows[static_cast<std::size_t>(j)],
                     rows[static_cast<std::size_t>(j) + 1], m.cells);

    // enforce CCW orientation
    for (auto& k : m.cells) {
        if (triangle_area(m.vertices[static_cast<std::size_t>(k[0])],
                          m.vertices[static_cast<std::size_t>(k[1])],
                          m.vertices[static_cast<std::size_t>(k[2])]) < 0.0)
            std::swap(k[1], k[2]);
    }

    // edge table
    std::map<std::pair<int, int>, int> edge_index;
    m.cell_edges.resize(m.n_cells());
    m.cell_edge_sign.resize(m.n_cells());
    for (std::size_t c = 0; c < m.n_cells(); ++c) {
        const auto& k = m.cells[c];
        for (int l = 0; l < 3; ++l) {
            const int v0 = k[static_cast<std::size_t>(l)];
            const int v1 = k[static_cast<std::size_t>((l + 1) % 3)];
            const auto key = std::minmax(v0, v1);
            auto it = edge_index.find(key);
            int e;
            if (it == edge_index.end()) {
                e = static_cast<int>(m.edges.size());
                edge_index.emplace(key, e);
                m.edges.push_back({key.first, key.second});
                m.edge_cells.push_back({static_cast<int>(c), -1});
            } else {
                e = it->second;
                m.edge_cells[static_cast<std::size_t>(e)][1] = static_cast<int>(c);
            }
            m.cell_edges[c][static_cast<std::size_t>(l)] = e;
        }
    }

    const std::size_t ne = m.n_edges();
    m.edge_midpoint.resize(ne);
    m.edge_normal.resize(ne);
    m.edge_tangent.resize(ne);
    m.edge_length.resize(ne);
    m.boundary_edge.resize(ne);
    for (std::size_t e = 0; e < ne; ++e) {
        const Vec2 a = m.vertices[static_cast<std::size_t>(m.edges[e][0])];
        const Vec2 b = m.vertices[static_cast<std::size_t>(m.edges[e][1])];
        m.edge_midpoint[e] = (a + b) * 0.5;
        m.edge_length[e] = (b - a).norm();
        m.boundary_edge[e] = m.edge_cells[e][1] < 0;

        // canonical normal: outward for the first (lower-index) adjacent cell
        Vec2 n = perp(b - a) / m.edge_length[e];
        const Vec2 to_mid = m.edge_midpoint[e] - m.cell_centroid(m.edge_cells[e][0]);
        if (dot(n, to_mid) < 0.0) n = -n;
        m.edge_normal[e] = n;
        m.edge_tangent[e] = perp(n);
    }

    m.cell_area.resize(m.n_cells());
    m.cell_height.resize(m.n_cells());
    for (std::size_t c = 0; c < m.n_cells(); ++c) {
        const auto& k = m.cells[c];
        m.cell_area[c] = triangle_area(m.vertices[static_cast<std::size_t>(k[0])],
                                       m.vertices[static_cast<std::size_t>(k[1])],
                                       m.vertices[static_cast<std::size_t>(k[2])]);
        for (int l = 0; l < 3; ++l) {
            const int e = m.cell_edges[c][static_cast<std::size_t>(l)];
            m.cell_height[c][static_cast<std::size_t>(l)] =
                2.0 * m.cell_area[c] / m.edge_length[static_cast<std::size_t>(e)];
            const int cell_of_record = m.edge_cells[static_cast<std::size_t>(e)][0];
            m.cell_edge_sign[c][static_cast<std::size_t>(l)] =
                (cell_of_record == static_cast<int>(c)) ? 1 : -1;
        }
    }
    return m;
}

std::vector<int> boundary_edges(const Mesh& mesh) {
    std::vector<int> out;
    for (std::size_t e = 0; e < mesh.n_edges(); ++e)
        if (mesh.boundary_edge[e]) out.push_back(static_cast<int>(e));
    return out;
}

} // namespace icefem
