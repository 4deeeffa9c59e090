#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "icefem/types.hpp"

namespace icefem {

// Planar triangulation of a rectangular domain with the edge-based topology
// needed by the Crouzeix-Raviart element and finite-volume transport.
// Immutable after construction; safe for concurrent reads.
struct Mesh {
    std::vector<Vec2> vertices;
    std::vector<std::array<int, 3>> cells;      // vertex indices, CCW
    std::vector<std::array<int, 2>> edges;      // vertex index pairs
    std::vector<std::array<int, 3>> cell_edges; // per cell, its 3 edge indices
    // +1 if the edge's canonical normal is the cell's outward normal, else -1
    std::vector<std::array<int, 3>> cell_edge_sign;
    std::vector<std::array<int, 2>> edge_cells; // second entry -1 on boundary
    std::vector<Vec2> edge_midpoint;
    std::vector<Vec2> edge_normal;  // unit; lower-index cell -> higher; boundary: outward
    std::vector<Vec2> edge_tangent; // unit, orthogonal to the normal
    std::vector<double> edge_length;
    std::vector<double> cell_area;
    // per (cell, local edge): distance from the opposite vertex to the edge line
    std::vector<std::array<double, 3>> cell_height;
    std::vector<bool> boundary_edge;

    std::size_t n_vertices() const { return vertices.size(); }
    std::size_t n_cells() const { return cells.size(); }
    std::size_t n_edges() const { return edges.size(); }

    Vec2 cell_centroid(int c) const {
        const auto& k = cells[static_cast<std::size_t>(c)];
        return (vertices[static_cast<std::size_t>(k[0])] +
                vertices[static_cast<std::size_t>(k[1])] +
                vertices[static_cast<std::size_t>(k[2])]) / 3.0;
    }

    // Outward unit normal of cell c on its local edge l.
    Vec2 outward_normal(int c, int l) const {
        const auto cs = static_cast<std::size_t>(c);
        const auto ls = static_cast<std::size_t>(l);
        const int e = cell_edges[cs][ls];
        return edge_normal[static_cast<std::size_t>(e)] * static_cast<double>(cell_edge_sign[cs][ls]);
    }
};

// Structured offset-row triangulation of [0,Lx] x [0,Ly] with near-equilateral
// triangles of edge length close to target_h. Throws std::invalid_argument on
// non-positive sizes or target_h > min(Lx, Ly).
Mesh build_uniform_mesh(double Lx, double Ly, double target_h);

std::vector<int> boundary_edges(const Mesh& mesh);

} // namespace icefem
