#include "icefem/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "icefem/cr_space.hpp"

namespace icefem {

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

// Average of the three edge-midpoint values; exact for the cell mean of a CR
// function (midpoint quadrature is exact on linears).
Vec2 cell_mean_velocity(const Mesh& mesh, const VelocityField& v, std::size_t c) {
    Vec2 sum{};
    for (int l = 0; l < 3; ++l)
        sum += midpoint_value(mesh, v,
                              static_cast<std::size_t>(mesh.cell_edges[c][static_cast<std::size_t>(l)]));
    return sum / 3.0;
}

void write_cell_scalars(std::ofstream& out, const std::string& name,
                        const std::vector<double>& q) {
    out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
    for (const double x : q) out << format_double(x) << "\n";
}

} // namespace

void write_vtk(const std::string& path, const Mesh& mesh, const VelocityField& v,
               const TracerField& h, const TracerField& A, const std::vector<double>& Delta) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);

    out << "# vtk DataFile Version 3.0\nicefem snapshot\nASCII\n";
    out << "DATASET UNSTRUCTURED_GRID\n";
    out << "POINTS " << mesh.n_vertices() << " double\n";
    for (const Vec2& p : mesh.vertices)
        out << format_double(p.x) << " " << format_double(p.y) << " 0\n";

    out << "CELLS " << mesh.n_cells() << " " << 4 * mesh.n_cells() << "\n";
    for (const auto& k : mesh.cells) out << "3 " << k[0] << " " << k[1] << " " << k[2] << "\n";
    out << "CELL_TYPES " << mesh.n_cells() << "\n";
    for (std::size_t c = 0; c < mesh.n_cells(); ++c) out << "5\n";

    out << "CELL_DATA " << mesh.n_cells() << "\n";
    write_cell_scalars(out, "h", h);
    write_cell_scalars(out, "A", A);
    write_cell_scalars(out, "Delta", Delta);

    std::vector<double> speed(mesh.n_cells());
    out << "VECTORS velocity double\n";
    for (std::size_t c = 0; c < mesh.n_cells(); ++c) {
        const Vec2 u = cell_mean_velocity(mesh, v, c);
        speed[c] = u.norm();
        out << format_double(u.x) << " " << format_double(u.y) << " 0\n";
    }
    write_cell_scalars(out, "speed", speed);

    if (!out) throw std::runtime_error("write failed for " + path);
}

void CsvTable::append(const std::vector<double>& row) {
    if (row.size() != columns.size())
        throw std::invalid_argument("csv row width mismatch");
    rows.push_back(row);
}

void write_csv(const std::string& path, const CsvTable& table) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        out << (i ? "," : "") << table.columns[i];
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << format_double(row[i]);
        out << "\n";
    }
    if (!out) throw std::runtime_error("write failed for " + path);
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);

    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty csv " + path);
    std::stringstream header(line);
    std::string cell;
    while (std::getline(header, cell, ',')) table.columns.push_back(cell);

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        table.append(row);
    }
    return table;
}

} // namespace icefem
