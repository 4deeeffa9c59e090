#pragma once

#include <string>
#include <vector>

#include "icefem/fields.hpp"
#include "icefem/mesh.hpp"

namespace icefem {

// Legacy-ASCII VTK snapshot of the mesh with per-cell data: thickness h,
// concentration A, total deformation Delta, the cell-averaged velocity as
// vectors and its magnitude. Throws std::runtime_error if the file cannot be
// written.
void write_vtk(const std::string& path, const Mesh& mesh, const VelocityField& v,
               const TracerField& h, const TracerField& A, const std::vector<double>& Delta);

// Minimal CSV table with a fixed header. Values are printed with 17
// significant digits so that doubles round-trip exactly.
struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void append(const std::vector<double>& row);
};

void write_csv(const std::string& path, const CsvTable& table);
CsvTable read_csv(const std::string& path);

std::string format_double(double x); // %.17g

} // namespace icefem
