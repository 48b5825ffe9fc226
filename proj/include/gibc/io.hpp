#ifndef GIBC_IO_HPP
#define GIBC_IO_HPP

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gibc/csr.hpp"
#include "gibc/fe_space.hpp"
#include "gibc/mesh.hpp"

namespace gibc {

/// Shortest exact decimal form (round-trips through strtod).
std::string format_double(double v);

/// Writes to a temporary file in the target directory and renames it into
/// place, so no output file is ever left partially written.
void write_text_atomic(const std::string& path, const std::string& content);

// ---- VTK legacy ASCII (version 3.0, UNSTRUCTURED_GRID, cell type 5) ----

std::string vtk_mesh_string(const Mesh& m);
/// Mesh plus point data re_u / im_u / abs_u at the mesh nodes (the vertex
/// dofs of the space).
std::string vtk_solution_string(const FeSpace& s, const Eigen::VectorXcd& u);

void write_mesh_vtk(const std::string& path, const Mesh& m);
void write_solution_vtk(const std::string& path, const FeSpace& s, const Eigen::VectorXcd& u);

struct VtkData {
    std::vector<std::array<double, 3>> points;
    std::vector<std::vector<int>> cells;
    std::vector<int> cell_types;
    std::map<std::string, std::vector<double>> point_data;
};
VtkData read_vtk(const std::string& path);

// ---- CSV with a header row ----

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};
std::string csv_string(const CsvTable& t);
void write_csv(const std::string& path, const CsvTable& t);
CsvTable read_csv(const std::string& path);

// ---- Matrix Market (coordinate complex general) ----

void write_matrix_market(const std::string& path, const CsrMatrix& A);
CsrMatrix read_matrix_market(const std::string& path);

} // namespace gibc

#endif
