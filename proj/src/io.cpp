#include "gibc/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gibc {

namespace fs = std::filesystem;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_text_atomic(const std::string& path, const std::string& content) {
    const fs::path target(path);
    const fs::path tmp = target.parent_path() / (target.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
        out << content;
        out.flush();
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw std::runtime_error("write failed: " + tmp.string());
        }
    }
    fs::rename(tmp, target);
}

namespace {

void vtk_header(std::ostringstream& os, const Mesh& m, const std::string& title) {
    os << "# vtk DataFile Version 3.0\n" << title << "\nASCII\nDATASET UNSTRUCTURED_GRID\n";
    os << "POINTS " << m.nodes.size() << " double\n";
    for (const auto& p : m.nodes)
        os << format_double(p[0]) << " " << format_double(p[1]) << " 0\n";
    os << "CELLS " << m.triangles.size() << " " << 4 * m.triangles.size() << "\n";
    for (const auto& t : m.triangles) os << "3 " << t[0] << " " << t[1] << " " << t[2] << "\n";
    os << "CELL_TYPES " << m.triangles.size() << "\n";
    for (std::size_t i = 0; i < m.triangles.size(); ++i) os << "5\n";
}

void vtk_scalars(std::ostringstream& os, const std::string& name, const std::vector<double>& v) {
    os << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
    for (double x : v) os << format_double(x) << "\n";
}

} // namespace

std::string vtk_mesh_string(const Mesh& m) {
    std::ostringstream os;
    vtk_header(os, m, "gibc_fem mesh");
    return os.str();
}

std::string vtk_solution_string(const FeSpace& s, const Eigen::VectorXcd& u) {
    const std::size_t nn = s.mesh.nodes.size();
    std::vector<double> re(nn), im(nn), mag(nn);
    for (std::size_t i = 0; i < nn; ++i) {
        re[i] = u[static_cast<int>(i)].real();
        im[i] = u[static_cast<int>(i)].imag();
        mag[i] = std::abs(u[static_cast<int>(i)]);
    }
    std::ostringstream os;
    vtk_header(os, s.mesh, "gibc_fem solution");
    os << "POINT_DATA " << nn << "\n";
    vtk_scalars(os, "re_u", re);
    vtk_scalars(os, "im_u", im);
    vtk_scalars(os, "abs_u", mag);
    return os.str();
}

void write_mesh_vtk(const std::string& path, const Mesh& m) {
    write_text_atomic(path, vtk_mesh_string(m));
}

void write_solution_vtk(const std::string& path, const FeSpace& s, const Eigen::VectorXcd& u) {
    write_text_atomic(path, vtk_solution_string(s, u));
}

VtkData read_vtk(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    VtkData data;
    std::string tok;
    while (in >> tok) {
        if (tok == "POINTS") {
            std::size_t n;
            std::string type;
            in >> n >> type;
            data.points.resize(n);
            for (auto& p : data.points) in >> p[0] >> p[1] >> p[2];
        } else if (tok == "CELLS") {
            std::size_t n, total;
            in >> n >> total;
            data.cells.resize(n);
            for (auto& c : data.cells) {
                int k;
                in >> k;
                c.resize(k);
                for (int& v : c) in >> v;
            }
        } else if (tok == "CELL_TYPES") {
            std::size_t n;
            in >> n;
            data.cell_types.resize(n);
            for (int& t : data.cell_types) in >> t;
        } else if (tok == "SCALARS") {
            std::string name, type;
            int comps;
            in >> name >> type >> comps;
            std::string lut, tablename;
            in >> lut >> tablename;  // LOOKUP_TABLE default
            auto& v = data.point_data[name];
            v.resize(data.points.size());
            for (double& x : v) in >> x;
        }
    }
    return data;
}

std::string csv_string(const CsvTable& t) {
    std::ostringstream os;
    for (std::size_t c = 0; c < t.header.size(); ++c) os << (c ? "," : "") << t.header[c];
    os << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << row[c];
        os << "\n";
    }
    return os.str();
}

void write_csv(const std::string& path, const CsvTable& t) {
    write_text_atomic(path, csv_string(t));
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    CsvTable t;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (first) {
            t.header = std::move(cells);
            first = false;
        } else {
            t.rows.push_back(std::move(cells));
        }
    }
    return t;
}

void write_matrix_market(const std::string& path, const CsrMatrix& A) {
    std::ostringstream os;
    os << "%%MatrixMarket matrix coordinate complex general\n";
    os << A.nrows << " " << A.ncols << " " << A.nnz() << "\n";
    for (int i = 0; i < A.nrows; ++i)
        for (int k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k)
            os << (i + 1) << " " << (A.col_idx[k] + 1) << " " << format_double(A.values[k].real())
               << " " << format_double(A.values[k].imag()) << "\n";
    write_text_atomic(path, os.str());
}

CsrMatrix read_matrix_market(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("%%MatrixMarket", 0) != 0)
        throw std::runtime_error("not a MatrixMarket file: " + path);
    do {
        if (!std::getline(in, line)) throw std::runtime_error("truncated MatrixMarket file");
    } while (!line.empty() && line[0] == '%');
    std::istringstream hs(line);
    int nrows, ncols, nnz;
    hs >> nrows >> ncols >> nnz;
    std::vector<std::tuple<int, int, cplx>> trips;
    trips.reserve(nnz);
    for (int k = 0; k < nnz; ++k) {
        int i, j;
        double re, im;
        in >> i >> j >> re >> im;
        trips.emplace_back(i - 1, j - 1, cplx(re, im));
    }
    return csr_from_triplets(nrows, ncols, std::move(trips));
}

} // namespace gibc
