#ifndef GIBC_EXPERIMENTS_HPP
#define GIBC_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "gibc/dtn.hpp"
#include "gibc/problem.hpp"

namespace gibc {

struct StudyConfig {
    ProblemSpec spec;
    int degree = 2;
    int nx = 8, ny = 4;
    int levels = 5;
    double converge_ratio = 0.7;   // d_l ratio below which a study counts as converging
    int dtn_modes = 64;

    std::string canonical() const;         // key=value serialization
    std::uint64_t hash() const;            // FNV-1a of canonical()
};

struct RefinementRecord {
    int level = 0;
    double h = 0.0;
    int ndofs = 0;
    double l2_norm = 0.0;
    double valpha_norm = 0.0;
    double rel_l2_diff = -1.0;     // vs prolonged previous level; -1 on level 0
    double infsup_beta = -1.0;
    int infsup_iterations = 0;
    std::string status = "ok";     // ok | singular | non-convergence
    double wall_seconds = 0.0;     // coarse timing; kept out of report files
};

struct RefinementReport {
    StudyConfig config;
    std::uint64_t config_hash = 0;
    std::vector<RefinementRecord> records;
    std::string verdict;           // converging | non-converging
};

/// Solves on `levels` nested meshes, prolongs each solution exactly onto
/// the next level and records the successive relative L2 differences and
/// the per-level inf-sup constants. Solver failures are recorded per
/// level; the study continues.
RefinementReport refinement_study(const StudyConfig& cfg);

struct InfSupRecord {
    int level = 0;
    double h = 0.0;
    int ndofs = 0;
    double beta = -1.0;
    int iterations = 0;
    std::string status = "ok";
};

struct InfSupReport {
    StudyConfig config;
    std::uint64_t config_hash = 0;
    std::vector<InfSupRecord> records;
};

InfSupReport infsup_study(const StudyConfig& cfg);

struct PoincareRecord {
    int cells = 0;
    double h = 0.0;
    double mu = 0.0;               // smallest eigenvalue; 1/mu is the Poincare constant
    int iterations = 0;
};

/// Discrete Poincare eigenvalue on (0,1): smallest mu of the pencil
/// (weighted stiffness, mass) on P1 with phi(1) = 0 eliminated, for a
/// sequence of uniform grids (cells doubling per entry).
std::vector<PoincareRecord> poincare_study(double alpha, int base_cells, int refinements);

/// Smallest eigenvalue on one grid.
PoincareRecord poincare_eigenvalue(double alpha, int cells);

/// Max relative difference between the monolithic boundary trace and the
/// reduced 1D solution for the given DtN operator.
double equivalence_check(const ProblemSpec& spec, const FeSpace& s, const DtnOperator& dtn);

std::uint64_t fnv1a(const std::string& s);

} // namespace gibc

#endif
