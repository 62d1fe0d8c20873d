#pragma once

// Semidefinite programs over Hermitian operator blocks.
//
//   maximize   constant + sum_b Re Tr(C_b X_b)
//   subject to sum_t map_t(X_{b_t})  (<= | >= | ==)  rhs      for every constraint
//
// Blocks are free Hermitian variables; positivity is an ordinary constraint.

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "telefid/qops.hpp"

namespace telefid {

struct MapStep {
    enum class Kind { partial_trace, partial_transpose, tensor_identity, kron_left, reorder, scale };
    Kind kind;
    std::vector<std::string> names;  // keep / on / order
    Registers regs;                  // tensor_identity
    Operator factor;                 // kron_left
    double s = 1.0;                  // scale
};

// Composition of register-level linear maps, applied left to right.
class LinearMap {
public:
    LinearMap& partial_trace(std::vector<std::string> keep);
    LinearMap& partial_transpose(std::vector<std::string> on);
    LinearMap& tensor_identity(Registers regs);
    LinearMap& kron_left(Operator k);  // X -> k (x) X
    LinearMap& reorder(std::vector<std::string> order);
    LinearMap& scale(double s);

    Operator apply(const Operator& x) const;
    // Adjoint w.r.t. Re Tr(A^dag B); `input` are the registers the forward map consumes.
    Operator apply_adjoint(const Operator& y, const Registers& input) const;
    Registers output_registers(const Registers& input) const;

    const std::vector<MapStep>& steps() const { return steps_; }
    std::string describe() const;

private:
    std::vector<MapStep> steps_;
};

enum class Relation { leq, geq, eq };

struct Term {
    int block = 0;
    LinearMap map;
};

struct Constraint {
    std::string label;
    std::vector<Term> terms;
    Relation rel = Relation::geq;
    Operator rhs;
};

struct VarBlock {
    std::string name;
    Registers regs;
};

struct SdpProblem {
    std::string name;
    std::vector<VarBlock> blocks;
    std::vector<Operator> objective;  // one Hermitian C_b per block
    double constant = 0;
    std::vector<Constraint> constraints;

    int add_block(std::string block_name, Registers regs);
    void add_constraint(std::string label, std::vector<Term> terms, Relation rel, Operator rhs);
    // X_b >= 0 shorthand
    void add_psd(int block, std::string label);
    void validate() const;
    int real_dimension() const;  // number of real scalar unknowns
};

inline Term term(int block, LinearMap map = {}) { return Term{block, std::move(map)}; }

enum class SdpStatus { optimal, max_iter, infeasible };
enum class SdpBackend { automatic, interior_point, admm };

const char* to_string(SdpStatus s);
const char* to_string(SdpBackend b);

struct SolveOptions {
    double tol = 1e-8;
    int max_iter = 200;          // interior point
    int admm_max_iter = 20000;
    double time_limit_s = 0;     // 0: none
    SdpBackend backend = SdpBackend::automatic;
    // called every few iterations with (iteration, value, gap)
    std::function<void(int, double, double)> progress;
};

struct SdpSolution {
    double value = 0;        // objective at the returned blocks
    double bound = 0;        // dual objective (upper bound when the dual is feasible)
    std::vector<Operator> blocks;
    double duality_gap = 0;
    double max_violation = 0;
    int iterations = 0;
    SdpStatus status = SdpStatus::max_iter;
    SdpBackend backend = SdpBackend::interior_point;
    double seconds = 0;
};

SdpSolution solve(const SdpProblem& p, const SolveOptions& opts = {});

double objective_value(const SdpProblem& p, const std::vector<Operator>& x);
Operator constraint_lhs(const SdpProblem& p, const Constraint& c, const std::vector<Operator>& x);
// Slack of each constraint: lambda_min of (lhs - rhs) for >=, of (rhs - lhs) for <=,
// minus max |lhs - rhs| for ==. Negative means violated.
std::vector<double> constraint_slacks(const SdpProblem& p, const std::vector<Operator>& x);
double max_violation(const SdpProblem& p, const std::vector<Operator>& x);

// Orthonormal real coordinates of Hermitian matrices: diagonal entries, then
// sqrt2*Re and sqrt2*Im of the strict upper triangle.
RVec hermitian_coords(const Mat& h);
Mat hermitian_from_coords(const RVec& y, int n);
Mat hermitian_basis_element(int k, int n);

// Text dump for golden-file regression (values rounded, no timings).
void dump(std::ostream& os, const SdpProblem& p, const SdpSolution& s);

namespace detail {
SdpSolution solve_interior_point(const SdpProblem& p, const SolveOptions& opts);
SdpSolution solve_admm(const SdpProblem& p, const SolveOptions& opts);
}  // namespace detail

}  // namespace telefid
