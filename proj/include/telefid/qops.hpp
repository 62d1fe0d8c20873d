#pragma once

// Dense operators on labeled registers.
//
// Index convention: registers are big-endian, so for registers (A, B1, B2, C)
// the basis ket |a b1 b2 c> sits at row ((a*2 + b1)*2 + b2)*2 + c.

#include <Eigen/Dense>

#include <complex>
#include <initializer_list>
#include <string>
#include <vector>

#include "telefid/errors.hpp"

namespace telefid {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

namespace tol {
inline constexpr double herm = 1e-10;          // max |M - M^dag| entrywise
inline constexpr double eig_residual = 1e-9;
inline constexpr double psd = 1e-9;            // smallest admissible eigenvalue is -psd
inline constexpr double trace = 1e-9;
}  // namespace tol

struct Register {
    std::string name;
    int dim = 2;
    bool operator==(const Register&) const = default;
};

using Registers = std::vector<Register>;

// Qubit registers from names, e.g. qubits({"A", "B1"}).
Registers qubits(std::initializer_list<std::string> names);
Registers qubits(const std::vector<std::string>& names);

// Allowed names: A, B1, B2, C, their primed versions, and N<k> for network nodes.
bool valid_register_name(const std::string& name);

int total_dim(const Registers& regs);

class Operator {
public:
    Operator() = default;
    Operator(Registers regs, Mat data);

    const Registers& registers() const { return regs_; }
    const Mat& data() const { return data_; }
    int side() const { return static_cast<int>(data_.rows()); }
    std::vector<std::string> names() const;
    int index_of(const std::string& name) const;  // -1 when absent
    bool has(const std::string& name) const { return index_of(name) >= 0; }

    Operator operator+(const Operator& o) const;
    Operator operator-(const Operator& o) const;
    Operator operator*(double s) const;
    Operator adjoint() const { return Operator(regs_, data_.adjoint()); }

private:
    Registers regs_;
    Mat data_;
};

Operator identity(const Registers& regs);
Operator zero(const Registers& regs);

Operator tensor(const Operator& a, const Operator& b);
Operator partial_trace(const Operator& m, const std::vector<std::string>& keep);
Operator partial_transpose(const Operator& m, const std::vector<std::string>& on);
// Permute registers into the given order (a permutation of m's names).
Operator reorder(const Operator& m, const std::vector<std::string>& order);
// Same matrix, new names (dims must agree).
Operator relabel(const Operator& m, const std::vector<std::string>& names);
// Single-register operator `local` acting on register `target` of `regs`,
// identity elsewhere.
Operator embed(const Mat& local, const std::string& target, const Registers& regs);

double trace_re(const Operator& m);
// Re Tr(a^dag b); registers must match.
double inner(const Operator& a, const Operator& b);

struct Eigensystem {
    RVec values;   // descending
    Mat vectors;   // columns, orthonormal
};

double hermiticity_error(const Mat& m);
Mat hermitian_part(const Mat& m);

// Symmetrizes first; throws when m is not Hermitian within tol::herm.
Eigensystem eig_hermitian(const Mat& m);
Eigensystem eig_hermitian(const Operator& m);
// Same, without the Hermiticity gate (caller has already symmetrized).
Eigensystem eig_hermitian_unchecked(const Mat& m);

double lambda_min(const Mat& h);
double lambda_max(const Mat& h);
double trace_norm(const Mat& h);

// |v><v|
Mat projector(const Vec& v);

}  // namespace telefid
