#pragma once

#include <array>
#include <string>
#include <vector>

#include "telefid/qops.hpp"

namespace telefid {

// Positive, unit-trace, Hermitian operator. The constructor checks all three.
class DensityMatrix {
public:
    DensityMatrix() = default;
    explicit DensityMatrix(Operator op);

    const Operator& op() const { return op_; }
    const Mat& mat() const { return op_.data(); }
    const Registers& registers() const { return op_.registers(); }
    int side() const { return op_.side(); }

    DensityMatrix relabeled(const std::vector<std::string>& names) const;

private:
    Operator op_;
};

// Renormalizes `m` (trace must be > 0) and symmetrizes away rounding noise.
DensityMatrix normalized_state(const Operator& m);

bool is_two_qubit(const DensityMatrix& rho);

// Default labels for two-qubit constructors.
inline const std::vector<std::string> kAB1 = {"A", "B1"};

// Pauli matrices: pauli(0..3) = I, X, Y, Z.
Mat pauli(int i);
// Paulis ordered so that (bell_pauli(i) (x) I)|Phi_0> = |Phi_i> up to phase: I, Z, X, Y.
Mat bell_pauli(int i);

Vec bell(int i);
// sqrt(a0)|00> + sqrt(1-a0)|11>
Vec schmidt_pure(double a0);

DensityMatrix pure_state(const Vec& ket, const std::vector<std::string>& names = kAB1);
DensityMatrix bell_state(int i, const std::vector<std::string>& names = kAB1);
DensityMatrix pure(double a0, const std::vector<std::string>& names = kAB1);
DensityMatrix werner(double lam, const std::vector<std::string>& names = kAB1);
DensityMatrix adc_choi(double p, const std::vector<std::string>& names = kAB1);
DensityMatrix bell_diagonal(const std::array<double, 4>& p, const std::vector<std::string>& names = kAB1);
DensityMatrix maximally_mixed(const std::vector<std::string>& names = kAB1);

enum class BasisKind { bell, eta, mes, custom };

struct MeasurementBasis {
    std::vector<Vec> vectors;   // four orthonormal two-qubit kets
    BasisKind kind = BasisKind::custom;
    double d0 = 0.5, d0p = 0.5;  // eta parameters
    Mat u, v;                    // mes parameters
};

MeasurementBasis bell_basis();
MeasurementBasis eta_basis(double d0, double d0p);
MeasurementBasis mes_basis(const Mat& u, const Mat& v);
MeasurementBasis custom_basis(std::vector<Vec> vectors);
void validate_basis(const MeasurementBasis& b);

// W_i with W_i^* = V^* s_i U^dag, s_i = bell_pauli(i).
std::vector<Mat> mes_w_matrices(const Mat& u, const Mat& v);

// sum_i |Phi_i><Phi_i|_AC (x) |Phi_i><Phi_i|_B1B2, registers (A, C, B1, B2).
Operator smolin_operator();

// First nonzero amplitude made real-positive.
Vec normalize_phase(const Vec& v);

}  // namespace telefid
