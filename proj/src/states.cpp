#include "telefid/states.hpp"

#include <cmath>

namespace telefid {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

Vec ket4(cplx a, cplx b, cplx c, cplx d) {
    Vec v(4);
    v << a, b, c, d;
    return v;
}

Operator two_qubit(const Mat& m, const std::vector<std::string>& names) {
    require(names.size() == 2, "two-qubit state needs exactly two register names");
    return Operator(qubits(names), m);
}

}  // namespace

DensityMatrix::DensityMatrix(Operator op) {
    const Mat& m = op.data();
    const double herr = hermiticity_error(m);
    require(herr <= tol::herm, "density matrix not Hermitian (error " + std::to_string(herr) + ")");
    const Mat h = hermitian_part(m);
    const double tr = h.trace().real();
    require(std::abs(tr - 1.0) <= tol::trace, "density matrix trace " + std::to_string(tr) + " != 1");
    const double lmin = lambda_min(h);
    require(lmin >= -tol::psd, "density matrix has negative eigenvalue " + std::to_string(lmin));
    op_ = Operator(op.registers(), h);
}

DensityMatrix DensityMatrix::relabeled(const std::vector<std::string>& names) const {
    return DensityMatrix(relabel(op_, names));
}

DensityMatrix normalized_state(const Operator& m) {
    const double tr = trace_re(m);
    require(tr > 0, "cannot normalize an operator with non-positive trace");
    return DensityMatrix(Operator(m.registers(), hermitian_part(m.data()) / tr));
}

bool is_two_qubit(const DensityMatrix& rho) {
    const auto& r = rho.registers();
    return r.size() == 2 && r[0].dim == 2 && r[1].dim == 2;
}

Mat pauli(int i) {
    Mat s(2, 2);
    switch (i) {
        case 0: s << 1, 0, 0, 1; break;
        case 1: s << 0, 1, 1, 0; break;
        case 2: s << 0, cplx(0, -1), cplx(0, 1), 0; break;
        case 3: s << 1, 0, 0, -1; break;
        default: fail("pauli index must be in 0..3");
    }
    return s;
}

Mat bell_pauli(int i) {
    static const int map[4] = {0, 3, 1, 2};
    require(i >= 0 && i < 4, "Bell index must be in 0..3");
    return pauli(map[i]);
}

Vec bell(int i) {
    const double s = kInvSqrt2;
    switch (i) {
        case 0: return ket4(s, 0, 0, s);
        case 1: return ket4(s, 0, 0, -s);
        case 2: return ket4(0, s, s, 0);
        case 3: return ket4(0, s, -s, 0);
        default: fail("Bell index must be in 0..3");
    }
}

Vec schmidt_pure(double a0) {
    require(a0 > 0 && a0 < 1, "Schmidt weight a0 must lie in (0,1)");
    return ket4(std::sqrt(a0), 0, 0, std::sqrt(1 - a0));
}

DensityMatrix pure_state(const Vec& ket, const std::vector<std::string>& names) {
    require(ket.size() == 4, "pure_state expects a two-qubit ket");
    const double nrm = ket.norm();
    require(nrm > 0, "zero ket");
    return DensityMatrix(two_qubit(projector(ket / nrm), names));
}

DensityMatrix bell_state(int i, const std::vector<std::string>& names) { return pure_state(bell(i), names); }

DensityMatrix pure(double a0, const std::vector<std::string>& names) {
    return pure_state(schmidt_pure(a0), names);
}

DensityMatrix werner(double lam, const std::vector<std::string>& names) {
    require(lam >= -1.0 / 3 - 1e-15 && lam <= 1, "Werner parameter must lie in [-1/3, 1]");
    Mat m = lam * projector(bell(0)) + (1 - lam) * Mat::Identity(4, 4) / 4.0;
    return DensityMatrix(two_qubit(m, names));
}

DensityMatrix adc_choi(double p, const std::vector<std::string>& names) {
    require(p >= 0 && p < 1, "ADC parameter must lie in [0,1)");
    // (1 - p/2)|psi_p><psi_p| + (p/2)|01><01|
    const Vec psi = ket4(1, 0, 0, std::sqrt(1 - p)) / std::sqrt(2 - p);
    Mat m = (1 - p / 2) * projector(psi);
    m(1, 1) += p / 2;
    return DensityMatrix(two_qubit(m, names));
}

DensityMatrix bell_diagonal(const std::array<double, 4>& p, const std::vector<std::string>& names) {
    double s = 0;
    for (double x : p) {
        require(x >= 0, "Bell-diagonal weights must be non-negative");
        s += x;
    }
    require(std::abs(s - 1) <= 1e-12, "Bell-diagonal weights must sum to 1");
    Mat m = Mat::Zero(4, 4);
    for (int i = 0; i < 4; ++i) m += p[i] * projector(bell(i));
    return DensityMatrix(two_qubit(m, names));
}

DensityMatrix maximally_mixed(const std::vector<std::string>& names) {
    return DensityMatrix(two_qubit(Mat::Identity(4, 4) / 4.0, names));
}

Vec normalize_phase(const Vec& v) {
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        if (std::abs(v(k)) > 1e-12) return v * (std::abs(v(k)) / v(k));
    }
    return v;
}

void validate_basis(const MeasurementBasis& b) {
    require(b.vectors.size() == 4, "measurement basis needs four vectors");
    Mat g(4, 4);
    for (int i = 0; i < 4; ++i) {
        require(b.vectors[i].size() == 4, "basis vectors must be two-qubit kets");
        for (int j = 0; j < 4; ++j) g(i, j) = b.vectors[i].dot(b.vectors[j]);
    }
    const double err = (g - Mat::Identity(4, 4)).cwiseAbs().maxCoeff();
    require(err <= 1e-10, "basis is not orthonormal (Gram error " + std::to_string(err) + ")");
}

MeasurementBasis bell_basis() {
    MeasurementBasis b;
    for (int i = 0; i < 4; ++i) b.vectors.push_back(bell(i));
    b.kind = BasisKind::bell;
    return b;
}

MeasurementBasis eta_basis(double d0, double d0p) {
    require(d0 >= 0.5 && d0 < 1 && d0p >= 0.5 && d0p < 1, "eta basis needs 1/2 <= d0, d0' < 1");
    const double a = std::sqrt(d0), b = std::sqrt(1 - d0);
    const double c = std::sqrt(d0p), d = std::sqrt(1 - d0p);
    MeasurementBasis m;
    m.vectors = {ket4(a, 0, 0, b), ket4(b, 0, 0, -a), ket4(0, c, d, 0), ket4(0, d, -c, 0)};
    m.kind = BasisKind::eta;
    m.d0 = d0;
    m.d0p = d0p;
    validate_basis(m);
    return m;
}

static void require_unitary(const Mat& u, const char* what) {
    require(u.rows() == 2 && u.cols() == 2, std::string(what) + " must be 2x2");
    const double err = (u.adjoint() * u - Mat::Identity(2, 2)).cwiseAbs().maxCoeff();
    require(err <= 1e-10, std::string(what) + " is not unitary");
}

MeasurementBasis mes_basis(const Mat& u, const Mat& v) {
    require_unitary(u, "u");
    require_unitary(v, "v");
    Mat uv(4, 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) uv.block(2 * i, 2 * j, 2, 2) = u(i, j) * v;
    MeasurementBasis m;
    for (int i = 0; i < 4; ++i) m.vectors.push_back(normalize_phase(uv * bell(i)));
    m.kind = BasisKind::mes;
    m.u = u;
    m.v = v;
    validate_basis(m);
    return m;
}

MeasurementBasis custom_basis(std::vector<Vec> vectors) {
    MeasurementBasis m;
    m.vectors = std::move(vectors);
    m.kind = BasisKind::custom;
    validate_basis(m);
    return m;
}

std::vector<Mat> mes_w_matrices(const Mat& u, const Mat& v) {
    require_unitary(u, "u");
    require_unitary(v, "v");
    std::vector<Mat> w;
    for (int i = 0; i < 4; ++i) w.push_back(v * bell_pauli(i).conjugate() * u.transpose());
    return w;
}

Operator smolin_operator() {
    Mat m = Mat::Zero(16, 16);
    for (int i = 0; i < 4; ++i) {
        const Mat p = projector(bell(i));
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) m.block(4 * r, 4 * c, 4, 4) += p(r, c) * p;
    }
    return Operator(qubits({"A", "C", "B1", "B2"}), m);
}

}  // namespace telefid
