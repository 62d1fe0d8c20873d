#include "telefid/measures.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "telefid/sdp_builders.hpp"

namespace telefid {

namespace {

void require_2q(const DensityMatrix& rho, const char* what) {
    require(is_two_qubit(rho), std::string(what) + " expects a two-qubit state");
}

std::array<Vec, 4> magic_basis() {
    const cplx i(0, 1);
    return {bell(0), i * bell(1), i * bell(2), bell(3)};
}

double overlap(const Mat& rho, const Vec& v) { return (v.adjoint() * rho * v)(0, 0).real(); }

Mat su2(double a, double b, double c) {
    const cplx i(0, 1);
    Mat rz1(2, 2), ry(2, 2), rz2(2, 2);
    rz1 << std::exp(-i * a / 2.0), 0, 0, std::exp(i * a / 2.0);
    ry << std::cos(b / 2), -std::sin(b / 2), std::sin(b / 2), std::cos(b / 2);
    rz2 << std::exp(-i * c / 2.0), 0, 0, std::exp(i * c / 2.0);
    return rz1 * ry * rz2;
}

Vec rotated_phi0(double a, double b, double c) {
    const Mat u = su2(a, b, c);
    Vec v = Vec::Zero(4);
    // (U (x) I)|Phi_0> = (1/sqrt2) sum_k U|k> (x) |k>
    for (int k = 0; k < 2; ++k)
        for (int r = 0; r < 2; ++r) v(2 * r + k) += u(r, k) / std::sqrt(2.0);
    return v;
}

}  // namespace

const char* to_string(FefMethod m) {
    switch (m) {
        case FefMethod::magic_basis: return "magic_basis";
        case FefMethod::oracle: return "oracle";
        case FefMethod::sdp: return "sdp";
        case FefMethod::closed_form: return "closed_form";
    }
    return "?";
}

const char* to_string(OptFefPath p) { return p == OptFefPath::sdp ? "sdp" : "eq6_closed_form"; }

double concurrence(const DensityMatrix& rho) {
    require_2q(rho, "concurrence");
    const Mat yy = tensor(Operator(qubits({"A"}), pauli(2)), Operator(qubits({"B1"}), pauli(2))).data();
    const Mat tilde = yy * rho.mat().conjugate() * yy;
    const Eigensystem es = eig_hermitian_unchecked(rho.mat());
    const RVec sq = es.values.cwiseMax(0.0).cwiseSqrt();
    const Mat root = es.vectors * sq.asDiagonal() * es.vectors.adjoint();
    const Eigensystem r = eig_hermitian_unchecked(hermitian_part(root * tilde * root));
    const RVec l = r.values.cwiseMax(0.0).cwiseSqrt();  // descending
    return std::max(0.0, l(0) - l(1) - l(2) - l(3));
}

double negativity(const DensityMatrix& rho) {
    require_2q(rho, "negativity");
    const Operator pt = partial_transpose(rho.op(), {rho.registers()[1].name});
    return 2 * std::max(0.0, -lambda_min(pt.data()));
}

FefResult fef(const DensityMatrix& rho) {
    require_2q(rho, "fef");
    const auto e = magic_basis();
    Mat m(4, 4);
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) m(j, k) = (e[j].adjoint() * rho.mat() * e[k])(0, 0);
    Eigen::SelfAdjointEigenSolver<RMat> es(0.5 * (m.real() + m.real().transpose()));
    const RVec x = es.eigenvectors().col(3);
    Vec w = Vec::Zero(4);
    for (int j = 0; j < 4; ++j) w += x(j) * e[j];
    w.normalize();
    return {es.eigenvalues()(3), normalize_phase(w), FefMethod::magic_basis};
}

FefResult fef_oracle(const DensityMatrix& rho, int grid_n, int refine_steps) {
    require_2q(rho, "fef_oracle");
    require(grid_n >= 8, "fef_oracle needs grid_n >= 8");
    const Mat& r = rho.mat();
    const double pi = std::acos(-1.0);
    double best = -1;
    double ang[3] = {0, 0, 0};
    for (int i = 0; i < grid_n; ++i)
        for (int j = 0; j <= grid_n; ++j)
            for (int k = 0; k < grid_n; ++k) {
                const double a = 2 * pi * i / grid_n, b = pi * j / grid_n, c = 2 * pi * k / grid_n;
                const double v = overlap(r, rotated_phi0(a, b, c));
                if (v > best) {  // strict: ties keep the lexicographically first angles
                    best = v;
                    ang[0] = a;
                    ang[1] = b;
                    ang[2] = c;
                }
            }
    double h = 2 * pi / grid_n;
    for (int s = 0; s < refine_steps; ++s) {
        bool moved = true;
        while (moved) {
            moved = false;
            for (int d = 0; d < 3; ++d)
                for (double dir : {1.0, -1.0}) {
                    double t[3] = {ang[0], ang[1], ang[2]};
                    t[d] += dir * h;
                    const double v = overlap(r, rotated_phi0(t[0], t[1], t[2]));
                    if (v > best + 1e-15) {
                        best = v;
                        ang[0] = t[0];
                        ang[1] = t[1];
                        ang[2] = t[2];
                        moved = true;
                    }
                }
        }
        h *= 0.5;
    }
    return {best, normalize_phase(rotated_phi0(ang[0], ang[1], ang[2])), FefMethod::oracle};
}

SolveOptions fef_sdp_options() {
    SolveOptions o;
    o.tol = 1e-10;
    o.backend = SdpBackend::interior_point;
    return o;
}

OptFef optimal_fef_sdp(const DensityMatrix& rho, const SolveOptions& opts) {
    require_2q(rho, "optimal_fef_2q");
    const SdpSolution s = solve(build_fef_sdp(rho), opts);
    if (s.status != SdpStatus::optimal)
        throw SolverError(std::string("two-party FEF SDP did not converge (status ") + to_string(s.status) + ")");
    OptFef out;
    out.value = std::max(0.5, s.value);
    out.path = OptFefPath::sdp;
    out.status = s.status;
    const Eigensystem es = eig_hermitian_unchecked(hermitian_part(s.blocks[0].data()));
    for (int k = 0; k < es.values.size(); ++k) out.x_rank += es.values(k) > 1e-6 ? 1 : 0;
    return out;
}

OptFef optimal_fef_2q(const DensityMatrix& rho, const SolveOptions& opts) {
    require_2q(rho, "optimal_fef_2q");
    const Operator pt = partial_transpose(rho.op(), {rho.registers()[1].name});
    const Eigensystem es = eig_hermitian(pt);
    const int n = static_cast<int>(es.values.size());
    const double lmin = es.values(n - 1);
    if (lmin >= -1e-12) return {0.5, OptFefPath::eq6_closed_form, 0, SdpStatus::optimal};
    for (int k = n - 1; k >= 0 && es.values(k) <= lmin + 1e-9; --k) {
        const Vec v = es.vectors.col(k);
        const DensityMatrix pv = pure_state(v, {"A", "B1"});
        if (fef(pv).value >= 1 - 1e-8) return {0.5 * (1 + negativity(rho)), OptFefPath::eq6_closed_form, 0, SdpStatus::optimal};
    }
    return optimal_fef_sdp(rho, opts);
}

double fidelity_from_fef(double F, int d) {
    require(F >= 0 && F <= 1, "FEF must lie in [0,1]");
    require(d >= 2, "dimension must be at least 2");
    return (d * F + 1) / (d + 1);
}

LoccBounds locc_upper_bounds(const DensityMatrix& rho_ab, const DensityMatrix& sigma_bc) {
    LoccBounds b;
    b.F1 = std::min(optimal_fef_2q(rho_ab).value, optimal_fef_2q(sigma_bc).value);
    b.F2 = 0.5 * (1 + concurrence(rho_ab) * concurrence(sigma_bc));
    return b;
}

}  // namespace telefid
