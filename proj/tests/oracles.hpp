#pragma once

// Random states and brute-force reference computations for tests.

#include <cmath>
#include <random>

#include "telefid/states.hpp"

namespace oracle {

using namespace telefid;

inline Mat random_unitary(int n, std::mt19937_64& g) {
    std::normal_distribution<double> nd;
    Mat z(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) z(i, j) = cplx(nd(g), nd(g));
    Eigen::HouseholderQR<Mat> qr(z);
    Mat q = qr.householderQ();
    const Mat r = qr.matrixQR();
    for (int j = 0; j < n; ++j) q.col(j) *= std::polar(1.0, std::arg(r(j, j)));
    return q;
}

inline Vec haar_ket(int n, std::mt19937_64& g) { return random_unitary(n, g).col(0); }

// rank-k mixed state: Ginibre n x k, rho = G G^dag / Tr
inline DensityMatrix random_state(std::mt19937_64& g, int rank = 4, const std::vector<std::string>& names = kAB1) {
    std::normal_distribution<double> nd;
    Mat G(4, rank);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < rank; ++j) G(i, j) = cplx(nd(g), nd(g));
    const Mat m = G * G.adjoint();
    return normalized_state(Operator(qubits(names), m / m.trace().real()));
}

inline DensityMatrix random_product(std::mt19937_64& g) {
    const Vec a = haar_ket(2, g), b = haar_ket(2, g);
    Vec k(4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) k(2 * i + j) = a(i) * b(j);
    return pure_state(k);
}

inline std::array<double, 4> random_simplex(std::mt19937_64& g) {
    std::exponential_distribution<double> e(1.0);
    std::array<double, 4> p{};
    double s = 0;
    for (auto& x : p) s += (x = e(g));
    for (auto& x : p) x /= s;
    return p;
}

inline Mat su2(double a, double b, double c) {
    const cplx i(0, 1);
    Mat r1(2, 2), ry(2, 2), r2(2, 2);
    r1 << std::exp(-i * a / 2.0), 0, 0, std::exp(i * a / 2.0);
    ry << std::cos(b / 2), -std::sin(b / 2), std::sin(b / 2), std::cos(b / 2);
    r2 << std::exp(-i * c / 2.0), 0, 0, std::exp(i * c / 2.0);
    return r1 * ry * r2;
}

// Concurrence of a rank-2 state as the minimum average pure-state concurrence over
// two-element decompositions x_i = sum_j U_ij sqrt(l_j) v_j, U in SU(2).
// For pure ket x, C(x) |x|^2 = |x^T (Y (x) Y) x|, so the average is sum_i |(U M U^T)_ii|
// with M_jk = w_j^T (Y (x) Y) w_k.
inline double concurrence_rank2(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<Mat> es(rho.mat());
    Mat w(4, 2);
    for (int j = 0; j < 2; ++j) w.col(j) = std::sqrt(std::max(0.0, es.eigenvalues()(3 - j))) * es.eigenvectors().col(3 - j);
    Mat yy = Mat::Zero(4, 4);
    yy(0, 3) = -1;
    yy(3, 0) = -1;
    yy(1, 2) = 1;
    yy(2, 1) = 1;
    const Mat M = w.transpose() * yy * w;
    auto f = [&](const double* t) {
        const Mat u = su2(t[0], t[1], t[2]);
        const Mat d = u * M * u.transpose();
        return std::abs(d(0, 0)) + std::abs(d(1, 1));
    };
    const double pi = std::acos(-1.0);
    const int n = 24;
    double best = 1e300, at[3] = {0, 0, 0};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= n; ++j)
            for (int k = 0; k < n; ++k) {
                const double t[3] = {2 * pi * i / n, pi * j / n, 2 * pi * k / n};
                const double v = f(t);
                if (v < best) {
                    best = v;
                    std::copy(t, t + 3, at);
                }
            }
    for (double h = 2 * pi / n; h > 1e-9; h *= 0.5) {
        bool moved = true;
        while (moved) {
            moved = false;
            for (int d = 0; d < 3; ++d)
                for (double s : {h, -h}) {
                    double t[3] = {at[0], at[1], at[2]};
                    t[d] += s;
                    const double v = f(t);
                    if (v < best - 1e-16) {
                        best = v;
                        std::copy(t, t + 3, at);
                        moved = true;
                    }
                }
        }
    }
    return best;
}

// max over the four Bell states of <Phi_i|rho|Phi_i>
inline double max_bell_overlap(const DensityMatrix& rho) {
    double m = 0;
    for (int i = 0; i < 4; ++i) m = std::max(m, (bell(i).adjoint() * rho.mat() * bell(i))(0, 0).real());
    return m;
}

}  // namespace oracle
