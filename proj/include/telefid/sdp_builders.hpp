#pragma once

// The concrete optimization problems: two-party FEF, restricted separable
// operations with PPT relaxation, the general Choi-matrix PPT bound, the
// explicit feasible points, and the alternating lower bound.

#include <cstdint>
#include <vector>

#include "telefid/sdp.hpp"
#include "telefid/states.hpp"

namespace telefid {

// rho_ab relabeled to (A,B1), sigma_bc to (B2,C); returned on (A,B1,B2,C).
Operator joint_state(const DensityMatrix& rho_ab, const DensityMatrix& sigma_bc);

// max 1/2 - Tr(X rho^T_B), 0 <= X <= I, -I/2 <= X^T_B <= I/2.
SdpProblem build_fef_sdp(const DensityMatrix& rho);

// Objective operator of the restricted problem on (A,C,B1,B2):
// value(M_1..M_K) = 1/2 + sum_i Tr(G M_i).
Operator restricted_sep_objective(const DensityMatrix& rho_ab, const DensityMatrix& sigma_bc);
double restricted_sep_value(const DensityMatrix& rho_ab, const DensityMatrix& sigma_bc,
                            const std::vector<Operator>& ms);
// K blocks on (A,C,B1,B2): M_i >= 0, M_i <= I, M_i^T_B1B2 >= 0, sum_i 2 Tr_C M_i <= I.
SdpProblem build_restricted_sep(const DensityMatrix& rho_ab, const DensityMatrix& sigma_bc, int K = 4);
// Slacks of the restricted-problem constraints at the given operators.
std::vector<double> restricted_sep_slacks(const std::vector<Operator>& ms);

enum class ChoiVariant {
    as_stated,   // J >= 0, J^T_Bob >= 0, Tr_in J <= I_out
    tripartite,  // J >= 0, PPT across each of A, Bob, C, Tr_out J <= I_in
};
const char* to_string(ChoiVariant v);

// Variable J on (A',B1',B2',C',A,B1,B2,C), primed = output.
SdpProblem build_choi_ppt(const DensityMatrix& rho_ab, const DensityMatrix& sigma_bc,
                          ChoiVariant variant = ChoiVariant::as_stated);

// Feasible points.
Operator certificate_case1();  // on (A,C,B1,B2)

struct SepPair {
    Mat m;       // 2x2 on A
    Operator n;  // on (B1,B2)
};
bool case2_window(double p, double beta);
std::vector<SepPair> certificate_case2(double p, double beta);
// X_i = (m_i^dag (x) I) P_Phi0 (m_i (x) I) on (A,C); M_i = X_i (x) N_i on (A,C,B1,B2).
Operator sep_x(const Mat& m);
std::vector<Operator> sep_operators(const std::vector<SepPair>& pairs);
double certificate_case3(const std::array<double, 4>& p, const std::array<double, 4>& q);

struct AltInit {
    enum class Kind { bell_seed, random } kind = Kind::bell_seed;
    std::uint64_t seed = 1;
};

struct AlternatingResult {
    double value = 0.5;
    std::vector<SepPair> pairs;
    std::vector<double> history;  // value after each round, first entry is the seed
};

AlternatingResult alternating_lower_bound(const DensityMatrix& rho_ab, const DensityMatrix& sigma_bc, int K,
                                          AltInit init = {}, int rounds = 5, const SolveOptions& opts = {});

}  // namespace telefid
