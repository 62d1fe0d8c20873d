#pragma once

#include "telefid/sdp.hpp"
#include "telefid/states.hpp"

namespace telefid {

enum class FefMethod { magic_basis, oracle, sdp, closed_form };
const char* to_string(FefMethod m);

struct FefResult {
    double value = 0;
    Vec witness;  // maximally entangled ket reaching the value
    FefMethod method = FefMethod::magic_basis;
};

double concurrence(const DensityMatrix& rho);
// 2 * max(0, -lambda_min(rho^T_B)), so that Bell states give 1.
double negativity(const DensityMatrix& rho);

FefResult fef(const DensityMatrix& rho);
// Brute-force search over (U (x) I)|Phi_0>, U = Rz Ry Rz; a lower bound on fef.
FefResult fef_oracle(const DensityMatrix& rho, int grid_n = 24, int refine_steps = 40);

enum class OptFefPath { eq6_closed_form, sdp };
const char* to_string(OptFefPath p);

struct OptFef {
    double value = 0.5;
    OptFefPath path = OptFefPath::eq6_closed_form;
    int x_rank = 0;  // numerical rank of the SDP optimizer (sdp path only)
    SdpStatus status = SdpStatus::optimal;
};

// Tolerance used for the two-party SDP unless overridden.
SolveOptions fef_sdp_options();

// Throws SolverError when the SDP path does not certify optimality.
OptFef optimal_fef_2q(const DensityMatrix& rho, const SolveOptions& opts = fef_sdp_options());
// Always solves the SDP, skipping the closed-form test.
OptFef optimal_fef_sdp(const DensityMatrix& rho, const SolveOptions& opts = fef_sdp_options());

double fidelity_from_fef(double F, int d = 2);

struct LoccBounds {
    double F1 = 0;  // min of the two optimal FEFs
    double F2 = 0;  // (1 + C(rho) C(sigma)) / 2
};
LoccBounds locc_upper_bounds(const DensityMatrix& rho_ab, const DensityMatrix& sigma_bc);

}  // namespace telefid
