#pragma once

// Shared column evaluators for figures and sweeps.

#include <string>
#include <vector>

#include "telefid/errors.hpp"
#include "telefid/measures.hpp"
#include "telefid/protocols.hpp"
#include "telefid/sdp_builders.hpp"

namespace telefid::cli {

inline double f1_star(const DensityMatrix& r, const DensityMatrix& s) { return locc_upper_bounds(r, s).F1; }
inline double f2_star(const DensityMatrix& r, const DensityMatrix& s) { return locc_upper_bounds(r, s).F2; }

inline double restricted_sep_fp(const DensityMatrix& r, const DensityMatrix& s, double tol, int K = 4) {
    SolveOptions o;
    o.tol = tol;
    const SdpSolution sol = solve(build_restricted_sep(r, s, K), o);
    if (sol.status != SdpStatus::optimal)
        throw SolverError(std::string("restricted-SEP SDP ended with status ") + to_string(sol.status));
    return sol.value;
}

inline double p1(const DensityMatrix& r, const DensityMatrix& s) {
    return bob_pvm_protocol(r, s, bell_basis()).average_fef;
}
inline double p2(const DensityMatrix& r, const DensityMatrix& s, double d0 = 0.75, double d0p = 0.75) {
    return bob_pvm_protocol(r, s, eta_basis(d0, d0p)).average_fef;
}

inline std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
    return x;
}

}  // namespace telefid::cli
