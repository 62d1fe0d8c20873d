#pragma once

#include <array>
#include <optional>
#include <vector>

#include "telefid/measures.hpp"
#include "telefid/states.hpp"

namespace telefid {

struct ProtocolReport {
    std::vector<double> branch_probs;
    std::vector<double> branch_fefs;
    double p_succ = 1;
    double average_fef = 0.5;  // sum prob_i fef_i + (1 - p_succ)/2
    std::optional<double> F1, F2, F_P;
};

// Fill F1/F2 of the report from locc_upper_bounds.
void attach_bounds(ProtocolReport& r, const DensityMatrix& rho_ab, const DensityMatrix& sigma_bc);

// Bob measures (B1,B2) with projectors onto the conjugated basis vectors, each
// A-C branch is post-processed optimally (optimal_fef_2q).
ProtocolReport bob_pvm_protocol(const DensityMatrix& rho_ab, const DensityMatrix& sigma_bc,
                                const MeasurementBasis& basis);
ProtocolReport protocol3(const DensityMatrix& rho_ab, const DensityMatrix& sigma_bc, double p);
ProtocolReport entanglement_swap(const DensityMatrix& rho_ab, const DensityMatrix& sigma_bc);

struct AppendixB {
    double value = 0;              // closed-form average over the four branches
    double window_value = 0;       // 1/2 [1 + alpha0 (1-p)/p]
    std::array<double, 4> probs{}; // branch probabilities
    std::array<double, 4> fefs{};  // per-branch closed forms
    bool conditions_hold = false;  // all four branch inequalities and the parameter ranges
};
// rho = (adc(p) on A) pure(alpha0), sigma = pure(beta0), basis eta_basis(delta0, delta0).
AppendixB appendixB_protocol2(double alpha0, double beta0, double delta0, double p);
bool appendixB_window(double alpha0, double beta0, double delta0, double p);

struct AppendixD {
    double F_mes = 0;  // Bell (any maximally entangled) basis on adc_choi(p) x werner(lam)
    double F_eta = 0;  // eta_basis(3/4, 3/4)
    bool closed_form = false;
};
// Closed forms at lam = 2/5; any other lam runs the simulator.
AppendixD appendixD_formulas(double p, double lam = 0.4);
double appendixD_breakpoint();  // (4 sqrt74 - 29)/49

double bell_diag_popt(std::array<double, 4> p, std::array<double, 4> q);
double bell_diag_popt(const DensityMatrix& rho_bd, const DensityMatrix& sigma_bd);
// Bell-basis weights; throws when the state is not Bell-diagonal within 1e-10.
std::array<double, 4> bell_weights(const DensityMatrix& rho);

}  // namespace telefid
