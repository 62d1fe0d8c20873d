#pragma once

#include <array>
#include <string>
#include <vector>

#include "telefid/states.hpp"

namespace telefid {

enum class ChannelKind { trace_preserving, trace_nonincreasing };

struct KrausChannel {
    std::vector<Mat> kraus;  // single-qubit Kraus operators
    ChannelKind kind = ChannelKind::trace_preserving;
};

void validate_channel(const KrausChannel& ch);

KrausChannel identity_channel();
KrausChannel adc(double p);
KrausChannel depolarizing(double lam);
// Kraus operators sqrt(p_i) bell_pauli(i), so that (pauli_channel(p) (x) I) Phi_0 is bell_diagonal(p).
KrausChannel pauli_channel(const std::array<double, 4>& p);
KrausChannel filter_bstar(double p);

struct Applied {
    DensityMatrix state;  // renormalized
    double weight = 1.0;  // trace before renormalization
};

// sum_k K rho K^dag on register `target`, without renormalizing.
Operator apply_unnormalized(const KrausChannel& ch, const std::string& target, const Operator& rho);
Applied apply(const KrausChannel& ch, const std::string& target, const DensityMatrix& rho);

// adc(p) on A of pure(a0); adc_on_pure(p, 1/2) == adc_choi(p).
DensityMatrix adc_on_pure(double p, double a0);

}  // namespace telefid
