#include "telefid/channels.hpp"

#include <cmath>

namespace telefid {

void validate_channel(const KrausChannel& ch) {
    require(!ch.kraus.empty(), "channel has no Kraus operators");
    const auto d = ch.kraus.front().rows();
    Mat s = Mat::Zero(d, d);
    for (const auto& k : ch.kraus) {
        require(k.rows() == d && k.cols() == d, "Kraus operators must share one square shape");
        s += k.adjoint() * k;
    }
    if (ch.kind == ChannelKind::trace_preserving) {
        const double err = (s - Mat::Identity(d, d)).cwiseAbs().maxCoeff();
        require(err <= 1e-10, "trace-preserving channel violates sum K^dag K = I");
    } else {
        require(lambda_max(s) <= 1 + 1e-10, "trace-non-increasing channel has sum K^dag K > I");
    }
}

KrausChannel identity_channel() {
    return {{Mat::Identity(2, 2)}, ChannelKind::trace_preserving};
}

KrausChannel adc(double p) {
    require(p >= 0 && p <= 1, "ADC parameter must lie in [0,1]");
    Mat k0 = Mat::Zero(2, 2), k1 = Mat::Zero(2, 2);
    k0(0, 0) = 1;
    k0(1, 1) = std::sqrt(1 - p);
    k1(0, 1) = std::sqrt(p);
    KrausChannel ch{{k0, k1}, ChannelKind::trace_preserving};
    validate_channel(ch);
    return ch;
}

KrausChannel depolarizing(double lam) {
    require(lam >= -1.0 / 3 - 1e-15 && lam <= 1, "depolarizing parameter must lie in [-1/3, 1]");
    const double f = (1 + 3 * lam) / 4;
    KrausChannel ch;
    ch.kraus.push_back(std::sqrt(std::max(f, 0.0)) * pauli(0));
    for (int i = 1; i < 4; ++i) ch.kraus.push_back(std::sqrt(std::max((1 - f) / 3, 0.0)) * pauli(i));
    validate_channel(ch);
    return ch;
}

KrausChannel pauli_channel(const std::array<double, 4>& p) {
    double s = 0;
    for (double x : p) {
        require(x >= 0, "Pauli channel weights must be non-negative");
        s += x;
    }
    require(std::abs(s - 1) <= 1e-12, "Pauli channel weights must sum to 1");
    KrausChannel ch;
    for (int i = 0; i < 4; ++i) ch.kraus.push_back(std::sqrt(p[i]) * bell_pauli(i));
    validate_channel(ch);
    return ch;
}

KrausChannel filter_bstar(double p) {
    const double lo = (std::sqrt(5.0) - 1) / 2;
    require(p > lo && p < 1, "filter A* needs (sqrt5-1)/2 < p < 1");
    Mat a = Mat::Zero(2, 2);
    a(0, 0) = 1;
    a(1, 1) = std::sqrt(1 - p) / p;
    KrausChannel ch{{a}, ChannelKind::trace_nonincreasing};
    validate_channel(ch);
    return ch;
}

Operator apply_unnormalized(const KrausChannel& ch, const std::string& target, const Operator& rho) {
    Mat out = Mat::Zero(rho.side(), rho.side());
    for (const auto& k : ch.kraus) {
        const Operator big = embed(k, target, rho.registers());
        out += big.data() * rho.data() * big.data().adjoint();
    }
    return Operator(rho.registers(), out);
}

Applied apply(const KrausChannel& ch, const std::string& target, const DensityMatrix& rho) {
    const Operator out = apply_unnormalized(ch, target, rho.op());
    const double w = trace_re(out);
    if (w < 1e-12) throw DomainError("channel output has weight below 1e-12");
    return {normalized_state(out), w};
}

DensityMatrix adc_on_pure(double p, double a0) {
    return apply(adc(p), "A", pure(a0)).state;
}

}  // namespace telefid
