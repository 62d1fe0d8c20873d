#include "telefid/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "telefid/channels.hpp"
#include "telefid/sdp_builders.hpp"

namespace telefid {

void attach_bounds(ProtocolReport& r, const DensityMatrix& rho_ab, const DensityMatrix& sigma_bc) {
    const LoccBounds b = locc_upper_bounds(rho_ab, sigma_bc);
    r.F1 = b.F1;
    r.F2 = b.F2;
}

ProtocolReport bob_pvm_protocol(const DensityMatrix& rho_ab, const DensityMatrix& sigma_bc,
                                const MeasurementBasis& basis) {
    validate_basis(basis);
    const Operator eta = joint_state(rho_ab, sigma_bc);
    const Operator ia = identity(qubits({"A"})), ic = identity(qubits({"C"}));
    ProtocolReport rep;
    rep.p_succ = 0;
    double acc = 0;
    for (const auto& b : basis.vectors) {
        const Operator proj(qubits({"B1", "B2"}), projector(b.conjugate()));
        const Operator big = tensor(tensor(ia, proj), ic);
        const Operator branch = partial_trace(Operator(eta.registers(), big.data() * eta.data()), {"A", "C"});
        const double pr = trace_re(branch);
        if (pr < 1e-12) continue;  // mass goes to the replacement floor
        const double f = optimal_fef_2q(normalized_state(branch)).value;
        rep.branch_probs.push_back(pr);
        rep.branch_fefs.push_back(f);
        rep.p_succ += pr;
        acc += pr * f;
    }
    rep.average_fef = acc + (1 - rep.p_succ) / 2;
    return rep;
}

ProtocolReport protocol3(const DensityMatrix& rho_ab, const DensityMatrix& sigma_bc, double p) {
    const KrausChannel filt = filter_bstar(p);
    const Applied a = apply(filt, "B1", rho_ab.relabeled({"A", "B1"}));
    ProtocolReport pass = bob_pvm_protocol(a.state, sigma_bc, bell_basis());
    ProtocolReport rep;
    rep.branch_fefs = pass.branch_fefs;
    rep.p_succ = 0;
    double acc = 0;
    for (size_t i = 0; i < pass.branch_probs.size(); ++i) {
        rep.branch_probs.push_back(a.weight * pass.branch_probs[i]);
        rep.p_succ += rep.branch_probs.back();
        acc += rep.branch_probs.back() * pass.branch_fefs[i];
    }
    rep.average_fef = acc + (1 - rep.p_succ) / 2;
    return rep;
}

ProtocolReport entanglement_swap(const DensityMatrix& rho_ab, const DensityMatrix& sigma_bc) {
    return bob_pvm_protocol(rho_ab, sigma_bc, bell_basis());
}

namespace {

// Optimal FEF of (adc(p) on the first qubit) applied to sqrt(x0)|00> + sqrt(x1)|11>.
double branch_closed_form(double x0, double x1, double p) {
    const double r = std::sqrt(x0 * x1 * (1 - p));
    if (r >= p * x1) return 0.5 * (1 + 2 * r - p * x1);
    return 0.5 * (1 + x0 * (1 - p) / p);
}

}  // namespace

bool appendixB_window(double a0, double b0, double d0, double p) {
    const double lo = (std::sqrt(5.0) - 1) / 2;
    if (!(p > lo && p < 1)) return false;
    if (!(a0 >= 0.5 && a0 < p * p / (1 - p + p * p))) return false;
    // from (1-p) a0 b0 < p^2 a1 b1; the sign of p^2 in the a0 coefficient is -1
    if (!(b0 >= 0.5 && b0 < p * p * (1 - a0) / (p * p + a0 * (1 - p - p * p)))) return false;
    const double num = p * p * (1 - a0) * (1 - b0);
    return d0 >= 0.5 && d0 < num / (a0 * b0 * (1 - p) + num);
}

AppendixB appendixB_protocol2(double a0, double b0, double d0, double p) {
    require(a0 >= 0.5 && a0 < 1 && b0 >= 0.5 && b0 < 1 && d0 >= 0.5 && d0 < 1,
            "alpha0, beta0, delta0 must lie in [1/2, 1)");
    require(p > 0 && p < 1, "p must lie in (0,1)");
    const double a1 = 1 - a0, b1 = 1 - b0, d1 = 1 - d0;
    // unnormalized Schmidt weights of the four branches
    const double w[4][2] = {{d0 * a0 * b0, d1 * a1 * b1},
                            {d1 * a0 * b0, d0 * a1 * b1},
                            {d0 * a0 * b1, d1 * a1 * b0},
                            {d1 * a0 * b1, d0 * a1 * b0}};
    AppendixB out;
    bool all_low = true;
    for (int i = 0; i < 4; ++i) {
        const double pi = w[i][0] + w[i][1];
        const double x0 = w[i][0] / pi, x1 = w[i][1] / pi;
        out.probs[i] = pi;
        out.fefs[i] = branch_closed_form(x0, x1, p);
        all_low = all_low && std::sqrt(x0 * x1 * (1 - p)) < p * x1;
        out.value += pi * out.fefs[i];
    }
    out.window_value = 0.5 * (1 + a0 * (1 - p) / p);
    out.conditions_hold = all_low && appendixB_window(a0, b0, d0, p);
    return out;
}

double appendixD_breakpoint() { return (4 * std::sqrt(74.0) - 29) / 49; }

AppendixD appendixD_formulas(double p, double lam) {
    require(p >= 0 && p < 1, "p must lie in [0,1)");
    AppendixD out;
    if (std::abs(lam - 0.4) < 1e-12) {
        if (p <= appendixD_breakpoint())
            out.F_mes = (7 + 4 * std::sqrt(1 - p) - 2 * p) / 20;
        else if (p < 1.0 / 3)
            out.F_mes = (67 + 112 * p + 21 * p * p) / (40 * (3 + 7 * p));
        else
            out.F_mes = 0.5;
        const double f0 = (21 * p * p + 238 * p + 381) / (80 * (9 + 7 * p));
        const double f1 = p < 1.0 / 9 ? (127 - 63 * p) / 240 : 0.5;
        out.F_eta = 0.5 * (f0 + f1);
        out.closed_form = true;
        return out;
    }
    const DensityMatrix rho = adc_choi(p), sigma = werner(lam);
    out.F_mes = bob_pvm_protocol(rho, sigma, bell_basis()).average_fef;
    out.F_eta = bob_pvm_protocol(rho, sigma, eta_basis(0.75, 0.75)).average_fef;
    return out;
}

double bell_diag_popt(std::array<double, 4> p, std::array<double, 4> q) {
    double sp = 0, sq = 0;
    for (int i = 0; i < 4; ++i) {
        require(p[i] >= 0 && q[i] >= 0, "Bell-diagonal weights must be non-negative");
        sp += p[i];
        sq += q[i];
    }
    require(std::abs(sp - 1) <= 1e-9 && std::abs(sq - 1) <= 1e-9, "Bell-diagonal weights must sum to 1");
    std::sort(p.begin(), p.end(), std::greater<>());
    std::sort(q.begin(), q.end(), std::greater<>());
    double s = 0;
    for (int i = 0; i < 4; ++i) s += p[i] * q[i];
    return std::max(0.5, s);
}

std::array<double, 4> bell_weights(const DensityMatrix& rho) {
    require(is_two_qubit(rho), "bell_weights expects a two-qubit state");
    std::array<double, 4> w{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const cplx v = (bell(i).adjoint() * rho.mat() * bell(j))(0, 0);
            if (i == j) w[i] = v.real();
            else require(std::abs(v) <= 1e-10, "state is not Bell-diagonal");
        }
    return w;
}

double bell_diag_popt(const DensityMatrix& rho_bd, const DensityMatrix& sigma_bd) {
    return bell_diag_popt(bell_weights(rho_bd), bell_weights(sigma_bd));
}

}  // namespace telefid
