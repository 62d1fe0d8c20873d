#include "telefid/sdp_builders.hpp"

#include <algorithm>
#include <cmath>

namespace telefid {

namespace {

const std::vector<std::string> kACB = {"A", "C", "B1", "B2"};

Operator full_transpose(const Operator& m) { return Operator(m.registers(), m.data().transpose()); }

}  // namespace

Operator joint_state(const DensityMatrix& rho_ab, const DensityMatrix& sigma_bc) {
    require(is_two_qubit(rho_ab) && is_two_qubit(sigma_bc), "joint_state expects two-qubit states");
    return tensor(relabel(rho_ab.op(), {"A", "B1"}), relabel(sigma_bc.op(), {"B2", "C"}));
}

SdpProblem build_fef_sdp(const DensityMatrix& rho) {
    require(is_two_qubit(rho), "build_fef_sdp expects a two-qubit state");
    const Operator r = relabel(rho.op(), {"A", "B1"});
    const Registers regs = r.registers();
    SdpProblem p;
    p.name = "fef";
    const int x = p.add_block("X", regs);
    p.objective[x] = partial_transpose(r, {"B1"}) * -1.0;
    p.constant = 0.5;
    const Operator id = identity(regs);
    LinearMap pt;
    pt.partial_transpose({"B1"});
    p.add_psd(x, "X >= 0");
    p.add_constraint("X <= I", {term(x)}, Relation::leq, id);
    p.add_constraint("X^T >= -I/2", {term(x, pt)}, Relation::geq, id * -0.5);
    p.add_constraint("X^T <= I/2", {term(x, pt)}, Relation::leq, id * 0.5);
    return p;
}

Operator restricted_sep_objective(const DensityMatrix& rho_ab, const DensityMatrix& sigma_bc) {
    const Operator eta = reorder(joint_state(rho_ab, sigma_bc), kACB);
    const Operator marg = reorder(tensor(partial_trace(eta, {"A", "B1", "B2"}), identity(qubits({"C"}))), kACB);
    return eta - marg;
}

double restricted_sep_value(const DensityMatrix& rho_ab, const DensityMatrix& sigma_bc,
                            const std::vector<Operator>& ms) {
    const Operator g = restricted_sep_objective(rho_ab, sigma_bc);
    double v = 0.5;
    for (const auto& m : ms) v += inner(g, reorder(m, kACB));
    return v;
}

SdpProblem build_restricted_sep(const DensityMatrix& rho_ab, const DensityMatrix& sigma_bc, int K) {
    require(K >= 1, "K must be at least 1");
    const Operator g = restricted_sep_objective(rho_ab, sigma_bc);
    const Registers regs = qubits(kACB);
    SdpProblem p;
    p.name = "restricted_sep";
    p.constant = 0.5;
    LinearMap pt, trc;
    pt.partial_transpose({"B1", "B2"});
    trc.partial_trace({"A", "B1", "B2"}).scale(2.0);
    std::vector<Term> shared;
    for (int i = 0; i < K; ++i) {
        const std::string nm = "M" + std::to_string(i);
        const int b = p.add_block(nm, regs);
        p.objective[b] = g;
        p.add_psd(b, nm + " >= 0");
        p.add_constraint(nm + " <= I", {term(b)}, Relation::leq, identity(regs));
        p.add_constraint(nm + "^T_B >= 0", {term(b, pt)}, Relation::geq, zero(regs));
        shared.push_back(term(b, trc));
    }
    p.add_constraint("sum 2 Tr_C M <= I", shared, Relation::leq, identity(qubits({"A", "B1", "B2"})));
    return p;
}

std::vector<double> restricted_sep_slacks(const std::vector<Operator>& ms) {
    std::vector<double> out;
    Mat shared = Mat::Identity(8, 8);
    for (const auto& m0 : ms) {
        const Operator m = reorder(m0, kACB);
        out.push_back(lambda_min(m.data()));
        out.push_back(lambda_min(Mat::Identity(16, 16) - m.data()));
        out.push_back(lambda_min(partial_transpose(m, {"B1", "B2"}).data()));
        shared -= 2.0 * partial_trace(m, {"A", "B1", "B2"}).data();
    }
    out.push_back(lambda_min(shared));
    return out;
}

const char* to_string(ChoiVariant v) {
    return v == ChoiVariant::as_stated ? "as_stated" : "tripartite";
}

SdpProblem build_choi_ppt(const DensityMatrix& rho_ab, const DensityMatrix& sigma_bc, ChoiVariant variant) {
    const std::vector<std::string> outs = {"A'", "B1'", "B2'", "C'"};
    const std::vector<std::string> ins = {"A", "B1", "B2", "C"};
    std::vector<std::string> all = outs;
    all.insert(all.end(), ins.begin(), ins.end());

    // Delta = P_Phi0^{A'C'} (x) I_{B1'B2'} - I/2 on the outputs
    const Operator phi(qubits({"A'", "C'"}), projector(bell(0)));
    const Operator big = reorder(tensor(phi, identity(qubits({"B1'", "B2'"}))), outs);
    const Operator delta = big - identity(qubits(outs)) * 0.5;
    const Operator eta_t = full_transpose(joint_state(rho_ab, sigma_bc));

    SdpProblem p;
    p.name = std::string("choi_ppt_") + to_string(variant);
    p.constant = 0.5;
    const int j = p.add_block("J", qubits(all));
    p.objective[j] = tensor(delta, eta_t);
    p.add_psd(j, "J >= 0");
    LinearMap bob;
    bob.partial_transpose({"B1'", "B2'", "B1", "B2"});
    p.add_constraint("J^T_Bob >= 0", {term(j, bob)}, Relation::geq, zero(qubits(all)));
    if (variant == ChoiVariant::as_stated) {
        LinearMap tr;
        tr.partial_trace(outs);
        p.add_constraint("Tr_in J <= I", {term(j, tr)}, Relation::leq, identity(qubits(outs)));
    } else {
        LinearMap pa, pc, tr;
        pa.partial_transpose({"A'", "A"});
        pc.partial_transpose({"C'", "C"});
        tr.partial_trace(ins);
        p.add_constraint("J^T_A >= 0", {term(j, pa)}, Relation::geq, zero(qubits(all)));
        p.add_constraint("J^T_C >= 0", {term(j, pc)}, Relation::geq, zero(qubits(all)));
        p.add_constraint("Tr_out J <= I", {term(j, tr)}, Relation::leq, identity(qubits(ins)));
    }
    return p;
}

Operator certificate_case1() { return smolin_operator(); }

bool case2_window(double p, double beta) {
    const double lo = (std::sqrt(5.0) - 1) / 2;
    return p > lo && p < 1 && beta >= 0.5 && beta < p * p / (1 - p + p * p);
}

std::vector<SepPair> certificate_case2(double p, double beta) {
    require(case2_window(p, beta), "case 2 needs (sqrt5-1)/2 < p < 1 and 1/2 <= beta < p^2/(1-p+p^2)");
    const double x0 = std::sqrt(beta * (1 - p)) / (p * std::sqrt(1 - beta));
    const double x2 = std::sqrt((1 - beta) * (1 - p)) / (p * std::sqrt(beta));
    Mat d0 = Mat::Zero(2, 2), d2 = Mat::Zero(2, 2);
    d0(0, 0) = x0;
    d0(1, 1) = 1;
    d2(0, 0) = x2;
    d2(1, 1) = 1;
    const Mat z = pauli(3), x = pauli(1);
    const std::vector<Mat> ms = {d0, z * d0, x * d2, z * x * d2};
    std::vector<SepPair> out;
    for (int i = 0; i < 4; ++i) out.push_back({ms[i], Operator(qubits({"B1", "B2"}), projector(bell(i)))});
    return out;
}

Operator sep_x(const Mat& m) {
    const Mat big = tensor(Operator(qubits({"A"}), m), identity(qubits({"C"}))).data();
    return Operator(qubits({"A", "C"}), big.adjoint() * projector(bell(0)) * big);
}

std::vector<Operator> sep_operators(const std::vector<SepPair>& pairs) {
    std::vector<Operator> out;
    for (const auto& pr : pairs) out.push_back(tensor(sep_x(pr.m), relabel(pr.n, {"B1", "B2"})));
    return out;
}

double certificate_case3(const std::array<double, 4>& p, const std::array<double, 4>& q) {
    double s = 0;
    for (int i = 0; i < 4; ++i) s += p[i] * q[i];
    return std::max(0.5, s);
}

}  // namespace telefid
