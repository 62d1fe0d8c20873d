#include "telefid/network.hpp"

#include <cmath>

#include "telefid/sdp_builders.hpp"

namespace telefid {

namespace {

double ratio_r(double p) {
    const double a = p * p, b = (1 - p) * (1 - p);
    return (a - b) / (a + b);
}

struct Branch {
    double weight;
    DensityMatrix state;
};

// Bell measurement on (B1,B2) of left (A,B1) x right (B2,C); returns corrected (A,C) branches.
std::vector<Branch> bell_swap(const DensityMatrix& left, const DensityMatrix& right) {
    const Operator eta = joint_state(left, right);
    const Operator ia = identity(qubits({"A"})), ic = identity(qubits({"C"}));
    const MeasurementBasis bb = bell_basis();
    std::vector<Branch> out;
    for (int i = 0; i < 4; ++i) {
        const Operator proj(qubits({"B1", "B2"}), projector(bb.vectors[i].conjugate()));
        const Operator big = tensor(tensor(ia, proj), ic);
        Operator branch = partial_trace(Operator(eta.registers(), big.data() * eta.data()), {"A", "C"});
        const double pr = trace_re(branch);
        if (pr < 1e-12) continue;
        const Mat u = tensor(identity(qubits({"A"})), Operator(qubits({"C"}), bell_pauli(i))).data();
        branch = Operator(branch.registers(), u * branch.data() * u.adjoint());
        out.push_back({pr, normalized_state(branch)});
    }
    return out;
}

void merge_into(std::vector<Branch>& acc, double w, const DensityMatrix& s) {
    for (auto& b : acc)
        if ((b.state.mat() - s.mat()).cwiseAbs().maxCoeff() < 1e-12) {
            b.weight += w;
            return;
        }
    acc.push_back({w, s});
}

}  // namespace

void validate(const NetworkConfig& cfg) {
    require(cfg.n_free_segments >= 1, "network needs N >= 1");
    require(cfg.p > 0 && cfg.p < 1, "network p must lie in (0,1)");
    require(cfg.beta0 >= 0.5 && cfg.beta0 < 1, "network beta0 must lie in [1/2, 1)");
}

double rc_strategy1(int N, double p) {
    require(N >= 1, "N must be >= 1");
    require(p > 0 && p < 1, "p must lie in (0,1)");
    const double r = ratio_r(p);
    return N - N * std::pow(1 - r * r, 1.0 / (2 * N));
}

double rc_strategy1_limit(double p) {
    require(p > 0 && p < 1, "p must lie in (0,1)");
    const double r = ratio_r(p);
    return -0.5 * std::log(1 - r * r);
}

double rc_strategy2(int N, double p) {
    require(N >= 1, "N must be >= 1");
    require(p > 0 && p < 1, "p must lie in (0,1)");
    const double x = std::pow(p * p / (1 - p), 1.0 / N);
    if (x <= 1) return 0;
    const double q = (x - 1) / (x + 1);
    return N - N * std::sqrt(1 - q * q);
}

bool swap_chain_condition(int N, double p, double beta0) {
    validate(NetworkConfig{N, p, beta0});
    const double bn0 = std::pow(beta0, N), bn1 = std::pow(1 - beta0, N);
    return std::sqrt(bn0 * bn1 * (1 - p)) <= p * bn1;
}

double strategy1_beta(int N, double beta0) {
    const double bn0 = std::pow(beta0, N), bn1 = std::pow(1 - beta0, N);
    return bn0 / (bn0 + bn1);
}

ProtocolReport network_simulate(const NetworkConfig& cfg, Strategy strategy, ContractionOrder order) {
    validate(cfg);
    const int N = cfg.n_free_segments;
    require(N <= kMaxNetworkSegments, "network_simulate supports N <= 6");
    const DensityMatrix noisy = adc_choi(cfg.p);
    if (strategy == Strategy::I)
        return bob_pvm_protocol(noisy, pure(strategy1_beta(N, cfg.beta0)), bell_basis());

    const DensityMatrix seg = pure(cfg.beta0);
    std::vector<Branch> branches;
    if (order == ContractionOrder::left_to_right) {
        branches.push_back({1.0, noisy});
        for (int k = 1; k < N; ++k) {
            std::vector<Branch> next;
            for (const auto& b : branches)
                for (const auto& s : bell_swap(b.state.relabeled({"A", "B1"}), seg))
                    merge_into(next, b.weight * s.weight, s.state);
            branches = std::move(next);
        }
    } else {
        branches.push_back({1.0, seg});
        for (int k = 1; k < N; ++k) {
            std::vector<Branch> next;
            for (const auto& b : branches)
                for (const auto& s : bell_swap(seg.relabeled({"A", "B1"}), b.state.relabeled({"B2", "C"})))
                    merge_into(next, b.weight * s.weight, s.state);
            branches = std::move(next);
        }
    }

    ProtocolReport rep;
    rep.p_succ = 0;
    rep.average_fef = 0;
    double lost = 0;
    for (const auto& b : branches) {
        const ProtocolReport r = order == ContractionOrder::left_to_right
                                     ? bob_pvm_protocol(b.state.relabeled({"A", "B1"}), seg, bell_basis())
                                     : bob_pvm_protocol(noisy, b.state.relabeled({"B2", "C"}), bell_basis());
        for (size_t i = 0; i < r.branch_probs.size(); ++i) {
            rep.branch_probs.push_back(b.weight * r.branch_probs[i]);
            rep.branch_fefs.push_back(r.branch_fefs[i]);
            rep.p_succ += rep.branch_probs.back();
        }
        rep.average_fef += b.weight * r.average_fef;
        lost += b.weight;
    }
    // branches dropped below 1e-12 during swapping keep the replacement floor
    rep.average_fef += (1 - lost) / 2;
    return rep;
}

}  // namespace telefid
