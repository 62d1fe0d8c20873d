#pragma once

#include "telefid/protocols.hpp"

namespace telefid {

// Chain: one noisy segment adc_choi(p), then N pure segments of Schmidt weight beta0.
struct NetworkConfig {
    int n_free_segments = 1;
    double p = 0.8;
    double beta0 = 0.5;
};

void validate(const NetworkConfig& cfg);

double rc_strategy1(int N, double p);
// 0 when p^2/(1-p) <= 1 (swapping cannot keep the optimal fidelity).
double rc_strategy2(int N, double p);
double rc_strategy1_limit(double p);  // N -> infinity
bool swap_chain_condition(int N, double p, double beta0);

enum class Strategy { I, II };
enum class ContractionOrder { left_to_right, right_to_left };

constexpr int kMaxNetworkSegments = 6;

// Strategy I: the pure chain is concentrated to one pure state with weight
// beta0^N / (beta0^N + beta1^N), then one Bell measurement against the noisy link.
// Strategy II: Bell measurement at every node.
ProtocolReport network_simulate(const NetworkConfig& cfg, Strategy strategy,
                                ContractionOrder order = ContractionOrder::left_to_right);
double strategy1_beta(int N, double beta0);

}  // namespace telefid
