// Acceptance run: one line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "oracles.hpp"
#include "telefid/channels.hpp"
#include "telefid/network.hpp"
#include "telefid/protocols.hpp"
#include "telefid/sdp_builders.hpp"

using namespace telefid;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

const double kGolden = (std::sqrt(5.0) - 1) / 2;

// every optimal solve seen by the run is checked against these
int g_solves = 0, g_dirty = 0;
double g_worst_gap = 0, g_worst_viol = 0;

void record(const SdpSolution& s) {
    if (s.status != SdpStatus::optimal) return;
    ++g_solves;
    const double rel = s.duality_gap / (1 + std::abs(s.value));
    g_worst_gap = std::max(g_worst_gap, rel);
    g_worst_viol = std::max(g_worst_viol, s.max_violation);
    if (rel > 1e-7 || s.max_violation > 1e-8) ++g_dirty;
}

double rsep(const DensityMatrix& r, const DensityMatrix& s, double* secs = nullptr) {
    const auto t0 = Clock::now();
    const SdpSolution sol = solve(build_restricted_sep(r, s));
    if (secs) *secs = seconds_since(t0);
    record(sol);
    if (sol.status != SdpStatus::optimal) throw SolverError("restricted_sep not optimal");
    return sol.value;
}

double fef_sdp_value(const DensityMatrix& r) {
    const SdpSolution s = solve(build_fef_sdp(r), fef_sdp_options());
    record(s);
    if (s.status != SdpStatus::optimal) throw SolverError("fef sdp not optimal");
    return s.value;
}

double p1(const DensityMatrix& r, const DensityMatrix& s) { return bob_pvm_protocol(r, s, bell_basis()).average_fef; }
double p2(const DensityMatrix& r, const DensityMatrix& s) {
    return bob_pvm_protocol(r, s, eta_basis(0.75, 0.75)).average_fef;
}
double eta_closed(double p) { return 0.5 * ((21 * p * p + 238 * p + 381) / (80 * (9 + 7 * p)) + 0.5); }

struct Outcome {
    bool pass;
    std::string detail;
};

int g_failed = 0;

void criterion(int n, const char* title, const std::function<Outcome()>& body) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++g_failed;
    std::printf("[%s] criterion %d: %s (%s; %.1f s)\n", o.pass ? "PASS" : "FAIL", n, title, o.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

}  // namespace

int main() {
    criterion(1, "two-party SDP vs closed form on 200 random states", [] {
        std::mt19937_64 g(101);
        double worst = 0, sdp_secs = 0;
        int applied = 0;
        for (int k = 0; k < 200; ++k) {
            // even k: Haar pure; odd k: rank-2 mixture with Haar eigenvectors
            const Mat u = oracle::random_unitary(4, g);
            const double w = k % 2 == 0 ? 1.0 : std::uniform_real_distribution<double>(0.5, 1)(g);
            const DensityMatrix r = normalized_state(
                Operator(qubits({"A", "B1"}), w * projector(u.col(0)) + (1 - w) * projector(u.col(1))));
            const OptFef o = optimal_fef_2q(r);
            const auto t0 = Clock::now();
            const double s = fef_sdp_value(r);
            sdp_secs += seconds_since(t0);
            if (o.path == OptFefPath::eq6_closed_form) {
                ++applied;
                worst = std::max(worst, std::abs(s - o.value));
            }
        }
        return Outcome{worst <= 1e-6 && sdp_secs < 5 && applied >= 100,
                       fmt("closed form applied %.0f times, max diff %.2e, sdp time %.2f s", applied, worst, sdp_secs)};
    });

    criterion(2, "amplitude damping closed form at 50 points", [] {
        double worst = 0;
        for (int k = 1; k <= 50; ++k) {
            double p = k / 51.0;
            if (std::abs(p - kGolden) < 1e-6) p += 1e-4;
            const double want = p < kGolden ? 0.5 * (1 + std::sqrt(1 - p) - p / 2) : 0.5 * (1 + (1 - p) / (2 * p));
            worst = std::max(worst, std::abs(optimal_fef_2q(adc_choi(p)).value - want));
        }
        return Outcome{worst <= 1e-6, fmt("max diff %.2e", worst)};
    });

    criterion(3, "Bell-basis protocol on sorted Bell-diagonal pairs", [] {
        std::mt19937_64 g(103);
        double worst = 0;
        for (int k = 0; k < 100; ++k) {
            auto p = oracle::random_simplex(g), q = oracle::random_simplex(g);
            std::sort(p.begin(), p.end(), std::greater<>());
            std::sort(q.begin(), q.end(), std::greater<>());
            double s = 0;
            for (int i = 0; i < 4; ++i) s += p[i] * q[i];
            worst = std::max(worst, std::abs(p1(bell_diagonal(p), bell_diagonal(q)) - std::max(0.5, s)));
        }
        return Outcome{worst <= 1e-8, fmt("max diff %.2e", worst)};
    });

    criterion(4, "pure x pure: restricted separable bound equals F2*", [] {
        double worst = 0, slowest = 0;
        const double c2 = 2 * std::sqrt(0.75 * 0.25);
        for (int k = 0; k < 10; ++k) {
            const double a = 0.51 + 0.048 * k;
            double secs = 0;
            const double v = rsep(pure(a), pure(0.75), &secs);
            slowest = std::max(slowest, secs);
            worst = std::max(worst, std::abs(v - 0.5 * (1 + 2 * std::sqrt(a * (1 - a)) * c2)));
        }
        return Outcome{worst <= 1e-4 && slowest < 30, fmt("max diff %.2e, slowest solve %.2f s", worst, slowest)};
    });

    criterion(5, "lambda = 2/5 crossing at p = 0.4, 0.6, 0.8", [] {
        double w1 = 0, w2 = 0, margin = 1;
        for (double p : {0.4, 0.6, 0.8}) {
            const DensityMatrix r = adc_choi(p), s = werner(0.4);
            w1 = std::max(w1, std::abs(p1(r, s) - 0.5));
            const double v = p2(r, s);
            w2 = std::max(w2, std::abs(v - eta_closed(p)));
            margin = std::min(margin, v - 0.5);
        }
        return Outcome{w1 <= 1e-8 && w2 <= 1e-8 && margin > 0,
                       fmt("P1 diff %.2e, P2 diff %.2e, min P2 - 1/2 = %.2e", w1, w2, margin)};
    });

    criterion(6, "lambda = 2/3: Bell protocol dominates, matches the separable bound", [] {
        double worst_order = 1, worst_fp = 0;
        for (int k = 1; k <= 20; ++k) {
            const double p = k / 21.0;
            worst_order = std::min(worst_order, p1(adc_choi(p), werner(2.0 / 3)) - p2(adc_choi(p), werner(2.0 / 3)));
        }
        for (double p : {0.1, 0.3, 0.5, 0.7, 0.9})
            worst_fp = std::max(worst_fp, std::abs(rsep(adc_choi(p), werner(2.0 / 3)) - p1(adc_choi(p), werner(2.0 / 3))));
        return Outcome{worst_order >= -1e-10 && worst_fp <= 1e-3,
                       fmt("min P1 - P2 = %.2e, max |F_P - P1| = %.2e", worst_order, worst_fp)};
    });

    criterion(7, "filtering protocol beats both at lambda = 2/5", [] {
        double best = -1, at = 0;
        for (int k = 1; k <= 20; ++k) {
            const double p = kGolden + (1 - kGolden) * k / 21.0;
            const DensityMatrix r = adc_choi(p), s = werner(0.4);
            const double gain = protocol3(r, s, p).average_fef - std::max(p1(r, s), p2(r, s));
            if (gain > best) best = gain, at = p;
        }
        return Outcome{best > 1e-4, fmt("best gain %.2e at p = %.4f", best, at)};
    });

    criterion(8, "eta-basis optimality window", [] {
        std::mt19937_64 g(107);
        std::uniform_real_distribution<double> u(0, 1);
        double worst = 0;
        int found = 0, tries = 0;
        while (found < 20 && tries < 100000) {
            ++tries;
            const double p = kGolden + (1 - kGolden) * u(g), a0 = 0.5 + 0.5 * u(g), b0 = 0.5 + 0.5 * u(g),
                         d0 = 0.5 + 0.5 * u(g);
            if (!appendixB_window(a0, b0, d0, p)) continue;
            ++found;
            const AppendixB b = appendixB_protocol2(a0, b0, d0, p);
            const DensityMatrix r = adc_on_pure(p, a0), s = pure(b0);
            const double sim = bob_pvm_protocol(r, s, eta_basis(d0, d0)).average_fef;
            const double fmin = std::min(optimal_fef_2q(r).value, optimal_fef_2q(s).value);
            const double want = 0.5 * (1 + a0 * (1 - p) / p);
            if (!b.conditions_hold) worst = 1;
            worst = std::max({worst, std::abs(b.value - want), std::abs(sim - want), std::abs(fmin - want)});
        }
        return Outcome{found == 20 && worst <= 1e-8, fmt("%.0f window points, max diff %.2e", found, worst)};
    });

    criterion(9, "case-2 certificate feasible with value (1+p)/(4p)", [] {
        double worst_val = 0, worst_slack = 1;
        int n = 0;
        for (int i = 1; i <= 6; ++i) {
            const double p = kGolden + (1 - kGolden) * i / 7.0;
            const double hi = p * p / (1 - p + p * p);
            for (int j = 0; j < 5; ++j) {
                const double beta = 0.5 + (hi - 0.5) * j / 5.0;
                if (!case2_window(p, beta)) continue;
                ++n;
                const auto ms = sep_operators(certificate_case2(p, beta));
                worst_val = std::max(worst_val, std::abs(restricted_sep_value(adc_choi(p), pure(beta), ms) - (1 + p) / (4 * p)));
                for (double s : restricted_sep_slacks(ms)) worst_slack = std::min(worst_slack, s);
            }
        }
        return Outcome{n >= 20 && worst_val <= 1e-10 && worst_slack >= -1e-10,
                       fmt("%.0f points, max value diff %.2e, min slack %.2e", n, worst_val, worst_slack)};
    });

    criterion(10, "network resource curves at p = 0.8", [] {
        bool dec = true;
        double prev = 0, inc = 1e9;
        for (int N = 1; N <= 64; ++N) {
            const double v = rc_strategy1(N, 0.8);
            if (!(v - prev < inc)) dec = false;
            inc = v - prev;
            prev = v;
        }
        const double lim = rc_strategy1_limit(0.8), rel = std::abs(prev - lim) / lim, r2 = rc_strategy2(64, 0.8);
        return Outcome{dec && rel < 0.02 && r2 < 0.01,
                       fmt("Rc_I(64) off the limit by %.2f%%, Rc_II(64) = %.2e", 100 * rel, r2) +
                           (dec ? "" : ", increments not decreasing")};
    });

    criterion(11, "solver hygiene and the Choi-matrix solve on bell x bell", [] {
        SolveOptions o;
        o.time_limit_s = 600;
        const SdpSolution s = solve(build_choi_ppt(bell_state(0), bell_state(0)), o);
        record(s);
        std::string note = fmt("%.0f optimal solves, worst rel gap %.1e, worst violation %.1e", g_solves, g_worst_gap,
                               g_worst_viol);
        bool choi_ok = true;
        if (s.status == SdpStatus::optimal) {
            choi_ok = s.value >= 1 - 1e-3;
            note += fmt("; Choi value %.6f in %.0f s", s.value, s.seconds);
        } else if (s.status == SdpStatus::max_iter) {
            note += fmt("; Choi solve stopped at max_iter with value %.6f after %.0f s (logged, not fatal)", s.value,
                        s.seconds);
        } else {
            choi_ok = false;
            note += "; Choi solve reported infeasible";
        }
        return Outcome{g_dirty == 0 && choi_ok, note};
    });

    criterion(12, "oracle consistency", [] {
        std::mt19937_64 g(109);
        double wf = 0, wc = 0;
        for (int k = 0; k < 200; ++k) {
            const DensityMatrix r = oracle::random_state(g, 1 + k % 4);
            wf = std::max(wf, std::abs(fef(r).value - fef_oracle(r).value));
        }
        for (int k = 0; k < 30; ++k) {
            const DensityMatrix r = oracle::random_state(g, 2);
            wc = std::max(wc, std::abs(concurrence(r) - oracle::concurrence_rank2(r)));
        }
        return Outcome{wf <= 1e-5 && wc <= 1e-6, fmt("fef max diff %.2e, concurrence max diff %.2e", wf, wc)};
    });

    std::printf("%d criteria failed\n", g_failed);
    return g_failed == 0 ? 0 : 1;
}
