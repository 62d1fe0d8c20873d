#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "columns.hpp"
#include "telefid/cli.hpp"
#include "telefid/network.hpp"

namespace telefid::cli {

namespace {

constexpr int kUsage = 2;
constexpr int kSolver = 3;

// scalar printouts carry 10 digits; SDP values are only good to ~1e-11
std::string scalar(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v == 0 ? 0.0 : v);
    return buf;
}

void line(const std::string& key, double v) { std::cout << key << " " << scalar(v) << "\n"; }

SdpBackend parse_backend(const std::string& s) {
    if (s == "auto") return SdpBackend::automatic;
    if (s == "ipm") return SdpBackend::interior_point;
    if (s == "admm") return SdpBackend::admm;
    throw UsageError("unknown backend '" + s + "' (auto, ipm, admm)");
}

struct Flags {
    std::string state, state_ab, state_bc;
    int points = 101;
    std::string out;
    std::string format = "csv";
    bool no_sdp = false;
    std::uint64_t seed = 1;
    double tol = 1e-8;
};

DensityMatrix need(const std::string& spec, const char* flag) {
    if (spec.empty()) throw UsageError(std::string("missing ") + flag);
    return parse_state(spec);
}

int report_sdp(const SdpSolution& s) {
    line("value", s.value);
    line("bound", s.bound);
    std::cout << "status " << to_string(s.status) << "\n";
    std::cout << "backend " << to_string(s.backend) << "\n";
    std::cout << "iterations " << s.iterations << "\n";
    line("duality_gap", s.duality_gap);
    line("max_violation", s.max_violation);
    if (s.status != SdpStatus::optimal) {
        std::cerr << "solver did not converge (" << to_string(s.status) << ")\n";
        return kSolver;
    }
    return 0;
}

void print_report(const ProtocolReport& r) {
    line("average_fef", r.average_fef);
    line("p_succ", r.p_succ);
    for (size_t i = 0; i < r.branch_probs.size(); ++i)
        std::cout << "branch " << i << " prob " << scalar(r.branch_probs[i]) << " fef "
                  << scalar(r.branch_fefs[i]) << "\n";
    if (r.F1) line("F1_star", *r.F1);
    if (r.F2) line("F2_star", *r.F2);
    if (r.F_P) line("F_P", *r.F_P);
}

}  // namespace

int run(int argc, char** argv) {
    CLI::App app{"telefid: optimal teleportation fidelity in linear networks"};
    app.require_subcommand(1);
    Flags f;
    std::function<int()> action;

    auto add_state = [&](CLI::App* c) { c->add_option("--state", f.state, "two-qubit state spec")->required(); };
    auto add_pair = [&](CLI::App* c) {
        c->add_option("--state-ab", f.state_ab, "state shared by A and B")->required();
        c->add_option("--state-bc", f.state_bc, "state shared by B and C")->required();
    };
    auto add_tol = [&](CLI::App* c) { c->add_option("--tol", f.tol, "SDP tolerance")->check(CLI::PositiveNumber); };
    auto add_output = [&](CLI::App* c) {
        c->add_option("--out", f.out, "output file (default stdout)");
        c->add_option("--format", f.format, "csv or svg")->check(CLI::IsMember({"csv", "svg"}));
    };

    auto* c_fef = app.add_subcommand("fef", "fully entangled fraction (magic basis)");
    add_state(c_fef);
    c_fef->callback([&] {
        action = [&] {
            const FefResult r = fef(need(f.state, "--state"));
            std::cout << scalar(r.value) << " " << to_string(r.method) << "\n";
            return 0;
        };
    });

    auto* c_opt = app.add_subcommand("optfef", "optimal FEF under local filtering (two-party SDP)");
    add_state(c_opt);
    add_tol(c_opt);
    c_opt->callback([&] {
        action = [&] {
            SolveOptions o = fef_sdp_options();
            if (c_opt->count("--tol")) o.tol = f.tol;
            const OptFef r = optimal_fef_2q(need(f.state, "--state"), o);
            std::cout << scalar(r.value) << " " << to_string(r.path) << "\n";
            return 0;
        };
    });

    auto* c_bounds = app.add_subcommand("bounds", "LOCC upper bounds F1_star, F2_star and the restricted-SEP F_P");
    add_pair(c_bounds);
    add_tol(c_bounds);
    c_bounds->add_flag("--no-sdp", f.no_sdp, "skip F_P");
    c_bounds->callback([&] {
        action = [&] {
            const DensityMatrix r = need(f.state_ab, "--state-ab"), s = need(f.state_bc, "--state-bc");
            const LoccBounds b = locc_upper_bounds(r, s);
            line("F1_star", b.F1);
            line("F2_star", b.F2);
            if (!f.no_sdp) line("F_P", restricted_sep_fp(r, s, f.tol));
            return 0;
        };
    });

    std::string proto_kind;
    double d0 = 0.75, d0p = 0.75, filter_p = -1;
    bool with_bounds = false;
    auto* c_proto = app.add_subcommand("protocol", "three-party protocols: 1 (Bell), 2 (eta basis), 3 (filter + Bell), swap");
    c_proto->add_option("kind", proto_kind, "1, 2, 3 or swap")->required()->check(CLI::IsMember({"1", "2", "3", "swap"}));
    add_pair(c_proto);
    c_proto->add_option("--d0", d0, "eta basis weight (protocol 2)");
    c_proto->add_option("--d0p", d0p, "eta basis second weight (protocol 2)");
    c_proto->add_option("--filter-p", filter_p, "filter parameter (protocol 3)");
    c_proto->add_flag("--bounds", with_bounds, "also print F1_star and F2_star");
    c_proto->callback([&] {
        action = [&] {
            const DensityMatrix r = need(f.state_ab, "--state-ab"), s = need(f.state_bc, "--state-bc");
            ProtocolReport rep;
            if (proto_kind == "1") rep = bob_pvm_protocol(r, s, bell_basis());
            if (proto_kind == "2") rep = bob_pvm_protocol(r, s, eta_basis(d0, d0p));
            if (proto_kind == "swap") rep = entanglement_swap(r, s);
            if (proto_kind == "3") {
                if (filter_p < 0) throw UsageError("protocol 3 needs --filter-p");
                rep = protocol3(r, s, filter_p);
            }
            if (with_bounds) attach_bounds(rep, r, s);
            print_report(rep);
            return 0;
        };
    });

    std::string sdp_kind, variant = "as_stated", backend = "auto", dump_path;
    int K = 4;
    double time_limit = 0;
    auto* c_sdp = app.add_subcommand("sdp", "solve one of the SDPs: fef (--state), rsep or choi (--state-ab/--state-bc)");
    c_sdp->add_option("kind", sdp_kind, "fef, rsep or choi")->required()->check(CLI::IsMember({"fef", "rsep", "choi"}));
    c_sdp->add_option("--state", f.state, "state for the two-party problem");
    c_sdp->add_option("--state-ab", f.state_ab, "state shared by A and B");
    c_sdp->add_option("--state-bc", f.state_bc, "state shared by B and C");
    c_sdp->add_option("--K", K, "number of operator blocks (rsep)")->check(CLI::PositiveNumber);
    c_sdp->add_option("--variant", variant, "choi variant")->check(CLI::IsMember({"as_stated", "tripartite"}));
    c_sdp->add_option("--backend", backend, "auto, ipm or admm");
    c_sdp->add_option("--time-limit", time_limit, "seconds, 0 for none");
    c_sdp->add_option("--dump", dump_path, "write a text dump of problem and solution");
    add_tol(c_sdp);
    c_sdp->callback([&] {
        action = [&] {
            SdpProblem prob;
            if (sdp_kind == "fef") {
                prob = build_fef_sdp(need(f.state, "--state"));
            } else {
                const DensityMatrix r = need(f.state_ab, "--state-ab"), s = need(f.state_bc, "--state-bc");
                prob = sdp_kind == "rsep" ? build_restricted_sep(r, s, K)
                                          : build_choi_ppt(r, s, variant == "tripartite" ? ChoiVariant::tripartite
                                                                                           : ChoiVariant::as_stated);
            }
            SolveOptions o;
            o.tol = f.tol;
            o.backend = parse_backend(backend);
            o.time_limit_s = time_limit;
            const SdpSolution s = solve(prob, o);
            if (!dump_path.empty()) {
                std::ofstream os(dump_path);
                if (!os) throw UsageError("cannot write " + dump_path);
                dump(os, prob, s);
            }
            return report_sdp(s);
        };
    });

    int rounds = 5;
    bool random_init = false;
    auto* c_alt = app.add_subcommand("alternate", "alternating lower bound on the restricted separable problem");
    add_pair(c_alt);
    c_alt->add_option("--K", K, "number of product terms")->check(CLI::PositiveNumber);
    c_alt->add_option("--rounds", rounds, "alternation rounds")->check(CLI::NonNegativeNumber);
    c_alt->add_option("--seed", f.seed, "seed for --random-init");
    c_alt->add_flag("--random-init", random_init, "random start instead of the Bell seed");
    add_tol(c_alt);
    c_alt->callback([&] {
        action = [&] {
            const DensityMatrix r = need(f.state_ab, "--state-ab"), s = need(f.state_bc, "--state-bc");
            AltInit init;
            init.kind = random_init ? AltInit::Kind::random : AltInit::Kind::bell_seed;
            init.seed = f.seed;
            SolveOptions o;
            o.tol = f.tol;
            const AlternatingResult res = alternating_lower_bound(r, s, K, init, rounds, o);
            for (size_t i = 0; i < res.history.size(); ++i)
                std::cout << "round " << i << " " << scalar(res.history[i]) << "\n";
            line("value", res.value);
            return 0;
        };
    });

    std::string fig_name;
    auto* c_fig = app.add_subcommand("figure", "figure data as CSV or SVG");
    c_fig->add_option("name", fig_name, "figure name")->required()->check(CLI::IsMember(figure_names()));
    c_fig->add_option("--points", f.points, "sweep points (not used by dist)")->check(CLI::Range(2, 100000));
    c_fig->add_flag("--no-sdp", f.no_sdp, "skip the F_P column");
    add_output(c_fig);
    add_tol(c_fig);
    c_fig->callback([&] {
        action = [&] {
            FigureOptions o;
            o.points = f.points;
            o.sdp = !f.no_sdp;
            o.tol = f.tol;
            emit(figure(fig_name, o), f.format, f.out, fig_name);
            return 0;
        };
    });

    SweepSpec sw;
    std::vector<std::string> sets;
    std::string columns;
    auto* c_sweep = app.add_subcommand("sweep", "sweep one parameter; '{var}' in state specs and --set values is replaced");
    c_sweep->add_option("command", sw.command, "fef, optfef, bounds, protocol1, protocol2, protocol3, restricted_sep, network")
        ->required();
    c_sweep->add_option("--state-ab", f.state_ab, "state shared by A and B, e.g. 'adc:{x}'");
    c_sweep->add_option("--state-bc", f.state_bc, "state shared by B and C");
    c_sweep->add_option("--var", sw.var, "sweep variable name");
    c_sweep->add_option("--from", sw.from, "first value")->required();
    c_sweep->add_option("--to", sw.to, "last value")->required();
    c_sweep->add_option("--steps", sw.steps, "number of points (>= 2)");
    c_sweep->add_option("--columns", columns, "comma separated output columns");
    c_sweep->add_option("--set", sets, "fixed parameter key=value (K, d0, d0p, p, N, beta0)");
    add_output(c_sweep);
    add_tol(c_sweep);
    c_sweep->callback([&] {
        action = [&] {
            if (!f.state_ab.empty()) sw.fixed["state_ab"] = f.state_ab;
            if (!f.state_bc.empty()) sw.fixed["state_bc"] = f.state_bc;
            for (const auto& kv : sets) {
                const size_t eq = kv.find('=');
                if (eq == std::string::npos || eq == 0) throw UsageError("--set expects key=value, got '" + kv + "'");
                sw.fixed[kv.substr(0, eq)] = kv.substr(eq + 1);
            }
            for (size_t start = 0; !columns.empty();) {
                const size_t comma = columns.find(',', start);
                sw.outputs.push_back(columns.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
                if (comma == std::string::npos) break;
                start = comma + 1;
            }
            sw.format = f.format;
            sw.out_path = f.out;
            emit(run_sweep(sw, f.tol), sw.format, sw.out_path, "sweep " + sw.command);
            return 0;
        };
    });

    NetworkConfig net;
    std::string strategy = "II";
    auto* c_net = app.add_subcommand("network", "linear chain: Rc bounds and simulated end-to-end FEF");
    c_net->add_option("--N", net.n_free_segments, "number of pure segments")->check(CLI::PositiveNumber);
    c_net->add_option("--p", net.p, "ADC parameter of the noisy segment");
    c_net->add_option("--beta0", net.beta0, "Schmidt weight of the pure segments");
    c_net->add_option("--strategy", strategy, "I or II")->check(CLI::IsMember({"I", "II"}));
    c_net->callback([&] {
        action = [&] {
            validate(net);
            line("Rc_I", rc_strategy1(net.n_free_segments, net.p));
            line("Rc_II", rc_strategy2(net.n_free_segments, net.p));
            std::cout << "swap_condition " << (swap_chain_condition(net.n_free_segments, net.p, net.beta0) ? 1 : 0)
                      << "\n";
            if (net.n_free_segments <= kMaxNetworkSegments)
                line("average_fef", network_simulate(net, strategy == "I" ? Strategy::I : Strategy::II).average_fef);
            else
                std::cerr << "simulation skipped: N > " << kMaxNetworkSegments << "\n";
            return 0;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }
    try {
        return action ? action() : kUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const SolverError& e) {
        std::cerr << "solver: " << e.what() << "\n";
        return kSolver;
    }
}

}  // namespace telefid::cli
