#include <algorithm>
#include <cstdio>

#include "columns.hpp"
#include "telefid/cli.hpp"
#include "telefid/network.hpp"

namespace telefid::cli {

namespace {

const std::map<std::string, std::vector<std::string>>& command_columns() {
    static const std::map<std::string, std::vector<std::string>> m = {
        {"fef", {"fef"}},
        {"optfef", {"optfef"}},
        {"bounds", {"F1_star", "F2_star", "F_P"}},
        {"protocol1", {"F_P1", "p_succ"}},
        {"protocol2", {"F_P2", "p_succ"}},
        {"protocol3", {"F_P3", "p_succ"}},
        {"restricted_sep", {"F_P", "F1_star", "F2_star"}},
        {"network", {"Rc_I", "Rc_II", "F_I", "F_II", "swap_condition"}},
    };
    return m;
}

bool needs_states(const std::string& cmd) { return cmd != "network"; }
bool needs_sigma(const std::string& cmd) { return cmd != "network" && cmd != "fef" && cmd != "optfef"; }

struct Params {
    const std::map<std::string, std::string>& fixed;
    const std::string& var;
    double x;

    std::string text(const std::string& key) const {
        auto it = fixed.find(key);
        if (it == fixed.end()) throw UsageError("sweep needs parameter '" + key + "'");
        return substitute(it->second, var, x);
    }
    double number(const std::string& key, double fallback) const {
        if (!fixed.count(key)) return fallback;
        const std::vector<double> v = parse_numbers(text(key));
        if (v.size() != 1) throw UsageError("parameter '" + key + "' must be a single number");
        return v[0];
    }
};

std::vector<double> sweep_row(const SweepSpec& spec, const std::vector<std::string>& cols, double x, double tol) {
    const Params prm{spec.fixed, spec.var, x};
    const std::string& cmd = spec.command;
    std::vector<double> row{x};
    if (cmd == "network") {
        const double N = prm.number("N", 1), p = prm.number("p", 0.8), b0 = prm.number("beta0", 0.5);
        if (N < 1 || N != static_cast<int>(N)) throw UsageError("N must be a positive integer");
        const NetworkConfig cfg{static_cast<int>(N), p, b0};
        for (const auto& c : cols) {
            if (c == "Rc_I") row.push_back(rc_strategy1(cfg.n_free_segments, p));
            if (c == "Rc_II") row.push_back(rc_strategy2(cfg.n_free_segments, p));
            if (c == "F_I") row.push_back(network_simulate(cfg, Strategy::I).average_fef);
            if (c == "F_II") row.push_back(network_simulate(cfg, Strategy::II).average_fef);
            if (c == "swap_condition") row.push_back(swap_chain_condition(cfg.n_free_segments, p, b0) ? 1 : 0);
        }
        return row;
    }
    const DensityMatrix r = parse_state(prm.text("state_ab"));
    DensityMatrix s;
    if (needs_sigma(cmd)) s = parse_state(prm.text("state_bc"));
    ProtocolReport rep;
    if (cmd == "protocol1") rep = bob_pvm_protocol(r, s, bell_basis());
    if (cmd == "protocol2") rep = bob_pvm_protocol(r, s, eta_basis(prm.number("d0", 0.75), prm.number("d0p", 0.75)));
    if (cmd == "protocol3") rep = protocol3(r, s, prm.number("p", x));
    for (const auto& c : cols) {
        if (c == "fef") row.push_back(fef(r).value);
        if (c == "optfef") row.push_back(optimal_fef_2q(r).value);
        if (c == "F1_star") row.push_back(f1_star(r, s));
        if (c == "F2_star") row.push_back(f2_star(r, s));
        if (c == "F_P") row.push_back(restricted_sep_fp(r, s, tol, static_cast<int>(prm.number("K", 4))));
        if (c == "F_P1" || c == "F_P2" || c == "F_P3") row.push_back(rep.average_fef);
        if (c == "p_succ") row.push_back(rep.p_succ);
    }
    return row;
}

}  // namespace

std::string substitute(const std::string& text, const std::string& var, double value) {
    const std::string key = "{" + var + "}";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    std::string out = text;
    for (size_t pos = out.find(key); pos != std::string::npos; pos = out.find(key, pos + std::char_traits<char>::length(buf)))
        out.replace(pos, key.size(), buf);
    return out;
}

std::vector<std::string> sweep_columns(const std::string& command) {
    auto it = command_columns().find(command);
    if (it == command_columns().end()) {
        std::string known;
        for (const auto& [k, v] : command_columns()) known += (known.empty() ? "" : ", ") + k;
        throw UsageError("unknown sweep command '" + command + "' (" + known + ")");
    }
    return it->second;
}

void validate(const SweepSpec& spec) {
    const std::vector<std::string> all = sweep_columns(spec.command);
    if (spec.steps < 2) throw UsageError("sweep needs --steps >= 2");
    if (!(spec.from < spec.to)) throw UsageError("sweep needs --from < --to");
    if (spec.var.empty()) throw UsageError("sweep variable name is empty");
    for (const auto& c : spec.outputs)
        if (std::find(all.begin(), all.end(), c) == all.end())
            throw UsageError("column '" + c + "' is not produced by '" + spec.command + "'");
    if (needs_states(spec.command) && !spec.fixed.count("state_ab")) throw UsageError("sweep needs --state-ab");
    if (needs_sigma(spec.command) && !spec.fixed.count("state_bc")) throw UsageError("sweep needs --state-bc");
    if (spec.format != "csv" && spec.format != "svg") throw UsageError("unknown format '" + spec.format + "'");
}

Table run_sweep(const SweepSpec& spec, double tol) {
    validate(spec);
    Table t;
    const std::vector<std::string> cols = spec.outputs.empty() ? sweep_columns(spec.command) : spec.outputs;
    t.columns = {spec.var};
    t.columns.insert(t.columns.end(), cols.begin(), cols.end());
    const std::vector<double> xs = linspace(spec.from, spec.to, spec.steps);
    t.rows = parallel_rows(spec.steps, [&](int i) { return sweep_row(spec, cols, xs[i], tol); });
    return t;
}

}  // namespace telefid::cli
