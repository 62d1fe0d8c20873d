// Alternating lower bound for the restricted problem with product operators
// M_i = X_i(m_i) (x) N_i. Step (a) is an SDP over the N_i with the m_i fixed;
// step (b) is a coordinate search over the entries of the m_i.

#include <cmath>
#include <limits>
#include <random>

#include "telefid/sdp_builders.hpp"

namespace telefid {

namespace {

struct Ctx {
    Operator g;  // objective operator on (A,C,B1,B2)
};

double raw_gain(const Ctx& c, const std::vector<SepPair>& ps) {
    double s = 0;
    for (const auto& pr : ps) s += inner(c.g, tensor(sep_x(pr.m), pr.n));
    return s;
}

// Largest admissible common scale of the N_i.
double max_scale(const std::vector<SepPair>& ps) {
    Mat shared = Mat::Zero(8, 8);
    double cap = 0;
    for (const auto& pr : ps) {
        const Operator x = sep_x(pr.m);
        const Operator trc = partial_trace(x, {"A"});
        shared += 2.0 * tensor(trc, pr.n).data();
        cap = std::max(cap, trace_re(x) * lambda_max(pr.n.data()));
    }
    const double worst = std::max(cap, lambda_max(shared));
    return worst > 1e-300 ? 1.0 / worst : std::numeric_limits<double>::infinity();
}

// Rescale so the tightest constraint is active when that helps, and never leave
// the pairs infeasible. Returns the resulting value.
double normalize(const Ctx& c, std::vector<SepPair>& ps) {
    const double t = max_scale(ps);
    const double s = raw_gain(c, ps);
    if (std::isfinite(t) && (s > 0 || t < 1))
        for (auto& pr : ps) pr.n = pr.n * t;
    return 0.5 + raw_gain(c, ps);
}

double value_if_normalized(const Ctx& c, std::vector<SepPair> ps) { return normalize(c, ps); }

// Step (a): best N_i for fixed m_i.
bool solve_n(const Ctx& c, std::vector<SepPair>& ps, const SolveOptions& opts) {
    SdpProblem p;
    p.name = "alternating_a";
    p.constant = 0.5;
    const Registers nb = qubits({"B1", "B2"});
    std::vector<Term> shared;
    for (size_t i = 0; i < ps.size(); ++i) {
        const Operator x = sep_x(ps[i].m);
        const std::string nm = "N" + std::to_string(i);
        const int b = p.add_block(nm, nb);
        const Operator xi = tensor(x, identity(nb));
        p.objective[b] = partial_trace(Operator(xi.registers(), xi.data() * c.g.data()), {"B1", "B2"});
        p.objective[b] = Operator(nb, hermitian_part(p.objective[b].data()));
        p.add_psd(b, nm + " >= 0");
        const double tx = trace_re(x);
        if (tx > 0) {
            LinearMap s;
            s.scale(tx);
            p.add_constraint(nm + " cap", {term(b, s)}, Relation::leq, identity(nb));
        }
        LinearMap k;
        k.kron_left(partial_trace(x, {"A"}) * 2.0);
        shared.push_back(term(b, k));
    }
    p.add_constraint("shared", shared, Relation::leq, identity(qubits({"A", "B1", "B2"})));
    const SdpSolution s = solve(p, opts);
    if (s.status == SdpStatus::infeasible) return false;
    std::vector<SepPair> cand = ps;
    for (size_t i = 0; i < ps.size(); ++i) cand[i].n = Operator(nb, hermitian_part(s.blocks[i].data()));
    // clip tiny negative eigenvalues left by the solver
    for (auto& pr : cand) {
        Eigensystem es = eig_hermitian_unchecked(pr.n.data());
        const RVec lam = es.values.cwiseMax(0.0);
        pr.n = Operator(nb, es.vectors * lam.asDiagonal() * es.vectors.adjoint());
    }
    if (value_if_normalized(c, cand) + 1e-12 >= value_if_normalized(c, ps)) {
        ps = std::move(cand);
        return true;
    }
    return false;
}

// Step (b): coordinate search over the 8 real parameters of each m_i.
void improve_m(const Ctx& c, std::vector<SepPair>& ps) {
    double best = value_if_normalized(c, ps);
    double h = 0.1;
    for (int sweep = 0; sweep < 400 && h > 1e-7; ++sweep) {
        bool moved = false;
        for (size_t i = 0; i < ps.size(); ++i)
            for (int e = 0; e < 8; ++e)
                for (double dir : {1.0, -1.0}) {
                    std::vector<SepPair> t = ps;
                    const int r = (e / 2) / 2, col = (e / 2) % 2;
                    t[i].m(r, col) += (e % 2 == 0 ? cplx(dir * h, 0) : cplx(0, dir * h));
                    const double v = value_if_normalized(c, t);
                    if (v > best + 1e-13) {
                        best = v;
                        ps = std::move(t);
                        moved = true;
                    }
                }
        if (!moved) h *= 0.5;
    }
    normalize(c, ps);
}

}  // namespace

AlternatingResult alternating_lower_bound(const DensityMatrix& rho_ab, const DensityMatrix& sigma_bc, int K,
                                          AltInit init, int rounds, const SolveOptions& opts) {
    require(K >= 1, "K must be at least 1");
    require(rounds >= 0, "rounds must be non-negative");
    Ctx c{restricted_sep_objective(rho_ab, sigma_bc)};
    const Registers nb = qubits({"B1", "B2"});

    std::vector<SepPair> ps;
    if (init.kind == AltInit::Kind::bell_seed) {
        for (int i = 0; i < K; ++i) ps.push_back({bell_pauli(i % 4), Operator(nb, projector(bell(i % 4)))});
    } else {
        std::mt19937_64 rng(init.seed);
        std::normal_distribution<double> nd;
        for (int i = 0; i < K; ++i) {
            Mat m(2, 2), g(4, 4);
            for (int r = 0; r < 2; ++r)
                for (int q = 0; q < 2; ++q) m(r, q) = cplx(nd(rng), nd(rng));
            for (int r = 0; r < 4; ++r)
                for (int q = 0; q < 4; ++q) g(r, q) = cplx(nd(rng), nd(rng));
            const Mat n = g * g.adjoint();
            ps.push_back({m, Operator(nb, n / n.trace().real())});
        }
    }

    AlternatingResult res;
    res.history.push_back(normalize(c, ps));
    for (int r = 0; r < rounds; ++r) {
        solve_n(c, ps, opts);
        improve_m(c, ps);
        res.history.push_back(value_if_normalized(c, ps));
    }
    res.value = 0.5 + raw_gain(c, ps);
    res.pairs = ps;
    return res;
}

}  // namespace telefid
