// First-order splitting for problems too large for the dense Schur complement.
//
//   min -<C,x>  s.t.  L_j x - c_j = Z_j,  Z_j in K_j   (PSD cone, or {0} for equalities)
//
// Scaled-form ADMM; the x-update is a least-squares solve done by CG on sum L_j^* L_j.

#include <chrono>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "telefid/sdp.hpp"

namespace telefid::detail {

namespace {

using Blocks = std::vector<Operator>;

double dot(const Blocks& a, const Blocks& b) {
    double s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += inner(a[i], b[i]);
    return s;
}

void axpy(Blocks& y, double a, const Blocks& x) {
    for (size_t i = 0; i < y.size(); ++i) y[i] = y[i] + x[i] * a;
}

Mat psd_part(const Mat& v) {
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(v));
    const RVec lam = es.eigenvalues().cwiseMax(0.0);
    const Mat& u = es.eigenvectors();
    return u * lam.asDiagonal() * u.adjoint();
}

class Ops {
public:
    explicit Ops(const SdpProblem& p) : p_(p) {
        for (const auto& c : p.constraints) sign_.push_back(c.rel == Relation::leq ? -1.0 : 1.0);
    }

    Operator forward(size_t j, const Blocks& x) const {
        const auto& c = p_.constraints[j];
        Operator acc = zero(c.rhs.registers());
        for (const auto& t : c.terms) acc = acc + t.map.apply(x[t.block]);
        return acc * sign_[j];
    }

    void adjoint_add(size_t j, const Operator& y, Blocks& out) const {
        const auto& c = p_.constraints[j];
        for (const auto& t : c.terms)
            out[t.block] = out[t.block] + t.map.apply_adjoint(y, p_.blocks[t.block].regs) * sign_[j];
    }

    Blocks zeros() const {
        Blocks z;
        for (const auto& b : p_.blocks) z.push_back(zero(b.regs));
        return z;
    }

    Blocks normal(const Blocks& x) const {
        Blocks out = zeros();
        for (size_t j = 0; j < p_.constraints.size(); ++j) adjoint_add(j, forward(j, x), out);
        return out;
    }

    double sign(size_t j) const { return sign_[j]; }

private:
    const SdpProblem& p_;
    std::vector<double> sign_;
};

// CG on the normal operator; x is the warm start.
void cg(const Ops& ops, const Blocks& rhs, Blocks& x, double rtol, int maxit) {
    Blocks r = rhs;
    axpy(r, -1.0, ops.normal(x));
    Blocks d = r;
    double rr = dot(r, r);
    const double stop = rtol * rtol * std::max(dot(rhs, rhs), 1e-300);
    for (int k = 0; k < maxit && rr > stop; ++k) {
        const Blocks hd = ops.normal(d);
        const double dhd = dot(d, hd);
        if (dhd <= 0) break;
        const double a = rr / dhd;
        axpy(x, a, d);
        axpy(r, -a, hd);
        const double rr2 = dot(r, r);
        for (size_t i = 0; i < d.size(); ++i) d[i] = r[i] + d[i] * (rr2 / rr);
        rr = rr2;
    }
}

}  // namespace

SdpSolution solve_admm(const SdpProblem& p, const SolveOptions& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    const Ops ops(p);
    const size_t nc = p.constraints.size();

    std::vector<Operator> c(nc), Z(nc), U(nc);
    double cnorm = 0;
    for (size_t j = 0; j < nc; ++j) {
        c[j] = p.constraints[j].rhs * ops.sign(j);
        Z[j] = zero(c[j].registers());
        U[j] = Z[j];
        cnorm = std::max(cnorm, c[j].data().norm());
    }
    double objnorm = 0;
    for (const auto& o : p.objective) objnorm = std::max(objnorm, o.data().norm());

    Blocks x = ops.zeros();
    double rho = 1.0;
    SdpSolution sol;
    sol.backend = SdpBackend::admm;
    int it = 0;
    double pval = 0, dval = 0;
    for (; it < opts.admm_max_iter; ++it) {
        Blocks rhs = p.objective;
        for (auto& b : rhs) b = b * (1.0 / rho);
        for (size_t j = 0; j < nc; ++j) ops.adjoint_add(j, c[j] + Z[j] - U[j], rhs);
        cg(ops, rhs, x, 1e-10, 100);

        double rp = 0;
        std::vector<Operator> dZ(nc);
        for (size_t j = 0; j < nc; ++j) {
            const Operator lx = ops.forward(j, x) - c[j];
            const Operator v = lx + U[j];
            const Operator znew = p.constraints[j].rel == Relation::eq ? zero(v.registers())
                                                                        : Operator(v.registers(), psd_part(v.data()));
            dZ[j] = znew - Z[j];
            Z[j] = znew;
            U[j] = v - znew;
            const Operator res = lx - znew;
            rp += res.data().squaredNorm();
        }
        rp = std::sqrt(rp);
        Blocks ld = ops.zeros();
        for (size_t j = 0; j < nc; ++j) ops.adjoint_add(j, dZ[j], ld);
        const double rd = rho * std::sqrt(dot(ld, ld));

        const bool check = (it + 1) % 10 == 0;
        if (check || it + 1 == opts.admm_max_iter) {
            pval = objective_value(p, x);
            dval = p.constant;
            for (size_t j = 0; j < nc; ++j) dval += rho * inner(U[j], c[j]);
            if (opts.progress) opts.progress(it + 1, pval, dval - pval);
            if (rp <= opts.tol * (1 + cnorm) && rd <= opts.tol * (1 + objnorm) &&
                std::abs(dval - pval) <= opts.tol * (1 + std::abs(pval))) {
                ++it;
                break;
            }
            // residual balancing
            if (rp > 10 * rd) {
                rho *= 2;
                for (auto& u : U) u = u * 0.5;
            } else if (rd > 10 * rp) {
                rho *= 0.5;
                for (auto& u : U) u = u * 2.0;
            }
        }
        if (opts.time_limit_s > 0) {
            const double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            if (el > opts.time_limit_s) {
                ++it;
                break;
            }
        }
    }
    dval = p.constant;
    for (size_t j = 0; j < nc; ++j) dval += rho * inner(U[j], c[j]);

    sol.iterations = it;
    sol.blocks = x;
    sol.value = objective_value(p, x);
    sol.bound = dval;
    sol.duality_gap = std::abs(dval - sol.value);
    sol.max_violation = max_violation(p, x);
    sol.status = sol.duality_gap <= 1e-7 * (1 + std::abs(sol.value)) && sol.max_violation <= 1e-8 ? SdpStatus::optimal
                                                                                                 : SdpStatus::max_iter;
    return sol;
}

}  // namespace telefid::detail
