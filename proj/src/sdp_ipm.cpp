// Primal-dual interior point on the real-symmetric embedding.
//
// The user problem (max over Hermitian blocks) is written in dual standard form
//     max b'z   s.t.  S_j = C_j - sum_l z_l A_lj >= 0
// with z the orthonormal Hermitian coordinates of all blocks (after eliminating
// equality constraints). The matching primal is min <C,X> s.t. A(X) = b, X >= 0.
// NT scaling, Mehrotra predictor-corrector, infeasible start.

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "telefid/sdp.hpp"

namespace telefid::detail {

namespace {

struct Trip {
    int r, c;
    double v;
};
using Sparse = std::vector<Trip>;

struct Lmi {
    int n = 0;  // real side
    RMat C;
    std::vector<int> vars;
    std::vector<Sparse> a;
};

struct Compiled {
    std::vector<Lmi> lmis;
    RVec b;
    double offset = 0;
    bool reduced = false;  // y = y0 + N z
    RVec y0;
    RMat N;
    int my = 0;  // number of y coordinates
    std::vector<int> block_off;
};

constexpr double kDrop = 1e-15;

void push_embedded(Sparse& s, const Mat& h, double sign) {
    const int n = static_cast<int>(h.rows());
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            const double re = sign * h(r, c).real(), im = sign * h(r, c).imag();
            if (std::abs(re) > kDrop) {
                s.push_back({r, c, re});
                s.push_back({r + n, c + n, re});
            }
            if (std::abs(im) > kDrop) {
                s.push_back({r, c + n, -im});
                s.push_back({r + n, c, im});
            }
        }
}

RMat embed_dense(const Mat& h) {
    const int n = static_cast<int>(h.rows());
    RMat e(2 * n, 2 * n);
    e.topLeftCorner(n, n) = h.real();
    e.bottomRightCorner(n, n) = h.real();
    e.topRightCorner(n, n) = -h.imag();
    e.bottomLeftCorner(n, n) = h.imag();
    return e;
}

double sdot(const Sparse& a, const RMat& m) {
    double s = 0;
    for (const auto& t : a) s += t.v * m(t.r, t.c);
    return s;
}

void saxpy(RMat& m, const Sparse& a, double z) {
    for (const auto& t : a) m(t.r, t.c) += z * t.v;
}

double sfro(const Sparse& a) {
    double s = 0;
    for (const auto& t : a) s += t.v * t.v;
    return std::sqrt(s);
}

// Sum over the terms of one constraint that touch block b, applied to basis element k.
Mat lhs_on_basis(const SdpProblem& p, const Constraint& c, int b, int k) {
    const int nb = total_dim(p.blocks[b].regs);
    const Operator e(p.blocks[b].regs, hermitian_basis_element(k, nb));
    Mat out = Mat::Zero(c.rhs.side(), c.rhs.side());
    for (const auto& t : c.terms)
        if (t.block == b) out += t.map.apply(e).data();
    return out;
}

std::vector<int> blocks_of(const Constraint& c) {
    std::vector<int> bs;
    for (const auto& t : c.terms)
        if (std::find(bs.begin(), bs.end(), t.block) == bs.end()) bs.push_back(t.block);
    return bs;
}

Compiled compile(const SdpProblem& p) {
    Compiled cp;
    int off = 0;
    for (const auto& b : p.blocks) {
        cp.block_off.push_back(off);
        const int nb = total_dim(b.regs);
        off += nb * nb;
    }
    cp.my = off;

    RVec cvec(cp.my);
    for (size_t b = 0; b < p.blocks.size(); ++b) {
        const RVec cb = hermitian_coords(p.objective[b].data());
        cvec.segment(cp.block_off[b], cb.size()) = cb;
    }

    std::vector<std::vector<double>> erows;
    std::vector<double> erhs;

    for (const auto& c : p.constraints) {
        const auto bs = blocks_of(c);
        if (c.rel == Relation::eq) {
            const int no = c.rhs.side();
            RMat e = RMat::Zero(no * no, cp.my);
            for (int b : bs) {
                const int nb = total_dim(p.blocks[b].regs);
                for (int k = 0; k < nb * nb; ++k)
                    e.col(cp.block_off[b] + k) = hermitian_coords(lhs_on_basis(p, c, b, k));
            }
            const RVec f = hermitian_coords(c.rhs.data());
            for (int r = 0; r < e.rows(); ++r) {
                if (e.row(r).cwiseAbs().maxCoeff() == 0 && std::abs(f(r)) == 0) continue;
                std::vector<double> row(cp.my);
                for (int k = 0; k < cp.my; ++k) row[k] = e(r, k);
                erows.push_back(std::move(row));
                erhs.push_back(f(r));
            }
            continue;
        }
        const double sign = c.rel == Relation::geq ? -1.0 : 1.0;
        Lmi l;
        l.n = 2 * c.rhs.side();
        l.C = sign * embed_dense(c.rhs.data());
        for (int b : bs) {
            const int nb = total_dim(p.blocks[b].regs);
            for (int k = 0; k < nb * nb; ++k) {
                Sparse s;
                push_embedded(s, lhs_on_basis(p, c, b, k), sign);
                if (s.empty()) continue;
                l.vars.push_back(cp.block_off[b] + k);
                l.a.push_back(std::move(s));
            }
        }
        cp.lmis.push_back(std::move(l));
    }

    if (erows.empty()) {
        cp.b = cvec;
        return cp;
    }

    // Eliminate equalities: y = y0 + N z.
    RMat e(erows.size(), cp.my);
    RVec f(erows.size());
    for (size_t r = 0; r < erows.size(); ++r) {
        for (int k = 0; k < cp.my; ++k) e(r, k) = erows[r][k];
        f(r) = erhs[r];
    }
    Eigen::JacobiSVD<RMat> svd(e, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const RVec sv = svd.singularValues();
    const double smax = sv.size() ? sv(0) : 0;
    int rank = 0;
    while (rank < sv.size() && sv(rank) > 1e-10 * std::max(1.0, smax)) ++rank;
    RVec y0 = svd.matrixV().leftCols(rank) *
              (sv.head(rank).cwiseInverse().asDiagonal() * (svd.matrixU().leftCols(rank).transpose() * f));
    if ((e * y0 - f).norm() > 1e-9 * (1 + f.norm())) throw SolverError("equality constraints are inconsistent");
    cp.reduced = true;
    cp.y0 = y0;
    cp.N = svd.matrixV().rightCols(cp.my - rank);
    cp.b = cp.N.transpose() * cvec;
    cp.offset = cvec.dot(y0);

    const int mz = static_cast<int>(cp.N.cols());
    for (auto& l : cp.lmis) {
        std::vector<RMat> dense(mz, RMat::Zero(l.n, l.n));
        for (size_t i = 0; i < l.vars.size(); ++i) {
            const int k = l.vars[i];
            saxpy(l.C, l.a[i], -y0(k));
            for (int z = 0; z < mz; ++z)
                if (std::abs(cp.N(k, z)) > kDrop) saxpy(dense[z], l.a[i], cp.N(k, z));
        }
        l.vars.clear();
        l.a.clear();
        for (int z = 0; z < mz; ++z) {
            Sparse s;
            for (int r = 0; r < l.n; ++r)
                for (int c = 0; c < l.n; ++c)
                    if (std::abs(dense[z](r, c)) > 1e-14) s.push_back({r, c, dense[z](r, c)});
            if (s.empty()) continue;
            l.vars.push_back(z);
            l.a.push_back(std::move(s));
        }
    }
    return cp;
}

struct Scaling {
    RMat L, G, Ginv, W;
    RVec d;
};

bool nt_scaling(const RMat& x, const RMat& s, Scaling& out) {
    Eigen::LLT<RMat> lx(x), ls(s);
    if (lx.info() != Eigen::Success || ls.info() != Eigen::Success) return false;
    out.L = lx.matrixL();
    const RMat R = ls.matrixL();
    Eigen::JacobiSVD<RMat> svd(R.transpose() * out.L, Eigen::ComputeFullU | Eigen::ComputeFullV);
    out.d = svd.singularValues();
    if (out.d.minCoeff() <= 0) return false;
    const RMat V = svd.matrixV();
    out.G = out.L * V * out.d.cwiseInverse().cwiseSqrt().asDiagonal();
    const RMat linv = out.L.triangularView<Eigen::Lower>().solve(RMat::Identity(x.rows(), x.rows()));
    out.Ginv = out.d.cwiseSqrt().asDiagonal() * V.transpose() * linv;
    out.W = out.G * out.G.transpose();
    return true;
}

// Largest alpha in (0, inf] with base + alpha*dir >= 0, given base = L L^T.
double max_step(const RMat& L, const RMat& dir) {
    const RMat t = L.triangularView<Eigen::Lower>().solve(dir);
    const RMat q = L.triangularView<Eigen::Lower>().solve(t.transpose());
    Eigen::SelfAdjointEigenSolver<RMat> es(0.5 * (q + q.transpose()), Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues()(0);
    return lmin < 0 ? -1.0 / lmin : std::numeric_limits<double>::infinity();
}

class Ipm {
public:
    explicit Ipm(const Compiled& cp) : cp_(cp), m_(static_cast<int>(cp.b.size())) {}

    RVec A(const std::vector<RMat>& r) const {
        RVec out = RVec::Zero(m_);
        for (size_t j = 0; j < cp_.lmis.size(); ++j) {
            const auto& l = cp_.lmis[j];
            for (size_t i = 0; i < l.vars.size(); ++i) out(l.vars[i]) += sdot(l.a[i], r[j]);
        }
        return out;
    }

    std::vector<RMat> At(const RVec& z) const {
        std::vector<RMat> out;
        for (const auto& l : cp_.lmis) {
            RMat s = RMat::Zero(l.n, l.n);
            for (size_t i = 0; i < l.vars.size(); ++i) saxpy(s, l.a[i], z(l.vars[i]));
            out.push_back(std::move(s));
        }
        return out;
    }

    RMat schur(const std::vector<Scaling>& sc) const {
        RMat M = RMat::Zero(m_, m_);
        for (size_t j = 0; j < cp_.lmis.size(); ++j) {
            const auto& l = cp_.lmis[j];
            const RMat& W = sc[j].W;
            const int nv = static_cast<int>(l.vars.size());
            double nnz = 0;
            for (const auto& a : l.a) nnz += static_cast<double>(a.size());
            const double n2 = static_cast<double>(l.n) * l.n;
            const bool pairwise = nnz * nnz / 2 <= nnz * n2 + nv * nnz;
            for (int li = 0; li < nv; ++li) {
                const Sparse& al = l.a[li];
                if (pairwise) {
                    for (int ki = 0; ki <= li; ++ki) {
                        double s = 0;
                        for (const auto& tk : l.a[ki])
                            for (const auto& tl : al) s += tk.v * tl.v * W(tk.r, tl.r) * W(tl.c, tk.c);
                        M(l.vars[ki], l.vars[li]) += s;
                        if (ki != li) M(l.vars[li], l.vars[ki]) += s;
                    }
                } else {
                    RMat y = RMat::Zero(l.n, l.n);
                    for (const auto& t : al) y.noalias() += t.v * W.col(t.r) * W.row(t.c);
                    for (int ki = 0; ki <= li; ++ki) {
                        const double s = sdot(l.a[ki], y);
                        M(l.vars[ki], l.vars[li]) += s;
                        if (ki != li) M(l.vars[li], l.vars[ki]) += s;
                    }
                }
            }
        }
        return M;
    }

    const Compiled& cp_;
    int m_;
};

double frob_dot(const RMat& a, const RMat& b) { return (a.array() * b.array()).sum(); }

}  // namespace

SdpSolution solve_interior_point(const SdpProblem& p, const SolveOptions& opts) {
    const Compiled cp = compile(p);
    const Ipm ipm(cp);
    const int m = ipm.m_;
    const auto& lmis = cp.lmis;
    const size_t nl = lmis.size();

    // infeasible start
    std::vector<RMat> X, S;
    double ntot = 0;
    for (const auto& l : lmis) {
        const double n = l.n;
        double ra = 0, na = 0;
        for (size_t i = 0; i < l.vars.size(); ++i) {
            const double f = sfro(l.a[i]);
            ra = std::max(ra, (1 + std::abs(cp.b(l.vars[i]))) / (1 + f));
            na = std::max(na, f);
        }
        const double xi = std::max({10.0, std::sqrt(n), n * ra});
        const double zeta = std::max({10.0, std::sqrt(n), na, l.C.norm()});
        X.push_back(xi * RMat::Identity(l.n, l.n));
        S.push_back(zeta * RMat::Identity(l.n, l.n));
        ntot += n;
    }
    RVec z = RVec::Zero(m);
    const double bnorm = cp.b.norm();

    SdpSolution sol;
    sol.backend = SdpBackend::interior_point;
    bool diverged = false;
    double gamma = 0.9;
    // near the optimum the iterates can degrade; keep the best one seen
    double best_merit = std::numeric_limits<double>::infinity();
    std::vector<RMat> bestX;
    RVec bestz;
    int it = 0;
    for (; it <= opts.max_iter; ++it) {
        const RVec Rp = cp.b - ipm.A(X);
        const auto Atz = ipm.At(z);
        std::vector<RMat> Rd(nl);
        double pobj = 0, dinf = 0, xs = 0;
        for (size_t j = 0; j < nl; ++j) {
            Rd[j] = lmis[j].C - S[j] - Atz[j];
            dinf = std::max(dinf, Rd[j].norm());
            pobj += frob_dot(lmis[j].C, X[j]);
            xs += frob_dot(X[j], S[j]);
        }
        const double dobj = cp.b.dot(z);
        const double mu = xs / std::max(ntot, 1.0);
        const double pinf = Rp.norm() / (1 + bnorm);
        const double gap = pobj - dobj;
        if (opts.progress) opts.progress(it, dobj + cp.offset + p.constant, gap);
        const double merit = std::max({std::abs(gap) / (1 + std::abs(dobj)), pinf, dinf});
        if (merit < best_merit) {
            best_merit = merit;
            bestX = X;
            bestz = z;
        }
        if (std::abs(gap) <= opts.tol * (1 + std::abs(dobj)) && pinf <= opts.tol && dinf <= std::min(opts.tol, 1e-9)) {
            break;
        }
        double big = z.cwiseAbs().maxCoeff();
        for (const auto& x : X) big = std::max(big, x.cwiseAbs().maxCoeff());
        if (big > 1e12) {
            diverged = true;
            break;
        }
        if (it == opts.max_iter || nl == 0) break;

        std::vector<Scaling> sc(nl);
        bool ok = true;
        for (size_t j = 0; j < nl && ok; ++j) ok = nt_scaling(X[j], S[j], sc[j]);
        if (!ok) break;

        RMat M = ipm.schur(sc);
        const double mdiag = std::max(M.diagonal().cwiseAbs().maxCoeff(), 1.0);
        M.diagonal().array() += 1e-14 * mdiag;
        Eigen::LLT<RMat> fac(M);
        Eigen::LDLT<RMat> fac2;
        const bool use_llt = fac.info() == Eigen::Success;
        if (!use_llt) fac2.compute(M);

        std::vector<RMat> WRdW(nl);
        for (size_t j = 0; j < nl; ++j) WRdW[j] = sc[j].W * Rd[j] * sc[j].W;
        const RVec base = Rp + ipm.A(WRdW);

        auto direction = [&](const std::vector<RMat>& Rc, RVec& dz, std::vector<RMat>& dX, std::vector<RMat>& dS) {
            const RVec rhs = base - ipm.A(Rc);
            dz = use_llt ? RVec(fac.solve(rhs)) : RVec(fac2.solve(rhs));
            const auto Atdz = ipm.At(dz);
            dX.resize(nl);
            dS.resize(nl);
            for (size_t j = 0; j < nl; ++j) {
                dS[j] = Rd[j] - Atdz[j];
                RMat t = Rc[j] - sc[j].W * dS[j] * sc[j].W;
                dX[j] = 0.5 * (t + t.transpose());
            }
        };
        auto steps = [&](const std::vector<RMat>& dX, const std::vector<RMat>& dS, double& ap, double& ad) {
            ap = ad = std::numeric_limits<double>::infinity();
            for (size_t j = 0; j < nl; ++j) {
                ap = std::min(ap, max_step(sc[j].L, dX[j]));
                Eigen::LLT<RMat> ls(S[j]);
                ad = std::min(ad, max_step(ls.matrixL(), dS[j]));
            }
        };

        // predictor
        std::vector<RMat> Rc(nl);
        for (size_t j = 0; j < nl; ++j) Rc[j] = -X[j];
        RVec dz;
        std::vector<RMat> dX, dS;
        direction(Rc, dz, dX, dS);
        double ap, ad;
        steps(dX, dS, ap, ad);
        ap = std::min(1.0, ap);
        ad = std::min(1.0, ad);
        double xs_aff = 0;
        for (size_t j = 0; j < nl; ++j) xs_aff += frob_dot(X[j] + ap * dX[j], S[j] + ad * dS[j]);
        const double mu_aff = xs_aff / ntot;
        const double sigma = std::clamp(std::pow(mu_aff / mu, 3), 0.0, 1.0);

        // corrector
        for (size_t j = 0; j < nl; ++j) {
            const RMat dxt = sc[j].Ginv * dX[j] * sc[j].Ginv.transpose();
            const RMat dst = sc[j].G.transpose() * dS[j] * sc[j].G;
            const RMat q = dxt * dst + dst * dxt;
            const RVec& d = sc[j].d;
            const int n = lmis[j].n;
            RMat t(n, n);
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    t(a, b) = ((a == b ? 2 * (sigma * mu - d(a) * d(a)) : 0.0) - q(a, b)) / (d(a) + d(b));
            Rc[j] = sc[j].G * t * sc[j].G.transpose();
        }
        direction(Rc, dz, dX, dS);
        steps(dX, dS, ap, ad);
        ap = std::min(1.0, gamma * ap);
        ad = std::min(1.0, gamma * ad);
        for (size_t j = 0; j < nl; ++j) {
            X[j] += ap * dX[j];
            S[j] += ad * dS[j];
            X[j] = 0.5 * (X[j] + X[j].transpose());
            S[j] = 0.5 * (S[j] + S[j].transpose());
        }
        z += ad * dz;
        gamma = 0.9 + 0.09 * std::min(ap, ad);
    }
    sol.iterations = it;
    if (!diverged && !bestX.empty()) {
        X = bestX;
        z = bestz;
    }

    const RVec y = cp.reduced ? RVec(cp.y0 + cp.N * z) : z;
    for (size_t b = 0; b < p.blocks.size(); ++b) {
        const int nb = total_dim(p.blocks[b].regs);
        sol.blocks.emplace_back(p.blocks[b].regs, hermitian_from_coords(y.segment(cp.block_off[b], nb * nb), nb));
    }
    double pobj = 0;
    for (size_t j = 0; j < nl; ++j) pobj += frob_dot(lmis[j].C, X[j]);
    sol.value = objective_value(p, sol.blocks);
    sol.bound = pobj + cp.offset + p.constant;
    if (nl == 0) sol.bound = sol.value;
    sol.duality_gap = std::abs(sol.bound - sol.value);
    sol.max_violation = max_violation(p, sol.blocks);
    if (diverged)
        sol.status = SdpStatus::infeasible;
    else if (sol.duality_gap <= 1e-7 * (1 + std::abs(sol.value)) && sol.max_violation <= 1e-8)
        sol.status = SdpStatus::optimal;
    else
        sol.status = SdpStatus::max_iter;
    return sol;
}

}  // namespace telefid::detail
