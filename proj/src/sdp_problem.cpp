#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "telefid/sdp.hpp"

namespace telefid {

namespace {

std::vector<std::string> names_of(const Registers& regs) {
    std::vector<std::string> n;
    for (const auto& r : regs) n.push_back(r.name);
    return n;
}

std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
    return s;
}

}  // namespace

LinearMap& LinearMap::partial_trace(std::vector<std::string> keep) {
    steps_.push_back({MapStep::Kind::partial_trace, std::move(keep), {}, {}, 1.0});
    return *this;
}

LinearMap& LinearMap::partial_transpose(std::vector<std::string> on) {
    steps_.push_back({MapStep::Kind::partial_transpose, std::move(on), {}, {}, 1.0});
    return *this;
}

LinearMap& LinearMap::tensor_identity(Registers regs) {
    steps_.push_back({MapStep::Kind::tensor_identity, {}, std::move(regs), {}, 1.0});
    return *this;
}

LinearMap& LinearMap::kron_left(Operator k) {
    steps_.push_back({MapStep::Kind::kron_left, {}, {}, std::move(k), 1.0});
    return *this;
}

LinearMap& LinearMap::reorder(std::vector<std::string> order) {
    steps_.push_back({MapStep::Kind::reorder, std::move(order), {}, {}, 1.0});
    return *this;
}

LinearMap& LinearMap::scale(double s) {
    steps_.push_back({MapStep::Kind::scale, {}, {}, {}, s});
    return *this;
}

static Registers step_output(const MapStep& st, const Registers& in) {
    using K = MapStep::Kind;
    switch (st.kind) {
        case K::partial_trace: {
            Registers out;
            for (const auto& r : in)
                for (const auto& n : st.names)
                    if (r.name == n) out.push_back(r);
            return out;
        }
        case K::partial_transpose:
        case K::scale: return in;
        case K::tensor_identity: {
            Registers out = in;
            out.insert(out.end(), st.regs.begin(), st.regs.end());
            return out;
        }
        case K::kron_left: {
            Registers out = st.factor.registers();
            out.insert(out.end(), in.begin(), in.end());
            return out;
        }
        case K::reorder: {
            Registers out;
            for (const auto& n : st.names)
                for (const auto& r : in)
                    if (r.name == n) out.push_back(r);
            return out;
        }
    }
    return in;
}

Registers LinearMap::output_registers(const Registers& input) const {
    Registers r = input;
    for (const auto& st : steps_) r = step_output(st, r);
    return r;
}

Operator LinearMap::apply(const Operator& x) const {
    using K = MapStep::Kind;
    Operator y = x;
    for (const auto& st : steps_) {
        switch (st.kind) {
            case K::partial_trace: y = telefid::partial_trace(y, st.names); break;
            case K::partial_transpose: y = telefid::partial_transpose(y, st.names); break;
            case K::tensor_identity: y = tensor(y, identity(st.regs)); break;
            case K::kron_left: y = tensor(st.factor, y); break;
            case K::reorder: y = telefid::reorder(y, st.names); break;
            case K::scale: y = y * st.s; break;
        }
    }
    return y;
}

Operator LinearMap::apply_adjoint(const Operator& y, const Registers& input) const {
    using K = MapStep::Kind;
    std::vector<Registers> ins{input};
    for (const auto& st : steps_) ins.push_back(step_output(st, ins.back()));
    require(y.registers() == ins.back(), "apply_adjoint: operator registers do not match map output");

    Operator x = y;
    for (int i = static_cast<int>(steps_.size()) - 1; i >= 0; --i) {
        const auto& st = steps_[i];
        const Registers& in = ins[i];
        switch (st.kind) {
            case K::partial_trace: {
                Registers traced;
                for (const auto& r : in) {
                    bool kept = false;
                    for (const auto& n : st.names) kept = kept || (r.name == n);
                    if (!kept) traced.push_back(r);
                }
                if (!traced.empty()) x = tensor(x, identity(traced));
                x = telefid::reorder(x, names_of(in));
                break;
            }
            case K::partial_transpose: x = telefid::partial_transpose(x, st.names); break;
            case K::tensor_identity: x = telefid::partial_trace(x, names_of(in)); break;
            case K::kron_left: {
                const Operator kd = tensor(st.factor.adjoint(), identity(in));
                x = telefid::partial_trace(Operator(x.registers(), kd.data() * x.data()), names_of(in));
                break;
            }
            case K::reorder: x = telefid::reorder(x, names_of(in)); break;
            case K::scale: x = x * st.s; break;
        }
    }
    return x;
}

std::string LinearMap::describe() const {
    using K = MapStep::Kind;
    if (steps_.empty()) return "id";
    std::string s;
    for (const auto& st : steps_) {
        if (!s.empty()) s += " . ";
        switch (st.kind) {
            case K::partial_trace: s += "Tr_keep[" + join(st.names) + "]"; break;
            case K::partial_transpose: s += "T[" + join(st.names) + "]"; break;
            case K::tensor_identity: s += "(x)I[" + join(names_of(st.regs)) + "]"; break;
            case K::kron_left: s += "K(x)[" + join(st.factor.names()) + "]"; break;
            case K::reorder: s += "order[" + join(st.names) + "]"; break;
            case K::scale: {
                std::ostringstream o;
                o << "*" << st.s;
                s += o.str();
                break;
            }
        }
    }
    return s;
}

int SdpProblem::add_block(std::string block_name, Registers regs) {
    blocks.push_back({std::move(block_name), regs});
    objective.push_back(zero(regs));
    return static_cast<int>(blocks.size()) - 1;
}

void SdpProblem::add_constraint(std::string label, std::vector<Term> terms, Relation rel, Operator rhs) {
    constraints.push_back({std::move(label), std::move(terms), rel, std::move(rhs)});
}

void SdpProblem::add_psd(int block, std::string label) {
    add_constraint(std::move(label), {term(block)}, Relation::geq, zero(blocks.at(block).regs));
}

void SdpProblem::validate() const {
    require(!blocks.empty(), "SDP has no variable blocks");
    require(objective.size() == blocks.size(), "SDP objective must have one operator per block");
    for (size_t b = 0; b < blocks.size(); ++b) {
        require(objective[b].registers() == blocks[b].regs, "objective registers differ from block " + blocks[b].name);
        require(hermiticity_error(objective[b].data()) <= 1e-9, "objective of block " + blocks[b].name + " not Hermitian");
    }
    for (const auto& c : constraints) {
        require(!c.terms.empty(), "constraint '" + c.label + "' has no terms");
        require(hermiticity_error(c.rhs.data()) <= 1e-9, "constraint '" + c.label + "' rhs not Hermitian");
        for (const auto& t : c.terms) {
            require(t.block >= 0 && t.block < static_cast<int>(blocks.size()),
                    "constraint '" + c.label + "' references unknown block");
            const Registers out = t.map.output_registers(blocks[t.block].regs);
            require(out == c.rhs.registers(), "constraint '" + c.label + "': map output registers differ from rhs");
        }
    }
}

int SdpProblem::real_dimension() const {
    int m = 0;
    for (const auto& b : blocks) {
        const int n = total_dim(b.regs);
        m += n * n;
    }
    return m;
}

const char* to_string(SdpStatus s) {
    switch (s) {
        case SdpStatus::optimal: return "optimal";
        case SdpStatus::max_iter: return "max_iter";
        case SdpStatus::infeasible: return "infeasible";
    }
    return "?";
}

const char* to_string(SdpBackend b) {
    switch (b) {
        case SdpBackend::automatic: return "automatic";
        case SdpBackend::interior_point: return "interior_point";
        case SdpBackend::admm: return "admm";
    }
    return "?";
}

double objective_value(const SdpProblem& p, const std::vector<Operator>& x) {
    double v = p.constant;
    for (size_t b = 0; b < p.blocks.size(); ++b) v += inner(p.objective[b], x[b]);
    return v;
}

Operator constraint_lhs(const SdpProblem& p, const Constraint& c, const std::vector<Operator>& x) {
    Operator acc = zero(c.rhs.registers());
    for (const auto& t : c.terms) acc = acc + t.map.apply(x[t.block]);
    (void)p;
    return acc;
}

std::vector<double> constraint_slacks(const SdpProblem& p, const std::vector<Operator>& x) {
    std::vector<double> out;
    for (const auto& c : p.constraints) {
        const Mat d = constraint_lhs(p, c, x).data() - c.rhs.data();
        switch (c.rel) {
            case Relation::geq: out.push_back(lambda_min(d)); break;
            case Relation::leq: out.push_back(lambda_min(-d)); break;
            case Relation::eq: out.push_back(-d.cwiseAbs().maxCoeff()); break;
        }
    }
    return out;
}

double max_violation(const SdpProblem& p, const std::vector<Operator>& x) {
    double v = 0;
    for (double s : constraint_slacks(p, x)) v = std::max(v, -s);
    return v;
}

RVec hermitian_coords(const Mat& h) {
    const int n = static_cast<int>(h.rows());
    RVec y(n * n);
    int k = 0;
    for (int a = 0; a < n; ++a) y(k++) = h(a, a).real();
    for (int a = 0; a < n; ++a)
        for (int c = a + 1; c < n; ++c) {
            y(k++) = std::sqrt(2.0) * h(a, c).real();
            y(k++) = std::sqrt(2.0) * h(a, c).imag();
        }
    return y;
}

Mat hermitian_from_coords(const RVec& y, int n) {
    Mat h = Mat::Zero(n, n);
    int k = 0;
    for (int a = 0; a < n; ++a) h(a, a) = y(k++);
    const double s = 1.0 / std::sqrt(2.0);
    for (int a = 0; a < n; ++a)
        for (int c = a + 1; c < n; ++c) {
            const cplx v(y(k) * s, y(k + 1) * s);
            k += 2;
            h(a, c) = v;
            h(c, a) = std::conj(v);
        }
    return h;
}

Mat hermitian_basis_element(int k, int n) {
    RVec y = RVec::Zero(n * n);
    y(k) = 1.0;
    return hermitian_from_coords(y, n);
}

SdpSolution solve(const SdpProblem& p, const SolveOptions& opts) {
    p.validate();
    const auto t0 = std::chrono::steady_clock::now();
    SdpBackend backend = opts.backend;
    if (backend == SdpBackend::automatic)
        // dense Schur complement is m x m; past a few thousand unknowns switch to splitting
        backend = p.real_dimension() > 4096 ? SdpBackend::admm : SdpBackend::interior_point;
    SdpSolution s = backend == SdpBackend::admm ? detail::solve_admm(p, opts) : detail::solve_interior_point(p, opts);
    s.backend = backend;
    s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return s;
}

namespace {

std::string num(double v, int digits = 8) {
    if (std::abs(v) < 5e-9) v = 0;  // no "-0" or noise digits in golden files
    std::ostringstream o;
    o << std::setprecision(digits) << v;
    return o.str();
}

const char* rel_name(Relation r) {
    switch (r) {
        case Relation::leq: return "<=";
        case Relation::geq: return ">=";
        case Relation::eq: return "==";
    }
    return "?";
}

void dump_matrix(std::ostream& os, const Mat& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        os << "   ";
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            os << " " << num(std::round(m(r, c).real() * 1e6) / 1e6, 6);
            const double im = std::round(m(r, c).imag() * 1e6) / 1e6;
            if (im != 0) os << (im > 0 ? "+" : "") << num(im, 6) << "i";
        }
        os << "\n";
    }
}

}  // namespace

void dump(std::ostream& os, const SdpProblem& p, const SdpSolution& s) {
    os << "problem " << p.name << "\n";
    os << "objective constant " << num(p.constant) << "\n";
    for (size_t b = 0; b < p.blocks.size(); ++b)
        os << "block " << b << " " << p.blocks[b].name << " [" << join(names_of(p.blocks[b].regs)) << "] side "
           << total_dim(p.blocks[b].regs) << "\n";
    for (size_t i = 0; i < p.constraints.size(); ++i) {
        const auto& c = p.constraints[i];
        os << "constraint " << i << " '" << c.label << "': ";
        for (size_t t = 0; t < c.terms.size(); ++t)
            os << (t ? " + " : "") << c.terms[t].map.describe() << "(" << p.blocks[c.terms[t].block].name << ")";
        os << " " << rel_name(c.rel) << " rhs[" << join(c.rhs.names()) << "]\n";
    }
    os << "status " << to_string(s.status) << "\n";
    os << "value " << num(s.value) << "\n";
    os << "gap_ok " << (s.duality_gap <= 1e-7 * (1 + std::abs(s.value)) ? "yes" : "no") << "\n";
    if (!s.blocks.empty()) {
        const auto slacks = constraint_slacks(p, s.blocks);
        for (size_t i = 0; i < slacks.size(); ++i) os << "residual " << i << " " << num(slacks[i], 6) << "\n";
        for (size_t b = 0; b < s.blocks.size(); ++b) {
            os << "solution " << p.blocks[b].name << "\n";
            dump_matrix(os, s.blocks[b].data());
        }
    }
}

}  // namespace telefid
