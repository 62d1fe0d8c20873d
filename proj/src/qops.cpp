#include "telefid/qops.hpp"

#include <algorithm>
#include <cmath>
#include <regex>
#include <set>

namespace telefid {

namespace {

std::vector<int> strides_of(const Registers& regs) {
    std::vector<int> s(regs.size(), 1);
    for (int k = static_cast<int>(regs.size()) - 2; k >= 0; --k) s[k] = s[k + 1] * regs[k + 1].dim;
    return s;
}

int digit(int index, int stride, int dim) { return (index / stride) % dim; }

std::vector<int> positions(const Operator& m, const std::vector<std::string>& names, const char* what) {
    std::vector<int> pos;
    std::set<std::string> seen;
    for (const auto& n : names) {
        int i = m.index_of(n);
        require(i >= 0, std::string(what) + ": unknown register '" + n + "'");
        require(seen.insert(n).second, std::string(what) + ": register '" + n + "' listed twice");
        pos.push_back(i);
    }
    return pos;
}

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

}  // namespace

Registers qubits(std::initializer_list<std::string> names) {
    return qubits(std::vector<std::string>(names));
}

Registers qubits(const std::vector<std::string>& names) {
    Registers r;
    for (const auto& n : names) r.push_back({n, 2});
    return r;
}

bool valid_register_name(const std::string& name) {
    static const std::regex re("^(A|B1|B2|C)'?$|^N[0-9]+$");
    return std::regex_match(name, re);
}

int total_dim(const Registers& regs) {
    int d = 1;
    for (const auto& r : regs) d *= r.dim;
    return d;
}

Operator::Operator(Registers regs, Mat data) : regs_(std::move(regs)), data_(std::move(data)) {
    std::set<std::string> seen;
    for (const auto& r : regs_) {
        require(valid_register_name(r.name), "invalid register name '" + r.name + "'");
        require(r.dim >= 2, "register '" + r.name + "' has dim < 2");
        require(seen.insert(r.name).second, "duplicate register name '" + r.name + "'");
    }
    const int d = total_dim(regs_);
    require(data_.rows() == d && data_.cols() == d,
            "operator side " + std::to_string(data_.rows()) + " does not match register dims (" +
                std::to_string(d) + ")");
}

std::vector<std::string> Operator::names() const {
    std::vector<std::string> n;
    for (const auto& r : regs_) n.push_back(r.name);
    return n;
}

int Operator::index_of(const std::string& name) const {
    for (size_t i = 0; i < regs_.size(); ++i)
        if (regs_[i].name == name) return static_cast<int>(i);
    return -1;
}

Operator Operator::operator+(const Operator& o) const {
    require(regs_ == o.regs_, "operator sum: register lists differ");
    return Operator(regs_, data_ + o.data_);
}

Operator Operator::operator-(const Operator& o) const {
    require(regs_ == o.regs_, "operator difference: register lists differ");
    return Operator(regs_, data_ - o.data_);
}

Operator Operator::operator*(double s) const { return Operator(regs_, data_ * s); }

Operator identity(const Registers& regs) {
    const int d = total_dim(regs);
    return Operator(regs, Mat::Identity(d, d));
}

Operator zero(const Registers& regs) {
    const int d = total_dim(regs);
    return Operator(regs, Mat::Zero(d, d));
}

Operator tensor(const Operator& a, const Operator& b) {
    Registers regs = a.registers();
    for (const auto& r : b.registers()) {
        require(!a.has(r.name), "tensor: duplicate register name '" + r.name + "'");
        regs.push_back(r);
    }
    return Operator(std::move(regs), kron(a.data(), b.data()));
}

Operator partial_trace(const Operator& m, const std::vector<std::string>& keep) {
    positions(m, keep, "partial_trace");
    const auto& regs = m.registers();
    const auto st = strides_of(regs);
    const int n = m.side();

    Registers kept;
    std::vector<bool> is_kept(regs.size(), false);
    for (size_t k = 0; k < regs.size(); ++k) {
        if (std::find(keep.begin(), keep.end(), regs[k].name) != keep.end()) {
            is_kept[k] = true;
            kept.push_back(regs[k]);
        }
    }
    const int dk = total_dim(kept);
    const int dt = n / dk;

    // split every full index into (kept index, traced index)
    std::vector<int> kidx(n), tidx(n);
    for (int r = 0; r < n; ++r) {
        int ki = 0, ti = 0;
        for (size_t k = 0; k < regs.size(); ++k) {
            const int dg = digit(r, st[k], regs[k].dim);
            if (is_kept[k]) ki = ki * regs[k].dim + dg;
            else ti = ti * regs[k].dim + dg;
        }
        kidx[r] = ki;
        tidx[r] = ti;
    }
    std::vector<std::vector<int>> groups(dt);
    for (int r = 0; r < n; ++r) groups[tidx[r]].push_back(r);

    Mat out = Mat::Zero(dk, dk);
    for (const auto& g : groups)
        for (int r : g)
            for (int c : g) out(kidx[r], kidx[c]) += m.data()(r, c);
    return Operator(std::move(kept), std::move(out));
}

Operator partial_transpose(const Operator& m, const std::vector<std::string>& on) {
    const auto pos = positions(m, on, "partial_transpose");
    const auto& regs = m.registers();
    const auto st = strides_of(regs);
    const int n = m.side();

    // index = off-part + on-part (mixed radix is linear in the digits)
    std::vector<int> onp(n, 0), offp(n, 0);
    for (int r = 0; r < n; ++r) {
        for (size_t k = 0; k < regs.size(); ++k) {
            const int v = digit(r, st[k], regs[k].dim) * st[k];
            if (std::find(pos.begin(), pos.end(), static_cast<int>(k)) != pos.end()) onp[r] += v;
            else offp[r] += v;
        }
    }
    Mat out(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) out(offp[r] + onp[c], offp[c] + onp[r]) = m.data()(r, c);
    return Operator(regs, std::move(out));
}

Operator reorder(const Operator& m, const std::vector<std::string>& order) {
    const auto pos = positions(m, order, "reorder");
    require(pos.size() == m.registers().size(), "reorder: order must list every register");
    const auto& regs = m.registers();
    const auto st = strides_of(regs);
    const int n = m.side();

    std::vector<int> newidx(n);
    for (int r = 0; r < n; ++r) {
        int idx = 0;
        for (int p : pos) idx = idx * regs[p].dim + digit(r, st[p], regs[p].dim);
        newidx[r] = idx;
    }
    Registers nr;
    for (int p : pos) nr.push_back(regs[p]);
    Mat out(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) out(newidx[r], newidx[c]) = m.data()(r, c);
    return Operator(std::move(nr), std::move(out));
}

Operator relabel(const Operator& m, const std::vector<std::string>& names) {
    require(names.size() == m.registers().size(), "relabel: wrong number of names");
    Registers nr = m.registers();
    for (size_t k = 0; k < nr.size(); ++k) nr[k].name = names[k];
    return Operator(std::move(nr), m.data());
}

Operator embed(const Mat& local, const std::string& target, const Registers& regs) {
    Operator out;
    bool found = false;
    bool first = true;
    for (const auto& r : regs) {
        Operator piece;
        if (r.name == target) {
            require(local.rows() == r.dim && local.cols() == r.dim,
                    "embed: local operator does not match register '" + target + "'");
            piece = Operator({r}, local);
            found = true;
        } else {
            piece = identity({r});
        }
        out = first ? piece : tensor(out, piece);
        first = false;
    }
    require(found, "embed: unknown register '" + target + "'");
    return out;
}

double trace_re(const Operator& m) { return m.data().trace().real(); }

double inner(const Operator& a, const Operator& b) {
    require(a.registers() == b.registers(), "inner: register lists differ");
    return (a.data().conjugate().cwiseProduct(b.data())).sum().real();
}

double hermiticity_error(const Mat& m) {
    if (m.rows() != m.cols()) return INFINITY;
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Mat hermitian_part(const Mat& m) { return (m + m.adjoint()) * 0.5; }

Eigensystem eig_hermitian_unchecked(const Mat& m) {
    Eigen::SelfAdjointEigenSolver<Mat> es(m);
    if (es.info() != Eigen::Success) throw SolverError("Hermitian eigensolver failed");
    Eigensystem out;
    out.values = es.eigenvalues().reverse();
    out.vectors = es.eigenvectors().rowwise().reverse();
    return out;
}

Eigensystem eig_hermitian(const Mat& m) {
    require(m.rows() == m.cols(), "eig_hermitian: matrix not square");
    const double err = hermiticity_error(m);
    require(err <= tol::herm, "eig_hermitian: not Hermitian (max |M - M^dag| = " + std::to_string(err) + ")");
    return eig_hermitian_unchecked(hermitian_part(m));
}

Eigensystem eig_hermitian(const Operator& m) { return eig_hermitian(m.data()); }

double lambda_min(const Mat& h) {
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(h), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

double lambda_max(const Mat& h) {
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(h), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(h.rows() - 1);
}

double trace_norm(const Mat& h) {
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(h), Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
}

Mat projector(const Vec& v) { return v * v.adjoint(); }

}  // namespace telefid
