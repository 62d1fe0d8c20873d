#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "telefid/channels.hpp"
#include "telefid/measures.hpp"

using namespace telefid;

TEST_CASE("bell states") {
    CHECK(std::abs(bell(0).dot(bell(1))) < 1e-15);
    CHECK(fef(bell_state(2)).value == doctest::Approx(1));
    const Vec x = tensor(Operator(qubits({"A"}), pauli(1)), identity(qubits({"B1"}))).data() * bell(0);
    CHECK(std::abs(std::abs(x.dot(bell(2))) - 1) < 1e-14);
    for (int i = 0; i < 4; ++i) {
        const Vec y = tensor(Operator(qubits({"A"}), bell_pauli(i)), identity(qubits({"B1"}))).data() * bell(0);
        CHECK(std::abs(std::abs(y.dot(bell(i))) - 1) < 1e-14);
    }
    // (|01> + |10>)/sqrt2 and (|01> - |10>)/sqrt2
    CHECK(bell(2)(1).real() == doctest::Approx(std::sqrt(0.5)));
    CHECK(bell(3)(2).real() == doctest::Approx(-std::sqrt(0.5)));
}

TEST_CASE("schmidt_pure") {
    CHECK((schmidt_pure(0.5) - bell(0)).norm() < 1e-15);
    CHECK(concurrence(pure(0.75)) == doctest::Approx(std::sqrt(3.0) / 2));
    CHECK(fef(pure(0.9)).value == doctest::Approx(0.8));
    CHECK(fef_oracle(pure(0.9)).value == doctest::Approx(0.8).epsilon(1e-7));
    CHECK_THROWS_AS(schmidt_pure(1.0), DomainError);
    CHECK_THROWS_AS(schmidt_pure(0.0), DomainError);
}

TEST_CASE("werner") {
    CHECK((werner(1).mat() - projector(bell(0))).norm() < 1e-15);
    CHECK(fef(werner(0.4)).value == doctest::Approx(0.55));
    CHECK(concurrence(werner(1.0 / 3)) < 1e-7);
    const Eigensystem es = eig_hermitian(werner(0.4).op());
    CHECK(es.values(0) == doctest::Approx(0.55));
    for (int k = 1; k < 4; ++k) CHECK(es.values(k) == doctest::Approx(0.15));
    CHECK_THROWS_AS(werner(-0.5), DomainError);
    CHECK_THROWS_AS(werner(1.1), DomainError);
    // depolarizing on the second qubit of Phi_0
    for (double lam : {-1.0 / 3, 0.0, 0.4, 0.9}) {
        const Applied a = apply(depolarizing(lam), "B1", bell_state(0));
        CHECK((a.state.mat() - werner(lam).mat()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("adc_choi") {
    CHECK((adc_choi(0).mat() - projector(bell(0))).norm() < 1e-15);
    for (double p : {0.1, 0.36, 0.5, 0.9}) {
        CHECK(concurrence(adc_choi(p)) == doctest::Approx(std::sqrt(1 - p)).epsilon(1e-9));
        CHECK(oracle::concurrence_rank2(adc_choi(p)) == doctest::Approx(std::sqrt(1 - p)).epsilon(1e-8));
        const Applied a = apply(adc(p), "A", bell_state(0));
        CHECK((a.state.mat() - adc_choi(p).mat()).cwiseAbs().maxCoeff() < 1e-12);
        const Eigensystem es = eig_hermitian(adc_choi(p).op());
        CHECK(std::abs(es.values(2)) < 1e-10);
    }
    CHECK(concurrence(adc_choi(0.36)) == doctest::Approx(0.8));
    CHECK(optimal_fef_2q(adc_choi(0.8)).value == doctest::Approx(0.5625).epsilon(1e-8));
    CHECK_THROWS_AS(adc_choi(1.0), DomainError);
    CHECK_THROWS_AS(adc_choi(-0.1), DomainError);
}

TEST_CASE("bell_diagonal") {
    CHECK((bell_diagonal({1, 0, 0, 0}).mat() - projector(bell(0))).norm() < 1e-15);
    CHECK(concurrence(bell_diagonal({0.7, 0.1, 0.1, 0.1})) == doctest::Approx(0.4));
    const DensityMatrix mm = bell_diagonal({0.25, 0.25, 0.25, 0.25});
    CHECK((mm.mat() - Mat::Identity(4, 4) / 4.0).norm() < 1e-15);
    CHECK(fef(mm).value == doctest::Approx(0.25));
    const DensityMatrix bd = bell_diagonal({0.4, 0.3, 0.2, 0.1});
    for (int i = 0; i < 4; ++i) {
        const Vec v = bd.mat() * bell(i);
        const double lam = bell(i).dot(v).real();
        CHECK((v - lam * bell(i)).norm() < 1e-14);
    }
    CHECK_THROWS_AS(bell_diagonal({0.5, 0.5, 0.5, -0.5}), DomainError);
    CHECK_THROWS_AS(bell_diagonal({0.5, 0.1, 0.1, 0.1}), DomainError);
}

TEST_CASE("eta_basis") {
    const MeasurementBasis b = eta_basis(0.5, 0.5);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(std::abs(b.vectors[i].dot(bell(i))) - 1) < 1e-14);
    const MeasurementBasis e = eta_basis(0.75, 0.75);
    CHECK(e.vectors[0](0).real() == doctest::Approx(std::sqrt(3.0) / 2));
    CHECK(e.vectors[0](3).real() == doctest::Approx(0.5));
    for (double d0 : {0.5, 0.6, 0.9})
        for (double d1 : {0.55, 0.99}) {
            const MeasurementBasis m = eta_basis(d0, d1);
            Mat gram(4, 4);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) gram(i, j) = m.vectors[i].dot(m.vectors[j]);
            CHECK((gram - Mat::Identity(4, 4)).norm() < 1e-10);
        }
    CHECK_THROWS_AS(eta_basis(0.4, 0.75), DomainError);
    CHECK_THROWS_AS(eta_basis(0.75, 1.0), DomainError);
}

TEST_CASE("mes_basis") {
    const Mat I = Mat::Identity(2, 2);
    const MeasurementBasis b = mes_basis(I, I);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(std::abs(b.vectors[i].dot(bell(i))) - 1) < 1e-14);
    std::mt19937_64 g(21);
    const Mat u = oracle::random_unitary(2, g), v = oracle::random_unitary(2, g);
    const MeasurementBasis m = mes_basis(u, v);
    for (const auto& k : m.vectors) CHECK(fef(pure_state(k)).value == doctest::Approx(1));
    const std::vector<Mat> w = mes_w_matrices(u, v);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(std::abs((w[i].transpose() * w[j].conjugate()).trace() - cplx(i == j ? 2.0 : 0.0)) < 1e-12);
    Mat bad = I;
    bad(0, 0) = 2;
    CHECK_THROWS_AS(mes_basis(bad, I), DomainError);
}

TEST_CASE("smolin operator") {
    const Operator m = smolin_operator();
    CHECK(m.side() == 16);
    CHECK(m.names() == std::vector<std::string>{"A", "C", "B1", "B2"});
    const Eigensystem es = eig_hermitian(m);
    for (int k = 0; k < 16; ++k) CHECK(std::abs(es.values(k) - (k < 4 ? 1.0 : 0.0)) < 1e-12);
    CHECK(trace_re(m) == doctest::Approx(4));
    CHECK_NOTHROW(DensityMatrix(m * 0.25));
    CHECK(lambda_min(partial_transpose(m, {"B1", "B2"}).data()) > -1e-12);
}

TEST_CASE("normalize_phase") {
    Vec v(2);
    v << cplx(0, 0), cplx(0, 1);
    const Vec w = normalize_phase(v);
    CHECK(w(1).real() == doctest::Approx(1));
    CHECK(std::abs(w(1).imag()) < 1e-15);
}

TEST_CASE("density matrix invariants") {
    Mat m = Mat::Identity(4, 4) / 4.0;
    m(0, 0) += 0.1;
    CHECK_THROWS_AS(DensityMatrix(Operator(qubits({"A", "B1"}), m)), DomainError);
    Mat neg = Mat::Zero(4, 4);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    CHECK_THROWS_AS(DensityMatrix(Operator(qubits({"A", "B1"}), neg)), DomainError);
    std::mt19937_64 g(1);
    for (int k = 0; k < 20; ++k) CHECK_NOTHROW(oracle::random_state(g, 1 + k % 4));
}
