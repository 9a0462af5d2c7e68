#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <numbers>

#include "oracles.hpp"
#include "parlives/ensembles.hpp"
#include "parlives/qcore.hpp"

using namespace parlives;
using namespace parlives::qcore;
using oracle::C;

namespace {

const double r2 = 1.0 / std::sqrt(2.0);

PureState qubit(C a, C b) {
    CVector v(2);
    v << a, b;
    return PureState({2}, v);
}

}  // namespace

TEST_CASE("pure state validation") {
    CVector v(2);
    v << 1.0, 1.0;
    CHECK_THROWS_AS(PureState({2}, v), std::invalid_argument);
    CHECK_NOTHROW(PureState::normalized({2}, v));
    CHECK_THROWS_AS(PureState({3}, CVector::Zero(2)), std::invalid_argument);
    CHECK_THROWS_AS(PureState::normalized({2}, CVector::Zero(2)), std::invalid_argument);
    v << std::nan(""), 0.0;
    CHECK_THROWS_AS(PureState({2}, v), std::invalid_argument);
}

TEST_CASE("mixture validation") {
    CHECK_THROWS_AS(Mixture({}), std::invalid_argument);
    CHECK_THROWS_AS(Mixture({{PureState::basis(2, 0), 0.6}, {PureState::basis(2, 1), 0.6}}), std::invalid_argument);
    CHECK_THROWS_AS(Mixture({{PureState::basis(2, 0), -0.5}, {PureState::basis(2, 1), 1.5}}), std::invalid_argument);
    CHECK_THROWS_AS(Mixture({{PureState::basis(2, 0), 0.5}, {PureState::basis(3, 1), 0.5}}), std::invalid_argument);
}

TEST_CASE("density matrix validation") {
    CMatrix m = CMatrix::Identity(2, 2);
    CHECK_THROWS_AS(DensityMatrix({2}, m), std::invalid_argument);  // trace 2
    m << 1.5, 0, 0, -0.5;
    CHECK_THROWS_AS(DensityMatrix({2}, m), std::invalid_argument);  // negative eigenvalue
    m << 0.5, C(0, 0.1), C(0, 0.1), 0.5;
    CHECK_THROWS_AS(DensityMatrix({2}, m), std::invalid_argument);  // not Hermitian
}

TEST_CASE("measurement basis must be orthonormal") {
    CHECK_THROWS_AS(MeasurementBasis(2, {PureState::basis(2, 0), plus_state()}), std::invalid_argument);
    CHECK_NOTHROW(MeasurementBasis::hadamard());
}

TEST_CASE("tensor matches index formula") {
    Rng rng = stream(1, 0);
    const auto a = random_state({2}, rng);
    const auto b = random_state({3}, rng);
    const auto ab = tensor(a, b);
    CHECK(ab.dims() == Dims{2, 3});
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(std::abs(ab[i * 3 + j] - a[i] * b[j]) < 1e-15);
}

TEST_CASE("named ensembles against explicit outer products") {
    const double h = std::sqrt(3.0) / 2.0;
    const auto half_identity = oracle::outer_mix({{1, 0}, {0, 1}}, {0.5, 0.5});
    CHECK(oracle::max_dev(oracle::from(density_of(ensembles::computational_equal())), half_identity) < 1e-15);
    CHECK(oracle::max_dev(oracle::from(density_of(ensembles::hadamard_equal())),
                          oracle::outer_mix({{r2, r2}, {r2, -r2}}, {0.5, 0.5})) < 1e-15);
    const auto trine = oracle::outer_mix({{1, 0}, {0.5, h}, {0.5, -h}}, {1 / 3.0, 1 / 3.0, 1 / 3.0});
    CHECK(oracle::max_dev(oracle::from(density_of(ensembles::trine())), trine) < 1e-15);
    // Different preparations, same operator.
    CHECK(oracle::max_dev(trine, half_identity) < 1e-15);

    const auto quarter = oracle::outer_mix({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}, {0.25, 0.25, 0.25, 0.25});
    CHECK(oracle::max_dev(oracle::from(density_of(ensembles::bell_uniform())), quarter) < 1e-15);
    CHECK(oracle::max_dev(oracle::from(density_of(ensembles::classical_bit_pairs())), quarter) < 1e-15);
}

TEST_CASE("density_equal respects tolerance and dims") {
    const auto a = density_of(ensembles::computational_equal());
    const auto b = density_of(ensembles::trine());
    CHECK(density_equal(a, b, 1e-10));
    CHECK_THROWS(max_entry_deviation(a, density_of(ensembles::bell_uniform())));
    CHECK_FALSE(density_equal(a, DensityMatrix::of_pure(plus_state()), 1e-10));
}

TEST_CASE("partial trace against index loops") {
    Rng rng = stream(2, 0);
    for (int trial = 0; trial < 20; ++trial) {
        const auto s = random_state({3, 2}, rng);
        const auto rho = DensityMatrix::of_pure(s);
        const auto m = oracle::outer_mix({oracle::amps(s)}, {1.0});
        CHECK(oracle::max_dev(oracle::from(partial_trace(rho, {0})), oracle::trace_second(m, 3, 2)) < 1e-13);
        CHECK(oracle::max_dev(oracle::from(partial_trace(rho, {1})), oracle::trace_first(m, 3, 2)) < 1e-13);
    }
    const auto rho = DensityMatrix::of_pure(random_state({2, 2}, rng));
    CHECK_THROWS(partial_trace(rho, {}));
    CHECK_THROWS(partial_trace(rho, {0, 0}));
    CHECK_THROWS(partial_trace(rho, {2}));
}

TEST_CASE("partial trace of a product returns the factor") {
    Rng rng = stream(3, 0);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_state({2}, rng);
        const auto b = random_state({3}, rng);
        const auto c = random_state({2}, rng);
        const std::vector<PureState> f{a, b, c};
        const auto rho = DensityMatrix::of_pure(tensor(f));
        CHECK(density_equal(partial_trace(rho, {1}), DensityMatrix::of_pure(b), 1e-12));
        CHECK(density_equal(partial_trace(rho, {2, 0}), DensityMatrix::of_pure(tensor(a, c)), 1e-12));
    }
}

TEST_CASE("born probabilities and sampled measurement") {
    const auto s = qubit(std::sqrt(0.2), C(0, std::sqrt(0.8)));
    const auto p = outcome_probabilities(s, 0, MeasurementBasis::computational(2));
    CHECK(p[0] == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(p[1] == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(born_probability(DensityMatrix::of_pure(s), PureState::basis(2, 1)) == doctest::Approx(0.8));

    Rng rng = stream(4, 0);
    const int n = 20000;
    int ones = 0;
    for (int i = 0; i < n; ++i) {
        const auto rec = measure(s, 0, MeasurementBasis::computational(2), rng);
        ones += static_cast<int>(rec.outcome_index);
        CHECK(equal_up_to_phase(rec.post_state, PureState::basis(2, rec.outcome_index), 1e-12));
    }
    const double sigma = std::sqrt(0.8 * 0.2 / n);
    CHECK(std::abs(ones / double(n) - 0.8) < 4 * sigma);
}

TEST_CASE("measurement of one subsystem collapses the partner") {
    CVector v = CVector::Zero(4);
    v(1) = r2;
    v(2) = -r2;
    const PureState singlet({2, 2}, v);
    Rng rng = stream(5, 0);
    for (int i = 0; i < 50; ++i) {
        const auto rec = measure(singlet, 0, MeasurementBasis::computational(2), rng);
        const auto other = outcome_probabilities(rec.post_state, 1, MeasurementBasis::computational(2));
        CHECK(other[1 - rec.outcome_index] == doctest::Approx(1.0));
        CHECK(rec.probability == doctest::Approx(0.5));
    }
}

TEST_CASE("same seed gives the same outcomes") {
    Rng a = stream(99, 3), b = stream(99, 3);
    for (int i = 0; i < 100; ++i)
        CHECK(measure(plus_state(), 0, MeasurementBasis::computational(2), a).outcome_index ==
              measure(plus_state(), 0, MeasurementBasis::computational(2), b).outcome_index);
}

TEST_CASE("peres purity") {
    CHECK(is_pure_by_peres(Mixture({{plus_state(), 0.5}, {plus_state(), 0.5}})));
    CHECK_FALSE(is_pure_by_peres(ensembles::hadamard_equal()));
    CHECK_FALSE(is_pure_by_peres(ensembles::trine()));
}

TEST_CASE("purification layout") {
    const Mixture m({{PureState::basis(2, 0), 0.25}, {plus_state(), 0.75}});
    const auto p = purify(m);
    CHECK(p.dims() == Dims{2, 2});
    // sqrt(.25)|0>|0> + sqrt(.75)|+>|1>
    const std::vector<C> expected{0.5, std::sqrt(0.75) * r2, 0.0, std::sqrt(0.75) * r2};
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(p[i] - expected[i]) < 1e-15);

    const Mixture with_zero({{PureState::basis(2, 0), 1.0}, {plus_state(), 0.0}});
    CHECK(purify(with_zero).dims() == Dims{2, 1});
}

TEST_CASE("property: purify then trace recovers the mixture") {
    Rng rng = stream(6, 0);
    for (int i = 0; i < 200; ++i) {
        const auto m = random_mixture(rng, 5, 4);
        CHECK(m.size() >= 1);
        CHECK(m.size() <= 5);
        CHECK(m.dims().front() <= 4);
        const auto pure = purify(m);
        const auto k = pure.dims().back();
        const auto d = m.dims().front();
        const auto oracle_reduced = oracle::trace_second(oracle::outer_mix({oracle::amps(pure)}, {1.0}), d, k);
        std::vector<std::vector<C>> vs;
        std::vector<double> ps;
        for (const auto& e : m.entries()) {
            vs.push_back(oracle::amps(e.state));
            ps.push_back(e.prob);
        }
        CHECK(oracle::max_dev(oracle_reduced, oracle::outer_mix(vs, ps)) < 1e-10);
        CHECK(density_equal(partial_trace(DensityMatrix::of_pure(pure), {0}), density_of(m), 1e-10));
    }
}

TEST_CASE("property: density matrices are unit trace and positive") {
    Rng rng = stream(7, 0);
    for (int i = 0; i < 100; ++i) {
        const auto rho = density_of(random_mixture(rng, 5, 4));
        CHECK(std::abs(rho.trace() - C(1.0)) < 1e-12);
        CHECK(rho.eigenvalues().minCoeff() > -1e-12);
        CHECK((rho.matrix() - rho.matrix().adjoint()).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("apply requires a unitary and permutes targets") {
    CMatrix x(2, 2);
    x << 0, 1, 1, 0;
    const auto s = tensor(PureState::basis(2, 0), PureState::basis(2, 1));
    const std::size_t t1[] = {1};
    CHECK(equal_up_to_phase(apply(s, x, t1), PureState::basis({2, 2}, std::vector<std::size_t>{0, 0}), 1e-15));

    CMatrix swap = CMatrix::Zero(4, 4);
    swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1;
    const std::size_t t10[] = {1, 0};
    CHECK(equal_up_to_phase(apply(s, swap, t10), PureState::basis({2, 2}, std::vector<std::size_t>{1, 0}), 1e-15));

    CMatrix bad = CMatrix::Identity(2, 2) * 2.0;
    CHECK_THROWS_AS(apply(s, bad, t1), std::invalid_argument);
}

TEST_CASE("property: unitaries preserve norm") {
    Rng rng = stream(8, 0);
    const double t = 0.37;
    CMatrix u(2, 2);
    u << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
    for (int i = 0; i < 50; ++i) {
        const auto s = random_state({2, 3, 2}, rng);
        const std::size_t target[] = {2};
        CHECK(apply(s, u, target).amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("dephasing kills coherences and keeps the diagonal") {
    const auto rho = DensityMatrix::of_pure(plus_state());
    const auto d = dephase(rho, 0, MeasurementBasis::computational(2));
    CHECK(density_equal(d, maximally_mixed(2), 1e-15));
    CHECK(density_equal(dephase(rho, 0, MeasurementBasis::hadamard()), rho, 1e-15));
}

TEST_CASE("inner product conjugates the bra") {
    const auto a = qubit(0, C(0, 1));
    const auto b = qubit(0, 1);
    CHECK(std::abs(inner(a, b) - C(0, -1)) < 1e-15);
}
