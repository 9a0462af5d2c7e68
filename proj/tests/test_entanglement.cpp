#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "parlives/entanglement.hpp"

using namespace parlives;
using namespace parlives::entanglement;

TEST_CASE("singlet amplitudes") {
    const auto s = singlet();
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(s.dims() == qcore::Dims{2, 2});
    CHECK(std::abs(s[0]) == 0.0);
    CHECK(s[1].real() == doctest::Approx(r));
    CHECK(s[2].real() == doctest::Approx(-r));
    CHECK(std::abs(s[3]) == 0.0);
}

TEST_CASE("property: the singlet looks the same in every real basis") {
    Rng rng = stream(10, 0);
    for (int i = 0; i < 50; ++i) {
        const double t = uniform01(rng) * 2 * std::numbers::pi;
        const auto rewritten = rewrite_in_basis({t});
        CHECK((rewritten.amplitudes() - singlet().amplitudes()).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("property: same-basis outcomes are always opposite") {
    Rng angles = stream(11, 0), rng = stream(11, 1);
    for (int i = 0; i < 2000; ++i) {
        const double t = uniform01(angles) * std::numbers::pi;
        const auto o = joint_measure_same_basis({t}, rng);
        CHECK(o.left != o.right);
    }
}

TEST_CASE("measuring right first gives the same joint statistics") {
    const AngleBasis a{0.3}, b{1.1};
    Rng r1 = stream(12, 0), r2 = stream(12, 1);
    const int n = 20000;
    int eq_left = 0, eq_right = 0;
    for (int i = 0; i < n; ++i) {
        const auto x = joint_measure(singlet(), a.basis(), b.basis(), r1, MeasureOrder::left_first);
        const auto y = joint_measure(singlet(), a.basis(), b.basis(), r2, MeasureOrder::right_first);
        eq_left += x.left == x.right;
        eq_right += y.left == y.right;
    }
    const double p = std::pow(std::sin(b.theta - a.theta), 2);
    const double sigma = std::sqrt(p * (1 - p) / n);
    CHECK(std::abs(eq_left / double(n) - p) < 4 * sigma);
    CHECK(std::abs(eq_right / double(n) - p) < 4 * sigma);
}

TEST_CASE("classical look-alike decorrelates under Hadamard") {
    const auto m = classical_anticorrelated_mixture();
    const auto z = qcore::MeasurementBasis::computational(2);
    const auto h = qcore::MeasurementBasis::hadamard();
    Rng rng = stream(13, 0);
    const int n = 10000;
    int eq = 0;
    for (int i = 0; i < n; ++i) {
        const auto o = joint_measure_mixture(m, h, h, rng);
        eq += o.left == o.right;
    }
    CHECK(std::abs(eq / double(n) - 0.5) < 0.02);
    // In the basis it was prepared in it still anticorrelates.
    for (int i = 0; i < 200; ++i) {
        const auto o = joint_measure_mixture(m, z, z, rng);
        CHECK(o.left != o.right);
    }
}

TEST_CASE("correlators agree with -cos 2(a - b)") {
    Rng rng = stream(14, 0);
    for (int i = 0; i < 100; ++i) {
        const double a = uniform01(rng) * std::numbers::pi, b = uniform01(rng) * std::numbers::pi;
        const double expect = oracle::singlet_e(a, b);
        CHECK(correlator(AngleBasis{a}, AngleBasis{b}).value == doctest::Approx(expect).epsilon(1e-12));
        CHECK(singlet_correlator_fast(a, b) == doctest::Approx(expect).epsilon(1e-12));
        CHECK(singlet_correlator_trig(std::cos(a), std::sin(a), std::cos(b), std::sin(b)) ==
              doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("joint probability table sums to one") {
    const auto t = joint_probabilities(singlet(), AngleBasis{0.2}.basis(), AngleBasis{0.9}.basis());
    double total = 0;
    for (auto& row : t)
        for (double p : row) total += p;
    CHECK(total == doctest::Approx(1.0));
    CHECK(t[0][0] == doctest::Approx(0.5 * std::pow(std::sin(0.7), 2)));
}

TEST_CASE("sampled correlator within four standard errors") {
    Rng rng = stream(15, 0);
    const auto e = sampled_correlator({0.0}, {std::numbers::pi / 8}, 40000, rng);
    CHECK(e.method == EstimateMethod::sampled);
    CHECK(e.n_samples == 40000);
    CHECK(std::abs(e.value - oracle::singlet_e(0, std::numbers::pi / 8)) < 4 * e.std_err);
}

TEST_CASE("the far particle is maximally mixed whatever is measured here") {
    for (double t : {0.0, 0.4, 1.3, 2.9}) {
        CHECK(qcore::density_equal(right_after_left_measurement({t}), qcore::maximally_mixed(2), 1e-12));
    }
}

TEST_CASE("coupling unitary is a permutation with the documented action") {
    const AngleBasis b{0.6};
    const auto u = coupling_unitary(b);
    CHECK(u.rows() == 6);
    CHECK((u * u.adjoint() - qcore::CMatrix::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-12);
    const std::size_t t[] = {0, 1};
    const auto in = qcore::tensor(apparatus(ApparatusFlag::unreacted), b.psi());
    const auto out = qcore::apply(in, u, t);
    CHECK(qcore::equal_up_to_phase(out, qcore::tensor(apparatus(ApparatusFlag::saw_psi), b.psi()), 1e-12));
    const auto in2 = qcore::tensor(apparatus(ApparatusFlag::unreacted), b.phi());
    CHECK(qcore::equal_up_to_phase(qcore::apply(in2, u, t), qcore::tensor(apparatus(ApparatusFlag::saw_phi), b.phi()),
                                   1e-12));
}

TEST_CASE("apparatus chain stages") {
    for (double t : {0.0, 0.5, 2.0}) {
        const auto chain = apparatus_chain({t});
        CHECK(chain.passed);
        REQUIRE(chain.stages.size() == 3);
        CHECK(chain.stages[0].label == "unreacted");
        CHECK(chain.stages[1].label == "left_recorded");
        CHECK(chain.stages[2].label == "both_recorded");
        for (const auto& st : chain.stages)
            for (const auto& c : st.checks) CHECK_MESSAGE(c.passed, st.label << "." << c.name);
        CHECK(chain.stages[2].state.dims() == qcore::Dims{3, 2, 2, 3});

        // Detector pair: half |Psi Phi><Psi Phi| + half |Phi Psi><Phi Psi| over 3x3,
        // written out by index (flag indices 1 and 2).
        auto expected = oracle::zeros(9);
        expected[1 * 3 + 2][1 * 3 + 2] = 0.5;
        expected[2 * 3 + 1][2 * 3 + 1] = 0.5;
        CHECK(oracle::max_dev(oracle::from(chain.detector_pair), expected) < 1e-10);
    }
}
