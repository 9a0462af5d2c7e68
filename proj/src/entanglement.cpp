#include "parlives/entanglement.hpp"

#include <cmath>
#include <stdexcept>

#include "parlives/ensembles.hpp"

namespace parlives::entanglement {

using qcore::CMatrix;
using qcore::CVector;

namespace {

PureState real_qubit(double c0, double c1) {
    CVector v(2);
    v << c0, c1;
    return PureState::normalized({2}, std::move(v));
}

double max_dev(const PureState& a, const PureState& b) {
    return (a.amplitudes() - b.amplitudes()).cwiseAbs().maxCoeff();
}

PureState superpose_minus(const PureState& a, const PureState& b) {
    return PureState::normalized(a.dims(), (a.amplitudes() - b.amplitudes()) / std::sqrt(2.0));
}

ChainCheck check(std::string name, double deviation, double tol = qcore::kAlgebraTol) {
    return ChainCheck{std::move(name), deviation, tol, deviation <= tol};
}

}  // namespace

PureState AngleBasis::psi() const { return real_qubit(std::cos(theta), std::sin(theta)); }
PureState AngleBasis::phi() const { return real_qubit(-std::sin(theta), std::cos(theta)); }
MeasurementBasis AngleBasis::basis() const { return MeasurementBasis(2, {psi(), phi()}); }

PureState singlet() {
    const double r = 1.0 / std::sqrt(2.0);
    CVector v(4);
    v << 0.0, r, -r, 0.0;
    return PureState({2, 2}, std::move(v));
}

PureState rewrite_in_basis(AngleBasis b) {
    const auto psi = b.psi();
    const auto phi = b.phi();
    return superpose_minus(qcore::tensor(psi, phi), qcore::tensor(phi, psi));
}

JointOutcome joint_measure(const PureState& s, const MeasurementBasis& left, const MeasurementBasis& right, Rng& rng,
                           MeasureOrder order) {
    if (s.subsystems() != 2) throw std::invalid_argument("joint measurement needs a two-party state");
    if (order == MeasureOrder::left_first) {
        const auto first = qcore::measure(s, 0, left, rng);
        const auto second = qcore::measure(first.post_state, 1, right, rng);
        return {static_cast<std::uint8_t>(first.outcome_index), static_cast<std::uint8_t>(second.outcome_index)};
    }
    const auto first = qcore::measure(s, 1, right, rng);
    const auto second = qcore::measure(first.post_state, 0, left, rng);
    return {static_cast<std::uint8_t>(second.outcome_index), static_cast<std::uint8_t>(first.outcome_index)};
}

JointOutcome joint_measure_same_basis(AngleBasis b, Rng& rng) {
    const auto basis = b.basis();
    return joint_measure(singlet(), basis, basis, rng);
}

JointOutcome joint_measure_mixture(const Mixture& m, const MeasurementBasis& left, const MeasurementBasis& right,
                                   Rng& rng) {
    const double u = uniform01(rng);
    double cumulative = 0.0;
    const qcore::MixtureEntry* chosen = &m.entries().back();
    for (const auto& e : m.entries()) {
        cumulative += e.prob;
        if (u < cumulative && e.prob > 0.0) {
            chosen = &e;
            break;
        }
    }
    return joint_measure(chosen->state, left, right, rng);
}

Mixture classical_anticorrelated_mixture() { return ensembles::half_pennies(); }

std::array<std::array<double, 2>, 2> joint_probabilities(const PureState& s, const MeasurementBasis& left,
                                                         const MeasurementBasis& right) {
    if (s.dims() != qcore::Dims{2, 2}) throw std::invalid_argument("joint probabilities need a two-qubit state");
    if (left.dim() != 2 || right.dim() != 2) throw std::invalid_argument("joint probabilities need qubit bases");
    std::array<std::array<double, 2>, 2> p{};
    for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t k = 0; k < 2; ++k) p[j][k] = std::norm(qcore::inner(qcore::tensor(left[j], right[k]), s));
    return p;
}

CorrelatorEstimate correlator(const PureState& s, const MeasurementBasis& left, const MeasurementBasis& right) {
    const auto p = joint_probabilities(s, left, right);
    double e = 0.0;
    for (std::uint8_t j = 0; j < 2; ++j)
        for (std::uint8_t k = 0; k < 2; ++k) e += outcome_sign(j) * outcome_sign(k) * p[j][k];
    return CorrelatorEstimate{e, EstimateMethod::analytic, 0, 0.0};
}

CorrelatorEstimate correlator(AngleBasis a, AngleBasis b) { return correlator(singlet(), a.basis(), b.basis()); }

double singlet_correlator_fast(double theta_a, double theta_b) noexcept {
    return singlet_correlator_trig(std::cos(theta_a), std::sin(theta_a), std::cos(theta_b), std::sin(theta_b));
}

double singlet_correlator_trig(double ca, double sa, double cb, double sb) noexcept {
    const double a[2][2] = {{ca, sa}, {-sa, ca}};
    const double b[2][2] = {{cb, sb}, {-sb, cb}};
    // <a_j b_k | singlet> = (a_j[0] b_k[1] - a_j[1] b_k[0]) / sqrt2
    double e = 0.0;
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) {
            const double amp = a[j][0] * b[k][1] - a[j][1] * b[k][0];
            const double p = 0.5 * amp * amp;
            e += ((j == k) ? 1.0 : -1.0) * p;
        }
    return e;
}

CorrelatorEstimate sampled_correlator(AngleBasis a, AngleBasis b, std::uint64_t n, Rng& rng) {
    if (n == 0) throw std::invalid_argument("sampled correlator needs at least one sample");
    const auto s = singlet();
    const auto ba = a.basis();
    const auto bb = b.basis();
    double sum = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) {
        const auto o = joint_measure(s, ba, bb, rng);
        sum += outcome_sign(o.left) * outcome_sign(o.right);
    }
    const double mean = sum / static_cast<double>(n);
    const double err = std::sqrt(std::max(0.0, 1.0 - mean * mean) / static_cast<double>(n));
    return CorrelatorEstimate{mean, EstimateMethod::sampled, n, err};
}

DensityMatrix right_after_left_measurement(AngleBasis b) {
    const auto rho = qcore::dephase(DensityMatrix::of_pure(singlet()), 0, b.basis());
    return qcore::partial_trace(rho, {1});
}

// ------------------------------------------------------------ apparatus chain

PureState apparatus(ApparatusFlag f) { return PureState::basis(kApparatusDim, static_cast<std::size_t>(f)); }

CMatrix coupling_unitary(AngleBasis b) {
    using enum ApparatusFlag;
    const auto psi = b.psi();
    const auto phi = b.phi();
    const auto ket = [](ApparatusFlag f, const PureState& p) { return qcore::tensor(apparatus(f), p).amplitudes(); };
    struct Map {
        ApparatusFlag from_flag;
        const PureState* from_particle;
        ApparatusFlag to_flag;
    };
    // The first two rows are the physical coupling; the rest complete it.
    const Map maps[] = {
        {unreacted, &psi, saw_psi}, {unreacted, &phi, saw_phi}, {saw_psi, &psi, unreacted},
        {saw_phi, &phi, unreacted}, {saw_psi, &phi, saw_psi},   {saw_phi, &psi, saw_phi},
    };
    CMatrix u = CMatrix::Zero(6, 6);
    for (const auto& m : maps) u += ket(m.to_flag, *m.from_particle) * ket(m.from_flag, *m.from_particle).adjoint();
    return u;
}

ChainReport apparatus_chain(AngleBasis b) {
    using enum ApparatusFlag;
    const auto psi = b.psi();
    const auto phi = b.phi();
    const auto ket4 = [&](ApparatusFlag l, const PureState& p1, const PureState& p2, ApparatusFlag r) {
        const PureState parts[] = {apparatus(l), p1, p2, apparatus(r)};
        return qcore::tensor(parts);
    };
    const auto reduced = [](const PureState& s, std::size_t keep) {
        const std::size_t k[] = {keep};
        return qcore::partial_trace(DensityMatrix::of_pure(s), k);
    };
    const auto unreacted_density = DensityMatrix::of_pure(apparatus(unreacted));

    std::vector<ChainStage> stages;

    // Unreacted apparatuses around the singlet written in the measured basis.
    {
        const PureState parts[] = {apparatus(unreacted), rewrite_in_basis(b), apparatus(unreacted)};
        auto state = qcore::tensor(parts);
        const auto expanded = superpose_minus(ket4(unreacted, psi, phi, unreacted), ket4(unreacted, phi, psi, unreacted));
        std::vector<ChainCheck> checks;
        checks.push_back(check("matches_expanded_form", max_dev(state, expanded)));
        checks.push_back(check("left_apparatus_unreacted",
                               qcore::max_entry_deviation(reduced(state, 0), unreacted_density)));
        checks.push_back(check("right_apparatus_unreacted",
                               qcore::max_entry_deviation(reduced(state, 3), unreacted_density)));
        stages.push_back({"unreacted", std::move(state), std::move(checks)});
    }

    const auto u = coupling_unitary(b);
    const double unitarity = (u.adjoint() * u - CMatrix::Identity(6, 6)).cwiseAbs().maxCoeff();
    const double domain_error =
        std::max((u * qcore::tensor(apparatus(unreacted), psi).amplitudes() - qcore::tensor(apparatus(saw_psi), psi).amplitudes())
                     .cwiseAbs()
                     .maxCoeff(),
                 (u * qcore::tensor(apparatus(unreacted), phi).amplitudes() - qcore::tensor(apparatus(saw_phi), phi).amplitudes())
                     .cwiseAbs()
                     .maxCoeff());

    // Left particle recorded by the left apparatus.
    {
        const std::size_t targets[] = {0, 1};
        auto state = qcore::apply(stages.back().state, u, targets);
        const auto expected = superpose_minus(ket4(saw_psi, psi, phi, unreacted), ket4(saw_phi, phi, psi, unreacted));
        const auto left_mixed = qcore::density_of(
            Mixture({{apparatus(saw_psi), 0.5}, {apparatus(saw_phi), 0.5}}));
        std::vector<ChainCheck> checks;
        checks.push_back(check("coupling_unitary", unitarity));
        checks.push_back(check("coupling_action_on_domain", domain_error));
        checks.push_back(check("matches_closed_form", max_dev(state, expected)));
        checks.push_back(check("right_apparatus_unreacted",
                               qcore::max_entry_deviation(reduced(state, 3), unreacted_density)));
        checks.push_back(check("left_apparatus_mixed", qcore::max_entry_deviation(reduced(state, 0), left_mixed)));
        stages.push_back({"left_recorded", std::move(state), std::move(checks)});
    }

    // Right particle recorded by the right apparatus (operator ordered apparatus, particle).
    const std::size_t detectors[] = {0, 3};
    auto final_state = [&] {
        const std::size_t targets[] = {3, 2};
        return qcore::apply(stages.back().state, u, targets);
    }();
    auto detector_pair = qcore::partial_trace(DensityMatrix::of_pure(final_state), detectors);
    {
        const auto expected = superpose_minus(ket4(saw_psi, psi, phi, saw_phi), ket4(saw_phi, phi, psi, saw_psi));
        const auto complementary = qcore::density_of(Mixture({
            {qcore::tensor(apparatus(saw_psi), apparatus(saw_phi)), 0.5},
            {qcore::tensor(apparatus(saw_phi), apparatus(saw_psi)), 0.5},
        }));
        std::vector<ChainCheck> checks;
        checks.push_back(check("matches_closed_form", max_dev(final_state, expected)));
        checks.push_back(check("detector_pair_complementary", qcore::max_entry_deviation(detector_pair, complementary)));
        stages.push_back({"both_recorded", std::move(final_state), std::move(checks)});
    }

    bool passed = true;
    for (const auto& st : stages)
        for (const auto& c : st.checks) passed = passed && c.passed;
    return ChainReport{b.theta, std::move(stages), std::move(detector_pair), passed};
}

}  // namespace parlives::entanglement
