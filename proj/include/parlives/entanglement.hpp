#pragma once

// Singlet phenomenology: basis-invariant anticorrelation, two-party
// correlators, and the apparatus/particle/particle/apparatus measurement chain.

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "parlives/qcore.hpp"
#include "parlives/rng.hpp"

namespace parlives::entanglement {

using qcore::DensityMatrix;
using qcore::MeasurementBasis;
using qcore::Mixture;
using qcore::PureState;

/// Real single-qubit basis {cos t|0> + sin t|1>, -sin t|0> + cos t|1>}.
struct AngleBasis {
    double theta = 0.0;

    PureState psi() const;
    PureState phi() const;
    MeasurementBasis basis() const;
};

/// (|01> - |10>)/sqrt2 on dims [2, 2].
PureState singlet();

/// (|psi>|phi> - |phi>|psi>)/sqrt2 built from the basis vectors.
PureState rewrite_in_basis(AngleBasis b);

/// Outcome bits (0 = first basis vector, 1 = second).
struct JointOutcome {
    std::uint8_t left;
    std::uint8_t right;

    bool operator==(const JointOutcome&) const = default;
};

enum class MeasureOrder { left_first, right_first };

/// Sequential-collapse measurement of a two-party state: one side is
/// measured by the Born rule, the state collapses, then the other side.
JointOutcome joint_measure(const PureState& s, const MeasurementBasis& left, const MeasurementBasis& right,
                           Rng& rng, MeasureOrder order = MeasureOrder::left_first);

/// Both singlet halves measured in the same basis, left first.
JointOutcome joint_measure_same_basis(AngleBasis b, Rng& rng);

/// Draw a member of `m` with its probability, then measure it jointly.
JointOutcome joint_measure_mixture(const Mixture& m, const MeasurementBasis& left, const MeasurementBasis& right,
                                   Rng& rng);

/// {(|01>, 1/2), (|10>, 1/2)}: the classical "half-penny" look-alike.
Mixture classical_anticorrelated_mixture();

enum class EstimateMethod { analytic, sampled };

struct CorrelatorEstimate {
    double value = 0.0;
    EstimateMethod method = EstimateMethod::analytic;
    std::uint64_t n_samples = 0;
    double std_err = 0.0;
};

/// Outcome sign convention used by every correlator: 0 -> +1, 1 -> -1.
inline int outcome_sign(std::uint8_t bit) { return bit == 0 ? 1 : -1; }

/// The 2x2 table of Born probabilities P(j, k) for measuring `s` with
/// basis `left` on subsystem 0 and `right` on subsystem 1.
std::array<std::array<double, 2>, 2> joint_probabilities(const PureState& s, const MeasurementBasis& left,
                                                         const MeasurementBasis& right);

/// E = sum_jk sign(j) sign(k) P(j, k), enumerated from the Born rule.
CorrelatorEstimate correlator(const PureState& s, const MeasurementBasis& left, const MeasurementBasis& right);
/// Singlet correlator for two angle bases.
CorrelatorEstimate correlator(AngleBasis a, AngleBasis b);

/// Allocation-free Born enumeration of the singlet correlator for real
/// angle bases. Used by the optimizer's inner loops; must agree with
/// correlator(AngleBasis, AngleBasis).
double singlet_correlator_fast(double theta_a, double theta_b) noexcept;
/// Same enumeration from precomputed cos/sin of both angles.
double singlet_correlator_trig(double cos_a, double sin_a, double cos_b, double sin_b) noexcept;

/// Monte-Carlo estimate from `n` sequential-collapse singlet measurements.
CorrelatorEstimate sampled_correlator(AngleBasis a, AngleBasis b, std::uint64_t n, Rng& rng);

/// Reduced state of the right particle after an unrecorded measurement of
/// the left particle of the singlet in basis `b`.
DensityMatrix right_after_left_measurement(AngleBasis b);

// ------------------------------------------------------------ apparatus chain

/// Apparatus flags: unreacted, recorded-psi, recorded-phi.
enum class ApparatusFlag : std::size_t { unreacted = 0, saw_psi = 1, saw_phi = 2 };
inline constexpr std::size_t kApparatusDim = 3;
PureState apparatus(ApparatusFlag f);

/// Unitary on apparatus (x) particle, dims [3, 2], sending |?>|psi> to
/// |Psi>|psi> and |?>|phi> to |Phi>|phi>; completed on the rest of the space
/// by a fixed permutation.
qcore::CMatrix coupling_unitary(AngleBasis b);

struct ChainCheck {
    std::string name;
    double deviation;  // max entrywise deviation from the expected object
    double tolerance;
    bool passed;
};

struct ChainStage {
    std::string label;
    PureState state;
    std::vector<ChainCheck> checks;
};

struct ChainReport {
    double theta;
    std::vector<ChainStage> stages;
    DensityMatrix detector_pair;
    bool passed;
};

/// Registers ordered apparatus, particle, particle, apparatus (dims [3,2,2,3]).
/// Runs the unreacted stage, the left coupling and the right coupling, checks
/// each stage against its closed form and checks the reduced detector pair.
ChainReport apparatus_chain(AngleBasis b = {});

}  // namespace parlives::entanglement
