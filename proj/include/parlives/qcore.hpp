#pragma once

// Dense complex-vector quantum core: pure states, mixtures, density matrices,
// projective measurement, tensor products, partial trace and purification.
//
// Everything here is a value type. All operations are pure functions except
// measure(), which advances the random engine it is given.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "parlives/rng.hpp"

namespace parlives::qcore {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using Dims = std::vector<std::size_t>;

/// Tolerance for algebraic identities (normalization, hermiticity, trace).
inline constexpr double kAlgebraTol = 1e-10;
/// Tolerance for eigenvalue tests (purity, rank).
inline constexpr double kEigenTol = 1e-8;

std::size_t total_dimension(const Dims& dims);

/// Normalized amplitude vector over the computational basis of a composite
/// system whose subsystem dimensions are `dims` (first subsystem is the most
/// significant digit of the basis index).
class PureState {
public:
    /// Throws std::invalid_argument unless the vector is finite, has length
    /// prod(dims) and unit norm within kAlgebraTol.
    PureState(Dims dims, CVector amplitudes);

    /// Rescales `amplitudes` to unit norm first; rejects the zero vector.
    static PureState normalized(Dims dims, CVector amplitudes);
    /// Computational basis state |index> of a single d-level system.
    static PureState basis(std::size_t dim, std::size_t index);
    /// Computational basis state of a composite system, one digit per subsystem.
    static PureState basis(Dims dims, std::span<const std::size_t> digits);

    const Dims& dims() const noexcept { return dims_; }
    const CVector& amplitudes() const noexcept { return amplitudes_; }
    std::size_t dimension() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }
    std::size_t subsystems() const noexcept { return dims_.size(); }
    Complex operator[](std::size_t i) const { return amplitudes_(static_cast<Eigen::Index>(i)); }

private:
    Dims dims_;
    CVector amplitudes_;
};

struct MixtureEntry {
    PureState state;
    double prob;
};

/// Ensemble {(|psi_i>, p_i)}. Members may repeat or be non-orthogonal.
class Mixture {
public:
    /// Throws std::invalid_argument on an empty list, probabilities outside
    /// [0,1] or not summing to 1, or members with differing dims.
    explicit Mixture(std::vector<MixtureEntry> entries);

    const std::vector<MixtureEntry>& entries() const noexcept { return entries_; }
    const Dims& dims() const noexcept { return entries_.front().state.dims(); }
    std::size_t size() const noexcept { return entries_.size(); }

private:
    std::vector<MixtureEntry> entries_;
};

/// Hermitian, positive semidefinite, unit-trace operator.
class DensityMatrix {
public:
    /// Validates hermiticity and unit trace within kAlgebraTol and
    /// eigenvalues >= -kAlgebraTol.
    DensityMatrix(Dims dims, CMatrix entries);

    static DensityMatrix of_pure(const PureState& s);

    const Dims& dims() const noexcept { return dims_; }
    const CMatrix& matrix() const noexcept { return entries_; }
    std::size_t dimension() const noexcept { return static_cast<std::size_t>(entries_.rows()); }

    /// Eigenvalues in ascending order.
    Eigen::VectorXd eigenvalues() const;
    Complex trace() const { return entries_.trace(); }

private:
    Dims dims_;
    CMatrix entries_;
};

/// Orthonormal basis of one subsystem.
class MeasurementBasis {
public:
    /// Every vector must be a single-subsystem state of dimension `dim`;
    /// pairwise inner products must equal delta_ij within kAlgebraTol.
    MeasurementBasis(std::size_t dim, std::vector<PureState> vectors);

    static MeasurementBasis computational(std::size_t dim);
    /// {H|0>, H|1>}.
    static MeasurementBasis hadamard();

    std::size_t dim() const noexcept { return dim_; }
    const std::vector<PureState>& vectors() const noexcept { return vectors_; }
    const PureState& operator[](std::size_t k) const { return vectors_.at(k); }

private:
    std::size_t dim_;
    std::vector<PureState> vectors_;
};

struct MeasurementRecord {
    std::size_t outcome_index;
    double probability;
    PureState post_state;
};

/// H|0> = (|0> + |1>)/sqrt2.
PureState plus_state();
/// H|1> = (|0> - |1>)/sqrt2.
PureState minus_state();

/// Kronecker product; dims are concatenated.
PureState tensor(const PureState& a, const PureState& b);
PureState tensor(std::span<const PureState> factors);

/// <a|b>; dims must agree.
Complex inner(const PureState& a, const PureState& b);

/// Sum_i p_i |psi_i><psi_i|.
DensityMatrix density_of(const Mixture& m);

/// Largest entrywise modulus of a - b. Throws on a dims mismatch.
double max_entry_deviation(const DensityMatrix& a, const DensityMatrix& b);
/// True iff max entrywise |a_ij - b_ij| <= tol.
bool density_equal(const DensityMatrix& a, const DensityMatrix& b, double tol);

/// Born probabilities of each basis outcome when `subsystem` of `s` is measured.
std::vector<double> outcome_probabilities(const PureState& s, std::size_t subsystem,
                                          const MeasurementBasis& basis);

/// <b|rho|b> for a single-subsystem density matrix.
double born_probability(const DensityMatrix& rho, const PureState& b);

/// Projective measurement of one subsystem, collapse postulate included.
/// The outcome is drawn from `rng`; identical engine state gives identical
/// results.
MeasurementRecord measure(const PureState& s, std::size_t subsystem,
                          const MeasurementBasis& basis, Rng& rng);

/// Peres purity: a complete measurement with a deterministic outcome exists,
/// i.e. the density matrix has an eigenvalue 1 within kEigenTol.
bool is_pure_by_peres(const Mixture& m);

/// Sum_i sqrt(p_i) |psi_i>|i> with flag states taken from the computational
/// basis of an extra register appended as the last subsystem. Zero-weight
/// entries are dropped before the register is sized.
PureState purify(const Mixture& m);

/// Trace out every subsystem not in `keep`. The kept subsystems appear in
/// ascending index order in the result.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<std::size_t> keep);

/// Apply a linear operator acting on the ordered `targets` subsystems.
/// `op` must be square with side prod(dims[t] for t in targets). The result
/// must be unitary (std::invalid_argument otherwise).
PureState apply(const PureState& s, const CMatrix& op, std::span<const std::size_t> targets);

/// Sum_k P_k rho P_k with P_k the basis projectors on `subsystem`
/// (an unrecorded measurement).
DensityMatrix dephase(const DensityMatrix& rho, std::size_t subsystem,
                      const MeasurementBasis& basis);

/// Entrywise equality allowing an arbitrary global phase on `b`.
bool equal_up_to_phase(const PureState& a, const PureState& b, double tol);

/// Identity / dim.
DensityMatrix maximally_mixed(std::size_t dim);

/// Gaussian amplitudes (Box-Muller over uniform01), normalized: a
/// unitarily invariant random state, reproducible for a given engine state.
PureState random_state(const Dims& dims, Rng& rng);

/// Single-subsystem mixture with dimension in [1, max_dim] (at least 2 when
/// max_dim allows), 1..max_entries random members and random probabilities.
Mixture random_mixture(Rng& rng, std::size_t max_entries, std::size_t max_dim);

}  // namespace parlives::qcore
