#include "parlives/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace parlives::qcore {

namespace {

using Eigen::Index;

Index idx(std::size_t i) { return static_cast<Index>(i); }

std::vector<std::size_t> strides_of(const Dims& dims) {
    std::vector<std::size_t> strides(dims.size(), 1);
    for (std::size_t i = dims.size(); i-- > 1;) strides[i - 1] = strides[i] * dims[i];
    return strides;
}

std::size_t digit(std::size_t index, std::size_t subsystem, const Dims& dims,
                  const std::vector<std::size_t>& strides) {
    return (index / strides[subsystem]) % dims[subsystem];
}

void check_dims(const Dims& dims) {
    if (dims.empty()) throw std::invalid_argument("state needs at least one subsystem");
    for (auto d : dims)
        if (d == 0) throw std::invalid_argument("subsystem dimension must be positive");
}

bool all_finite(const CVector& v) {
    return std::all_of(v.data(), v.data() + v.size(),
                       [](Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

// Lift an operator on one subsystem to the full space (identity elsewhere).
CMatrix lift(const CMatrix& op, std::size_t subsystem, const Dims& dims) {
    const auto n = total_dimension(dims);
    const auto strides = strides_of(dims);
    CMatrix full = CMatrix::Zero(idx(n), idx(n));
    for (std::size_t i = 0; i < n; ++i) {
        const auto di = digit(i, subsystem, dims, strides);
        const auto base = i - di * strides[subsystem];
        for (std::size_t dj = 0; dj < dims[subsystem]; ++dj)
            full(idx(i), idx(base + dj * strides[subsystem])) = op(idx(di), idx(dj));
    }
    return full;
}

}  // namespace

std::size_t total_dimension(const Dims& dims) {
    return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

// ---------------------------------------------------------------- PureState

PureState::PureState(Dims dims, CVector amplitudes)
    : dims_(std::move(dims)), amplitudes_(std::move(amplitudes)) {
    check_dims(dims_);
    if (static_cast<std::size_t>(amplitudes_.size()) != total_dimension(dims_))
        throw std::invalid_argument("amplitude count does not match product of dims");
    if (!all_finite(amplitudes_)) throw std::invalid_argument("amplitudes must be finite");
    if (std::abs(amplitudes_.squaredNorm() - 1.0) > kAlgebraTol)
        throw std::invalid_argument("pure state is not normalized");
}

PureState PureState::normalized(Dims dims, CVector amplitudes) {
    const double n = amplitudes.norm();
    if (!(n > 0.0) || !std::isfinite(n)) throw std::invalid_argument("cannot normalize a zero or non-finite vector");
    amplitudes /= n;
    return PureState(std::move(dims), std::move(amplitudes));
}

PureState PureState::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) throw std::invalid_argument("basis index out of range");
    CVector v = CVector::Zero(idx(dim));
    v(idx(index)) = 1.0;
    return PureState({dim}, std::move(v));
}

PureState PureState::basis(Dims dims, std::span<const std::size_t> digits) {
    check_dims(dims);
    if (digits.size() != dims.size()) throw std::invalid_argument("one digit per subsystem required");
    std::size_t index = 0;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (digits[i] >= dims[i]) throw std::invalid_argument("basis digit out of range");
        index = index * dims[i] + digits[i];
    }
    CVector v = CVector::Zero(idx(total_dimension(dims)));
    v(idx(index)) = 1.0;
    return PureState(std::move(dims), std::move(v));
}

// ------------------------------------------------------------------ Mixture

Mixture::Mixture(std::vector<MixtureEntry> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw std::invalid_argument("mixture must have at least one entry");
    double total = 0.0;
    for (const auto& e : entries_) {
        if (!(e.prob >= 0.0 && e.prob <= 1.0)) throw std::invalid_argument("mixture probability outside [0,1]");
        if (e.state.dims() != entries_.front().state.dims())
            throw std::invalid_argument("mixture members have different dims");
        total += e.prob;
    }
    if (std::abs(total - 1.0) > kAlgebraTol) throw std::invalid_argument("mixture probabilities do not sum to 1");
}

// ------------------------------------------------------------ DensityMatrix

DensityMatrix::DensityMatrix(Dims dims, CMatrix entries) : dims_(std::move(dims)), entries_(std::move(entries)) {
    check_dims(dims_);
    const auto n = total_dimension(dims_);
    if (static_cast<std::size_t>(entries_.rows()) != n || static_cast<std::size_t>(entries_.cols()) != n)
        throw std::invalid_argument("density matrix shape does not match dims");
    if (!all_finite(entries_.reshaped())) throw std::invalid_argument("density matrix entries must be finite");
    if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > kAlgebraTol)
        throw std::invalid_argument("density matrix is not Hermitian");
    if (std::abs(entries_.trace() - Complex(1.0)) > kAlgebraTol)
        throw std::invalid_argument("density matrix trace is not 1");
    if (eigenvalues().minCoeff() < -kAlgebraTol)
        throw std::invalid_argument("density matrix is not positive semidefinite");
}

DensityMatrix DensityMatrix::of_pure(const PureState& s) {
    return DensityMatrix(s.dims(), s.amplitudes() * s.amplitudes().adjoint());
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
    const CMatrix herm = 0.5 * (entries_ + entries_.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

// --------------------------------------------------------- MeasurementBasis

MeasurementBasis::MeasurementBasis(std::size_t dim, std::vector<PureState> vectors)
    : dim_(dim), vectors_(std::move(vectors)) {
    if (vectors_.size() != dim_) throw std::invalid_argument("basis needs exactly dim vectors");
    for (const auto& v : vectors_)
        if (v.subsystems() != 1 || v.dimension() != dim_)
            throw std::invalid_argument("basis vector must be a single subsystem of dimension dim");
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) {
            const Complex expected = i == j ? 1.0 : 0.0;
            if (std::abs(inner(vectors_[i], vectors_[j]) - expected) > kAlgebraTol)
                throw std::invalid_argument("basis vectors are not orthonormal");
        }
}

MeasurementBasis MeasurementBasis::computational(std::size_t dim) {
    std::vector<PureState> v;
    v.reserve(dim);
    for (std::size_t k = 0; k < dim; ++k) v.push_back(PureState::basis(dim, k));
    return MeasurementBasis(dim, std::move(v));
}

MeasurementBasis MeasurementBasis::hadamard() { return MeasurementBasis(2, {plus_state(), minus_state()}); }

// ---------------------------------------------------------------- functions

PureState plus_state() {
    const double r = 1.0 / std::sqrt(2.0);
    CVector v(2);
    v << r, r;
    return PureState({2}, std::move(v));
}

PureState minus_state() {
    const double r = 1.0 / std::sqrt(2.0);
    CVector v(2);
    v << r, -r;
    return PureState({2}, std::move(v));
}

PureState tensor(const PureState& a, const PureState& b) {
    const auto na = a.amplitudes().size();
    const auto nb = b.amplitudes().size();
    CVector out(na * nb);
    for (Index i = 0; i < na; ++i) out.segment(i * nb, nb) = a.amplitudes()(i) * b.amplitudes();
    Dims dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    return PureState::normalized(std::move(dims), std::move(out));
}

PureState tensor(std::span<const PureState> factors) {
    if (factors.empty()) throw std::invalid_argument("tensor of no factors");
    PureState acc = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) acc = tensor(acc, factors[i]);
    return acc;
}

Complex inner(const PureState& a, const PureState& b) {
    if (a.dims() != b.dims()) throw std::invalid_argument("inner product of states with different dims");
    return a.amplitudes().dot(b.amplitudes());  // conjugates the first argument
}

DensityMatrix density_of(const Mixture& m) {
    const auto n = idx(total_dimension(m.dims()));
    CMatrix rho = CMatrix::Zero(n, n);
    for (const auto& e : m.entries()) rho += e.prob * (e.state.amplitudes() * e.state.amplitudes().adjoint());
    return DensityMatrix(m.dims(), std::move(rho));
}

double max_entry_deviation(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.dims() != b.dims()) throw std::invalid_argument("density matrices have different dims");
    return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

bool density_equal(const DensityMatrix& a, const DensityMatrix& b, double tol) {
    return max_entry_deviation(a, b) <= tol;
}

namespace {

void check_measurement(const PureState& s, std::size_t subsystem, const MeasurementBasis& basis) {
    if (subsystem >= s.subsystems()) throw std::invalid_argument("subsystem index out of range");
    if (basis.dim() != s.dims()[subsystem]) throw std::invalid_argument("basis dimension does not match subsystem");
}

// Coefficients c(l, r) = sum_j conj(b[j]) psi(l, j, r), indexed by the full
// index with the measured digit set to zero.
CVector project_onto(const PureState& s, std::size_t subsystem, const PureState& b) {
    const auto& dims = s.dims();
    const auto strides = strides_of(dims);
    const auto n = s.dimension();
    CVector c = CVector::Zero(idx(n));
    for (std::size_t i = 0; i < n; ++i) {
        const auto j = digit(i, subsystem, dims, strides);
        c(idx(i - j * strides[subsystem])) += std::conj(b[j]) * s[i];
    }
    return c;
}

}  // namespace

std::vector<double> outcome_probabilities(const PureState& s, std::size_t subsystem,
                                          const MeasurementBasis& basis) {
    check_measurement(s, subsystem, basis);
    std::vector<double> probs;
    probs.reserve(basis.dim());
    for (const auto& b : basis.vectors()) probs.push_back(project_onto(s, subsystem, b).squaredNorm());
    return probs;
}

double born_probability(const DensityMatrix& rho, const PureState& b) {
    if (rho.dims() != b.dims()) throw std::invalid_argument("basis vector dims do not match density matrix");
    return (b.amplitudes().adjoint() * rho.matrix() * b.amplitudes())(0, 0).real();
}

MeasurementRecord measure(const PureState& s, std::size_t subsystem, const MeasurementBasis& basis, Rng& rng) {
    const auto probs = outcome_probabilities(s, subsystem, basis);
    const double u = uniform01(rng);
    std::size_t k = 0;
    double cumulative = 0.0;
    std::size_t last_nonzero = 0;
    for (; k < probs.size(); ++k) {
        if (probs[k] > 0.0) last_nonzero = k;
        cumulative += probs[k];
        if (u < cumulative && probs[k] > 0.0) break;
    }
    if (k == probs.size()) k = last_nonzero;  // rounding left u above the final cumulative sum

    const auto& dims = s.dims();
    const auto strides = strides_of(dims);
    const CVector c = project_onto(s, subsystem, basis[k]);
    CVector post = CVector::Zero(idx(s.dimension()));
    for (std::size_t i = 0; i < s.dimension(); ++i) {
        const auto j = digit(i, subsystem, dims, strides);
        post(idx(i)) = basis[k][j] * c(idx(i - j * strides[subsystem]));
    }
    return MeasurementRecord{k, probs[k], PureState::normalized(dims, std::move(post))};
}

bool is_pure_by_peres(const Mixture& m) {
    return std::abs(density_of(m).eigenvalues().maxCoeff() - 1.0) <= kEigenTol;
}

PureState purify(const Mixture& m) {
    std::vector<const MixtureEntry*> kept;
    for (const auto& e : m.entries())
        if (e.prob > 0.0) kept.push_back(&e);
    if (kept.empty()) throw std::invalid_argument("cannot purify a mixture with no weight");

    const auto k = kept.size();
    const auto d = total_dimension(m.dims());
    CVector out = CVector::Zero(idx(d * k));
    for (std::size_t i = 0; i < k; ++i) {
        const double w = std::sqrt(kept[i]->prob);
        const auto& amps = kept[i]->state.amplitudes();
        for (std::size_t a = 0; a < d; ++a) out(idx(a * k + i)) += w * amps(idx(a));
    }
    Dims dims = m.dims();
    dims.push_back(k);
    return PureState::normalized(std::move(dims), std::move(out));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep) {
    const auto& dims = rho.dims();
    std::vector<std::size_t> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    if (kept.empty()) throw std::invalid_argument("partial trace must keep at least one subsystem");
    if (std::adjacent_find(kept.begin(), kept.end()) != kept.end())
        throw std::invalid_argument("duplicate subsystem in keep set");
    if (kept.back() >= dims.size()) throw std::invalid_argument("keep index out of range");

    std::vector<bool> is_kept(dims.size(), false);
    for (auto k : kept) is_kept[k] = true;

    Dims kept_dims;
    for (auto k : kept) kept_dims.push_back(dims[k]);

    const auto n = total_dimension(dims);
    const auto strides = strides_of(dims);
    std::vector<std::size_t> kept_index(n), traced_index(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t ki = 0, ti = 0;
        for (std::size_t s = 0; s < dims.size(); ++s) {
            const auto dgt = digit(i, s, dims, strides);
            if (is_kept[s])
                ki = ki * dims[s] + dgt;
            else
                ti = ti * dims[s] + dgt;
        }
        kept_index[i] = ki;
        traced_index[i] = ti;
    }

    const auto m = total_dimension(kept_dims);
    CMatrix out = CMatrix::Zero(idx(m), idx(m));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (traced_index[a] == traced_index[b]) out(idx(kept_index[a]), idx(kept_index[b])) += rho.matrix()(idx(a), idx(b));
    return DensityMatrix(std::move(kept_dims), std::move(out));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<std::size_t> keep) {
    return partial_trace(rho, std::span<const std::size_t>(keep.begin(), keep.size()));
}

PureState apply(const PureState& s, const CMatrix& op, std::span<const std::size_t> targets) {
    const auto& dims = s.dims();
    if (targets.empty()) throw std::invalid_argument("operator needs at least one target");
    std::vector<bool> seen(dims.size(), false);
    std::size_t side = 1;
    for (auto t : targets) {
        if (t >= dims.size() || seen[t]) throw std::invalid_argument("invalid operator target");
        seen[t] = true;
        side *= dims[t];
    }
    if (static_cast<std::size_t>(op.rows()) != side || static_cast<std::size_t>(op.cols()) != side)
        throw std::invalid_argument("operator size does not match targets");
    if ((op.adjoint() * op - CMatrix::Identity(idx(side), idx(side))).cwiseAbs().maxCoeff() > kAlgebraTol)
        throw std::invalid_argument("operator is not unitary");

    const auto strides = strides_of(dims);
    // offset[t] = displacement of the full index for target-local index t
    std::vector<std::size_t> offset(side, 0);
    for (std::size_t t = 0; t < side; ++t) {
        std::size_t rem = t, off = 0;
        for (std::size_t k = targets.size(); k-- > 0;) {
            off += (rem % dims[targets[k]]) * strides[targets[k]];
            rem /= dims[targets[k]];
        }
        offset[t] = off;
    }

    const auto n = s.dimension();
    CVector out = CVector::Zero(idx(n));
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t local = 0, base = i;
        for (auto t : targets) {
            const auto dgt = digit(i, t, dims, strides);
            local = local * dims[t] + dgt;
            base -= dgt * strides[t];
        }
        Complex acc = 0.0;
        for (std::size_t t = 0; t < side; ++t) acc += op(idx(local), idx(t)) * s[base + offset[t]];
        out(idx(i)) = acc;
    }
    return PureState::normalized(dims, std::move(out));
}

DensityMatrix dephase(const DensityMatrix& rho, std::size_t subsystem, const MeasurementBasis& basis) {
    const auto& dims = rho.dims();
    if (subsystem >= dims.size()) throw std::invalid_argument("subsystem index out of range");
    if (basis.dim() != dims[subsystem]) throw std::invalid_argument("basis dimension does not match subsystem");
    const auto n = idx(total_dimension(dims));
    CMatrix out = CMatrix::Zero(n, n);
    for (const auto& b : basis.vectors()) {
        const CMatrix proj = lift(b.amplitudes() * b.amplitudes().adjoint(), subsystem, dims);
        out += proj * rho.matrix() * proj;
    }
    return DensityMatrix(dims, std::move(out));
}

bool equal_up_to_phase(const PureState& a, const PureState& b, double tol) {
    if (a.dims() != b.dims()) return false;
    const Complex overlap = inner(b, a);
    if (std::abs(overlap) < 0.5) return false;  // unit vectors this far apart differ under any phase
    const Complex phase = overlap / std::abs(overlap);
    return (a.amplitudes() - phase * b.amplitudes()).cwiseAbs().maxCoeff() <= tol;
}

DensityMatrix maximally_mixed(std::size_t dim) {
    return DensityMatrix({dim}, CMatrix::Identity(idx(dim), idx(dim)) / static_cast<double>(dim));
}

PureState random_state(const Dims& dims, Rng& rng) {
    const auto n = total_dimension(dims);
    CVector v(idx(n));
    for (std::size_t i = 0; i < n; ++i) {
        const double u1 = 1.0 - uniform01(rng);  // (0, 1]
        const double u2 = uniform01(rng);
        const double r = std::sqrt(-2.0 * std::log(u1));
        v(idx(i)) = Complex(r * std::cos(2.0 * std::numbers::pi * u2), r * std::sin(2.0 * std::numbers::pi * u2));
    }
    return PureState::normalized(dims, std::move(v));
}

Mixture random_mixture(Rng& rng, std::size_t max_entries, std::size_t max_dim) {
    if (max_entries == 0 || max_dim == 0) throw std::invalid_argument("random mixture needs positive bounds");
    const auto lo = std::min<std::size_t>(2, max_dim);
    const auto d = lo + static_cast<std::size_t>(rng() % (max_dim - lo + 1));
    const auto k = 1 + static_cast<std::size_t>(rng() % max_entries);
    std::vector<double> w(k);
    double total = 0.0;
    for (auto& x : w) total += (x = uniform01(rng) + 1e-3);
    std::vector<MixtureEntry> entries;
    for (std::size_t i = 0; i < k; ++i) entries.push_back({random_state({d}, rng), w[i] / total});
    return Mixture(std::move(entries));
}

}  // namespace parlives::qcore
