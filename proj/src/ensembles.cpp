#include "parlives/ensembles.hpp"

#include <cmath>

namespace parlives::ensembles {

using qcore::CVector;

namespace {

PureState qubit(double c0, double c1) {
    CVector v(2);
    v << c0, c1;
    return PureState::normalized({2}, std::move(v));
}

PureState two_qubit(double a00, double a01, double a10, double a11) {
    CVector v(4);
    v << a00, a01, a10, a11;
    return PureState::normalized({2, 2}, std::move(v));
}

}  // namespace

Mixture computational_equal() { return Mixture({{qubit(1, 0), 0.5}, {qubit(0, 1), 0.5}}); }

Mixture hadamard_equal() { return Mixture({{qcore::plus_state(), 0.5}, {qcore::minus_state(), 0.5}}); }

Mixture trine() {
    const double h = std::sqrt(3.0) / 2.0;
    const double third = 1.0 / 3.0;
    return Mixture({{qubit(1, 0), third}, {qubit(0.5, h), third}, {qubit(0.5, -h), third}});
}

Mixture half_pennies() { return Mixture({{two_qubit(0, 1, 0, 0), 0.5}, {two_qubit(0, 0, 1, 0), 0.5}}); }

std::array<PureState, 4> bell_states() {
    const double r = 1.0 / std::sqrt(2.0);
    return {two_qubit(r, 0, 0, r), two_qubit(r, 0, 0, -r), two_qubit(0, r, r, 0), two_qubit(0, r, -r, 0)};
}

Mixture bell_uniform() {
    std::vector<qcore::MixtureEntry> entries;
    for (auto& s : bell_states()) entries.push_back({std::move(s), 0.25});
    return Mixture(std::move(entries));
}

Mixture classical_bit_pairs() {
    return Mixture({{two_qubit(1, 0, 0, 0), 0.25},
                    {two_qubit(0, 1, 0, 0), 0.25},
                    {two_qubit(0, 0, 1, 0), 0.25},
                    {two_qubit(0, 0, 0, 1), 0.25}});
}

}  // namespace parlives::ensembles
