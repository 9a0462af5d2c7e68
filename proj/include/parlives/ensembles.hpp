#pragma once

// Named states and ensembles used throughout the demos and tests.

#include <array>

#include "parlives/qcore.hpp"

namespace parlives::ensembles {

using qcore::Mixture;
using qcore::PureState;

/// {(|0>, 1/2), (|1>, 1/2)}
Mixture computational_equal();
/// {(H|0>, 1/2), (H|1>, 1/2)}
Mixture hadamard_equal();
/// {(|0>, 1/3), (|0>/2 + (sqrt3/2)|1>, 1/3), (|0>/2 - (sqrt3/2)|1>, 1/3)}
Mixture trine();
/// {(|01>, 1/2), (|10>, 1/2)}
Mixture half_pennies();

/// Phi+, Phi-, Psi+, Psi-.
std::array<PureState, 4> bell_states();
/// Uniform over the four Bell states.
Mixture bell_uniform();
/// Uniform over |00>, |01>, |10>, |11>: two independent random classical bits.
Mixture classical_bit_pairs();

}  // namespace parlives::ensembles
