#pragma once

namespace spinchain {

/// Global spin parity P_z = prod_i(-sigma_iz): +1 on states with an even
/// number of up spins.
enum class Parity { positive, negative };

inline int sign(Parity p) {
    return p == Parity::positive ? 1 : -1;
}

inline Parity parity_from_sign(int s) {
    return s >= 0 ? Parity::positive : Parity::negative;
}

inline Parity opposite(Parity p) {
    return p == Parity::positive ? Parity::negative : Parity::positive;
}

}  // namespace spinchain
