#pragma once

#include <cmath>
#include <initializer_list>
#include <span>

#include "spinchain/errors.hpp"

namespace spinchain {

inline constexpr double kEigenvalueClampTol = 1e-12;

/// h(x) = -x log2(x), with h(0) = 0. All entropies in this library are in bits.
inline double hbit(double x) {
    return x > 0.0 ? -x * std::log2(x) : 0.0;
}

/// Shannon/von Neumann entropy of a probability list, in bits.
/// Entries in [-1e-12, 0) are treated as 0; anything more negative is rejected.
inline double entropy(std::span<const double> probs) {
    double s = 0.0;
    for (double p : probs) {
        if (p < -kEigenvalueClampTol)
            throw NegativeEigenvalue("entropy: probability " + std::to_string(p) +
                                     " below -1e-12");
        s += hbit(p);
    }
    return s;
}

inline double entropy(std::initializer_list<double> probs) {
    return entropy(std::span<const double>(probs.begin(), probs.size()));
}

/// Entropy of a two-outcome distribution {p, 1-p}.
inline double binary_entropy(double p) {
    return hbit(p) + hbit(1.0 - p);
}

}  // namespace spinchain
