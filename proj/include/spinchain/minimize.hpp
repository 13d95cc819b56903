#pragma once

#include <cmath>
#include <utility>

namespace spinchain {

/// Golden-section search for the minimum of a unimodal f on [lo, hi].
/// Shrinks the bracket until hi - lo < xtol; returns (x*, f(x*)).
template <typename Fn>
std::pair<double, double> golden_section_minimize(Fn&& f, double lo, double hi, double xtol) {
    static const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    while (hi - lo > xtol) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = f(x2);
        }
    }
    return f1 < f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

}  // namespace spinchain
