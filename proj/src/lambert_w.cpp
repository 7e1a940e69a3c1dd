// lambert_w.cpp - principal branch of the Lambert W function

#include <algorithm>
#include <cmath>
#include <string>

#include "entsurv/errors.hpp"
#include "entsurv/models.hpp"
#include "entsurv/tolerances.hpp"

namespace entsurv::models {

double lambert_w(double x) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
        throw RangeError("lambert_w: argument must be finite and non-negative, got " + std::to_string(x));
    }
    if (x == 0.0) {
        return 0.0;
    }
    double w;
    if (x < 1.0) {
        w = x * (1.0 - x + 1.5 * x * x);
        w = std::min(w, std::log1p(x));
    } else {
        const double l = std::log(x);
        w = l > 1.0 ? l - std::log(l) : std::log1p(x);
    }
    // Halley iteration on w e^w - x.
    for (int iter = 0; iter < 64; ++iter) {
        const double ew = std::exp(w);
        const double f = w * ew - x;
        const double wp1 = w + 1.0;
        const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        w -= step;
        if (std::abs(step) <= 1e-15 * (1.0 + std::abs(w))) {
            break;
        }
    }
    return w;
}

} // namespace entsurv::models
