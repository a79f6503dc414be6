#pragma once

#include <cmath>
#include <limits>

namespace ottosim {

// Sign plus log-magnitude representation. Series terms assembled from
// Laguerre polynomials and factorial ratios span far more than the double
// exponent range (individual factors exceed 1e300), so products are formed
// on the log scale and only the final, physically bounded term is
// exponentiated. sign == 0 means the represented value is exactly zero and
// log_magnitude is meaningless.
struct SignedLogValue {
    double log_magnitude = -std::numeric_limits<double>::infinity();
    int sign = 0;

    static SignedLogValue zero() { return {}; }

    static SignedLogValue from_value(double v) {
        if (v == 0.0) return {};
        return {std::log(std::abs(v)), v > 0.0 ? +1 : -1};
    }

    bool is_zero() const { return sign == 0; }

    // Linear-space value; may overflow or underflow double range.
    double value() const {
        return sign == 0 ? 0.0 : sign * std::exp(log_magnitude);
    }

    friend SignedLogValue operator*(const SignedLogValue& a, const SignedLogValue& b) {
        if (a.sign == 0 || b.sign == 0) return {};
        return {a.log_magnitude + b.log_magnitude, a.sign * b.sign};
    }
};

// |v|^2, always non-negative.
inline SignedLogValue squared(const SignedLogValue& v) {
    if (v.sign == 0) return {};
    return {2.0 * v.log_magnitude, +1};
}

}  // namespace ottosim
