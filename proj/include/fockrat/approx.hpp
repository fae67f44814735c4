#pragma once

// Standard states approximating an arbitrary rational p/q.

#include "fockrat/dyadic.hpp"

#include <stdexcept>

namespace fockrat {

/**
 * Truncate the binary expansion of p/q after site -k. The result v satisfies
 * |v - p/q| < 2^-k and |v| <= |p/q|.
 */
inline StandardForm approximate(const BigInt& p, const BigInt& q, Site k) {
    if (q == 0)
        throw std::domain_error("approximate: denominator is zero");
    if (k < 0)
        throw std::domain_error("approximate: accuracy exponent must be nonnegative");
    const bool negative = (p < 0) != (q < 0) && p != 0;
    const BigInt scaled = (detail::abs(p) << static_cast<std::uint64_t>(k)) / detail::abs(q);
    const Dyadic magnitude(scaled, -k);
    return dy_to_standard_sites({negative ? -magnitude : magnitude, Dyadic{}});
}

} // namespace fockrat
