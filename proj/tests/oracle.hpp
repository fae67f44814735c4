#pragma once

// Test-only reference arithmetic on exact rationals. Deliberately shares no
// code with fockrat::Dyadic: values are summed as cpp_rational and expanded
// into binary digits by repeated halving and doubling.

#include "fockrat/occupation.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <utility>

namespace oracle {

using Rational = boost::multiprecision::cpp_rational;
using fockrat::BigInt;
using fockrat::Site;

inline Rational power_of_two(Site j) {
    Rational out = 1;
    for (Site i = 0; i < j; ++i)
        out *= 2;
    for (Site i = 0; i > j; --i)
        out /= 2;
    return out;
}

struct ComplexRational {
    Rational re;
    Rational im;
    friend bool operator==(const ComplexRational&, const ComplexRational&) = default;
};

inline ComplexRational value(const fockrat::OccupationState& state) {
    using fockrat::Kind;
    using fockrat::Sign;
    ComplexRational out;
    for (const auto& [j, occ] : state.sites()) {
        const Rational w = power_of_two(j);
        out.re += w * Rational(occ.n_plus) - w * Rational(occ.n_minus);
        out.im += w * Rational(occ.m_plus) - w * Rational(occ.m_minus);
    }
    return out;
}

inline Rational to_rational(const fockrat::Dyadic& d) {
    return Rational(d.numerator()) * power_of_two(d.exponent());
}

inline ComplexRational to_rational(const fockrat::GaussianDyadic& x) { return {to_rational(x.re), to_rational(x.im)}; }

/// Binary digits of a dyadic rational by long division: (sign, occupied sites).
inline std::pair<fockrat::Sign, fockrat::SiteSet> binary_sites(Rational x) {
    fockrat::SiteSet sites;
    const auto sign = x < 0 ? fockrat::Sign::minus : fockrat::Sign::plus;
    if (x < 0)
        x = -x;
    BigInt whole = boost::multiprecision::numerator(x) / boost::multiprecision::denominator(x);
    Rational frac = x - Rational(whole);
    for (Site j = 0; whole != 0; ++j) {
        if (whole % 2 == 1)
            sites.insert(j);
        whole /= 2;
    }
    for (Site j = -1; frac != 0; --j) {
        if (j < -100000)
            throw std::domain_error("oracle: not a dyadic rational");
        frac *= 2;
        if (frac >= 1) {
            sites.insert(j);
            frac -= 1;
        }
    }
    return {sign, sites};
}

inline fockrat::StandardForm standard_form(const ComplexRational& x) {
    fockrat::StandardForm out;
    std::tie(out.alpha, out.s) = binary_sites(x.re);
    std::tie(out.beta, out.t) = binary_sites(x.im);
    return out;
}

} // namespace oracle
