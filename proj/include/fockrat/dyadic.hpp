#pragma once

/**
 * @file dyadic.hpp
 * @brief Exact dyadic rationals and their Gaussian (complex) extension.
 *
 * A Dyadic is numerator * 2^exponent with an arbitrary-precision numerator.
 * Canonical form keeps the numerator odd (or zero with exponent 0), so equal
 * values have identical representations and `==` is structural.
 *
 * GaussianDyadic is the codomain of the number operator: every occupation
 * state on the lattice evaluates to one of these exactly.
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>

namespace fockrat {

using BigInt = boost::multiprecision::cpp_int;

/// Lattice site index (the exponent of the power of two a particle carries).
using Site = std::int64_t;

/// Sites ordered from the most significant down, the way binary digits are written.
using SiteSet = std::set<Site, std::greater<Site>>;

enum class Sign : std::int8_t { plus = 1, minus = -1 };
enum class Axis : std::uint8_t { real, imaginary };

constexpr Sign operator-(Sign s) noexcept { return s == Sign::plus ? Sign::minus : Sign::plus; }
constexpr int to_int(Sign s) noexcept { return static_cast<int>(s); }
constexpr char sign_char(Sign s) noexcept { return s == Sign::plus ? '+' : '-'; }

namespace detail {

inline Site checked_add(Site x, Site y) {
    Site out{};
    if (__builtin_add_overflow(x, y, &out))
        throw std::overflow_error("site index overflow");
    return out;
}

inline Site checked_sub(Site x, Site y) {
    Site out{};
    if (__builtin_sub_overflow(x, y, &out))
        throw std::overflow_error("site index overflow");
    return out;
}

inline BigInt abs(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

inline std::string to_binary_digits(const BigInt& magnitude) {
    if (magnitude == 0)
        return "0";
    const auto top = boost::multiprecision::msb(magnitude);
    std::string out;
    out.reserve(top + 1);
    for (auto bit = static_cast<std::int64_t>(top); bit >= 0; --bit)
        out.push_back(boost::multiprecision::bit_test(magnitude, static_cast<unsigned>(bit)) ? '1' : '0');
    return out;
}

} // namespace detail

class Dyadic {
    BigInt num_;
    Site exp_ = 0;

    void canonicalize() {
        if (num_ == 0) {
            exp_ = 0;
            return;
        }
        const auto zeros = boost::multiprecision::lsb(detail::abs(num_));
        if (zeros > 0) {
            num_ >>= zeros;
            exp_ = detail::checked_add(exp_, static_cast<Site>(zeros));
        }
    }

public:
    Dyadic() = default;
    Dyadic(BigInt numerator, Site exponent = 0) : num_(std::move(numerator)), exp_(exponent) { canonicalize(); }
    Dyadic(long long n) : Dyadic(BigInt(n)) {}
    Dyadic(int n) : Dyadic(BigInt(n)) {}

    static Dyadic power_of_two(Site j) { return Dyadic(BigInt(1), j); }

    const BigInt& numerator() const { return num_; }
    Site exponent() const { return exp_; }

    bool is_zero() const { return num_ == 0; }
    int signum() const { return num_ < 0 ? -1 : (num_ > 0 ? 1 : 0); }

    Dyadic operator-() const { return Dyadic(BigInt(-num_), exp_); }

    friend Dyadic operator+(const Dyadic& x, const Dyadic& y) {
        if (x.is_zero())
            return y;
        if (y.is_zero())
            return x;
        const Site base = std::min(x.exp_, y.exp_);
        const auto shift_x = static_cast<std::uint64_t>(detail::checked_sub(x.exp_, base));
        const auto shift_y = static_cast<std::uint64_t>(detail::checked_sub(y.exp_, base));
        BigInt sum = (x.num_ << shift_x) + (y.num_ << shift_y);
        return Dyadic(std::move(sum), base);
    }

    friend Dyadic operator-(const Dyadic& x, const Dyadic& y) { return x + (-y); }

    /// Multiplication by an integer; used for count * 2^j terms.
    friend Dyadic operator*(const Dyadic& x, const BigInt& k) { return Dyadic(x.num_ * k, x.exp_); }

    Dyadic& operator+=(const Dyadic& rhs) { return *this = *this + rhs; }
    Dyadic& operator-=(const Dyadic& rhs) { return *this = *this - rhs; }

    friend bool operator==(const Dyadic& x, const Dyadic& y) { return x.num_ == y.num_ && x.exp_ == y.exp_; }
    friend bool operator<(const Dyadic& x, const Dyadic& y) { return (x - y).signum() < 0; }
    friend bool operator>(const Dyadic& x, const Dyadic& y) { return y < x; }
    friend bool operator<=(const Dyadic& x, const Dyadic& y) { return !(y < x); }
    friend bool operator>=(const Dyadic& x, const Dyadic& y) { return !(x < y); }

    double to_double() const {
        if (num_ == 0)
            return 0.0;
        BigInt mantissa = num_;
        Site e = exp_;
        const auto top = boost::multiprecision::msb(detail::abs(mantissa));
        if (top > 62) {
            mantissa >>= (top - 62);
            e += static_cast<Site>(top - 62);
        }
        const auto small = mantissa.convert_to<long long>();
        if (e > std::numeric_limits<int>::max())
            return small > 0 ? HUGE_VAL : -HUGE_VAL;
        if (e < std::numeric_limits<int>::min())
            return 0.0;
        return std::ldexp(static_cast<double>(small), static_cast<int>(e));
    }
};

struct GaussianDyadic {
    Dyadic re;
    Dyadic im;

    bool is_zero() const { return re.is_zero() && im.is_zero(); }

    friend GaussianDyadic operator+(const GaussianDyadic& x, const GaussianDyadic& y) { return {x.re + y.re, x.im + y.im}; }
    friend GaussianDyadic operator-(const GaussianDyadic& x, const GaussianDyadic& y) { return {x.re - y.re, x.im - y.im}; }
    GaussianDyadic operator-() const { return {-re, -im}; }
    GaussianDyadic& operator+=(const GaussianDyadic& rhs) { return *this = *this + rhs; }

    friend bool operator==(const GaussianDyadic& x, const GaussianDyadic& y) { return x.re == y.re && x.im == y.im; }
    friend bool operator!=(const GaussianDyadic& x, const GaussianDyadic& y) { return !(x == y); }

    std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }
};

inline GaussianDyadic dy_add(const GaussianDyadic& x, const GaussianDyadic& y) { return x + y; }
inline GaussianDyadic dy_neg(const GaussianDyadic& x) { return -x; }

/// sign * 2^j on the requested axis.
inline GaussianDyadic dy_from_power(Sign sign, Site j, Axis axis) {
    Dyadic v(BigInt(to_int(sign)), j);
    if (axis == Axis::real)
        return {std::move(v), Dyadic{}};
    return {Dyadic{}, std::move(v)};
}

/**
 * A standard state |alpha s, beta t>: one global sign per component and
 * at most one particle per site. An empty component carries sign + .
 */
struct StandardForm {
    Sign alpha = Sign::plus;
    SiteSet s;
    Sign beta = Sign::plus;
    SiteSet t;

    bool is_vacuum() const { return s.empty() && t.empty(); }

    friend bool operator==(const StandardForm&, const StandardForm&) = default;
};

namespace detail {

inline void expand(const Dyadic& x, Sign& sign, SiteSet& sites) {
    sites.clear();
    sign = x.signum() < 0 ? Sign::minus : Sign::plus;
    if (x.is_zero())
        return;
    const BigInt magnitude = abs(x.numerator());
    const auto top = boost::multiprecision::msb(magnitude);
    for (unsigned bit = 0; bit <= top; ++bit)
        if (boost::multiprecision::bit_test(magnitude, bit))
            sites.insert(checked_add(x.exponent(), static_cast<Site>(bit)));
}

inline Dyadic sum_of_powers(const SiteSet& sites) {
    if (sites.empty())
        return {};
    // Sites are descending, so the last one is the lowest weight.
    const Site low = *sites.rbegin();
    BigInt acc = 0;
    for (Site j : sites)
        boost::multiprecision::bit_set(acc, static_cast<unsigned>(checked_sub(j, low)));
    return Dyadic(std::move(acc), low);
}

} // namespace detail

/// Binary expansion of each component into its unique site set.
inline StandardForm dy_to_standard_sites(const GaussianDyadic& x) {
    StandardForm out;
    detail::expand(x.re, out.alpha, out.s);
    detail::expand(x.im, out.beta, out.t);
    return out;
}

/// Value of a standard state: alpha 2^s + i beta 2^t with 2^s = sum of 2^j over s.
inline GaussianDyadic standard_value(const StandardForm& f) {
    Dyadic re = detail::sum_of_powers(f.s);
    Dyadic im = detail::sum_of_powers(f.t);
    if (f.alpha == Sign::minus)
        re = -re;
    if (f.beta == Sign::minus)
        im = -im;
    return {std::move(re), std::move(im)};
}

/// Exact positional rendering in base 2 or 10, e.g. "11.111111" or "3.984375".
inline std::string render(const Dyadic& x, int base = 10) {
    if (base != 2 && base != 10)
        throw std::invalid_argument("render: base must be 2 or 10");
    if (x.is_zero())
        return "0";
    const BigInt magnitude = detail::abs(x.numerator());
    const std::string sign = x.signum() < 0 ? "-" : "";
    const Site e = x.exponent();

    if (e >= 0) {
        const BigInt whole = magnitude << static_cast<std::uint64_t>(e);
        return sign + (base == 2 ? detail::to_binary_digits(whole) : whole.str());
    }

    const auto frac_digits = static_cast<std::uint64_t>(-e);
    std::string digits;
    if (base == 2) {
        digits = detail::to_binary_digits(magnitude);
    } else {
        // m / 2^k == m * 5^k / 10^k
        digits = BigInt(magnitude * boost::multiprecision::pow(BigInt(5), static_cast<unsigned>(frac_digits))).str();
    }
    if (digits.size() <= frac_digits)
        digits.insert(0, frac_digits - digits.size() + 1, '0');
    digits.insert(digits.size() - frac_digits, 1, '.');
    return sign + digits;
}

/// "p/q" with q a power of two, or a plain integer.
inline std::string render_fraction(const Dyadic& x) {
    if (x.exponent() >= 0)
        return BigInt(x.numerator() << static_cast<std::uint64_t>(x.exponent())).str();
    const BigInt den = BigInt(1) << static_cast<std::uint64_t>(-x.exponent());
    return x.numerator().str() + "/" + den.str();
}

} // namespace fockrat
