#pragma once

/**
 * @file superposition.hpp
 * @brief Superpositions of basis states, the addition/subtraction operators,
 * partial trace to a classical mixture, and number-operator expectations.
 *
 * Amplitudes and probabilities are doubles; every value attached to a basis
 * state stays exact.
 */

#include "fockrat/fermion.hpp"
#include "fockrat/rewrite.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace fockrat {

using Amplitude = std::complex<double>;

inline constexpr double prune_threshold = 1e-15;
inline constexpr double normalization_tolerance = 1e-12;

class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline void check_finite(const Amplitude& amp) {
    if (!std::isfinite(amp.real()) || !std::isfinite(amp.imag()))
        throw ValidationError("amplitude must be finite");
}

template <class Map>
void add_amplitude(Map& terms, const typename Map::key_type& key, const Amplitude& amp) {
    check_finite(amp);
    auto [it, inserted] = terms.try_emplace(key, amp);
    if (!inserted)
        it->second += amp;
    if (std::abs(it->second) < prune_threshold)
        terms.erase(it);
}

template <class Map>
double norm_squared(const Map& terms) {
    double total = 0.0;
    for (const auto& [key, amp] : terms)
        total += std::norm(amp);
    return total;
}

} // namespace detail

/// sum_k d_k |state_k>, keyed by occupation state.
class Superposition {
    std::map<OccupationState, Amplitude> terms_;

public:
    Superposition() = default;

    static Superposition basis(const OccupationState& state) {
        Superposition out;
        out.add_term(state, 1.0);
        return out;
    }

    /// Adds into an existing term; entries that fall below the pruning threshold vanish.
    void add_term(const OccupationState& state, const Amplitude& amp) { detail::add_amplitude(terms_, state, amp); }

    const std::map<OccupationState, Amplitude>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    double norm_squared() const { return detail::norm_squared(terms_); }
    bool is_normalized() const { return std::abs(norm_squared() - 1.0) <= normalization_tolerance; }
};

/// First, second and third register of a product basis state.
struct TripleKey {
    OccupationState first;
    OccupationState second;
    OccupationState sum;

    friend bool operator==(const TripleKey&, const TripleKey&) = default;
    friend bool operator<(const TripleKey& x, const TripleKey& y) {
        return std::tie(x.first, x.second, x.sum) < std::tie(y.first, y.second, y.sum);
    }
};

class TripleRegister {
    std::map<TripleKey, Amplitude> terms_;

public:
    void add_term(const TripleKey& key, const Amplitude& amp) { detail::add_amplitude(terms_, key, amp); }

    const std::map<TripleKey, Amplitude>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    double norm_squared() const { return detail::norm_squared(terms_); }
};

struct MixtureComponent {
    double probability = 0.0;
    OccupationState state;
};

/// A diagonal density operator: distinct basis states with positive weights.
class MixedState {
    std::vector<MixtureComponent> components_;

public:
    MixedState() = default;

    /// Components with equal states are merged; nonpositive weights are rejected.
    explicit MixedState(const std::vector<MixtureComponent>& components) {
        std::map<OccupationState, double> merged;
        for (const auto& c : components) {
            if (!(c.probability > 0.0) || !std::isfinite(c.probability))
                throw ValidationError("mixture probabilities must be positive and finite");
            merged[c.state] += c.probability;
        }
        for (auto& [state, p] : merged)
            components_.push_back({p, state});
    }

    const std::vector<MixtureComponent>& components() const { return components_; }
    std::size_t size() const { return components_.size(); }

    double total_probability() const {
        double total = 0.0;
        for (const auto& c : components_)
            total += c.probability;
        return total;
    }
};

namespace detail {

inline void require_normalized(const Superposition& x, const char* what) {
    if (!x.is_normalized())
        throw ValidationError(std::string(what) + " is not normalized (sum |d|^2 = " +
                              std::to_string(x.norm_squared()) + ")");
}

} // namespace detail

/**
 * The addition operator on |x>|y>|0>: each basis pair (u, v) keeps u and v in
 * the first two registers and writes their concatenated occupancy into the
 * third, with amplitude d_u * d_v.
 */
inline TripleRegister op_add(const Superposition& x, const Superposition& y) {
    detail::require_normalized(x, "first operand");
    detail::require_normalized(y, "second operand");
    TripleRegister out;
    for (const auto& [u, du] : x.terms())
        for (const auto& [v, dv] : y.terms())
            out.add_term({u, v, accumulate(u, v)}, du * dv);
    return out;
}

/// Subtraction: flip the sign of every particle of each basis state of y, then add.
inline TripleRegister op_subtract(const Superposition& x, const Superposition& y) {
    detail::require_normalized(y, "second operand");
    Superposition flipped;
    for (const auto& [v, dv] : y.terms())
        flipped.add_term(negated(v), dv);
    return op_add(x, flipped);
}

/// Trace out the first two registers: |d_u|^2 |d_v|^2 weights on each third-register state.
inline MixedState partial_trace_12(const TripleRegister& t) {
    std::vector<MixtureComponent> parts;
    parts.reserve(t.size());
    for (const auto& [key, amp] : t.terms())
        parts.push_back({std::norm(amp), key.sum});
    return MixedState(parts);
}

/// Coarse-grain a mixture by numerical equality, keyed by each state's standard form.
inline MixedState merge_n_equal(const MixedState& m) {
    std::vector<MixtureComponent> parts;
    parts.reserve(m.size());
    for (const auto& c : m.components())
        parts.push_back({c.probability, to_occupation(reduce_to_standard(c.state))});
    return MixedState(parts);
}

inline std::complex<double> expectation_N(const MixedState& m) {
    std::complex<double> total = 0.0;
    for (const auto& c : m.components())
        total += c.probability * value(c.state).to_complex();
    return total;
}

inline std::complex<double> expectation_N_pure(const Superposition& x) {
    detail::require_normalized(x, "state");
    std::complex<double> total = 0.0;
    for (const auto& [state, amp] : x.terms())
        total += std::norm(amp) * value(state).to_complex();
    return total;
}

} // namespace fockrat
