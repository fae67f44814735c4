#pragma once

/**
 * @file rewrite.hpp
 * @brief Numerical-equality rewrite rules and reduction to standard form.
 *
 * Three rules act on occupation states, each preserving the number-operator
 * eigenvalue:
 *
 *   cancel  a+@j a-@j        -> (nothing)               2^j - 2^j = 0
 *   carry   a+@j a+@j        -> a+@(j+1)                2^j + 2^j = 2^(j+1)
 *   borrow  a+@j a-@k (k<j)  -> a+@(j-1) ... a+@k       2^j - 2^k = sum_{k..j-1} 2^i
 *
 * with the mirrored sign variants and the same rules for b-type particles.
 *
 * reduce_to_standard() runs a fixed strategy: saturate cancel/carry scanning
 * sites upward, take the sign at the highest occupied site of each kind as
 * dominant, then borrow from the highest minority particle into the nearest
 * dominant particle above it until no minority particles remain.
 */

#include "fockrat/occupation.hpp"

#include <array>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fockrat {

enum class Rule : std::uint8_t { cancel, carry, borrow };

inline const char* rule_name(Rule r) {
    switch (r) {
    case Rule::cancel: return "cancel";
    case Rule::carry: return "carry";
    case Rule::borrow: return "borrow";
    }
    return "?";
}

/**
 * One rule application, or `times` identical applications in a row.
 *
 * `sign` is the sign being carried (carry) or the dominant sign at `site`
 * (borrow); cancel ignores it. `low_site` is only meaningful for borrow.
 */
struct RewriteStep {
    Rule rule = Rule::cancel;
    Kind kind = Kind::a;
    Sign sign = Sign::plus;
    Site site = 0;
    Site low_site = 0;
    BigInt times = 1;

    friend bool operator==(const RewriteStep&, const RewriteStep&) = default;
};

class RuleNotApplicable : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

namespace detail {

inline void require(bool ok, Rule rule, const char* why) {
    if (!ok)
        throw RuleNotApplicable(std::string(rule_name(rule)) + ": " + why);
}

} // namespace detail

/// Apply a step `step.times` times. Throws RuleNotApplicable if any application would fail.
inline OccupationState apply_step(OccupationState state, const RewriteStep& step) {
    const BigInt& n = step.times;
    detail::require(n >= 1, step.rule, "repeat count must be positive");
    switch (step.rule) {
    case Rule::cancel:
        detail::require(state.count(step.kind, Sign::plus, step.site) >= n &&
                            state.count(step.kind, Sign::minus, step.site) >= n,
                        step.rule, "needs a + and a - particle of the same kind at the site");
        state.remove(step.kind, Sign::plus, step.site, n);
        state.remove(step.kind, Sign::minus, step.site, n);
        break;
    case Rule::carry: {
        detail::require(state.count(step.kind, step.sign, step.site) >= 2 * n, step.rule,
                        "needs two particles of the same kind and sign at the site");
        const Site up = detail::checked_add(step.site, 1);
        state.remove(step.kind, step.sign, step.site, 2 * n);
        state.add(step.kind, step.sign, up, n);
        break;
    }
    case Rule::borrow:
        detail::require(step.low_site < step.site, step.rule, "low site must lie below the high site");
        detail::require(state.count(step.kind, step.sign, step.site) >= n &&
                            state.count(step.kind, -step.sign, step.low_site) >= n,
                        step.rule, "needs a particle at the high site and an opposite-sign one at the low site");
        state.remove(step.kind, step.sign, step.site, n);
        state.remove(step.kind, -step.sign, step.low_site, n);
        for (Site i = step.low_site; i < step.site; ++i)
            state.add(step.kind, step.sign, i, n);
        break;
    }
    return state;
}

inline OccupationState rewrite_cancel(const OccupationState& state, Kind kind, Site j) {
    return apply_step(state, {Rule::cancel, kind, Sign::plus, j, 0, 1});
}

inline OccupationState rewrite_carry(const OccupationState& state, Kind kind, Sign sign, Site j) {
    return apply_step(state, {Rule::carry, kind, sign, j, 0, 1});
}

/// Borrow with an explicit sign for the particle at the high site j.
inline OccupationState rewrite_borrow(const OccupationState& state, Kind kind, Sign sign, Site j, Site k) {
    return apply_step(state, {Rule::borrow, kind, sign, j, k, 1});
}

/// Borrow inferring the sign at j; throws if both orientations apply.
inline OccupationState rewrite_borrow(const OccupationState& state, Kind kind, Site j, Site k) {
    const bool plus_ok = state.count(kind, Sign::plus, j) > 0 && state.count(kind, Sign::minus, k) > 0;
    const bool minus_ok = state.count(kind, Sign::minus, j) > 0 && state.count(kind, Sign::plus, k) > 0;
    detail::require(!(plus_ok && minus_ok), Rule::borrow, "ambiguous orientation; pass the sign explicitly");
    return rewrite_borrow(state, kind, minus_ok ? Sign::minus : Sign::plus, j, k);
}

/**
 * The standard form of `state` when it already is one: per kind, counts of
 * 0 or 1 and a single sign across all sites.
 */
inline std::optional<StandardForm> standard_form(const OccupationState& state) {
    StandardForm out;
    std::optional<Sign> seen[2];
    for (const auto& [j, occ] : state.sites()) {
        for (Kind k : all_kinds) {
            const BigInt& plus = occ.count(k, Sign::plus);
            const BigInt& minus = occ.count(k, Sign::minus);
            if (plus == 0 && minus == 0)
                continue;
            if (plus + minus != 1)
                return std::nullopt;
            const Sign s = plus == 1 ? Sign::plus : Sign::minus;
            auto& slot = seen[static_cast<int>(k)];
            if (slot && *slot != s)
                return std::nullopt;
            slot = s;
            (k == Kind::a ? out.s : out.t).insert(j);
        }
    }
    out.alpha = seen[0].value_or(Sign::plus);
    out.beta = seen[1].value_or(Sign::plus);
    return out;
}

inline bool is_standard(const OccupationState& state) { return standard_form(state).has_value(); }

/// Called after each applied step with the resulting state.
using StepObserver = std::function<void(const RewriteStep&, const OccupationState&)>;

namespace detail {

class Reducer {
    OccupationState state_;
    const StepObserver& observer_;

    void emit(const RewriteStep& step) {
        state_ = apply_step(std::move(state_), step);
        if (observer_)
            observer_(step, state_);
    }

    // Ascending scan; a carry only feeds the next site up, so one pass saturates.
    void saturate() {
        if (state_.is_vacuum())
            return;
        std::optional<Site> j = state_.sites().begin()->first;
        while (j) {
            const Site site = *j;
            for (Kind k : all_kinds) {
                const BigInt both = std::min(state_.count(k, Sign::plus, site), state_.count(k, Sign::minus, site));
                if (both > 0)
                    emit({Rule::cancel, k, Sign::plus, site, 0, both});
                for (Sign s : all_signs) {
                    const BigInt pairs = state_.count(k, s, site) / 2;
                    if (pairs > 0)
                        emit({Rule::carry, k, s, site, 0, pairs});
                }
            }
            const auto next = state_.sites().upper_bound(site);
            j = next == state_.sites().end() ? std::nullopt : std::optional<Site>(next->first);
        }
    }

    std::optional<Site> highest(Kind k, Sign s) const {
        for (auto it = state_.sites().rbegin(); it != state_.sites().rend(); ++it)
            if (it->second.count(k, s) > 0)
                return it->first;
        return std::nullopt;
    }

    std::optional<Sign> dominant_sign(Kind k) const {
        for (auto it = state_.sites().rbegin(); it != state_.sites().rend(); ++it) {
            if (it->second.count(k, Sign::plus) > 0)
                return Sign::plus;
            if (it->second.count(k, Sign::minus) > 0)
                return Sign::minus;
        }
        return std::nullopt;
    }

    void borrow_phase(Kind k) {
        const auto dominant = dominant_sign(k);
        if (!dominant)
            return;
        while (const auto low = highest(k, -*dominant)) {
            // The highest occupied site is dominant, so a dominant particle exists above `low`.
            auto it = state_.sites().upper_bound(*low);
            while (it->second.count(k, *dominant) == 0)
                ++it;
            emit({Rule::borrow, k, *dominant, it->first, *low, 1});
            saturate();
        }
    }

public:
    Reducer(OccupationState state, const StepObserver& observer) : state_(std::move(state)), observer_(observer) {}

    OccupationState run() {
        saturate();
        for (Kind k : all_kinds)
            borrow_phase(k);
        return std::move(state_);
    }
};

} // namespace detail

/// Rewrite-based reduction; returns the final (standard) occupation state.
inline OccupationState reduce(const OccupationState& state, const StepObserver& observer = {}) {
    return detail::Reducer(state, observer).run();
}

inline StandardForm reduce_to_standard(const OccupationState& state, const StepObserver& observer = {}) {
    const auto out = standard_form(reduce(state, observer));
    if (!out)
        throw std::logic_error("reduction ended in a nonstandard state");
    return *out;
}

/// Numerical equality: both states reduce to the same standard form.
inline bool n_equal(const OccupationState& x, const OccupationState& y) {
    return reduce_to_standard(x) == reduce_to_standard(y);
}

/**
 * Every single-application step available on `state`. Any maximal sequence
 * built from these terminates at the standard form: cancel and borrow lower
 * the total weight (2^j summed over every particle regardless of sign),
 * carry keeps it and lowers the particle count, and no step creates a site
 * below the current lowest one.
 *
 * The visitor form calls visit(rule, kind, sign, site, low_site) for each
 * step without building them; returning false stops the walk.
 */
template <class Visit>
void visit_applicable_steps(const OccupationState& state, Visit&& visit) {
    const auto block = [](Kind k, Sign s) { return 2 * static_cast<std::size_t>(k) + (s == Sign::plus ? 0 : 1); };
    // For each (kind, sign) block, the occupied sites in ascending order.
    std::array<std::vector<Site>, 4> holders;
    for (const auto& [j, occ] : state.sites()) {
        for (Kind k : all_kinds) {
            const bool plus = occ.count(k, Sign::plus) > 0;
            const bool minus = occ.count(k, Sign::minus) > 0;
            if (plus)
                holders[block(k, Sign::plus)].push_back(j);
            if (minus)
                holders[block(k, Sign::minus)].push_back(j);
            for (Sign s : all_signs)
                if (occ.count(k, s) >= 2 && !visit(Rule::carry, k, s, j, Site{0}))
                    return;
            if (plus && minus && !visit(Rule::cancel, k, Sign::plus, j, Site{0}))
                return;
        }
    }
    for (Kind k : all_kinds)
        for (Sign s : all_signs)
            for (Site j : holders[block(k, s)])
                for (Site low : holders[block(k, -s)]) {
                    if (low >= j)
                        break;
                    if (!visit(Rule::borrow, k, s, j, low))
                        return;
                }
}

inline std::vector<RewriteStep> applicable_steps(const OccupationState& state) {
    std::vector<RewriteStep> out;
    visit_applicable_steps(state, [&](Rule rule, Kind k, Sign s, Site j, Site low) {
        out.push_back({rule, k, s, j, low, 1});
        return true;
    });
    return out;
}

} // namespace fockrat
