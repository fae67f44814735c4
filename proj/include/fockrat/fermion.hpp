#pragma once

/**
 * @file fermion.hpp
 * @brief Fermionic occupation states as canonically ordered creation strings.
 *
 * A fermion mode is (kind, sign, h, site). The h label separates fermions
 * that share kind, sign and site; it never contributes to the value.
 *
 * Canonical order, left to right: sites ascending; within a site the blocks
 * a+, a-, b+, b-; within a block h descending. Within each block the
 * occupied h values are exactly 1..count.
 *
 * Phase convention: the right end of a string is the slot next to the
 * vacuum. A mode is created there and moved left into place, and a mode is
 * removed by first moving it to the right end. Each transposition of two
 * same-kind modes flips the phase; a- and b-type operators commute.
 */

#include "fockrat/rewrite.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <variant>
#include <vector>

namespace fockrat {

struct FermionMode {
    Kind kind = Kind::a;
    Sign sign = Sign::plus;
    std::size_t h = 1;
    Site site = 0;

    friend bool operator==(const FermionMode&, const FermionMode&) = default;
};

constexpr int block_index(Kind k, Sign s) noexcept {
    return (k == Kind::a ? 0 : 2) + (s == Sign::plus ? 0 : 1);
}

/// Strict canonical order; equal modes compare equivalent.
inline bool canonical_less(const FermionMode& x, const FermionMode& y) {
    if (x.site != y.site)
        return x.site < y.site;
    const int bx = block_index(x.kind, x.sign);
    const int by = block_index(y.kind, y.sign);
    if (bx != by)
        return bx < by;
    return x.h > y.h;
}

class FermionString;

/// The zero vector produced by creating an already occupied fermion mode.
struct ZeroVector {
    friend bool operator==(ZeroVector, ZeroVector) { return true; }
};

using FermionResult = std::variant<FermionString, ZeroVector>;

class FermionString {
    std::vector<FermionMode> modes_;
    int phase_ = 1;

    FermionString(std::vector<FermionMode> modes, int phase) : modes_(std::move(modes)), phase_(phase) {}

    friend FermionResult canonicalize(const class FermionWord&);
    friend FermionResult f_apply_creation(const FermionString&, const FermionMode&);
    friend FermionString f_from_counts(const OccupationState&);
    friend FermionString f_apply_step(FermionString, const RewriteStep&);
    friend FermionString f_add_basis(const FermionString&, const FermionString&);
    friend class FermionEditor;

public:
    FermionString() = default;

    const std::vector<FermionMode>& modes() const { return modes_; }
    int phase() const { return phase_; }
    bool empty() const { return modes_.empty(); }
    std::size_t size() const { return modes_.size(); }

    /// Number of occupied modes in the (kind, sign, site) block; also its highest h.
    std::size_t block_count(Kind k, Sign s, Site j) const {
        return static_cast<std::size_t>(std::count_if(modes_.begin(), modes_.end(), [&](const FermionMode& m) {
            return m.kind == k && m.sign == s && m.site == j;
        }));
    }

    FermionString with_phase(int phase) const { return {modes_, phase}; }

    friend bool operator==(const FermionString&, const FermionString&) = default;
};

/// An operator product in arbitrary order, with an overall phase.
class FermionWord {
public:
    std::vector<FermionMode> modes;
    int phase = 1;

    FermionWord() = default;
    FermionWord(std::vector<FermionMode> m, int p = 1) : modes(std::move(m)), phase(p) {}
    explicit FermionWord(const FermionString& s) : modes(s.modes()), phase(s.phase()) {}

    /// Swap modes i and i+1 under the (anti)commutation relations.
    void transpose(std::size_t i) {
        if (i + 1 >= modes.size())
            throw std::out_of_range("transpose: index past the end of the word");
        if (modes[i].kind == modes[i + 1].kind)
            phase = -phase;
        std::swap(modes[i], modes[i + 1]);
    }

    friend bool operator==(const FermionWord&, const FermionWord&) = default;
};

/**
 * Sort a word into canonical order, tracking the phase by adjacent
 * transpositions. A repeated mode gives the zero vector; h labels that do not
 * form 1..count within a block are rejected with std::domain_error.
 */
inline FermionResult canonicalize(const FermionWord& word) {
    std::vector<FermionMode> modes = word.modes;
    int phase = word.phase;
    for (auto& m : modes)
        if (m.h < 1)
            throw std::domain_error("fermion h label must be at least 1");
    // Insertion sort counts every adjacent swap it performs.
    for (std::size_t i = 1; i < modes.size(); ++i) {
        for (std::size_t j = i; j > 0 && canonical_less(modes[j], modes[j - 1]); --j) {
            if (modes[j].kind == modes[j - 1].kind)
                phase = -phase;
            std::swap(modes[j], modes[j - 1]);
        }
    }
    for (std::size_t i = 1; i < modes.size(); ++i)
        if (modes[i] == modes[i - 1])
            return ZeroVector{};
    // Canonical order puts each block contiguous with h descending to 1.
    for (std::size_t i = 0; i < modes.size(); ++i) {
        const bool last_in_block = i + 1 == modes.size() || modes[i + 1].site != modes[i].site ||
                                   modes[i + 1].kind != modes[i].kind || modes[i + 1].sign != modes[i].sign;
        const std::size_t expected_next = modes[i].h - 1;
        if (last_in_block ? modes[i].h != 1 : modes[i + 1].h != expected_next)
            throw std::domain_error("fermion h labels must be 1..n within each block");
    }
    return FermionString(std::move(modes), phase);
}

namespace detail {

inline int parity_sign(std::size_t transpositions) { return transpositions % 2 == 0 ? 1 : -1; }

inline std::size_t same_kind_from(const std::vector<FermionMode>& modes, std::size_t pos, Kind k) {
    return static_cast<std::size_t>(
        std::count_if(modes.begin() + static_cast<std::ptrdiff_t>(pos), modes.end(),
                       [k](const FermionMode& m) { return m.kind == k; }));
}

} // namespace detail

/// Insert/remove primitives shared by the rewrite rules.
class FermionEditor {
public:
    /// Create `mode` at the right end and move it into canonical position.
    static void insert(FermionString& s, const FermionMode& mode) {
        const auto at = std::lower_bound(s.modes_.begin(), s.modes_.end(), mode, canonical_less);
        const auto pos = static_cast<std::size_t>(at - s.modes_.begin());
        s.phase_ *= detail::parity_sign(detail::same_kind_from(s.modes_, pos, mode.kind));
        s.modes_.insert(at, mode);
    }

    /// Move the highest-h mode of the block to the right end and annihilate it.
    static void remove_top(FermionString& s, Kind k, Sign sign, Site j) {
        const auto at = std::find_if(s.modes_.begin(), s.modes_.end(), [&](const FermionMode& m) {
            return m.kind == k && m.sign == sign && m.site == j;
        });
        if (at == s.modes_.end())
            throw RuleNotApplicable("no fermion to remove in the block");
        const auto pos = static_cast<std::size_t>(at - s.modes_.begin());
        s.phase_ *= detail::parity_sign(detail::same_kind_from(s.modes_, pos + 1, k));
        s.modes_.erase(at);
    }

    /// Add a fermion to the block at its lowest free h.
    static void push(FermionString& s, Kind k, Sign sign, Site j) {
        insert(s, {k, sign, s.block_count(k, sign, j) + 1, j});
    }
};

/**
 * Apply a creation operator. An occupied mode gives the zero vector.
 * An h above count+1 would leave a hole in the block and throws std::domain_error.
 */
inline FermionResult f_apply_creation(const FermionString& s, const FermionMode& mode) {
    if (mode.h < 1)
        throw std::domain_error("fermion h label must be at least 1");
    const std::size_t count = s.block_count(mode.kind, mode.sign, mode.site);
    if (mode.h <= count)
        return ZeroVector{};
    if (mode.h > count + 1)
        throw std::domain_error("creating this h would leave a hole in the block");
    FermionString out = s;
    FermionEditor::insert(out, mode);
    return out;
}

inline OccupationState f_counts(const FermionString& s) {
    OccupationState out;
    for (const auto& m : s.modes())
        out.add(m.kind, m.sign, m.site);
    return out;
}

/// The canonical string of an occupation state, h = 1..count per block, phase +1.
inline FermionString f_from_counts(const OccupationState& c) {
    std::vector<FermionMode> modes;
    for (const auto& [j, occ] : c.sites()) {
        for (Kind k : all_kinds) {
            for (Sign s : all_signs) {
                const BigInt& n = occ.count(k, s);
                if (n > BigInt(std::numeric_limits<std::size_t>::max() / 2))
                    throw std::length_error("fermion block too large to enumerate");
                for (auto h = n.convert_to<std::size_t>(); h >= 1; --h)
                    modes.push_back({k, s, h, j});
            }
        }
    }
    return {std::move(modes), 1};
}

inline GaussianDyadic f_value(const FermionString& s) { return value(f_counts(s)); }

/// The fermionic counterpart of apply_step; repeats the single rule `times` times.
inline FermionString f_apply_step(FermionString s, const RewriteStep& step) {
    // Validate against the occupancy image first so a failing step leaves no partial edit.
    (void)apply_step(f_counts(s), step);
    for (BigInt n = 0; n < step.times; ++n) {
        switch (step.rule) {
        case Rule::cancel:
            FermionEditor::remove_top(s, step.kind, Sign::plus, step.site);
            FermionEditor::remove_top(s, step.kind, Sign::minus, step.site);
            break;
        case Rule::carry:
            FermionEditor::remove_top(s, step.kind, step.sign, step.site);
            FermionEditor::remove_top(s, step.kind, step.sign, step.site);
            FermionEditor::push(s, step.kind, step.sign, detail::checked_add(step.site, 1));
            break;
        case Rule::borrow:
            FermionEditor::remove_top(s, step.kind, step.sign, step.site);
            FermionEditor::remove_top(s, step.kind, -step.sign, step.low_site);
            for (Site i = step.low_site; i < step.site; ++i)
                FermionEditor::push(s, step.kind, step.sign, i);
            break;
        }
    }
    return s;
}

inline FermionString f_rewrite_cancel(const FermionString& s, Kind kind, Site j) {
    return f_apply_step(s, {Rule::cancel, kind, Sign::plus, j, 0, 1});
}

/// Needs two distinct h values in the block; the two highest are removed.
inline FermionString f_rewrite_carry(const FermionString& s, Kind kind, Sign sign, Site j) {
    return f_apply_step(s, {Rule::carry, kind, sign, j, 0, 1});
}

inline FermionString f_rewrite_borrow(const FermionString& s, Kind kind, Sign sign, Site j, Site k) {
    return f_apply_step(s, {Rule::borrow, kind, sign, j, k, 1});
}

/// Reduce with the fermionic rules, following the same step sequence as the boson reduction.
inline FermionString f_reduce(const FermionString& s, const StepObserver& observer = {}) {
    FermionString out = s;
    reduce(f_counts(s), [&](const RewriteStep& step, const OccupationState& image) {
        out = f_apply_step(std::move(out), step);
        if (observer)
            observer(step, image);
    });
    return out;
}

inline StandardForm f_reduce_to_standard(const FermionString& s) {
    const auto out = standard_form(f_counts(f_reduce(s)));
    if (!out)
        throw std::logic_error("fermion reduction ended in a nonstandard state");
    return *out;
}

/**
 * Third register of fermionic addition: the combined occupancy written in
 * canonical order. The phase is -1 exactly when the total fermion count is odd.
 */
inline FermionString f_add_basis(const FermionString& u, const FermionString& v) {
    FermionString out = f_from_counts(accumulate(f_counts(u), f_counts(v)));
    out.phase_ = detail::parity_sign(out.size());
    return out;
}

} // namespace fockrat
