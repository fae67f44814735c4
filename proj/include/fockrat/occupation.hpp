#pragma once

// Boson occupation-number states |n+, n-, m+, m-> on the integer lattice.
// a-type particles carry real values +-2^j, b-type carry imaginary i(+-2^j).

#include "fockrat/dyadic.hpp"

#include <map>
#include <span>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace fockrat {

enum class Kind : std::uint8_t { a, b };

constexpr Axis axis_of(Kind k) noexcept { return k == Kind::a ? Axis::real : Axis::imaginary; }
constexpr char kind_char(Kind k) noexcept { return k == Kind::a ? 'a' : 'b'; }

inline constexpr Kind all_kinds[] = {Kind::a, Kind::b};
inline constexpr Sign all_signs[] = {Sign::plus, Sign::minus};

struct SiteOccupancy {
    BigInt n_plus;
    BigInt n_minus;
    BigInt m_plus;
    BigInt m_minus;

    BigInt& count(Kind k, Sign s) {
        if (k == Kind::a)
            return s == Sign::plus ? n_plus : n_minus;
        return s == Sign::plus ? m_plus : m_minus;
    }
    const BigInt& count(Kind k, Sign s) const { return const_cast<SiteOccupancy&>(*this).count(k, s); }

    bool empty() const { return n_plus == 0 && n_minus == 0 && m_plus == 0 && m_minus == 0; }

    friend bool operator==(const SiteOccupancy& x, const SiteOccupancy& y) {
        return std::tie(x.n_plus, x.n_minus, x.m_plus, x.m_minus) == std::tie(y.n_plus, y.n_minus, y.m_plus, y.m_minus);
    }
    friend bool operator<(const SiteOccupancy& x, const SiteOccupancy& y) {
        return std::tie(x.n_plus, x.n_minus, x.m_plus, x.m_minus) < std::tie(y.n_plus, y.n_minus, y.m_plus, y.m_minus);
    }
};

/// Finitely supported map site -> occupancy. Empty sites are never stored.
class OccupationState {
    std::map<Site, SiteOccupancy> sites_;

public:
    OccupationState() = default;

    static OccupationState vacuum() { return {}; }

    /// Build from (site, n+, n-, m+, m-) rows; convenient in tests and parsers.
    static OccupationState from_counts(std::initializer_list<std::tuple<Site, int, int, int, int>> rows) {
        OccupationState out;
        for (const auto& [j, np, nm, mp, mm] : rows) {
            if (np < 0 || nm < 0 || mp < 0 || mm < 0)
                throw std::invalid_argument("occupation counts must be nonnegative");
            out.add(Kind::a, Sign::plus, j, np);
            out.add(Kind::a, Sign::minus, j, nm);
            out.add(Kind::b, Sign::plus, j, mp);
            out.add(Kind::b, Sign::minus, j, mm);
        }
        return out;
    }

    const std::map<Site, SiteOccupancy>& sites() const { return sites_; }
    bool is_vacuum() const { return sites_.empty(); }

    BigInt count(Kind k, Sign s, Site j) const {
        const auto it = sites_.find(j);
        return it == sites_.end() ? BigInt(0) : it->second.count(k, s);
    }

    void add(Kind k, Sign s, Site j, const BigInt& n = 1) {
        if (n < 0)
            throw std::invalid_argument("occupation counts must be nonnegative");
        if (n == 0)
            return;
        sites_[j].count(k, s) += n;
    }

    /// Throws std::domain_error when fewer than n particles are present.
    void remove(Kind k, Sign s, Site j, const BigInt& n = 1) {
        const auto it = sites_.find(j);
        if (it == sites_.end() || it->second.count(k, s) < n)
            throw std::domain_error("not enough particles to remove");
        it->second.count(k, s) -= n;
        if (it->second.empty())
            sites_.erase(it);
    }

    BigInt total_particles() const {
        BigInt total = 0;
        for (const auto& [j, occ] : sites_)
            total += occ.n_plus + occ.n_minus + occ.m_plus + occ.m_minus;
        return total;
    }

    friend bool operator==(const OccupationState&, const OccupationState&) = default;
    friend bool operator<(const OccupationState& x, const OccupationState& y) { return x.sites_ < y.sites_; }
};

inline OccupationState apply_creation(OccupationState state, Kind kind, Sign sign, Site j) {
    state.add(kind, sign, j);
    return state;
}

/// Eigenvalue of the number operator: sum_j 2^j (n+ - n-) + i sum_j 2^j (m+ - m-).
inline GaussianDyadic value(const OccupationState& state) {
    GaussianDyadic out;
    for (const auto& [j, occ] : state.sites()) {
        const Dyadic weight = Dyadic::power_of_two(j);
        if (occ.n_plus != occ.n_minus)
            out.re += weight * BigInt(occ.n_plus - occ.n_minus);
        if (occ.m_plus != occ.m_minus)
            out.im += weight * BigInt(occ.m_plus - occ.m_minus);
    }
    return out;
}

/// Pointwise sum of counts: the concatenated operator product of all terms.
inline OccupationState accumulate(std::span<const OccupationState> terms) {
    OccupationState out;
    for (const auto& term : terms)
        for (const auto& [j, occ] : term.sites())
            for (Kind k : all_kinds)
                for (Sign s : all_signs)
                    out.add(k, s, j, occ.count(k, s));
    return out;
}

inline OccupationState accumulate(const OccupationState& x, const OccupationState& y) {
    const OccupationState pair[] = {x, y};
    return accumulate(pair);
}

/// Every particle with its sign flipped; the additive inverse state.
inline OccupationState negated(const OccupationState& state) {
    OccupationState out;
    for (const auto& [j, occ] : state.sites())
        for (Kind k : all_kinds)
            for (Sign s : all_signs)
                out.add(k, -s, j, occ.count(k, s));
    return out;
}

/// The occupation state of a standard form (a_alpha)^s (b_beta)^t |0>.
inline OccupationState to_occupation(const StandardForm& f) {
    OccupationState out;
    for (Site j : f.s)
        out.add(Kind::a, f.alpha, j);
    for (Site j : f.t)
        out.add(Kind::b, f.beta, j);
    return out;
}

} // namespace fockrat
