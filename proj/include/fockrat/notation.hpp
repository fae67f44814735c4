#pragma once

/**
 * @file notation.hpp
 * @brief Text forms of states and values.
 *
 * Occupation tokens      a+@2 a-@0 b-@3 b+@-1 a-@-2     a+@0^2     vacuum
 * Fermion tokens         a+@0:2 a+@0:1
 * Binary literals        10100.0011   -i111.1   10.11, -i111.1   |10.11⟩, |-i111.1⟩
 * Lattice subscripts     1₄1₂1₋₃1₋₄   1₊,₃i₊,₃1₋,₂i₋,₄1₋,₋₆
 * Superpositions         1/sqrt(2)(a+@7 a-@6 b-@4) + 1/sqrt(2)(a-@-2 b-@6)
 * Rewrite steps          carry a+@0 x3   borrow b-@4 b+@3   cancel a@5
 *
 * Rendering is canonical: occupation and lattice forms list sites from high
 * to low and, within a site, a+ a- b+ b-.
 */

#include "fockrat/fermion.hpp"
#include "fockrat/rewrite.hpp"
#include "fockrat/superposition.hpp"

#include <charconv>
#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fockrat {

class ParseError : public std::runtime_error {
    std::size_t position_;

public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const { return position_; }
};

/// Rendering a nonstandard state in a standard-only notation.
class NotStandardError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct StateToken {
    Kind kind = Kind::a;
    Sign sign = Sign::plus;
    Site site = 0;
    BigInt count = 1;
    std::optional<std::size_t> h;
};

namespace detail {

inline constexpr std::string_view unicode_minus = "\xE2\x88\x92"; // U+2212
inline constexpr std::string_view ket_close = "\xE2\x9F\xA9";     // U+27E9
inline constexpr std::string_view subscript_lead = "\xE2\x82";    // U+2080..U+208B

inline bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front()))
        s.remove_prefix(1);
    while (!s.empty() && is_space(s.back()))
        s.remove_suffix(1);
    return s;
}

class Cursor {
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t base_ = 0;

public:
    explicit Cursor(std::string_view text, std::size_t base = 0) : text_(text), base_(base) {}

    bool done() const { return pos_ >= text_.size(); }
    char peek() const { return done() ? '\0' : text_[pos_]; }
    std::size_t position() const { return base_ + pos_; }
    std::string_view rest() const { return text_.substr(pos_); }

    void skip_space() {
        while (!done() && is_space(peek()))
            ++pos_;
    }
    bool accept(char c) {
        if (peek() != c)
            return false;
        ++pos_;
        return true;
    }
    bool accept(std::string_view s) {
        if (rest().substr(0, s.size()) != s)
            return false;
        pos_ += s.size();
        return true;
    }
    void expect(char c, const char* what) {
        if (!accept(c))
            fail(std::string("expected ") + what);
    }
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, position()); }

    std::string_view digits() {
        const std::size_t start = pos_;
        while (!done() && peek() >= '0' && peek() <= '9')
            ++pos_;
        return text_.substr(start, pos_ - start);
    }

    Site site() {
        const std::size_t start = pos_;
        accept('-');
        const auto d = digits();
        if (d.empty())
            fail("expected a site index");
        Site out{};
        const auto* first = text_.data() + start;
        const auto* last = d.data() + d.size();
        const auto [ptr, ec] = std::from_chars(first, last, out);
        if (ec != std::errc() || ptr != last)
            throw ParseError("site index out of range", base_ + start);
        return out;
    }

    BigInt positive_integer(const char* what) {
        const auto d = digits();
        if (d.empty())
            fail(std::string("expected ") + what);
        BigInt out{std::string(d)};
        if (out == 0)
            fail(std::string(what) + " must be positive");
        return out;
    }
};

inline StateToken parse_token(Cursor& in) {
    StateToken tok;
    if (in.accept('a'))
        tok.kind = Kind::a;
    else if (in.accept('b'))
        tok.kind = Kind::b;
    else
        in.fail("expected particle kind 'a' or 'b'");
    if (in.accept('+'))
        tok.sign = Sign::plus;
    else if (in.accept('-'))
        tok.sign = Sign::minus;
    else
        in.fail("expected sign '+' or '-'");
    in.expect('@', "'@'");
    tok.site = in.site();
    if (in.accept('^')) {
        tok.count = in.positive_integer("count");
    } else if (in.accept(':')) {
        const BigInt h = in.positive_integer("h label");
        if (h > BigInt(std::numeric_limits<std::size_t>::max()))
            in.fail("h label out of range");
        tok.h = h.convert_to<std::size_t>();
    }
    if (!in.done() && !is_space(in.peek()))
        in.fail("unexpected character in token");
    return tok;
}

} // namespace detail

/// Tokens of a state literal; `vacuum` gives none.
inline std::vector<StateToken> parse_tokens(std::string_view text, std::size_t base = 0) {
    detail::Cursor in(text, base);
    in.skip_space();
    std::vector<StateToken> out;
    if (in.accept("vacuum")) {
        in.skip_space();
        if (!in.done())
            in.fail("unexpected text after 'vacuum'");
        return out;
    }
    if (in.done())
        in.fail("empty state literal");
    while (!in.done()) {
        out.push_back(detail::parse_token(in));
        in.skip_space();
    }
    return out;
}

inline OccupationState parse_state(std::string_view text, std::size_t base = 0) {
    OccupationState out;
    for (const auto& tok : parse_tokens(text, base)) {
        if (tok.h)
            throw ParseError("h labels are only valid for fermion strings", base);
        out.add(tok.kind, tok.sign, tok.site, tok.count);
    }
    return out;
}

/**
 * Fermion literal. Without h labels the tokens give occupancy counts and the
 * result is the canonical string with phase +1. With labels on every token
 * the tokens are an operator product, reordered with phase tracking.
 */
inline FermionResult parse_fermion(std::string_view text) {
    const auto tokens = parse_tokens(text);
    std::size_t labelled = 0;
    for (const auto& tok : tokens)
        labelled += tok.h ? 1 : 0;
    if (labelled == 0) {
        OccupationState counts;
        for (const auto& tok : tokens)
            counts.add(tok.kind, tok.sign, tok.site, tok.count);
        return f_from_counts(counts);
    }
    if (labelled != tokens.size())
        throw ParseError("either every fermion token carries an h label or none does", 0);
    FermionWord word;
    for (const auto& tok : tokens) {
        if (tok.count != 1)
            throw ParseError("a labelled fermion token cannot carry a count", 0);
        word.modes.push_back({tok.kind, tok.sign, *tok.h, tok.site});
    }
    try {
        return canonicalize(word);
    } catch (const std::domain_error& e) {
        throw ParseError(e.what(), 0);
    }
}

inline std::string render_state(const OccupationState& state) {
    if (state.is_vacuum())
        return "vacuum";
    std::string out;
    for (auto it = state.sites().rbegin(); it != state.sites().rend(); ++it) {
        for (Kind k : all_kinds) {
            for (Sign s : all_signs) {
                const BigInt& n = it->second.count(k, s);
                if (n == 0)
                    continue;
                if (!out.empty())
                    out += ' ';
                out += kind_char(k);
                out += sign_char(s);
                out += '@';
                out += std::to_string(it->first);
                if (n > 1)
                    out += "^" + n.str();
            }
        }
    }
    return out;
}

inline std::string render_fermion(const FermionString& s) {
    if (s.empty())
        return "vacuum";
    std::string out;
    for (const auto& m : s.modes()) {
        if (!out.empty())
            out += ' ';
        out += kind_char(m.kind);
        out += sign_char(m.sign);
        out += '@' + std::to_string(m.site) + ':' + std::to_string(m.h);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Binary literals

namespace detail {

struct BinaryComponent {
    Axis axis = Axis::real;
    Dyadic value;
};

inline BinaryComponent parse_binary_component(std::string_view text, std::size_t base) {
    Cursor in(text, base);
    const bool negative = in.accept('-') || in.accept(unicode_minus);
    BinaryComponent out;
    if (in.accept('i'))
        out.axis = Axis::imaginary;
    const auto whole = in.digits();
    std::string_view frac;
    if (in.accept('.')) {
        frac = in.digits();
        if (frac.empty())
            in.fail("expected binary digits after '.'");
    }
    if (whole.empty())
        in.fail("expected binary digits");
    if (!in.done())
        in.fail("unexpected character in binary literal");
    BigInt bits = 0;
    for (std::string_view part : {whole, frac}) {
        for (std::size_t i = 0; i < part.size(); ++i) {
            const char c = part[i];
            if (c != '0' && c != '1')
                throw ParseError("binary digits must be 0 or 1", base + static_cast<std::size_t>(part.data() - text.data()) + i);
            bits = (bits << 1) | (c - '0');
        }
    }
    if (negative)
        bits = -bits;
    out.value = Dyadic(std::move(bits), -static_cast<Site>(frac.size()));
    return out;
}

} // namespace detail

/**
 * A binary literal: one real and/or one imaginary component separated by a
 * comma, each optionally written as a ket, e.g. `|10.11⟩, |-i111.1⟩`.
 */
inline GaussianDyadic parse_binary(std::string_view text) {
    GaussianDyadic out;
    bool seen[2] = {false, false};
    std::size_t base = 0;
    while (true) {
        const std::size_t comma = text.find(',', base);
        std::string_view part = text.substr(base, comma == std::string_view::npos ? std::string_view::npos : comma - base);
        std::size_t part_base = base;
        while (!part.empty() && detail::is_space(part.front())) {
            part.remove_prefix(1);
            ++part_base;
        }
        part = detail::trim(part);
        if (!part.empty() && part.front() == '|') {
            if (part.size() < 1 + detail::ket_close.size() || !part.ends_with(detail::ket_close))
                throw ParseError("unterminated ket", part_base);
            part = part.substr(1, part.size() - 1 - detail::ket_close.size());
            ++part_base;
        }
        if (part.empty())
            throw ParseError("empty binary literal", part_base);
        const auto component = detail::parse_binary_component(part, part_base);
        const int slot = component.axis == Axis::real ? 0 : 1;
        if (seen[slot])
            throw ParseError("component given twice", part_base);
        seen[slot] = true;
        (slot == 0 ? out.re : out.im) = component.value;
        if (comma == std::string_view::npos)
            break;
        base = comma + 1;
    }
    return out;
}

namespace detail {

inline std::string binary_component(const Dyadic& x, bool imaginary) {
    const std::string digits = render(x.signum() < 0 ? -x : x, 2);
    return std::string(x.signum() < 0 ? "-" : "") + (imaginary ? "i" : "") + digits;
}

inline std::vector<std::string> binary_components(const GaussianDyadic& x) {
    std::vector<std::string> parts;
    if (!x.re.is_zero())
        parts.push_back(binary_component(x.re, false));
    if (!x.im.is_zero())
        parts.push_back(binary_component(x.im, true));
    if (parts.empty())
        parts.emplace_back("0");
    return parts;
}

} // namespace detail

/// Plain positional form: `10.11, -i111.1`.
inline std::string render_binary(const GaussianDyadic& x) {
    const auto parts = detail::binary_components(x);
    return parts.size() == 1 ? parts[0] : parts[0] + ", " + parts[1];
}

/// Qubit (ket) form: `|10.11⟩, |-i111.1⟩`.
inline std::string render_qubit(const GaussianDyadic& x) {
    std::string out;
    for (const auto& part : detail::binary_components(x)) {
        if (!out.empty())
            out += ", ";
        out += "|" + part + std::string(detail::ket_close);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Lattice subscripts

namespace detail {

inline std::string subscript_digits(std::string_view ascii) {
    std::string out;
    for (char c : ascii) {
        out += subscript_lead;
        if (c == '-')
            out += static_cast<char>(0x8B);
        else if (c == '+')
            out += static_cast<char>(0x8A);
        else
            out += static_cast<char>(0x80 + (c - '0'));
    }
    return out;
}

// Returns '0'..'9', '+', '-' for a subscript code point, or 0 if none is next.
inline char take_subscript(Cursor& in) {
    const auto rest = in.rest();
    if (rest.size() < 3 || rest.substr(0, 2) != subscript_lead)
        return 0;
    const auto low = static_cast<unsigned char>(rest[2]);
    char out = 0;
    if (low >= 0x80 && low <= 0x89)
        out = static_cast<char>('0' + (low - 0x80));
    else if (low == 0x8A)
        out = '+';
    else if (low == 0x8B)
        out = '-';
    if (out != 0)
        in.accept(rest.substr(0, 3));
    return out;
}

} // namespace detail

/// `1` for a-type and `i` for b-type particles; a minus sign is written `₋,`.
inline std::string render_lattice(const OccupationState& state) {
    if (state.is_vacuum())
        return "0";
    std::string out;
    for (auto it = state.sites().rbegin(); it != state.sites().rend(); ++it) {
        for (Kind k : all_kinds) {
            for (Sign s : all_signs) {
                const BigInt& n = it->second.count(k, s);
                if (n > 4096)
                    throw std::length_error("lattice notation repeats each particle; count too large");
                std::string token(1, k == Kind::a ? '1' : 'i');
                if (s == Sign::minus)
                    token += detail::subscript_digits("-") + ",";
                token += detail::subscript_digits(std::to_string(it->first));
                for (BigInt i = 0; i < n; ++i)
                    out += token;
            }
        }
    }
    return out;
}

inline OccupationState parse_lattice(std::string_view text) {
    detail::Cursor in(text);
    in.skip_space();
    OccupationState out;
    if (in.accept('0')) {
        in.skip_space();
        if (!in.done())
            in.fail("unexpected text after 0");
        return out;
    }
    if (in.done())
        in.fail("empty lattice literal");
    while (!in.done()) {
        Kind kind = Kind::a;
        if (in.accept('1'))
            kind = Kind::a;
        else if (in.accept('i'))
            kind = Kind::b;
        else
            in.fail("expected '1' or 'i'");
        Sign sign = Sign::plus;
        std::string site;
        char c = detail::take_subscript(in);
        if ((c == '+' || c == '-') && in.accept(',')) {
            sign = c == '+' ? Sign::plus : Sign::minus;
            c = detail::take_subscript(in);
        }
        if (c == '-') {
            site += '-';
            c = detail::take_subscript(in);
        }
        while (c >= '0' && c <= '9') {
            site += c;
            c = detail::take_subscript(in);
        }
        if (c != 0 || site.empty() || site == "-")
            in.fail("expected a subscript site index");
        detail::Cursor digits(site);
        out.add(kind, sign, digits.site());
        in.skip_space();
    }
    return out;
}

// ---------------------------------------------------------------------------
// Exact fraction and decimal forms

namespace detail {

template <class Fn>
std::string render_complex(const GaussianDyadic& x, Fn&& component) {
    if (x.is_zero())
        return "0";
    if (x.im.is_zero())
        return component(x.re);
    if (x.re.is_zero())
        return component(x.im) + " i";
    const bool negative = x.im.signum() < 0;
    return component(x.re) + (negative ? " - " : " + ") + component(negative ? -x.im : x.im) + " i";
}

} // namespace detail

/// `11/4 - 15/2 i`
inline std::string render_fraction(const GaussianDyadic& x) {
    return detail::render_complex(x, [](const Dyadic& d) { return render_fraction(d); });
}

/// `2.75 - 7.5 i`
inline std::string render_decimal(const GaussianDyadic& x) {
    return detail::render_complex(x, [](const Dyadic& d) { return render(d, 10); });
}

// ---------------------------------------------------------------------------
// Any literal naming a number state

/// Occupation tokens, lattice subscripts, or a binary literal (read as its standard state).
inline OccupationState parse_number(std::string_view text) {
    const auto body = detail::trim(text);
    if (body == "vacuum" || body.find('@') != std::string_view::npos)
        return parse_state(text);
    if (body.find(detail::subscript_lead) != std::string_view::npos)
        return parse_lattice(body);
    return to_occupation(dy_to_standard_sites(parse_binary(body)));
}

// ---------------------------------------------------------------------------
// Render styles

enum class RenderStyle : std::uint8_t { occupation, binary, qubit, fraction, decimal, lattice };

inline RenderStyle parse_style(std::string_view name) {
    if (name == "occupation")
        return RenderStyle::occupation;
    if (name == "binary")
        return RenderStyle::binary;
    if (name == "qubit")
        return RenderStyle::qubit;
    if (name == "fraction")
        return RenderStyle::fraction;
    if (name == "decimal")
        return RenderStyle::decimal;
    if (name == "lattice")
        return RenderStyle::lattice;
    throw ParseError("unknown style '" + std::string(name) + "'", 0);
}

inline std::string render_value(const GaussianDyadic& x, RenderStyle style) {
    switch (style) {
    case RenderStyle::binary: return render_binary(x);
    case RenderStyle::qubit: return render_qubit(x);
    case RenderStyle::fraction: return render_fraction(x);
    case RenderStyle::decimal: return render_decimal(x);
    case RenderStyle::occupation: return render_state(to_occupation(dy_to_standard_sites(x)));
    case RenderStyle::lattice: return render_lattice(to_occupation(dy_to_standard_sites(x)));
    }
    return {};
}

inline std::string render_standard(const StandardForm& f, RenderStyle style) {
    switch (style) {
    case RenderStyle::occupation: return render_state(to_occupation(f));
    case RenderStyle::lattice: return render_lattice(to_occupation(f));
    default: return render_value(standard_value(f), style);
    }
}

/**
 * Render an arbitrary state. The binary and qubit notations exist only for
 * standard states; a nonstandard state is refused unless `reduce` is set.
 */
inline std::string render_state_as(const OccupationState& state, RenderStyle style, bool reduce = false) {
    switch (style) {
    case RenderStyle::occupation: return render_state(state);
    case RenderStyle::lattice: return render_lattice(state);
    case RenderStyle::fraction:
    case RenderStyle::decimal: return render_value(value(state), style);
    case RenderStyle::binary:
    case RenderStyle::qubit:
        if (const auto f = standard_form(state))
            return render_standard(*f, style);
        if (!reduce)
            throw NotStandardError("binary notation exists only for standard states (reduce first)");
        return render_standard(reduce_to_standard(state), style);
    }
    return {};
}

// ---------------------------------------------------------------------------
// Superposition literals

namespace detail {

inline Amplitude parse_amplitude(std::string_view text, std::size_t base) {
    text = trim(text);
    if (text.empty())
        return 1.0;
    constexpr std::string_view root_prefix = "1/sqrt(";
    if (text.starts_with(root_prefix) && text.ends_with(")")) {
        const auto inner = text.substr(root_prefix.size(), text.size() - root_prefix.size() - 1);
        double n = 0.0;
        const auto [ptr, ec] = std::from_chars(inner.data(), inner.data() + inner.size(), n);
        if (ec != std::errc() || ptr != inner.data() + inner.size() || !(n > 0.0))
            throw ParseError("expected a positive number inside sqrt()", base);
        return 1.0 / std::sqrt(n);
    }
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(x))
        throw ParseError("expected a decimal amplitude or 1/sqrt(N)", base);
    return x;
}

} // namespace detail

/// `amp(state) + amp(state) ...`; a missing amplitude means 1, and '-' negates the next term.
inline Superposition parse_superposition(std::string_view text) {
    Superposition out;
    std::size_t pos = 0;
    bool first = true;
    const auto skip = [&] {
        while (pos < text.size() && detail::is_space(text[pos]))
            ++pos;
    };
    skip();
    if (pos == text.size())
        throw ParseError("empty superposition", pos);
    while (pos < text.size()) {
        double sign = 1.0;
        if (text[pos] == '+' || text[pos] == '-') {
            sign = text[pos] == '-' ? -1.0 : 1.0;
            ++pos;
        } else if (!first) {
            throw ParseError("expected '+' or '-' between terms", pos);
        }
        skip();
        // The amplitude runs up to the '(' that opens the state, skipping sqrt's own parentheses.
        std::size_t open = pos;
        while (open < text.size()) {
            if (text[open] == '(' && text.substr(pos, open - pos).ends_with("sqrt")) {
                const auto close = text.find(')', open);
                if (close == std::string_view::npos)
                    throw ParseError("unterminated sqrt(", open);
                open = close + 1;
                continue;
            }
            if (text[open] == '(')
                break;
            ++open;
        }
        if (open >= text.size())
            throw ParseError("expected '(' opening a state", pos);
        const auto close = text.find(')', open);
        if (close == std::string_view::npos)
            throw ParseError("unterminated '('", open);
        const Amplitude amp = detail::parse_amplitude(text.substr(pos, open - pos), pos);
        OccupationState state;
        try {
            state = parse_number(text.substr(open + 1, close - open - 1));
        } catch (const ParseError& e) {
            throw ParseError(std::string("in term: ") + e.what(), open + 1);
        }
        out.add_term(state, sign * amp);
        pos = close + 1;
        first = false;
        skip();
    }
    return out;
}

// ---------------------------------------------------------------------------
// Rewrite steps

inline std::string render_step(const RewriteStep& step) {
    std::string out = rule_name(step.rule);
    out += ' ';
    out += kind_char(step.kind);
    switch (step.rule) {
    case Rule::cancel: out += "@" + std::to_string(step.site); break;
    case Rule::carry:
        out += sign_char(step.sign);
        out += "@" + std::to_string(step.site);
        break;
    case Rule::borrow:
        out += sign_char(step.sign);
        out += "@" + std::to_string(step.site) + ' ' + kind_char(step.kind) + sign_char(-step.sign) + "@" +
               std::to_string(step.low_site);
        break;
    }
    if (step.times != 1)
        out += " x" + step.times.str();
    return out;
}

inline RewriteStep parse_step(std::string_view text) {
    detail::Cursor in(detail::trim(text));
    RewriteStep step;
    if (in.accept("cancel"))
        step.rule = Rule::cancel;
    else if (in.accept("carry"))
        step.rule = Rule::carry;
    else if (in.accept("borrow"))
        step.rule = Rule::borrow;
    else
        in.fail("expected a rule name");
    in.skip_space();
    if (in.accept('a'))
        step.kind = Kind::a;
    else if (in.accept('b'))
        step.kind = Kind::b;
    else
        in.fail("expected particle kind");
    if (step.rule != Rule::cancel) {
        if (in.accept('+'))
            step.sign = Sign::plus;
        else if (in.accept('-'))
            step.sign = Sign::minus;
        else
            in.fail("expected sign");
    }
    in.expect('@', "'@'");
    step.site = in.site();
    if (step.rule == Rule::borrow) {
        in.skip_space();
        if (!in.accept(kind_char(step.kind)) || !in.accept(sign_char(-step.sign)))
            in.fail("expected the opposite-sign particle of the same kind");
        in.expect('@', "'@'");
        step.low_site = in.site();
    }
    in.skip_space();
    if (in.accept('x'))
        step.times = in.positive_integer("repeat count");
    in.skip_space();
    if (!in.done())
        in.fail("unexpected text after step");
    return step;
}

} // namespace fockrat
