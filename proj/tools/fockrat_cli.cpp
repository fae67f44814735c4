// fockrat: reduce, evaluate and combine occupation-number literals from the shell.
//
// Exit codes: 0 success, 2 parse or validation error, 1 internal error.

#include <fockrat/fockrat.hpp>

#include <CLI11.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

namespace {

using namespace fockrat;
using Rational = boost::multiprecision::cpp_rational;

constexpr int exit_ok = 0;
constexpr int exit_internal = 1;
constexpr int exit_usage = 2;

/// Input error that the user can fix; reported with exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string style_name = "binary";
    bool style_given = false;
    bool fermion = false;
    bool trace = false;
    bool reduce = false;
    std::uint64_t seed = 1;
};

std::string join(const std::vector<std::string>& words) {
    std::string out;
    for (const auto& w : words) {
        if (!out.empty())
            out += ' ';
        out += w;
    }
    return out;
}

std::string phase_text(int phase) { return phase > 0 ? "+1" : "-1"; }

StepObserver tracer(const Options& opt) {
    if (!opt.trace)
        return {};
    return [](const RewriteStep& step, const OccupationState& after) {
        std::cout << "step " << render_step(step) << " ; value=" << render_fraction(value(after)) << '\n';
    };
}

void print_standard(const StandardForm& f, const Options& opt) {
    std::cout << "standard: " << render_standard(f, parse_style(opt.style_name)) << '\n';
}

void require_standard(const OccupationState& s, const char* which) {
    if (!is_standard(s))
        throw UsageError(std::string(which) + " operand is not standard (use --allow-nonstandard)");
}

// ---------------------------------------------------------------------------

int cmd_reduce(const std::string& text, const Options& opt) {
    const RenderStyle style = parse_style(opt.style_name);
    if (opt.fermion) {
        const auto parsed = parse_fermion(text);
        if (std::holds_alternative<ZeroVector>(parsed)) {
            std::cout << "zero vector\n";
            return exit_ok;
        }
        const auto out = f_reduce(std::get<FermionString>(parsed), tracer(opt));
        std::cout << "fermion: " << render_fermion(out) << '\n';
        std::cout << "phase: " << phase_text(out.phase()) << '\n';
        std::cout << render_standard(*standard_form(f_counts(out)), style) << '\n';
        return exit_ok;
    }
    const auto form = reduce_to_standard(parse_state(text), tracer(opt));
    std::cout << render_standard(form, style) << '\n';
    return exit_ok;
}

int cmd_value(const std::string& text, const Options& opt) {
    const auto state = parse_number(text);
    if (opt.style_given) {
        std::cout << render_state_as(state, parse_style(opt.style_name), opt.reduce) << '\n';
        return exit_ok;
    }
    const auto v = value(state);
    std::cout << render_fraction(v) << '\n' << render_decimal(v) << '\n';
    return exit_ok;
}

int cmd_combine(const std::string& x_text, const std::string& y_text, bool subtract, bool allow_nonstandard,
                const Options& opt) {
    const auto x = parse_number(x_text);
    auto y = parse_number(y_text);
    if (!allow_nonstandard) {
        require_standard(x, "first");
        require_standard(y, "second");
    }
    if (subtract)
        y = negated(y);
    if (opt.fermion) {
        const auto sum = f_add_basis(f_from_counts(x), f_from_counts(y));
        std::cout << "fermion: " << render_fermion(sum) << '\n';
        std::cout << "phase: " << phase_text(sum.phase()) << '\n';
        print_standard(f_reduce_to_standard(sum), opt);
        return exit_ok;
    }
    const auto sum = accumulate(x, y);
    std::cout << "nonstandard: " << render_state(sum) << '\n';
    print_standard(reduce_to_standard(sum, tracer(opt)), opt);
    return exit_ok;
}

int cmd_accumulate(const std::string& path, bool show_nonstandard, const Options& opt) {
    std::ifstream file;
    std::istream* in = &std::cin;
    if (!path.empty() && path != "-") {
        file.open(path);
        if (!file)
            throw UsageError("cannot open '" + path + "'");
        in = &file;
    }
    // Everything is parsed before anything is printed.
    std::vector<OccupationState> terms;
    std::string line;
    for (std::size_t number = 1; std::getline(*in, line); ++number) {
        const auto body = line.substr(0, line.find('#'));
        if (body.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        try {
            terms.push_back(parse_number(body));
        } catch (const ParseError& e) {
            throw UsageError("line " + std::to_string(number) + ": " + e.what());
        }
    }
    const auto total = accumulate(terms);
    if (show_nonstandard) {
        std::cout << "site n+ n- m+ m-\n";
        for (auto it = total.sites().rbegin(); it != total.sites().rend(); ++it) {
            const auto& occ = it->second;
            std::cout << it->first << ' ' << occ.n_plus << ' ' << occ.n_minus << ' ' << occ.m_plus << ' '
                      << occ.m_minus << '\n';
        }
    }
    print_standard(reduce_to_standard(total, tracer(opt)), opt);
    std::cout << "value: " << render_fraction(value(total)) << '\n';
    return exit_ok;
}

Rational to_rational(const Dyadic& d) {
    Rational out(d.numerator());
    if (d.exponent() >= 0)
        return out * Rational(BigInt(1) << static_cast<std::uint64_t>(d.exponent()));
    return out / Rational(BigInt(1) << static_cast<std::uint64_t>(-d.exponent()));
}

int cmd_approx(const std::string& p_text, const std::string& q_text, Site k, const Options& opt) {
    BigInt p, q;
    try {
        p = BigInt(p_text);
        q = BigInt(q_text);
    } catch (const std::exception&) {
        throw UsageError("p and q must be integers");
    }
    if (q == 0)
        throw UsageError("q must be nonzero");
    if (k < 0)
        throw UsageError("k must be nonnegative");
    const auto form = approximate(p, q, k);
    const Dyadic v = standard_value(form).re;
    const Rational err = abs(Rational(p, q) - to_rational(v));
    print_standard(form, opt);
    std::cout << "value: " << render_fraction(v) << '\n';
    std::cout << "error: " << err << '\n';
    return exit_ok;
}

int cmd_fermionize(const std::string& text) {
    const auto parsed = parse_fermion(text);
    if (std::holds_alternative<ZeroVector>(parsed)) {
        std::cout << "zero vector\n";
        return exit_ok;
    }
    const auto& s = std::get<FermionString>(parsed);
    std::cout << render_fermion(s) << '\n' << "phase: " << phase_text(s.phase()) << '\n';
    return exit_ok;
}

std::string complex_text(const std::complex<double>& z) {
    std::ostringstream out;
    out << std::setprecision(12) << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << " i";
    return out.str();
}

int cmd_trace_add(const std::string& x_text, const std::string& y_text, bool subtract, const Options& opt) {
    const auto x = parse_superposition(x_text);
    const auto y = parse_superposition(y_text);
    const auto t = subtract ? op_subtract(x, y) : op_add(x, y);
    const auto mixture = merge_n_equal(partial_trace_12(t));
    const RenderStyle style = parse_style(opt.style_name);
    for (const auto& c : mixture.components())
        std::cout << "p=" << std::setprecision(12) << c.probability << "  "
                  << render_state_as(c.state, style, true) << '\n';
    const auto mixed = expectation_N(mixture);
    const auto ex = expectation_N_pure(x);
    const auto ey = expectation_N_pure(y);
    const auto expected = subtract ? ex - ey : ex + ey;
    std::cout << "total probability: " << std::setprecision(15) << mixture.total_probability() << '\n';
    std::cout << "<N> mixture: " << complex_text(mixed) << '\n';
    std::cout << "<N> operands: " << complex_text(expected) << '\n';
    std::cout << "residual: " << std::setprecision(3) << std::abs(mixed - expected) << '\n';
    return exit_ok;
}

/// Random consistency checks on the installed library; exit 1 on any mismatch.
int cmd_selftest(std::size_t cases, const Options& opt) {
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<int> sites(0, 5), count(0, 6);
    std::uniform_int_distribution<Site> site(-12, 12);
    const auto random_state = [&] {
        OccupationState s;
        const int n = sites(rng);
        for (int i = 0; i < n; ++i) {
            const Site j = site(rng);
            for (Kind k : all_kinds)
                for (Sign sg : all_signs)
                    s.add(k, sg, j, count(rng));
        }
        return s;
    };
    std::size_t failures = 0;
    for (std::size_t i = 0; i < cases; ++i) {
        const auto x = random_state();
        const auto y = random_state();
        const auto fx = reduce_to_standard(x);
        const bool ok = standard_value(fx) == value(x) && fx == dy_to_standard_sites(value(x)) &&
                        value(accumulate(x, y)) == value(x) + value(y) &&
                        f_reduce_to_standard(f_from_counts(x)) == fx &&
                        parse_state(render_state(x)) == x;
        if (!ok) {
            ++failures;
            std::cout << "mismatch: " << render_state(x) << " | " << render_state(y) << '\n';
        }
    }
    std::cout << "selftest: " << cases - failures << "/" << cases << " ok (seed " << opt.seed << ")\n";
    return failures == 0 ? exit_ok : exit_internal;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact arithmetic on occupation-number states"};
    app.require_subcommand(1);
    Options opt;

    auto* style = app.add_option("--style", opt.style_name, "Output notation")
                      ->check(CLI::IsMember({"occupation", "binary", "qubit", "fraction", "decimal", "lattice"}));
    app.add_flag("--fermion", opt.fermion, "Treat states as fermion strings");
    app.add_option("--seed", opt.seed, "Seed for randomized commands");
    app.add_flag("--trace", opt.trace, "Print each rewrite step");
    app.add_flag("--reduce", opt.reduce, "Reduce nonstandard states before binary rendering");

    std::vector<std::string> words;
    std::string x_text, y_text, path, p_text, q_text;
    Site k = 0;
    bool allow_nonstandard = false, show_nonstandard = false, subtract = false;
    std::size_t cases = 1000;

    const auto sub = [&](const char* name, const char* help) { return app.add_subcommand(name, help)->fallthrough(); };

    auto* reduce = sub("reduce", "Reduce a state literal to standard form");
    reduce->add_option("state", words, "State literal")->required();
    auto* val = sub("value", "Print the exact value of a literal");
    val->add_option("state", words, "State or number literal")->required();
    auto* add = sub("add", "Add two literals");
    auto* subc = sub("sub", "Subtract the second literal from the first");
    for (auto* c : {add, subc}) {
        c->add_option("x", x_text, "First operand")->required();
        c->add_option("y", y_text, "Second operand")->required();
        c->add_flag("--allow-nonstandard", allow_nonstandard, "Accept nonstandard operands");
    }
    auto* acc = sub("accumulate", "Sum one literal per line from a file or stdin");
    acc->add_option("file", path, "Input file ('-' for stdin)");
    acc->add_flag("--show-nonstandard", show_nonstandard, "Print per-site counts before reduction");
    auto* approx = sub("approx", "Truncate p/q to k binary places");
    approx->add_option("p", p_text)->required();
    approx->add_option("q", q_text)->required();
    approx->add_option("k", k)->required();
    auto* ferm = sub("fermionize", "Canonical fermion string of a literal");
    ferm->add_option("state", words, "State literal, optionally with :h labels")->required();
    auto* trace_add = sub("trace-add", "Add two superpositions and report the sum-register mixture");
    trace_add->add_option("x", x_text, "First superposition")->required();
    trace_add->add_option("y", y_text, "Second superposition")->required();
    trace_add->add_flag("--subtract", subtract, "Subtract instead of add");
    auto* self = sub("selftest", "Randomized consistency checks");
    self->add_option("--cases", cases, "Number of random cases");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }
    opt.style_given = style->count() > 0;

    try {
        if (*reduce)
            return cmd_reduce(join(words), opt);
        if (*val)
            return cmd_value(join(words), opt);
        if (*add || *subc)
            return cmd_combine(x_text, y_text, static_cast<bool>(*subc), allow_nonstandard, opt);
        if (*acc)
            return cmd_accumulate(path, show_nonstandard, opt);
        if (*approx)
            return cmd_approx(p_text, q_text, k, opt);
        if (*ferm)
            return cmd_fermionize(join(words));
        if (*trace_add)
            return cmd_trace_add(x_text, y_text, subtract, opt);
        if (*self)
            return cmd_selftest(cases, opt);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return exit_usage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return exit_usage;
    } catch (const NotStandardError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::overflow_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return exit_internal;
    }
    return exit_internal;
}
