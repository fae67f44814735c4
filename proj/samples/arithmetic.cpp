// Build a nonstandard state, reduce it step by step, and print it in every notation.

#include <fockrat/fockrat.hpp>

#include <iostream>

int main() {
    using namespace fockrat;

    const auto state = parse_state("a+@3 b+@3 a-@2 b-@4 a-@-6");
    std::cout << "input     " << render_state(state) << '\n';
    std::cout << "value     " << render_fraction(value(state)) << '\n';

    const auto form = reduce_to_standard(state, [](const RewriteStep& step, const OccupationState& after) {
        std::cout << "  " << render_step(step) << "  ->  " << render_state(after) << '\n';
    });

    for (const char* style : {"occupation", "binary", "qubit", "decimal", "lattice"})
        std::cout << style << ": " << render_standard(form, parse_style(style)) << '\n';

    // 1/3 to six binary places.
    std::cout << "1/3 ~ " << render_standard(approximate(1, 3, 6), RenderStyle::binary) << '\n';
}
