// Add two superpositions and read off the mixture left in the sum register.

#include <fockrat/fockrat.hpp>

#include <iostream>

int main() {
    using namespace fockrat;

    const auto x = parse_superposition("1/sqrt(2)(1) + 1/sqrt(2)(10)");
    const auto y = parse_superposition("1/sqrt(2)(100) + 1/sqrt(2)(1000)");

    const auto mixture = merge_n_equal(partial_trace_12(op_add(x, y)));
    for (const auto& c : mixture.components())
        std::cout << c.probability << "  " << render_state_as(c.state, RenderStyle::binary) << '\n';

    std::cout << "<N> = " << expectation_N(mixture).real() << '\n';
    std::cout << "<N>_x + <N>_y = " << (expectation_N_pure(x) + expectation_N_pure(y)).real() << '\n';
}
