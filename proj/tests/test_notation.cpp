#include "fockrat/notation.hpp"

#include "generators.hpp"

#include <gtest/gtest.h>

using namespace fockrat;

namespace {

using Occ = OccupationState;

std::size_t error_position(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const ParseError& e) {
        return e.position();
    }
    ADD_FAILURE() << "expected a ParseError";
    return static_cast<std::size_t>(-1);
}

} // namespace

TEST(StateLiteral, ParsesCountsAndSigns) {
    EXPECT_EQ(parse_state("a+@3 b-@-1 a+@0^2"), Occ::from_counts({{3, 1, 0, 0, 0}, {-1, 0, 0, 0, 1}, {0, 2, 0, 0, 0}}));
    EXPECT_EQ(parse_state("a+@0 a+@0"), parse_state("a+@0^2"));
    EXPECT_TRUE(parse_state("vacuum").is_vacuum());
    EXPECT_TRUE(parse_state("  vacuum ").is_vacuum());
}

TEST(StateLiteral, ErrorsCarryPositions) {
    EXPECT_EQ(error_position([] { (void)parse_state("a+@3 c+@1"); }), 5u);
    EXPECT_EQ(error_position([] { (void)parse_state("a*@3"); }), 1u);
    EXPECT_THROW((void)parse_state(""), ParseError);
    EXPECT_THROW((void)parse_state("a+@"), ParseError);
    EXPECT_THROW((void)parse_state("a+@1:1"), ParseError);
    EXPECT_THROW((void)parse_state("vacuum a+@1"), ParseError);
}

TEST(StateLiteral, RendersCanonically) {
    EXPECT_EQ(render_state(parse_state("b-@-1 a+@0^2 a+@3")), "a+@3 a+@0^2 b-@-1");
    EXPECT_EQ(render_state(parse_state("b-@2 b+@2 a-@2 a+@2")), "a+@2 a-@2 b+@2 b-@2");
    EXPECT_EQ(render_state(Occ::vacuum()), "vacuum");
}

TEST(StateLiteral, RoundTripsRandomStates) {
    gen::Rng rng(3);
    for (int i = 0; i < 2000; ++i) {
        const auto s = gen::occupation(rng);
        ASSERT_EQ(parse_state(render_state(s)), s);
    }
}

TEST(FermionLiteral, LabelsAndPhase) {
    const auto r = parse_fermion("a+@0:1 a+@0:2");
    ASSERT_TRUE(std::holds_alternative<FermionString>(r));
    const auto& s = std::get<FermionString>(r);
    EXPECT_EQ(render_fermion(s), "a+@0:2 a+@0:1");
    EXPECT_EQ(s.phase(), -1);
    EXPECT_EQ(std::get<FermionString>(parse_fermion("a+@3 a+@1")).phase(), 1);
    EXPECT_TRUE(std::holds_alternative<ZeroVector>(parse_fermion("a+@0:1 a+@0:1")));
    EXPECT_THROW((void)parse_fermion("a+@0:1 a+@1"), ParseError);
    EXPECT_THROW((void)parse_fermion("a+@0:2"), ParseError);
}

TEST(BinaryLiteral, Parses) {
    EXPECT_EQ(parse_binary("10.11, -i111.1"), (GaussianDyadic{Dyadic(BigInt(11), -2), Dyadic(BigInt(-15), -1)}));
    EXPECT_EQ(parse_binary("|10.11⟩, |-i111.1⟩"), parse_binary("10.11, -i111.1"));
    EXPECT_EQ(parse_binary("\xE2\x88\x92" "i1"), (GaussianDyadic{0, -1}));
    EXPECT_EQ(parse_binary("0"), GaussianDyadic{});
    EXPECT_EQ(parse_binary("i0.01"), (GaussianDyadic{0, Dyadic(BigInt(1), -2)}));
}

TEST(BinaryLiteral, Errors) {
    EXPECT_EQ(error_position([] { (void)parse_binary("10.21"); }), 3u);
    EXPECT_THROW((void)parse_binary("1, 1"), ParseError);
    EXPECT_THROW((void)parse_binary("1."), ParseError);
    EXPECT_THROW((void)parse_binary("|10"), ParseError);
    EXPECT_THROW((void)parse_binary(""), ParseError);
}

TEST(BinaryLiteral, Renders) {
    const GaussianDyadic x{Dyadic(BigInt(11), -2), Dyadic(BigInt(-15), -1)};
    EXPECT_EQ(render_binary(x), "10.11, -i111.1");
    EXPECT_EQ(render_qubit(x), "|10.11⟩, |-i111.1⟩");
    EXPECT_EQ(render_fraction(x), "11/4 - 15/2 i");
    EXPECT_EQ(render_decimal(x), "2.75 - 7.5 i");
    EXPECT_EQ(render_binary({}), "0");
    EXPECT_EQ(render_fraction(GaussianDyadic{0, 3}), "3 i");
}

TEST(BinaryLiteral, RoundTripsRandomValues) {
    gen::Rng rng(8);
    for (int i = 0; i < 2000; ++i) {
        const auto v = standard_value(gen::standard(rng));
        ASSERT_EQ(parse_binary(render_binary(v)), v);
        ASSERT_EQ(parse_binary(render_qubit(v)), v);
    }
}

TEST(LatticeLiteral, GoldenForm) {
    const auto state = parse_number("10100.0011");
    EXPECT_EQ(render_lattice(state), "1₄1₂1₋₃1₋₄");
    EXPECT_EQ(parse_lattice("1₄1₂1₋₃1₋₄"), state);
    EXPECT_EQ(render_value(value(state), RenderStyle::binary), "10100.0011");
    EXPECT_EQ(render_value(value(state), RenderStyle::decimal), "20.1875");
}

TEST(LatticeLiteral, SignsKindsAndVacuum) {
    const auto state = parse_state("a-@3 b+@-12 b-@0");
    EXPECT_EQ(render_lattice(state), "1₋,₃i₋,₀i₋₁₂");
    EXPECT_EQ(parse_lattice(render_lattice(state)), state);
    EXPECT_EQ(render_lattice(Occ::vacuum()), "0");
    EXPECT_TRUE(parse_lattice("0").is_vacuum());
    EXPECT_THROW((void)parse_lattice("1"), ParseError);
    EXPECT_THROW((void)parse_lattice("2₀"), ParseError);
}

TEST(LatticeLiteral, RoundTripsRandomStates) {
    gen::Rng rng(13);
    for (int i = 0; i < 500; ++i) {
        const auto s = gen::occupation(rng, {4, 3, -20, 20});
        ASSERT_EQ(parse_lattice(render_lattice(s)), s);
    }
}

TEST(RenderStyle, BinaryRefusesNonstandard) {
    const auto s = parse_state("a+@0^2");
    EXPECT_THROW((void)render_state_as(s, RenderStyle::binary), NotStandardError);
    EXPECT_EQ(render_state_as(s, RenderStyle::binary, true), "10");
    EXPECT_EQ(render_state_as(s, RenderStyle::fraction), "2");
    EXPECT_EQ(render_state_as(s, RenderStyle::occupation), "a+@0^2");
    EXPECT_EQ(render_state_as(Occ::vacuum(), RenderStyle::qubit), "|0⟩");
    EXPECT_EQ(parse_style("lattice"), RenderStyle::lattice);
    EXPECT_THROW((void)parse_style("hex"), ParseError);
}

TEST(SuperpositionLiteral, Parses) {
    const auto x = parse_superposition("1/sqrt(2)(a+@0) + 1/sqrt(2)(10)");
    ASSERT_EQ(x.size(), 2u);
    EXPECT_TRUE(x.is_normalized());
    EXPECT_NEAR(x.terms().at(parse_state("a+@1")).real(), std::sqrt(0.5), 1e-15);
    const auto y = parse_superposition("(vacuum)");
    EXPECT_EQ(y.terms().at(Occ::vacuum()), Amplitude(1.0));
    const auto z = parse_superposition("0.6(1) - 0.8(i1)");
    EXPECT_NEAR(z.terms().at(parse_state("b+@0")).real(), -0.8, 1e-15);
    EXPECT_TRUE(z.is_normalized());
}

TEST(SuperpositionLiteral, Errors) {
    EXPECT_THROW((void)parse_superposition(""), ParseError);
    EXPECT_THROW((void)parse_superposition("(1) (10)"), ParseError);
    EXPECT_THROW((void)parse_superposition("0.5(1"), ParseError);
    EXPECT_THROW((void)parse_superposition("x(1)"), ParseError);
    EXPECT_THROW((void)parse_superposition("1/sqrt(-2)(1)"), ParseError);
}

TEST(StepLiteral, RoundTrips) {
    const std::vector<RewriteStep> steps = {
        {Rule::cancel, Kind::a, Sign::plus, 5, 0, 1},
        {Rule::carry, Kind::a, Sign::plus, 0, 0, 3},
        {Rule::borrow, Kind::b, Sign::minus, 4, 3, 1},
    };
    EXPECT_EQ(render_step(steps[0]), "cancel a@5");
    EXPECT_EQ(render_step(steps[1]), "carry a+@0 x3");
    EXPECT_EQ(render_step(steps[2]), "borrow b-@4 b+@3");
    for (const auto& s : steps) {
        const auto back = parse_step(render_step(s));
        EXPECT_EQ(back.rule, s.rule);
        EXPECT_EQ(back.kind, s.kind);
        EXPECT_EQ(back.site, s.site);
        EXPECT_EQ(back.times, s.times);
        if (s.rule != Rule::cancel) {
            EXPECT_EQ(back.sign, s.sign);
        }
        if (s.rule == Rule::borrow) {
            EXPECT_EQ(back.low_site, s.low_site);
        }
    }
    EXPECT_THROW((void)parse_step("swap a@1"), ParseError);
}
