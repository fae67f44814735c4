#include "fockrat/dyadic.hpp"

#include "oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace fockrat;

namespace {

Dyadic frac(long long num, Site exp) { return Dyadic(BigInt(num), exp); }

GaussianDyadic gd(const Dyadic& re, const Dyadic& im) { return {re, im}; }

} // namespace

TEST(Dyadic, CanonicalFormStripsTrailingZeros) {
    const Dyadic x(BigInt(12), -4); // 12/16 = 3/4
    EXPECT_EQ(x.numerator(), 3);
    EXPECT_EQ(x.exponent(), -2);
    const Dyadic zero(BigInt(0), 17);
    EXPECT_EQ(zero.exponent(), 0);
    EXPECT_EQ(Dyadic(x.numerator(), x.exponent()), x);
}

TEST(Dyadic, OrderAgreesWithValue) {
    EXPECT_LT(frac(3, -2), frac(1, 0));
    EXPECT_LT(frac(-1, 5), frac(-1, 4));
    EXPECT_EQ(frac(2, 0), frac(1, 1));
    EXPECT_GT(frac(1, -100), Dyadic{});
}

TEST(Dyadic, AddIdentity) {
    const auto x = gd(frac(11, -2), frac(-15, -1));
    EXPECT_EQ(dy_add(x, {}), x);
}

TEST(Dyadic, AddPowers) {
    const auto x = gd(frac(8, 0), {});
    const auto y = gd(frac(-4, 0), {});
    EXPECT_EQ(dy_add(x, y), gd(frac(4, 0), {}));
}

TEST(Dyadic, Negate) {
    EXPECT_EQ(dy_neg(gd(1, 1)), gd(-1, -1));
    EXPECT_EQ(dy_neg(GaussianDyadic{}), GaussianDyadic{});
    EXPECT_EQ(dy_neg(gd(frac(-3, -3), 5)), gd(frac(3, -3), -5));
}

TEST(Dyadic, FromPower) {
    EXPECT_EQ(dy_from_power(Sign::plus, 4, Axis::real), gd(16, 0));
    EXPECT_EQ(dy_from_power(Sign::minus, -2, Axis::real), gd(frac(-1, -2), 0));
    EXPECT_EQ(dy_from_power(Sign::minus, 3, Axis::imaginary), gd(0, -8));
}

TEST(Dyadic, StandardSitesOfWorkedValue) {
    // 255/64 = 11.111111 in binary; long division confirms the site set.
    const auto x = gd(frac(255, -6), -8);
    const auto f = dy_to_standard_sites(x);
    EXPECT_EQ(f.alpha, Sign::plus);
    EXPECT_EQ(f.s, (SiteSet{1, 0, -1, -2, -3, -4, -5, -6}));
    EXPECT_EQ(f.beta, Sign::minus);
    EXPECT_EQ(f.t, (SiteSet{3}));
    EXPECT_EQ(f, oracle::standard_form(oracle::to_rational(x)));
}

TEST(Dyadic, StandardSitesOfZeroIsVacuum) {
    const auto f = dy_to_standard_sites({});
    EXPECT_TRUE(f.is_vacuum());
    EXPECT_EQ(f.alpha, Sign::plus);
    EXPECT_EQ(f.beta, Sign::plus);
}

TEST(Dyadic, StandardSitesOfTwenty) {
    const auto f = dy_to_standard_sites(gd(16 + 4, 0));
    EXPECT_EQ(f.s, (SiteSet{4, 2}));
    EXPECT_TRUE(f.t.empty());
}

TEST(Dyadic, StandardValueAllQuadrants) {
    const SiteSet s{2, 0}, t{1};
    for (Sign alpha : {Sign::plus, Sign::minus}) {
        for (Sign beta : {Sign::plus, Sign::minus}) {
            const auto v = standard_value({alpha, s, beta, t});
            EXPECT_EQ(v.re, Dyadic(5 * to_int(alpha)));
            EXPECT_EQ(v.im, Dyadic(2 * to_int(beta)));
        }
    }
}

TEST(Dyadic, RenderBinaryAndDecimal) {
    const Dyadic x = frac(255, -6);
    EXPECT_EQ(render(x, 2), "11.111111");
    EXPECT_EQ(render(x, 10), "3.984375");
    EXPECT_EQ(render(frac(-1, -3), 10), "-0.125");
    EXPECT_EQ(render(frac(-1, -3), 2), "-0.001");
    EXPECT_EQ(render(frac(5, 3), 2), "101000");
    EXPECT_EQ(render(Dyadic{}, 2), "0");
    EXPECT_EQ(render_fraction(frac(11, -2)), "11/4");
    EXPECT_EQ(render_fraction(frac(-3, 2)), "-12");
    EXPECT_THROW((void)render(x, 16), std::invalid_argument);
}

TEST(Dyadic, ExponentOverflowIsReported) {
    const Site top = std::numeric_limits<Site>::max();
    EXPECT_THROW((void)Dyadic(BigInt(2), top), std::overflow_error);
    EXPECT_THROW((void)(Dyadic::power_of_two(top) + Dyadic::power_of_two(std::numeric_limits<Site>::min())),
                 std::overflow_error);
}

TEST(Dyadic, ToDouble) {
    EXPECT_DOUBLE_EQ(frac(255, -6).to_double(), 3.984375);
    EXPECT_DOUBLE_EQ(Dyadic(BigInt(1) << 200, -200).to_double(), 1.0);
}

class DyadicProperty : public ::testing::Test {
protected:
    std::mt19937_64 rng{20240611};

    Dyadic random_dyadic() {
        std::uniform_int_distribution<std::uint64_t> bits;
        std::uniform_int_distribution<Site> exp(-32, 32);
        std::bernoulli_distribution neg(0.5);
        BigInt n = bits(rng);
        if (neg(rng))
            n = -n;
        return Dyadic(n, exp(rng));
    }
};

TEST_F(DyadicProperty, CanonicalizationIdempotent) {
    for (int i = 0; i < 1000; ++i) {
        const Dyadic x = random_dyadic();
        const Dyadic again(x.numerator(), x.exponent());
        EXPECT_EQ(again.numerator(), x.numerator());
        EXPECT_EQ(again.exponent(), x.exponent());
    }
}

TEST_F(DyadicProperty, StandardSitesRoundTrip) {
    for (int i = 0; i < 10000; ++i) {
        const GaussianDyadic x{random_dyadic(), random_dyadic()};
        const auto f = dy_to_standard_sites(x);
        GaussianDyadic rebuilt;
        for (Site j : f.s)
            rebuilt += dy_from_power(f.alpha, j, Axis::real);
        for (Site j : f.t)
            rebuilt += dy_from_power(f.beta, j, Axis::imaginary);
        ASSERT_EQ(rebuilt, x);
    }
}

TEST_F(DyadicProperty, AdditionAssociativeAndCommutative) {
    for (int i = 0; i < 2000; ++i) {
        const GaussianDyadic x{random_dyadic(), random_dyadic()};
        const GaussianDyadic y{random_dyadic(), random_dyadic()};
        const GaussianDyadic z{random_dyadic(), random_dyadic()};
        ASSERT_EQ(dy_add(x, y), dy_add(y, x));
        ASSERT_EQ(dy_add(dy_add(x, y), z), dy_add(x, dy_add(y, z)));
        ASSERT_EQ(oracle::to_rational(dy_add(x, y)).re, oracle::to_rational(x).re + oracle::to_rational(y).re);
    }
}
