#include "treeid/quadext.hpp"

#include <gtest/gtest.h>

#include "treeid/rng.hpp"

using treeid::make_rational;
using treeid::QuadExt;
using treeid::Rational;
using treeid::SplitMix64;

namespace {

QuadExt random_value(SplitMix64& rng, const Rational& d) {
    Rational u = make_rational(rng.range(-40, 40), rng.range(1, 9));
    Rational v = make_rational(rng.range(-40, 40), rng.range(1, 9));
    return QuadExt(u, v, d);
}

TEST(Rational, ParseAndSquare) {
    EXPECT_EQ(treeid::parse_rational("3/12"), make_rational(1, 4));
    EXPECT_EQ(treeid::to_string(make_rational(-6, 4)), "-3/2");
    EXPECT_THROW(treeid::parse_rational("1/0"), std::invalid_argument);
    EXPECT_THROW(treeid::parse_rational("abc"), std::invalid_argument);
    EXPECT_TRUE(treeid::is_perfect_square(make_rational(9, 16)));
    EXPECT_FALSE(treeid::is_perfect_square(make_rational(2)));
    EXPECT_FALSE(treeid::is_perfect_square(make_rational(-4)));
    EXPECT_EQ(*treeid::exact_sqrt(make_rational(9, 16)), make_rational(3, 4));
}

TEST(QuadExt, NormalFormFoldsPerfectSquares) {
    QuadExt x(Rational(1), Rational(2), Rational(9));  // 1 + 2*sqrt(9) = 7
    EXPECT_TRUE(x.is_rational());
    EXPECT_EQ(x.rational(), Rational(7));

    QuadExt y(Rational(0), Rational(0), Rational(5));  // v = 0 clears d
    EXPECT_TRUE(y.is_zero());

    QuadExt z = QuadExt::sqrt_of(QuadExt(make_rational(4, 9)));
    EXPECT_EQ(z.rational(), make_rational(2, 3));
}

TEST(QuadExt, RescalesCompatibleRadicands) {
    QuadExt a(Rational(0), Rational(1), Rational(8));   // sqrt(8)
    QuadExt b(Rational(0), Rational(1), Rational(2));   // sqrt(2)
    QuadExt sum = a + b;                                // 3 sqrt(2)
    EXPECT_EQ(sum, QuadExt(Rational(0), Rational(3), Rational(2)));
    EXPECT_EQ(a, QuadExt(Rational(0), Rational(2), Rational(2)));
    QuadExt c(Rational(0), Rational(1), Rational(3));
    EXPECT_THROW(a + c, treeid::UnsupportedExpression);
}

TEST(QuadExt, SignAndZero) {
    QuadExt x(Rational(-3), Rational(2), Rational(2));  // 2 sqrt(2) < 3
    EXPECT_EQ(x.sign(), -1);
    QuadExt y(Rational(-2), Rational(2), Rational(2));  // 2 sqrt(2) > 2
    EXPECT_EQ(y.sign(), 1);
    EXPECT_TRUE((x - x).is_zero());
    EXPECT_THROW(QuadExt::sqrt_of(QuadExt(Rational(-1))), treeid::InvalidModelPoint);
    EXPECT_THROW(QuadExt::sqrt_of(x), treeid::UnsupportedExpression);
    EXPECT_THROW(x / QuadExt(), treeid::DegenerateEvaluation);
}

// Field laws spot-checked by randomized identities in Q(sqrt(d)).
TEST(QuadExt, FieldLaws) {
    SplitMix64 rng(991);
    const Rational ds[] = {Rational(2), Rational(5), make_rational(3, 7)};
    for (int iter = 0; iter < 200; ++iter) {
        const Rational& d = ds[iter % 3];
        QuadExt x = random_value(rng, d);
        QuadExt y = random_value(rng, d);
        QuadExt z = random_value(rng, d);
        EXPECT_EQ((x + y) + z, x + (y + z));
        EXPECT_EQ((x * y) * z, x * (y * z));
        EXPECT_EQ(x * (y + z), x * y + x * z);
        if (!y.is_zero()) EXPECT_EQ((x * y) / y, x);
        EXPECT_TRUE((x - x).is_zero());
    }
}

}  // namespace
