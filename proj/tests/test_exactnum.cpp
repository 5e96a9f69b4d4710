#include <gtest/gtest.h>

#include <random>

#include "qbary/exactnum.hpp"

using namespace qbary;

namespace {

Rational q(long p, long d = 1) { return Rational(p) / Rational(d); }

} // namespace

TEST(Rational, CanonicalForm)
{
    Rational r = q(6, -4);
    EXPECT_EQ(numerator_of(r), -3);
    EXPECT_EQ(denominator_of(r), 2);
    EXPECT_EQ(to_string(r), "-3/2");
    EXPECT_EQ(to_string(q(4, 2)), "2");
    EXPECT_EQ(parse_rational("10/-4"), q(-5, 2));
    EXPECT_EQ(parse_rational(" 7 "), q(7));
}

TEST(Rational, ParseRejectsGarbage)
{
    EXPECT_THROW(parse_rational("1/0"), Error);
    EXPECT_THROW(parse_rational("abc"), Error);
    EXPECT_THROW(parse_rational(""), Error);
}

TEST(Rational, FieldAxiomsOnRandomValues)
{
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> num(-50, 50), den(1, 30);
    for (int t = 0; t < 200; ++t) {
        Rational a = q(num(rng), den(rng)), b = q(num(rng), den(rng)), c = q(num(rng), den(rng));
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_GT(denominator_of(a * b), 0);
    }
}

TEST(PolyFit, ThreeSamplesQuadratic)
{
    Polynomial p = poly_fit({{0, 1}, {1, 10}, {2, 28}});
    EXPECT_EQ(p, (Polynomial{1, q(9, 2), q(9, 2)}));
}

TEST(PolyFit, ConstantAndLinear)
{
    EXPECT_EQ(poly_fit({{0, q(3, 7)}}), Polynomial::constant(q(3, 7)));
    EXPECT_EQ(poly_fit({{0, 1}, {1, 3}, {2, 5}}), (Polynomial{1, 2}));
}

TEST(PolyFit, DuplicateAbscissa)
{
    try {
        poly_fit({{1, 1}, {1, 2}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidInput);
    }
}

TEST(PolyFit, HeldOutSamplesReproduced)
{
    std::mt19937 rng(11);
    std::uniform_int_distribution<long> c(-9, 9);
    for (int t = 0; t < 30; ++t) {
        Polynomial truth{q(c(rng), 3), q(c(rng), 2), q(c(rng)), q(c(rng), 5)};
        std::vector<Sample> s;
        for (std::int64_t k = -1; k <= 2; ++k)
            s.push_back({k, truth(k)});
        Polynomial fit = poly_fit(s);
        for (std::int64_t k = -5; k <= 9; ++k)
            EXPECT_EQ(fit(k), truth(k));
    }
}

TEST(PolynomialOps, DivmodAndGcd)
{
    Polynomial a{-1, 0, 1}; // k^2 - 1
    Polynomial b{1, 1};     // k + 1
    auto [quot, rem] = divmod(a, b);
    EXPECT_EQ(quot, (Polynomial{-1, 1}));
    EXPECT_TRUE(rem.is_zero());
    EXPECT_EQ(gcd(a * Polynomial{2, 1}, Polynomial{3, 3} * Polynomial{2, 1}), (Polynomial{2, 3, 1}));
}

TEST(RationalFunctionTest, ReducedWithMonicDenominator)
{
    RationalFunction f(Polynomial{1, 3, 2}, Polynomial{6, 24, 24});
    EXPECT_EQ(f.numerator(), (Polynomial{q(1, 12), q(1, 12)}));
    EXPECT_EQ(f.denominator(), (Polynomial{q(1, 2), 1}));
    EXPECT_EQ(f(1), q(1, 9));
    EXPECT_THROW(RationalFunction(Polynomial{1}, Polynomial{}), Error);
}

TEST(Laurent, F1CoordinateExpansion)
{
    RationalFunction f(Polynomial{1, 3, 2}, Polynomial{6, 24, 24});
    LaurentSeries s = laurent_expand(f, 3);
    EXPECT_EQ(s.coefficients, (std::vector<Rational>{q(1, 12), q(1, 24), q(-1, 48)}));
    EXPECT_EQ(f(1), q(1, 9));
}

TEST(Laurent, TrivialCases)
{
    EXPECT_EQ(laurent_expand(RationalFunction(Polynomial{0, 1}, Polynomial{0, 1}), 3).coefficients,
              (std::vector<Rational>{1, 0, 0}));
    EXPECT_EQ(laurent_expand(RationalFunction(Polynomial{1}, Polynomial{1, 1}), 3).coefficients,
              (std::vector<Rational>{0, 1, -1}));
    try {
        laurent_expand(RationalFunction(Polynomial{0, 0, 1}, Polynomial{1, 1}), 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotBoundedAtInfinity);
    }
}

TEST(Laurent, PrefixStable)
{
    RationalFunction f(Polynomial{3, -1, 2, 5}, Polynomial{1, 4, 0, 7});
    auto long_series = laurent_expand(f, 12);
    for (std::size_t m = 0; m < 12; ++m)
        EXPECT_EQ(long_series.truncated(m), laurent_expand(f, m));
}

TEST(Laurent, MatchesEvaluationAtLargeK)
{
    // f(k) - sum_{j<m} c_j k^-j = O(k^-m): scaled remainder stays bounded as k grows
    RationalFunction f(Polynomial{2, 1, 3}, Polynomial{5, 1, 2});
    auto s = laurent_expand(f, 4);
    for (long k : {1000L, 100000L}) {
        Rational partial = 0, kk = k;
        Rational power = 1;
        for (const auto& c : s.coefficients) {
            partial += c * power;
            power /= kk;
        }
        Rational scaled = (f(kk) - partial) * kk * kk * kk * kk;
        EXPECT_LT(abs(scaled), 10);
    }
}

TEST(Bernoulli, ToddConvention)
{
    EXPECT_EQ(bernoulli(0), 1);
    EXPECT_EQ(bernoulli(1), q(1, 2));
    EXPECT_EQ(bernoulli(2), q(1, 6));
    EXPECT_EQ(bernoulli(3), 0);
    EXPECT_EQ(bernoulli(4), q(-1, 30));
    EXPECT_EQ(bernoulli(4) / Rational(factorial(4)), q(-1, 720));
}

TEST(Bernoulli, MatchesSeriesInversion)
{
    // x / (1 - e^{-x}) = 1 / (sum_{m>=0} (-1)^m x^m / (m+1)!)
    const std::size_t N = 16;
    std::vector<Rational> d(N + 1), inv(N + 1);
    for (std::size_t m = 0; m <= N; ++m)
        d[m] = Rational(m % 2 ? -1 : 1) / Rational(factorial(m + 1));
    for (std::size_t j = 0; j <= N; ++j) {
        Rational acc = j == 0 ? Rational(1) : Rational(0);
        for (std::size_t i = 1; i <= j; ++i)
            acc -= d[i] * inv[j - i];
        inv[j] = acc / d[0];
    }
    auto b = bernoulli_numbers(N);
    for (std::size_t j = 0; j <= N; ++j)
        EXPECT_EQ(b[j] / Rational(factorial(j)), inv[j]) << "j=" << j;
}

TEST(Sturm, RootCountsAgreeWithKnownRoots)
{
    // (k-1)(k-3)(k+2)(k-7/2)
    Polynomial p = Polynomial{-1, 1} * Polynomial{-3, 1} * Polynomial{2, 1} * Polynomial{q(-7, 2), 1};
    EXPECT_EQ(count_roots_above(p, -10), 4);
    EXPECT_EQ(count_roots_above(p, 0), 3);
    EXPECT_EQ(count_roots_above(p, 2), 2);
    EXPECT_EQ(count_roots_above(p, 3), 1);
    EXPECT_EQ(count_roots_above(p, 4), 0);
    // repeated root counted once
    EXPECT_EQ(count_roots_above(Polynomial{-2, 1} * Polynomial{-2, 1}, 0), 1);
    EXPECT_EQ(count_roots_above(Polynomial{1, 0, 1}, -100), 0);
}
