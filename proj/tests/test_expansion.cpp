#include "support.hpp"

using namespace qbary;
using namespace qbary::testing;

TEST(QuantizedBarycenter, F1CaptionValues)
{
    Polytope p = fixture("f1");
    EXPECT_EQ(quantized_barycenter(p, 1), qv({q(1, 9), q(1, 9)}));
    EXPECT_EQ(quantized_barycenter(p, 2), qv({q(1, 10), q(1, 10)}));
    EXPECT_EQ(quantized_barycenter(p, 3), qv({q(2, 21), q(2, 21)}));
}

TEST(QuantizedBarycenter, SymmetricIsZero)
{
    for (std::int64_t k = 1; k <= 4; ++k)
        EXPECT_EQ(quantized_barycenter(fixture("cube2"), k), qv({0, 0}));
}

TEST(QuantizedBarycenter, Fano329AtTwo)
{
    EXPECT_EQ(quantized_barycenter(fixture("fano-3-29"), 2), qv({q(51, 260), q(-99, 260), q(24, 260)}));
}

TEST(QuantizedBarycenter, AgreesWithBruteForce)
{
    std::mt19937 rng(3);
    for (int trial = 0; trial < 12; ++trial) {
        Polytope p = random_polytope(rng, 2 + trial % 2);
        for (std::int64_t k = 1; k <= 3; ++k)
            EXPECT_EQ(quantized_barycenter(p, k), brute_barycenter(p, k));
    }
}

TEST(Rooftop, SegmentQuadrilateral)
{
    Polytope p = hull_from_vertices({{-1}, {1}});
    Polytope r = rooftop(p, {1}, 2);
    EXPECT_EQ(r.vertices(), (std::vector<LatticeVector>{{-1, 0}, {-1, 1}, {1, 0}, {1, 3}}));
}

TEST(Rooftop, ZeroDirectionIsPrism)
{
    Polytope p = fixture("f1");
    Polytope r = rooftop(p, {0, 0}, 1);
    EXPECT_EQ(measure(r).volume, measure(p).volume);
    EXPECT_EQ(r.facets().size(), p.facets().size() + 2);
}

TEST(Rooftop, F1SlabCount)
{
    Polytope p = fixture("f1");
    Polytope r = rooftop(p, {1, 0}, 2);
    EXPECT_EQ(r.facets().size(), 6u);
    for (std::int64_t k = 1; k <= 3; ++k) {
        LatticeSums s = lattice_point_sums(p, k);
        EXPECT_EQ(count_points(r, k), (2 * k + 1) * s.count + s.coordinate_sums[0]);
    }
}

TEST(Rooftop, OffsetTooSmall)
{
    EXPECT_EQ(kind_of([] { rooftop(fixture("p2"), {1, 0}, 1); }), ErrorKind::PreconditionViolation);
    EXPECT_EQ(canonical_rooftop_offset(fixture("p2"), {1, 0}), 2);
}

TEST(BarycenterFunction, F1Coordinate)
{
    BarycenterFunction bf = barycenter_function(fixture("f1"));
    EXPECT_EQ(bf.denominator(), (Polynomial{1, 4, 4}));
    EXPECT_EQ(bf.numerator(0), (Polynomial{q(1, 6), q(1, 2), q(1, 3)}));
    EXPECT_EQ(bf(1), qv({q(1, 9), q(1, 9)}));
}

TEST(BarycenterFunction, ZeroForSymmetricAndP2)
{
    for (const char* name : {"cube2", "p2"}) {
        BarycenterFunction bf = barycenter_function(fixture(name));
        for (std::size_t i = 0; i < 2; ++i)
            EXPECT_TRUE(bf.numerator(i).is_zero()) << name;
    }
}

TEST(BarycenterFunction, EvaluationMatchesEnumeration)
{
    std::mt19937 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        Polytope p = random_polytope(rng, 2 + trial % 2);
        BarycenterFunction bf = barycenter_function(p);
        for (std::int64_t k = 1; k <= 5; ++k)
            EXPECT_EQ(bf(k), brute_barycenter(p, k));
    }
}

TEST(Asymptotics, F1)
{
    auto a = asymptotic_coefficients(fixture("f1"), 3);
    EXPECT_EQ(a[0], qv({q(1, 12), q(1, 12)}));
    EXPECT_EQ(a[1], qv({q(1, 24), q(1, 24)}));
    EXPECT_EQ(a[2], qv({q(-1, 48), q(-1, 48)}));
}

TEST(Asymptotics, VanishForP2AndSymmetric)
{
    for (const char* name : {"p2", "cube2", "cube3"}) {
        Polytope p = fixture(name);
        for (const auto& a : asymptotic_coefficients(p, 4))
            EXPECT_EQ(a, RationalVector(p.dim())) << name;
    }
}

TEST(Asymptotics, ReflexiveFirstOrderIsHalfBarycenter)
{
    for (const char* name : {"f1", "blowup-p1xp1", "dp6", "fano-3-29"}) {
        Polytope p = fixture(name);
        EXPECT_EQ(a1_closed_form(p), q(1, 2) * measure(p).barycenter) << name;
    }
    EXPECT_EQ(a1_closed_form(fixture("f1")), qv({q(1, 24), q(1, 24)}));
    EXPECT_EQ(a1_closed_form(fixture("p2")), qv({0, 0}));
}

TEST(ReflexivePolygon, Blowup)
{
    Polytope p = fixture("blowup-p1xp1");
    EXPECT_EQ(reflexive_polygon_bck(p, 1), qv({q(-1, 8), q(-1, 8)}));
    EXPECT_EQ(reflexive_polygon_bck(p, 3), qv({q(-14, 129), q(-14, 129)}));
    EXPECT_EQ(reflexive_polygon_bck(fixture("p2"), 5), qv({0, 0}));
    EXPECT_EQ(kind_of([&] { reflexive_polygon_bck(fixture("unit-square"), 1); }), ErrorKind::Unsupported);
}

TEST(Stabilization, Verdicts)
{
    StabilizationVerdict p2 = stabilization_check(fixture("p2"), {1, 2, 3});
    EXPECT_TRUE(p2.stabilizes);
    EXPECT_EQ(p2.constant, qv({0, 0}));
    StabilizationVerdict f1 = stabilization_check(fixture("f1"), {1, 2, 3});
    EXPECT_FALSE(f1.stabilizes);
    ASSERT_TRUE(f1.witness.has_value());
    EXPECT_EQ(*f1.witness, std::make_pair(std::int64_t{1}, std::int64_t{2}));
    StabilizationVerdict cube = stabilization_check(fixture("cube3"), {1, 2, 3, 4});
    EXPECT_TRUE(cube.stabilizes);
    EXPECT_EQ(cube.constant, qv({0, 0, 0}));
}

TEST(Stabilization, InsufficientSamples)
{
    EXPECT_EQ(kind_of([] { stabilization_check(fixture("f1"), {1, 2}); }), ErrorKind::InsufficientSamples);
}

TEST(Colinearity, Examples)
{
    Polytope fano = fixture("fano-3-29");
    std::vector<RationalVector> fano_bc{quantized_barycenter(fano, 1), quantized_barycenter(fano, 2),
                                        quantized_barycenter(fano, 3)};
    EXPECT_FALSE(colinearity_check(fano_bc));
    Polytope f1 = fixture("f1");
    EXPECT_TRUE(colinearity_check({quantized_barycenter(f1, 1), quantized_barycenter(f1, 2),
                                   quantized_barycenter(f1, 3)}));
    EXPECT_TRUE(colinearity_check({qv({0, 0}), qv({0, 0})}));
}

TEST(DF, Examples)
{
    EXPECT_EQ(df_coefficients(fixture("f1"), {1, 1}, 3), (std::vector<Rational>{q(1, 6), q(1, 12), q(-1, 24)}));
    EXPECT_EQ(df_coefficients(fixture("p2"), {1, 2}, 4), std::vector<Rational>(4));
    EXPECT_EQ(df_coefficients(fixture("blowup-p1xp1"), {0, 0}, 3), std::vector<Rational>(3));
}
