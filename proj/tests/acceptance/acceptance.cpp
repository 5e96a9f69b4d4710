// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qbary/qbary.hpp"

using namespace qbary;

namespace {

Rational q(long p, long d = 1) { return Rational(p) / Rational(d); }

Polytope fixture(const std::string& name)
{
    return io::document_polytope(io::load_polytope_document(std::string(QBARY_FIXTURES) + "/" + name + ".json"));
}

ToricData fixture_toric(const std::string& name)
{
    return io::document_toric_data(io::load_polytope_document(std::string(QBARY_FIXTURES) + "/" + name + ".json"));
}

const std::vector<std::string> kFixtures{"p2",    "f1",    "blowup-p1xp1", "fano-3-29", "cube2",
                                         "cube3", "dp6",   "unit-square",  "square-reflexive-nondelzant",
                                         "square-delzant-nonreflexive"};
const std::vector<std::string> kPlanar{"p2",  "f1", "blowup-p1xp1", "cube2", "dp6", "unit-square",
                                       "square-reflexive-nondelzant", "square-delzant-nonreflexive"};
const std::vector<std::string> kDelPezzo{"p2", "f1", "cube2", "blowup-p1xp1", "dp6"};

/// Collects failed checks of one criterion.
class Checker {
public:
    void operator()(bool ok, const std::string& what)
    {
        if (!ok)
            failures_.push_back(what);
    }
    bool ok() const { return failures_.empty(); }
    const std::vector<std::string>& failures() const { return failures_; }

private:
    std::vector<std::string> failures_;
};

std::string str(const RationalVector& v) { return to_string(v); }

/// Coordinate sums and count of kP by testing every point of the bounding box against the facets.
std::pair<Integer, std::vector<Integer>> brute_sums(const Polytope& p, std::int64_t k)
{
    const std::size_t n = p.dim();
    LatticeVector lo = p.vertices().front(), hi = lo;
    for (const auto& v : p.vertices())
        for (std::size_t i = 0; i < n; ++i) {
            lo[i] = std::min(lo[i], v[i]);
            hi[i] = std::max(hi[i], v[i]);
        }
    for (std::size_t i = 0; i < n; ++i)
        lo[i] *= k, hi[i] *= k;
    Integer count = 0;
    std::vector<Integer> sums(n);
    LatticeVector u = lo;
    while (true) {
        bool inside = true;
        for (const auto& f : p.facets()) {
            std::int64_t s = 0;
            for (std::size_t i = 0; i < n; ++i)
                s += u[i] * f.normal[i];
            if (s < -k * f.offset) {
                inside = false;
                break;
            }
        }
        if (inside) {
            ++count;
            for (std::size_t i = 0; i < n; ++i)
                sums[i] += u[i];
        }
        std::size_t i = 0;
        while (i < n && u[i] == hi[i])
            u[i] = lo[i], ++i;
        if (i == n)
            break;
        ++u[i];
    }
    return {count, sums};
}

/// Enumeration, reflexive-polygon closed form and rational function agree on the given values.
void three_routes(Checker& check, const std::string& name, const std::vector<RationalVector>& expected,
                  const RationalVector& limit)
{
    Polytope p = fixture(name);
    BarycenterFunction bf = barycenter_function(p);
    for (std::size_t i = 0; i < expected.size(); ++i) {
        const auto k = static_cast<std::int64_t>(i + 1);
        const std::string tag = name + " k=" + std::to_string(k);
        check(quantized_barycenter(p, k) == expected[i], tag + " enumeration " + str(quantized_barycenter(p, k)));
        check(reflexive_polygon_bck(p, k) == expected[i], tag + " closed form");
        check(bf(k) == expected[i], tag + " rational function");
    }
    check(measure(p).barycenter == limit, name + " barycenter " + str(measure(p).barycenter));
    check(asymptotic_coefficients(bf, p, 1)[0] == limit, name + " a_0");
}

void criterion_1(Checker& check)
{
    three_routes(check, "f1", {{q(1, 9), q(1, 9)}, {q(1, 10), q(1, 10)}, {q(2, 21), q(2, 21)}}, {q(1, 12), q(1, 12)});
}

void criterion_2(Checker& check)
{
    three_routes(check, "blowup-p1xp1", {{q(-1, 8), q(-1, 8)}, {q(-5, 44), q(-5, 44)}, {q(-14, 129), q(-14, 129)}},
                 {q(-2, 21), q(-2, 21)});
}

void criterion_3(Checker& check)
{
    ToricData t = fixture_toric("p2");
    const Polytope& p = t.polytope();
    FacetData f = facet_data(p);
    const Rational vol = measure(p).volume;
    check(f.boundary_normalized_volume == 9, "boundary volume");
    check(f.boundary_barycenter == RationalVector{0, 0}, "boundary barycenter");
    check(f.boundary_normalized_volume / vol == 2, "boundary to volume ratio");
    const std::vector<Rational> expected{1, q(9, 2), q(9, 2)};
    check(ehrhart_polynomial(p).poly == Polynomial(expected), "Ehrhart fit");
    check(hrr_coefficients(t).a == expected, "Bernoulli formula");
    for (std::int64_t k = 1; k <= 10; ++k) {
        check(quantized_barycenter(p, k) == RationalVector{0, 0}, "Bc_k at k=" + std::to_string(k));
        check(delta_k(t, k).value == 1, "delta_k at k=" + std::to_string(k));
    }
    check(rooftop_coefficients(t, {1, 0}, true).c_prime == std::vector<Rational>(3), "rooftop coefficients");
}

void criterion_4(Checker& check)
{
    Polytope p = fixture("f1");
    FacetData f = facet_data(p);
    check(f.boundary_normalized_volume == 8, "boundary volume");
    check(f.boundary_barycenter == RationalVector{q(1, 8), q(1, 8)}, "boundary barycenter");
    const RationalVector a1{q(1, 24), q(1, 24)};
    check(a1_closed_form(p) == a1, "closed form");
    check(asymptotic_coefficients(p, 2)[1] == a1, "Laurent coefficient");
    check(q(1, 2) * measure(p).barycenter == a1, "half the barycenter");
}

void criterion_5(Checker& check)
{
    Polytope p = fixture("fano-3-29");
    const std::vector<RationalVector> expected{{q(6, 28), q(-12, 28), q(3, 28)},
                                               {q(51, 260), q(-99, 260), q(24, 260)},
                                               {q(201, 1071), q(-387, 1071), q(93, 1071)}};
    std::vector<RationalVector> got;
    for (std::int64_t k = 1; k <= 3; ++k) {
        got.push_back(quantized_barycenter(p, k));
        check(got.back() == expected[k - 1], "Bc_" + std::to_string(k) + " " + str(got.back()));
    }
    check(!colinearity_check(got), "colinearity");
    check(reflexive_closed_form(p).poly == ehrhart_polynomial(p).poly, "reflexive Ehrhart form");
}

void criterion_6(Checker& check)
{
    for (const auto& name : kFixtures) {
        Polytope p = fixture(name);
        ReciprocityReport r = reciprocity_check(p, 4);
        const bool reflexive = classify(p).reflexive;
        for (const auto& e : r.entries) {
            const std::string tag = name + " k=" + std::to_string(e.k);
            check(e.general, tag + " general");
            check(e.reflexive.has_value() == reflexive, tag + " reflexive variant gating");
            if (e.reflexive)
                check(*e.reflexive, tag + " reflexive");
        }
    }
}

void criterion_7(Checker& check)
{
    std::mt19937 rng(20240611);
    std::uniform_int_distribution<int> coord(-3, 3);
    std::size_t corpus = 0;
    for (std::size_t n : {2, 3}) {
        std::uniform_int_distribution<int> size(static_cast<int>(n) + 1, static_cast<int>(n) + 4);
        std::size_t made = 0;
        while (made < 30) {
            std::vector<LatticeVector> pts(static_cast<std::size_t>(size(rng)), LatticeVector(n));
            for (auto& x : pts)
                for (auto& c : x)
                    c = coord(rng);
            if (detail::affine_dimension(pts) != static_cast<int>(n))
                continue;
            ++made;
            Polytope p = hull_from_vertices(pts);
            const std::string tag = "n=" + std::to_string(n) + " #" + std::to_string(made);
            BarycenterFunction bf = barycenter_function(p);
            auto a = asymptotic_coefficients(bf, p, 2);
            check(a[0] == measure(p).barycenter, tag + " a_0");
            FacetData f = facet_data(p);
            MeasureData m = measure(p);
            check(a[1] == (f.boundary_normalized_volume / (2 * m.volume)) * (f.boundary_barycenter - m.barycenter),
                  tag + " a_1");
            for (std::int64_t k = 1; k <= 5; ++k) {
                auto [count, sums] = brute_sums(p, k);
                RationalVector direct;
                for (const auto& s : sums)
                    direct.push_back(Rational(s, count * k));
                check(bf(k) == direct, tag + " rational function at k=" + std::to_string(k));
                for (std::size_t i = 0; i < n; ++i)
                    check(bf.numerator(i)(k) * k == Rational(sums[i]), tag + " numerator division");
            }
            for (std::size_t i = 0; i < n; ++i)
                check(bf.numerator(i).degree() <= static_cast<int>(n), tag + " numerator degree");
        }
        corpus += made;
    }
    check(corpus >= 50, "corpus size");
}

void criterion_8(Checker& check)
{
    ToricData f1 = fixture_toric("f1");
    check(delta_k(f1, 1).value == q(9, 11), "F1 delta_1");
    check(delta_k(f1, 2).value == q(5, 6), "F1 delta_2");
    check(delta(f1).value == q(6, 7), "F1 delta");
    ToricData blowup = fixture_toric("blowup-p1xp1");
    check(delta_k(blowup, 1).value == q(4, 5), "blowup delta_1");
    check(delta(blowup).value == q(21, 25), "blowup delta");
    for (const auto& name : kDelPezzo) {
        ToricData t = fixture_toric(name);
        for (std::int64_t k = 1; k <= 6; ++k)
            check(del_pezzo_closed_form(t, k) == delta_k(t, k).value, name + " closed form k=" + std::to_string(k));
    }
    for (const auto& name : kFixtures) {
        ToricData t = fixture_toric(name);
        if (!t.reflexive())
            continue;
        DeltaValue lim = delta(t);
        const Polytope& p = t.polytope();
        MeasureData m = measure(p);
        FacetData f = facet_data(p);
        std::optional<Rational> best;
        for (auto i : lim.argmin) {
            Rational x = dot(f.boundary_barycenter - m.barycenter, t.rays()[i]);
            if (!best || x > *best)
                best = x;
        }
        const Rational general = -lim.value * lim.value * f.boundary_normalized_volume / (2 * m.volume) * *best;
        const Rational fano = -lim.value * (1 - lim.value) / 2;
        check(general == fano, name + " first-order formulas");
        DeltaSequence s = delta_sequence(t, {1, 2, 3}, 2);
        check(s.asymptotics.coefficients[1] == fano, name + " first-order expansion");
    }
}

void criterion_9(Checker& check)
{
    for (const char* name : {"p2", "f1", "blowup-p1xp1", "unit-square", "cube2"}) {
        ToricData t = fixture_toric(name);
        const Polytope& p = t.polytope();
        const Polynomial e = ehrhart_polynomial(p).poly;
        check(Polynomial(hrr_coefficients(t, false).a) == e, std::string(name) + " Bernoulli formula");
        BarycenterFunction bf = barycenter_function(p);
        for (const LatticeVector& v : std::vector<LatticeVector>{{1, 0}, {0, 1}, {1, 1}}) {
            const std::string tag = std::string(name) + " v=" + to_string(v);
            RooftopCoefficients r = rooftop_coefficients(t, v);
            for (std::int64_t extra = 1; extra <= 2; ++extra)
                check(detail::rooftop_c_prime(p, e, v, r.q + extra) == r.c_prime, tag + " q-independence");
            // sum c'_{j+1} k^j = <Bc_k, v> E_P(k)
            check(Polynomial(r.c_prime) == bf.pairing_numerator(v), tag + " polynomial identity");
            for (std::int64_t k = 1; k <= 4; ++k)
                check(Polynomial(r.c_prime)(k) == dot(quantized_barycenter(p, k), v) * e(k), tag + " evaluation");
        }
    }
}

void criterion_10(Checker& check)
{
    const std::size_t order = 5;
    for (const auto& name : kFixtures) {
        Polytope p = fixture(name);
        const std::size_t n = p.dim();
        BarycenterFunction bf = barycenter_function(p);
        auto a = asymptotic_coefficients(bf, p, 2);
        LatticeVector e1(n, 0), ones(n, 1);
        e1[0] = 1;
        for (const auto& v : {e1, ones}) {
            auto df = df_coefficients(bf, v, order);
            check(df[0] == dot(measure(p).barycenter, v), name + " DF_0 v=" + to_string(v));
            check(df[1] == dot(a[1], v), name + " DF_1 v=" + to_string(v));
            if (name == "p2")
                check(df == std::vector<Rational>(order), name + " DF vanish");
        }
        auto sum = df_coefficients(bf, e1 + ones, order);
        auto x = df_coefficients(bf, e1, order);
        auto y = df_coefficients(bf, ones, order);
        for (std::size_t j = 0; j < order; ++j)
            check(sum[j] == x[j] + y[j], name + " linearity");
        auto scaled = df_coefficients(bf, LatticeVector(n, -3), order);
        for (std::size_t j = 0; j < order; ++j)
            check(scaled[j] == -3 * y[j], name + " homogeneity");
    }
}

void criterion_11(Checker& check)
{
    for (const auto& name : kPlanar) {
        Polytope p = fixture(name);
        const RationalVector b1 = quantized_barycenter(p, 1);
        const bool equal = b1 == quantized_barycenter(p, 2) && b1 == quantized_barycenter(p, 3);
        StabilizationVerdict v = stabilization_check(p, {1, 2, 3});
        check(v.stabilizes == equal, name + " verdict");
        if (!equal)
            continue;
        BarycenterFunction bf = barycenter_function(p);
        const RationalVector bc = measure(p).barycenter;
        for (std::size_t i = 0; i < 2; ++i)
            check(bf.numerator(i) == bc[i] * bf.denominator(), name + " constant function");
        check(v.constant == bc, name + " constant value");
    }
    StabilizationVerdict f1 = stabilization_check(fixture("f1"), {1, 2, 3});
    check(!f1.stabilizes && f1.witness.has_value(), "F1 non-constant");
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<void(Checker&)>>> criteria{
        {"F1 quantized barycenters by three routes", criterion_1},
        {"blow-up of P1xP1 quantized barycenters by three routes", criterion_2},
        {"P2 boundary data, coefficients, Bc_k, delta_k and rooftop coefficients", criterion_3},
        {"F1 boundary data and first-order coefficient", criterion_4},
        {"Fano 3-fold 3.29 quantized barycenters, non-colinearity, Ehrhart form", criterion_5},
        {"reciprocity on all fixtures", criterion_6},
        {"expansion properties on a random corpus", criterion_7},
        {"delta_k values, del Pezzo closed form, first-order Fano term", criterion_8},
        {"Delzant coefficient cross-validation", criterion_9},
        {"DF coefficients", criterion_10},
        {"stabilization dichotomy", criterion_11},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Checker check;
        std::string error;
        try {
            criteria[i].second(check);
        } catch (const std::exception& e) {
            error = e.what();
        }
        const bool ok = check.ok() && error.empty();
        std::cout << (ok ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << "\n";
        for (const auto& f : check.failures())
            std::cout << "    failed: " << f << "\n";
        if (!error.empty())
            std::cout << "    error: " << error << "\n";
        failed += ok ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
