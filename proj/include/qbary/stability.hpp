#pragma once

// Stability thresholds delta_k = min_i 1 / (<Bc_k, v_i> + b_i) and their limit.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "qbary/error.hpp"
#include "qbary/exactnum.hpp"
#include "qbary/expansion.hpp"
#include "qbary/lattice.hpp"
#include "qbary/polytope.hpp"
#include "qbary/toricrr.hpp"

namespace qbary {

struct DeltaValue {
    Rational value;
    std::vector<std::size_t> argmin; // ray indices attaining the minimum
};

namespace detail {

inline DeltaValue delta_from_point(const ToricData& t, const RationalVector& point)
{
    DeltaValue out;
    Rational best_den;
    for (std::size_t i = 0; i < t.rays().size(); ++i) {
        Rational den = dot(point, t.rays()[i]) + t.offsets()[i];
        require(den > 0, ErrorKind::InvalidPolarization,
                "non-positive denominator at ray " + to_string(t.rays()[i]));
        if (out.argmin.empty() || den > best_den) {
            best_den = den;
            out.argmin = {i};
        } else if (den == best_den) {
            out.argmin.push_back(i);
        }
    }
    out.value = 1 / best_den;
    return out;
}

} // namespace detail

inline DeltaValue delta_k(const ToricData& t, std::int64_t k)
{
    return detail::delta_from_point(t, quantized_barycenter(t.polytope(), k));
}

inline DeltaValue delta(const ToricData& t) { return detail::delta_from_point(t, measure(t.polytope()).barycenter); }

struct DeltaSequence {
    std::vector<std::int64_t> ks;
    std::vector<DeltaValue> values;
    std::size_t dominant = 0;      // ray index of the eventually minimizing facet
    RationalFunction dominant_function;
    std::int64_t k0 = 1;           // the dominant facet attains the minimum for all k >= k0
    LaurentSeries asymptotics;
};

namespace detail {

/// An integer K > every real root of p (Cauchy bound), confirmed by Sturm counting.
inline std::int64_t root_free_bound(const Polynomial& p)
{
    Rational bound = 0;
    for (int i = 0; i < p.degree(); ++i)
        bound = std::max(bound, Rational(abs(p.coefficient(static_cast<std::size_t>(i)) / p.leading())));
    Integer k = numerator_of(bound) / denominator_of(bound) + 2;
    require(count_roots_above(p, Rational(k)) == 0, ErrorKind::InternalInconsistency, "root bound failed");
    return to_int64(k);
}

} // namespace detail

/// Per-k thresholds plus the eventual rational function and its expansion.
inline DeltaSequence delta_sequence(const ToricData& t, const std::vector<std::int64_t>& ks, std::size_t order)
{
    require(order >= 2, ErrorKind::InvalidInput, "order must be >= 2");
    const Polytope& p = t.polytope();
    const std::size_t d = t.rays().size();
    DeltaSequence out;
    out.ks = ks;
    for (auto k : ks)
        out.values.push_back(delta_k(t, k));

    BarycenterFunction bf = barycenter_function(p);
    const Polynomial& e = bf.denominator();
    // <Bc_k, v_i> + b_i = num_i / E_P
    std::vector<Polynomial> num;
    std::vector<LaurentSeries> series;
    for (std::size_t i = 0; i < d; ++i) {
        num.push_back(bf.pairing_numerator(t.rays()[i]) + Rational(t.offsets()[i]) * e);
        series.push_back(laurent_expand(RationalFunction(num[i], e), order));
    }
    // largest denominator wins; lexicographic on the expansion, exact numerators for ties
    auto larger = [&](std::size_t i, std::size_t j) {
        if (series[i].coefficients != series[j].coefficients)
            return series[i].coefficients > series[j].coefficients;
        Polynomial diff = num[i] - num[j];
        return !diff.is_zero() && diff.leading() > 0;
    };
    out.dominant = 0;
    for (std::size_t i = 1; i < d; ++i)
        if (larger(i, out.dominant))
            out.dominant = i;
    out.dominant_function = RationalFunction(e, num[out.dominant]);

    out.k0 = 1;
    for (std::size_t j = 0; j < d; ++j) {
        Polynomial diff = num[out.dominant] - num[j];
        if (diff.is_zero())
            continue;
        require(diff.leading() > 0, ErrorKind::InternalInconsistency, "dominant facet is not eventually maximal");
        const std::int64_t bound = detail::root_free_bound(diff);
        for (std::int64_t k = bound; k >= 1; --k)
            if (diff(k) < 0) {
                out.k0 = std::max(out.k0, k + 1);
                break;
            }
    }

    out.asymptotics = laurent_expand(out.dominant_function, order);
    const DeltaValue lim = delta(t);
    require(out.asymptotics.coefficients[0] == lim.value, ErrorKind::InternalInconsistency,
            "leading term of the expansion differs from delta");
    // a_1 = -delta^2 (Vol~/2Vol) max over I of <Bc~ - Bc, v_i>
    const MeasureData m = measure(p);
    const FacetData f = facet_data(p);
    std::optional<Rational> best;
    for (auto i : lim.argmin) {
        Rational x = dot(f.boundary_barycenter - m.barycenter, t.rays()[i]);
        if (!best || x > *best)
            best = x;
    }
    const Rational a1 = -lim.value * lim.value * f.boundary_normalized_volume / (2 * m.volume) * *best;
    require(out.asymptotics.coefficients[1] == a1, ErrorKind::InternalInconsistency,
            "first-order term differs from the boundary formula");
    if (t.fano())
        require(a1 == -lim.value * (1 - lim.value) / 2, ErrorKind::InternalInconsistency,
                "first-order term differs from the Fano formula");
    return out;
}

/// delta_k = (1 + (k+1)(2k+1)K^2 / (4 + 2k(k+1)K^2) (1/delta - 1))^{-1}, K^2 = Vol~(dP).
inline Rational del_pezzo_closed_form(const ToricData& t, std::int64_t k)
{
    require(t.dim() == 2 && t.reflexive() && t.delzant(), ErrorKind::Unsupported,
            "closed form needs a smooth reflexive polygon");
    require(k >= 1, ErrorKind::InvalidInput, "k must be >= 1");
    const Rational k2 = facet_data(t.polytope()).boundary_normalized_volume;
    const Rational kk = k;
    const Rational dl = delta(t).value;
    return 1 / (1 + (kk + 1) * (2 * kk + 1) * k2 / (4 + 2 * kk * (kk + 1) * k2) * (1 / dl - 1));
}

/// S_k(v) = <Bc_k, v> - support_value(P, v).
inline Rational expected_vanishing_order(const ToricData& t, const LatticeVector& v, std::int64_t k)
{
    require(v.size() == t.dim(), ErrorKind::InvalidInput, "v has the wrong dimension");
    return dot(quantized_barycenter(t.polytope(), k), v) - support_value(t.polytope(), v);
}

/// Sum of the coordinates of v in the rays of a simplicial maximal cone containing it.
inline Rational log_discrepancy(const ToricData& t, const LatticeVector& v)
{
    require(v.size() == t.dim(), ErrorKind::InvalidInput, "v has the wrong dimension");
    const Polytope& p = t.polytope();
    const std::size_t n = t.dim();
    std::vector<std::size_t> ray_of_facet(p.facets().size());
    for (std::size_t i = 0; i < t.rays().size(); ++i)
        ray_of_facet[t.facet_of_ray(i)] = i;
    for (std::size_t vert = 0; vert < p.vertices().size(); ++vert) {
        std::vector<LatticeVector> cone;
        for (std::size_t f = 0; f < p.facets().size(); ++f) {
            const auto& inc = p.incidence(f);
            if (std::binary_search(inc.begin(), inc.end(), vert))
                cone.push_back(t.rays()[ray_of_facet[f]]);
        }
        if (cone.size() != n)
            continue;
        RationalVector c = solve_row_combination(cone, to_rational(v));
        if (c.empty() || std::any_of(c.begin(), c.end(), [](const Rational& x) { return x < 0; }))
            continue;
        Rational sum = 0;
        for (const auto& x : c)
            sum += x;
        return sum;
    }
    fail(ErrorKind::Unsupported, "no simplicial maximal cone contains " + to_string(v));
}

} // namespace qbary
