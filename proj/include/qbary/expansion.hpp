#pragma once

// Quantized barycenters Bc_k(P), their rational-function form in k and the
// expansion Bc_k = a_0 + a_1/k + a_2/k^2 + ...

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "qbary/ehrhart.hpp"
#include "qbary/error.hpp"
#include "qbary/exactnum.hpp"
#include "qbary/lattice.hpp"
#include "qbary/polytope.hpp"

namespace qbary {

/// (1/(k N)) * sum of the lattice points of kP, N their number.
inline RationalVector quantized_barycenter(const Polytope& p, std::int64_t k)
{
    require(k >= 1, ErrorKind::InvalidInput, "quantized_barycenter needs k >= 1");
    LatticeSums s = lattice_point_sums(p, k);
    RationalVector out;
    for (const auto& x : s.coordinate_sums)
        out.push_back(Rational(x, s.count * k));
    return out;
}

namespace detail {

/// {(u, h) : u in P, 0 <= h <= <u, v> + q}, requiring only <u, v> + q >= 0 on P.
inline Polytope rooftop_nonstrict(const Polytope& p, const LatticeVector& v, std::int64_t q)
{
    require(v.size() == p.dim(), ErrorKind::InvalidInput, "rooftop direction has the wrong dimension");
    require(q + support_value(p, v) >= 0, ErrorKind::PreconditionViolation,
            "rooftop height <u, v> + q is negative somewhere on P");
    std::vector<LatticeVector> pts;
    for (const auto& u : p.vertices()) {
        LatticeVector low = u, high = u;
        low.push_back(0);
        high.push_back(dot(u, v) + q);
        pts.push_back(std::move(low));
        pts.push_back(std::move(high));
    }
    return hull_from_vertices(pts);
}

} // namespace detail

/// The rooftop polytope P_{v,q} one dimension up; needs q > -support_value(P, v).
inline Polytope rooftop(const Polytope& p, const LatticeVector& v, std::int64_t q)
{
    require(v.size() == p.dim(), ErrorKind::InvalidInput, "rooftop direction has the wrong dimension");
    require(q + support_value(p, v) > 0, ErrorKind::PreconditionViolation,
            "q = " + std::to_string(q) + " must exceed " + std::to_string(-support_value(p, v)));
    return detail::rooftop_nonstrict(p, v, q);
}

/// Smallest admissible rooftop offset, 1 - support_value(P, v).
inline std::int64_t canonical_rooftop_offset(const Polytope& p, const LatticeVector& v)
{
    return 1 - support_value(p, v);
}

/// Bc_k(P) as Q_i(k) / E_P(k) coordinatewise.
class BarycenterFunction {
public:
    BarycenterFunction(std::vector<Polynomial> numerators, Polynomial ehrhart)
        : numerators_(std::move(numerators)), ehrhart_(std::move(ehrhart))
    {
    }

    std::size_t dim() const noexcept { return numerators_.size(); }
    /// Unreduced numerator Q_i with deg Q_i <= n.
    const Polynomial& numerator(std::size_t i) const { return numerators_.at(i); }
    const std::vector<Polynomial>& numerators() const noexcept { return numerators_; }
    /// The shared denominator E_P.
    const Polynomial& denominator() const noexcept { return ehrhart_; }

    RationalFunction coordinate(std::size_t i) const { return RationalFunction(numerators_.at(i), ehrhart_); }

    /// <Bc_k, v> as a (reduced) rational function.
    RationalFunction pairing(const LatticeVector& v) const { return RationalFunction(pairing_numerator(v), ehrhart_); }

    Polynomial pairing_numerator(const LatticeVector& v) const
    {
        require(v.size() == dim(), ErrorKind::InvalidInput, "pairing vector has the wrong dimension");
        Polynomial acc;
        for (std::size_t i = 0; i < dim(); ++i)
            acc = acc + Rational(v[i]) * numerators_[i];
        return acc;
    }

    RationalVector operator()(std::int64_t k) const
    {
        RationalVector out;
        const Rational e = ehrhart_(k);
        for (const auto& q : numerators_)
            out.push_back(q(k) / e);
        return out;
    }

private:
    std::vector<Polynomial> numerators_;
    Polynomial ehrhart_;
};

/// Q_i(k) = (E_{P(C_i; i)}(k) - (C_i k + 1) E_P(k)) / k with C_i = max(0, -support_value(P, e_i)).
inline BarycenterFunction barycenter_function(const Polytope& p)
{
    const std::size_t n = p.dim();
    Polynomial e = ehrhart_polynomial(p).poly;
    std::vector<Polynomial> numerators;
    for (std::size_t i = 0; i < n; ++i) {
        const LatticeVector ei = unit_vector(n, i);
        const std::int64_t c = std::max<std::int64_t>(0, -support_value(p, ei));
        Polynomial roof = ehrhart_polynomial(detail::rooftop_nonstrict(p, ei, c)).poly;
        Polynomial dividend = roof - Polynomial{1, Rational(c)} * e;
        auto [quot, rem] = divmod(dividend, Polynomial::variable());
        require(rem.is_zero(), ErrorKind::InternalInconsistency,
                "rooftop count minus prism count has a nonzero constant term");
        require(quot.degree() <= static_cast<int>(n), ErrorKind::InternalInconsistency,
                "barycenter numerator degree exceeds n");
        numerators.push_back(std::move(quot));
    }
    BarycenterFunction bf(std::move(numerators), std::move(e));
    for (std::int64_t k = 1; k <= static_cast<std::int64_t>(n) + 1; ++k)
        require(bf(k) == quantized_barycenter(p, k), ErrorKind::InternalInconsistency,
                "barycenter function disagrees with enumeration at k=" + std::to_string(k));
    return bf;
}

/// a_1 = (Vol~(dP) / (2 Vol(P))) (Bc~(dP) - Bc(P)).
inline RationalVector a1_closed_form(const Polytope& p)
{
    MeasureData m = measure(p);
    FacetData f = facet_data(p);
    return (f.boundary_normalized_volume / (2 * m.volume)) * (f.boundary_barycenter - m.barycenter);
}

/// a_0 .. a_{order-1}, with a_0 checked against Bc(P) and a_1 against the closed form.
inline std::vector<RationalVector> asymptotic_coefficients(const BarycenterFunction& bf, const Polytope& p,
                                                           std::size_t order)
{
    require(order >= 1, ErrorKind::InvalidInput, "order must be >= 1");
    std::vector<RationalVector> a(order, RationalVector(bf.dim()));
    for (std::size_t i = 0; i < bf.dim(); ++i) {
        LaurentSeries s = laurent_expand(bf.coordinate(i), order);
        for (std::size_t j = 0; j < order; ++j)
            a[j][i] = s.coefficients[j];
    }
    require(a[0] == measure(p).barycenter, ErrorKind::InternalInconsistency,
            "leading expansion coefficient differs from the barycenter");
    if (order >= 2)
        require(a[1] == a1_closed_form(p), ErrorKind::InternalInconsistency,
                "first-order expansion coefficient differs from the boundary formula");
    return a;
}

inline std::vector<RationalVector> asymptotic_coefficients(const Polytope& p, std::size_t order)
{
    return asymptotic_coefficients(barycenter_function(p), p, order);
}

/// Bc_k for a reflexive polygon: (k+1)(2k+1) V / (4 + 2k(k+1) V) * Bc(P), V = Vol~(dP).
inline RationalVector reflexive_polygon_bck(const Polytope& p, std::int64_t k)
{
    require(p.dim() == 2 && classify(p).reflexive, ErrorKind::Unsupported,
            "closed form needs a reflexive polygon");
    require(k >= 1, ErrorKind::InvalidInput, "k must be >= 1");
    const Rational v = facet_data(p).boundary_normalized_volume;
    const Rational kk = k;
    const Rational factor = (kk + 1) * (2 * kk + 1) * v / (4 + 2 * kk * (kk + 1) * v);
    return factor * measure(p).barycenter;
}

struct StabilizationVerdict {
    bool stabilizes = false;
    RationalVector constant;                                      // set when stabilizes
    std::optional<std::pair<std::int64_t, std::int64_t>> witness; // differing pair otherwise
};

/// Bc_k agreeing on n+1 distinct k forces Bc_k = Bc(P) for all k.
inline StabilizationVerdict stabilization_check(const Polytope& p, const std::vector<std::int64_t>& ks)
{
    std::set<std::int64_t> distinct(ks.begin(), ks.end());
    require(distinct.size() == ks.size(), ErrorKind::InvalidInput, "sample values must be distinct");
    for (auto k : ks)
        require(k >= 1, ErrorKind::InvalidInput, "sample values must be positive");
    require(ks.size() >= p.dim() + 1, ErrorKind::InsufficientSamples,
            "need at least " + std::to_string(p.dim() + 1) + " values of k");
    const RationalVector first = quantized_barycenter(p, ks.front());
    StabilizationVerdict verdict;
    for (std::size_t i = 1; i < ks.size(); ++i)
        if (quantized_barycenter(p, ks[i]) != first) {
            verdict.witness = std::make_pair(ks.front(), ks[i]);
            return verdict;
        }
    BarycenterFunction bf = barycenter_function(p);
    for (std::size_t i = 0; i < p.dim(); ++i)
        require(bf.numerator(i) == first[i] * bf.denominator(), ErrorKind::InternalInconsistency,
                "constant samples but non-constant barycenter function");
    require(first == measure(p).barycenter, ErrorKind::InternalInconsistency,
            "stable value differs from the barycenter");
    verdict.stabilizes = true;
    verdict.constant = first;
    return verdict;
}

/// True iff every pair of vectors is parallel (all 2x2 minors vanish).
inline bool colinearity_check(const std::vector<RationalVector>& vectors)
{
    require(vectors.size() >= 2, ErrorKind::InvalidInput, "colinearity_check needs at least two vectors");
    for (std::size_t a = 0; a < vectors.size(); ++a)
        for (std::size_t b = a + 1; b < vectors.size(); ++b) {
            const auto& x = vectors[a];
            const auto& y = vectors[b];
            require(x.size() == y.size(), ErrorKind::InvalidInput, "vectors of different dimension");
            for (std::size_t i = 0; i < x.size(); ++i)
                for (std::size_t j = i + 1; j < x.size(); ++j)
                    if (x[i] * y[j] != x[j] * y[i])
                        return false;
        }
    return true;
}

/// DF_j = <a_j(P), v>, read off the expansion of <Bc_k, v>.
inline std::vector<Rational> df_coefficients(const BarycenterFunction& bf, const LatticeVector& v, std::size_t order)
{
    require(order >= 1, ErrorKind::InvalidInput, "order must be >= 1");
    return laurent_expand(bf.pairing(v), order).coefficients;
}

inline std::vector<Rational> df_coefficients(const Polytope& p, const LatticeVector& v, std::size_t order)
{
    return df_coefficients(barycenter_function(p), v, order);
}

} // namespace qbary
