#pragma once

// Lattice points of dilates kP and the Ehrhart polynomial.

#include <cstdint>
#include <optional>
#include <vector>

#include "qbary/error.hpp"
#include "qbary/exactnum.hpp"
#include "qbary/lattice.hpp"
#include "qbary/polytope.hpp"

namespace qbary {

/// Number of lattice points of a region and the sum of their coordinates.
struct LatticeSums {
    Integer count = 0;
    std::vector<Integer> coordinate_sums;
};

namespace detail {

inline std::int64_t floor_div(std::int64_t a, std::int64_t b)
{
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

/// Lattice points u with <u, v_i> >= -k b_i + slack for every facet (slack = 1
/// gives the interior). The first n-1 coordinates scan the bounding box of kP;
/// along the last coordinate each line is an integer interval.
inline LatticeSums lattice_sums(const Polytope& p, std::int64_t k, std::int64_t slack)
{
    const std::size_t n = p.dim();
    LatticeSums out;
    out.coordinate_sums.assign(n, 0);
    std::vector<std::int64_t> lo(n), hi(n);
    for (std::size_t j = 0; j < n; ++j) {
        lo[j] = hi[j] = p.vertices().front()[j];
        for (const auto& v : p.vertices()) {
            lo[j] = std::min(lo[j], v[j]);
            hi[j] = std::max(hi[j], v[j]);
        }
        lo[j] *= k;
        hi[j] *= k;
    }
    std::vector<std::int64_t> rhs;
    for (const auto& f : p.facets())
        rhs.push_back(-k * f.offset + slack);

    LatticeVector prefix(lo.begin(), lo.end() - 1);
    while (true) {
        std::int64_t a = lo[n - 1], b = hi[n - 1];
        for (std::size_t f = 0; f < p.facets().size() && a <= b; ++f) {
            const auto& normal = p.facets()[f].normal;
            std::int64_t s = 0;
            for (std::size_t j = 0; j + 1 < n; ++j)
                s += normal[j] * prefix[j];
            const std::int64_t c = normal[n - 1];
            const std::int64_t need = rhs[f] - s; // c * x >= need
            if (c > 0)
                a = std::max(a, ceil_div(need, c));
            else if (c < 0)
                b = std::min(b, floor_div(-need, -c));
            else if (need > 0)
                b = a - 1;
        }
        if (a <= b) {
            const Integer len = b - a + 1;
            out.count += len;
            for (std::size_t j = 0; j + 1 < n; ++j)
                out.coordinate_sums[j] += len * prefix[j];
            out.coordinate_sums[n - 1] += len * (Integer(a) + b) / 2;
        }
        std::size_t j = 0;
        for (; j + 1 < n; ++j) {
            if (prefix[j] < hi[j]) {
                ++prefix[j];
                break;
            }
            prefix[j] = lo[j];
        }
        if (j + 1 >= n)
            break;
    }
    return out;
}

} // namespace detail

/// #(kP cap Z^n).
inline Integer count_points(const Polytope& p, std::int64_t k)
{
    require(k >= 0, ErrorKind::InvalidInput, "count_points needs k >= 0 (use interior_count for reciprocity)");
    if (k == 0)
        return 1;
    return detail::lattice_sums(p, k, 0).count;
}

/// #(int(kP) cap Z^n).
inline Integer interior_count(const Polytope& p, std::int64_t k)
{
    require(k >= 1, ErrorKind::InvalidInput, "interior_count needs k >= 1");
    return detail::lattice_sums(p, k, 1).count;
}

/// Count and coordinate sums of kP cap Z^n.
inline LatticeSums lattice_point_sums(const Polytope& p, std::int64_t k)
{
    require(k >= 0, ErrorKind::InvalidInput, "lattice_point_sums needs k >= 0");
    if (k == 0)
        return {1, std::vector<Integer>(p.dim(), 0)};
    return detail::lattice_sums(p, k, 0);
}

enum class EhrhartSource { fitted, reflexive_closed_form };

struct EhrhartPolynomial {
    Polynomial poly;
    EhrhartSource source = EhrhartSource::fitted;
};

/// Fit on k = 0..n, validated on k = n+1..2n+1 and against the leading,
/// subleading and constant coefficient identities.
inline EhrhartPolynomial ehrhart_polynomial(const Polytope& p)
{
    const auto n = static_cast<std::int64_t>(p.dim());
    std::vector<Sample> samples;
    for (std::int64_t k = 0; k <= n; ++k)
        samples.push_back({k, Rational(count_points(p, k))});
    Polynomial poly = poly_fit(samples);
    for (std::int64_t k = n + 1; k <= 2 * n + 1; ++k)
        require(poly(k) == Rational(count_points(p, k)), ErrorKind::InternalInconsistency,
                "Ehrhart fit fails held-out sample k=" + std::to_string(k));
    require(poly.coefficient(0) == 1, ErrorKind::InternalInconsistency, "Ehrhart constant term is not 1");
    require(poly.coefficient(static_cast<std::size_t>(n)) == measure(p).volume, ErrorKind::InternalInconsistency,
            "Ehrhart leading coefficient differs from the volume");
    require(poly.coefficient(static_cast<std::size_t>(n - 1)) == facet_data(p).boundary_normalized_volume / 2,
            ErrorKind::InternalInconsistency, "Ehrhart subleading coefficient differs from half the boundary volume");
    return {std::move(poly), EhrhartSource::fitted};
}

struct ReciprocityEntry {
    std::int64_t k = 0;
    Rational ehrhart_at_minus_k;
    Integer interior;
    bool general = false;
    std::optional<bool> reflexive; // set only for reflexive P
};

struct ReciprocityReport {
    std::vector<ReciprocityEntry> entries;

    bool all_pass() const
    {
        for (const auto& e : entries)
            if (!e.general || e.reflexive == false)
                return false;
        return true;
    }
};

inline ReciprocityReport reciprocity_check(const Polytope& p, std::int64_t k_max)
{
    require(k_max >= 1, ErrorKind::InvalidInput, "k_max must be >= 1");
    const Polynomial e = ehrhart_polynomial(p).poly;
    const bool reflexive = classify(p).reflexive;
    const Rational sign = p.dim() % 2 ? -1 : 1;
    ReciprocityReport report;
    for (std::int64_t k = 1; k <= k_max; ++k) {
        ReciprocityEntry entry;
        entry.k = k;
        entry.ehrhart_at_minus_k = e(-k);
        entry.interior = interior_count(p, k);
        entry.general = entry.ehrhart_at_minus_k == sign * Rational(entry.interior);
        if (reflexive)
            entry.reflexive = entry.ehrhart_at_minus_k == sign * Rational(count_points(p, k - 1));
        report.entries.push_back(std::move(entry));
    }
    return report;
}

/// Ehrhart polynomial of a reflexive polygon or 3-polytope from its volume alone.
inline EhrhartPolynomial reflexive_closed_form(const Polytope& p)
{
    require(classify(p).reflexive, ErrorKind::Unsupported, "closed form needs a reflexive polytope");
    const Rational vol = measure(p).volume;
    if (p.dim() == 2)
        return {Polynomial{1, vol, vol}, EhrhartSource::reflexive_closed_form};
    if (p.dim() == 3)
        return {Polynomial{1, vol / 2 + 2, vol * 3 / 2, vol}, EhrhartSource::reflexive_closed_form};
    fail(ErrorKind::Unsupported, "closed form only for dimensions 2 and 3");
}

} // namespace qbary
