#pragma once

// Fixtures and brute-force oracles shared by the test programs.

#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "qbary/qbary.hpp"

namespace qbary::testing {

inline Rational q(long p, long d = 1) { return Rational(p) / Rational(d); }

inline RationalVector qv(std::initializer_list<Rational> xs) { return RationalVector(xs); }

inline std::string fixture_path(const std::string& name) { return std::string(QBARY_FIXTURES) + "/" + name + ".json"; }

inline Polytope fixture(const std::string& name)
{
    return io::document_polytope(io::load_polytope_document(fixture_path(name)));
}

inline ToricData fixture_toric(const std::string& name)
{
    return io::document_toric_data(io::load_polytope_document(fixture_path(name)));
}

inline const std::vector<std::string>& all_fixtures()
{
    static const std::vector<std::string> names{"p2",    "f1",    "blowup-p1xp1", "fano-3-29", "cube2",
                                                "cube3", "dp6",   "unit-square",  "square-reflexive-nondelzant",
                                                "square-delzant-nonreflexive"};
    return names;
}

inline const std::vector<std::string>& planar_fixtures()
{
    static const std::vector<std::string> names{"p2",  "f1", "blowup-p1xp1", "cube2", "dp6", "unit-square",
                                                "square-reflexive-nondelzant", "square-delzant-nonreflexive"};
    return names;
}

inline const std::vector<std::string>& del_pezzo_fixtures()
{
    static const std::vector<std::string> names{"p2", "f1", "cube2", "blowup-p1xp1", "dp6"};
    return names;
}

inline ErrorKind kind_of(const std::function<void()>& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorKind::InternalInconsistency;
}

/// Lattice points of kP (or its interior) by testing every point of the bounding box against the facets.
inline std::vector<LatticeVector> brute_points(const Polytope& p, std::int64_t k, bool strict = false)
{
    const std::size_t n = p.dim();
    LatticeVector lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
        lo[i] = hi[i] = p.vertices().front()[i] * k;
        for (const auto& v : p.vertices()) {
            lo[i] = std::min(lo[i], v[i] * k);
            hi[i] = std::max(hi[i], v[i] * k);
        }
    }
    std::vector<LatticeVector> out;
    LatticeVector u = lo;
    while (true) {
        bool inside = true;
        for (const auto& f : p.facets()) {
            std::int64_t s = 0;
            for (std::size_t i = 0; i < n; ++i)
                s += u[i] * f.normal[i];
            if (strict ? s <= -k * f.offset : s < -k * f.offset) {
                inside = false;
                break;
            }
        }
        if (inside)
            out.push_back(u);
        std::size_t i = 0;
        while (i < n && u[i] == hi[i])
            u[i] = lo[i], ++i;
        if (i == n)
            break;
        ++u[i];
    }
    return out;
}

inline RationalVector brute_barycenter(const Polytope& p, std::int64_t k)
{
    auto pts = brute_points(p, k);
    RationalVector sum(p.dim());
    for (const auto& u : pts)
        for (std::size_t i = 0; i < p.dim(); ++i)
            sum[i] += u[i];
    return (Rational(1) / Rational(static_cast<long>(pts.size()) * k)) * sum;
}

/// A full-dimensional hull of random points in [-r, r]^n.
inline Polytope random_polytope(std::mt19937& rng, std::size_t n, int r = 3)
{
    std::uniform_int_distribution<int> coord(-r, r);
    std::uniform_int_distribution<int> size(static_cast<int>(n) + 1, static_cast<int>(n) + 5);
    while (true) {
        std::vector<LatticeVector> pts(static_cast<std::size_t>(size(rng)), LatticeVector(n));
        for (auto& x : pts)
            for (auto& c : x)
                c = coord(rng);
        if (detail::affine_dimension(pts) == static_cast<int>(n))
            return hull_from_vertices(pts);
    }
}

} // namespace qbary::testing
