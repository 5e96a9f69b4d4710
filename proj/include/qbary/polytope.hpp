#pragma once

// Full-dimensional lattice polytopes in dual representation, plus the
// possibly degenerate vertex sets used by Minkowski sums.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qbary/error.hpp"
#include "qbary/exactnum.hpp"
#include "qbary/hull.hpp"
#include "qbary/lattice.hpp"

namespace qbary {

/// Half-space <u, normal> >= -offset.
struct Facet {
    LatticeVector normal;
    std::int64_t offset = 0;

    friend bool operator==(const Facet&, const Facet&) = default;
};

class Polytope {
public:
    std::size_t dim() const noexcept { return dim_; }
    const std::vector<LatticeVector>& vertices() const noexcept { return vertices_; }
    const std::vector<Facet>& facets() const noexcept { return facets_; }
    /// Vertex indices on facet f, ascending.
    const std::vector<std::size_t>& incidence(std::size_t f) const { return incidence_.at(f); }
    /// Boundary triangulation: (n-1)-simplices, each inside one facet.
    const std::vector<detail::HullPiece>& boundary_simplices() const noexcept { return pieces_; }

    /// Index of the facet with the given primitive normal, if any.
    std::optional<std::size_t> facet_index(const LatticeVector& normal) const
    {
        for (std::size_t f = 0; f < facets_.size(); ++f)
            if (facets_[f].normal == normal)
                return f;
        return std::nullopt;
    }

    bool contains(const LatticeVector& u) const
    {
        for (const auto& f : facets_)
            if (dot128(f.normal, u) < -static_cast<__int128>(f.offset))
                return false;
        return true;
    }

    friend bool operator==(const Polytope& a, const Polytope& b) { return a.vertices_ == b.vertices_; }

    friend Polytope hull_from_vertices(const std::vector<LatticeVector>& points);

private:
    std::size_t dim_ = 0;
    std::vector<LatticeVector> vertices_;
    std::vector<Facet> facets_;
    std::vector<std::vector<std::size_t>> incidence_;
    std::vector<detail::HullPiece> pieces_;
};

/// Convex hull of lattice points; throws DegenerateInput unless full-dimensional.
inline Polytope hull_from_vertices(const std::vector<LatticeVector>& points)
{
    detail::HullResult h = detail::convex_hull(points);
    Polytope p;
    p.dim_ = h.dim;
    p.vertices_ = std::move(h.points);
    for (const auto& f : h.facets)
        p.facets_.push_back({f.normal, -f.offset});
    p.incidence_ = std::move(h.incidence);
    p.pieces_ = std::move(h.pieces);
    return p;
}

namespace detail {

inline void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn)
{
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    if (k > n)
        return;
    while (true) {
        fn(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1)
            --i;
        if (i == 0)
            return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
}

} // namespace detail

/// The polytope {u : <u, normal_i> >= -offset_i}. Normals need not be primitive;
/// redundant inequalities are dropped.
inline Polytope polytope_from_halfspaces(const std::vector<LatticeVector>& normals,
                                         const std::vector<std::int64_t>& offsets)
{
    require(!normals.empty(), ErrorKind::UnboundedInput, "no inequalities");
    require(normals.size() == offsets.size(), ErrorKind::InvalidInput, "normals and offsets differ in length");
    const std::size_t n = normals.front().size();
    require(n >= 1, ErrorKind::InvalidInput, "zero-dimensional normals");
    std::vector<LatticeVector> prim;
    std::vector<Rational> off;
    for (std::size_t i = 0; i < normals.size(); ++i) {
        require(normals[i].size() == n, ErrorKind::InvalidInput, "normals of mixed dimension");
        LatticeVector p = primitive(normals[i]);
        std::int64_t scale = 1;
        for (std::size_t j = 0; j < n; ++j)
            if (p[j] != 0) {
                scale = normals[i][j] / p[j];
                break;
            }
        prim.push_back(std::move(p));
        off.push_back(Rational(offsets[i]) / Rational(scale));
    }

    // bounded iff the normals positively span, i.e. 0 is interior to their hull
    if (detail::affine_dimension(prim) < static_cast<int>(n))
        fail(ErrorKind::UnboundedInput, "normals do not positively span");
    {
        detail::HullResult nh = detail::convex_hull(prim);
        for (const auto& f : nh.facets)
            if (f.offset >= 0)
                fail(ErrorKind::UnboundedInput, "normals do not positively span");
    }

    std::vector<LatticeVector> verts;
    detail::for_each_subset(prim.size(), n, [&](const std::vector<std::size_t>& sel) {
        std::vector<LatticeVector> rows;
        RationalVector rhs;
        for (auto i : sel) {
            rows.push_back(prim[i]);
            rhs.push_back(-off[i]);
        }
        // <u, rows_r> = rhs_r, i.e. u combines the columns of the row matrix
        std::vector<LatticeVector> cols(n, LatticeVector(n));
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                cols[c][r] = rows[r][c];
        RationalVector u = solve_row_combination(cols, rhs);
        if (u.empty())
            return;
        for (std::size_t i = 0; i < prim.size(); ++i)
            if (dot(u, prim[i]) < -off[i])
                return;
        LatticeVector lu;
        for (const auto& x : u) {
            require(is_integral(x), ErrorKind::InvalidInput, "vertex " + to_string(u) + " is not a lattice point");
            lu.push_back(to_int64(numerator_of(x)));
        }
        verts.push_back(std::move(lu));
    });
    require(!verts.empty(), ErrorKind::DegenerateInput, "the inequalities have no common solution");
    verts = detail::sorted_unique(std::move(verts));
    if (detail::affine_dimension(verts) < static_cast<int>(n))
        fail(ErrorKind::DegenerateInput, "the inequalities define a lower-dimensional set");
    Polytope p = hull_from_vertices(verts);
    for (std::size_t i = 0; i < prim.size(); ++i)
        for (const auto& v : p.vertices())
            require(dot(to_rational(v), prim[i]) >= -off[i], ErrorKind::InternalInconsistency,
                    "hull violates an input inequality");
    return p;
}

// ---------------------------------------------------------------------------
// Possibly degenerate vertex sets

/// Convex hull of lattice points of any affine dimension, stored by its extreme points.
class VPolytope {
public:
    VPolytope() = default;

    explicit VPolytope(const std::vector<LatticeVector>& points) : vertices_(detail::extreme_points(points))
    {
        require(!vertices_.empty(), ErrorKind::InvalidInput, "empty point set");
        dim_ = vertices_.front().size();
    }

    explicit VPolytope(const Polytope& p) : dim_(p.dim()), vertices_(p.vertices()) {}

    static VPolytope point(const LatticeVector& x) { return VPolytope(std::vector<LatticeVector>{x}); }

    std::size_t ambient_dim() const noexcept { return dim_; }
    int affine_dim() const { return detail::affine_dimension(vertices_); }
    bool full_dimensional() const { return affine_dim() == static_cast<int>(dim_); }
    const std::vector<LatticeVector>& vertices() const noexcept { return vertices_; }

    Polytope polytope() const { return hull_from_vertices(vertices_); }

    friend bool operator==(const VPolytope& a, const VPolytope& b) { return a.vertices_ == b.vertices_; }
    friend bool operator<(const VPolytope& a, const VPolytope& b) { return a.vertices_ < b.vertices_; }

private:
    std::size_t dim_ = 0;
    std::vector<LatticeVector> vertices_;
};

inline VPolytope minkowski_sum(const VPolytope& a, const VPolytope& b)
{
    require(a.ambient_dim() == b.ambient_dim(), ErrorKind::InvalidInput, "Minkowski sum of different dimensions");
    std::vector<LatticeVector> sums;
    for (const auto& x : a.vertices())
        for (const auto& y : b.vertices())
            sums.push_back(x + y);
    return VPolytope(sums);
}

inline Polytope minkowski_sum(const Polytope& a, const Polytope& b)
{
    return minkowski_sum(VPolytope(a), VPolytope(b)).polytope();
}

inline VPolytope dilate(const VPolytope& p, std::int64_t factor)
{
    require(factor >= 0, ErrorKind::InvalidInput, "negative dilation factor");
    if (factor == 0)
        return VPolytope::point(LatticeVector(p.ambient_dim(), 0));
    std::vector<LatticeVector> pts;
    for (const auto& v : p.vertices())
        pts.push_back(factor * v);
    return VPolytope(pts);
}

inline Polytope dilate(const Polytope& p, std::int64_t factor)
{
    require(factor >= 1, ErrorKind::InvalidInput, "dilation factor must be positive");
    return dilate(VPolytope(p), factor).polytope();
}

inline Polytope translate(const Polytope& p, const LatticeVector& t)
{
    std::vector<LatticeVector> pts;
    for (const auto& v : p.vertices())
        pts.push_back(v + t);
    return hull_from_vertices(pts);
}

// ---------------------------------------------------------------------------
// Measures

struct MeasureData {
    Rational volume;
    RationalVector barycenter;
};

/// Volume and barycenter of the simplex conv(points) (n+1 points in R^n).
inline std::pair<Rational, RationalVector> simplex_measure(const std::vector<const LatticeVector*>& pts)
{
    const std::size_t n = pts.front()->size();
    IntegerMatrix edges(n, n);
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            edges(i - 1, j) = (*pts[i])[j] - (*pts[0])[j];
    Integer det = abs(determinant(edges));
    Rational vol = Rational(det) / Rational(factorial(n));
    RationalVector centroid(n);
    for (const auto* p : pts)
        for (std::size_t j = 0; j < n; ++j)
            centroid[j] += (*p)[j];
    for (auto& c : centroid)
        c /= static_cast<long>(n + 1);
    return {vol, centroid};
}

/// Exact Lebesgue volume and barycenter, by coning the boundary triangulation
/// from the lexicographically smallest vertex.
inline MeasureData measure(const Polytope& p)
{
    const std::size_t n = p.dim();
    const auto& verts = p.vertices();
    const LatticeVector& apex = verts.front();
    MeasureData out{0, RationalVector(n)};
    for (const auto& piece : p.boundary_simplices()) {
        const auto& inc = p.incidence(piece.facet);
        if (std::binary_search(inc.begin(), inc.end(), std::size_t{0}))
            continue;
        std::vector<const LatticeVector*> pts{&apex};
        for (auto v : piece.vertices)
            pts.push_back(&verts[v]);
        auto [vol, c] = simplex_measure(pts);
        out.volume += vol;
        for (std::size_t j = 0; j < n; ++j)
            out.barycenter[j] += vol * c[j];
    }
    require(out.volume > 0, ErrorKind::InternalInconsistency, "non-positive volume");
    for (auto& x : out.barycenter)
        x /= out.volume;
    return out;
}

/// Volume of a possibly degenerate polytope (0 unless full-dimensional).
inline Rational volume(const VPolytope& p)
{
    if (!p.full_dimensional())
        return 0;
    return measure(p.polytope()).volume;
}

struct FacetMeasure {
    LatticeVector normal;
    std::int64_t offset = 0;
    Rational normalized_volume;
    RationalVector barycenter;
};

struct FacetData {
    std::vector<FacetMeasure> facets;
    Rational boundary_normalized_volume;
    RationalVector boundary_barycenter;
};

/// Lattice-normalized facet measures, computed in affine lattice charts.
inline FacetData facet_data(const Polytope& p)
{
    const std::size_t n = p.dim();
    const auto& verts = p.vertices();
    FacetData out;
    out.boundary_barycenter.assign(n, 0);
    for (std::size_t f = 0; f < p.facets().size(); ++f) {
        const Facet& facet = p.facets()[f];
        FacetMeasure fm{facet.normal, facet.offset, 0, RationalVector(n)};
        if (n == 1) {
            fm.normalized_volume = 1;
            fm.barycenter = to_rational(verts[p.incidence(f).front()]);
        } else {
            AffineLatticeChart chart(verts[p.incidence(f).front()], facet.normal);
            RationalVector local(n - 1);
            for (const auto& piece : p.boundary_simplices()) {
                if (piece.facet != f)
                    continue;
                std::vector<LatticeVector> coords;
                for (auto v : piece.vertices)
                    coords.push_back(chart.to_chart(verts[v]));
                std::vector<const LatticeVector*> ptrs;
                for (const auto& c : coords)
                    ptrs.push_back(&c);
                auto [vol, c] = simplex_measure(ptrs);
                fm.normalized_volume += vol;
                for (std::size_t j = 0; j + 1 < n; ++j)
                    local[j] += vol * c[j];
            }
            for (auto& x : local)
                x /= fm.normalized_volume;
            fm.barycenter = chart.from_chart(local);
        }
        out.boundary_normalized_volume += fm.normalized_volume;
        for (std::size_t j = 0; j < n; ++j)
            out.boundary_barycenter[j] += fm.normalized_volume * fm.barycenter[j];
        out.facets.push_back(std::move(fm));
    }
    for (auto& x : out.boundary_barycenter)
        x /= out.boundary_normalized_volume;
    return out;
}

// ---------------------------------------------------------------------------
// Classification and support values

struct Classification {
    bool reflexive = false;
    bool delzant = false;
};

/// Vertex pairs spanning an edge: their common facets have normals of rank n-1.
inline std::vector<std::pair<std::size_t, std::size_t>> edges(const Polytope& p)
{
    const std::size_t n = p.dim();
    const std::size_t nv = p.vertices().size();
    std::vector<std::vector<std::size_t>> facets_of(nv);
    for (std::size_t f = 0; f < p.facets().size(); ++f)
        for (auto v : p.incidence(f))
            facets_of[v].push_back(f);
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t a = 0; a < nv; ++a)
        for (std::size_t b = a + 1; b < nv; ++b) {
            std::vector<LatticeVector> normals;
            for (auto f : facets_of[a])
                if (std::binary_search(facets_of[b].begin(), facets_of[b].end(), f))
                    normals.push_back(p.facets()[f].normal);
            if (rank(normals) + 1 == n)
                out.emplace_back(a, b);
        }
    return out;
}

inline Classification classify(const Polytope& p)
{
    Classification c;
    c.reflexive = std::all_of(p.facets().begin(), p.facets().end(), [](const Facet& f) { return f.offset == 1; });

    const std::size_t n = p.dim();
    std::vector<std::vector<LatticeVector>> directions(p.vertices().size());
    for (auto [a, b] : edges(p)) {
        const auto& va = p.vertices()[a];
        const auto& vb = p.vertices()[b];
        directions[a].push_back(primitive(vb - va));
        directions[b].push_back(primitive(va - vb));
    }
    c.delzant = std::all_of(directions.begin(), directions.end(), [n](const std::vector<LatticeVector>& dirs) {
        return dirs.size() == n && abs(determinant(dirs)) == 1;
    });
    return c;
}

/// min over P of <u, v>.
inline std::int64_t support_value(const Polytope& p, const LatticeVector& v)
{
    require(v.size() == p.dim(), ErrorKind::InvalidInput, "support_value dimension mismatch");
    std::int64_t best = dot(p.vertices().front(), v);
    for (const auto& u : p.vertices())
        best = std::min(best, dot(u, v));
    return best;
}

} // namespace qbary
