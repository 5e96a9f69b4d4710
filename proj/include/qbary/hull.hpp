#pragma once

// Exact incremental convex hull of lattice points in any dimension.
//
// The boundary is maintained as a set of simplicial pieces, each carrying a
// primitive inward normal. Points on the hyperplane of a piece are not visible
// from it, so coplanar pieces appear and are grouped into true facets at the
// end; the pieces then form a triangulation of the boundary.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include "qbary/error.hpp"
#include "qbary/exactnum.hpp"
#include "qbary/lattice.hpp"

namespace qbary::detail {

/// <normal, x> >= offset on the hull; normal primitive and inward.
struct HullFacet {
    LatticeVector normal;
    std::int64_t offset = 0;

    friend auto operator<=>(const HullFacet&, const HullFacet&) = default;
};

/// An (r-1)-simplex of the boundary triangulation, vertices index HullResult::points.
struct HullPiece {
    std::vector<std::size_t> vertices;
    std::size_t facet = 0;
};

struct HullResult {
    std::size_t dim = 0;
    std::vector<LatticeVector> points; // extreme points, sorted lexicographically
    std::vector<HullFacet> facets;     // sorted
    std::vector<std::vector<std::size_t>> incidence;
    std::vector<HullPiece> pieces;
};

/// Primitive normal of the hyperplane through `pts` (pts.size() == dimension).
/// Returns an empty vector when the points are affinely dependent.
inline LatticeVector hyperplane_normal(const std::vector<const LatticeVector*>& pts)
{
    const std::size_t r = pts.front()->size();
    IntegerMatrix edges(r - 1, r);
    for (std::size_t i = 1; i < pts.size(); ++i)
        for (std::size_t j = 0; j < r; ++j)
            edges(i - 1, j) = (*pts[i])[j] - (*pts[0])[j];
    std::vector<Integer> normal(r);
    Integer g = 0;
    for (std::size_t skip = 0; skip < r; ++skip) {
        IntegerMatrix minor(r - 1, r - 1);
        for (std::size_t i = 0; i + 1 < r; ++i)
            for (std::size_t j = 0, c = 0; j < r; ++j)
                if (j != skip)
                    minor(i, c++) = edges(i, j);
        normal[skip] = determinant(minor);
        if (skip % 2)
            normal[skip] = -normal[skip];
        g = gcd(g, normal[skip]);
    }
    if (g == 0)
        return {};
    LatticeVector out(r);
    for (std::size_t j = 0; j < r; ++j)
        out[j] = to_int64(normal[j] / g);
    return out;
}

class IncrementalHull {
public:
    explicit IncrementalHull(const std::vector<LatticeVector>& pts) : pts_(pts), dim_(pts.front().size()) {}

    /// Runs the construction; returns false when the points are not full-dimensional.
    bool build()
    {
        std::vector<std::size_t> simplex = initial_simplex();
        if (simplex.size() != dim_ + 1)
            return false;
        interior_.assign(dim_, 0);
        for (auto i : simplex)
            for (std::size_t j = 0; j < dim_; ++j)
                interior_[j] += pts_[i][j];
        for (std::size_t skip = 0; skip <= dim_; ++skip) {
            std::vector<std::size_t> verts;
            for (std::size_t i = 0; i <= dim_; ++i)
                if (i != skip)
                    verts.push_back(simplex[i]);
            add_piece(std::move(verts));
        }
        std::set<std::size_t> in_simplex(simplex.begin(), simplex.end());
        for (std::size_t i = 0; i < pts_.size(); ++i)
            if (!in_simplex.count(i))
                insert(i);
        return true;
    }

    struct Piece {
        std::vector<std::size_t> vertices; // sorted
        LatticeVector normal;
        std::int64_t offset;
        bool alive;
    };

    const std::vector<Piece>& pieces() const noexcept { return pieces_; }

private:
    std::vector<std::size_t> initial_simplex() const
    {
        std::vector<std::size_t> chosen{0};
        std::vector<RationalVector> dirs;
        for (std::size_t i = 1; i < pts_.size() && chosen.size() <= dim_; ++i) {
            auto trial = dirs;
            trial.push_back(to_rational(pts_[i] - pts_[0]));
            if (rank(trial) > dirs.size()) {
                dirs = std::move(trial);
                chosen.push_back(i);
            }
        }
        return chosen;
    }

    void add_piece(std::vector<std::size_t> verts)
    {
        std::sort(verts.begin(), verts.end());
        std::vector<const LatticeVector*> ptrs;
        for (auto v : verts)
            ptrs.push_back(&pts_[v]);
        LatticeVector normal = hyperplane_normal(ptrs);
        require(!normal.empty(), ErrorKind::InternalInconsistency, "degenerate hull piece");
        __int128 off = dot128(normal, pts_[verts.front()]);
        if (dot128(normal, interior_) < off * static_cast<__int128>(dim_ + 1)) {
            for (auto& x : normal)
                x = -x;
            off = -off;
        }
        const std::size_t id = pieces_.size();
        for (std::size_t skip = 0; skip < verts.size(); ++skip) {
            std::vector<std::size_t> ridge;
            for (std::size_t i = 0; i < verts.size(); ++i)
                if (i != skip)
                    ridge.push_back(verts[i]);
            ridges_[ridge].push_back(id);
        }
        pieces_.push_back({std::move(verts), std::move(normal), static_cast<std::int64_t>(off), true});
    }

    void insert(std::size_t p)
    {
        std::vector<std::size_t> visible;
        for (std::size_t id = 0; id < pieces_.size(); ++id)
            if (pieces_[id].alive && dot128(pieces_[id].normal, pts_[p]) < pieces_[id].offset)
                visible.push_back(id);
        if (visible.empty())
            return;
        std::set<std::size_t> vis(visible.begin(), visible.end());
        std::vector<std::vector<std::size_t>> horizon;
        for (auto id : visible) {
            const auto& verts = pieces_[id].vertices;
            for (std::size_t skip = 0; skip < verts.size(); ++skip) {
                std::vector<std::size_t> ridge;
                for (std::size_t i = 0; i < verts.size(); ++i)
                    if (i != skip)
                        ridge.push_back(verts[i]);
                auto& owners = ridges_[ridge];
                bool shared_with_hidden = false;
                for (auto o : owners)
                    if (o != id && !vis.count(o))
                        shared_with_hidden = true;
                if (shared_with_hidden)
                    horizon.push_back(ridge);
                owners.erase(std::remove(owners.begin(), owners.end(), id), owners.end());
            }
            pieces_[id].alive = false;
        }
        for (auto& ridge : horizon) {
            ridge.push_back(p);
            add_piece(std::move(ridge));
        }
    }

    const std::vector<LatticeVector>& pts_;
    std::size_t dim_;
    LatticeVector interior_; // sum of the initial simplex vertices (= (dim+1) * centroid)
    std::vector<Piece> pieces_;
    std::map<std::vector<std::size_t>, std::vector<std::size_t>> ridges_;
};

inline std::vector<LatticeVector> sorted_unique(std::vector<LatticeVector> pts)
{
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

namespace hull_impl {

struct RawHull {
    std::vector<HullFacet> facets;
    std::vector<std::vector<std::size_t>> piece_vertices;
    std::vector<HullFacet> piece_facet;
};

inline bool run(const std::vector<LatticeVector>& pts, RawHull& out)
{
    const std::size_t dim = pts.front().size();
    if (dim == 1) {
        auto [lo, hi] = std::minmax_element(pts.begin(), pts.end());
        if ((*lo)[0] == (*hi)[0])
            return false;
        HullFacet lower{{1}, (*lo)[0]}, upper{{-1}, -(*hi)[0]};
        out.facets = {upper, lower}; // sorted: normal -1 before 1
        out.piece_vertices = {{static_cast<std::size_t>(lo - pts.begin())}, {static_cast<std::size_t>(hi - pts.begin())}};
        out.piece_facet = {lower, upper};
        return true;
    }
    IncrementalHull h(pts);
    if (!h.build())
        return false;
    std::set<HullFacet> facets;
    for (const auto& piece : h.pieces()) {
        if (!piece.alive)
            continue;
        HullFacet f{piece.normal, piece.offset};
        facets.insert(f);
        out.piece_vertices.push_back(piece.vertices);
        out.piece_facet.push_back(f);
    }
    out.facets.assign(facets.begin(), facets.end());
    return true;
}

inline std::vector<std::size_t> vertex_indices(const std::vector<LatticeVector>& pts, const RawHull& raw)
{
    const std::size_t dim = pts.front().size();
    std::set<std::size_t> used;
    for (const auto& pv : raw.piece_vertices)
        used.insert(pv.begin(), pv.end());
    std::vector<std::size_t> out;
    for (auto i : used) {
        std::vector<LatticeVector> normals;
        for (const auto& f : raw.facets)
            if (dot128(f.normal, pts[i]) == f.offset)
                normals.push_back(f.normal);
        if (rank(normals) == dim)
            out.push_back(i);
    }
    return out;
}

} // namespace hull_impl

/// Full-dimensional hull; throws DegenerateInput otherwise.
inline HullResult convex_hull(const std::vector<LatticeVector>& input)
{
    require(!input.empty(), ErrorKind::DegenerateInput, "empty point set");
    const std::size_t dim = input.front().size();
    require(dim >= 1, ErrorKind::DegenerateInput, "zero-dimensional ambient space");
    for (const auto& p : input)
        require(p.size() == dim, ErrorKind::InvalidInput, "points of mixed dimension");
    std::vector<LatticeVector> pts = sorted_unique(input);

    hull_impl::RawHull raw;
    if (!hull_impl::run(pts, raw))
        fail(ErrorKind::DegenerateInput, "points do not affinely span R^" + std::to_string(dim));
    std::vector<std::size_t> vidx = hull_impl::vertex_indices(pts, raw);
    if (vidx.size() != pts.size()) {
        std::vector<LatticeVector> verts;
        for (auto i : vidx)
            verts.push_back(pts[i]);
        pts = std::move(verts); // still sorted
        raw = {};
        hull_impl::run(pts, raw);
    }

    HullResult out;
    out.dim = dim;
    out.points = pts;
    out.facets = raw.facets;
    out.incidence.resize(out.facets.size());
    for (std::size_t f = 0; f < out.facets.size(); ++f)
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (dot128(out.facets[f].normal, pts[i]) == out.facets[f].offset)
                out.incidence[f].push_back(i);
    for (std::size_t k = 0; k < raw.piece_vertices.size(); ++k) {
        auto it = std::lower_bound(out.facets.begin(), out.facets.end(), raw.piece_facet[k]);
        out.pieces.push_back({raw.piece_vertices[k], static_cast<std::size_t>(it - out.facets.begin())});
    }
    return out;
}

/// Affine dimension of a point set (-1 for the empty set).
inline int affine_dimension(const std::vector<LatticeVector>& pts)
{
    if (pts.empty())
        return -1;
    std::vector<LatticeVector> diffs;
    for (const auto& p : pts)
        diffs.push_back(p - pts.front());
    return static_cast<int>(rank(diffs));
}

/// Extreme points of an arbitrary (possibly lower-dimensional) finite set, sorted.
inline std::vector<LatticeVector> extreme_points(const std::vector<LatticeVector>& input)
{
    std::vector<LatticeVector> pts = sorted_unique(input);
    if (pts.size() <= 1)
        return pts;
    const std::size_t dim = pts.front().size();
    // affine basis of the span
    std::vector<LatticeVector> basis;
    std::vector<RationalVector> qbasis;
    for (const auto& p : pts) {
        auto trial = qbasis;
        trial.push_back(to_rational(p - pts.front()));
        if (rank(trial) > qbasis.size()) {
            qbasis = std::move(trial);
            basis.push_back(p - pts.front());
        }
    }
    const std::size_t r = basis.size();
    if (r == dim)
        return convex_hull(pts).points;

    // pivot columns where the basis restricted is invertible
    std::vector<std::size_t> cols;
    for (std::size_t c = 0; c < dim && cols.size() < r; ++c) {
        std::vector<RationalVector> restricted;
        for (const auto& b : qbasis) {
            RationalVector row;
            for (auto cc : cols)
                row.push_back(b[cc]);
            row.push_back(b[c]);
            restricted.push_back(row);
        }
        if (rank(restricted) == cols.size() + 1)
            cols.push_back(c);
    }
    std::vector<LatticeVector> square;
    for (const auto& b : basis) {
        LatticeVector row;
        for (auto c : cols)
            row.push_back(b[c]);
        square.push_back(row);
    }
    std::vector<RationalVector> coords;
    Integer common = 1;
    for (const auto& p : pts) {
        RationalVector target;
        for (auto c : cols)
            target.emplace_back(p[c] - pts.front()[c]);
        coords.push_back(solve_row_combination(square, target));
        for (const auto& x : coords.back())
            common = lcm(common, denominator_of(x));
    }
    std::map<LatticeVector, std::size_t> back;
    std::vector<LatticeVector> scaled;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        LatticeVector s;
        for (const auto& x : coords[i])
            s.push_back(to_int64(numerator_of(x * common)));
        back[s] = i;
        scaled.push_back(std::move(s));
    }
    std::vector<LatticeVector> out;
    for (const auto& v : convex_hull(scaled).points)
        out.push_back(pts[back.at(v)]);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace qbary::detail
