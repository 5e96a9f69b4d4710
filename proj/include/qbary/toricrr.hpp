#pragma once

// Toric data, virtual polytopes and mixed volumes, and the Bernoulli-number
// formulas for Ehrhart coefficients of Delzant polytopes.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qbary/ehrhart.hpp"
#include "qbary/error.hpp"
#include "qbary/exactnum.hpp"
#include "qbary/expansion.hpp"
#include "qbary/lattice.hpp"
#include "qbary/polytope.hpp"

namespace qbary {

/// Rays v_i, offsets b_i and the polytope {<u, v_i> >= -b_i}, every inequality a facet.
class ToricData {
public:
    ToricData(std::vector<LatticeVector> rays, std::vector<std::int64_t> offsets)
        : rays_(std::move(rays)), offsets_(std::move(offsets)), polytope_(polytope_from_halfspaces(rays_, offsets_))
    {
        for (const auto& r : rays_)
            require(is_primitive(r), ErrorKind::InvalidInput, "ray " + to_string(r) + " is not primitive");
        require(polytope_.facets().size() == rays_.size(), ErrorKind::InvalidInput,
                "toric data has redundant or repeated rays");
        for (std::size_t i = 0; i < rays_.size(); ++i) {
            auto f = polytope_.facet_index(rays_[i]);
            require(f.has_value() && polytope_.facets()[*f].offset == offsets_[i], ErrorKind::InvalidInput,
                    "ray " + to_string(rays_[i]) + " does not support a facet");
            facet_of_ray_.push_back(*f);
        }
        Classification c = classify(polytope_);
        reflexive_ = c.reflexive;
        delzant_ = c.delzant;
    }

    /// Toric data read off the facets of a polytope.
    static ToricData from_polytope(const Polytope& p)
    {
        std::vector<LatticeVector> rays;
        std::vector<std::int64_t> offsets;
        for (const auto& f : p.facets()) {
            rays.push_back(f.normal);
            offsets.push_back(f.offset);
        }
        return ToricData(std::move(rays), std::move(offsets));
    }

    std::size_t dim() const noexcept { return polytope_.dim(); }
    const std::vector<LatticeVector>& rays() const noexcept { return rays_; }
    const std::vector<std::int64_t>& offsets() const noexcept { return offsets_; }
    const Polytope& polytope() const noexcept { return polytope_; }
    std::size_t facet_of_ray(std::size_t i) const { return facet_of_ray_.at(i); }
    bool delzant() const noexcept { return delzant_; }
    bool reflexive() const noexcept { return reflexive_; }
    /// All b_i = 1 on a reflexive polytope.
    bool fano() const noexcept { return reflexive_; }

private:
    std::vector<LatticeVector> rays_;
    std::vector<std::int64_t> offsets_;
    Polytope polytope_;
    std::vector<std::size_t> facet_of_ray_;
    bool reflexive_ = false;
    bool delzant_ = false;
};

// ---------------------------------------------------------------------------
// Virtual polytopes

/// Formal integer combination sum c_j P_j of possibly degenerate polytopes.
class VirtualPolytope {
public:
    struct Term {
        Integer coefficient;
        VPolytope polytope;
    };

    VirtualPolytope() = default;
    explicit VirtualPolytope(std::size_t dim) : dim_(dim) {}
    VirtualPolytope(const VPolytope& p) : dim_(p.ambient_dim()), terms_{{1, p}} {}
    VirtualPolytope(const Polytope& p) : VirtualPolytope(VPolytope(p)) {}

    std::size_t ambient_dim() const noexcept { return dim_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }

    void add(const Integer& c, const VPolytope& p)
    {
        if (terms_.empty() && dim_ == 0)
            dim_ = p.ambient_dim();
        require(p.ambient_dim() == dim_, ErrorKind::InvalidInput, "virtual polytope terms of mixed dimension");
        if (c == 0)
            return;
        for (auto& t : terms_)
            if (t.polytope == p) {
                t.coefficient += c;
                return;
            }
        terms_.push_back({c, p});
    }

    friend VirtualPolytope operator+(VirtualPolytope a, const VirtualPolytope& b)
    {
        for (const auto& t : b.terms_)
            a.add(t.coefficient, t.polytope);
        return a;
    }

    friend VirtualPolytope operator*(const Integer& s, const VirtualPolytope& a)
    {
        VirtualPolytope out(a.dim_);
        for (const auto& t : a.terms_)
            out.add(s * t.coefficient, t.polytope);
        return out;
    }

    friend VirtualPolytope operator-(const VirtualPolytope& a, const VirtualPolytope& b) { return a + Integer(-1) * b; }

    /// Minkowski sums (sum of c_j P_j over c_j > 0, sum of |c_j| P_j over c_j < 0).
    std::pair<VPolytope, VPolytope> two_term_form() const
    {
        VPolytope pos = VPolytope::point(LatticeVector(dim_, 0));
        VPolytope neg = pos;
        for (const auto& t : terms_) {
            if (t.coefficient == 0)
                continue;
            const auto mult = to_int64(abs(t.coefficient));
            VPolytope scaled = dilate(t.polytope, mult);
            if (t.coefficient > 0)
                pos = minkowski_sum(pos, scaled);
            else
                neg = minkowski_sum(neg, scaled);
        }
        return {pos, neg};
    }

private:
    std::size_t dim_ = 0;
    std::vector<Term> terms_;
};

/// A - B ~ C - D iff A + D = C + B.
inline bool virtual_equal(const VirtualPolytope& x, const VirtualPolytope& y)
{
    auto [xp, xn] = x.two_term_form();
    auto [yp, yn] = y.two_term_form();
    return minkowski_sum(xp, yn) == minkowski_sum(yp, xn);
}

// ---------------------------------------------------------------------------
// Mixed volumes

/// Caches volumes of Minkowski sums across mixed-volume evaluations.
class MixedVolumeEngine {
public:
    /// V(K_1 [m_1], ..., K_r [m_r]) for actual (possibly degenerate) polytopes, sum m_j = n:
    /// n! V = sum over 0 != s <= m of prod C(m_j, s_j) (-1)^{n - |s|} Vol(sum s_j K_j).
    Rational basic(const std::vector<std::pair<VPolytope, std::size_t>>& args)
    {
        require(!args.empty(), ErrorKind::InvalidInput, "mixed volume of nothing");
        const std::size_t n = args.front().first.ambient_dim();
        std::size_t total = 0;
        for (const auto& [k, m] : args) {
            require(k.ambient_dim() == n, ErrorKind::InvalidInput, "mixed volume arguments of mixed dimension");
            total += m;
        }
        require(total == n, ErrorKind::InvalidInput, "multiplicities must sum to the dimension");

        // merge equal polytopes
        std::vector<std::pair<VPolytope, std::size_t>> merged;
        for (const auto& [k, m] : args) {
            if (m == 0)
                continue;
            auto it = std::find_if(merged.begin(), merged.end(), [&](const auto& e) { return e.first == k; });
            if (it == merged.end())
                merged.emplace_back(k, m);
            else
                it->second += m;
        }
        if (merged.size() == 1)
            return volume_of(merged.front().first);

        Rational acc = 0;
        std::vector<std::size_t> s(merged.size(), 0);
        while (true) {
            std::size_t j = 0;
            for (; j < s.size(); ++j) {
                if (s[j] < merged[j].second) {
                    ++s[j];
                    break;
                }
                s[j] = 0;
            }
            if (j == s.size())
                break;
            std::size_t size = 0;
            Integer mult = 1;
            VPolytope sum = VPolytope::point(LatticeVector(n, 0));
            for (std::size_t i = 0; i < s.size(); ++i) {
                size += s[i];
                mult *= binomial(merged[i].second, s[i]);
                if (s[i] > 0)
                    sum = minkowski_sum(sum, dilate(merged[i].first, static_cast<std::int64_t>(s[i])));
            }
            Rational vol = volume_of(sum);
            if (vol == 0)
                continue;
            acc += ((n - size) % 2 ? -1 : 1) * Rational(mult) * vol;
        }
        return acc / Rational(factorial(n));
    }

    /// Multilinear extension to virtual arguments.
    Rational operator()(const std::vector<std::pair<VirtualPolytope, std::size_t>>& args)
    {
        require(!args.empty(), ErrorKind::InvalidInput, "mixed volume of nothing");
        const std::size_t n = args.front().first.ambient_dim();
        std::size_t total = 0;
        for (const auto& [k, m] : args) {
            require(k.ambient_dim() == n, ErrorKind::InvalidInput, "mixed volume arguments of mixed dimension");
            total += m;
        }
        require(total == n, ErrorKind::InvalidInput, "multiplicities must sum to the dimension");

        // expand slot group g, V(sum_t c_t P_t [mu]) = sum over compositions alpha of mu:
        // multinomial(mu; alpha) prod c_t^alpha_t V(.., P_t [alpha_t], ..)
        Rational acc = 0;
        std::vector<std::pair<VPolytope, std::size_t>> current;
        std::function<void(std::size_t, Rational)> expand_group = [&](std::size_t g, Rational coeff) {
            if (g == args.size()) {
                acc += coeff * basic(current);
                return;
            }
            const auto& terms = args[g].first.terms();
            const std::size_t mu = args[g].second;
            if (mu == 0) {
                expand_group(g + 1, coeff);
                return;
            }
            if (terms.empty())
                return; // the virtual zero kills the whole product
            std::function<void(std::size_t, std::size_t, Rational)> compose = [&](std::size_t t, std::size_t left,
                                                                                  Rational c) {
                if (t + 1 == terms.size()) {
                    Rational cc = c * Rational(boost::multiprecision::pow(terms[t].coefficient, static_cast<unsigned>(left)))
                                  / Rational(factorial(left));
                    if (left > 0)
                        current.emplace_back(terms[t].polytope, left);
                    expand_group(g + 1, cc);
                    if (left > 0)
                        current.pop_back();
                    return;
                }
                for (std::size_t a = 0; a <= left; ++a) {
                    Rational cc = c * Rational(boost::multiprecision::pow(terms[t].coefficient, static_cast<unsigned>(a)))
                                  / Rational(factorial(a));
                    if (a > 0)
                        current.emplace_back(terms[t].polytope, a);
                    compose(t + 1, left - a, cc);
                    if (a > 0)
                        current.pop_back();
                }
            };
            compose(0, mu, coeff * Rational(factorial(mu)));
        };
        expand_group(0, 1);
        return acc;
    }

private:
    Rational volume_of(const VPolytope& p)
    {
        auto it = cache_.find(p);
        if (it != cache_.end())
            return it->second;
        Rational v = volume(p);
        cache_.emplace(p, v);
        return v;
    }

    std::map<VPolytope, Rational> cache_;
};

inline Rational mixed_volume(const std::vector<std::pair<VirtualPolytope, std::size_t>>& args)
{
    MixedVolumeEngine engine;
    return engine(args);
}

// ---------------------------------------------------------------------------
// Divisor polytopes

namespace detail {

/// The polytope of (rays, offsets) when it has exactly one facet per ray.
inline std::optional<Polytope> ample_polytope(const std::vector<LatticeVector>& rays,
                                              const std::vector<std::int64_t>& offsets)
{
    try {
        Polytope p = polytope_from_halfspaces(rays, offsets);
        if (p.facets().size() != rays.size())
            return std::nullopt;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            auto f = p.facet_index(rays[i]);
            if (!f || p.facets()[*f].offset != offsets[i])
                return std::nullopt;
        }
        return p;
    } catch (const Error&) {
        return std::nullopt;
    }
}

} // namespace detail

constexpr std::int64_t kAmpleShiftCap = 16;

/// P_D for D = sum c_i D_i: the polytope itself when D passes the facet test,
/// otherwise P_{mL+D} - P_{mL} for the least m >= 1 that passes.
inline VirtualPolytope divisor_polytope(const ToricData& t, const std::vector<std::int64_t>& coeffs)
{
    require(t.delzant(), ErrorKind::PreconditionViolation, "divisor polytopes need Delzant data");
    require(coeffs.size() == t.rays().size(), ErrorKind::InvalidInput, "one coefficient per ray required");
    const std::size_t n = t.dim();
    if (std::all_of(coeffs.begin(), coeffs.end(), [](auto c) { return c == 0; }))
        return VirtualPolytope(VPolytope::point(LatticeVector(n, 0)));
    if (auto p = detail::ample_polytope(t.rays(), coeffs))
        return VirtualPolytope(*p);
    for (std::int64_t m = 1; m <= kAmpleShiftCap; ++m) {
        std::vector<std::int64_t> shifted, base;
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            base.push_back(m * t.offsets()[i]);
            shifted.push_back(base.back() + coeffs[i]);
        }
        auto a = detail::ample_polytope(t.rays(), shifted);
        if (!a)
            continue;
        auto b = detail::ample_polytope(t.rays(), base);
        require(b.has_value(), ErrorKind::InternalInconsistency, "multiple of an ample class failed the facet test");
        VirtualPolytope out(n);
        out.add(1, VPolytope(*a));
        out.add(-1, VPolytope(*b));
        return out;
    }
    fail(ErrorKind::AmplenessShiftFailure, "no shift m <= " + std::to_string(kAmpleShiftCap) + " makes the divisor ample");
}

// ---------------------------------------------------------------------------
// Bernoulli-number formulas

struct HrrCoefficients {
    std::vector<Rational> a; // a_0..a_n, index = power of k
    Rational leading;        // Vol(P)
    Rational subleading;     // (n/2) V(P, n-1; P_{-K}, 1)
};

/// a_j = sum over l with |l| = n-j of n!/j! prod B_{l_i}/l_i! V(P, j; P_{D_1}, l_1; ...).
inline HrrCoefficients hrr_coefficients(const ToricData& t, bool check_against_fit = true)
{
    require(t.delzant(), ErrorKind::PreconditionViolation, "the Bernoulli formula needs Delzant data");
    const std::size_t n = t.dim();
    const std::size_t d = t.rays().size();
    const std::vector<Rational> bern = bernoulli_numbers(n);
    MixedVolumeEngine mv;
    const VirtualPolytope p(t.polytope());

    std::vector<VirtualPolytope> divisors;
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<std::int64_t> e(d, 0);
        e[i] = 1;
        divisors.push_back(divisor_polytope(t, e));
    }

    HrrCoefficients out;
    out.a.assign(n + 1, 0);
    std::vector<std::size_t> ell(d, 0);
    for (std::size_t j = 0; j <= n; ++j) {
        const std::size_t rest = n - j;
        std::function<void(std::size_t, std::size_t, Rational)> visit = [&](std::size_t i, std::size_t left,
                                                                            Rational coeff) {
            if (coeff == 0)
                return;
            if (i + 1 == d) {
                ell[i] = left;
                Rational c = coeff * bern[left] / Rational(factorial(left));
                if (c == 0)
                    return;
                std::vector<std::pair<VirtualPolytope, std::size_t>> args;
                if (j > 0)
                    args.emplace_back(p, j);
                for (std::size_t r = 0; r < d; ++r)
                    if (ell[r] > 0)
                        args.emplace_back(divisors[r], ell[r]);
                out.a[j] += c * mv(args);
                return;
            }
            for (std::size_t l = 0; l <= left; ++l) {
                ell[i] = l;
                visit(i + 1, left - l, coeff * bern[l] / Rational(factorial(l)));
            }
        };
        visit(0, rest, Rational(factorial(n)) / Rational(factorial(j)));
    }

    out.leading = mv({{p, n}});
    if (n >= 1) {
        VirtualPolytope anticanonical = divisor_polytope(t, std::vector<std::int64_t>(d, 1));
        std::vector<std::pair<VirtualPolytope, std::size_t>> args{{anticanonical, 1}};
        if (n > 1)
            args.emplace_back(p, n - 1);
        out.subleading = Rational(static_cast<long>(n), 2) * mv(args);
    }
    require(out.a[n] == out.leading, ErrorKind::InternalInconsistency, "top coefficient differs from the volume");
    require(out.a[n - 1] == out.subleading, ErrorKind::InternalInconsistency,
            "second coefficient differs from the anticanonical mixed volume");
    if (check_against_fit) {
        Polynomial fit = ehrhart_polynomial(t.polytope()).poly;
        for (std::size_t j = 0; j <= n; ++j)
            require(fit.coefficient(j) == out.a[j], ErrorKind::InternalInconsistency,
                    "Bernoulli formula disagrees with the Ehrhart fit at a_" + std::to_string(j));
    }
    return out;
}

/// Toric data of the rooftop P_{v,q}: rays (v_i, 0), (0, 1), (v, -1) with offsets (b_i, 0, q).
inline ToricData rooftop_toric_data(const ToricData& t, const LatticeVector& v, std::int64_t q)
{
    std::vector<LatticeVector> rays;
    std::vector<std::int64_t> offsets;
    for (std::size_t i = 0; i < t.rays().size(); ++i) {
        LatticeVector r = t.rays()[i];
        r.push_back(0);
        rays.push_back(std::move(r));
        offsets.push_back(t.offsets()[i]);
    }
    LatticeVector up(t.dim() + 1, 0);
    up.back() = 1;
    rays.push_back(up);
    offsets.push_back(0);
    LatticeVector roof = v;
    roof.push_back(-1);
    rays.push_back(roof);
    offsets.push_back(q);
    return ToricData(std::move(rays), std::move(offsets));
}

struct RooftopFan {
    std::vector<LatticeVector> rays;
    std::int64_t q = 0;
};

/// The d+2 rays of the rooftop fan together with the canonical q.
inline RooftopFan rooftop_fan(const ToricData& t, const LatticeVector& v)
{
    require(v.size() == t.dim(), ErrorKind::InvalidInput, "v has the wrong dimension");
    RooftopFan fan;
    for (const auto& r : t.rays()) {
        LatticeVector x = r;
        x.push_back(0);
        fan.rays.push_back(std::move(x));
    }
    LatticeVector up(t.dim() + 1, 0);
    up.back() = 1;
    fan.rays.push_back(up);
    LatticeVector roof = v;
    roof.push_back(-1);
    fan.rays.push_back(roof);
    fan.q = canonical_rooftop_offset(t.polytope(), v);
    return fan;
}

struct RooftopCoefficients {
    std::int64_t q = 0;
    std::vector<Rational> c_prime;                      // c'_1..c'_{n+1}
    std::optional<std::vector<Rational>> from_formula; // Bernoulli route when the rooftop is Delzant
};

namespace detail {

inline std::vector<Rational> rooftop_c_prime(const Polytope& p, const Polynomial& e, const LatticeVector& v, std::int64_t q)
{
    const std::size_t n = p.dim();
    Polynomial c = ehrhart_polynomial(rooftop(p, v, q)).poly;
    std::vector<Rational> out;
    for (std::size_t j = 0; j <= n + 1; ++j) {
        Rational prev = j > 0 ? e.coefficient(j - 1) : Rational(0);
        out.push_back(c.coefficient(j) - q * prev - e.coefficient(j));
    }
    require(out.front() == 0, ErrorKind::InternalInconsistency, "c'_0 is not zero");
    out.erase(out.begin());
    return out;
}

} // namespace detail

/// c'_j = c_j - q a_{j-1} - a_j, c_j the Ehrhart coefficients of P_{v,q}.
inline RooftopCoefficients rooftop_coefficients(const ToricData& t, const LatticeVector& v, bool with_formula = false)
{
    require(t.delzant(), ErrorKind::PreconditionViolation, "rooftop coefficients need Delzant data");
    require(v.size() == t.dim(), ErrorKind::InvalidInput, "v has the wrong dimension");
    const Polytope& p = t.polytope();
    const Polynomial e = ehrhart_polynomial(p).poly;
    RooftopCoefficients out;
    out.q = canonical_rooftop_offset(p, v);
    out.c_prime = detail::rooftop_c_prime(p, e, v, out.q);
    require(detail::rooftop_c_prime(p, e, v, out.q + 1) == out.c_prime, ErrorKind::InternalInconsistency,
            "rooftop coefficients depend on q");
    if (with_formula) {
        ToricData roof = rooftop_toric_data(t, v, out.q);
        if (roof.delzant()) {
            HrrCoefficients c = hrr_coefficients(roof, false);
            std::vector<Rational> formula;
            for (std::size_t j = 1; j <= t.dim() + 1; ++j) {
                Rational prev = e.coefficient(j - 1);
                formula.push_back(c.a[j] - out.q * prev - e.coefficient(j));
            }
            require(formula == out.c_prime, ErrorKind::InternalInconsistency,
                    "Bernoulli formula for rooftop coefficients disagrees with the Ehrhart route");
            out.from_formula = std::move(formula);
        }
    }
    return out;
}

} // namespace qbary
