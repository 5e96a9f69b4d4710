#pragma once

// Exact scalars and univariate algebra in the dilation variable k.
//
// Rational is GMP's mpq through Boost.Multiprecision, so every stored value is
// already canonical (reduced, positive denominator).

#include <boost/multiprecision/gmp.hpp>

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <regex>
#include <string>
#include <utility>
#include <vector>

#include "qbary/error.hpp"

namespace qbary {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using RationalVector = std::vector<Rational>;

inline Integer numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integral(const Rational& r) { return denominator_of(r) == 1; }

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& r) { return r.str(); }

inline Rational parse_rational(const std::string& text)
{
    static const std::regex pattern(R"(\s*([+-]?[0-9]+)\s*(?:/\s*([+-]?[0-9]+)\s*)?)");
    std::smatch m;
    if (!std::regex_match(text, m, pattern))
        fail(ErrorKind::InvalidInput, "not a rational number: '" + text + "'");
    Integer num(m[1].str().front() == '+' ? m[1].str().substr(1) : m[1].str());
    if (!m[2].matched)
        return Rational(num);
    Integer den(m[2].str().front() == '+' ? m[2].str().substr(1) : m[2].str());
    require(den != 0, ErrorKind::InvalidInput, "zero denominator in '" + text + "'");
    return Rational(num, den);
}

inline std::string to_string(const RationalVector& v)
{
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            out += ", ";
        out += to_string(v[i]);
    }
    return out + ")";
}

inline Rational dot(const RationalVector& a, const RationalVector& b)
{
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

inline RationalVector operator-(const RationalVector& a, const RationalVector& b)
{
    RationalVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i] - b[i];
    return out;
}

inline RationalVector operator+(const RationalVector& a, const RationalVector& b)
{
    RationalVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i] + b[i];
    return out;
}

inline RationalVector operator*(const Rational& s, const RationalVector& a)
{
    RationalVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = s * a[i];
    return out;
}

inline bool is_zero(const RationalVector& v)
{
    for (const auto& x : v)
        if (x != 0)
            return false;
    return true;
}

// ---------------------------------------------------------------------------
// Polynomial

/// Dense univariate polynomial over Q, coefficient i multiplies k^i.
/// The zero polynomial has no coefficients.
class Polynomial {
public:
    Polynomial() = default;

    explicit Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    Polynomial(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) { trim(); }

    static Polynomial constant(const Rational& c) { return Polynomial(std::vector<Rational>{c}); }

    static Polynomial monomial(const Rational& c, std::size_t degree)
    {
        std::vector<Rational> coeffs(degree + 1);
        coeffs[degree] = c;
        return Polynomial(std::move(coeffs));
    }

    /// The polynomial k.
    static Polynomial variable() { return monomial(1, 1); }

    const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }

    bool is_zero() const noexcept { return coeffs_.empty(); }

    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

    Rational coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }

    Rational leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }

    Rational operator()(const Rational& k) const
    {
        Rational acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
            acc = acc * k + *it;
        return acc;
    }

    Polynomial derivative() const
    {
        std::vector<Rational> out;
        for (std::size_t i = 1; i < coeffs_.size(); ++i)
            out.push_back(coeffs_[i] * static_cast<long>(i));
        return Polynomial(std::move(out));
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b)
    {
        std::vector<Rational> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = a.coefficient(i) + b.coefficient(i);
        return Polynomial(std::move(out));
    }

    friend Polynomial operator-(const Polynomial& a) { return Rational(-1) * a; }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
    {
        if (a.is_zero() || b.is_zero())
            return {};
        std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return Polynomial(std::move(out));
    }

    friend Polynomial operator*(const Rational& s, const Polynomial& a)
    {
        std::vector<Rational> out(a.coeffs_);
        for (auto& c : out)
            c *= s;
        return Polynomial(std::move(out));
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

    std::string str(const std::string& var = "k") const
    {
        if (is_zero())
            return "0";
        std::string out;
        for (int i = degree(); i >= 0; --i) {
            const Rational& c = coeffs_[static_cast<std::size_t>(i)];
            if (c == 0)
                continue;
            if (!out.empty())
                out += c < 0 ? " - " : " + ";
            else if (c < 0)
                out += "-";
            Rational a = c < 0 ? Rational(-c) : c;
            if (i == 0 || a != 1)
                out += to_string(a);
            if (i >= 1)
                out += (i == 0 || a != 1 ? "*" : "") + var;
            if (i >= 2)
                out += "^" + std::to_string(i);
        }
        return out;
    }

private:
    void trim()
    {
        while (!coeffs_.empty() && coeffs_.back() == 0)
            coeffs_.pop_back();
    }

    std::vector<Rational> coeffs_;
};

/// Euclidean division a = q*b + r with deg r < deg b.
inline std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.str(); }

inline std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b)
{
    require(!b.is_zero(), ErrorKind::InvalidInput, "polynomial division by zero");
    std::vector<Rational> rem(a.coefficients());
    const int db = b.degree();
    if (a.degree() < db)
        return {Polynomial{}, a};
    std::vector<Rational> quot(static_cast<std::size_t>(a.degree() - db + 1));
    const Rational lead = b.leading();
    for (int i = a.degree(); i >= db; --i) {
        Rational c = rem[static_cast<std::size_t>(i)] / lead;
        quot[static_cast<std::size_t>(i - db)] = c;
        if (c == 0)
            continue;
        for (int j = 0; j <= db; ++j)
            rem[static_cast<std::size_t>(i - db + j)] -= c * b.coefficient(static_cast<std::size_t>(j));
    }
    rem.resize(static_cast<std::size_t>(db));
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

/// Monic greatest common divisor; gcd(0,0) = 0.
inline Polynomial gcd(Polynomial a, Polynomial b)
{
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero())
        return a;
    return Rational(1) / a.leading() * a;
}

// ---------------------------------------------------------------------------
// RationalFunction

/// num/den in lowest terms with a monic denominator (so equal functions compare equal).
class RationalFunction {
public:
    RationalFunction() : num_(), den_(Polynomial::constant(1)) {}

    RationalFunction(Polynomial num, Polynomial den)
    {
        require(!den.is_zero(), ErrorKind::InvalidInput, "rational function with zero denominator");
        if (num.is_zero()) {
            den_ = Polynomial::constant(1);
            return;
        }
        Polynomial g = gcd(num, den);
        num_ = divmod(num, g).first;
        den_ = divmod(den, g).first;
        Rational lead = den_.leading();
        num_ = Rational(1) / lead * num_;
        den_ = Rational(1) / lead * den_;
    }

    const Polynomial& numerator() const noexcept { return num_; }
    const Polynomial& denominator() const noexcept { return den_; }

    bool is_zero() const noexcept { return num_.is_zero(); }

    Rational operator()(const Rational& k) const
    {
        Rational d = den_(k);
        require(d != 0, ErrorKind::InvalidInput, "rational function evaluated at a pole");
        return num_(k) / d;
    }

    friend bool operator==(const RationalFunction& a, const RationalFunction& b)
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    std::string str() const { return "(" + num_.str() + ") / (" + den_.str() + ")"; }

private:
    Polynomial num_;
    Polynomial den_;
};

// ---------------------------------------------------------------------------
// LaurentSeries

/// Expansion sum_j c_j k^{-j}, truncated after `order` terms.
struct LaurentSeries {
    std::vector<Rational> coefficients;

    std::size_t order() const noexcept { return coefficients.size(); }

    LaurentSeries truncated(std::size_t m) const
    {
        require(m <= order(), ErrorKind::InvalidInput, "cannot extend a truncated series");
        return {std::vector<Rational>(coefficients.begin(), coefficients.begin() + static_cast<long>(m))};
    }

    friend bool operator==(const LaurentSeries&, const LaurentSeries&) = default;
};

/// Expansion of f at k = infinity. With t = 1/k and m = deg den, both
/// num and den become polynomials in t after multiplying by t^m, and the
/// coefficients come out of exact power-series division.
inline LaurentSeries laurent_expand(const RationalFunction& f, std::size_t order)
{
    const Polynomial& num = f.numerator();
    const Polynomial& den = f.denominator();
    if (num.degree() > den.degree())
        fail(ErrorKind::NotBoundedAtInfinity,
             "numerator degree " + std::to_string(num.degree()) + " exceeds denominator degree "
                 + std::to_string(den.degree()));
    const auto m = static_cast<std::size_t>(den.degree());
    // reversed coefficient sequences: index = power of t
    std::vector<Rational> n_t(m + 1), d_t(m + 1);
    for (std::size_t i = 0; i <= m; ++i) {
        n_t[m - i] = num.coefficient(i);
        d_t[m - i] = den.coefficient(i);
    }
    LaurentSeries out;
    out.coefficients.resize(order);
    for (std::size_t j = 0; j < order; ++j) {
        Rational acc = j <= m ? n_t[j] : Rational(0);
        for (std::size_t i = 1; i <= std::min(j, m); ++i)
            acc -= d_t[i] * out.coefficients[j - i];
        out.coefficients[j] = acc / d_t[0];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Interpolation

struct Sample {
    std::int64_t k;
    Rational value;
};

/// Unique polynomial of degree < samples.size() through every sample
/// (Newton divided differences).
inline Polynomial poly_fit(const std::vector<Sample>& samples)
{
    require(!samples.empty(), ErrorKind::InvalidInput, "poly_fit needs at least one sample");
    const std::size_t n = samples.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            require(samples[i].k != samples[j].k, ErrorKind::InvalidInput,
                    "duplicate abscissa " + std::to_string(samples[i].k));

    std::vector<Rational> dd(n);
    for (std::size_t i = 0; i < n; ++i)
        dd[i] = samples[i].value;
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = n - 1; i >= level; --i)
            dd[i] = (dd[i] - dd[i - 1]) / Rational(samples[i].k - samples[i - level].k);

    Polynomial result = Polynomial::constant(dd[n - 1]);
    for (std::size_t i = n - 1; i-- > 0;) {
        Polynomial factor{Rational(-samples[i].k), Rational(1)};
        result = result * factor + Polynomial::constant(dd[i]);
    }
    return result;
}

// ---------------------------------------------------------------------------
// Bernoulli numbers

/// B_0..B_upto with B_1 = +1/2, i.e. the coefficients of x/(1 - e^{-x}) = sum B_j x^j / j!.
inline std::vector<Rational> bernoulli_numbers(std::size_t upto)
{
    std::vector<Rational> b(upto + 1);
    b[0] = 1;
    // sum_{j=0}^{m} C(m+1, j) B_j^+ = m + 1
    for (std::size_t m = 1; m <= upto; ++m) {
        Rational acc = 0;
        Integer binom = 1; // C(m+1, j)
        for (std::size_t j = 0; j < m; ++j) {
            acc += Rational(binom) * b[j];
            binom = binom * (m + 1 - j) / (j + 1);
        }
        b[m] = (Rational(static_cast<long>(m + 1)) - acc) / Rational(binom);
    }
    return b;
}

inline Rational bernoulli(std::size_t j) { return bernoulli_numbers(j)[j]; }

inline Integer factorial(std::size_t n)
{
    Integer f = 1;
    for (std::size_t i = 2; i <= n; ++i)
        f *= i;
    return f;
}

inline Integer binomial(std::size_t n, std::size_t k)
{
    if (k > n)
        return 0;
    Integer r = 1;
    for (std::size_t i = 0; i < k; ++i)
        r = r * (n - i) / (i + 1);
    return r;
}

// ---------------------------------------------------------------------------
// Real-root bookkeeping via Sturm sequences

inline int sign(const Rational& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

inline std::vector<Polynomial> sturm_sequence(const Polynomial& p)
{
    std::vector<Polynomial> seq{p, p.derivative()};
    while (!seq.back().is_zero()) {
        auto r = divmod(seq[seq.size() - 2], seq.back()).second;
        if (r.is_zero())
            break;
        seq.push_back(-r);
    }
    if (seq.back().is_zero())
        seq.pop_back();
    return seq;
}

namespace detail {

inline int sign_changes(const std::vector<int>& signs)
{
    int changes = 0, last = 0;
    for (int s : signs) {
        if (s == 0)
            continue;
        if (last != 0 && s != last)
            ++changes;
        last = s;
    }
    return changes;
}

} // namespace detail

/// Number of distinct real roots of p in (a, +inf). p must be nonzero.
inline int count_roots_above(const Polynomial& p, const Rational& a)
{
    auto seq = sturm_sequence(p);
    std::vector<int> at_a, at_inf;
    for (const auto& q : seq) {
        at_a.push_back(sign(q(a)));
        at_inf.push_back(sign(q.leading()));
    }
    return detail::sign_changes(at_a) - detail::sign_changes(at_inf);
}

} // namespace qbary
