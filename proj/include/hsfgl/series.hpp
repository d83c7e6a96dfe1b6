#ifndef HSFGL_SERIES_HPP
#define HSFGL_SERIES_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hsfgl/exactnum.hpp"
#include "hsfgl/laurent.hpp"

namespace hsfgl {

namespace detail {

template <class K>
void require_same_field(const K& a, const K& b, const char* what) {
    if (!(a == b)) {
        throw FieldMismatch(std::string(what) + ": operands live over " + a.name() + " and " + b.name());
    }
}

std::string render_xy_monomial(std::size_t i, std::size_t j);

} // namespace detail

/// Univariate power series known modulo X^N. Storage is dense by degree.
template <ScalarField K>
class TruncSeries1 {
public:
    using Scalar = typename K::value_type;

    /// Zero series of precision N (N >= 1).
    TruncSeries1(K field, std::size_t precision) : field_(std::move(field)) {
        if (precision == 0) {
            throw InsufficientPrecision("series precision must be at least 1");
        }
        coeffs_.assign(precision, field_.zero());
    }

    TruncSeries1(K field, std::vector<Scalar> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) {
            throw InsufficientPrecision("series precision must be at least 1");
        }
    }

    static TruncSeries1 monomial(const K& field, Scalar c, std::size_t degree, std::size_t precision) {
        TruncSeries1 r(field, precision);
        if (degree < precision) {
            r.coeffs_[degree] = std::move(c);
        }
        return r;
    }
    /// The series X.
    static TruncSeries1 variable(const K& field, std::size_t precision) {
        return monomial(field, field.one(), 1, precision);
    }

    const K& field() const { return field_; }
    std::size_t precision() const { return coeffs_.size(); }
    const std::vector<Scalar>& coeffs() const { return coeffs_; }

    /// Coefficient of X^i; zero beyond the precision is not meaningful, so
    /// callers must stay below precision().
    const Scalar& operator[](std::size_t i) const { return coeffs_.at(i); }
    void set(std::size_t i, Scalar c) { coeffs_.at(i) = std::move(c); }

    std::optional<std::size_t> valuation() const {
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (!coeffs_[i].is_zero()) {
                return i;
            }
        }
        return std::nullopt;
    }
    bool is_zero() const { return !valuation().has_value(); }

    TruncSeries1 truncated(std::size_t precision) const {
        precision = std::min(precision, this->precision());
        return TruncSeries1(field_, std::vector<Scalar>(coeffs_.begin(), coeffs_.begin() + precision));
    }

    TruncSeries1& operator+=(const TruncSeries1& o) {
        detail::require_same_field(field_, o.field_, "series addition");
        coeffs_.resize(std::min(precision(), o.precision()), field_.zero());
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            coeffs_[i] = coeffs_[i] + o.coeffs_[i];
        }
        return *this;
    }
    TruncSeries1& operator-=(const TruncSeries1& o) { return *this += -o; }
    friend TruncSeries1 operator+(TruncSeries1 a, const TruncSeries1& b) { return a += b; }
    friend TruncSeries1 operator-(TruncSeries1 a, const TruncSeries1& b) { return a -= b; }
    TruncSeries1 operator-() const {
        TruncSeries1 r = *this;
        for (auto& c : r.coeffs_) {
            c = -c;
        }
        return r;
    }

    friend TruncSeries1 operator*(const TruncSeries1& a, const TruncSeries1& b) {
        detail::require_same_field(a.field_, b.field_, "series multiplication");
        const std::size_t n = std::min(a.precision(), b.precision());
        TruncSeries1 r(a.field_, n);
        for (std::size_t i = 0; i < n; ++i) {
            if (a.coeffs_[i].is_zero()) {
                continue;
            }
            for (std::size_t j = 0; i + j < n; ++j) {
                if (!b.coeffs_[j].is_zero()) {
                    r.coeffs_[i + j] = r.coeffs_[i + j] + a.coeffs_[i] * b.coeffs_[j];
                }
            }
        }
        return r;
    }
    TruncSeries1& operator*=(const TruncSeries1& o) { return *this = *this * o; }

    TruncSeries1 scaled(const Scalar& s) const {
        TruncSeries1 r = *this;
        for (auto& c : r.coeffs_) {
            c = c * s;
        }
        return r;
    }

    friend bool operator==(const TruncSeries1& a, const TruncSeries1& b) {
        return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
    }

private:
    K field_;
    std::vector<Scalar> coeffs_;
};

/// Bivariate power series in X, Y known modulo all monomials of total
/// degree >= N. Coefficients are stored by total degree, then by Y-degree.
template <ScalarField K>
class TruncSeries2 {
public:
    using Scalar = typename K::value_type;

    TruncSeries2(K field, std::size_t precision) : field_(std::move(field)), precision_(precision) {
        if (precision == 0) {
            throw InsufficientPrecision("series precision must be at least 1");
        }
        coeffs_.assign(precision * (precision + 1) / 2, field_.zero());
    }

    static TruncSeries2 monomial(const K& field, Scalar c, std::size_t i, std::size_t j, std::size_t precision) {
        TruncSeries2 r(field, precision);
        if (i + j < precision) {
            r.coeffs_[index(i, j)] = std::move(c);
        }
        return r;
    }
    static TruncSeries2 x(const K& field, std::size_t precision) { return monomial(field, field.one(), 1, 0, precision); }
    static TruncSeries2 y(const K& field, std::size_t precision) { return monomial(field, field.one(), 0, 1, precision); }

    const K& field() const { return field_; }
    std::size_t precision() const { return precision_; }

    /// Coefficient of X^i Y^j; requires i + j < precision().
    const Scalar& coeff(std::size_t i, std::size_t j) const {
        check_range(i, j);
        return coeffs_[index(i, j)];
    }
    void set(std::size_t i, std::size_t j, Scalar c) {
        check_range(i, j);
        coeffs_[index(i, j)] = std::move(c);
    }

    bool is_zero() const {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Scalar& c) { return c.is_zero(); });
    }

    /// Visits nonzero coefficients by increasing total degree, X-heavy first.
    template <class Fn>
    void for_each_nonzero(Fn&& fn) const {
        for (std::size_t d = 0; d < precision_; ++d) {
            for (std::size_t j = 0; j <= d; ++j) {
                const auto& c = coeffs_[index(d - j, j)];
                if (!c.is_zero()) {
                    fn(d - j, j, c);
                }
            }
        }
    }

    TruncSeries2 truncated(std::size_t precision) const {
        precision = std::min(precision, precision_);
        TruncSeries2 r(field_, precision);
        std::copy_n(coeffs_.begin(), r.coeffs_.size(), r.coeffs_.begin());
        return r;
    }

    /// F(Y, X).
    TruncSeries2 swapped() const {
        TruncSeries2 r(field_, precision_);
        for_each_nonzero([&](std::size_t i, std::size_t j, const Scalar& c) { r.coeffs_[index(j, i)] = c; });
        return r;
    }

    /// F(X, 0) as a univariate series.
    TruncSeries1<K> restrict_to_x() const {
        TruncSeries1<K> r(field_, precision_);
        for (std::size_t i = 0; i < precision_; ++i) {
            r.set(i, coeffs_[index(i, 0)]);
        }
        return r;
    }
    /// F(0, Y) as a univariate series in Y.
    TruncSeries1<K> restrict_to_y() const { return swapped().restrict_to_x(); }

    TruncSeries2& operator+=(const TruncSeries2& o) {
        detail::require_same_field(field_, o.field_, "series addition");
        if (o.precision_ < precision_) {
            *this = truncated(o.precision_);
        }
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            coeffs_[k] = coeffs_[k] + o.coeffs_[k];
        }
        return *this;
    }
    TruncSeries2& operator-=(const TruncSeries2& o) { return *this += -o; }
    friend TruncSeries2 operator+(TruncSeries2 a, const TruncSeries2& b) { return a += b; }
    friend TruncSeries2 operator-(TruncSeries2 a, const TruncSeries2& b) { return a -= b; }
    TruncSeries2 operator-() const {
        TruncSeries2 r = *this;
        for (auto& c : r.coeffs_) {
            c = -c;
        }
        return r;
    }

    friend TruncSeries2 operator*(const TruncSeries2& a, const TruncSeries2& b) {
        detail::require_same_field(a.field_, b.field_, "series multiplication");
        const std::size_t n = std::min(a.precision_, b.precision_);
        TruncSeries2 r(a.field_, n);
        // Gather b's support once; the laws handled here are often sparse.
        std::vector<std::pair<std::pair<std::size_t, std::size_t>, const Scalar*>> b_terms;
        b.for_each_nonzero([&](std::size_t i, std::size_t j, const Scalar& c) {
            if (i + j < n) {
                b_terms.push_back({{i, j}, &c});
            }
        });
        a.for_each_nonzero([&](std::size_t i1, std::size_t j1, const Scalar& ca) {
            const std::size_t d1 = i1 + j1;
            for (const auto& [ij, cb] : b_terms) {
                if (d1 + ij.first + ij.second >= n) {
                    break; // b_terms is sorted by total degree
                }
                auto& slot = r.coeffs_[index(i1 + ij.first, j1 + ij.second)];
                slot = slot + ca * *cb;
            }
        });
        return r;
    }
    TruncSeries2& operator*=(const TruncSeries2& o) { return *this = *this * o; }

    TruncSeries2 scaled(const Scalar& s) const {
        TruncSeries2 r = *this;
        for (auto& c : r.coeffs_) {
            c = c * s;
        }
        return r;
    }

    friend bool operator==(const TruncSeries2& a, const TruncSeries2& b) {
        return a.field_ == b.field_ && a.precision_ == b.precision_ && a.coeffs_ == b.coeffs_;
    }

private:
    static std::size_t index(std::size_t i, std::size_t j) {
        const std::size_t d = i + j;
        return d * (d + 1) / 2 + j;
    }
    void check_range(std::size_t i, std::size_t j) const {
        if (i + j >= precision_) {
            throw InsufficientPrecision("monomial X^" + std::to_string(i) + "*Y^" + std::to_string(j) +
                                        " is beyond total degree " + std::to_string(precision_));
        }
    }

    K field_;
    std::size_t precision_;
    std::vector<Scalar> coeffs_;
};

/// Power series in X whose coefficients are Laurent polynomials in t,
/// known modulo X^B. Houses D_X(r) = sum_n D_n(r) X^n.
template <ScalarField K>
class XSeriesOverLaurent {
public:
    using Poly = LaurentPoly<K>;

    XSeriesOverLaurent(K field, std::size_t order_bound) : field_(std::move(field)) {
        if (order_bound == 0) {
            throw InsufficientPrecision("order bound must be at least 1");
        }
        coeffs_.assign(order_bound, Poly(field_));
    }
    XSeriesOverLaurent(K field, std::vector<Poly> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) {
            throw InsufficientPrecision("order bound must be at least 1");
        }
        for (const auto& q : coeffs_) {
            detail::require_same_field(field_, q.field(), "X-series coefficient");
        }
    }

    static XSeriesOverLaurent constant(const Poly& q, std::size_t order_bound) {
        XSeriesOverLaurent r(q.field(), order_bound);
        r.coeffs_[0] = q;
        return r;
    }

    const K& field() const { return field_; }
    std::size_t order_bound() const { return coeffs_.size(); }
    const Poly& operator[](std::size_t n) const { return coeffs_.at(n); }
    void set(std::size_t n, Poly q) {
        detail::require_same_field(field_, q.field(), "X-series coefficient");
        coeffs_.at(n) = std::move(q);
    }
    const std::vector<Poly>& coeffs() const { return coeffs_; }

    XSeriesOverLaurent truncated(std::size_t order_bound) const {
        order_bound = std::min(order_bound, this->order_bound());
        return XSeriesOverLaurent(field_, std::vector<Poly>(coeffs_.begin(), coeffs_.begin() + order_bound));
    }

    XSeriesOverLaurent& operator+=(const XSeriesOverLaurent& o) {
        detail::require_same_field(field_, o.field_, "X-series addition");
        coeffs_.resize(std::min(order_bound(), o.order_bound()), Poly(field_));
        for (std::size_t n = 0; n < coeffs_.size(); ++n) {
            coeffs_[n] += o.coeffs_[n];
        }
        return *this;
    }
    friend XSeriesOverLaurent operator+(XSeriesOverLaurent a, const XSeriesOverLaurent& b) { return a += b; }

    friend XSeriesOverLaurent operator*(const XSeriesOverLaurent& a, const XSeriesOverLaurent& b) {
        detail::require_same_field(a.field_, b.field_, "X-series multiplication");
        const std::size_t n = std::min(a.order_bound(), b.order_bound());
        XSeriesOverLaurent r(a.field_, n);
        for (std::size_t i = 0; i < n; ++i) {
            if (a.coeffs_[i].is_zero()) {
                continue;
            }
            for (std::size_t j = 0; i + j < n; ++j) {
                if (!b.coeffs_[j].is_zero()) {
                    r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
                }
            }
        }
        return r;
    }
    XSeriesOverLaurent& operator*=(const XSeriesOverLaurent& o) { return *this = *this * o; }

    XSeriesOverLaurent scaled(const Poly& q) const {
        XSeriesOverLaurent r = *this;
        for (auto& c : r.coeffs_) {
            c = c * q;
        }
        return r;
    }

    /// Multiplicative inverse; q_0 must be a unit of k[t, 1/t].
    XSeriesOverLaurent unit_inverse() const {
        if (!coeffs_[0].is_unit()) {
            throw NotAUnit("constant term " + to_string(coeffs_[0]) + " is not a unit of k[t,1/t]");
        }
        const Poly inv0 = coeffs_[0].unit_inverse();
        XSeriesOverLaurent r(field_, order_bound());
        r.coeffs_[0] = inv0;
        for (std::size_t n = 1; n < order_bound(); ++n) {
            Poly acc(field_);
            for (std::size_t k = 1; k <= n; ++k) {
                if (!coeffs_[k].is_zero() && !r.coeffs_[n - k].is_zero()) {
                    acc += coeffs_[k] * r.coeffs_[n - k];
                }
            }
            r.coeffs_[n] = -(acc * inv0);
        }
        return r;
    }

    /// Integer power; negative exponents go through unit_inverse().
    XSeriesOverLaurent pow(long exponent) const {
        if (exponent < 0) {
            return unit_inverse().pow(-exponent);
        }
        XSeriesOverLaurent result = constant(Poly::constant(field_, field_.one()), order_bound());
        XSeriesOverLaurent base = *this;
        while (exponent > 0) {
            if (exponent & 1) {
                result *= base;
            }
            exponent >>= 1;
            if (exponent > 0) {
                base *= base;
            }
        }
        return result;
    }

    friend bool operator==(const XSeriesOverLaurent& a, const XSeriesOverLaurent& b) {
        return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
    }

private:
    K field_;
    std::vector<Poly> coeffs_;
};

// ---------------------------------------------------------------------------
// Composition, reversion, inverses.

/// f(g(X)) modulo X^N with N the smaller precision; g(0) must vanish.
template <ScalarField K>
TruncSeries1<K> compose(const TruncSeries1<K>& f, const TruncSeries1<K>& g) {
    detail::require_same_field(f.field(), g.field(), "compose");
    if (!g[0].is_zero()) {
        throw PositiveValuationRequired("inner series has nonzero constant term");
    }
    const std::size_t n = std::min(f.precision(), g.precision());
    const auto inner = g.truncated(n);
    // Horner: (((f_{n-1}) g + f_{n-2}) g + ...) g + f_0
    TruncSeries1<K> acc = TruncSeries1<K>::monomial(f.field(), f[n - 1], 0, n);
    for (std::size_t k = n - 1; k-- > 0;) {
        acc = acc * inner;
        acc.set(0, acc[0] + f[k]);
    }
    return acc;
}

/// Compositional inverse g with f(g) = g(f) = X modulo X^N, solved degree by
/// degree. Keeps a table of [X^n] g^k so each new coefficient costs O(N^2).
template <ScalarField K>
TruncSeries1<K> reversion(const TruncSeries1<K>& f) {
    const auto& field = f.field();
    const std::size_t n_max = f.precision();
    if (n_max < 2) {
        throw NotReversible("precision below 2 cannot carry a linear term");
    }
    if (!f[0].is_zero()) {
        throw NotReversible("constant term is nonzero");
    }
    if (f[1].is_zero()) {
        throw NotReversible("linear coefficient is not invertible");
    }
    using Scalar = typename K::value_type;
    // powers[k][n] = [X^n] g^k for 1 <= k <= n < N
    std::vector<std::vector<Scalar>> powers(n_max, std::vector<Scalar>(n_max, field.zero()));
    const Scalar inv_linear = field.one() / f[1];
    powers[1][1] = inv_linear;
    for (std::size_t n = 2; n < n_max; ++n) {
        Scalar sum = field.zero();
        for (std::size_t k = 2; k <= n; ++k) {
            Scalar c = field.zero();
            for (std::size_t i = 1; i + (k - 1) <= n; ++i) {
                if (!powers[1][i].is_zero() && !powers[k - 1][n - i].is_zero()) {
                    c = c + powers[1][i] * powers[k - 1][n - i];
                }
            }
            powers[k][n] = c;
            if (!f[k].is_zero()) {
                sum = sum + f[k] * c;
            }
        }
        powers[1][n] = -(sum * inv_linear);
    }
    TruncSeries1<K> g(field, n_max);
    for (std::size_t n = 1; n < n_max; ++n) {
        g.set(n, powers[1][n]);
    }
    return g;
}

/// Multiplicative inverse of a series with invertible constant term.
template <ScalarField K>
TruncSeries1<K> unit_inverse(const TruncSeries1<K>& f) {
    const auto& field = f.field();
    if (f[0].is_zero()) {
        throw NotAUnit("constant term is zero");
    }
    const auto inv0 = field.one() / f[0];
    TruncSeries1<K> r(field, f.precision());
    r.set(0, inv0);
    for (std::size_t n = 1; n < f.precision(); ++n) {
        auto acc = field.zero();
        for (std::size_t k = 1; k <= n; ++k) {
            if (!f[k].is_zero()) {
                acc = acc + f[k] * r[n - k];
            }
        }
        r.set(n, -(acc * inv0));
    }
    return r;
}

template <ScalarField K>
XSeriesOverLaurent<K> unit_inverse(const XSeriesOverLaurent<K>& f) {
    return f.unit_inverse();
}

// ---------------------------------------------------------------------------
// Substitution into bivariate series.

namespace detail {

template <class Series>
std::vector<Series> powers_of(const Series& s, std::size_t count, const Series& one) {
    std::vector<Series> out;
    out.reserve(count);
    out.push_back(one);
    for (std::size_t k = 1; k < count; ++k) {
        out.push_back(out.back() * s);
    }
    return out;
}

} // namespace detail

/// F(g, h) for bivariate g, h without constant term, at the least precision.
template <ScalarField K>
TruncSeries2<K> subst2(const TruncSeries2<K>& outer, const TruncSeries2<K>& g, const TruncSeries2<K>& h) {
    const auto& field = outer.field();
    detail::require_same_field(field, g.field(), "subst2");
    detail::require_same_field(field, h.field(), "subst2");
    if (!g.coeff(0, 0).is_zero() || !h.coeff(0, 0).is_zero()) {
        throw PositiveValuationRequired("substituted series must have zero constant term");
    }
    const std::size_t n = std::min({outer.precision(), g.precision(), h.precision()});
    const auto one = TruncSeries2<K>::monomial(field, field.one(), 0, 0, n);
    const auto g_pow = detail::powers_of(g.truncated(n), n, one);
    const auto h_pow = detail::powers_of(h.truncated(n), n, one);
    TruncSeries2<K> result(field, n);
    for (std::size_t i = 0; i < n; ++i) {
        TruncSeries2<K> inner(field, n);
        bool any = false;
        for (std::size_t j = 0; i + j < n; ++j) {
            const auto& c = outer.coeff(i, j);
            if (!c.is_zero()) {
                inner += h_pow[j].scaled(c);
                any = true;
            }
        }
        if (any) {
            result += g_pow[i] * inner;
        }
    }
    return result;
}

/// f(S(X, Y)) for univariate f and bivariate S without constant term.
template <ScalarField K>
TruncSeries2<K> compose(const TruncSeries1<K>& f, const TruncSeries2<K>& inner) {
    detail::require_same_field(f.field(), inner.field(), "compose");
    if (!inner.coeff(0, 0).is_zero()) {
        throw PositiveValuationRequired("inner series has nonzero constant term");
    }
    const std::size_t n = std::min(f.precision(), inner.precision());
    const auto s = inner.truncated(n);
    auto acc = TruncSeries2<K>::monomial(f.field(), f[n - 1], 0, 0, n);
    for (std::size_t k = n - 1; k-- > 0;) {
        acc = acc * s;
        acc.set(0, 0, acc.coeff(0, 0) + f[k]);
    }
    return acc;
}

/// F(g(X), h(X)) as a univariate series.
template <ScalarField K>
TruncSeries1<K> evaluate(const TruncSeries2<K>& outer, const TruncSeries1<K>& g, const TruncSeries1<K>& h) {
    const auto& field = outer.field();
    detail::require_same_field(field, g.field(), "evaluate");
    detail::require_same_field(field, h.field(), "evaluate");
    if (!g[0].is_zero() || !h[0].is_zero()) {
        throw PositiveValuationRequired("substituted series must have zero constant term");
    }
    const std::size_t n = std::min({outer.precision(), g.precision(), h.precision()});
    const auto one = TruncSeries1<K>::monomial(field, field.one(), 0, n);
    const auto g_pow = detail::powers_of(g.truncated(n), n, one);
    const auto h_pow = detail::powers_of(h.truncated(n), n, one);
    TruncSeries1<K> result(field, n);
    for (std::size_t i = 0; i < n; ++i) {
        TruncSeries1<K> inner(field, n);
        bool any = false;
        for (std::size_t j = 0; i + j < n; ++j) {
            const auto& c = outer.coeff(i, j);
            if (!c.is_zero()) {
                inner += h_pow[j].scaled(c);
                any = true;
            }
        }
        if (any) {
            result += g_pow[i] * inner;
        }
    }
    return result;
}

// ---------------------------------------------------------------------------
// Reduction modulo p.

TruncSeries1<PrimeField> reduce_mod_p(const TruncSeries1<RationalField>& f, const PrimeField& field);
TruncSeries2<PrimeField> reduce_mod_p(const TruncSeries2<RationalField>& f, const PrimeField& field);
LaurentPoly<PrimeField> reduce_mod_p(const LaurentPoly<RationalField>& f, const PrimeField& field);

// ---------------------------------------------------------------------------
// Rendering.

/// "X + X^4 + O(X^8)".
template <ScalarField K>
std::string to_string(const TruncSeries1<K>& f, std::string_view var = "X") {
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < f.precision(); ++i) {
        if (!f[i].is_zero()) {
            parts.push_back(render_term(f.field(), f[i], static_cast<long>(i), var));
        }
    }
    std::string tail = "O(" + std::string(var) + "^" + std::to_string(f.precision()) + ")";
    return parts.empty() ? tail : detail::join_terms(parts) + " + " + tail;
}

/// "X + Y + X^2*Y^2 + O(deg 8)".
template <ScalarField K>
std::string to_string(const TruncSeries2<K>& f) {
    std::vector<std::string> parts;
    const auto& field = f.field();
    f.for_each_nonzero([&](std::size_t i, std::size_t j, const typename K::value_type& c) {
        const bool negative = detail::is_negative_rational(c);
        const auto magnitude = negative ? -c : c;
        std::string body;
        if (i + j == 0) {
            body = field.render(magnitude);
        } else {
            body = (magnitude == field.one() ? "" : field.render(magnitude) + "*") + detail::render_xy_monomial(i, j);
        }
        parts.push_back(negative ? "-" + body : body);
    });
    std::string tail = "O(deg " + std::to_string(f.precision()) + ")";
    return parts.empty() ? tail : detail::join_terms(parts) + " + " + tail;
}

} // namespace hsfgl

#endif
