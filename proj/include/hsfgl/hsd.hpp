#ifndef HSFGL_HSD_HPP
#define HSFGL_HSD_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hsfgl/exactnum.hpp"
#include "hsfgl/fgl.hpp"
#include "hsfgl/laurent.hpp"
#include "hsfgl/series.hpp"

namespace hsfgl {

/// Range of t-exponents a derivation is allowed to produce. Anything outside
/// raises WindowOverflow instead of being silently dropped.
struct DegreeWindow {
    long lo;
    long hi;

    bool contains(long e) const { return lo <= e && e <= hi; }

    template <ScalarField K>
    bool contains(const LaurentPoly<K>& q) const {
        return q.is_zero() || (contains(*q.min_exponent()) && contains(*q.max_exponent()));
    }

    std::string to_string() const { return std::to_string(lo) + ":" + std::to_string(hi); }

    friend bool operator==(const DegreeWindow&, const DegreeWindow&) = default;
};

/// Default window for order bound B: [-(B+1), B * growth], where growth is
/// p^h for a Honda law and 1 for the additive and multiplicative laws.
inline DegreeWindow default_window(std::size_t order_bound, std::uint64_t growth) {
    const long b = static_cast<long>(order_bound);
    return DegreeWindow{-(b + 1), b * static_cast<long>(growth)};
}

namespace detail {

template <ScalarField K>
void require_in_window(const DegreeWindow& window, const LaurentPoly<K>& q, const std::string& what) {
    if (!window.contains(q)) {
        throw WindowOverflow(what + " = " + to_string(q) + " leaves the degree window " + window.to_string());
    }
}

} // namespace detail

/// A (truncated) Hasse-Schmidt derivation (D_n)_{n<B} on k[t] or k[t, 1/t],
/// stored only through the image of the generator, D_X(t) = sum_n D_n(t) X^n.
/// Every other value is recomputed through the homomorphism property.
template <ScalarField K>
class HSDerivation {
public:
    using Poly = LaurentPoly<K>;

    HSDerivation(XSeriesOverLaurent<K> generator_image, DegreeWindow window)
        : image_(std::move(generator_image)), window_(window) {
        if (!(image_[0] == Poly::t_power(image_.field(), 1))) {
            throw InvalidLaw("D_0(t) must be t, got " + to_string(image_[0]));
        }
        for (std::size_t n = 0; n < image_.order_bound(); ++n) {
            detail::require_in_window(window_, image_[n], "D_" + std::to_string(n) + "(t)");
        }
    }

    /// Builds D from the list D_1(t), ..., D_{B-1}(t); D_0(t) = t is implied.
    static HSDerivation from_table(const K& field, const std::vector<Poly>& images, DegreeWindow window) {
        std::vector<Poly> coeffs;
        coeffs.reserve(images.size() + 1);
        coeffs.push_back(Poly::t_power(field, 1));
        coeffs.insert(coeffs.end(), images.begin(), images.end());
        return HSDerivation(XSeriesOverLaurent<K>(field, std::move(coeffs)), window);
    }

    const K& field() const { return image_.field(); }
    std::size_t order_bound() const { return image_.order_bound(); }
    const DegreeWindow& window() const { return window_; }
    const XSeriesOverLaurent<K>& generator_image() const { return image_; }
    /// D_n(t).
    const Poly& image(std::size_t n) const {
        require_order(n);
        return image_[n];
    }

    /// Copy with D_n(t) replaced.
    HSDerivation with_image(std::size_t n, Poly q) const {
        if (n == 0) {
            throw OrderOutOfRange("D_0 is fixed to the identity");
        }
        require_order(n);
        auto image = image_;
        image.set(n, std::move(q));
        return HSDerivation(std::move(image), window_);
    }

    void require_order(std::size_t n) const {
        if (n >= order_bound()) {
            throw OrderOutOfRange("order " + std::to_string(n) + " outside bound " + std::to_string(order_bound()));
        }
    }

private:
    XSeriesOverLaurent<K> image_;
    DegreeWindow window_;
};

/// q(D_X(t)) modulo X^{order_bound}: the whole family D_n(q) at once.
/// Negative powers use D_X(t)^{-1}, which exists because D_0(t) = t is a unit.
template <ScalarField K>
XSeriesOverLaurent<K> hs_apply_series(const HSDerivation<K>& d, const LaurentPoly<K>& q, std::size_t order_bound) {
    detail::require_same_field(d.field(), q.field(), "hs_apply");
    detail::require_in_window(d.window(), q, "argument");
    if (order_bound > d.order_bound()) {
        throw OrderOutOfRange("requested " + std::to_string(order_bound) + " orders, derivation has " +
                              std::to_string(d.order_bound()));
    }
    const auto gen = d.generator_image().truncated(order_bound);
    XSeriesOverLaurent<K> result(d.field(), order_bound);
    std::optional<XSeriesOverLaurent<K>> inverse;
    for (const auto& [e, c] : q.terms()) {
        if (e >= 0) {
            result += gen.pow(e).scaled(LaurentPoly<K>::constant(d.field(), c));
        } else {
            if (!inverse) {
                inverse = gen.unit_inverse();
            }
            result += inverse->pow(-e).scaled(LaurentPoly<K>::constant(d.field(), c));
        }
    }
    for (std::size_t n = 0; n < order_bound; ++n) {
        detail::require_in_window(d.window(), result[n], "D_" + std::to_string(n) + "(" + to_string(q) + ")");
    }
    return result;
}

template <ScalarField K>
XSeriesOverLaurent<K> hs_apply_series(const HSDerivation<K>& d, const LaurentPoly<K>& q) {
    return hs_apply_series(d, q, d.order_bound());
}

/// D_n(q).
template <ScalarField K>
LaurentPoly<K> hs_apply(const HSDerivation<K>& d, const LaurentPoly<K>& q, std::size_t n) {
    d.require_order(n);
    return hs_apply_series(d, q, n + 1)[n];
}

/// D_n(1/t) for n < bound from 0 = D_n(t * t^{-1}):
/// D_n(1/t) = -t^{-1} sum_{j=1..n} D_j(t) D_{n-j}(1/t).
template <ScalarField K>
std::vector<LaurentPoly<K>> hs_inverse_image(const HSDerivation<K>& d, std::size_t bound) {
    if (bound > d.order_bound()) {
        throw OrderOutOfRange("requested " + std::to_string(bound) + " orders, derivation has " +
                              std::to_string(d.order_bound()));
    }
    const auto& field = d.field();
    const auto t_inv = LaurentPoly<K>::t_power(field, -1);
    std::vector<LaurentPoly<K>> out;
    out.reserve(bound);
    if (bound == 0) {
        return out;
    }
    out.push_back(t_inv);
    for (std::size_t n = 1; n < bound; ++n) {
        LaurentPoly<K> acc(field);
        for (std::size_t j = 1; j <= n; ++j) {
            if (!d.image(j).is_zero()) {
                acc += d.image(j) * out[n - j];
            }
        }
        auto value = -(acc * t_inv);
        detail::require_in_window(d.window(), value, "D_" + std::to_string(n) + "(1/t)");
        out.push_back(std::move(value));
    }
    return out;
}

/// Higher Leibniz rule D_n(qr) = sum_{j+k=n} D_j(q) D_k(r).
template <ScalarField K>
bool check_leibniz(const HSDerivation<K>& d, const LaurentPoly<K>& q, const LaurentPoly<K>& r, std::size_t n) {
    d.require_order(n);
    const auto lhs = hs_apply(d, q * r, n);
    const auto sq = hs_apply_series(d, q, n + 1);
    const auto sr = hs_apply_series(d, r, n + 1);
    LaurentPoly<K> rhs(d.field());
    for (std::size_t j = 0; j <= n; ++j) {
        rhs += sq[j] * sr[n - j];
    }
    return lhs == rhs;
}

// ---------------------------------------------------------------------------
// Iterativity.

struct IterativityMismatch {
    std::size_t i; // X-degree (outer derivation order)
    std::size_t j; // Y-degree (inner derivation order)
    long exponent; // largest t-exponent where the two sides differ
    std::string lhs;
    std::string rhs;
};

struct IterativityReport {
    bool pass = false;
    std::optional<IterativityMismatch> first_mismatch;
    /// Pairs (i, j) checked: i + j < bound (full) or i, j < bound (truncated).
    std::size_t bound = 0;
    bool truncated = false;

    /// "PASS" or "FAIL at (i,j)=...", one line.
    std::string to_string() const;
};

namespace detail {

/// Shared comparison loop. `rhs(i, j)` yields sum_n D_n(t) [X^i Y^j] L^n.
template <ScalarField K, class Rhs>
IterativityReport compare_iterativity(const HSDerivation<K>& d, bool truncated, Rhs&& rhs) {
    const std::size_t b = d.order_bound();
    IterativityReport report;
    report.bound = b;
    report.truncated = truncated;
    // lhs[j][i] = D_i(D_j(t)); both sides are k-algebra maps determined by t.
    std::vector<XSeriesOverLaurent<K>> lhs;
    lhs.reserve(b);
    for (std::size_t j = 0; j < b; ++j) {
        lhs.push_back(hs_apply_series(d, d.image(j), truncated ? b : b - j));
    }
    for (std::size_t total = 0; total <= (truncated ? 2 * (b - 1) : b - 1); ++total) {
        for (std::size_t j = 0; j <= total; ++j) {
            const std::size_t i = total - j;
            if (i >= b || j >= b) {
                continue;
            }
            const auto& left = lhs[j][i];
            const auto right = rhs(i, j);
            if (!(left == right)) {
                const auto diff = left - right;
                report.first_mismatch =
                    IterativityMismatch{i, j, *diff.max_exponent(), hsfgl::to_string(left), hsfgl::to_string(right)};
                return report;
            }
        }
    }
    report.pass = true;
    return report;
}

} // namespace detail

/// Commutativity of the F-iterativity square, tested on t: compares
/// sum_{i,j} D_i(D_j(t)) X^i Y^j with sum_n D_n(t) L(X,Y)^n through total
/// degree B - 1.
template <ScalarField K>
IterativityReport check_f_iterativity(const HSDerivation<K>& d, const FormalGroupLaw<K>& law) {
    detail::require_same_field(d.field(), law.field(), "check_f_iterativity");
    const std::size_t b = d.order_bound();
    if (law.precision() < b) {
        throw InsufficientPrecision("law precision " + std::to_string(law.precision()) + " below order bound " +
                                    std::to_string(b));
    }
    const auto& field = d.field();
    const auto body = law.body().truncated(b);
    const auto one = TruncSeries2<K>::monomial(field, field.one(), 0, 0, b);
    const auto powers = detail::powers_of(body, b, one);
    return detail::compare_iterativity(d, false, [&](std::size_t i, std::size_t j) {
        LaurentPoly<K> acc(field);
        for (std::size_t n = 0; n <= i + j; ++n) {
            const auto& c = powers[n].coeff(i, j);
            if (!c.is_zero() && !d.image(n).is_zero()) {
                acc += d.image(n).scaled(c);
            }
        }
        return acc;
    });
}

/// Truncated form: D must have B = p^m, and exponents of X and Y are reduced
/// modulo (X^{p^m}, Y^{p^m}).
IterativityReport check_f_iterativity(const HSDerivation<PrimeField>& d, const TruncatedGroupLaw& law);

// ---------------------------------------------------------------------------
// Canonical derivation.

/// D_n(t) = [X^n] F(t, X). Each coefficient must already be a stabilized
/// polynomial in t: it is compared against `high`, the same law at a larger
/// precision, and InsufficientPrecision is raised if they differ.
template <ScalarField K>
HSDerivation<K> canonical_derivation(const FormalGroupLaw<K>& law, const FormalGroupLaw<K>& high,
                                     std::size_t order_bound, DegreeWindow window) {
    if (order_bound == 0 || order_bound > law.precision()) {
        throw InsufficientPrecision("order bound " + std::to_string(order_bound) + " needs a law of precision >= " +
                                    std::to_string(order_bound) + ", have " + std::to_string(law.precision()));
    }
    std::vector<LaurentPoly<K>> images;
    for (std::size_t n = 1; n < order_bound; ++n) {
        auto probe = probe_coeff_of_y(law, high, n);
        if (!probe.stabilized) {
            throw InsufficientPrecision("coefficient of X^" + std::to_string(n) +
                                        " in F(t,X) changes between precision " + std::to_string(law.precision()) +
                                        " and " + std::to_string(high.precision()));
        }
        images.push_back(std::move(probe.low));
    }
    return HSDerivation<K>::from_table(law.field(), images, window);
}

/// As above, rebuilding the law at `probe_precision` (default 2N) for the
/// stabilization check.
template <ScalarField K>
HSDerivation<K> canonical_derivation(const FormalGroupLaw<K>& law, std::size_t order_bound, DegreeWindow window,
                                     std::size_t probe_precision = 0) {
    if (probe_precision == 0) {
        probe_precision = 2 * law.precision();
    }
    if (order_bound <= 1) {
        return canonical_derivation(law, law, order_bound, window);
    }
    return canonical_derivation(law, rebuild(law, probe_precision), order_bound, window);
}

// ---------------------------------------------------------------------------
// Ordinary derivations, restricted constants and prolongation.

/// A k-derivation of k[t, 1/t], determined by d(t).
template <ScalarField K>
class Derivation {
public:
    explicit Derivation(LaurentPoly<K> image) : image_(std::move(image)) {}

    const K& field() const { return image_.field(); }
    const LaurentPoly<K>& image() const { return image_; }

    /// d(q) = q'(t) d(t).
    LaurentPoly<K> apply(const LaurentPoly<K>& q) const { return q.derivative() * image_; }

    /// d^(k)(q), the k-fold composite.
    LaurentPoly<K> iterate(const LaurentPoly<K>& q, std::uint64_t k) const {
        auto r = q;
        for (std::uint64_t i = 0; i < k && !r.is_zero(); ++i) {
            r = apply(r);
        }
        return r;
    }

private:
    LaurentPoly<K> image_;
};

/// d^(p) = c d, checked on t and t^2.
bool check_restricted(const Derivation<PrimeField>& d, const Fp& c);

/// The scalar c_F with D_1^(p) = c_F D_1 for the canonical F-derivation.
/// Requires N > p; NotProportional if no such scalar exists.
Fp compute_cF(const FormalGroupLaw<PrimeField>& law);

/// (d^n / n!)_{n<p}: a G_a[1]-derivation extending d, for d^(p) = 0.
/// The window defaults to one that fits the produced table.
HSDerivation<PrimeField> prolong_Ga1(const Derivation<PrimeField>& d, std::optional<DegreeWindow> window = {});

/// d_0 = id, d_1 = d, d_{n+1} = (d o d_n - n d_n) / (n + 1): a G_m[1]-derivation
/// extending d, for d^(p) = d.
HSDerivation<PrimeField> prolong_Gm1(const Derivation<PrimeField>& d, std::optional<DegreeWindow> window = {});

// ---------------------------------------------------------------------------
// Projective line.

struct P1Report {
    bool pass = false;
    std::size_t bound = 0;
    std::optional<std::size_t> first_failing_order;
    /// Monomials of D_n(1/t) with positive t-exponent, descending.
    std::vector<std::string> offending;
    std::vector<long> offending_exponents;
    /// The failing value D_n(1/t), rendered.
    std::string failing_value;

    /// "PASS (orders < B)" or "FAIL at n=4; offending: t^10, t^4, t".
    std::string to_string() const;
};

/// Whether the extension of D to k(t) keeps k[1/t] stable through order
/// bound - 1, i.e. every D_n(1/t) has no positive t-exponent.
template <ScalarField K>
P1Report check_p1_extendable(const HSDerivation<K>& d, std::size_t bound) {
    const auto images = hs_inverse_image(d, bound);
    P1Report report;
    report.bound = bound;
    for (std::size_t n = 0; n < images.size(); ++n) {
        const auto bad = images[n].filtered([](long e) { return e > 0; });
        if (!bad.is_zero()) {
            report.first_failing_order = n;
            report.failing_value = to_string(images[n]);
            for (auto it = bad.terms().rbegin(); it != bad.terms().rend(); ++it) {
                report.offending.push_back(render_term(d.field(), it->second, it->first, "t"));
                report.offending_exponents.push_back(it->first);
            }
            return report;
        }
    }
    report.pass = true;
    return report;
}

} // namespace hsfgl

#endif
