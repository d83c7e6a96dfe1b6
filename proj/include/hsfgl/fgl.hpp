#ifndef HSFGL_FGL_HPP
#define HSFGL_FGL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "hsfgl/exactnum.hpp"
#include "hsfgl/laurent.hpp"
#include "hsfgl/series.hpp"

namespace hsfgl {

struct AdditiveLaw {
    friend bool operator==(const AdditiveLaw&, const AdditiveLaw&) = default;
};
struct MultiplicativeLaw {
    friend bool operator==(const MultiplicativeLaw&, const MultiplicativeLaw&) = default;
};
struct HondaLaw {
    std::uint64_t p;
    unsigned h;
    friend bool operator==(const HondaLaw&, const HondaLaw&) = default;
};
struct CustomLaw {
    friend bool operator==(const CustomLaw&, const CustomLaw&) = default;
};

/// Where a law came from; lets a law be rebuilt at a higher precision.
using LawKind = std::variant<AdditiveLaw, MultiplicativeLaw, HondaLaw, CustomLaw>;

/// "additive", "multiplicative", "honda:p:h" or "custom".
std::string describe(const LawKind& kind);

/// Outcome of checking the group-law axioms on a truncated body.
struct AxiomReport {
    bool left_unit = false;  // F(0, Y) = Y
    bool right_unit = false; // F(X, 0) = X
    bool associative = false;
    /// Largest total degree compared in each check.
    std::size_t degree_checked = 0;
    /// Empty when everything passed.
    std::string first_failure;

    bool passed() const { return left_unit && right_unit && associative; }
};

template <ScalarField K>
AxiomReport check_axioms(const TruncSeries2<K>& body);

/// One-dimensional formal group law F(X, Y) known modulo total degree N.
/// Construction checks the unit axioms; user-supplied (custom) bodies are
/// also checked for associativity.
template <ScalarField K>
class FormalGroupLaw {
public:
    explicit FormalGroupLaw(TruncSeries2<K> body, LawKind kind = CustomLaw{})
        : body_(std::move(body)), kind_(kind) {
        if (body_.precision() < 2) {
            throw InsufficientPrecision("a formal group law needs precision N >= 2");
        }
        const bool custom = std::holds_alternative<CustomLaw>(kind_);
        auto report = custom ? check_axioms(body_) : check_units(body_);
        if (!report.passed()) {
            throw InvalidLaw(report.first_failure);
        }
    }

    const TruncSeries2<K>& body() const { return body_; }
    const K& field() const { return body_.field(); }
    std::size_t precision() const { return body_.precision(); }
    const LawKind& kind() const { return kind_; }

    friend bool operator==(const FormalGroupLaw& a, const FormalGroupLaw& b) { return a.body_ == b.body_; }

    /// Unit checks only (associativity reported as passing).
    static AxiomReport check_units(const TruncSeries2<K>& body);

private:
    TruncSeries2<K> body_;
    LawKind kind_;
};

template <ScalarField K>
AxiomReport FormalGroupLaw<K>::check_units(const TruncSeries2<K>& body) {
    const auto& field = body.field();
    AxiomReport report;
    report.degree_checked = body.precision() - 1;
    report.right_unit = true;
    report.left_unit = true;
    report.associative = true;
    auto expected = [&](std::size_t d) { return d == 1 ? field.one() : field.zero(); };
    for (std::size_t d = 0; d < body.precision(); ++d) {
        if (!(body.coeff(d, 0) == expected(d)) && report.right_unit) {
            report.right_unit = false;
            if (report.first_failure.empty()) {
                report.first_failure = "F(X,0) != X at X^" + std::to_string(d);
            }
        }
        if (!(body.coeff(0, d) == expected(d)) && report.left_unit) {
            report.left_unit = false;
            if (report.first_failure.empty()) {
                report.first_failure = "F(0,Y) != Y at Y^" + std::to_string(d);
            }
        }
    }
    return report;
}

/// Checks F(X,0) = X, F(0,Y) = Y and F(F(X,Y),Z) = F(X,F(Y,Z)) through
/// total degree N - 1. The ternary check expands both sides as
/// sum_c Z^c sum_i F_ic F(X,Y)^i and sum_a X^a sum_j F_aj F(Y,Z)^j, so only
/// bivariate powers of F are needed.
template <ScalarField K>
AxiomReport check_axioms(const TruncSeries2<K>& body) {
    AxiomReport report = FormalGroupLaw<K>::check_units(body);
    report.associative = false;
    const auto& field = body.field();
    const std::size_t n = body.precision();
    if (!body.coeff(0, 0).is_zero()) {
        if (report.first_failure.empty()) {
            report.first_failure = "nonzero constant term";
        }
        return report;
    }
    const auto one = TruncSeries2<K>::monomial(field, field.one(), 0, 0, n);
    const auto powers = detail::powers_of(body, n, one);
    // Slice the outer law by one variable's degree: slice[e] = sum_i F_{i,e} F^i
    // for the Z-degree (left nesting) and sum_j F_{e,j} F^j for the X-degree
    // (right nesting).
    std::vector<TruncSeries2<K>> by_last, by_first;
    for (std::size_t e = 0; e < n; ++e) {
        TruncSeries2<K> last(field, n - e), first(field, n - e);
        for (std::size_t i = 0; i + e < n; ++i) {
            if (!body.coeff(i, e).is_zero()) {
                last += powers[i].truncated(n - e).scaled(body.coeff(i, e));
            }
            if (!body.coeff(e, i).is_zero()) {
                first += powers[i].truncated(n - e).scaled(body.coeff(e, i));
            }
        }
        by_last.push_back(std::move(last));
        by_first.push_back(std::move(first));
    }
    // [X^a Y^b Z^c] of F(F(X,Y),Z) is [X^a Y^b] by_last[c];
    // [X^a Y^b Z^c] of F(X,F(Y,Z)) is [Y^b Z^c] by_first[a].
    for (std::size_t d = 0; d < n; ++d) {
        for (std::size_t a = 0; a <= d; ++a) {
            for (std::size_t b = 0; a + b <= d; ++b) {
                const std::size_t c = d - a - b;
                if (!(by_last[c].coeff(a, b) == by_first[a].coeff(b, c))) {
                    if (report.first_failure.empty()) {
                        report.first_failure = "associativity fails at X^" + std::to_string(a) + "*Y^" +
                                               std::to_string(b) + "*Z^" + std::to_string(c);
                    }
                    return report;
                }
            }
        }
    }
    report.associative = true;
    return report;
}

template <ScalarField K>
AxiomReport check_axioms(const FormalGroupLaw<K>& law) {
    return check_axioms(law.body());
}

template <ScalarField K>
bool is_commutative(const FormalGroupLaw<K>& law) {
    return law.body() == law.body().swapped();
}

// ---------------------------------------------------------------------------
// Constructors.

/// X + Y.
template <ScalarField K>
FormalGroupLaw<K> additive_law(const K& field, std::size_t precision) {
    if (precision < 2) {
        throw InsufficientPrecision("precision must be at least 2");
    }
    return FormalGroupLaw<K>(TruncSeries2<K>::x(field, precision) + TruncSeries2<K>::y(field, precision),
                             AdditiveLaw{});
}

/// X + Y + XY.
template <ScalarField K>
FormalGroupLaw<K> multiplicative_law(const K& field, std::size_t precision) {
    if (precision < 2) {
        throw InsufficientPrecision("precision must be at least 2");
    }
    auto body = TruncSeries2<K>::x(field, precision) + TruncSeries2<K>::y(field, precision) +
                TruncSeries2<K>::monomial(field, field.one(), 1, 1, precision);
    return FormalGroupLaw<K>(std::move(body), MultiplicativeLaw{});
}

/// Honda logarithm sum_{n >= 0} p^{-n} X^{p^{nh}} modulo X^N.
TruncSeries1<RationalField> honda_logarithm(std::uint64_t p, unsigned h, std::size_t precision);

/// l^{-1}(l(X) + l(Y)) over Q for the Honda logarithm l.
FormalGroupLaw<RationalField> honda_law_rational(std::uint64_t p, unsigned h, std::size_t precision);

/// Reduction modulo p of honda_law_rational: the height-h Honda law over F_p.
FormalGroupLaw<PrimeField> honda_law(std::uint64_t p, unsigned h, std::size_t precision);

/// Recomputes a named law at another precision. Custom laws carry no recipe
/// and raise InsufficientPrecision.
template <ScalarField K>
FormalGroupLaw<K> rebuild(const FormalGroupLaw<K>& law, std::size_t precision) {
    return std::visit(
        [&](const auto& kind) -> FormalGroupLaw<K> {
            using T = std::decay_t<decltype(kind)>;
            if constexpr (std::is_same_v<T, AdditiveLaw>) {
                return additive_law(law.field(), precision);
            } else if constexpr (std::is_same_v<T, MultiplicativeLaw>) {
                return multiplicative_law(law.field(), precision);
            } else if constexpr (std::is_same_v<T, HondaLaw>) {
                if constexpr (std::is_same_v<K, PrimeField>) {
                    return honda_law(kind.p, kind.h, precision);
                } else if constexpr (std::is_same_v<K, RationalField>) {
                    return honda_law_rational(kind.p, kind.h, precision);
                } else {
                    throw InsufficientPrecision("no Honda recipe over " + law.field().name());
                }
            } else {
                throw InsufficientPrecision("a custom law cannot be recomputed at precision " +
                                            std::to_string(precision));
            }
        },
        law.kind());
}

// ---------------------------------------------------------------------------
// Series attached to a law.

/// [n](X) = F(X, F(X, ... F(X, X))) with n arguments; [0](X) = 0.
template <ScalarField K>
TruncSeries1<K> n_series(const FormalGroupLaw<K>& law, std::uint64_t n) {
    const auto x = TruncSeries1<K>::variable(law.field(), law.precision());
    TruncSeries1<K> acc(law.field(), law.precision());
    if (n == 0) {
        return acc;
    }
    acc = x;
    for (std::uint64_t k = 1; k < n; ++k) {
        acc = evaluate(law.body(), x, acc);
    }
    return acc;
}

/// The p-series of a law over F_p.
TruncSeries1<PrimeField> p_series(const FormalGroupLaw<PrimeField>& law);

struct HeightResult {
    enum class Kind { finite, infinite_at_precision };

    Kind kind = Kind::infinite_at_precision;
    unsigned height = 0;    // valid for finite
    std::size_t bound = 0;  // precision at which the p-series vanished
    std::optional<Fp> unit; // leading coefficient u of [p](X) = u X^{p^h} + ...

    bool is_finite() const { return kind == Kind::finite; }
    /// "height 2" or "height infinite at precision 8".
    std::string to_string() const;
};

/// Height read off the p-series; MalformedPSeries if its lowest degree is not
/// a power of p.
HeightResult height(const FormalGroupLaw<PrimeField>& law);

/// The formal inverse: the unique i(X) with i(0) = 0 and F(X, i(X)) = 0.
template <ScalarField K>
TruncSeries1<K> formal_inverse(const FormalGroupLaw<K>& law) {
    const auto& field = law.field();
    const std::size_t n = law.precision();
    TruncSeries1<K> inv(field, n);
    inv.set(1, -field.one());
    for (std::size_t d = 2; d < n; ++d) {
        // [X^d] F(X, i) = i_d + (terms in i_1..i_{d-1}) because F_{0,1} = 1.
        const auto partial = evaluate(law.body().truncated(d + 1), TruncSeries1<K>::variable(field, d + 1),
                                      inv.truncated(d + 1));
        inv.set(d, -partial[d]);
    }
    return inv;
}

/// The coefficient of Y^n in F as a polynomial in X, computed at two
/// precisions. Stabilized when the higher-precision computation adds nothing;
/// this is evidence, not proof, that the coefficient is a polynomial.
template <ScalarField K>
struct CoeffProbe {
    std::size_t n;
    std::size_t low_precision;
    std::size_t high_precision;
    LaurentPoly<K> low;  // known through X-degree low_precision - n - 1
    LaurentPoly<K> high; // known through X-degree high_precision - n - 1
    bool stabilized;

    const LaurentPoly<K>& polynomial() const { return high; }
};

template <ScalarField K>
LaurentPoly<K> coeff_of_y(const FormalGroupLaw<K>& law, std::size_t n) {
    if (n >= law.precision()) {
        throw OrderOutOfRange("Y^" + std::to_string(n) + " is beyond precision " + std::to_string(law.precision()));
    }
    LaurentPoly<K> r(law.field());
    for (std::size_t i = 0; i + n < law.precision(); ++i) {
        r.add_term(static_cast<long>(i), law.body().coeff(i, n));
    }
    return r;
}

template <ScalarField K>
CoeffProbe<K> probe_coeff_of_y(const FormalGroupLaw<K>& low, const FormalGroupLaw<K>& high, std::size_t n) {
    if (high.precision() < low.precision()) {
        throw InsufficientPrecision("the probe precision must not be below the law's precision");
    }
    auto lo = coeff_of_y(low, n);
    auto hi = coeff_of_y(high, n);
    // hi restricted to the low window must equal lo, and hi may not add
    // anything above it; together that is plain equality.
    const bool stable = lo == hi;
    return CoeffProbe<K>{n, low.precision(), high.precision(), std::move(lo), std::move(hi), stable};
}

template <ScalarField K>
CoeffProbe<K> probe_coeff_of_y(const FormalGroupLaw<K>& law, std::size_t n, std::size_t high_precision) {
    if (high_precision <= law.precision()) {
        throw InsufficientPrecision("the probe precision must exceed the law's precision");
    }
    return probe_coeff_of_y(law, rebuild(law, high_precision), n);
}

// ---------------------------------------------------------------------------
// Truncated group laws over F_p.

/// m-truncated group law f(v, w) with v^{p^m} = w^{p^m} = 0. Construction
/// verifies the unit and associativity axioms exactly.
class TruncatedGroupLaw {
public:
    /// `coeffs[i * q + j]` is the coefficient of v^i w^j, q = p^m.
    TruncatedGroupLaw(PrimeField field, unsigned m, std::vector<Fp> coeffs);

    const PrimeField& field() const { return field_; }
    unsigned m() const { return m_; }
    /// p^m, the nilpotency bound of v and w.
    std::size_t size() const { return q_; }
    const Fp& coeff(std::size_t i, std::size_t j) const { return coeffs_.at(i * q_ + j); }
    const std::vector<Fp>& coeffs() const { return coeffs_; }

    /// Coefficients of f(v, w)^n in the same q x q layout.
    std::vector<Fp> power(std::size_t n) const;

    /// f[l] for l <= m: drop monomials with an exponent >= p^l.
    TruncatedGroupLaw truncate(unsigned l) const;

    friend bool operator==(const TruncatedGroupLaw& a, const TruncatedGroupLaw& b) {
        return a.field_ == b.field_ && a.m_ == b.m_ && a.coeffs_ == b.coeffs_;
    }

private:
    PrimeField field_;
    unsigned m_;
    std::size_t q_;
    std::vector<Fp> coeffs_;
};

/// "v + w + v^2*w^2".
std::string to_string(const TruncatedGroupLaw& law);

/// F[m]; needs N >= 2 p^m - 1 so every v^i w^j with i, j < p^m is known.
TruncatedGroupLaw truncate(const FormalGroupLaw<PrimeField>& law, unsigned m);

std::uint64_t checked_power(std::uint64_t base, unsigned exponent);

} // namespace hsfgl

#endif
