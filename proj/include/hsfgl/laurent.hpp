#ifndef HSFGL_LAURENT_HPP
#define HSFGL_LAURENT_HPP

#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "hsfgl/exactnum.hpp"

namespace hsfgl {

/// Sparse Laurent polynomial in t over a scalar field; an element of
/// k[t, 1/t]. Zero coefficients are never stored.
template <ScalarField K>
class LaurentPoly {
public:
    using Scalar = typename K::value_type;
    using Terms = std::map<long, Scalar>;

    explicit LaurentPoly(K field) : field_(std::move(field)) {}

    static LaurentPoly monomial(const K& field, Scalar c, long exponent) {
        LaurentPoly r(field);
        r.add_term(exponent, std::move(c));
        return r;
    }
    static LaurentPoly constant(const K& field, Scalar c) { return monomial(field, std::move(c), 0); }
    static LaurentPoly t_power(const K& field, long exponent) { return monomial(field, field.one(), exponent); }

    const K& field() const { return field_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    Scalar coeff(long exponent) const {
        auto it = terms_.find(exponent);
        return it == terms_.end() ? field_.zero() : it->second;
    }

    std::optional<long> max_exponent() const {
        if (terms_.empty()) {
            return std::nullopt;
        }
        return terms_.rbegin()->first;
    }
    std::optional<long> min_exponent() const {
        if (terms_.empty()) {
            return std::nullopt;
        }
        return terms_.begin()->first;
    }

    /// Units of k[t, 1/t] are exactly the nonzero monomials.
    bool is_unit() const { return terms_.size() == 1; }

    void add_term(long exponent, const Scalar& c) {
        if (c.is_zero()) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(exponent, c);
        if (!inserted) {
            it->second = it->second + c;
            if (it->second.is_zero()) {
                terms_.erase(it);
            }
        }
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        require_same_field(o);
        for (const auto& [e, c] : o.terms_) {
            add_term(e, c);
        }
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) {
        require_same_field(o);
        for (const auto& [e, c] : o.terms_) {
            add_term(e, -c);
        }
        return *this;
    }
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    LaurentPoly operator-() const {
        LaurentPoly r(field_);
        for (const auto& [e, c] : terms_) {
            r.terms_.emplace(e, -c);
        }
        return r;
    }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        a.require_same_field(b);
        LaurentPoly r(a.field_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                r.add_term(ea + eb, ca * cb);
            }
        }
        return r;
    }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    LaurentPoly scaled(const Scalar& s) const {
        LaurentPoly r(field_);
        if (s.is_zero()) {
            return r;
        }
        for (const auto& [e, c] : terms_) {
            r.add_term(e, c * s);
        }
        return r;
    }

    /// Multiplication by t^shift.
    LaurentPoly shifted(long shift) const {
        LaurentPoly r(field_);
        for (const auto& [e, c] : terms_) {
            r.terms_.emplace(e + shift, c);
        }
        return r;
    }

    /// Non-negative powers of anything; negative powers of units only.
    LaurentPoly pow(long exponent) const {
        if (exponent < 0) {
            return unit_inverse().pow(-exponent);
        }
        LaurentPoly result = constant(field_, field_.one());
        LaurentPoly base = *this;
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

    /// Inverse in k[t, 1/t]; NotAUnit unless this is a single monomial.
    LaurentPoly unit_inverse() const {
        if (!is_unit()) {
            throw NotAUnit("Laurent polynomial with " + std::to_string(terms_.size()) +
                           " terms is not a unit of k[t,1/t]");
        }
        const auto& [e, c] = *terms_.begin();
        return monomial(field_, field_.one() / c, -e);
    }

    /// Formal derivative d/dt (valid for negative exponents too).
    LaurentPoly derivative() const {
        LaurentPoly r(field_);
        for (const auto& [e, c] : terms_) {
            r.add_term(e - 1, c * field_.from_int(e));
        }
        return r;
    }

    /// Terms whose exponent satisfies `keep`.
    LaurentPoly filtered(const std::function<bool(long)>& keep) const {
        LaurentPoly r(field_);
        for (const auto& [e, c] : terms_) {
            if (keep(e)) {
                r.terms_.emplace(e, c);
            }
        }
        return r;
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.field_ == b.field_ && a.terms_ == b.terms_;
    }

private:
    void require_same_field(const LaurentPoly& o) const {
        if (!(field_ == o.field_)) {
            throw FieldMismatch("Laurent polynomials over different fields");
        }
    }

    K field_;
    Terms terms_;
};

namespace detail {

std::string render_monomial(const std::string& coeff, bool is_one, long exponent, std::string_view var);

/// Joins signed terms: the first term keeps its sign, later negative terms
/// become " - " separators.
std::string join_terms(const std::vector<std::string>& terms);

/// Parses "3*t^2 - 1/2*t + t^-1" into (exponent, coefficient) pairs.
std::vector<std::pair<long, Rat>> parse_laurent_terms(std::string_view text, std::string_view var);

template <class Scalar>
bool is_negative_rational(const Scalar& c) {
    if constexpr (std::is_same_v<Scalar, Rat>) {
        return c.sign() < 0;
    } else {
        return false;
    }
}

} // namespace detail

/// Renders a single term "c*t^e" with the coefficient omitted when it is 1.
template <ScalarField K>
std::string render_term(const K& field, const typename K::value_type& c, long exponent, std::string_view var) {
    const bool negative = detail::is_negative_rational(c);
    const auto magnitude = negative ? -c : c;
    std::string body = detail::render_monomial(field.render(magnitude), magnitude == field.one(), exponent, var);
    return negative ? "-" + body : body;
}

/// Canonical rendering, descending exponents: "t^10 + t^4 + t + t^-2 + t^-5".
template <ScalarField K>
std::string to_string(const LaurentPoly<K>& q, std::string_view var = "t") {
    std::vector<std::string> parts;
    for (auto it = q.terms().rbegin(); it != q.terms().rend(); ++it) {
        parts.push_back(render_term(q.field(), it->second, it->first, var));
    }
    return detail::join_terms(parts);
}

/// Inverse of to_string; coefficients may be integers or fractions and are
/// mapped into the field (IntegralityViolation over F_p when p divides a
/// denominator).
template <ScalarField K>
LaurentPoly<K> parse_laurent(const K& field, std::string_view text, std::string_view var = "t") {
    LaurentPoly<K> r(field);
    for (const auto& [e, c] : detail::parse_laurent_terms(text, var)) {
        r.add_term(e, field.from_rat(c));
    }
    return r;
}

} // namespace hsfgl

#endif
