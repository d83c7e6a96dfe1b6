#include "hsfgl/fgl.hpp"

#include <limits>

namespace hsfgl {

std::string describe(const LawKind& kind) {
    return std::visit(
        [](const auto& k) -> std::string {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, AdditiveLaw>) {
                return "additive";
            } else if constexpr (std::is_same_v<T, MultiplicativeLaw>) {
                return "multiplicative";
            } else if constexpr (std::is_same_v<T, HondaLaw>) {
                return "honda:" + std::to_string(k.p) + ":" + std::to_string(k.h);
            } else {
                return "custom";
            }
        },
        kind);
}

std::uint64_t checked_power(std::uint64_t base, unsigned exponent) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < exponent; ++i) {
        if (r > std::numeric_limits<std::uint64_t>::max() / base) {
            throw InsufficientPrecision(std::to_string(base) + "^" + std::to_string(exponent) + " overflows");
        }
        r *= base;
    }
    return r;
}

TruncSeries1<RationalField> honda_logarithm(std::uint64_t p, unsigned h, std::size_t precision) {
    if (!is_prime(p)) {
        throw NotPrime(std::to_string(p) + " is not prime");
    }
    if (h == 0) {
        throw InvalidLaw("Honda height must be at least 1");
    }
    if (precision < 2) {
        throw InsufficientPrecision("precision must be at least 2");
    }
    RationalField q;
    TruncSeries1<RationalField> log(q, precision);
    const std::uint64_t step = checked_power(p, h);
    std::uint64_t degree = 1;
    BigInt denominator = 1;
    while (degree < precision) {
        log.set(degree, Rat(BigInt(1), denominator));
        if (degree > precision / step) {
            break;
        }
        degree *= step;
        denominator *= static_cast<unsigned long>(p);
    }
    return log;
}

FormalGroupLaw<RationalField> honda_law_rational(std::uint64_t p, unsigned h, std::size_t precision) {
    const auto log = honda_logarithm(p, h, precision);
    const auto exp = reversion(log);
    RationalField q;
    TruncSeries2<RationalField> sum(q, precision);
    for (std::size_t d = 1; d < precision; ++d) {
        if (!log[d].is_zero()) {
            sum.set(d, 0, log[d]);
            sum.set(0, d, log[d]);
        }
    }
    return FormalGroupLaw<RationalField>(compose(exp, sum), HondaLaw{p, h});
}

FormalGroupLaw<PrimeField> honda_law(std::uint64_t p, unsigned h, std::size_t precision) {
    const auto rational = honda_law_rational(p, h, precision);
    return FormalGroupLaw<PrimeField>(reduce_mod_p(rational.body(), PrimeField(p)), HondaLaw{p, h});
}

TruncSeries1<PrimeField> p_series(const FormalGroupLaw<PrimeField>& law) {
    return n_series(law, law.field().p());
}

std::string HeightResult::to_string() const {
    if (is_finite()) {
        return "height " + std::to_string(height);
    }
    return "height infinite at precision " + std::to_string(bound);
}

HeightResult height(const FormalGroupLaw<PrimeField>& law) {
    const auto series = p_series(law);
    const auto valuation = series.valuation();
    HeightResult result;
    if (!valuation) {
        result.kind = HeightResult::Kind::infinite_at_precision;
        result.bound = law.precision();
        return result;
    }
    const std::uint64_t p = law.field().p();
    std::uint64_t degree = p;
    unsigned h = 1;
    while (degree < *valuation) {
        degree *= p;
        ++h;
    }
    if (degree != *valuation) {
        throw MalformedPSeries("lowest term of the p-series has degree " + std::to_string(*valuation) +
                               ", not a power of " + std::to_string(p));
    }
    result.kind = HeightResult::Kind::finite;
    result.height = h;
    result.unit = series[*valuation];
    return result;
}

// ---------------------------------------------------------------------------

namespace {

// Dense products in F_p[v, w] / (v^q, w^q), coefficient of v^i w^j at i*q+j.
std::vector<Fp> box_multiply(const std::vector<Fp>& a, const std::vector<Fp>& b, std::size_t q,
                             const PrimeField& field) {
    std::vector<Fp> r(q * q, field.zero());
    for (std::size_t i1 = 0; i1 < q; ++i1) {
        for (std::size_t j1 = 0; j1 < q; ++j1) {
            const Fp& ca = a[i1 * q + j1];
            if (ca.is_zero()) {
                continue;
            }
            for (std::size_t i2 = 0; i1 + i2 < q; ++i2) {
                for (std::size_t j2 = 0; j1 + j2 < q; ++j2) {
                    const Fp& cb = b[i2 * q + j2];
                    if (!cb.is_zero()) {
                        r[(i1 + i2) * q + j1 + j2] += ca * cb;
                    }
                }
            }
        }
    }
    return r;
}

std::string render_vw(std::size_t i, std::size_t j) {
    auto factor = [](const char* var, std::size_t e) {
        return e == 1 ? std::string(var) : std::string(var) + "^" + std::to_string(e);
    };
    if (i == 0) {
        return factor("w", j);
    }
    if (j == 0) {
        return factor("v", i);
    }
    return factor("v", i) + "*" + factor("w", j);
}

} // namespace

TruncatedGroupLaw::TruncatedGroupLaw(PrimeField field, unsigned m, std::vector<Fp> coeffs)
    : field_(std::move(field)), m_(m), q_(checked_power(field_.p(), m)), coeffs_(std::move(coeffs)) {
    if (m == 0) {
        throw InvalidLaw("truncation level m must be at least 1");
    }
    if (coeffs_.size() != q_ * q_) {
        throw InvalidLaw("expected " + std::to_string(q_ * q_) + " coefficients");
    }
    for (const auto& c : coeffs_) {
        if (!(c.modulus() == field_.p())) {
            throw FieldMismatch("coefficient outside " + field_.name());
        }
    }
    // Units.
    for (std::size_t d = 0; d < q_; ++d) {
        const Fp expected = d == 1 ? field_.one() : field_.zero();
        if (!(coeff(d, 0) == expected)) {
            throw InvalidLaw("f(v,0) != v at v^" + std::to_string(d));
        }
        if (!(coeff(0, d) == expected)) {
            throw InvalidLaw("f(0,w) != w at w^" + std::to_string(d));
        }
    }
    // Associativity in k[v,w,u]/(v^q,w^q,u^q), sliced as in check_axioms:
    // [v^a w^b u^c] f(f(v,w),u) = [v^a w^b] sum_i f_ic f^i,
    // [v^a w^b u^c] f(v,f(w,u)) = [w^b u^c] sum_j f_aj f^j.
    std::vector<std::vector<Fp>> powers;
    powers.reserve(q_);
    powers.push_back(power(0));
    for (std::size_t i = 1; i < q_; ++i) {
        powers.push_back(box_multiply(powers.back(), coeffs_, q_, field_));
    }
    auto slice = [&](std::size_t e, bool by_last) {
        std::vector<Fp> s(q_ * q_, field_.zero());
        for (std::size_t i = 0; i < q_; ++i) {
            const Fp& c = by_last ? coeff(i, e) : coeff(e, i);
            if (c.is_zero()) {
                continue;
            }
            for (std::size_t k = 0; k < q_ * q_; ++k) {
                s[k] += c * powers[i][k];
            }
        }
        return s;
    };
    std::vector<std::vector<Fp>> by_last, by_first;
    for (std::size_t e = 0; e < q_; ++e) {
        by_last.push_back(slice(e, true));
        by_first.push_back(slice(e, false));
    }
    for (std::size_t a = 0; a < q_; ++a) {
        for (std::size_t b = 0; b < q_; ++b) {
            for (std::size_t c = 0; c < q_; ++c) {
                if (!(by_last[c][a * q_ + b] == by_first[a][b * q_ + c])) {
                    throw InvalidLaw("truncated associativity fails at v^" + std::to_string(a) + "*w^" +
                                     std::to_string(b) + "*u^" + std::to_string(c));
                }
            }
        }
    }
}

std::vector<Fp> TruncatedGroupLaw::power(std::size_t n) const {
    std::vector<Fp> result(q_ * q_, field_.zero());
    result[0] = field_.one();
    for (std::size_t k = 0; k < n; ++k) {
        result = box_multiply(result, coeffs_, q_, field_);
    }
    return result;
}

TruncatedGroupLaw TruncatedGroupLaw::truncate(unsigned l) const {
    if (l == 0 || l > m_) {
        throw OrderOutOfRange("cannot truncate an " + std::to_string(m_) + "-truncated law to level " +
                              std::to_string(l));
    }
    const std::size_t q = checked_power(field_.p(), l);
    std::vector<Fp> coeffs;
    coeffs.reserve(q * q);
    for (std::size_t i = 0; i < q; ++i) {
        for (std::size_t j = 0; j < q; ++j) {
            coeffs.push_back(coeff(i, j));
        }
    }
    return TruncatedGroupLaw(field_, l, std::move(coeffs));
}

std::string to_string(const TruncatedGroupLaw& law) {
    std::vector<std::string> parts;
    const std::size_t q = law.size();
    for (std::size_t d = 0; d <= 2 * (q - 1); ++d) {
        for (std::size_t j = 0; j <= d; ++j) {
            const std::size_t i = d - j;
            if (i >= q || j >= q) {
                continue;
            }
            const Fp& c = law.coeff(i, j);
            if (c.is_zero()) {
                continue;
            }
            std::string mono = d == 0 ? "" : render_vw(i, j);
            if (d == 0) {
                parts.push_back(law.field().render(c));
            } else if (c == law.field().one()) {
                parts.push_back(mono);
            } else {
                parts.push_back(law.field().render(c) + "*" + mono);
            }
        }
    }
    return detail::join_terms(parts);
}

TruncatedGroupLaw truncate(const FormalGroupLaw<PrimeField>& law, unsigned m) {
    const std::size_t q = checked_power(law.field().p(), m);
    if (law.precision() < 2 * q - 1) {
        throw InsufficientPrecision("truncation to level " + std::to_string(m) + " needs N >= " +
                                    std::to_string(2 * q - 1) + ", law has N = " + std::to_string(law.precision()));
    }
    std::vector<Fp> coeffs;
    coeffs.reserve(q * q);
    for (std::size_t i = 0; i < q; ++i) {
        for (std::size_t j = 0; j < q; ++j) {
            coeffs.push_back(law.body().coeff(i, j));
        }
    }
    return TruncatedGroupLaw(law.field(), m, std::move(coeffs));
}

} // namespace hsfgl
