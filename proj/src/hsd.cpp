#include "hsfgl/hsd.hpp"

#include <algorithm>

namespace hsfgl {

std::string IterativityReport::to_string() const {
    const std::string scope = truncated ? "i,j < " + std::to_string(bound) : "i+j < " + std::to_string(bound);
    if (pass) {
        return "PASS (" + scope + ")";
    }
    const auto& m = *first_mismatch;
    return "FAIL at (i,j)=(" + std::to_string(m.i) + "," + std::to_string(m.j) + "), t^" +
           std::to_string(m.exponent) + ": D_i(D_j(t)) = " + m.lhs + " but sum_n D_n(t)[X^iY^j]L^n = " + m.rhs +
           " (" + scope + ")";
}

std::string P1Report::to_string() const {
    if (pass) {
        return "PASS (orders < " + std::to_string(bound) + ")";
    }
    std::string out = "FAIL at n=" + std::to_string(*first_failing_order) + "; offending: ";
    for (std::size_t k = 0; k < offending.size(); ++k) {
        out += (k == 0 ? "" : ", ") + offending[k];
    }
    return out;
}

IterativityReport check_f_iterativity(const HSDerivation<PrimeField>& d, const TruncatedGroupLaw& law) {
    detail::require_same_field(d.field(), law.field(), "check_f_iterativity");
    const std::size_t q = law.size();
    if (d.order_bound() != q) {
        throw OrderOutOfRange("a truncated check against an " + std::to_string(law.m()) +
                              "-truncated law needs order bound " + std::to_string(q) + ", have " +
                              std::to_string(d.order_bound()));
    }
    const auto& field = d.field();
    std::vector<std::vector<Fp>> powers;
    powers.reserve(q);
    for (std::size_t n = 0; n < q; ++n) {
        powers.push_back(law.power(n));
    }
    return detail::compare_iterativity(d, true, [&](std::size_t i, std::size_t j) {
        LaurentPoly<PrimeField> acc(field);
        for (std::size_t n = 0; n < q; ++n) {
            const Fp& c = powers[n][i * q + j];
            if (!c.is_zero() && !d.image(n).is_zero()) {
                acc += d.image(n).scaled(c);
            }
        }
        return acc;
    });
}

bool check_restricted(const Derivation<PrimeField>& d, const Fp& c) {
    const auto& field = d.field();
    const std::uint64_t p = field.p();
    const auto scalar = LaurentPoly<PrimeField>::constant(field, c);
    for (long e : {1L, 2L}) {
        const auto x = LaurentPoly<PrimeField>::t_power(field, e);
        if (!(d.iterate(x, p) == d.apply(x) * scalar)) {
            return false;
        }
    }
    return true;
}

Fp compute_cF(const FormalGroupLaw<PrimeField>& law) {
    const auto& field = law.field();
    const std::uint64_t p = field.p();
    if (law.precision() <= p) {
        throw InsufficientPrecision("c_F needs precision N > p = " + std::to_string(p));
    }
    auto probe = probe_coeff_of_y(law, 1, 2 * law.precision());
    if (!probe.stabilized) {
        throw InsufficientPrecision("D_1(t) is not a stabilized polynomial at precision " +
                                    std::to_string(law.precision()));
    }
    const Derivation<PrimeField> d(probe.low);
    const auto t = LaurentPoly<PrimeField>::t_power(field, 1);
    const auto first = d.apply(t);
    const auto pth = d.iterate(t, p);
    if (first.is_zero()) {
        throw NotProportional("D_1(t) vanishes");
    }
    const auto& [e, lead] = *first.terms().rbegin();
    const Fp c = pth.coeff(e) / lead;
    if (!check_restricted(d, c)) {
        throw NotProportional("D_1^(p)(t) = " + to_string(pth) + " is not a multiple of D_1(t) = " + to_string(first));
    }
    return c;
}

namespace {

DegreeWindow fit_window(const std::vector<LaurentPoly<PrimeField>>& images, std::size_t order_bound) {
    DegreeWindow w = default_window(order_bound, 1);
    w.lo = std::min(w.lo, -1L);
    w.hi = std::max(w.hi, 1L);
    for (const auto& q : images) {
        if (!q.is_zero()) {
            w.lo = std::min(w.lo, *q.min_exponent());
            w.hi = std::max(w.hi, *q.max_exponent());
        }
    }
    return w;
}

} // namespace

HSDerivation<PrimeField> prolong_Ga1(const Derivation<PrimeField>& d, std::optional<DegreeWindow> window) {
    const auto& field = d.field();
    if (!check_restricted(d, field.zero())) {
        throw NotNilpotent("d^(p) does not vanish on t or t^2 for d(t) = " + to_string(d.image()));
    }
    const std::uint64_t p = field.p();
    std::vector<LaurentPoly<PrimeField>> images;
    auto power = LaurentPoly<PrimeField>::t_power(field, 1);
    Fp factorial = field.one();
    for (std::uint64_t n = 1; n < p; ++n) {
        power = d.apply(power);
        factorial *= field.from_int(static_cast<long long>(n));
        images.push_back(power.scaled(factorial.inverse()));
    }
    return HSDerivation<PrimeField>::from_table(field, images, window.value_or(fit_window(images, p)));
}

HSDerivation<PrimeField> prolong_Gm1(const Derivation<PrimeField>& d, std::optional<DegreeWindow> window) {
    const auto& field = d.field();
    if (!check_restricted(d, field.one())) {
        throw NotMultiplicativelyRestricted("d^(p) != d for d(t) = " + to_string(d.image()));
    }
    const std::uint64_t p = field.p();
    std::vector<LaurentPoly<PrimeField>> images;
    if (p > 1) {
        images.push_back(d.image());
    }
    for (std::uint64_t n = 1; n + 1 < p; ++n) {
        const auto& current = images.back();
        const Fp n_elem = field.from_int(static_cast<long long>(n));
        auto next = d.apply(current) - current.scaled(n_elem);
        images.push_back(next.scaled(field.from_int(static_cast<long long>(n + 1)).inverse()));
    }
    return HSDerivation<PrimeField>::from_table(field, images, window.value_or(fit_window(images, p)));
}

} // namespace hsfgl
