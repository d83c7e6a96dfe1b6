#include "hsfgl/series.hpp"

namespace hsfgl {

namespace detail {

std::string render_xy_monomial(std::size_t i, std::size_t j) {
    auto factor = [](const char* var, std::size_t e) {
        std::string s = var;
        if (e != 1) {
            s += "^" + std::to_string(e);
        }
        return s;
    };
    if (i == 0) {
        return factor("Y", j);
    }
    if (j == 0) {
        return factor("X", i);
    }
    return factor("X", i) + "*" + factor("Y", j);
}

namespace {

Fp reduce_at(const Rat& c, const PrimeField& field, const std::string& where) {
    if (!is_p_integral(c, field.p())) {
        throw IntegralityViolation("coefficient " + c.to_string() + " of " + where + " is not " +
                                   std::to_string(field.p()) + "-integral");
    }
    return reduce_mod_p(c, field);
}

} // namespace

} // namespace detail

TruncSeries1<PrimeField> reduce_mod_p(const TruncSeries1<RationalField>& f, const PrimeField& field) {
    TruncSeries1<PrimeField> r(field, f.precision());
    for (std::size_t i = 0; i < f.precision(); ++i) {
        r.set(i, detail::reduce_at(f[i], field, i == 0 ? "1" : "X^" + std::to_string(i)));
    }
    return r;
}

TruncSeries2<PrimeField> reduce_mod_p(const TruncSeries2<RationalField>& f, const PrimeField& field) {
    TruncSeries2<PrimeField> r(field, f.precision());
    f.for_each_nonzero([&](std::size_t i, std::size_t j, const Rat& c) {
        r.set(i, j, detail::reduce_at(c, field, i + j == 0 ? "1" : detail::render_xy_monomial(i, j)));
    });
    return r;
}

LaurentPoly<PrimeField> reduce_mod_p(const LaurentPoly<RationalField>& f, const PrimeField& field) {
    LaurentPoly<PrimeField> r(field);
    for (const auto& [e, c] : f.terms()) {
        r.add_term(e, detail::reduce_at(c, field, "t^" + std::to_string(e)));
    }
    return r;
}

} // namespace hsfgl
