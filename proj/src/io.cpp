#include "hsfgl/io.hpp"

#include <map>

namespace hsfgl {

namespace {

using nlohmann::json;

template <ScalarField K, class Emit>
json law_json(const FormalGroupLaw<K>& law, std::uint64_t p, Emit&& emit) {
    json monomials = json::array();
    law.body().for_each_nonzero([&](std::size_t i, std::size_t j, const typename K::value_type& c) {
        monomials.push_back({{"i", i}, {"j", j}, {"c", emit(c)}});
    });
    return {{"p", p}, {"precision", law.precision()}, {"monomials", monomials}};
}

template <class T>
T field_of(const json& j, const char* key) {
    if (!j.contains(key)) {
        throw ParseError(std::string("missing field '") + key + "'");
    }
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("field '") + key + "': " + e.what());
    }
}

} // namespace

json law_to_json(const FormalGroupLaw<RationalField>& law) {
    return law_json(law, 0, [](const Rat& c) { return c.to_string(); });
}

json law_to_json(const FormalGroupLaw<PrimeField>& law) {
    return law_json(law, law.field().p(), [](const Fp& c) { return c.value(); });
}

json law_to_json(const AnyLaw& law) {
    return std::visit([](const auto& l) { return law_to_json(l); }, law);
}

AnyLaw law_from_json(const json& j) {
    if (!j.is_object()) {
        throw ParseError("law must be a JSON object");
    }
    const auto p = field_of<std::uint64_t>(j, "p");
    const auto precision = field_of<std::size_t>(j, "precision");
    const auto monomials = field_of<json>(j, "monomials");
    if (!monomials.is_array()) {
        throw ParseError("'monomials' must be an array");
    }
    auto fill = [&](auto field, auto&& coefficient) {
        using K = decltype(field);
        TruncSeries2<K> body(field, precision);
        for (const auto& m : monomials) {
            const auto i = field_of<std::size_t>(m, "i");
            const auto jj = field_of<std::size_t>(m, "j");
            if (i + jj >= precision) {
                throw ParseError("monomial X^" + std::to_string(i) + "*Y^" + std::to_string(jj) +
                                 " beyond precision " + std::to_string(precision));
            }
            if (!m.contains("c")) {
                throw ParseError("monomial without coefficient");
            }
            body.set(i, jj, coefficient(field, m.at("c")));
        }
        return FormalGroupLaw<K>(std::move(body));
    };
    if (p == 0) {
        return fill(RationalField{}, [](const RationalField&, const json& c) {
            if (!c.is_string()) {
                throw ParseError("rational coefficients are strings \"num/den\"");
            }
            return Rat::parse(c.get<std::string>());
        });
    }
    return fill(PrimeField(p), [](const PrimeField& f, const json& c) {
        if (!c.is_number_unsigned() || c.get<std::uint64_t>() >= f.p()) {
            throw ParseError("F_p coefficients are integers in [0, p)");
        }
        return f.from_int(c.get<long long>());
    });
}

json table_to_json(const HSDerivation<PrimeField>& d) {
    json entries = json::array();
    for (std::size_t n = 1; n < d.order_bound(); ++n) {
        entries.push_back({{"n", n}, {"poly", to_string(d.image(n))}});
    }
    return {{"p", d.field().p()}, {"B", d.order_bound()}, {"entries", entries}};
}

HSDerivation<PrimeField> table_from_json(const json& j, DegreeWindow window) {
    if (!j.is_object()) {
        throw ParseError("table must be a JSON object");
    }
    const PrimeField field(field_of<std::uint64_t>(j, "p"));
    const auto bound = field_of<std::size_t>(j, "B");
    if (bound == 0) {
        throw ParseError("B must be positive");
    }
    std::map<std::size_t, LaurentPoly<PrimeField>> by_order;
    for (const auto& e : field_of<json>(j, "entries")) {
        const auto n = field_of<std::size_t>(e, "n");
        auto poly = parse_laurent(field, field_of<std::string>(e, "poly"));
        if (n == 0) {
            if (!(poly == LaurentPoly<PrimeField>::t_power(field, 1))) {
                throw ParseError("entry n=0 must be t");
            }
            continue;
        }
        if (n >= bound) {
            throw ParseError("entry n=" + std::to_string(n) + " beyond B=" + std::to_string(bound));
        }
        if (!by_order.emplace(n, std::move(poly)).second) {
            throw ParseError("duplicate entry n=" + std::to_string(n));
        }
    }
    std::vector<LaurentPoly<PrimeField>> images;
    for (std::size_t n = 1; n < bound; ++n) {
        auto it = by_order.find(n);
        images.push_back(it == by_order.end() ? LaurentPoly<PrimeField>(field) : it->second);
    }
    return HSDerivation<PrimeField>::from_table(field, images, window);
}

std::string dump(const json& j) { return j.dump(2); }

} // namespace hsfgl
