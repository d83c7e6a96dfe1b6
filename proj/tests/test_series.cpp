#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "generators.hpp"
#include "hsfgl/series.hpp"

using namespace hsfgl;

namespace {

const RationalField Q;

TruncSeries1<RationalField> q_series(std::vector<Rat> c) { return TruncSeries1<RationalField>(Q, std::move(c)); }

TruncSeries1<PrimeField> fp_series(const PrimeField& f, std::vector<long long> c) {
    std::vector<Fp> v;
    for (auto x : c) {
        v.push_back(f.from_int(x));
    }
    return TruncSeries1<PrimeField>(f, std::move(v));
}

template <class K>
TruncSeries2<K> xy(const K& f, std::size_t n, std::vector<std::tuple<std::size_t, std::size_t, long long>> terms) {
    TruncSeries2<K> s(f, n);
    for (auto [i, j, c] : terms) {
        s.set(i, j, f.from_int(c));
    }
    return s;
}

} // namespace

TEST_CASE("multiplication") {
    const auto x = TruncSeries2<RationalField>::x(Q, 4);
    const auto y = TruncSeries2<RationalField>::y(Q, 4);
    CHECK((x + y) * (x - y) == xy(Q, 4, {{2, 0, 1}, {0, 2, -1}}));

    const PrimeField f2(2);
    CHECK(fp_series(f2, {1, 1, 0}) * fp_series(f2, {1, 1, 0}) == fp_series(f2, {1, 0, 1}));

    gen::Engine rng(3);
    const auto a = gen::series1(rng, Q, 3), b = gen::series1(rng, Q, 5);
    CHECK((a * b).precision() == 3);
    CHECK((gen::series2(rng, Q, 3) * gen::series2(rng, Q, 5)).precision() == 3);
    CHECK_THROWS_AS(fp_series(f2, {1}) * fp_series(PrimeField(3), {1}), FieldMismatch);
}

TEST_CASE("composition") {
    gen::Engine rng(4);
    const auto g = gen::series1(rng, Q, 6, 1);
    CHECK(compose(TruncSeries1<RationalField>::variable(Q, 6), g) == g);
    const auto sq = q_series({0, 0, 1, 0, 0});
    CHECK(compose(sq, q_series({0, 1, 0, 1, 0})) == q_series({0, 0, 1, 0, 2}));
    CHECK_THROWS_AS(compose(sq, q_series({1, 1, 0, 0, 0})), PositiveValuationRequired);
}

TEST_CASE("reversion") {
    const auto x = TruncSeries1<RationalField>::variable(Q, 8);
    CHECK(reversion(x) == x);
    const auto f = q_series({0, 1, 0, 0, Rat(1, 2), 0, 0, 0});
    const auto g = reversion(f);
    CHECK(g == q_series({0, 1, 0, 0, Rat(-1, 2), 0, 0, 1}));
    CHECK(to_string(g) == "X - 1/2*X^4 + X^7 + O(X^8)");

    const PrimeField f2(2);
    CHECK(reversion(fp_series(f2, {0, 1, 1, 0})) == fp_series(f2, {0, 1, 1, 0}));
    CHECK_THROWS_AS(reversion(q_series({1, 1, 0})), NotReversible);
    CHECK_THROWS_AS(reversion(q_series({0, 0, 1})), NotReversible);
}

TEST_CASE("unit inverses") {
    CHECK(unit_inverse(q_series({1, 1, 0, 0})) == q_series({1, -1, 1, -1}));
    CHECK(unit_inverse(q_series({1, 0, 0})) == q_series({1, 0, 0}));
    CHECK_THROWS_AS(unit_inverse(q_series({0, 1})), NotAUnit);

    const PrimeField f2(2);
    using Poly = LaurentPoly<PrimeField>;
    XSeriesOverLaurent<PrimeField> s(f2, 3);
    s.set(0, Poly::t_power(f2, 1) + Poly::constant(f2, f2.one()));
    CHECK_THROWS_AS(unit_inverse(s), NotAUnit);

    XSeriesOverLaurent<PrimeField> u(f2, 4);
    u.set(0, Poly::t_power(f2, 1));
    u.set(1, Poly::t_power(f2, 2));
    const auto inv = unit_inverse(u);
    const auto prod = u * inv;
    CHECK(prod[0] == Poly::constant(f2, f2.one()));
    for (std::size_t n = 1; n < 4; ++n) {
        CHECK(prod[n].is_zero());
    }
    CHECK(inv[1] == Poly::constant(f2, f2.one()));
}

TEST_CASE("bivariate substitution") {
    gen::Engine rng(5);
    const auto x = TruncSeries2<RationalField>::x(Q, 6);
    const auto y = TruncSeries2<RationalField>::y(Q, 6);
    const auto add = x + y;
    const auto h = gen::series2(rng, Q, 6, 1);
    CHECK(subst2(add, add, h) == x + y + h);
    const auto mult = x + y + x * y;
    CHECK(subst2(mult, x, y) == mult);
    CHECK(subst2(add, x, x) == x.scaled(Rat(2)));

    const PrimeField f2(2);
    const auto x2 = TruncSeries2<PrimeField>::x(f2, 6);
    CHECK(subst2(x2 + TruncSeries2<PrimeField>::y(f2, 6), x2, x2).is_zero());
    CHECK_THROWS_AS(subst2(add, x + TruncSeries2<RationalField>::monomial(Q, Rat(1), 0, 0, 6), y),
                    PositiveValuationRequired);
}

TEST_CASE("reduction of series") {
    const PrimeField f3(3), f2(2);
    const auto x = TruncSeries2<RationalField>::x(Q, 4);
    const auto y = TruncSeries2<RationalField>::y(Q, 4);
    CHECK(to_string(reduce_mod_p(x + y + x * y, f3)) == "X + Y + X*Y + O(deg 4)");
    try {
        reduce_mod_p(q_series({0, 1, 0, 0, Rat(1, 2)}), f2);
        FAIL("expected IntegralityViolation");
    } catch (const IntegralityViolation& e) {
        CHECK(std::string(e.what()).find("X^4") != std::string::npos);
    }
    CHECK(reduce_mod_p(q_series({0, 1, Rat(3, 2)}), f3) == fp_series(f3, {0, 1, 0}));
}

TEST_CASE("rendering") {
    const PrimeField f3(3);
    CHECK(to_string(fp_series(f3, {0, 2, 0, 1})) == "2*X + X^3 + O(X^4)");
    CHECK(to_string(TruncSeries1<RationalField>(Q, 3)) == "O(X^3)");
    CHECK(to_string(xy(f3, 8, {{1, 0, 1}, {0, 1, 1}, {2, 2, 2}})) == "X + Y + 2*X^2*Y^2 + O(deg 8)");
    CHECK(to_string(q_series({0, Rat(-1), Rat(1, 3)})) == "-X + 1/3*X^2 + O(X^3)");
}

TEST_CASE("ring axioms hold on random series") {
    gen::Engine rng(6);
    const PrimeField f5(5);
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = gen::series1(rng, Q, 7), b = gen::series1(rng, Q, 7), c = gen::series1(rng, Q, 7);
        CHECK((a + b) * c == a * c + b * c);
        CHECK(a * b == b * a);
        const auto u = gen::series2(rng, f5, 6), v = gen::series2(rng, f5, 6), w = gen::series2(rng, f5, 6);
        CHECK((u + v) * w == u * w + v * w);
        CHECK(u * v == v * u);
        CHECK((u * v) * w == u * (v * w));
    }
}

TEST_CASE("composition is associative") {
    gen::Engine rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        const auto f = gen::series1(rng, Q, 7);
        const auto g = gen::series1(rng, Q, 7, 1);
        const auto h = gen::series1(rng, Q, 7, 1);
        CHECK(compose(f, compose(g, h)) == compose(compose(f, g), h));
    }
}

TEST_CASE("reversion round trip") {
    gen::Engine rng(8);
    const PrimeField f7(7);
    for (int trial = 0; trial < 30; ++trial) {
        const auto f = gen::reversible(rng, Q, 9);
        const auto x = TruncSeries1<RationalField>::variable(Q, 9);
        CHECK(compose(f, reversion(f)) == x);
        CHECK(compose(reversion(f), f) == x);
        const auto g = gen::reversible(rng, f7, 9);
        const auto x7 = TruncSeries1<PrimeField>::variable(f7, 9);
        CHECK(compose(g, reversion(g)) == x7);
        CHECK(compose(reversion(g), g) == x7);
    }
}

TEST_CASE("precision never grows") {
    gen::Engine rng(9);
    const auto a = gen::series1(rng, Q, 4, 1), b = gen::series1(rng, Q, 9, 1);
    CHECK((a + b).precision() == 4);
    CHECK(compose(b, a).precision() == 4);
    CHECK(compose(a, b).precision() == 4);
    const auto u = gen::series2(rng, Q, 3, 1), v = gen::series2(rng, Q, 6, 1);
    CHECK(subst2(v, u, v).precision() == 3);
    CHECK((u - v).precision() == 3);
}

TEST_CASE("reduction commutes with multiplication and composition") {
    gen::Engine rng(10);
    for (std::uint64_t p : {2, 3, 5}) {
        const PrimeField f(p);
        for (int trial = 0; trial < 20; ++trial) {
            const auto a = gen::p_integral_series(rng, p, 7);
            const auto b = gen::p_integral_series(rng, p, 7, 1);
            CHECK(reduce_mod_p(a * b, f) == reduce_mod_p(a, f) * reduce_mod_p(b, f));
            CHECK(reduce_mod_p(compose(a, b), f) == compose(reduce_mod_p(a, f), reduce_mod_p(b, f)));
        }
    }
}

TEST_CASE("Laurent polynomials") {
    const PrimeField f2(2), f3(3);
    using Poly = LaurentPoly<PrimeField>;
    const auto q = parse_laurent(f2, "t^10 + t^4 + t + t^-2 + t^-5");
    CHECK(to_string(q) == "t^10 + t^4 + t + t^-2 + t^-5");
    CHECK(q.term_count() == 5);
    CHECK(to_string(parse_laurent(f3, "2*t^2 + t^-1 + 1")) == "2*t^2 + 1 + t^-1");
    CHECK(to_string(parse_laurent(f2, "t + t")) == "0");
    CHECK(parse_laurent(f2, "t^3").pow(-2) == Poly::t_power(f2, -6));
    CHECK_THROWS_AS(parse_laurent(f2, "t + 1").unit_inverse(), NotAUnit);
    CHECK(parse_laurent(f3, "t^3 + t^-1").derivative() == parse_laurent(f3, "2*t^-2"));
    CHECK_THROWS(parse_laurent(f2, "t^"));
    CHECK_THROWS(parse_laurent(f2, "x^2"));
    const auto r = parse_laurent(Q, "-1/2*t^2 + 3 - t^-1");
    CHECK(to_string(r) == "-1/2*t^2 + 3 - t^-1");
    CHECK(to_string(reduce_mod_p(r, f3)) == "t^2 + 2*t^-1");
}
