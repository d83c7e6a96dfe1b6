#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "generators.hpp"
#include "hsfgl/hsd.hpp"

using namespace hsfgl;

namespace {

using Poly = LaurentPoly<PrimeField>;
const PrimeField F2(2);
const DegreeWindow kWide{-80, 80};

Poly lp(const PrimeField& f, const std::string& s) { return parse_laurent(f, s); }

HSDerivation<PrimeField> honda22() { return canonical_derivation(honda_law(2, 2, 17), 8, default_window(8, 4)); }

HSDerivation<PrimeField> additive(const PrimeField& f, std::size_t b) {
    return canonical_derivation(additive_law(f, 2 * b + 1), b, kWide);
}

HSDerivation<PrimeField> multiplicative(const PrimeField& f, std::size_t b) {
    return canonical_derivation(multiplicative_law(f, 2 * b + 1), b, kWide);
}

Fp binomial(const PrimeField& f, long n, long k) {
    return reduce_mod_p(Rat(mpz_class(mpz_class::factorial(n) / (mpz_class::factorial(k) * mpz_class::factorial(n - k))),
                            mpz_class(1)),
                        f);
}

std::vector<std::string> images(const HSDerivation<PrimeField>& d) {
    std::vector<std::string> out;
    for (std::size_t n = 1; n < d.order_bound(); ++n) {
        out.push_back(to_string(d.image(n)));
    }
    return out;
}

} // namespace

TEST_CASE("canonical derivations") {
    CHECK(images(additive(F2, 5)) == std::vector<std::string>{"1", "0", "0", "0"});
    CHECK(images(multiplicative(PrimeField(3), 5)) == std::vector<std::string>{"t + 1", "0", "0", "0"});
    CHECK(images(honda22()) == std::vector<std::string>{"1", "t^2", "0", "t^12 + t^6", "0", "t^4", "0"});
    CHECK(honda22().image(0) == Poly::t_power(F2, 1));
}

TEST_CASE("canonical derivation guards") {
    // D_8(t) is not yet stable at N = 17.
    CHECK_THROWS_AS(canonical_derivation(honda_law(2, 2, 17), 9, kWide), InsufficientPrecision);
    CHECK_THROWS_AS(canonical_derivation(honda_law(2, 2, 17), 8, DegreeWindow{-9, 10}), WindowOverflow);
    CHECK_THROWS_AS(canonical_derivation(additive_law(F2, 4), 8, kWide), InsufficientPrecision);
    CHECK_THROWS_AS(honda22().image(8), OrderOutOfRange);
}

TEST_CASE("applying a derivation") {
    const PrimeField f5(5);
    CHECK(hs_apply(additive(f5, 4), lp(f5, "t^3"), 2) == lp(f5, "3*t"));
    CHECK(hs_apply(multiplicative(F2, 4), lp(F2, "t^-1"), 1) == lp(F2, "t^-1 + t^-2"));
    CHECK(to_string(hs_apply(honda22(), lp(F2, "t^-1"), 4)) == "t^10 + t^4 + t + t^-2 + t^-5");
    CHECK_THROWS_AS(hs_apply(honda22(), lp(F2, "t"), 8), OrderOutOfRange);
    // Applying to a polynomial whose image leaves the window.
    CHECK_THROWS_AS(hs_apply(honda22(), lp(F2, "t^40"), 4), WindowOverflow);
}

TEST_CASE("images of 1/t") {
    const auto inv = hs_inverse_image(honda22(), 8);
    CHECK(to_string(inv[1]) == "t^-2");
    CHECK(to_string(inv[2]) == "1 + t^-3");
    CHECK(to_string(inv[3]) == "t^-4");
    CHECK(to_string(inv[4]) == "t^10 + t^4 + t + t^-2 + t^-5");
    CHECK_THROWS_AS(hs_inverse_image(honda22(), 9), OrderOutOfRange);

    const PrimeField f7(7);
    const auto a = hs_inverse_image(additive(f7, 8), 8);
    for (long n = 0; n < 8; ++n) {
        CHECK(a[n] == Poly::monomial(f7, f7.from_int(n % 2 == 0 ? 1 : -1), -n - 1));
    }
}

TEST_CASE("Leibniz rule examples") {
    const PrimeField f5(5);
    const auto one = Poly::constant(f5, f5.one());
    for (std::size_t n = 0; n < 4; ++n) {
        CHECK(check_leibniz(additive(f5, 4), one, one, n));
    }
    CHECK(check_leibniz(additive(f5, 4), lp(f5, "t"), lp(f5, "t^2"), 2));
    CHECK(check_leibniz(honda22(), lp(F2, "t"), lp(F2, "t^-1"), 4));
    CHECK_THROWS_AS(check_leibniz(honda22(), Poly::constant(F2, F2.one()), lp(F2, "t"), 8),
                    OrderOutOfRange);
}

TEST_CASE("iterativity") {
    CHECK(check_f_iterativity(additive(F2, 8), additive_law(F2, 8)).pass);
    const auto law = honda_law(2, 2, 17);
    const auto table = honda22();
    const auto report = check_f_iterativity(table, truncate(law, 3));
    CHECK(report.pass);
    CHECK(report.truncated);
    CHECK(report.bound == 8);
    CHECK(check_f_iterativity(table, law).pass);

    const auto broken = check_f_iterativity(table.with_image(2, lp(F2, "t")), truncate(law, 3));
    CHECK_FALSE(broken.pass);
    REQUIRE(broken.first_mismatch.has_value());
    CHECK(broken.to_string().rfind("FAIL at (i,j)=", 0) == 0);

    CHECK_THROWS_AS(check_f_iterativity(table, truncate(law, 2)), OrderOutOfRange);
}

TEST_CASE("restricted Lie constants") {
    CHECK(compute_cF(additive_law(F2, 8)).value() == 0);
    CHECK(compute_cF(multiplicative_law(PrimeField(3), 8)).value() == 1);
    CHECK(compute_cF(honda_law(2, 2, 17)).value() == 0);
    CHECK_THROWS_AS(compute_cF(additive_law(F2, 2)), InsufficientPrecision);

    CHECK(check_restricted(Derivation<PrimeField>(lp(F2, "1")), F2.zero()));
    CHECK(check_restricted(Derivation<PrimeField>(lp(F2, "1 + t")), F2.one()));
    CHECK_FALSE(check_restricted(Derivation<PrimeField>(lp(F2, "t^2")), F2.one()));
}

TEST_CASE("prolongations") {
    const PrimeField f3(3), f5(5);
    const auto ga = prolong_Ga1(Derivation<PrimeField>(lp(f3, "1")));
    CHECK(images(ga) == std::vector<std::string>{"1", "0"});
    const auto sq = prolong_Ga1(Derivation<PrimeField>(lp(F2, "t^2")));
    CHECK(sq.order_bound() == 2);
    CHECK(images(sq) == std::vector<std::string>{"t^2"});
    CHECK_THROWS_AS(hs_apply(prolong_Ga1(Derivation<PrimeField>(lp(f5, "1"))), lp(f5, "t^5"), 5), OrderOutOfRange);
    CHECK_THROWS_AS(prolong_Ga1(Derivation<PrimeField>(lp(f3, "1 + t"))), NotNilpotent);

    CHECK(images(prolong_Gm1(Derivation<PrimeField>(lp(f3, "1 + t")))) == std::vector<std::string>{"t + 1", "0"});
    CHECK(prolong_Gm1(Derivation<PrimeField>(lp(F2, "1 + t"))).order_bound() == 2);
    CHECK_THROWS_AS(prolong_Gm1(Derivation<PrimeField>(lp(f3, "1"))), NotMultiplicativelyRestricted);
}

TEST_CASE("prolongations reproduce canonical derivations and are iterative") {
    for (std::uint64_t p : {2, 3, 5, 7}) {
        const PrimeField f(p);
        const auto ga = prolong_Ga1(Derivation<PrimeField>(lp(f, "1")));
        const auto gm = prolong_Gm1(Derivation<PrimeField>(lp(f, "1 + t")));
        CHECK(images(ga) == images(additive(f, p)));
        CHECK(images(gm) == images(multiplicative(f, p)));
        CHECK(check_f_iterativity(ga, truncate(additive_law(f, 2 * p), 1)).pass);
        CHECK(check_f_iterativity(gm, truncate(multiplicative_law(f, 2 * p), 1)).pass);
    }
    // A nilpotent derivation that is not d/dt: d(t) = t^2 over F_3 has d^3(t) = 6 t^4 = 0.
    const PrimeField f3(3);
    const auto odd = prolong_Ga1(Derivation<PrimeField>(lp(f3, "t^2")));
    CHECK(images(odd) == std::vector<std::string>{"t^2", "t^3"});
    CHECK(check_f_iterativity(odd, truncate(additive_law(f3, 6), 1)).pass);
}

TEST_CASE("projective line") {
    const auto h = check_p1_extendable(honda22(), 8);
    CHECK_FALSE(h.pass);
    CHECK(h.first_failing_order == 4u);
    CHECK(h.offending == std::vector<std::string>{"t^10", "t^4", "t"});
    CHECK(h.offending_exponents == std::vector<long>{10, 4, 1});
    CHECK(h.to_string() == "FAIL at n=4; offending: t^10, t^4, t");
    CHECK(check_p1_extendable(honda22(), 4).pass);
    for (std::uint64_t p : {2, 3, 5}) {
        CHECK(check_p1_extendable(additive(PrimeField(p), 16), 16).pass);
        CHECK(check_p1_extendable(multiplicative(PrimeField(p), 16), 16).pass);
    }
}

TEST_CASE("homomorphism property on random Laurent polynomials") {
    gen::Engine rng(12);
    const auto d = honda22();
    const DegreeWindow tight = d.window();
    for (std::uint64_t p : {2, 3, 5}) {
        const PrimeField f(p);
        std::vector<HSDerivation<PrimeField>> ds = {additive(f, 6), multiplicative(f, 6)};
        if (p == 2) {
            ds.push_back(HSDerivation<PrimeField>(d.generator_image(), kWide));
        }
        for (const auto& der : ds) {
            for (int trial = 0; trial < 15; ++trial) {
                const auto q = gen::laurent(rng, f, -3, 3, 3);
                const auto r = gen::laurent(rng, f, -3, 3, 3);
                for (std::size_t n = 0; n < der.order_bound(); ++n) {
                    CHECK(check_leibniz(der, q, r, n));
                    CHECK(hs_apply(der, q + r, n) == hs_apply(der, q, n) + hs_apply(der, r, n));
                }
            }
        }
    }
    CHECK(tight.lo == -9);
}

TEST_CASE("additive closed form and binomial iterativity") {
    gen::Engine rng(13);
    for (std::uint64_t p : {2, 3, 5, 7}) {
        const PrimeField f(p);
        const auto d = additive(f, 10);
        for (int trial = 0; trial < 10; ++trial) {
            const auto q = gen::laurent(rng, f, 0, 12, 5);
            for (long n = 0; n < 10; ++n) {
                Poly expected(f);
                for (const auto& [e, c] : q.terms()) {
                    if (e >= n) {
                        expected.add_term(e - n, c * binomial(f, e, n));
                    }
                }
                CHECK(hs_apply(d, q, static_cast<std::size_t>(n)) == expected);
            }
        }
        for (const auto& q : {lp(f, "t"), lp(f, "t^3"), lp(f, "t^-1")}) {
            for (long i = 0; i < 10; ++i) {
                for (long j = 0; i + j < 10; ++j) {
                    const auto lhs = hs_apply(d, hs_apply(d, q, j), i);
                    const auto rhs = hs_apply(d, q, i + j).scaled(binomial(f, i + j, i));
                    CHECK(lhs == rhs);
                }
            }
        }
    }
}

TEST_CASE("the two routes to D_n(1/t) agree") {
    gen::Engine rng(14);
    for (std::uint64_t p : {2, 3, 5}) {
        const PrimeField f(p);
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<Poly> table;
            for (int n = 1; n < 6; ++n) {
                table.push_back(gen::laurent(rng, f, 0, 3, 2));
            }
            const auto d = HSDerivation<PrimeField>::from_table(f, table, kWide);
            const auto inv = hs_inverse_image(d, 6);
            for (std::size_t n = 0; n < 6; ++n) {
                CHECK(inv[n] == hs_apply(d, lp(f, "t^-1"), n));
            }
        }
    }
    const auto h = honda22();
    const auto inv = hs_inverse_image(h, 8);
    for (std::size_t n = 0; n < 8; ++n) {
        CHECK(inv[n] == hs_apply(h, lp(F2, "t^-1"), n));
    }
}

TEST_CASE("order-one extendability is the degree bound") {
    gen::Engine rng(15);
    for (std::uint64_t p : {2, 3, 5}) {
        const PrimeField f(p);
        for (int trial = 0; trial < 40; ++trial) {
            const auto d1 = gen::laurent(rng, f, 0, 5, 3);
            const auto d = HSDerivation<PrimeField>::from_table(f, {d1}, kWide);
            const bool low_degree = d1.is_zero() || *d1.max_exponent() <= 2;
            CHECK(check_p1_extendable(d, 2).pass == low_degree);
        }
    }
}

TEST_CASE("iterativity of canonical derivations at every feasible bound") {
    for (std::uint64_t p : {2, 3, 5}) {
        const PrimeField f(p);
        for (std::size_t b : {2, 5, 12}) {
            CHECK(check_f_iterativity(additive(f, b), additive_law(f, 2 * b + 1)).pass);
            CHECK(check_f_iterativity(multiplicative(f, b), multiplicative_law(f, 2 * b + 1)).pass);
        }
    }
    const auto law = honda_law(2, 2, 17);
    for (std::size_t b = 2; b <= 8; ++b) {
        CHECK(check_f_iterativity(canonical_derivation(law, b, default_window(b, 4)), law).pass);
    }
    CHECK(check_f_iterativity(canonical_derivation(law, 2, kWide), truncate(law, 1)).pass);
    CHECK(check_f_iterativity(canonical_derivation(law, 4, kWide), truncate(law, 2)).pass);
}

TEST_CASE("perturbed tables fail iterativity") {
    gen::Engine rng(16);
    const auto law = truncate(honda_law(2, 2, 17), 3);
    // Perturbed entries may reach higher degrees than the true table.
    const HSDerivation<PrimeField> table(honda22().generator_image(), kWide);
    for (int trial = 0; trial < 20; ++trial) {
        const auto n = static_cast<std::size_t>(gen::small_int(rng, 1, 7));
        const auto e = gen::small_int(rng, 0, 8);
        const auto mutated = table.with_image(n, table.image(n) + Poly::t_power(F2, e));
        const auto report = check_f_iterativity(mutated, law);
        CHECK_FALSE(report.pass);
        CHECK(report.first_mismatch.has_value());
    }
}
