#ifndef HSFGL_EXACTNUM_HPP
#define HSFGL_EXACTNUM_HPP

#include <concepts>
#include <cstdint>
#include <ostream>
#include <string>

#include <gmpxx.h>

#include "hsfgl/error.hpp"

namespace hsfgl {

/// Arbitrary-precision signed integer.
using BigInt = mpz_class;

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
class Rat {
public:
    Rat() = default;
    Rat(long long n); // NOLINT(google-explicit-constructor)
    Rat(const BigInt& num, const BigInt& den);
    explicit Rat(const mpq_class& q);

    /// Parses "a" or "a/b" in base 10.
    static Rat parse(const std::string& text);

    BigInt num() const { return value_.get_num(); }
    BigInt den() const { return value_.get_den(); }
    bool is_zero() const { return sgn(value_) == 0; }
    int sign() const { return sgn(value_); }

    Rat operator-() const { return Rat(mpq_class(-value_)); }
    Rat& operator+=(const Rat& o);
    Rat& operator-=(const Rat& o);
    Rat& operator*=(const Rat& o);
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
    friend bool operator==(const Rat& a, const Rat& b) { return a.value_ == b.value_; }

    /// "num/den", or "num" when the denominator is 1.
    std::string to_string() const;

private:
    mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

bool is_prime(std::uint64_t n);

/// Element of the prime field F_p. Operations between elements of different
/// fields raise FieldMismatch.
class Fp {
public:
    /// Reduces `value` (any sign) modulo p; NotPrime unless p is a prime
    /// below 2^32.
    Fp(std::uint64_t p, long long value);

    std::uint64_t modulus() const { return p_; }
    std::uint64_t value() const { return v_; }
    bool is_zero() const { return v_ == 0; }

    Fp operator-() const { return Fp(p_, v_ == 0 ? 0 : p_ - v_, raw_tag{}); }
    Fp& operator+=(const Fp& o);
    Fp& operator-=(const Fp& o);
    Fp& operator*=(const Fp& o);
    Fp& operator/=(const Fp& o);

    friend Fp operator+(Fp a, const Fp& b) { return a += b; }
    friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
    friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
    friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
    friend bool operator==(const Fp& a, const Fp& b) { return a.p_ == b.p_ && a.v_ == b.v_; }

    /// Multiplicative inverse via extended Euclid; DivisionByZero on 0.
    Fp inverse() const;

    /// "value mod p".
    std::string to_string() const;

private:
    friend class PrimeField;
    struct raw_tag {};
    Fp(std::uint64_t p, std::uint64_t v, raw_tag) : p_(p), v_(v) {}
    // Reduction without re-validating a modulus already known to be prime.
    static Fp reduced(std::uint64_t p, long long value);
    void require_same_field(const Fp& o) const;

    std::uint64_t p_;
    std::uint64_t v_;
};

std::ostream& operator<<(std::ostream& os, const Fp& a);

/// True iff p does not divide the (reduced) denominator of `a`.
bool is_p_integral(const Rat& a, std::uint64_t p);

// Scalar fields. A field object is a value that knows how to make its own
// constants; series and polynomials carry one so that F_p zeroes know p.

class RationalField {
public:
    using value_type = Rat;

    Rat zero() const { return Rat(0); }
    Rat one() const { return Rat(1); }
    Rat from_int(long long n) const { return Rat(n); }
    Rat from_rat(const Rat& r) const { return r; }
    std::uint64_t characteristic() const { return 0; }
    std::string name() const { return "Q"; }
    /// Coefficient as it appears inside a polynomial rendering.
    std::string render(const Rat& a) const { return a.to_string(); }

    friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

class PrimeField {
public:
    using value_type = Fp;

    /// Throws NotPrime unless p is a prime below 2^32.
    explicit PrimeField(std::uint64_t p);

    std::uint64_t p() const { return p_; }
    Fp zero() const { return Fp(p_, 0, Fp::raw_tag{}); }
    Fp one() const { return Fp(p_, 1, Fp::raw_tag{}); }
    Fp from_int(long long n) const { return Fp::reduced(p_, n); }
    /// IntegralityViolation when p divides the denominator.
    Fp from_rat(const Rat& r) const;
    std::uint64_t characteristic() const { return p_; }
    std::string name() const { return "F_" + std::to_string(p_); }
    std::string render(const Fp& a) const { return std::to_string(a.value()); }

    friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

private:
    std::uint64_t p_;
};

/// num(a) * den(a)^{-1} in F_p; IntegralityViolation when p | den(a).
Fp reduce_mod_p(const Rat& a, const PrimeField& field);

template <class K>
concept ScalarField = std::copy_constructible<K> && requires(const K& k, const typename K::value_type& a,
                                                             long long n, const Rat& r) {
    { k.zero() } -> std::same_as<typename K::value_type>;
    { k.one() } -> std::same_as<typename K::value_type>;
    { k.from_int(n) } -> std::same_as<typename K::value_type>;
    { k.from_rat(r) } -> std::same_as<typename K::value_type>;
    { k.characteristic() } -> std::convertible_to<std::uint64_t>;
    { k.render(a) } -> std::convertible_to<std::string>;
    { k == k } -> std::convertible_to<bool>;
    { a + a } -> std::same_as<typename K::value_type>;
    { a - a } -> std::same_as<typename K::value_type>;
    { a * a } -> std::same_as<typename K::value_type>;
    { a / a } -> std::same_as<typename K::value_type>;
    { -a } -> std::same_as<typename K::value_type>;
    { a.is_zero() } -> std::convertible_to<bool>;
};

} // namespace hsfgl

#endif
