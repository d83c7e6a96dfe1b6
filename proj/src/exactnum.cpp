#include "hsfgl/exactnum.hpp"

#include <limits>

namespace hsfgl {

Rat::Rat(long long n) {
    static_assert(sizeof(long) == sizeof(long long), "LP64 assumed");
    value_ = mpq_class(static_cast<long>(n));
}

Rat::Rat(const BigInt& num, const BigInt& den) {
    if (den == 0) {
        throw DivisionByZero("rational with zero denominator");
    }
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

Rat::Rat(const mpq_class& q) : value_(q) { value_.canonicalize(); }

Rat Rat::parse(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            return Rat(BigInt(text), BigInt(1));
        }
        return Rat(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
        throw ParseError("not a rational number: '" + text + "'");
    }
}

Rat& Rat::operator+=(const Rat& o) {
    value_ += o.value_;
    return *this;
}

Rat& Rat::operator-=(const Rat& o) {
    value_ -= o.value_;
    return *this;
}

Rat& Rat::operator*=(const Rat& o) {
    value_ *= o.value_;
    return *this;
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero()) {
        throw DivisionByZero("rational division by zero");
    }
    value_ /= o.value_;
    return *this;
}

std::string Rat::to_string() const { return value_.get_str(10); }

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.to_string(); }

bool is_prime(std::uint64_t n) {
    if (n < 2) {
        return false;
    }
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

Fp::Fp(std::uint64_t p, long long value) : Fp(PrimeField(p).from_int(value)) {}

Fp Fp::reduced(std::uint64_t p, long long value) {
    long long r = value % static_cast<long long>(p);
    if (r < 0) {
        r += static_cast<long long>(p);
    }
    return Fp(p, static_cast<std::uint64_t>(r), raw_tag{});
}

void Fp::require_same_field(const Fp& o) const {
    if (p_ != o.p_) {
        throw FieldMismatch("F_" + std::to_string(p_) + " vs F_" + std::to_string(o.p_));
    }
}

Fp& Fp::operator+=(const Fp& o) {
    require_same_field(o);
    v_ += o.v_;
    if (v_ >= p_) {
        v_ -= p_;
    }
    return *this;
}

Fp& Fp::operator-=(const Fp& o) {
    require_same_field(o);
    v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_;
    return *this;
}

Fp& Fp::operator*=(const Fp& o) {
    require_same_field(o);
    v_ = (v_ * o.v_) % p_;
    return *this;
}

Fp& Fp::operator/=(const Fp& o) {
    require_same_field(o);
    return *this *= o.inverse();
}

Fp Fp::inverse() const {
    if (v_ == 0) {
        throw DivisionByZero("inverse of 0 in F_" + std::to_string(p_));
    }
    // Extended Euclid on (v, p); the invariant is old_s * v == old_r (mod p).
    long long old_r = static_cast<long long>(v_), r = static_cast<long long>(p_);
    long long old_s = 1, s = 0;
    while (r != 0) {
        long long q = old_r / r;
        long long tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    return reduced(p_, old_s);
}

std::string Fp::to_string() const { return std::to_string(v_) + " mod " + std::to_string(p_); }

std::ostream& operator<<(std::ostream& os, const Fp& a) { return os << a.to_string(); }

bool is_p_integral(const Rat& a, std::uint64_t p) {
    return mpz_divisible_ui_p(a.den().get_mpz_t(), p) == 0;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
    if (p > std::numeric_limits<std::uint32_t>::max() || !is_prime(p)) {
        throw NotPrime(std::to_string(p) + " is not a supported prime modulus");
    }
}

Fp PrimeField::from_rat(const Rat& r) const { return reduce_mod_p(r, *this); }

Fp reduce_mod_p(const Rat& a, const PrimeField& field) {
    const auto p = field.p();
    if (!is_p_integral(a, p)) {
        throw IntegralityViolation(a.to_string() + " has " + std::to_string(p) + " in its denominator");
    }
    auto residue = [p](const BigInt& z) {
        return static_cast<long long>(mpz_fdiv_ui(z.get_mpz_t(), p));
    };
    return field.from_int(residue(a.num())) / field.from_int(residue(a.den()));
}

} // namespace hsfgl
