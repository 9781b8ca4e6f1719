#pragma once

// Coefficient rings for the chain-complex engine: Z, Q, and Z/p.
// All arithmetic is overflow-checked; a computation that would leave the
// representable range throws instead of silently wrapping.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace khs {

struct overflow_error : std::runtime_error {
    overflow_error() : std::runtime_error("coefficient overflow (result exceeds 64-bit range)") {}
};

namespace detail {

inline long long checked_add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r)) throw overflow_error();
    return r;
}

inline long long checked_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r)) throw overflow_error();
    return r;
}

} // namespace detail

// --------------------------------------------------------------------------
// Integers

struct IntRing {
    using Elem = long long;

    static constexpr const char* name() { return "Z"; }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem from_int(long long n) const { return n; }

    Elem add(Elem a, Elem b) const { return detail::checked_add(a, b); }
    Elem sub(Elem a, Elem b) const { return detail::checked_add(a, -b); }
    Elem neg(Elem a) const { return -a; }
    Elem mul(Elem a, Elem b) const { return detail::checked_mul(a, b); }

    bool is_zero(Elem a) const { return a == 0; }
    bool is_unit(Elem a) const { return a == 1 || a == -1; }
    Elem inv(Elem a) const {
        if (!is_unit(a)) throw std::domain_error("not a unit in Z");
        return a;
    }

    bool eq(Elem a, Elem b) const { return a == b; }
    std::string str(Elem a) const { return std::to_string(a); }
};

// --------------------------------------------------------------------------
// Rationals (int64 numerator/denominator, always normalized, den > 0)

struct Rational {
    long long num = 0;
    long long den = 1;

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
};

struct RationalRing {
    using Elem = Rational;

    static constexpr const char* name() { return "Q"; }

    static Elem make(long long n, long long d) {
        if (d == 0) throw std::domain_error("zero denominator");
        if (d < 0) { n = -n; d = -d; }
        long long g = std::gcd(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        return Rational{n, d};
    }

    Elem zero() const { return Rational{0, 1}; }
    Elem one() const { return Rational{1, 1}; }
    Elem from_int(long long n) const { return Rational{n, 1}; }

    Elem add(Elem a, Elem b) const {
        long long g = std::gcd(a.den, b.den);
        long long bd = b.den / g;
        long long n = detail::checked_add(detail::checked_mul(a.num, bd),
                                          detail::checked_mul(b.num, a.den / g));
        long long d = detail::checked_mul(a.den, bd);
        return make(n, d);
    }
    Elem neg(Elem a) const { return Rational{-a.num, a.den}; }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem mul(Elem a, Elem b) const {
        long long g1 = std::gcd(a.num < 0 ? -a.num : a.num, b.den);
        long long g2 = std::gcd(b.num < 0 ? -b.num : b.num, a.den);
        long long n = detail::checked_mul(a.num / g1, b.num / g2);
        long long d = detail::checked_mul(a.den / g2, b.den / g1);
        return Rational{n, d};
    }

    bool is_zero(Elem a) const { return a.num == 0; }
    bool is_unit(Elem a) const { return a.num != 0; }
    Elem inv(Elem a) const {
        if (a.num == 0) throw std::domain_error("division by zero in Q");
        return make(a.den, a.num);
    }

    bool eq(Elem a, Elem b) const { return a == b; }
    std::string str(Elem a) const {
        if (a.den == 1) return std::to_string(a.num);
        return std::to_string(a.num) + "/" + std::to_string(a.den);
    }
};

// --------------------------------------------------------------------------
// Integers mod p (p an odd prime or 2; p fits in 31 bits)

struct ModRing {
    using Elem = std::uint32_t;

    std::uint32_t p = 2;

    explicit ModRing(std::uint32_t prime = 2) : p(prime) {
        if (!is_prime(prime)) throw std::domain_error("modulus must be prime");
    }

    static bool is_prime(std::uint32_t n) {
        if (n < 2) return false;
        for (std::uint32_t d = 2; (std::uint64_t)d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

    std::string name_str() const { return "Z/" + std::to_string(p); }

    Elem zero() const { return 0; }
    Elem one() const { return 1 % p; }
    Elem from_int(long long n) const {
        long long r = n % (long long)p;
        if (r < 0) r += p;
        return (Elem)r;
    }

    Elem add(Elem a, Elem b) const { return (Elem)(((std::uint64_t)a + b) % p); }
    Elem neg(Elem a) const { return a == 0 ? 0 : p - a; }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem mul(Elem a, Elem b) const { return (Elem)((std::uint64_t)a * b % p); }

    bool is_zero(Elem a) const { return a == 0; }
    bool is_unit(Elem a) const { return a != 0; }
    Elem inv(Elem a) const {
        if (a == 0) throw std::domain_error("division by zero mod p");
        // extended Euclid
        long long t = 0, newt = 1, r = p, newr = a;
        while (newr != 0) {
            long long q = r / newr;
            long long tmp = t - q * newt; t = newt; newt = tmp;
            tmp = r - q * newr; r = newr; newr = tmp;
        }
        if (t < 0) t += p;
        return (Elem)t;
    }

    bool eq(Elem a, Elem b) const { return a == b; }
    std::string str(Elem a) const { return std::to_string(a); }
};

} // namespace khs
