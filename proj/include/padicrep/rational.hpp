#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/miller_rabin.hpp>

#include "padicrep/errors.hpp"

namespace padicrep {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat& x) { return boost::multiprecision::numerator(x); }
inline Int den(const Rat& x) { return boost::multiprecision::denominator(x); }

inline Int ipow(const Int& base, long long e) {
    if (e < 0) throw DomainError("ipow: negative exponent");
    Int r = 1, b = base;
    long long k = e;
    while (k > 0) {
        if (k & 1) r *= b;
        b *= b;
        k >>= 1;
    }
    return r;
}

// p^e as an exact rational, e may be negative.
inline Rat rat_ppow(const Int& p, long long e) {
    if (e >= 0) return Rat(ipow(p, e));
    return Rat(Int(1), ipow(p, -e));
}

inline Rat rat_pow(const Rat& base, long long e) {
    if (e < 0) throw DomainError("rat_pow: negative exponent");
    Rat r = 1, b = base;
    long long k = e;
    while (k > 0) {
        if (k & 1) r *= b;
        b *= b;
        k >>= 1;
    }
    return r;
}

inline long long vp_int(Int n, const Int& p) {
    if (n == 0) throw DomainError("vp_int: valuation of zero");
    long long v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

inline long long vp_rat(const Rat& x, const Int& p) {
    if (x == 0) throw DomainError("vp_rat: valuation of zero");
    return vp_int(num(x), p) - vp_int(den(x), p);
}

inline Int mod_reduce(Int a, const Int& m) {
    a %= m;
    if (a < 0) a += m;
    return a;
}

inline Int mod_pow(Int b, Int e, const Int& m) {
    if (e < 0) throw DomainError("mod_pow: negative exponent");
    b = mod_reduce(b, m);
    Int r = 1;
    while (e > 0) {
        if ((e & 1) != 0) r = r * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return r;
}

// Inverse of a modulo m, gcd(a, m) = 1 required.
inline Int mod_inv(const Int& a, const Int& m) {
    Int r0 = m, r1 = mod_reduce(a, m), s0 = 0, s1 = 1;
    while (r1 != 0) {
        Int q = r0 / r1;
        Int r2 = r0 - q * r1;
        Int s2 = s0 - q * s1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
    }
    if (r0 != 1) throw DomainError("mod_inv: not invertible");
    return mod_reduce(s0, m);
}

// x mod m for a rational with denominator prime to m.
inline Int rat_mod(const Rat& x, const Int& m) {
    Int d = den(x);
    if (boost::multiprecision::gcd(d, m) != 1)
        throw DomainError("rat_mod: denominator not prime to modulus");
    return mod_reduce(num(x) % m * mod_inv(d, m), m);
}

inline bool is_probable_prime(const Int& n) {
    if (n < 2) return false;
    return boost::multiprecision::miller_rabin_test(n, 32);
}

} // namespace padicrep
