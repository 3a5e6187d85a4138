#pragma once

#include <utility>

#include "padicrep/errors.hpp"
#include "padicrep/prime.hpp"
#include "padicrep/rational.hpp"
#include "padicrep/valuation.hpp"

namespace padicrep {

// H_n = 1 + 1/2 + ... + 1/n, H_0 = 0.
inline Rat harmonic_sum(long long n) {
    if (n < 0) throw DomainError("harmonic_sum: negative index");
    Rat h = 0;
    for (long long i = 1; i <= n; ++i) h += Rat(Int(1), Int(i));
    return h;
}

// Largest integer below r/2 and smallest integer above r/2.
inline std::pair<long long, long long> v_plus_minus(long long r) {
    if (r < 1) throw DomainError("v_plus_minus: weight parameter must be positive");
    long long lo, hi;
    if (r % 2 == 0) {
        lo = r / 2 - 1;
        hi = r / 2 + 1;
    } else {
        lo = (r - 1) / 2;
        hi = (r + 1) / 2;
    }
    return {lo, hi};
}

// Teichmueller representative of a mod p^N: the fixed point of x -> x^p
// congruent to a mod p. Returns 0 for a divisible by p.
inline Int teichmuller(const Int& a, Prime p, long long N) {
    if (N < 1) throw DomainError("teichmuller: need at least one digit");
    Int M = p.pow(N);
    Int x = mod_reduce(a, M);
    if (x % p.big() == 0) return Int(0);
    for (long long i = 0; i < 2 * N + 2; ++i) {
        Int y = mod_pow(x, p.big(), M);
        if (y == x) return x;
        x = y;
    }
    throw InternalError("teichmuller: iteration did not stabilize");
}

// v_p(j!) by the digit-sum formula (j - s_p(j)) / (p - 1).
inline long long vp_factorial(long long j, Prime p) {
    if (j < 0) throw DomainError("vp_factorial: negative argument");
    long long s = 0, t = j;
    while (t > 0) {
        s += t % p.value();
        t /= p.value();
    }
    return (j - s) / (p.value() - 1);
}

// Binomial coefficient with arbitrary integer upper argument, as the value of
// the degree-k polynomial x(x-1)...(x-k+1)/k!.
inline Rat binom(const Int& n, long long k) {
    if (k < 0) return Rat(0);
    Rat r = 1;
    for (long long i = 0; i < k; ++i) {
        r *= Rat(n - i);
        r /= Rat(Int(i + 1));
    }
    return r;
}

inline Int factorial(long long n) {
    if (n < 0) throw DomainError("factorial: negative argument");
    Int r = 1;
    for (long long i = 2; i <= n; ++i) r *= i;
    return r;
}

} // namespace padicrep
