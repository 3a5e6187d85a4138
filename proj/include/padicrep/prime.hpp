#pragma once

#include "padicrep/errors.hpp"
#include "padicrep/rational.hpp"

namespace padicrep {

// A validated odd prime p >= 5. Everything downstream assumes p - 1 is even
// and 2 is invertible mod any power of p.
class Prime {
public:
    explicit Prime(long long p) : p_(p) {
        if (p < 5) throw UsageError("prime must be >= 5");
        if (!is_probable_prime(Int(p))) throw UsageError("not a prime");
    }

    long long value() const { return p_; }
    Int big() const { return Int(p_); }
    Int pow(long long e) const { return ipow(Int(p_), e); }

    friend bool operator==(const Prime& a, const Prime& b) { return a.p_ == b.p_; }
    friend bool operator!=(const Prime& a, const Prime& b) { return a.p_ != b.p_; }

private:
    long long p_;
};

} // namespace padicrep
