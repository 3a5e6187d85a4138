#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "padicrep/errors.hpp"
#include "padicrep/prime.hpp"
#include "padicrep/rational.hpp"

namespace padicrep {

// Residue field element, value in [0, p).
class Fp {
public:
    Fp(Prime p, const Int& v) : p_(p), v_(mod_reduce(v, p.big())) {}
    static Fp from_rat(Prime p, const Rat& x) { return Fp(p, rat_mod(x, p.big())); }

    Prime prime() const { return p_; }
    const Int& value() const { return v_; }
    bool is_zero() const { return v_ == 0; }

    Fp operator+(const Fp& o) const { check(o); return Fp(p_, v_ + o.v_); }
    Fp operator-(const Fp& o) const { check(o); return Fp(p_, v_ - o.v_); }
    Fp operator*(const Fp& o) const { check(o); return Fp(p_, v_ * o.v_); }
    Fp operator-() const { return Fp(p_, -v_); }

    Fp inv() const {
        if (v_ == 0) throw DomainError("Fp: inverse of zero");
        return Fp(p_, mod_inv(v_, p_.big()));
    }

    Fp pow(long long e) const {
        if (e < 0) return inv().pow(-e);
        return Fp(p_, mod_pow(v_, Int(e), p_.big()));
    }

    friend bool operator==(const Fp& a, const Fp& b) {
        return a.p_ == b.p_ && a.v_ == b.v_;
    }
    friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

    friend std::ostream& operator<<(std::ostream& os, const Fp& a) {
        return os << a.v_;
    }

private:
    void check(const Fp& o) const {
        if (p_ != o.p_) throw DomainError("Fp: mixed primes");
    }

    Prime p_;
    Int v_;
};

inline bool is_quadratic_residue(const Int& a, Prime p) {
    Int r = mod_reduce(a, p.big());
    if (r == 0) return true;
    return mod_pow(r, (p.big() - 1) / 2, p.big()) == 1;
}

inline std::optional<Int> sqrt_mod_p(const Int& a, Prime p) {
    Int r = mod_reduce(a, p.big());
    if (r == 0) return Int(0);
    if (!is_quadratic_residue(r, p)) return std::nullopt;
    for (Int x = 1; x < p.big(); ++x)
        if (x * x % p.big() == r) return x;
    throw InternalError("sqrt_mod_p: residue without root");
}

inline Int smallest_nonresidue(Prime p) {
    for (Int c = 2; c < p.big(); ++c)
        if (!is_quadratic_residue(c, p)) return c;
    throw InternalError("smallest_nonresidue: none found");
}

// Element x + y*theta of F_{p^2}, theta^2 the smallest nonresidue mod p.
class Fp2 {
public:
    Fp2(Prime p, const Int& x, const Int& y)
        : p_(p), x_(mod_reduce(x, p.big())), y_(mod_reduce(y, p.big())) {}

    static Fp2 from_base(const Fp& a) { return Fp2(a.prime(), a.value(), Int(0)); }

    Prime prime() const { return p_; }
    const Int& re() const { return x_; }
    const Int& im() const { return y_; }
    bool in_base_field() const { return y_ == 0; }
    bool is_zero() const { return x_ == 0 && y_ == 0; }

    Fp2 operator+(const Fp2& o) const { check(o); return Fp2(p_, x_ + o.x_, y_ + o.y_); }
    Fp2 operator-(const Fp2& o) const { check(o); return Fp2(p_, x_ - o.x_, y_ - o.y_); }
    Fp2 operator-() const { return Fp2(p_, -x_, -y_); }

    Fp2 operator*(const Fp2& o) const {
        check(o);
        Int t = smallest_nonresidue(p_);
        return Fp2(p_, x_ * o.x_ + t * y_ * o.y_, x_ * o.y_ + y_ * o.x_);
    }

    Fp2 inv() const {
        if (is_zero()) throw DomainError("Fp2: inverse of zero");
        Int t = smallest_nonresidue(p_);
        Int n = mod_reduce(x_ * x_ - t * y_ * y_, p_.big());
        Int ni = mod_inv(n, p_.big());
        return Fp2(p_, x_ * ni, -y_ * ni);
    }

    friend bool operator==(const Fp2& a, const Fp2& b) {
        return a.p_ == b.p_ && a.x_ == b.x_ && a.y_ == b.y_;
    }
    friend bool operator!=(const Fp2& a, const Fp2& b) { return !(a == b); }

    std::string str() const {
        if (y_ == 0) return x_.str();
        return x_.str() + "+" + y_.str() + "t";
    }

    friend std::ostream& operator<<(std::ostream& os, const Fp2& a) {
        return os << a.str();
    }

private:
    void check(const Fp2& o) const {
        if (p_ != o.p_) throw DomainError("Fp2: mixed primes");
    }

    Prime p_;
    Int x_, y_;
};

// Both roots of X^2 - c X + 1 over F_{p^2}; product is 1, sum is c.
inline std::pair<Fp2, Fp2> roots_of_unit_quadratic(const Fp& c) {
    Prime p = c.prime();
    Int disc = mod_reduce(c.value() * c.value() - 4, p.big());
    Int inv2 = mod_inv(Int(2), p.big());
    if (auto s = sqrt_mod_p(disc, p)) {
        Fp2 r1(p, (c.value() + *s) * inv2, Int(0));
        Fp2 r2(p, (c.value() - *s) * inv2, Int(0));
        return {r1, r2};
    }
    Int t = smallest_nonresidue(p);
    Int ratio = mod_reduce(disc * mod_inv(t, p.big()), p.big());
    auto s = sqrt_mod_p(ratio, p);
    if (!s) throw InternalError("roots_of_unit_quadratic: disc/theta^2 must be a residue");
    Fp2 r1(p, c.value() * inv2, *s * inv2);
    Fp2 r2(p, c.value() * inv2, -*s * inv2);
    return {r1, r2};
}

} // namespace padicrep
