#pragma once

#include <ostream>
#include <string>
#include <utility>

#include "padicrep/errors.hpp"
#include "padicrep/padic_scalar.hpp"

namespace padicrep {

// Value affine in the branch parameter: c0 + c1 * ell. The branch parameter
// stays symbolic; products that would create an ell^2 term are a hard error
// rather than a silent truncation.
class EValue {
public:
    EValue(PadicScalar c0, PadicScalar c1) : c0_(std::move(c0)), c1_(std::move(c1)) {
        if (c0_.prime() != c1_.prime()) throw DomainError("EValue: mixed primes");
    }

    static EValue zero(Prime p) { return EValue(PadicScalar::zero(p), PadicScalar::zero(p)); }
    static EValue from_scalar(PadicScalar c) {
        Prime p = c.prime();
        return EValue(std::move(c), PadicScalar::zero(p));
    }
    static EValue from_rational(Prime p, const Rat& x) {
        return from_scalar(PadicScalar(p, x));
    }
    static EValue ell(Prime p) { return EValue(PadicScalar::zero(p), PadicScalar::one(p)); }

    Prime prime() const { return c0_.prime(); }
    const PadicScalar& constant_part() const { return c0_; }
    const PadicScalar& ell_part() const { return c1_; }

    bool is_zero_to_precision() const {
        return c0_.is_zero_to_precision() && c1_.is_zero_to_precision();
    }

    EValue operator+(const EValue& o) const { return EValue(c0_ + o.c0_, c1_ + o.c1_); }
    EValue operator-(const EValue& o) const { return EValue(c0_ - o.c0_, c1_ - o.c1_); }
    EValue operator-() const { return EValue(-c0_, -c1_); }

    EValue operator*(const EValue& o) const {
        if (!c1_.is_exact_zero() && !o.c1_.is_exact_zero())
            throw EllOverflowError("EValue: product would have ell-degree 2");
        return EValue(c0_ * o.c0_, c0_ * o.c1_ + c1_ * o.c0_);
    }

    EValue times(const PadicScalar& k) const { return EValue(c0_ * k, c1_ * k); }
    EValue scaled(const Rat& c) const { return EValue(c0_.scaled(c), c1_.scaled(c)); }

    PadicScalar specialize(const PadicScalar& ell_value) const {
        return c0_ + c1_ * ell_value;
    }
    PadicScalar specialize(const Rat& ell_value) const {
        return specialize(PadicScalar(prime(), ell_value));
    }

    // Congruence modulo the maximal ideal holds componentwise.
    bool is_zero_mod_pi() const { return c0_.is_zero_mod_pi() && c1_.is_zero_mod_pi(); }

    Val valuation_lower_bound() const {
        return Val::min(c0_.valuation_lower_bound(), c1_.valuation_lower_bound());
    }

    std::string str() const { return c0_.str() + " + (" + c1_.str() + ")*ell"; }

    friend std::ostream& operator<<(std::ostream& os, const EValue& v) {
        return os << v.str();
    }

private:
    PadicScalar c0_, c1_;
};

} // namespace padicrep
