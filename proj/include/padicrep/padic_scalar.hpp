#pragma once

#include <ostream>
#include <string>
#include <utility>

#include "padicrep/errors.hpp"
#include "padicrep/prime.hpp"
#include "padicrep/rational.hpp"
#include "padicrep/valuation.hpp"

namespace padicrep {

// Element of Q_p union sqrt(p)*Q_p, carried exactly: value = rep * sqrt(p)^half
// with rep an exact rational and half in {0,1}. abs_precision() bounds the
// distance to the intended value when the scalar came from a truncated source
// (Teichmueller lift, log series); it is +inf for exactly known values.
//
// The (valuation, unit mod p^N, precision) presentation used for reporting and
// serialization is a computed view; on it multiplication adds valuations and
// multiplies units, and precision is the min over operands.
class PadicScalar {
public:
    PadicScalar(Prime p, Rat rep)
        : p_(p), rep_(std::move(rep)), half_(0), aprec_(Val::infinity()) {}

    PadicScalar(Prime p, Rat rep, int half, Val aprec)
        : p_(p), rep_(std::move(rep)), half_(half), aprec_(aprec) {
        if (half_ != 0 && half_ != 1) throw DomainError("PadicScalar: half parity must be 0 or 1");
    }

    static PadicScalar zero(Prime p) { return PadicScalar(p, Rat(0)); }
    static PadicScalar one(Prime p) { return PadicScalar(p, Rat(1)); }
    static PadicScalar from_int(Prime p, const Int& n) { return PadicScalar(p, Rat(n)); }

    // p^{twice/2}, exact. Odd twice lands in the sqrt(p) branch.
    static PadicScalar root_p_power(Prime p, long long twice) {
        long long q = twice >= 0 ? twice / 2 : -((-twice + 1) / 2);
        int rem = static_cast<int>(twice - 2 * q);
        return PadicScalar(p, rat_ppow(p.big(), q), rem, Val::infinity());
    }

    Prime prime() const { return p_; }
    const Rat& representative() const { return rep_; }
    int half_parity() const { return half_; }
    Val abs_precision() const { return aprec_; }

    bool is_exact() const { return aprec_.is_infinite(); }
    bool is_exact_zero() const { return rep_ == 0 && is_exact(); }
    bool is_zero_to_precision() const { return rep_ == 0; }

    // Valuation of the stored representative (+inf when it is 0).
    Val rep_valuation() const {
        if (rep_ == 0) return Val::infinity();
        return Val::half_units(2 * vp_rat(rep_, p_.big()) + half_);
    }

    // Lower bound for the valuation of the intended value. Exact except when
    // the representative vanishes or its valuation reaches the precision bound.
    Val valuation_lower_bound() const { return Val::min(rep_valuation(), aprec_); }

    bool is_valuation_exact() const { return rep_ != 0 && rep_valuation() < aprec_; }

    Val valuation() const {
        if (is_exact_zero()) return Val::infinity();
        return valuation_lower_bound();
    }

    // Congruent to zero modulo the maximal ideal (valuation > 0, sqrt(p) included).
    bool is_zero_mod_pi() const {
        if (aprec_ <= Val::of(0))
            throw DomainError("PadicScalar: insufficient precision for mod-pi test");
        return valuation_lower_bound() > Val::of(0);
    }

    PadicScalar operator-() const { return PadicScalar(p_, -rep_, half_, aprec_); }

    PadicScalar operator+(const PadicScalar& o) const {
        check_same_prime(o);
        Val ap = Val::min(aprec_, o.aprec_);
        if (rep_ == 0) return PadicScalar(p_, o.rep_, o.half_, ap);
        if (o.rep_ == 0) return PadicScalar(p_, rep_, half_, ap);
        if (half_ != o.half_)
            throw DomainError("PadicScalar: sum leaves Q_p union sqrt(p)Q_p (mixed parity)");
        return PadicScalar(p_, rep_ + o.rep_, half_, ap);
    }

    PadicScalar operator-(const PadicScalar& o) const { return *this + (-o); }

    PadicScalar operator*(const PadicScalar& o) const {
        check_same_prime(o);
        Rat r = rep_ * o.rep_;
        int h = half_ + o.half_;
        if (h == 2) {
            r *= p_.big();
            h = 0;
        }
        Val ap = Val::infinity();
        if (!o.aprec_.is_infinite()) ap = Val::min(ap, rep_valuation() + o.aprec_);
        if (!aprec_.is_infinite()) ap = Val::min(ap, o.valuation_lower_bound() + aprec_);
        return PadicScalar(p_, r, h, ap);
    }

    PadicScalar scaled(const Rat& c) const {
        Val ap = aprec_;
        if (!ap.is_infinite()) {
            if (c == 0) return zero(p_);
            ap = ap + Val::of(vp_rat(c, p_.big()));
        }
        return PadicScalar(p_, rep_ * c, half_, ap);
    }

    PadicScalar with_precision_capped(Val ap) const {
        return PadicScalar(p_, rep_, half_, Val::min(aprec_, ap));
    }

    // Value mod p as an integer in [0, p). Requires nonnegative valuation.
    Int residue_mod_p() const {
        Val lb = valuation_lower_bound();
        if (lb < Val::of(0)) throw DomainError("residue_mod_p: negative valuation");
        if (lb > Val::of(0)) return Int(0);
        if (!is_valuation_exact() || half_ != 0)
            throw InternalError("residue_mod_p: unreachable valuation state");
        return rat_mod(rep_, p_.big());
    }

    // Unit part of the representative mod p^digits.
    Int unit_mod(long long digits) const {
        if (rep_ == 0) throw DomainError("unit_mod: zero has no unit part");
        if (digits < 1) throw DomainError("unit_mod: need at least one digit");
        long long v = vp_rat(rep_, p_.big());
        Rat u = rep_ * rat_ppow(p_.big(), -v);
        return rat_mod(u, p_.pow(digits));
    }

    // Number of unit digits supportable by the precision bound, at most cap.
    long long unit_digits(long long cap) const {
        if (aprec_.is_infinite()) return cap;
        if (rep_ == 0) return 0;
        Val room = aprec_ - rep_valuation();
        long long d = room.twice() / 2;
        if (d < 0) d = 0;
        return d < cap ? d : cap;
    }

    std::string str(long long digit_cap = 8) const {
        if (rep_ == 0) {
            if (is_exact()) return "0";
            return "O(p^" + aprec_.str() + ")";
        }
        std::string s = "p^" + rep_valuation().str() + " * ";
        long long d = unit_digits(digit_cap);
        if (d > 0) {
            s += unit_mod(d).str() + " (mod p^" + std::to_string(d) + ")";
        } else {
            s += "<unit below precision>";
        }
        return s;
    }

    friend std::ostream& operator<<(std::ostream& os, const PadicScalar& x) {
        return os << x.str();
    }

    // Exact representative equality; precision bounds are not compared.
    bool same_representative(const PadicScalar& o) const {
        return p_ == o.p_ && half_ == o.half_ && rep_ == o.rep_;
    }

    // Difference lies above the shared precision floor.
    bool congruent_at_shared_precision(const PadicScalar& o) const {
        PadicScalar d = *this - o;
        Val floor = Val::min(aprec_, o.aprec_);
        if (floor.is_infinite()) return d.rep_ == 0;
        return d.rep_ == 0 || d.rep_valuation() >= floor;
    }

private:
    void check_same_prime(const PadicScalar& o) const {
        if (p_ != o.p_) throw DomainError("PadicScalar: mixed primes");
    }

    Prime p_;
    Rat rep_;
    int half_;
    Val aprec_;
};

} // namespace padicrep
