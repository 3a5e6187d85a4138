#pragma once

#include <optional>
#include <vector>

#include "padicrep/errors.hpp"
#include "padicrep/fp.hpp"
#include "padicrep/padic_core.hpp"
#include "padicrep/prime.hpp"
#include "padicrep/rational.hpp"
#include "padicrep/valuation.hpp"

namespace padicrep {

inline void validate_weight(Prime p, long long k) {
    if (k < 3 || k > p.value() + 1)
        throw UsageError("weight must lie in [3, p+1]");
}

// H_{v-} + H_{v+} for r = k-2, the center of the branch parameter.
inline Rat harmonic_offset(long long r) {
    auto [vm, vp2] = v_plus_minus(r);
    return harmonic_sum(vm) + harmonic_sum(vp2);
}

// Branch parameter: valuation of L - H_{v-} - H_{v+}; absent L or an exact
// hit of the center give +infinity.
inline Val nu(Prime p, long long k, const std::optional<Rat>& L) {
    validate_weight(p, k);
    if (!L) return Val::infinity();
    Rat d = *L - harmonic_offset(k - 2);
    if (d == 0) return Val::infinity();
    return Val::of(vp_rat(d, p.big()));
}

// One unramified-times-cyclotomic summand of a split (semisimplified)
// residual representation: mu_{lambda} * omega^{omega_exp}.
struct GaloisSummand {
    long long omega_exp;  // in [0, p-2]
    Fp2 mu;               // nonzero unramified parameter

    bool operator==(const GaloisSummand& o) const {
        return omega_exp == o.omega_exp && mu == o.mu;
    }
};

struct GaloisDescriptor {
    bool irreducible = false;
    long long omega2_exp = 0;             // exponent of the level-two fundamental
                                          // character, in [0, p^2-2]
    std::vector<GaloisSummand> summands;  // two entries in the split case
    long long branch_index = 0;           // ladder position i
    bool point_case = false;
    Val nu_value = Val::infinity();
};

namespace detail {

inline long long floor_half(long long twice) {
    // floor of twice/2 toward minus infinity
    return (twice >= 0) ? twice / 2 : -((-twice + 1) / 2);
}

}  // namespace detail

// Core branch of the reduction: decides the ladder position from the branch
// parameter alone. `unit` must be the mod-p reduction of
// (L - H_- - H_+) p^{-nu} whenever nu is finite and sits exactly on a ladder
// point; it is ignored everywhere else.
inline GaloisDescriptor reduce_at_nu(Prime p, long long k, const Val& nu_v,
                                     const Fp& unit) {
    validate_weight(p, k);
    long long r = k - 2;
    long long q = p.value() - 1;
    auto norm = [&](long long x) { return ((x % q) + q) % q; };

    GaloisDescriptor out;
    out.nu_value = nu_v;

    auto point_scalar = [&](long long i) -> Fp {
        if (unit.is_zero())
            throw DomainError("reduce_at_nu: ladder point needs a unit reduction");
        Rat coef = binom(Int(r + 1 - i), i) * i;
        if (i % 2 == 1) coef = -coef;
        return Fp::from_rat(p, coef) * unit;
    };

    auto make_point = [&](long long i, const Fp2& l1, const Fp2& l2) {
        out.point_case = true;
        out.branch_index = i;
        out.summands = {{norm(r + 1 - i), l1}, {norm(i), l2}};
    };

    auto make_interval = [&](long long i) {
        out.point_case = false;
        out.branch_index = i;
        out.irreducible = true;
        long long q2 = p.value() * p.value() - 1;
        long long c = (r + 1 + (i - 1) * (p.value() - 1)) % q2;
        if (c % (p.value() + 1) == 0)
            throw InternalError("induced exponent divisible by p+1");
        out.omega2_exp = c;
    };

    // finite ladder point i solves nu = i - r/2
    auto ladder_index = [&]() -> std::optional<long long> {
        if (nu_v == Val::infinity()) return std::nullopt;
        long long t = nu_v.twice() + r;
        if (t % 2 != 0) return std::nullopt;
        return t / 2;
    };

    if (r % 2 == 1) {
        long long imax = (r + 1) / 2;
        Val half = Val::half_units(1);
        if (nu_v == Val::infinity() || nu_v > half) {
            // boundary point with vanishing trace
            auto [l1, l2] = roots_of_unit_quadratic(Fp(p, Int(0)));
            make_point(imax, l1, l2);
        } else if (nu_v == half) {
            auto [l1, l2] = roots_of_unit_quadratic(point_scalar(imax));
            make_point(imax, l1, l2);
        } else {
            auto idx = ladder_index();
            if (idx && *idx >= 1 && *idx <= imax - 1) {
                Fp lam = point_scalar(*idx);
                make_point(*idx, Fp2::from_base(lam), Fp2::from_base(lam.inv()));
            } else {
                long long i = detail::floor_half(nu_v.twice() + r) + 1;
                if (i < 1) i = 1;
                if (i > imax) i = imax;
                make_interval(i);
            }
        }
    } else {
        long long imax = (r + 2) / 2;
        if (nu_v == Val::infinity() || nu_v > Val::of(0)) {
            make_interval(imax);
        } else {
            auto idx = ladder_index();
            if (idx && *idx >= 1 && *idx <= r / 2) {
                Fp lam = point_scalar(*idx);
                make_point(*idx, Fp2::from_base(lam), Fp2::from_base(lam.inv()));
            } else {
                long long i = detail::floor_half(nu_v.twice() + r) + 1;
                if (i < 1) i = 1;
                make_interval(i);
            }
        }
    }
    return out;
}

struct ReductionInput {
    Prime p;
    long long k;
    std::optional<Rat> L;  // absent means the boundary value at infinity
};

inline GaloisDescriptor reduce(const ReductionInput& in) {
    validate_weight(in.p, in.k);
    Val nv = nu(in.p, in.k, in.L);
    Fp unit(in.p, Int(0));
    if (in.L && nv != Val::infinity()) {
        Rat d = *in.L - harmonic_offset(in.k - 2);
        if (!nv.is_integer())
            throw InternalError("rational parameter with fractional valuation");
        unit = Fp::from_rat(in.p, d * rat_ppow(in.p.big(), -nv.whole()));
    }
    return reduce_at_nu(in.p, in.k, nv, unit);
}

// Presentation of an irreducible induced descriptor as a twist: exponent c
// equals (r+1) + s(p+1) after an optional Frobenius conjugation, with
// r in [0, p-2].
struct IrreducibleNormalForm {
    long long r;
    long long s;
};

inline IrreducibleNormalForm normalize_irreducible(Prime p, long long c) {
    long long pv = p.value();
    long long q2 = pv * pv - 1;
    long long cc = ((c % q2) + q2) % q2;
    if (cc % (pv + 1) == 0)
        throw DomainError("normalize_irreducible: exponent factors through the norm");
    long long rem = cc % (pv + 1);
    if (rem == pv) {
        cc = (cc * pv) % q2;
        rem = cc % (pv + 1);
    }
    long long r = rem - 1;
    long long s = ((cc - rem) / (pv + 1)) % (pv - 1);
    return {r, s};
}

// Descriptor of a mod-p principal-series-type object on the automorphic
// side: parameter triple (r, lambda, eta = omega^eta_exp), semisimplified.
struct PiDescriptor {
    long long r;        // in [0, p-2]
    Fp2 lambda;         // zero in the supersingular case
    long long eta_exp;  // in [0, p-2]

    bool operator==(const PiDescriptor& o) const {
        return r == o.r && lambda == o.lambda && eta_exp == o.eta_exp;
    }
    bool operator<(const PiDescriptor& o) const {
        if (r != o.r) return r < o.r;
        if (eta_exp != o.eta_exp) return eta_exp < o.eta_exp;
        if (lambda.re() != o.lambda.re()) return lambda.re() < o.lambda.re();
        return lambda.im() < o.lambda.im();
    }
};

// Mod-p correspondence on descriptors. An irreducible input gives a single
// supersingular parameter; a split input {mu_a omega^a, mu_b omega^b} gives
// the symmetric pair with shifted weights and swapped twists.
inline std::vector<PiDescriptor> iwahori_llc(Prime p, const GaloisDescriptor& g) {
    long long q = p.value() - 1;
    auto norm = [&](long long x) { return ((x % q) + q) % q; };
    if (g.irreducible) {
        IrreducibleNormalForm nf = normalize_irreducible(p, g.omega2_exp);
        return {{nf.r, Fp2(p, Int(0), Int(0)), norm(nf.s)}};
    }
    if (g.summands.size() != 2)
        throw DomainError("iwahori_llc: split descriptor needs two summands");
    long long a = g.summands[0].omega_exp, b = g.summands[1].omega_exp;
    PiDescriptor first{norm(a - b - 1), g.summands[0].mu, norm(b)};
    PiDescriptor second{norm(b - a - 1), g.summands[1].mu, norm(a)};
    return {first, second};
}

// Determinant compatibility: the product of the split characters, or the
// restriction of the induced character, must be omega^{r+1} times an
// unramified character with trivial parameter product.
inline bool det_check(Prime p, long long k, const GaloisDescriptor& g) {
    long long q = p.value() - 1;
    long long r = k - 2;
    auto zero_mod = [&](long long x) { return ((x % q) + q) % q == 0; };
    if (g.irreducible) return zero_mod(g.omega2_exp - (r + 1));
    if (g.summands.size() != 2) return false;
    if (!zero_mod(g.summands[0].omega_exp + g.summands[1].omega_exp - (r + 1)))
        return false;
    Fp2 prod = g.summands[0].mu * g.summands[1].mu;
    return prod == Fp2(p, Int(1), Int(0));
}

}  // namespace padicrep
