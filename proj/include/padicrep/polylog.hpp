#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "padicrep/errors.hpp"
#include "padicrep/evalue.hpp"
#include "padicrep/mahler.hpp"
#include "padicrep/padic_core.hpp"
#include "padicrep/padic_scalar.hpp"

namespace padicrep {

// Branch logarithm at a nonzero rational: split z = p^v * zeta * u with zeta
// the Teichmueller part and u = 1 mod p, then return v * ell + log(u). The
// result is multiplicative and its constant part has valuation >= 1.
inline EValue log_branch(const Rat& z, Prime p, long long N) {
    if (z == 0) throw DomainError("log_branch: zero argument");
    if (N < 1) throw DomainError("log_branch: need at least one digit");
    long long v = vp_rat(z, p.big());
    Rat z0 = z * rat_ppow(p.big(), -v);
    Int a = rat_mod(z0, p.big());
    // +-1 are exact Teichmueller representatives; other classes only have
    // truncated lifts, which caps the result precision at N either way.
    bool zeta_exact = (a == 1 || a == p.big() - 1);
    Rat zeta = zeta_exact ? Rat(a == 1 ? 1 : -1) : Rat(teichmuller(a, p, N));
    Rat u = z0 / zeta;
    Rat t = u - 1;
    Rat acc = 0;
    if (t != 0) {
        if (vp_rat(t, p.big()) < 1) throw InternalError("log_branch: unit part not principal");
        Rat tp = 1;
        int sign = 1;
        for (long long k = 1;; ++k) {
            tp *= t;
            acc += Rat(sign) * tp / Rat(Int(k));
            sign = -sign;
            // Remaining terms have valuation >= (k+1) - log_p(k+1) >= N.
            long long lg = 0;
            for (Int q = p.big(); q <= k + 1; q *= p.big()) ++lg;
            if (k + 1 - lg >= N) break;
        }
    }
    Val prec = (zeta_exact && t == 0) ? Val::infinity() : Val::of(N);
    PadicScalar cpart(p, acc, 0, prec);
    PadicScalar epart = PadicScalar::from_int(p, Int(v));
    return EValue(cpart, epart);
}

// One summand coeff * (z - center)^n * log(z - center).
struct PolyLogTerm {
    EValue coeff;
    Rat center;
    long long n = 0;
};

struct PolyLogFunction {
    Prime p;
    long long r = 0;
    std::vector<PolyLogTerm> terms;
};

// Exponent window the ambient function space allows for log-carrying terms.
inline void check_term_exponent(long long n, long long r) {
    if (n < r / 2 + 1 || n > r)
        throw DomainError("PolyLogTerm: exponent outside (r/2, r]");
}

inline PolyLogFunction make_polylog(Prime p, long long r, std::vector<PolyLogTerm> terms) {
    for (const auto& t : terms) check_term_exponent(t.n, r);
    return PolyLogFunction{p, r, std::move(terms)};
}

// Pointwise value; a summand whose center is hit contributes 0, matching the
// continuous extension of x^n log x by 0 at the origin (n >= 1).
inline EValue polylog_eval(const PolyLogFunction& f, const Rat& z, long long N) {
    EValue acc = EValue::zero(f.p);
    for (const auto& t : f.terms) {
        Rat d = z - t.center;
        if (d == 0) continue;
        Rat pw = 1;
        for (long long i = 0; i < t.n; ++i) pw *= d;
        acc = acc + t.coeff.scaled(pw) * log_branch(d, f.p, N);
    }
    return acc;
}

// j-th derivative of (z - z0)^n log(z - z0) at z.
//   j <= n: n!/(n-j)! [ d^{n-j} log d + (H_n - H_{n-j}) d^{n-j} ],  d = z - z0
//   j >  n: n! (-1)^{j-n-1} (j-n-1)! d^{n-j}
// At the center the value is 0 when n - j >= 1 and singular otherwise.
inline EValue polylog_derivative(Prime p, long long n, long long j, const Rat& z,
                                 const Rat& z0, long long N) {
    if (n < 0 || j < 0) throw DomainError("polylog_derivative: negative index");
    Rat d = z - z0;
    if (d == 0) {
        if (j <= n && n - j >= 1) return EValue::zero(p);
        throw DomainError("polylog_derivative: singular at the center");
    }
    if (j > n) {
        Rat c = Rat(factorial(n)) * Rat(factorial(j - n - 1));
        if ((j - n - 1) % 2 == 1) c = -c;
        Rat pw = 1;
        for (long long i = 0; i < j - n; ++i) pw *= d;
        return EValue::from_rational(p, c / pw);
    }
    Rat pw = 1;
    for (long long i = 0; i < n - j; ++i) pw *= d;
    Rat fall = Rat(factorial(n)) / Rat(factorial(n - j));
    EValue logd = log_branch(d, p, N);
    EValue main = logd.scaled(pw * fall);
    Rat hterm = fall * (harmonic_sum(n) - harmonic_sum(n - j)) * pw;
    return main + EValue::from_rational(p, hterm);
}

// Taylor jet g^{(j)}(z)/j! of a single polylog summand.
inline EValue polylog_jet(Prime p, long long n, long long j, const Rat& z, const Rat& z0,
                          long long N) {
    return polylog_derivative(p, n, j, z, z0, N).scaled(Rat(Int(1), factorial(j)));
}

struct DegreeConditionReport {
    bool ok = false;
    // Largest exponent with a nonvanishing coefficient in sum coeff_i (z-c_i)^{n_i};
    // -1 for the zero polynomial.
    long long degree = -1;
};

// The polynomial shadow of f (log factors stripped) must have degree < r/2.
inline DegreeConditionReport degree_condition_check(const PolyLogFunction& f) {
    long long top = 0;
    for (const auto& t : f.terms) top = std::max(top, t.n);
    std::vector<EValue> coef(top + 1, EValue::zero(f.p));
    for (const auto& t : f.terms) {
        // (z - c)^n expanded about 0.
        for (long long k = 0; k <= t.n; ++k) {
            Rat c = binom(Int(t.n), t.n - k);
            Rat pw = 1;
            for (long long i = 0; i < t.n - k; ++i) pw *= -t.center;
            coef[k] = coef[k] + t.coeff.scaled(c * pw);
        }
    }
    DegreeConditionReport rep;
    for (long long k = 0; k <= top; ++k)
        if (!coef[k].is_zero_to_precision()) rep.degree = k;
    rep.ok = 2 * rep.degree < f.r;
    return rep;
}

struct SmoothnessDiagnostic {
    // vp(a_n) - s * branch_length(n) with the branch parameter specialized;
    // empty entries mark vanished coefficients.
    std::vector<std::optional<Rat>> profile;
    std::optional<Rat> overall_min;
};

// Finite-window decay profile of the Mahler coefficients of f restricted to
// Z_p, measured against exponent s. A diagnostic, never a hard verdict.
inline SmoothnessDiagnostic csmooth_diagnostic(const PolyLogFunction& f, const Rat& ell_value,
                                               const Rat& s, long long window, long long N) {
    FunctionOracle g = [&](const Int& m) {
        return polylog_eval(f, Rat(m), N).specialize(ell_value);
    };
    MahlerSeries ms = mahler_coeffs(f.p, g, window);
    SmoothnessDiagnostic d;
    CrValuationReport cr = cr_valuation(ms, s);
    d.profile = std::move(cr.profile);
    d.overall_min = cr.overall_min;
    return d;
}

} // namespace padicrep
