#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "padicrep/errors.hpp"
#include "padicrep/evalue.hpp"
#include "padicrep/padic_core.hpp"
#include "padicrep/padic_scalar.hpp"

namespace padicrep {

// Values of a continuous function on Z_p at nonnegative integer arguments.
using FunctionOracle = std::function<PadicScalar(const Int&)>;

// Taylor jet oracle: (m, j) -> g^{(j)}(m) / j!. Jets always come from
// caller-supplied closed forms, never from numerical differentiation.
using JetOracle = std::function<EValue(const Int&, long long)>;

// Smallest n >= 0 with p^n > i; the wavelet scale of index i.
inline long long branch_length(const Int& i, Prime p) {
    if (i < 0) throw DomainError("branch_length: negative index");
    long long n = 0;
    Int q = 1;
    while (q <= i) {
        q *= p.big();
        ++n;
    }
    return n;
}

struct MahlerSeries {
    Prime p;
    std::vector<PadicScalar> coeffs;
    std::optional<Rat> r_hint;
};

struct WaveletSeries {
    Prime p;
    std::vector<PadicScalar> coeffs;
};

// First N Mahler coefficients a_n = (forward difference)^n g (0).
inline MahlerSeries mahler_coeffs(Prime p, const FunctionOracle& g, long long N) {
    if (N < 1) throw DomainError("mahler_coeffs: need at least one coefficient");
    std::vector<PadicScalar> cur;
    cur.reserve(N);
    for (long long m = 0; m < N; ++m) cur.push_back(g(Int(m)));
    std::vector<PadicScalar> out;
    out.reserve(N);
    out.push_back(cur[0]);
    for (long long k = 1; k < N; ++k) {
        for (long long i = 0; i + k < N; ++i) cur[i] = cur[i + 1] - cur[i];
        out.push_back(cur[0]);
    }
    return MahlerSeries{p, std::move(out), std::nullopt};
}

// Sum of a_n * binom(x, n); exact for polynomial input of degree < length.
inline PadicScalar evaluate(const MahlerSeries& s, const Rat& x) {
    PadicScalar acc = PadicScalar::zero(s.p);
    Rat cxn = 1; // binom(x, n), updated incrementally
    for (std::size_t n = 0; n < s.coeffs.size(); ++n) {
        if (n > 0) cxn *= (x - Rat(Int(n) - 1)) / Rat(Int(n));
        acc = acc + s.coeffs[n].scaled(cxn);
    }
    return acc;
}

// Sup-norm valuation: min over n of vp(a_n).
inline Val c0_valuation(const MahlerSeries& s) {
    Val m = Val::infinity();
    for (const auto& a : s.coeffs) m = Val::min(m, a.valuation_lower_bound());
    return m;
}

struct CrValuationReport {
    // vp(a_n) - r * branch_length(n) per index; empty entry for a vanishing coefficient.
    std::vector<std::optional<Rat>> profile;
    std::optional<Rat> overall_min;
    // Minimum over the trailing half of the window; decay indicator, not a verdict.
    std::optional<Rat> trailing_min;
};

inline CrValuationReport cr_valuation(const MahlerSeries& s, const Rat& r) {
    CrValuationReport rep;
    rep.profile.reserve(s.coeffs.size());
    for (std::size_t n = 0; n < s.coeffs.size(); ++n) {
        Val v = s.coeffs[n].valuation_lower_bound();
        if (v.is_infinite()) {
            rep.profile.emplace_back(std::nullopt);
            continue;
        }
        Rat entry = v.to_rat() - r * Rat(Int(branch_length(Int(n), s.p)));
        rep.profile.emplace_back(entry);
        if (!rep.overall_min || entry < *rep.overall_min) rep.overall_min = entry;
        if (n >= s.coeffs.size() / 2 && (!rep.trailing_min || entry < *rep.trailing_min))
            rep.trailing_min = entry;
    }
    return rep;
}

// Drop the first k coefficients: the Mahler series of the k-th forward difference.
inline MahlerSeries forward_difference(const MahlerSeries& s, long long k) {
    if (k < 0) throw DomainError("forward_difference: negative order");
    if (static_cast<std::size_t>(k) >= s.coeffs.size())
        return MahlerSeries{s.p, {PadicScalar::zero(s.p)}, s.r_hint};
    std::vector<PadicScalar> c(s.coeffs.begin() + k, s.coeffs.end());
    return MahlerSeries{s.p, std::move(c), s.r_hint};
}

// Coefficients b_i of the expansion over indicator functions of the cosets
// i + p^{branch_length(i)} Z_p, solved by the triangular system
// g(i) = sum of b_j over j <= i with i = j mod p^{branch_length(j)}.
inline WaveletSeries wavelet_decompose(Prime p, const FunctionOracle& g, long long M) {
    if (M < 1) throw DomainError("wavelet_decompose: need at least one coefficient");
    std::vector<PadicScalar> b;
    b.reserve(M);
    for (long long i = 0; i < M; ++i) {
        PadicScalar acc = g(Int(i));
        for (long long j = 0; j < i; ++j) {
            Int modulus = p.pow(branch_length(Int(j), p));
            if ((Int(i) - Int(j)) % modulus == 0) acc = acc - b[j];
        }
        b.push_back(acc);
    }
    return WaveletSeries{p, std::move(b)};
}

inline PadicScalar wavelet_evaluate(const WaveletSeries& w, const Rat& x) {
    PadicScalar acc = PadicScalar::zero(w.p);
    for (std::size_t j = 0; j < w.coeffs.size(); ++j) {
        Int modulus = w.p.pow(branch_length(Int(j), w.p));
        Rat d = x - Rat(Int(j));
        bool member = d == 0 || vp_rat(d, w.p.big()) >= branch_length(Int(j), w.p);
        if (member) acc = acc + w.coeffs[j];
    }
    return acc;
}

// Level-h truncated Taylor model: on each residue class m + p^h Z_p the
// function is replaced by its degree-t jet polynomial at m.
struct LocallyPolynomialApprox {
    Prime p;
    long long h = 0;
    long long t = 0;
    // jets[m][j] = g^{(j)}(m) / j!, m in [0, p^h).
    std::vector<std::vector<EValue>> jets;
};

inline LocallyPolynomialApprox local_poly_approx(Prime p, const JetOracle& jet,
                                                 long long h, long long t) {
    if (h < 0) throw DomainError("local_poly_approx: negative level");
    if (t < 0) throw DomainError("local_poly_approx: negative degree");
    Int count = p.pow(h);
    if (count > 1000000) throw DomainError("local_poly_approx: level too large");
    LocallyPolynomialApprox a{p, h, t, {}};
    for (Int m = 0; m < count; ++m) {
        std::vector<EValue> row;
        row.reserve(t + 1);
        for (long long j = 0; j <= t; ++j) row.push_back(jet(m, j));
        a.jets.push_back(std::move(row));
    }
    return a;
}

// Evaluate the jet polynomial of the residue class of z (a p-adic integer).
inline EValue evaluate_approx(const LocallyPolynomialApprox& a, const Rat& z) {
    if (z != 0 && vp_rat(z, a.p.big()) < 0)
        throw DomainError("evaluate_approx: argument not integral");
    Int m = rat_mod(z, a.p.pow(a.h));
    Rat dz = z - Rat(m);
    EValue acc = EValue::zero(a.p);
    Rat pw = 1;
    const auto& row = a.jets[m.convert_to<std::size_t>()];
    for (long long j = 0; j <= a.t; ++j) {
        acc = acc + row[j].scaled(pw);
        pw *= dz;
    }
    return acc;
}

} // namespace padicrep
