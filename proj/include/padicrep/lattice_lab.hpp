#pragma once

#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include "padicrep/bt_tree.hpp"
#include "padicrep/errors.hpp"
#include "padicrep/evalue.hpp"
#include "padicrep/padic_core.hpp"
#include "padicrep/padic_scalar.hpp"
#include "padicrep/polylog.hpp"
#include "padicrep/prime.hpp"
#include "padicrep/rational.hpp"
#include "padicrep/valuation.hpp"

namespace padicrep {

// ---------------------------------------------------------------------------
// Regions of Q_p cut out by a single ball condition.
// ---------------------------------------------------------------------------

enum class RegionKind { All, Ball, BallComplement };

// Ball means center + p^h Z_p; BallComplement its set complement in Q_p.
// Under fractional linear maps the pole goes to infinity, which lies in every
// complement and in no ball, so this family is closed under preimages.
struct Indicator {
    RegionKind kind = RegionKind::All;
    Rat center{0};
    long long h = 0;

    static Indicator all() { return Indicator{}; }
    static Indicator ball(const Rat& c, long long h) {
        return Indicator{RegionKind::Ball, c, h};
    }
    static Indicator ball_complement(const Rat& c, long long h) {
        return Indicator{RegionKind::BallComplement, c, h};
    }

    bool contains(const Rat& z, Prime p) const {
        if (kind == RegionKind::All) return true;
        bool in_ball = (z == center) || vp_rat(z - center, p.big()) >= h;
        return kind == RegionKind::Ball ? in_ball : !in_ball;
    }

    bool operator==(const Indicator& o) const {
        if (kind != o.kind) return false;
        if (kind == RegionKind::All) return true;
        return center == o.center && h == o.h;
    }

    std::string str() const {
        if (kind == RegionKind::All) return "all";
        std::string core = "ball(" + Rat(center).str() + ", " + std::to_string(h) + ")";
        return kind == RegionKind::Ball ? core : "not " + core;
    }
};

// Preimage of S under z -> (a z + c)/(b z + d).  Case split on whether the
// numerator a - s b of w(z) - s degenerates; all output parameters are exact.
inline Indicator transport_indicator(const Indicator& S, const GL2Mat& g, Prime p) {
    if (g.det() == 0) throw DomainError("transport_indicator: singular matrix");
    if (S.kind == RegionKind::All) return S;

    const Rat& s = S.center;
    long long h = S.h;
    Indicator pre;
    if (g.b == 0) {
        // Affine map: one ball goes to one ball.
        pre = Indicator::ball((s * g.d - g.c) / g.a,
                              h + vp_rat(g.d, p.big()) - vp_rat(g.a, p.big()));
    } else {
        Rat q = -g.d / g.b;
        Rat lead = g.a - s * g.b;
        if (lead == 0) {
            // w(z) - s = (c - s d)/(b (z - q)): small values happen far from q.
            long long C = vp_rat(g.c - s * g.d, p.big()) - vp_rat(g.b, p.big());
            pre = Indicator::ball_complement(q, C - h + 1);
        } else {
            // w(z) - s = lead (z - zs) / (b (z - q)); zs != q since det != 0.
            long long C = vp_rat(lead, p.big()) - vp_rat(g.b, p.big());
            Rat zs = (s * g.d - g.c) / lead;
            long long D = vp_rat(zs - q, p.big());
            if (h > C)
                pre = Indicator::ball(zs, h - C + D);
            else
                pre = Indicator::ball_complement(q, C + D - h + 1);
        }
    }
    if (S.kind == RegionKind::BallComplement) {
        if (pre.kind == RegionKind::Ball)
            return Indicator::ball_complement(pre.center, pre.h);
        return Indicator::ball(pre.center, pre.h);
    }
    return pre;
}

// ---------------------------------------------------------------------------
// Locally algebraic functions: finite sums coeff (z - center)^n 1_region.
// ---------------------------------------------------------------------------

struct LocAlgTerm {
    EValue coeff;
    Rat center{0};
    long long n = 0;
    Indicator region;
};

struct LocallyAlgebraicFn {
    Prime p;
    long long r = 0;
    std::vector<LocAlgTerm> terms;

    EValue evaluate(const Rat& z) const {
        EValue acc = EValue::zero(p);
        for (const auto& t :terms) {
            if (!t.region.contains(z, p)) continue;
            acc = acc + t.coeff.scaled(rat_pow(z - t.center, t.n));
        }
        return acc;
    }
};

inline LocallyAlgebraicFn make_loc_alg(Prime p, long long r,
                                       std::vector<LocAlgTerm> terms) {
    for (const auto& t : terms)
        if (t.n < 0 || t.n > r)
            throw DomainError("LocAlgTerm: exponent outside [0, r]");
    return LocallyAlgebraicFn{p, r, std::move(terms)};
}

// Weight r action (g f)(z) = |det g|^{r/2} (b z + d)^r f((a z + c)/(b z + d)).
// Each image term is re-expanded about a single center, so the family of
// one-center terms is preserved.  Left action: g1 (g2 f) = (g1 g2) f.
inline LocallyAlgebraicFn apply_g_action(const GL2Mat& g, const LocallyAlgebraicFn& f) {
    Rat det = g.det();
    if (det == 0) throw DomainError("apply_g_action: singular matrix");
    Prime p = f.p;
    long long vdet = vp_rat(det, p.big());
    PadicScalar pref = PadicScalar::root_p_power(p, -vdet * f.r);

    LocallyAlgebraicFn out{p, f.r, {}};
    for (const auto& t : f.terms) {
        if (t.n < 0 || t.n > f.r)
            throw DomainError("apply_g_action: exponent outside [0, r]");
        Indicator S = transport_indicator(t.region, g, p);
        EValue base = t.coeff.times(pref);
        if (g.b == 0) {
            // (b z + d)^r (w - z0)^n = a^n d^{r-n} (z - zh)^n
            Rat zh = (t.center * g.d - g.c) / g.a;
            Rat scale = rat_pow(g.a, t.n) * rat_pow(g.d, f.r - t.n);
            out.terms.push_back({base.scaled(scale), zh, t.n, S});
        } else {
            Rat q = -g.d / g.b;
            Rat lead = g.a - t.center * g.b;
            if (lead == 0) {
                // Constant numerator: the pole center q carries exponent r - n.
                Rat cc = g.c - t.center * g.d;
                Rat scale = rat_pow(cc, t.n) * rat_pow(g.b, f.r - t.n);
                out.terms.push_back({base.scaled(scale), q, f.r - t.n, S});
            } else {
                // (z - zh)^n (z - q)^{r-n} expanded about zh.
                Rat zh = (t.center * g.d - g.c) / lead;
                Rat delta = zh - q;
                Rat lead_scale = rat_pow(lead, t.n) * rat_pow(g.b, f.r - t.n);
                for (long long m = 0; m <= f.r - t.n; ++m) {
                    Rat coef = binom(Int(f.r - t.n), m) *
                               rat_pow(delta, f.r - t.n - m) * lead_scale;
                    out.terms.push_back({base.scaled(coef), zh, t.n + m, S});
                }
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Integral shapes exhibited as group translates of monomials on p Z_p.
// ---------------------------------------------------------------------------

// element = polynomial_part + transported_sign * (witness_matrix . seed).
struct LatticeCertificate {
    GL2Mat witness_matrix;
    LocallyAlgebraicFn seed;
    LocallyAlgebraicFn polynomial_part;
    int transported_sign = 1;
};

// p^{(h-1)(r/2 - j)} (z - z0)^j on z0 + p^h Z_p, 0 <= j <= r, h >= 1.
// A single translate of z^j 1_{p Z_p}; no polynomial correction is needed.
inline std::pair<LocallyAlgebraicFn, LatticeCertificate>
interior_lattice_element(Prime p, long long r, const Rat& z0, long long h, long long j) {
    if (h < 1) throw DomainError("interior_lattice_element: level below 1");
    if (j < 0 || j > r) throw DomainError("interior_lattice_element: exponent outside [0, r]");

    EValue scale = EValue::from_scalar(PadicScalar::root_p_power(p, (h - 1) * (r - 2 * j)));
    LocallyAlgebraicFn element =
        make_loc_alg(p, r, {{scale, z0, j, Indicator::ball(z0, h)}});

    GL2Mat gamma{Rat(1), Rat(0), -z0, rat_ppow(p.big(), h - 1)};
    LocallyAlgebraicFn seed =
        make_loc_alg(p, r, {{EValue::from_rational(p, 1), Rat(0), j, Indicator::ball(Rat(0), 1)}});
    return {element, LatticeCertificate{gamma, seed, LocallyAlgebraicFn{p, r, {}}, 1}};
}

// p^{h(r/2 - j)} (z - z0)^j on z0 + p^h Z_p, r/2 <= j <= r, h >= 1.
// The translate of z^{r-j} 1_{p Z_p} lands on the complement of the ball, so
// the shape is reached only after subtracting it from the global monomial.
inline std::pair<LocallyAlgebraicFn, LatticeCertificate>
boundary_lattice_element(Prime p, long long r, const Rat& z0, long long h, long long j) {
    if (h < 1) throw DomainError("boundary_lattice_element: level below 1");
    if (2 * j < r || j > r)
        throw DomainError("boundary_lattice_element: exponent outside [r/2, r]");

    EValue scale = EValue::from_scalar(PadicScalar::root_p_power(p, h * (r - 2 * j)));
    LocallyAlgebraicFn element =
        make_loc_alg(p, r, {{scale, z0, j, Indicator::ball(z0, h)}});

    GL2Mat gamma{Rat(0), Rat(1), rat_ppow(p.big(), h), -z0};
    LocallyAlgebraicFn seed = make_loc_alg(
        p, r, {{EValue::from_rational(p, 1), Rat(0), r - j, Indicator::ball(Rat(0), 1)}});
    LocallyAlgebraicFn poly = make_loc_alg(p, r, {{scale, z0, j, Indicator::all()}});
    return {element, LatticeCertificate{gamma, seed, poly, -1}};
}

// ---------------------------------------------------------------------------
// Interpolation weights on the nodes {0, ..., n} u {p}.
// ---------------------------------------------------------------------------

struct LambdaSystem {
    Prime p;
    long long n = 0;
    std::vector<Rat> lambda;  // weights at the integer nodes 0..n
    Rat lambda_far{-1};       // weight at the node p
};

// lambda_i is the Lagrange basis value l_i(p) on nodes 0..n, lambda_far = -1.
// The combined weights kill all moments sum lambda x^t for t = 0..n, which is
// checked exactly before returning.
inline LambdaSystem solve_lambda_system(Prime p, long long n) {
    if (n < 1 || n >= p.value())
        throw UsageError("solve_lambda_system: node count outside [1, p-1]");
    LambdaSystem sys{p, n, {}, Rat(-1)};
    for (long long i = 0; i <= n; ++i) {
        Rat prod(1);
        for (long long m = 0; m <= n; ++m) {
            if (m == i) continue;
            prod *= Rat(Int(p.value() - m)) / Rat(Int(i - m));
        }
        sys.lambda.push_back(prod);
    }
    for (long long t = 0; t <= n; ++t) {
        Rat moment = sys.lambda_far * rat_ppow(p.big(), t);
        for (long long i = 0; i <= n; ++i)
            moment += sys.lambda[i] * rat_pow(Rat(i), t);
        if (moment != 0) throw InternalError("solve_lambda_system: moment identity failed");
    }
    return sys;
}

// Coefficients of sum_i lambda_i (z - i)^n over all nodes including p.
// Identically zero for a valid system: every coefficient is a killed moment.
inline std::vector<Rat> witness_shadow_coefficients(const LambdaSystem& sys) {
    std::vector<Rat> coef(static_cast<size_t>(sys.n + 1), Rat(0));
    auto add_node = [&](const Rat& lam, const Rat& node) {
        for (long long m = 0; m <= sys.n; ++m)
            coef[static_cast<size_t>(m)] +=
                lam * binom(Int(sys.n), m) * rat_pow(-node, sys.n - m);
    };
    for (long long i = 0; i <= sys.n; ++i) add_node(sys.lambda[i], Rat(i));
    add_node(sys.lambda_far, Rat(sys.p.value()));
    return coef;
}

// The far expansion of the weighted sum has no bare log term exactly when
// sum_i lambda_i (1 - i z)^n vanishes as a polynomial.  Checked exactly.
inline bool verify_outer_part_claim(const LambdaSystem& sys) {
    for (long long m = 0; m <= sys.n; ++m) {
        Rat coef = sys.lambda_far * binom(Int(sys.n), m) * rat_pow(Rat(-sys.p.value()), m);
        for (long long i = 0; i <= sys.n; ++i)
            coef += sys.lambda[i] * binom(Int(sys.n), m) * rat_pow(Rat(-i), m);
        if (coef != 0) return false;
    }
    return true;
}

// sum over nodes of p^x lambda (z - node)^n log(z - node), scale exponent x in
// half units of valuation.  The shadow polynomial vanishes, so the function
// decays like the interpolation error despite each summand being large.
inline PolyLogFunction build_witness(const LambdaSystem& sys, long long r, const Val& x) {
    if (x == Val::infinity()) throw DomainError("build_witness: infinite scale");
    PadicScalar scale = PadicScalar::root_p_power(sys.p, x.twice());
    std::vector<PolyLogTerm> terms;
    for (long long i = 0; i <= sys.n; ++i)
        terms.push_back({EValue::from_scalar(scale.scaled(sys.lambda[i])), Rat(i), sys.n});
    terms.push_back(
        {EValue::from_scalar(scale.scaled(sys.lambda_far)), Rat(sys.p.value()), sys.n});
    return make_polylog(sys.p, r, terms);
}

// Jets g^{(j)}(a)/j! for j = 0..t by the product rule applied per summand.
// A summand centered at a contributes zero while j stays below its exponent.
inline std::vector<EValue> taylor_jet_expand(const PolyLogFunction& f, const Rat& a,
                                             long long t, long long N) {
    std::vector<EValue> jets;
    for (long long j = 0; j <= t; ++j) {
        EValue acc = EValue::zero(f.p);
        for (const auto& term : f.terms)
            acc = acc + term.coeff * polylog_jet(f.p, term.n, j, a, term.center, N);
        jets.push_back(acc);
    }
    return jets;
}

// ---------------------------------------------------------------------------
// Jet descent from level h to level h - 1.
// ---------------------------------------------------------------------------

struct DescentEntry {
    long long alpha = 0;
    long long l = 0;
    Val margin = Val::of(0);  // half units of valuation above the target
    bool pass = false;
};

struct DescentReport {
    Rat base_point{0};
    long long level = 0;
    long long order = 0;
    std::vector<DescentEntry> entries;
    bool all_pass = true;
};

// Recenter the order-t jet polynomial from a + alpha p^{h-1} back to a:
//   chat_l = sum_{j=l}^t C(j, l) (-alpha p^{h-1})^{j-l} jet_j(a + alpha p^{h-1})
// and compare with jet_l(a).  The defect is bounded below the target lattice
// (p^{h-1})^{r/2 - l} strictly, so pass means margin > 0.
inline DescentReport descend_jets(const PolyLogFunction& f, const Rat& a, long long h,
                                  long long t, long long N) {
    if (h < 2) throw DomainError("descend_jets: level below 2");
    if (t < 0) throw DomainError("descend_jets: negative order");
    Prime p = f.p;
    DescentReport rep{a, h, t, {}, true};
    std::vector<EValue> coarse = taylor_jet_expand(f, a, t, N);
    for (long long alpha = 0; alpha < p.value(); ++alpha) {
        Rat shift = Rat(alpha) * rat_ppow(p.big(), h - 1);
        std::vector<EValue> fine = taylor_jet_expand(f, a + shift, t, N);
        for (long long l = 0; l <= t; ++l) {
            EValue chat = EValue::zero(p);
            for (long long j = l; j <= t; ++j)
                chat = chat + fine[static_cast<size_t>(j)].scaled(
                                  binom(Int(j), l) * rat_pow(-shift, j - l));
            EValue diff = chat - coarse[static_cast<size_t>(l)];
            Val target = Val::half_units((h - 1) * (f.r - 2 * l));
            Val margin = diff.valuation_lower_bound() - target;
            bool pass = margin > Val::of(0);
            rep.entries.push_back({alpha, l, margin, pass});
            rep.all_pass = rep.all_pass && pass;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// First congruence display for the interpolation witness.
// ---------------------------------------------------------------------------

struct G1Entry {
    long long a = 0;
    long long j = 0;
    Val margin = Val::of(0);  // valuation of the deviation minus (1 + x)
    bool pass = false;
    bool ell_exact = false;   // ell component of the deviation vanishes exactly
    bool cross_checked = false;
};

struct G1Report {
    long long r = 0;
    long long n = 0;
    Val x = Val::of(0);
    std::vector<G1Entry> entries;
    bool all_pass = true;
};

// Witness parameters: r in [1, p-1], n <= r, and 2n > r + 2 so the summand
// exponent clears the function space window with room for one descent step.
inline void validate_witness_parameters(Prime p, long long r, long long n) {
    if (r < 1 || r > p.value() - 1)
        throw UsageError("validate_witness_parameters: r outside [1, p-1]");
    if (n > r || 2 * n <= r + 2)
        throw UsageError("validate_witness_parameters: need r/2 + 1 < n <= r");
}

// Jets of the witness at the residue points a = 0..p-1, j = 0..n-1, checked
// against the leading congruence:
//   a != 0:  jet_j(a) = C(n,j) p^{1+x} a^{n-j-1} up to valuation > 1 + x
//   a  = 0:  jet_j(0) = (-1)^{n-j+1} C(n,j) p^{x+n-j} ell exactly on the ell
//            side, constant side of valuation >= 2 + x
// Each jet from the product rule is cross checked against the collapsed form
// C(n,j) p^x sum lambda (a - node)^{n-j} log(a - node), equal because the
// harmonic correction is killed by the moment identities.
inline G1Report verify_g1_congruence(Prime p, long long r, long long n, const Val& x,
                                     long long N = 12) {
    validate_witness_parameters(p, r, n);
    if (x == Val::infinity() || x < Val::of(-1))
        throw UsageError("verify_g1_congruence: scale exponent below -1");

    LambdaSystem sys = solve_lambda_system(p, n);
    PolyLogFunction f = build_witness(sys, r, x);
    PadicScalar scale = PadicScalar::root_p_power(p, x.twice());
    Val display = Val::of(1) + x;

    G1Report rep{r, n, x, {}, true};
    for (long long a = 0; a < p.value(); ++a) {
        std::vector<EValue> jets = taylor_jet_expand(f, Rat(a), n - 1, N);
        for (long long j = 0; j <= n - 1; ++j) {
            // Collapsed form of the same jet; centers hit at a contribute 0.
            EValue simple = EValue::zero(p);
            auto add_node = [&](const Rat& lam, const Rat& node) {
                if (Rat(a) == node) return;
                Rat w = lam * binom(Int(n), j) * rat_pow(Rat(a) - node, n - j);
                simple = simple + log_branch(Rat(a) - node, p, N).times(scale).scaled(w);
            };
            for (long long i = 0; i <= n; ++i) add_node(sys.lambda[i], Rat(i));
            add_node(sys.lambda_far, Rat(p.value()));
            EValue gap = jets[static_cast<size_t>(j)] - simple;
            bool crosses = gap.ell_part().is_exact_zero() &&
                           gap.constant_part().is_zero_to_precision();

            EValue target = EValue::zero(p);
            if (a != 0) {
                Rat c = binom(Int(n), j) * Rat(p.value()) * rat_pow(Rat(a), n - j - 1);
                target = EValue::from_scalar(scale.scaled(c));
            } else {
                Rat c = binom(Int(n), j) * rat_ppow(p.big(), n - j);
                if ((n - j) % 2 == 0) c = -c;
                target = EValue::ell(p).times(scale.scaled(c));
            }
            EValue dev = jets[static_cast<size_t>(j)] - target;
            bool ell_ok = dev.ell_part().is_exact_zero();
            Val margin = dev.valuation_lower_bound() - display;
            bool pass = ell_ok && crosses && margin > Val::of(0);
            rep.entries.push_back({a, j, margin, pass, ell_ok, crosses});
            rep.all_pass = rep.all_pass && pass;
        }
    }
    return rep;
}

}  // namespace padicrep
