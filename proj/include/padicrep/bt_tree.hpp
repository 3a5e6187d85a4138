#pragma once

#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "padicrep/errors.hpp"
#include "padicrep/fp.hpp"
#include "padicrep/padic_core.hpp"
#include "padicrep/prime.hpp"
#include "padicrep/rational.hpp"

namespace padicrep {

// 2x2 matrix over Q with nonzero determinant expected by most consumers.
// Row-major: (a b; c d).
struct GL2Mat {
    Rat a{0}, b{0}, c{0}, d{0};

    static GL2Mat identity() { return {Rat(1), Rat(0), Rat(0), Rat(1)}; }
    // diag(1, p): moves a vertex to its parent on the right.
    static GL2Mat alpha(Prime p) { return {Rat(1), Rat(0), Rat(0), Rat(p.value())}; }
    // antidiag(1, p): order-two edge reversal up to center.
    static GL2Mat beta(Prime p) { return {Rat(0), Rat(1), Rat(p.value()), Rat(0)}; }

    Rat det() const { return a * d - b * c; }

    GL2Mat operator*(const GL2Mat& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d,
                c * o.a + d * o.c, c * o.b + d * o.d};
    }

    GL2Mat scaled(const Rat& s) const { return {a * s, b * s, c * s, d * s}; }

    GL2Mat inverse() const {
        Rat dt = det();
        if (dt == 0) throw DomainError("GL2Mat: inverse of singular matrix");
        return {d / dt, -b / dt, -c / dt, a / dt};
    }

    bool operator==(const GL2Mat& o) const {
        return a == o.a && b == o.b && c == o.c && d == o.d;
    }
};

// (p 0; lam 1) transposed convention is not used anywhere: all coset
// representatives below are spelled out explicitly.
inline GL2Mat upper_coset_rep(Prime p, long long lam) {
    return {Rat(p.value()), Rat(lam), Rat(0), Rat(1)};
}

inline GL2Mat lower_coset_rep(Prime p, long long lam) {
    return {Rat(1), Rat(0), Rat(Int(p.value()) * lam), Rat(p.value())};
}

// Homothety class of a rank-two lattice in normal form (p^n mu; 0 1).
// Stored as the level n and the nonzero digits of mu mod p^n; every key is
// strictly below n and every digit lies in [1, p-1].
struct VertexClass {
    long long n = 0;
    std::map<long long, int> digits;

    Rat mu_value(Prime p) const {
        Rat s(0);
        for (const auto& [e, dg] : digits) s += Rat(dg) * rat_ppow(p.big(), e);
        return s;
    }

    friend bool operator==(const VertexClass& x, const VertexClass& y) {
        return x.n == y.n && x.digits == y.digits;
    }
    friend bool operator!=(const VertexClass& x, const VertexClass& y) {
        return !(x == y);
    }
    friend bool operator<(const VertexClass& x, const VertexClass& y) {
        if (x.n != y.n) return x.n < y.n;
        return x.digits < y.digits;
    }

    std::string str() const {
        std::ostringstream os;
        os << "(n=" << n << ", mu=[";
        bool first = true;
        for (const auto& [e, dg] : digits) {
            if (!first) os << ",";
            first = false;
            os << e << ":" << dg;
        }
        os << "])";
        return os.str();
    }
};

inline GL2Mat vertex_matrix(const VertexClass& v, Prime p) {
    return {rat_ppow(p.big(), v.n), v.mu_value(p), Rat(0), Rat(1)};
}

// Column reduction of g to the normal form (p^n mu; 0 1) up to right GL2(Z_p)
// and homothety. Both column operations below preserve the lattice spanned by
// the columns; the final homothety normalizes the lower-right entry to 1.
inline VertexClass canonicalize_vertex(const GL2Mat& g, Prime p) {
    Rat a = g.a, b = g.b, c = g.c, d = g.d;
    bool do_swap =
        (d == 0) || (c != 0 && vp_rat(c, p.big()) < vp_rat(d, p.big()));
    if (do_swap) {
        std::swap(a, b);
        std::swap(c, d);
    }
    // singular input surfaces as a vanishing pivot: both bottom entries zero,
    // or a zero corner after the elimination (a d - b c = 0 exactly then)
    if (d == 0) throw DomainError("canonicalize_vertex: singular matrix");
    if (c != 0) a -= (c / d) * b;  // col1 -= (c/d) col2, c/d is p-integral
    if (a == 0) throw DomainError("canonicalize_vertex: singular matrix");
    long long s = vp_rat(a, p.big());
    long long t = vp_rat(d, p.big());
    VertexClass v;
    v.n = s - t;
    Rat x = b / d;  // b over (unit of d) p^t
    if (x != 0) {
        long long e = vp_rat(x, p.big());
        while (x != 0 && e < v.n) {
            Rat pe = rat_ppow(p.big(), e);
            Int dg = rat_mod(x / pe, p.big());
            v.digits[e] = dg.convert_to<int>();
            x -= Rat(dg) * pe;
            if (x == 0) break;
            e = vp_rat(x, p.big());
        }
    }
    return v;
}

inline VertexClass parent_vertex(const VertexClass& v) {
    VertexClass u;
    u.n = v.n - 1;
    u.digits = v.digits;
    u.digits.erase(u.n);
    return u;
}

inline VertexClass child_vertex(const VertexClass& v, int digit, Prime p) {
    if (digit < 0 || digit >= p.value())
        throw DomainError("child_vertex: digit out of range");
    VertexClass u;
    u.n = v.n + 1;
    u.digits = v.digits;
    if (digit != 0) u.digits[v.n] = digit;
    return u;
}

// The p+1 neighbors: parent first, then the children by digit.
inline std::vector<VertexClass> neighbor_vertices(const VertexClass& v, Prime p) {
    std::vector<VertexClass> out;
    out.reserve(static_cast<std::size_t>(p.value()) + 1);
    out.push_back(parent_vertex(v));
    for (int dg = 0; dg < p.value(); ++dg) out.push_back(child_vertex(v, dg, p));
    return out;
}

inline std::vector<VertexClass> enumerate_ball(Prime p, long long radius) {
    std::vector<VertexClass> out{VertexClass{}};
    std::map<VertexClass, long long> dist{{VertexClass{}, 0}};
    std::size_t head = 0;
    while (head < out.size()) {
        VertexClass v = out[head++];
        long long dv = dist[v];
        if (dv == radius) continue;
        for (const auto& w : neighbor_vertices(v, p))
            if (!dist.count(w)) {
                dist[w] = dv + 1;
                out.push_back(w);
            }
    }
    return out;
}

struct OrientedEdge {
    VertexClass src, dst;

    friend bool operator==(const OrientedEdge& x, const OrientedEdge& y) {
        return x.src == y.src && x.dst == y.dst;
    }
    friend bool operator!=(const OrientedEdge& x, const OrientedEdge& y) {
        return !(x == y);
    }
    friend bool operator<(const OrientedEdge& x, const OrientedEdge& y) {
        if (x.src != y.src) return x.src < y.src;
        return x.dst < y.dst;
    }

    std::string str() const { return src.str() + " -> " + dst.str(); }
};

inline OrientedEdge standard_edge() {
    return {VertexClass{}, VertexClass{-1, {}}};
}

inline OrientedEdge flip_edge(const OrientedEdge& e) { return {e.dst, e.src}; }

// Canonical group element carrying the standard edge to e: for a downward
// edge (to the parent) this is the vertex matrix of the source, for an upward
// edge the vertex matrix of the target times beta.
inline GL2Mat edge_matrix(const OrientedEdge& e, Prime p) {
    if (e.dst == parent_vertex(e.src)) return vertex_matrix(e.src, p);
    if (e.src == parent_vertex(e.dst))
        return vertex_matrix(e.dst, p) * GL2Mat::beta(p);
    throw DomainError("edge_matrix: endpoints are not adjacent");
}

inline OrientedEdge edge_of(const GL2Mat& g, Prime p) {
    // g * alpha only scales the second column
    Rat pr(p.value());
    return {canonicalize_vertex(g, p),
            canonicalize_vertex({g.a, g.b * pr, g.c, g.d * pr}, p)};
}

// Smooth character of the upper-triangular-mod-p subgroup times center,
// trivial on the center: (a b; c d) -> abar^l * dbar^m on the integral part.
class IZCharacter {
  public:
    IZCharacter(Prime p, long long l, long long m) : p_(p) {
        long long q = p.value() - 1;
        l_ = ((l % q) + q) % q;
        m_ = ((m % q) + q) % q;
    }

    Prime prime() const { return p_; }
    long long l() const { return l_; }
    long long m() const { return m_; }
    IZCharacter swapped() const { return IZCharacter(p_, m_, l_); }

    bool operator==(const IZCharacter& o) const {
        return p_ == o.p_ && l_ == o.l_ && m_ == o.m_;
    }
    bool operator!=(const IZCharacter& o) const { return !(*this == o); }

    // Value at h, which must lie in the stabilizer of the standard edge
    // (integral up to center, lower-left entry divisible by p, unit
    // determinant up to center). Anything else is a caller bug.
    Fp coset_value(const GL2Mat& h) const {
        if (h.a == 0)
            throw InternalError("coset_value: vanishing upper-left entry");
        long long m = vp_rat(h.a, p_.big());
        Rat ib = h.b / h.a, ic = h.c / h.a, id = h.d / h.a;
        bool ok = (ib == 0 || vp_rat(ib, p_.big()) >= 0) &&
                  (ic == 0 || vp_rat(ic, p_.big()) >= 1) &&
                  (id != 0 && vp_rat(id, p_.big()) == 0);
        if (ok) {
            Rat dt = id - ib * ic;
            ok = (dt != 0 && vp_rat(dt, p_.big()) == 0);
        }
        if (!ok) throw InternalError("coset_value: connector not in stabilizer");
        Int ubar = rat_mod(h.a / rat_ppow(p_.big(), m), p_.big());
        Int dbar = rat_mod(id, p_.big());
        return Fp(p_, ubar).pow(l_ + m_) * Fp(p_, dbar).pow(m_);
    }

  private:
    Prime p_;
    long long l_, m_;
};

struct EdgeTerm {
    OrientedEdge edge;
    Fp scale;
};

// Rewrite the basis element attached to g as (scalar) * (canonical basis
// element): g = edge_matrix(E) * h with h in the edge stabilizer, and the
// scalar is chi(h). The connector h is solved directly: the canonical edge
// matrix is triangular up to the reversal, so no generic inverse is needed.
inline EdgeTerm canonicalize_edge(const GL2Mat& g, const IZCharacter& chi) {
    Prime p = chi.prime();
    OrientedEdge e = edge_of(g, p);
    GL2Mat h;
    if (e.dst == parent_vertex(e.src)) {
        // E = (P M; 0 1) with P = p^n, M = mu of the source
        Rat P = rat_ppow(p.big(), e.src.n);
        Rat M = e.src.mu_value(p);
        h = {(g.a - M * g.c) / P, (g.b - M * g.d) / P, g.c, g.d};
    } else {
        // E = (M p, P; p, 0) from the target's vertex matrix times beta
        Rat P = rat_ppow(p.big(), e.dst.n);
        Rat M = e.dst.mu_value(p);
        Rat pr(p.value());
        h = {g.c / pr, g.d / pr, (g.a - M * g.c) / P, (g.b - M * g.d) / P};
    }
    return {e, chi.coset_value(h)};
}

// Finite F_p-linear combination of canonical edge basis elements of the
// module induced from an edge-stabilizer character. Zero values are pruned.
class EdgeFunction {
  public:
    explicit EdgeFunction(const IZCharacter& chi) : chi_(chi) {}

    static EdgeFunction delta(const IZCharacter& chi, const OrientedEdge& e) {
        EdgeFunction f(chi);
        f.add(e, Fp(chi.prime(), Int(1)));
        return f;
    }

    const IZCharacter& character() const { return chi_; }
    Prime prime() const { return chi_.prime(); }
    const std::map<OrientedEdge, Fp>& terms() const { return vals_; }
    bool is_zero() const { return vals_.empty(); }

    void add(const OrientedEdge& e, const Fp& c) {
        if (c.is_zero()) return;
        auto it = vals_.find(e);
        if (it == vals_.end()) {
            vals_.emplace(e, c);
            return;
        }
        Fp s = it->second + c;
        if (s.is_zero())
            vals_.erase(it);
        else
            it->second = s;
    }

    void add_term(const GL2Mat& g, const Fp& c) {
        EdgeTerm t = canonicalize_edge(g, chi_);
        add(t.edge, t.scale * c);
    }

    EdgeFunction operator+(const EdgeFunction& o) const {
        require_same_module(o);
        EdgeFunction out = *this;
        for (const auto& [e, c] : o.vals_) out.add(e, c);
        return out;
    }

    EdgeFunction operator-() const {
        EdgeFunction out(chi_);
        for (const auto& [e, c] : vals_) out.add(e, -c);
        return out;
    }

    EdgeFunction operator-(const EdgeFunction& o) const { return *this + (-o); }

    EdgeFunction scaled(const Fp& c) const {
        EdgeFunction out(chi_);
        for (const auto& [e, v] : vals_) out.add(e, v * c);
        return out;
    }

    bool operator==(const EdgeFunction& o) const {
        return chi_ == o.chi_ && vals_ == o.vals_;
    }
    bool operator!=(const EdgeFunction& o) const { return !(*this == o); }

  private:
    void require_same_module(const EdgeFunction& o) const {
        if (chi_ != o.chi_)
            throw DomainError("EdgeFunction: mixed induction characters");
    }

    IZCharacter chi_;
    std::map<OrientedEdge, Fp> vals_;
};

// Edge reversal operator; exchanges the two diagonal exponents of the
// inducing character, and squares to the identity.
inline EdgeFunction hecke_T10(const EdgeFunction& f) {
    Prime p = f.prime();
    EdgeFunction out(f.character().swapped());
    GL2Mat beta = GL2Mat::beta(p);
    for (const auto& [e, c] : f.terms()) out.add_term(edge_matrix(e, p) * beta, c);
    return out;
}

// Degree-p operator summing over the upper coset representatives.
inline EdgeFunction hecke_Tm10(const EdgeFunction& f) {
    Prime p = f.prime();
    EdgeFunction out(f.character());
    std::vector<GL2Mat> reps;
    reps.reserve(static_cast<std::size_t>(p.value()));
    for (long long lam = 0; lam < p.value(); ++lam)
        reps.push_back(upper_coset_rep(p, lam));
    for (const auto& [e, c] : f.terms()) {
        GL2Mat g = edge_matrix(e, p);
        for (const auto& rep : reps) out.add_term(g * rep, c);
    }
    return out;
}

// Degree-p operator summing over the lower coset representatives.
inline EdgeFunction hecke_T12(const EdgeFunction& f) {
    Prime p = f.prime();
    EdgeFunction out(f.character());
    std::vector<GL2Mat> reps;
    reps.reserve(static_cast<std::size_t>(p.value()));
    for (long long lam = 0; lam < p.value(); ++lam)
        reps.push_back(lower_coset_rep(p, lam));
    for (const auto& [e, c] : f.terms()) {
        GL2Mat g = edge_matrix(e, p);
        for (const auto& rep : reps) out.add_term(g * rep, c);
    }
    return out;
}

// Element of the r-th symmetric power of the standard F_p^2: coefficients
// coef[i] of X^{r-i} Y^i.
struct SymVector {
    std::vector<Fp> coef;

    static SymVector zero(Prime p, long long r) {
        if (r < 0) throw DomainError("SymVector: negative degree");
        return SymVector{std::vector<Fp>(static_cast<std::size_t>(r) + 1,
                                         Fp(p, Int(0)))};
    }

    static SymVector monomial(Prime p, long long r, long long i, const Fp& c) {
        SymVector v = zero(p, r);
        if (i < 0 || i > r) throw DomainError("SymVector: exponent out of range");
        v.coef[static_cast<std::size_t>(i)] = c;
        return v;
    }

    long long degree() const { return static_cast<long long>(coef.size()) - 1; }

    bool is_zero() const {
        for (const auto& c : coef)
            if (!c.is_zero()) return false;
        return true;
    }

    SymVector operator+(const SymVector& o) const {
        if (coef.size() != o.coef.size())
            throw DomainError("SymVector: mixed degrees");
        SymVector out = *this;
        for (std::size_t i = 0; i < coef.size(); ++i)
            out.coef[i] = out.coef[i] + o.coef[i];
        return out;
    }

    SymVector operator-() const {
        SymVector out = *this;
        for (auto& c : out.coef) c = -c;
        return out;
    }

    SymVector scaled(const Fp& s) const {
        SymVector out = *this;
        for (auto& c : out.coef) c = c * s;
        return out;
    }

    bool operator==(const SymVector& o) const { return coef == o.coef; }
    bool operator!=(const SymVector& o) const { return !(*this == o); }
};

// v(X, Y) -> v(aX + cY, bX + dY) for kappa = (a b; c d) reduced mod p; kappa
// must be p-integral with unit determinant.
inline SymVector sym_substitute(const SymVector& v, Prime p, const GL2Mat& kappa) {
    Fp a(p, rat_mod(kappa.a, p.big()));
    Fp b(p, rat_mod(kappa.b, p.big()));
    Fp c(p, rat_mod(kappa.c, p.big()));
    Fp d(p, rat_mod(kappa.d, p.big()));
    if ((a * d - b * c).is_zero())
        throw DomainError("sym_substitute: determinant not a unit");
    long long r = v.degree();
    SymVector out = SymVector::zero(p, r);
    for (long long i = 0; i <= r; ++i) {
        const Fp& ci = v.coef[static_cast<std::size_t>(i)];
        if (ci.is_zero()) continue;
        // (aX+cY)^{r-i} and (bX+dY)^i, coefficients indexed by Y-degree
        std::vector<Fp> A(static_cast<std::size_t>(r - i) + 1, Fp(p, Int(0)));
        std::vector<Fp> B(static_cast<std::size_t>(i) + 1, Fp(p, Int(0)));
        for (long long k = 0; k <= r - i; ++k)
            A[static_cast<std::size_t>(k)] =
                Fp::from_rat(p, binom(Int(r - i), k)) * a.pow(r - i - k) *
                c.pow(k);
        for (long long l = 0; l <= i; ++l)
            B[static_cast<std::size_t>(l)] =
                Fp::from_rat(p, binom(Int(i), l)) * b.pow(i - l) * d.pow(l);
        for (long long k = 0; k <= r - i; ++k)
            for (long long l = 0; l <= i; ++l) {
                std::size_t j = static_cast<std::size_t>(k + l);
                out.coef[j] = out.coef[j] + ci * A[static_cast<std::size_t>(k)] *
                                                B[static_cast<std::size_t>(l)];
            }
    }
    return out;
}

// Finite linear combination of vertex basis elements of the module induced
// from the r-th symmetric power of the maximal compact times center.
class VertexFunction {
  public:
    VertexFunction(Prime p, long long r) : p_(p), r_(r) {
        if (r < 0) throw DomainError("VertexFunction: negative degree");
    }

    static VertexFunction delta(Prime p, const VertexClass& v,
                                const SymVector& w) {
        VertexFunction f(p, w.degree());
        f.add(v, w);
        return f;
    }

    Prime prime() const { return p_; }
    long long sym_degree() const { return r_; }
    const std::map<VertexClass, SymVector>& terms() const { return vals_; }
    bool is_zero() const { return vals_.empty(); }

    void add(const VertexClass& v, const SymVector& w) {
        if (w.degree() != r_) throw DomainError("VertexFunction: mixed degrees");
        if (w.is_zero()) return;
        auto it = vals_.find(v);
        if (it == vals_.end()) {
            vals_.emplace(v, w);
            return;
        }
        SymVector s = it->second + w;
        if (s.is_zero())
            vals_.erase(it);
        else
            it->second = s;
    }

    // Rewrite [g, w] on the canonical vertex basis: g = vertex_matrix(V) * h
    // with h integral-up-to-center of unit determinant, acting on w by
    // substitution.
    void add_term(const GL2Mat& g, const SymVector& w) {
        if (w.degree() != r_) throw DomainError("VertexFunction: mixed degrees");
        if (w.is_zero()) return;
        VertexClass v = canonicalize_vertex(g, p_);
        GL2Mat h = vertex_matrix(v, p_).inverse() * g;
        Rat dt = h.det();
        long long vdet = vp_rat(dt, p_.big());
        if (vdet % 2 != 0)
            throw InternalError("vertex connector determinant has odd valuation");
        GL2Mat kappa = h.scaled(rat_ppow(p_.big(), -vdet / 2));
        bool ok = (kappa.a == 0 || vp_rat(kappa.a, p_.big()) >= 0) &&
                  (kappa.b == 0 || vp_rat(kappa.b, p_.big()) >= 0) &&
                  (kappa.c == 0 || vp_rat(kappa.c, p_.big()) >= 0) &&
                  (kappa.d == 0 || vp_rat(kappa.d, p_.big()) >= 0) &&
                  vp_rat(kappa.det(), p_.big()) == 0;
        if (!ok) throw InternalError("vertex connector not integral of unit determinant");
        add(v, sym_substitute(w, p_, kappa));
    }

    VertexFunction operator+(const VertexFunction& o) const {
        require_same_module(o);
        VertexFunction out = *this;
        for (const auto& [v, w] : o.vals_) out.add(v, w);
        return out;
    }

    VertexFunction operator-() const {
        VertexFunction out(p_, r_);
        for (const auto& [v, w] : vals_) out.add(v, -w);
        return out;
    }

    VertexFunction operator-(const VertexFunction& o) const {
        return *this + (-o);
    }

    bool operator==(const VertexFunction& o) const {
        return p_ == o.p_ && r_ == o.r_ && vals_ == o.vals_;
    }
    bool operator!=(const VertexFunction& o) const { return !(*this == o); }

  private:
    void require_same_module(const VertexFunction& o) const {
        if (!(p_ == o.p_) || r_ != o.r_)
            throw DomainError("VertexFunction: mixed modules");
    }

    Prime p_;
    long long r_;
    std::map<VertexClass, SymVector> vals_;
};

// Spherical degree-p operator: [g, v] goes to the sum over the p upper coset
// representatives of [g (p lam; 0 1), v(X, -lam X + pY)] plus
// [g diag(1, p), v(pX, Y)], where the substituted vectors are reduced mod p
// (so they collapse onto the X^r and Y^r lines respectively).
inline VertexFunction hecke_spherical_T(const VertexFunction& f) {
    Prime p = f.prime();
    long long r = f.sym_degree();
    VertexFunction out(p, r);
    for (const auto& [v, w] : f.terms()) {
        GL2Mat gamma = vertex_matrix(v, p);
        for (long long lam = 0; lam < p.value(); ++lam) {
            Fp s(p, Int(0));
            Fp neg = -Fp(p, Int(lam));
            Fp pw(p, Int(1));
            for (long long i = 0; i <= r; ++i) {
                s = s + w.coef[static_cast<std::size_t>(i)] * pw;
                pw = pw * neg;
            }
            if (s.is_zero()) continue;
            out.add_term(gamma * upper_coset_rep(p, lam),
                         SymVector::monomial(p, r, 0, s));
        }
        const Fp& top = w.coef[static_cast<std::size_t>(r)];
        if (!top.is_zero())
            out.add_term(gamma * GL2Mat::alpha(p),
                         SymVector::monomial(p, r, r, top));
    }
    return out;
}

}  // namespace padicrep
