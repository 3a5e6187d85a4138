#include <gtest/gtest.h>

#include <random>

#include "padicrep/polylog.hpp"

using namespace padicrep;

namespace {

// Random rational with unit p-valuation pieces mixed in.
Rat random_nonzero(Prime p, std::mt19937_64& rng) {
    std::uniform_int_distribution<long long> numd(1, 400);
    std::uniform_int_distribution<long long> vd(-2, 3);
    long long n = numd(rng);
    Rat x(Int(n), Int(numd(rng)));
    if (rng() % 2) x = -x;
    return x * rat_ppow(p.big(), vd(rng));
}

} // namespace

TEST(LogBranch, PureBranchValueAtP) {
    Prime P(5);
    EValue v = log_branch(Rat(5), P, 8);
    EXPECT_TRUE(v.constant_part().is_exact_zero());
    EXPECT_EQ(v.ell_part().representative(), Rat(1));
    EXPECT_TRUE(v.ell_part().is_exact());

    EValue w = log_branch(Rat(-5), P, 8);
    EXPECT_TRUE(w.constant_part().is_exact_zero());
    EXPECT_EQ(w.ell_part().representative(), Rat(1));

    EValue one = log_branch(Rat(1), P, 8);
    EXPECT_TRUE(one.constant_part().is_exact_zero());
    EXPECT_TRUE(one.ell_part().is_exact_zero());

    EValue minus = log_branch(Rat(-1), P, 8);
    EXPECT_TRUE(minus.constant_part().is_exact_zero());
    EXPECT_TRUE(minus.ell_part().is_exact_zero());

    EXPECT_THROW(log_branch(Rat(0), P, 8), DomainError);
}

TEST(LogBranch, FrozenLowPrecisionValue) {
    Prime P(5);
    EValue v = log_branch(Rat(2), P, 2);
    EXPECT_TRUE(v.ell_part().is_exact_zero());
    EXPECT_EQ(rat_mod(v.constant_part().representative(), Int(25)), Int(10));
    EXPECT_EQ(v.constant_part().abs_precision(), Val::of(2));
}

TEST(LogBranch, EllPartCountsPowersOfP) {
    Prime P(7);
    for (long long k = -3; k <= 3; ++k) {
        EValue v = log_branch(Rat(3) * rat_ppow(P.big(), k), P, 6);
        EXPECT_EQ(v.ell_part().representative(), Rat(Int(k)));
    }
}

TEST(LogBranch, ConstantPartLandsInMaximalIdeal) {
    std::mt19937_64 rng(42);
    Prime P(5);
    for (int trial = 0; trial < 100; ++trial) {
        EValue v = log_branch(random_nonzero(P, rng), P, 8);
        if (!v.constant_part().is_zero_to_precision())
            EXPECT_GE(v.constant_part().valuation(), Val::of(1));
    }
}

TEST(LogBranch, AdditivityAtSharedPrecision) {
    std::mt19937_64 rng(20260816);
    for (long long p : {5LL, 7LL}) {
        Prime P(p);
        for (int trial = 0; trial < 200; ++trial) {
            Rat x = random_nonzero(P, rng), y = random_nonzero(P, rng);
            EValue fx = log_branch(x, P, 8), fy = log_branch(y, P, 8);
            EValue fxy = log_branch(x * y, P, 8);
            EXPECT_EQ(fxy.ell_part().representative(),
                      fx.ell_part().representative() + fy.ell_part().representative());
            EXPECT_TRUE(fxy.constant_part().congruent_at_shared_precision(
                fx.constant_part() + fy.constant_part()))
                << "x=" << x << " y=" << y;
        }
    }
}

TEST(PolyLogTerm, ExponentWindowEnforced) {
    Prime P(5);
    EValue one = EValue::from_rational(P, Rat(1));
    EXPECT_NO_THROW(make_polylog(P, 3, {{one, Rat(0), 2}}));
    EXPECT_NO_THROW(make_polylog(P, 3, {{one, Rat(0), 3}}));
    EXPECT_THROW(make_polylog(P, 3, {{one, Rat(0), 1}}), DomainError);
    EXPECT_THROW(make_polylog(P, 3, {{one, Rat(0), 4}}), DomainError);
}

TEST(PolyLogEval, CenterContributesZeroAndUnitsCombine) {
    Prime P(5);
    PolyLogFunction f =
        make_polylog(P, 3, {{EValue::from_rational(P, Rat(2)), Rat(1), 3}});
    EValue at_center = polylog_eval(f, Rat(1), 8);
    EXPECT_TRUE(at_center.is_zero_to_precision());

    // At z = 2 the function is 2 * 1^3 * log(1) = 0.
    EValue at2 = polylog_eval(f, Rat(2), 8);
    EXPECT_TRUE(at2.constant_part().is_zero_to_precision());
    EXPECT_TRUE(at2.ell_part().is_zero_to_precision());

    // At z = 6 the argument 5 contributes exactly 2 * 5^3 * ell.
    EValue at6 = polylog_eval(f, Rat(6), 8);
    EXPECT_TRUE(at6.constant_part().is_zero_to_precision());
    EXPECT_EQ(at6.ell_part().representative(), Rat(250));
}

TEST(PolyLogEval, EllCoefficientTimesBranchLogOverflows) {
    Prime P(5);
    PolyLogFunction f = make_polylog(P, 3, {{EValue::ell(P), Rat(0), 2}});
    EXPECT_NO_THROW(polylog_eval(f, Rat(2), 8));   // log(2) has no ell part
    EXPECT_THROW(polylog_eval(f, Rat(5), 8), EllOverflowError);
}

TEST(PolyLogDerivative, FrozenValues) {
    Prime P(5);
    // Third-power summand, second derivative at distance 1 from the center:
    // 3!/1! * (H_3 - H_1) = 6 * 5/6 = 5, no log contribution.
    EValue d = polylog_derivative(P, 3, 2, Rat(1), Rat(0), 8);
    EXPECT_EQ(d.constant_part().representative(), Rat(5));
    EXPECT_TRUE(d.ell_part().is_zero_to_precision());

    // Above the exponent the log disappears: (z^2 log z)''' = 2/z.
    EValue e = polylog_derivative(P, 2, 3, Rat(5), Rat(0), 8);
    EXPECT_EQ(e.constant_part().representative(), Rat(2, 5));
    EXPECT_TRUE(e.ell_part().is_zero_to_precision());

    // Center evaluations: zero below the exponent, singular at and above it.
    EXPECT_TRUE(polylog_derivative(P, 3, 2, Rat(4), Rat(4), 8).is_zero_to_precision());
    EXPECT_THROW(polylog_derivative(P, 3, 3, Rat(4), Rat(4), 8), DomainError);
    EXPECT_THROW(polylog_derivative(P, 3, 5, Rat(4), Rat(4), 8), DomainError);
}

TEST(PolyLogDerivative, HarmonicTermIsPIntegralInRange) {
    // t_j = n!/(n-j)! (H_n - H_{n-j}) for n <= p-1 never meets the prime.
    for (long long p : {5LL, 7LL, 11LL}) {
        Prime P(p);
        for (long long n = 1; n <= p - 1; ++n)
            for (long long j = 1; j <= n; ++j) {
                Rat t = Rat(factorial(n)) / Rat(factorial(n - j)) *
                        (harmonic_sum(n) - harmonic_sum(n - j));
                if (t != 0) EXPECT_GE(vp_rat(t, P.big()), 0) << "n=" << n << " j=" << j;
            }
    }
}

TEST(PolyLogDerivative, MatchesFiniteDifferencesWithGrowingMargin) {
    Prime P(5);
    long long N = 20;
    EValue d1 = polylog_derivative(P, 3, 1, Rat(2), Rat(0), N);
    Val prev = Val::of(-100);
    for (long long m = 2; m <= 5; ++m) {
        Rat h = rat_ppow(P.big(), m);
        PolyLogFunction f =
            make_polylog(P, 3, {{EValue::from_rational(P, Rat(1)), Rat(0), 3}});
        EValue fd = (polylog_eval(f, Rat(2) + h, N) - polylog_eval(f, Rat(2), N))
                        .scaled(Rat(1) / h);
        EValue defect = fd - d1;
        Val margin = defect.valuation_lower_bound();
        EXPECT_GE(margin, prev + Val::of(1)) << "m=" << m;
        prev = margin;
    }
}

TEST(DegreeCondition, DetectsPolynomialShadowDegree) {
    Prime P(5);
    EValue one = EValue::from_rational(P, Rat(1));
    // z^3 - 2(z-1)^3 + (z-2)^3 = 6z - 6: degree 1 < 3/2.
    PolyLogFunction good = make_polylog(
        P, 3,
        {{one, Rat(0), 3}, {EValue::from_rational(P, Rat(-2)), Rat(1), 3}, {one, Rat(2), 3}});
    DegreeConditionReport g = degree_condition_check(good);
    EXPECT_TRUE(g.ok);
    EXPECT_EQ(g.degree, 1);

    // z^3 - (z-1)^3 = 3z^2 - 3z + 1: degree 2 >= 3/2.
    PolyLogFunction bad = make_polylog(
        P, 3, {{one, Rat(0), 3}, {EValue::from_rational(P, Rat(-1)), Rat(1), 3}});
    DegreeConditionReport b = degree_condition_check(bad);
    EXPECT_FALSE(b.ok);
    EXPECT_EQ(b.degree, 2);
}

TEST(SpecializationIsLinear, RandomPairs) {
    std::mt19937_64 rng(77);
    Prime P(7);
    for (int trial = 0; trial < 50; ++trial) {
        Rat L(Int(static_cast<long long>(rng() % 100)), Int(1 + rng() % 9));
        EValue a(PadicScalar(P, random_nonzero(P, rng)), PadicScalar(P, random_nonzero(P, rng)));
        EValue b(PadicScalar(P, random_nonzero(P, rng)), PadicScalar(P, random_nonzero(P, rng)));
        EXPECT_TRUE((a + b).specialize(L).same_representative(a.specialize(L) + b.specialize(L)));
        EXPECT_TRUE((-a).specialize(L).same_representative(-(a.specialize(L))));
    }
}

TEST(SmoothnessDiagnostic, SquareLogDecaysAcrossScales) {
    // Decay of vp(a_n) - s*l(n) for z^2 log z at s = 1/2 is a statement about
    // the scale l(n), not the raw index: within scale 2 the profile still dips
    // to 0 at n = 6 (vp(a_6) = 1 exactly), and only from scale 3 on does the
    // minimum rise strictly above everything before it.
    Prime P(5);
    PolyLogFunction f =
        make_polylog(P, 3, {{EValue::from_rational(P, Rat(1)), Rat(0), 2}});
    SmoothnessDiagnostic d = csmooth_diagnostic(f, Rat(1), Rat(1, 2), 126, 16);
    ASSERT_EQ(d.profile.size(), 126u);

    ASSERT_TRUE(d.profile[6].has_value());
    EXPECT_EQ(*d.profile[6], Rat(0));

    auto window_min = [&](std::size_t lo, std::size_t hi) {
        std::optional<Rat> m;
        for (std::size_t n = lo; n < hi; ++n)
            if (d.profile[n] && (!m || *d.profile[n] < *m)) m = *d.profile[n];
        return m;
    };
    std::optional<Rat> head = window_min(0, 5);     // scales 0 and 1
    std::optional<Rat> mid = window_min(5, 25);     // scale 2
    std::optional<Rat> tail = window_min(25, 126);  // scale 3
    ASSERT_TRUE(head && mid && tail);
    EXPECT_EQ(*head, Rat(1, 2));
    EXPECT_EQ(*mid, Rat(0));
    EXPECT_EQ(*tail, Rat(3, 2));
    EXPECT_GT(*tail, *head);
    EXPECT_GT(*tail, *mid);
}
