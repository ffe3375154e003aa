#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rdgreen/xy_series.hpp"

#include <cmath>
#include <random>

using namespace rdgreen;
using C = ComplexScalar;

static double rel_err(C got, C want) {
    double scale = std::max(std::abs(want), 1e-300);
    return std::abs(got - want) / scale;
}

TEST_CASE("x pinned values, all representations agree") {
    // reference values computed with 50-digit arithmetic
    struct Pin {
        SeriesParams p;
        TripleArg z;
        C want;
    };
    const Pin pins[] = {
        {{{1.5, 0.0}, {1.5, 0.0}},
         {{0.3, -0.1}, {0.8, 0.2}, {-1.1, 0.4}},
         {0.6804539044563950821573, 0.2755948595565375977157}},
        {{{0.5, 0.0}, {0.5, 0.0}},
         {{0.02, 0.01}, {-0.3, 0.0}, {1.2, -0.5}},
         {2.225353175155611631731, -1.393004603873018389055}},
        {{{2.5, 0.0}, {1.5, 0.0}},
         {{0.1, 0.0}, {0.5, 0.0}, {-2.0, 0.0}},
         {0.4797703098953338573364, 0.0}},
    };
    for (const auto& pin : pins) {
        for (RepChoice rep : {RepChoice::Auto, RepChoice::X1, RepChoice::X2, RepChoice::X3}) {
            auto r = eval_x(pin.p, pin.z, rep);
            CHECK(rel_err(r.value, pin.want) < 1e-11);
        }
    }
}

TEST_CASE("x representation equivalence on random samples") {
    std::mt19937 rng(20250819);
    std::uniform_real_distribution<double> ur(-1.0, 1.0), up(0.3, 2.7);
    int done = 0;
    for (int i = 0; i < 40; ++i) {
        SeriesParams p{{up(rng) + 0.001, 0.0}, {up(rng) + 0.001, 0.0}};
        TripleArg z{{1.5 * ur(rng), 1.5 * ur(rng)},
                    {1.5 * ur(rng), 1.5 * ur(rng)},
                    {2.0 * ur(rng), 2.0 * ur(rng)}};
        auto v1 = eval_x(p, z, RepChoice::X1);
        auto v2 = eval_x(p, z, RepChoice::X2);
        auto v3 = eval_x(p, z, RepChoice::X3);
        CHECK(rel_err(v1.value, v2.value) < 1e-10);
        CHECK(rel_err(v2.value, v3.value) < 1e-10);
        ++done;
    }
    CHECK(done == 40);
}

TEST_CASE("x_prime pinned values across admissible representations") {
    SeriesParams p1{{0.5, 0.0}, {1.5, 0.0}};
    TripleArg z1{{0.04, 0.0}, {1.25, 0.0}, {-0.3125, 0.0}};
    C want1{1.715969379946121749716, 0.0};
    for (RepChoice rep : {RepChoice::Auto, RepChoice::Xp1, RepChoice::Xp2, RepChoice::Xp3}) {
        auto r = eval_x_prime(p1, z1, rep);
        CHECK(rel_err(r.value, want1) < 1e-11);
    }

    SeriesParams p2{{-0.5, 0.0}, {0.5, 0.0}};
    TripleArg z2{{0.0125, 0.009}, {1.0, -0.5}, {-0.5, 0.3}};
    C want2{1.324184791832136366951, -0.2414378241264732756133};
    for (RepChoice rep : {RepChoice::Auto, RepChoice::Xp1, RepChoice::Xp2, RepChoice::Xp3}) {
        auto r = eval_x_prime(p2, z2, rep);
        CHECK(rel_err(r.value, want2) < 1e-11);
    }

    // |z2| > 2 rules out the first representation but not the other two
    SeriesParams p3{{0.5, 0.0}, {1.5, 0.0}};
    TripleArg z3{{0.05, 0.0}, {2.2, 0.0}, {1.1, 0.0}};
    C want3{-0.389235964065830217254, 0.0};
    CHECK(rel_err(eval_x_prime(p3, z3, RepChoice::Auto).value, want3) < 1e-11);
    CHECK(rel_err(eval_x_prime(p3, z3, RepChoice::Xp2).value, want3) < 1e-11);
    CHECK(rel_err(eval_x_prime(p3, z3, RepChoice::Xp3).value, want3) < 1e-11);
    CHECK_THROWS_AS(eval_x_prime(p3, z3, RepChoice::Xp1), OutOfRegion);
}

TEST_CASE("x_prime representation equivalence on random samples") {
    std::mt19937 rng(99173);
    std::uniform_real_distribution<double> ur(-1.0, 1.0);
    int done = 0;
    for (int i = 0; i < 60 && done < 25; ++i) {
        SeriesParams p{{0.5 * ur(rng) + 0.51, 0.0}, {0.8 + 0.5 * ur(rng), 0.0}};
        TripleArg z{{0.18 * ur(rng), 0.18 * ur(rng)},
                    {0.9 * ur(rng), 0.9 * ur(rng)},
                    {1.5 * ur(rng), 1.5 * ur(rng)}};
        auto f = classify_xprime_region(z, p);
        if (!(f.xp1 && f.xp2 && f.xp3))
            continue;
        auto v1 = eval_x_prime(p, z, RepChoice::Xp1);
        auto v2 = eval_x_prime(p, z, RepChoice::Xp2);
        auto v3 = eval_x_prime(p, z, RepChoice::Xp3);
        CHECK(rel_err(v1.value, v2.value) < 1e-10);
        CHECK(rel_err(v2.value, v3.value) < 1e-10);
        ++done;
    }
    CHECK(done == 25);
}

TEST_CASE("region classification") {
    SeriesParams p{{0.5, 0.0}, {1.5, 0.0}}; // a - b = -1 < 0, a - b - 1/2 < 0
    // interior point
    auto f = classify_xprime_region({{0.1, 0.0}, {1.0, 0.0}, {9.9, 0.0}}, p);
    CHECK(f.xp1);
    CHECK(f.xp2);
    CHECK(f.xp3);
    CHECK(!f.xp1_boundary);
    // |z1| = 1/4 exactly: admitted through the boundary rule
    f = classify_xprime_region({{0.25, 0.0}, {1.0, 0.0}, {0.0, 0.0}}, p);
    CHECK(f.xp1);
    CHECK(f.xp1_boundary);
    CHECK(!f.xp2); // |z1| < 1/4 strict there
    // boundary rejected when Re(a-b-1/2) >= 0
    SeriesParams phi{{1.6, 0.0}, {0.5, 0.0}};
    f = classify_xprime_region({{0.25, 0.0}, {1.0, 0.0}, {0.0, 0.0}}, phi);
    CHECK(!f.xp1);
    // |z2| >= 2 kills xp1 only
    f = classify_xprime_region({{0.1, 0.0}, {2.5, 0.0}, {0.0, 0.0}}, p);
    CHECK(!f.xp1);
    CHECK(f.xp2);
    CHECK(f.xp3);
    // large |z1 z2| kills xp2 and xp3
    f = classify_xprime_region({{0.2, 0.0}, {4.9, 0.0}, {0.0, 0.0}}, p);
    CHECK(!f.xp2);
    CHECK(!f.xp3);
    // nothing admissible far outside
    f = classify_xprime_region({{0.3, 0.0}, {4.0, 0.0}, {0.0, 0.0}}, p);
    CHECK(!f.any());
    CHECK_THROWS_AS(
        eval_x_prime(p, {{0.3, 0.0}, {4.0, 0.0}, {0.0, 0.0}}, RepChoice::Auto),
        NoValidRegion);
}

TEST_CASE("x recurrence ties shifted parameters to the two-variable series") {
    // X(a,b;z) - z2/(a b) X(a+1,b+1;z) = sum_{r,s} z1^r z3^s/((a)_{2r+s} (b)_r r! s!)
    std::mt19937 rng(5150);
    std::uniform_real_distribution<double> ur(-1.0, 1.0), up(0.4, 2.4);
    for (int i = 0; i < 20; ++i) {
        SeriesParams p{{up(rng), 0.0}, {up(rng), 0.0}};
        TripleArg z{{ur(rng), ur(rng)}, {ur(rng), ur(rng)}, {1.5 * ur(rng), 1.5 * ur(rng)}};
        C lhs = eval_x(p, z).value -
                z.z2 / (p.a * p.b) * eval_x({p.a + 1.0, p.b + 1.0}, z).value;
        SDSpec spec;
        spec.den = {{p.a, 2, 1}, {p.b, 1, 0}};
        C rhs = srivastava_daoust(spec, z.z1, z.z3).value;
        CHECK(rel_err(lhs, rhs) < 1e-10);
    }
}

TEST_CASE("x_prime recurrence ties shifted parameters to horn_h10") {
    // X'(a,b;z) - (a/b) z1 z2 X'(a+1,b+1;z) = H10(a;b;z1,z3)
    std::mt19937 rng(31337);
    std::uniform_real_distribution<double> ur(-1.0, 1.0);
    int done = 0;
    for (int i = 0; i < 60 && done < 20; ++i) {
        SeriesParams p{{0.5 * ur(rng) + 0.4, 0.0}, {1.0 + 0.6 * ur(rng), 0.0}};
        TripleArg z{{0.2 * ur(rng), 0.2 * ur(rng)},
                    {0.8 * ur(rng), 0.8 * ur(rng)},
                    {1.2 * ur(rng), 1.2 * ur(rng)}};
        SeriesParams up{p.a + 1.0, p.b + 1.0};
        if (!classify_xprime_region(z, p).any() || !classify_xprime_region(z, up).any())
            continue;
        C lhs = eval_x_prime(p, z).value -
                p.a / p.b * z.z1 * z.z2 * eval_x_prime(up, z).value;
        C rhs = horn_h10(p.a, p.b, z.z1, z.z3).value;
        CHECK(rel_err(lhs, rhs) < 1e-10);
        ++done;
    }
    CHECK(done == 20);
}

TEST_CASE("confluence limit of x_prime") {
    // X'(a,b; e w1, w2/e, z3) approaches the confluent two-variable limit as e -> 0
    SeriesParams p{{0.5, 0.0}, {1.5, 0.0}};
    C w12{0.3, -0.2}, z3{2.0, 1.0};
    C limit = confluence_xprime(p, w12, z3);
    CHECK(rel_err(limit, {-1.307264398808499322658, -0.481713472923785122821}) < 1e-11);
    double eps = 1e-6;
    auto r = eval_x_prime(p, {w12 * eps, C{1.0 / eps, 0.0}, z3});
    CHECK(rel_err(r.value, limit) < 1e-4);
}

TEST_CASE("derivative identities against central differences") {
    SeriesParams p{{0.5, 0.0}, {0.5, 0.0}};
    TripleArg z{{0.3, -0.1}, {0.8, 0.2}, {-1.1, 0.4}};
    double h = 1e-5;

    auto xat = [&](C z1, C z2, C z3) { return eval_x(p, {z1, z2, z3}).value; };
    C fd1 = (xat(z.z1 + h, z.z2, z.z3) - xat(z.z1 - h, z.z2, z.z3)) / (2.0 * h);
    CHECK(rel_err(dx_d1(p, z), fd1) < 1e-7);
    C fd2 = (xat(z.z1, z.z2 + h, z.z3) - xat(z.z1, z.z2 - h, z.z3)) / (2.0 * h);
    CHECK(rel_err(dx_d2(p, z).value, fd2) < 1e-7);
    C fd3 = (xat(z.z1, z.z2, z.z3 + h) - xat(z.z1, z.z2, z.z3 - h)) / (2.0 * h);
    CHECK(rel_err(dx_d3(p, z), fd3) < 1e-7);

    SeriesParams pp{{0.5, 0.0}, {1.5, 0.0}};
    TripleArg zp{{0.04, 0.0}, {1.25, 0.0}, {-0.3125, 0.0}};
    auto xpat = [&](C z3) { return eval_x_prime(pp, {zp.z1, zp.z2, z3}).value; };
    C fdp3 = (xpat(zp.z3 + h) - xpat(zp.z3 - h)) / (2.0 * h);
    CHECK(rel_err(dxp_d3(pp, zp), fdp3) < 1e-7);
    CHECK_THROWS_AS(dxp_d3({{1.0, 0.0}, {1.5, 0.0}}, zp), ParameterPole);
}

TEST_CASE("partial differential equation satisfied by x") {
    // (d1 + z2 d1d2 - d2d3) X = 0
    SeriesParams p{{0.7, 0.0}, {1.3, 0.0}};
    TripleArg z{{0.4, 0.2}, {-0.6, 0.3}, {0.9, -0.5}};
    C t1 = dx_d1(p, z);
    C t12 = dx_d2({p.a + 2.0, p.b + 1.0}, z).value / (p.a * p.b * (p.a + 1.0));
    C t23 = dx_d2({p.a + 1.0, p.b}, z).value / p.a;
    C resid = t1 + z.z2 * t12 - t23;
    CHECK(std::abs(resid) < 1e-10 * std::max(1.0, std::abs(t1)));
}

TEST_CASE("parameter validation") {
    TripleArg z{{0.1, 0.0}, {0.1, 0.0}, {0.1, 0.0}};
    CHECK_THROWS_AS(eval_x({{0.0, 0.0}, {0.5, 0.0}}, z), ParameterPole);
    CHECK_THROWS_AS(eval_x({{0.5, 0.0}, {-2.0, 0.0}}, z), ParameterPole);
    CHECK_THROWS_AS(eval_x_prime({{2.0, 0.0}, {0.5, 0.0}}, z), ParameterPole);
    CHECK_THROWS_AS(eval_x_prime({{0.5, 0.0}, {0.0, 0.0}}, z), ParameterPole);
    // mismatched representation families
    CHECK_THROWS_AS(eval_x({{0.5, 0.0}, {0.5, 0.0}}, z, RepChoice::Xp1), DomainError);
    CHECK_THROWS_AS(eval_x_prime({{0.5, 0.0}, {1.5, 0.0}}, z, RepChoice::X2), DomainError);
}
