// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.
// Tolerances and sample counts are fixed here on purpose; loosening them is not
// an option the build should offer.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <exception>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "rdgreen/greens_function.hpp"
#include "rdgreen/oracle.hpp"

using namespace rdgreen;
using C = ComplexScalar;

namespace {

constexpr double kPi = std::numbers::pi;

int g_failures = 0;

double rel_err(C got, C want) {
    double scale = std::max(std::abs(want), 1e-300);
    return std::abs(got - want) / scale;
}

struct Watch {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void report(int num, const char* title, bool pass, const std::string& detail) {
    std::printf("%s  criterion %2d  %-34s %s\n", pass ? "PASS" : "FAIL", num, title,
                detail.c_str());
    std::fflush(stdout);
    if (!pass)
        ++g_failures;
}

std::string fmt(const char* f, double a, double b = -1.0) {
    char buf[128];
    if (b < 0.0)
        std::snprintf(buf, sizeof buf, f, a);
    else
        std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

// runs one criterion body; an escaped exception counts as a failure
template <class F>
void criterion(int num, const char* title, F body) {
    try {
        body();
    } catch (const std::exception& e) {
        report(num, title, false, std::string("threw: ") + e.what());
    }
}

C polar_draw(std::mt19937& rng, std::uniform_real_distribution<double>& uni, double rmax,
             double rmin = 0.0) {
    return std::polar(rmin + (rmax - rmin) * uni(rng), 2.0 * kPi * uni(rng));
}

void c1_free_case() {
    Watch w;
    const C zetas[] = {{-1.0, 0.0}, {-4.0, 0.0}, {-2.0, 3.0}};
    const double rs[] = {0.25, 1.0, 4.0};
    double worst = 0.0;
    for (C zeta : zetas) {
        C a = std::sqrt(-zeta);
        PhysicalParams p{0.0, 0.0, zeta};
        for (double r : rs) {
            EvalPoint x = make_point(0.0, 0.0, r);
            C e1 = std::exp(-a * r) / (8.0 * kPi * a);
            C e2 = std::exp(-a * r) / (4.0 * kPi * r);
            worst = std::max(worst, rel_err(g1(x, p), e1));
            worst = std::max(worst, rel_err(g2(x, p), e2));
        }
    }
    double t = w.seconds();
    report(1, "free-case exactness", worst <= 1e-10 && t < 1.0,
           fmt("max rel %.2e, %.2f s", worst, t));
}

void c2_alpha0_closed() {
    const double betas[] = {0.5, 1.0};
    const C zetas[] = {{-3.0, 0.0}, {-2.0, 1.0}};
    const double rs[] = {0.5, 1.0, 2.0};
    double worst = 0.0;
    int points = 0;
    for (double beta : betas)
        for (C zeta : zetas) {
            if (!(std::abs(zeta) > beta))
                continue; // series form needs |zeta| above the field scale
            PhysicalParams p{0.0, beta, zeta};
            for (double r : rs) {
                EvalPoint x = make_point(0.0, 0.0, r);
                worst = std::max(worst, rel_err(g1(x, p, EvalPath::Force_series), g1(x, p)));
                worst = std::max(worst, rel_err(g2(x, p, EvalPath::Force_series), g2(x, p)));
                ++points;
            }
        }
    report(2, "series vs exponential closed form", worst <= 1e-8 && points == 12,
           fmt("max rel %.2e over 12 points", worst));
}

void c3_oracles() {
    Watch w;
    struct Case {
        double alpha, beta, r;
        C zeta;
    };
    const Case cases[] = {
        {1.0, 2.0, 0.5, {-5.0, 0.0}},
        {1.0, 2.0, 1.0, {-5.0, 0.0}},
        {0.5, 1.0, 0.75, {-4.0, 2.0}},
    };
    double worst_quad = 0.0, worst_mac = 0.0, worst_xx = 0.0;
    for (const Case& c : cases) {
        PhysicalParams p{c.alpha, c.beta, c.zeta};
        EvalPoint x = make_point(0.0, 0.0, c.r);
        C s1 = g1(x, p), s2 = g2(x, p);
        C q1 = quad_g1(c.r, p), q2 = quad_g2(c.r, p);
        C m1 = macdonald_sum_g1(c.r, p), m2 = macdonald_sum_g2(c.r, p);
        worst_quad = std::max({worst_quad, rel_err(s1, q1), rel_err(s2, q2)});
        worst_mac = std::max({worst_mac, rel_err(s1, m1), rel_err(s2, m2)});
        worst_xx = std::max({worst_xx, rel_err(q1, m1), rel_err(q2, m2)});
    }
    double t = w.seconds();
    bool pass = worst_quad <= 1e-6 && worst_mac <= 1e-7 && worst_xx <= 1e-7 && t < 30.0;
    char buf[160];
    std::snprintf(buf, sizeof buf, "quad %.2e, bessel %.2e, cross %.2e, %.2f s", worst_quad,
                  worst_mac, worst_xx, t);
    report(3, "series vs both oracles", pass, buf);
}

void c4_bessel_sum_identity() {
    std::mt19937 rng(711);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double worst = 0.0;
    int tested = 0, attempts = 0;
    while (tested < 20 && ++attempts < 4000) {
        C z{1.0 + 1.5 * uni(rng), -0.5 + uni(rng)};
        double az = std::abs(z);
        C x = 0.06 * az * az * polar_draw(rng, uni, 1.0);
        C y = (3.5 / az) * polar_draw(rng, uni, 1.0);
        MacdonaldSumArgs args{x, y, z};
        if (!macdonald_region_ok(args))
            continue;
        TripleArg v{x / (z * z), y * z / 2.0, -z * z / 4.0};
        TripleArg u{x * z * z / 16.0, -x * y * z / 8.0, z * z / 4.0};
        C pref_small = std::sqrt(kPi / (2.0 * z));
        C pref_big = std::sqrt(kPi * z / 2.0);
        C k1, k2;
        try {
            k1 = pref_small * eval_x_prime({{0.5, 0.0}, {1.5, 0.0}}, v).value -
                 pref_big * eval_x({{1.5, 0.0}, {1.5, 0.0}}, u).value;
            k2 = pref_small * eval_x({{0.5, 0.0}, {0.5, 0.0}}, u).value -
                 pref_big * eval_x_prime({{-0.5, 0.0}, {0.5, 0.0}}, v).value;
        } catch (const NoValidRegion&) {
            continue; // inside the sum's region but not a series region
        }
        worst = std::max(worst, rel_err(macdonald_double_sum_k1(args), k1));
        worst = std::max(worst, rel_err(macdonald_double_sum_k2(args), k2));
        ++tested;
    }
    report(4, "bessel double-sum identity", worst <= 1e-8 && tested == 20,
           fmt("max rel %.2e over 20 samples", worst));
}

void c5_recurrences() {
    std::mt19937 rng(712);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double bases[] = {0.5, 1.5, 2.5};
    double worst_x = 0.0, worst_xp = 0.0;
    for (int i = 0; i < 100; ++i) {
        C a{bases[i % 3] + 0.2 * (uni(rng) - 0.5), 0.0};
        C b{bases[(i / 3) % 3] + 0.2 * (uni(rng) - 0.5), 0.0};
        TripleArg z{polar_draw(rng, uni, 0.5), polar_draw(rng, uni, 0.5),
                    polar_draw(rng, uni, 0.5)};
        C lhs = eval_x({a, b}, z).value -
                z.z2 / (a * b) * eval_x({a + 1.0, b + 1.0}, z).value;
        SDSpec spec;
        spec.den = {{a, 2, 1}, {b, 1, 0}};
        C rhs = srivastava_daoust(spec, z.z1, z.z3).value;
        double scale = 1.0 + std::abs(eval_x({a, b}, z).value);
        worst_x = std::max(worst_x, std::abs(lhs - rhs) / scale);
    }
    int tested = 0, attempts = 0;
    while (tested < 100 && ++attempts < 4000) {
        C a{bases[tested % 3] + 0.2 * (uni(rng) - 0.5), 0.0};
        C b{bases[(tested / 3) % 3] + 0.2 * (uni(rng) - 0.5), 0.0};
        TripleArg z{polar_draw(rng, uni, 0.24, 0.01), polar_draw(rng, uni, 1.2),
                    polar_draw(rng, uni, 0.5)};
        C x_ab, x_next;
        try {
            x_ab = eval_x_prime({a, b}, z).value;
            x_next = eval_x_prime({a + 1.0, b + 1.0}, z).value;
        } catch (const NoValidRegion&) {
            continue;
        }
        C lhs = x_ab - (a / b) * z.z1 * z.z2 * x_next;
        C rhs = horn_h10(a, b, z.z1, z.z3).value;
        worst_xp = std::max(worst_xp, std::abs(lhs - rhs) / (1.0 + std::abs(x_ab)));
        ++tested;
    }
    bool pass = worst_x <= 1e-9 && worst_xp <= 1e-9 && tested == 100;
    report(5, "contiguous-parameter recurrences", pass,
           fmt("max scaled dev %.2e / %.2e", worst_x, worst_xp));
}

void c6_h10_reductions() {
    std::mt19937 rng(713);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        C z1 = polar_draw(rng, uni, 0.24, 0.01);
        C z2 = polar_draw(rng, uni, 3.0);
        C rt = std::sqrt(z1);
        C closed_a{0.0, 0.0}, closed_b{0.0, 0.0};
        for (int s = -1; s <= 1; s += 2) {
            C sigma{double(s), 0.0};
            C branch = 1.0 + 2.0 * sigma * rt;
            C f = hyp0f1({1.5, 0.0}, -z2 * branch).value;
            closed_a += sigma * std::sqrt(branch) / (2.0 * rt) * f;
            closed_b += std::sqrt(branch) / 2.0 * f;
        }
        worst = std::max(worst, rel_err(horn_h10({0.5, 0.0}, {1.5, 0.0}, z1, z2).value, closed_a));
        worst = std::max(worst, rel_err(horn_h10({-0.5, 0.0}, {0.5, 0.0}, z1, z2).value, closed_b));
    }
    report(6, "square-root reductions", worst <= 1e-10, fmt("max rel %.2e over 100 samples", worst));
}

void c7_origin_values() {
    std::mt19937 rng(714);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double worst = 0.0;
    int tested = 0, attempts = 0;
    while (tested < 20 && ++attempts < 4000) {
        double alpha = 0.2 + 1.3 * uni(rng);
        double beta = 0.3 + 1.7 * uni(rng);
        double sigma = sigma_threshold(alpha, beta);
        C zeta = uni(rng) < 0.5 ? C{-sigma * (1.3 + 2.0 * uni(rng)), 0.0}
                                : C{-sigma * (1.3 + 2.0 * uni(rng)), sigma * (uni(rng) - 0.5)};
        PhysicalParams p{alpha, beta, zeta};
        C s1, s2;
        try {
            s1 = g1_at_origin(p, EvalPath::Force_series);
            s2 = g2_ren_at_origin(p, EvalPath::Force_series);
        } catch (const NoValidRegion&) {
            continue;
        }
        worst = std::max(worst, rel_err(s1, g1_at_origin(p)));
        worst = std::max(worst, rel_err(s2, g2_ren_at_origin(p)));
        ++tested;
    }
    report(7, "origin series vs artanh forms", worst <= 1e-10 && tested == 20,
           fmt("max rel %.2e over 20 samples", worst));
}

void c8_offdiagonal_origin_limit() {
    struct Case {
        double alpha, beta;
        C zeta;
        double x1, x2, x3;
    };
    // weak fields; the residual scales like |transverse part| sqrt|zeta| r / 8pi,
    // so |zeta| stays below ~4e-4 to leave headroom under the absolute bound
    const Case cases[] = {
        {0.010, 1e-4, {-3.0e-4, 0.0}, 6e-4, -8e-4, 0.0},
        {0.020, 2e-4, {-2.5e-4, 0.0}, 1e-3, 0.0, 0.0},
        {0.005, 5e-5, {-2.0e-4, 0.0}, 0.0, 1e-3, 0.0},
        {0.010, 2e-4, {-3.0e-4, 0.0}, 4.8e-4, 6.4e-4, 6e-4},
        {0.015, 1e-4, {-4.0e-4, 0.0}, 3e-4, 4e-4, std::sqrt(1e-6 - 9e-8 - 1.6e-7)},
    };
    double worst = 0.0;
    for (const Case& c : cases) {
        PhysicalParams p{c.alpha, c.beta, c.zeta};
        EvalPoint x = make_point(c.x1, c.x2, c.x3);
        for (int sign = -1; sign <= 1; sign += 2) {
            C limit{-x.x1 / (8.0 * kPi * x.r), -sign * x.x2 / (8.0 * kPi * x.r)};
            worst = std::max(worst, std::abs(dpm_g1(x, p, sign) - limit));
        }
    }
    report(8, "off-diagonal origin limit", worst <= 1e-6, fmt("max abs %.2e at r = 1e-3", worst));
}

void c9_representation_equivalence() {
    const SeriesParams x_params[] = {
        {{0.5, 0.0}, {0.5, 0.0}}, {{1.5, 0.0}, {1.5, 0.0}},
        {{0.5, 0.0}, {1.5, 0.0}}, {{2.5, 0.0}, {0.9, 0.0}}};
    const C z1s[] = {std::polar(0.05, 0.3), std::polar(0.6, 2.1)};
    const C z2s[] = {std::polar(0.12, -0.8), std::polar(1.1, 1.9)};
    const C z3s[] = {std::polar(0.3, 0.5), std::polar(1.8, -2.4)};
    double worst = 0.0;
    for (const SeriesParams& p : x_params)
        for (C z1 : z1s)
            for (C z2 : z2s)
                for (C z3 : z3s) {
                    TripleArg z{z1, z2, z3};
                    C v1 = eval_x(p, z, RepChoice::X1).value;
                    C v2 = eval_x(p, z, RepChoice::X2).value;
                    C v3 = eval_x(p, z, RepChoice::X3).value;
                    worst = std::max({worst, rel_err(v1, v2), rel_err(v1, v3), rel_err(v2, v3)});
                }

    const SeriesParams xp_params[] = {
        {{0.5, 0.0}, {1.5, 0.0}}, {{-0.5, 0.0}, {0.5, 0.0}},
        {{-0.5, 0.0}, {1.5, 0.0}}, {{0.35, 0.0}, {0.9, 0.0}}};
    const C w1s[] = {std::polar(0.04, 0.9), std::polar(0.09, -2.0)};
    const C w2s[] = {std::polar(0.3, 0.0), std::polar(1.2, 2.2)};
    const C w3s[] = {std::polar(0.25, -1.1), std::polar(0.5, 0.7)};
    for (const SeriesParams& p : xp_params)
        for (C z1 : w1s)
            for (C z2 : w2s)
                for (C z3 : w3s) {
                    TripleArg z{z1, z2, z3};
                    XpRegionFlags f = classify_xprime_region(z, p);
                    if (!(f.xp1 && f.xp2 && f.xp3))
                        continue; // grid is built to land in the triple intersection
                    C v1 = eval_x_prime(p, z, RepChoice::Xp1).value;
                    C v2 = eval_x_prime(p, z, RepChoice::Xp2).value;
                    C v3 = eval_x_prime(p, z, RepChoice::Xp3).value;
                    worst = std::max({worst, rel_err(v1, v2), rel_err(v1, v3), rel_err(v2, v3)});
                }
    report(9, "representation equivalence", worst <= 1e-9, fmt("max pairwise rel %.2e", worst));
}

void c10_derivatives() {
    std::mt19937 rng(715);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double h = 1e-5;
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        SeriesParams p{{0.4 + uni(rng), 0.0}, {0.4 + uni(rng), 0.0}};
        TripleArg z{polar_draw(rng, uni, 0.5), polar_draw(rng, uni, 0.5),
                    polar_draw(rng, uni, 0.5)};
        auto fd = [&](int which) {
            TripleArg zp = z, zm = z;
            (which == 1 ? zp.z1 : which == 2 ? zp.z2 : zp.z3) += h;
            (which == 1 ? zm.z1 : which == 2 ? zm.z2 : zm.z3) -= h;
            return (eval_x(p, zp).value - eval_x(p, zm).value) / (2.0 * h);
        };
        worst = std::max(worst, rel_err(dx_d1(p, z), fd(1)));
        worst = std::max(worst, rel_err(dx_d2(p, z).value, fd(2)));
        worst = std::max(worst, rel_err(dx_d3(p, z), fd(3)));
    }
    int tested = 0, attempts = 0;
    while (tested < 20 && ++attempts < 2000) {
        SeriesParams p{{0.3 + 0.5 * uni(rng), 0.0}, {0.4 + uni(rng), 0.0}};
        TripleArg z{polar_draw(rng, uni, 0.09, 0.01), polar_draw(rng, uni, 1.0),
                    polar_draw(rng, uni, 0.4)};
        try {
            TripleArg zp = z, zm = z;
            zp.z3 += h;
            zm.z3 -= h;
            C fd = (eval_x_prime(p, zp).value - eval_x_prime(p, zm).value) / (2.0 * h);
            worst = std::max(worst, rel_err(dxp_d3(p, z), fd));
        } catch (const NoValidRegion&) {
            continue;
        }
        ++tested;
    }
    report(10, "derivative identities vs differences", worst <= 1e-6 && tested == 20,
           fmt("max rel %.2e", worst));
}

void c11_properties() {
    double worst = 0.0;
    bool zeros_ok = true;

    // reality below the spectrum edge
    const std::pair<double, double> fields[] = {{1.0, 2.0}, {0.5, 1.0}, {2.0, 0.8}, {0.0, 1.5}};
    const double rs[] = {0.3, 1.0, 2.5};
    for (auto [alpha, beta] : fields)
        for (double mult : {1.5, 3.0})
            for (double r : rs) {
                double sigma = sigma_threshold(alpha, beta);
                PhysicalParams p{alpha, beta, {-sigma * mult, 0.0}};
                EvalPoint x = make_point(0.6 * r, 0.48 * r, 0.64 * r);
                C v1 = g1(x, p), v2 = g2(x, p);
                worst = std::max(worst, std::abs(v1.imag()) / std::abs(v1));
                worst = std::max(worst, std::abs(v2.imag()) / std::abs(v2));
                // g21 = -conj(g12) for real zeta
                if (alpha > 0.0) {
                    GreenMatrix m = green_matrix(x, p);
                    worst = std::max(worst, rel_err(m.g21(), -std::conj(m.g12())));
                }
            }

    // Schwarz reflection across the real axis
    for (auto [alpha, beta] : {std::pair{1.0, 2.0}, std::pair{0.6, 1.1}})
        for (double im : {0.8, 2.2})
            for (double r : {0.5, 1.5}) {
                double sigma = sigma_threshold(alpha, beta);
                C zeta{-1.6 * sigma, im};
                PhysicalParams p{alpha, beta, zeta};
                PhysicalParams pc{alpha, beta, std::conj(zeta)};
                EvalPoint x = make_point(0.6 * r, 0.48 * r, 0.64 * r);
                worst = std::max(worst, rel_err(g1(x, pc), std::conj(g1(x, p))));
                worst = std::max(worst, rel_err(g2(x, pc), std::conj(g2(x, p))));
                worst = std::max(worst,
                                 rel_err(dpm_g1(x, pc, +1), std::conj(dpm_g1(x, p, -1))));
            }

    // exact diagonality with the linear coupling off
    for (double beta : {1.0, 2.0})
        for (C zeta : {C{-3.0, 0.0}, C{-2.0, 1.0}})
            for (double r : {0.5, 1.5}) {
                PhysicalParams p{0.0, beta, zeta};
                GreenMatrix m = green_matrix(make_point(0.6 * r, 0.48 * r, 0.64 * r), p);
                zeros_ok = zeros_ok && m.g12() == C{0.0, 0.0} && m.g21() == C{0.0, 0.0};
            }

    report(11, "symmetry property grid", worst <= 1e-10 && zeros_ok,
           fmt("max rel %.2e, exact zeros %.0f", worst, zeros_ok ? 1.0 : 0.0));
}

} // namespace

int main() {
    Watch total;
    criterion(1, "free-case exactness", c1_free_case);
    criterion(2, "series vs exponential closed form", c2_alpha0_closed);
    criterion(3, "series vs both oracles", c3_oracles);
    criterion(4, "bessel double-sum identity", c4_bessel_sum_identity);
    criterion(5, "contiguous-parameter recurrences", c5_recurrences);
    criterion(6, "square-root reductions", c6_h10_reductions);
    criterion(7, "origin series vs artanh forms", c7_origin_values);
    criterion(8, "off-diagonal origin limit", c8_offdiagonal_origin_limit);
    criterion(9, "representation equivalence", c9_representation_equivalence);
    criterion(10, "derivative identities vs differences", c10_derivatives);
    criterion(11, "symmetry property grid", c11_properties);
    double t = total.seconds();
    bool time_ok = t < 300.0;
    std::printf("%s  total runtime %.1f s (budget 300 s)\n", time_ok ? "PASS" : "FAIL", t);
    if (!time_ok)
        ++g_failures;
    std::printf("%d of 12 gates failed\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
