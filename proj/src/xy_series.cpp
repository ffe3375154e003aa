#include "rdgreen/xy_series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rdgreen {

namespace {

// Outer-sum driver shared by all representations: coefficients advance by ratio,
// the inner two-variable series is re-evaluated per outer index. The stop rule and
// error bookkeeping mirror the shell engine: three consecutive quiet terms end the
// sum, est_error collects the inner estimates weighted by the outer coefficients.
template <typename RatioF, typename InnerF>
SeriesResult sum_outer(const std::string& name, RatioF ratio, InnerF inner,
                       double tol_rel, long outer_cap) {
    SeriesResult res;
    res.representation = name;
    ComplexScalar coef{1.0, 0.0};
    ComplexScalar sum{0.0, 0.0};
    double err_acc = 0.0;
    int quiet = 0;
    for (long n = 0; n < outer_cap; ++n) {
        if (n > 0)
            coef *= ratio(n - 1);
        SeriesResult in = inner(n);
        ComplexScalar term = coef * in.value;
        sum += term;
        res.terms_used += in.terms_used + 1;
        err_acc += std::abs(coef) * in.est_error;
        double mag = std::abs(term);
        if (mag < tol_rel * (1.0 + std::abs(sum))) {
            if (++quiet >= 3) {
                res.value = sum;
                res.est_error = err_acc + mag;
                return res;
            }
        } else {
            quiet = 0;
        }
    }
    throw NoConvergence(name + ": outer cap reached");
}

void validate_x_params(const SeriesParams& p) {
    if (is_nonpositive_integer(p.a) || is_nonpositive_integer(p.b))
        throw ParameterPole("eval_x: a and b must not be nonpositive integers");
}

void validate_xp_params(const SeriesParams& p) {
    if (p.a.imag() == 0.0 && p.a.real() >= 1.0 && p.a.real() == std::round(p.a.real()))
        throw ParameterPole("eval_x_prime: a must not be a positive integer");
    if (is_nonpositive_integer(p.b))
        throw ParameterPole("eval_x_prime: b must not be a nonpositive integer");
}

} // namespace

XpRegionFlags classify_xprime_region(const TripleArg& z, const SeriesParams& p) {
    const double m1 = std::abs(z.z1);
    const double m2 = std::abs(z.z2);
    const double m12 = std::abs(z.z1 * z.z2);
    XpRegionFlags f;

    if (m2 < 2.0 - kRegionMargin) {
        if (m1 < 0.25 - kRegionMargin) {
            f.xp1 = true;
        } else if (m1 <= 0.25 + kRegionMargin && (p.a - p.b - 0.5).real() < 0.0) {
            f.xp1 = true;
            f.xp1_boundary = true;
        }
    }

    if (m1 < 0.25 - kRegionMargin) {
        double splus = 0.5 * (1.0 + std::sqrt(1.0 - 4.0 * m1));
        if (m12 < splus - kRegionMargin) {
            f.xp2 = true;
        } else if (m12 <= splus + kRegionMargin && (p.a - p.b).real() < 0.0) {
            f.xp2 = true;
            f.xp2_boundary = true;
        }
    }

    // exists S in (m12, 1) with m1 < S(1-S); the product is maximized at
    // S = 1/2 when allowed, else just above m12
    if (m12 < 1.0 - kRegionMargin) {
        double s = std::max(0.5, m12 + kRegionMargin);
        if (m1 < s * (1.0 - s) - kRegionMargin)
            f.xp3 = true;
    }
    return f;
}

SeriesResult eval_x(const SeriesParams& p, const TripleArg& z, RepChoice rep,
                    double tol_rel, long outer_cap, long shell_cap) {
    validate_x_params(p);
    const ComplexScalar a = p.a, b = p.b;

    if (rep == RepChoice::Auto) {
        // first outer-term ratios as cost proxies; smaller decays faster
        double q1 = std::abs(z.z1 / (a * (a + 1.0) * b));
        double q2 = std::abs(z.z2 / (a * b));
        double q3 = std::abs(z.z3 / a);
        rep = RepChoice::X2;
        double best = q2;
        if (q1 < best) { rep = RepChoice::X1; best = q1; }
        if (q3 < best) { rep = RepChoice::X3; }
    }

    switch (rep) {
    case RepChoice::X1:
        return sum_outer(
            "x1",
            [&](long m) {
                double md = static_cast<double>(m);
                return z.z1 / ((md + 1.0) * (a + 2.0 * md) * (a + 2.0 * md + 1.0) * (b + md));
            },
            [&](long m) {
                double md = static_cast<double>(m);
                SDSpec spec;
                spec.num = {{{1.0, 0.0}, 1, 0}};
                spec.den = {{a + 2.0 * md, 1, 1}, {b + md, 1, 0}};
                return srivastava_daoust(spec, z.z2, z.z3, tol_rel, shell_cap);
            },
            tol_rel, outer_cap);
    case RepChoice::X2:
        return sum_outer(
            "x2",
            [&](long n) {
                double nd = static_cast<double>(n);
                return z.z2 / ((a + nd) * (b + nd));
            },
            [&](long n) {
                double nd = static_cast<double>(n);
                SDSpec spec;
                spec.den = {{a + nd, 2, 1}, {b + nd, 1, 0}};
                return srivastava_daoust(spec, z.z1, z.z3, tol_rel, shell_cap);
            },
            tol_rel, outer_cap);
    case RepChoice::X3:
        return sum_outer(
            "x3",
            [&](long q) {
                double qd = static_cast<double>(q);
                return z.z3 / ((qd + 1.0) * (a + qd));
            },
            [&](long q) {
                double qd = static_cast<double>(q);
                SDSpec spec;
                spec.num = {{{1.0, 0.0}, 0, 1}};
                spec.den = {{a + qd, 2, 1}, {b, 1, 1}};
                return srivastava_daoust(spec, z.z1, z.z2, tol_rel, shell_cap);
            },
            tol_rel, outer_cap);
    default:
        throw DomainError("eval_x: representation belongs to the x_prime family");
    }
}

SeriesResult eval_x_prime(const SeriesParams& p, const TripleArg& z, RepChoice rep,
                          double tol_rel, long outer_cap, long shell_cap) {
    validate_xp_params(p);
    const ComplexScalar a = p.a, b = p.b;
    const XpRegionFlags flags = classify_xprime_region(z, p);

    bool boundary = false;
    if (rep == RepChoice::Auto) {
        if (!flags.any())
            throw NoValidRegion("eval_x_prime: (z1, z2) outside every representation's region");
        const double m1 = std::abs(z.z1);
        const double m12 = std::abs(z.z1 * z.z2);
        double q1 = flags.xp1 ? 4.0 * m1 + (flags.xp1_boundary ? 0.5 : 0.0)
                              : std::numeric_limits<double>::infinity();
        double q2 = std::numeric_limits<double>::infinity();
        if (flags.xp2) {
            double splus = 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - 4.0 * m1)));
            q2 = m12 / splus + (flags.xp2_boundary ? 0.5 : 0.0);
        }
        double q3 = std::numeric_limits<double>::infinity();
        if (flags.xp3) {
            double s = std::max(0.5, m12 + kRegionMargin);
            // proximity to the inner-series region edge, with a mild penalty for
            // the z3-long outer sum
            q3 = std::max(m1 / (s * (1.0 - s)), m12) + std::log1p(std::abs(z.z3)) / 100.0;
        }
        rep = RepChoice::Xp2;
        double best = q2;
        if (q1 < best) { rep = RepChoice::Xp1; best = q1; }
        if (q3 < best) { rep = RepChoice::Xp3; }
    }

    SeriesResult res;
    switch (rep) {
    case RepChoice::Xp1:
        if (!flags.xp1)
            throw OutOfRegion("eval_x_prime: (z1, z2) outside the xp1 region");
        boundary = flags.xp1_boundary;
        res = sum_outer(
            "xp1",
            [&](long n) {
                double nd = static_cast<double>(n);
                return z.z1 * (a + 2.0 * nd) * (a + 2.0 * nd + 1.0) / ((nd + 1.0) * (b + nd));
            },
            [&](long n) {
                double nd = static_cast<double>(n);
                return humbert_xi2({1.0, 0.0}, {-nd, 0.0}, 1.0 - a - 2.0 * nd,
                                   z.z2, -z.z3, tol_rel, shell_cap);
            },
            tol_rel, outer_cap);
        break;
    case RepChoice::Xp2:
        if (!flags.xp2)
            throw OutOfRegion("eval_x_prime: (z1, z2) outside the xp2 region");
        boundary = flags.xp2_boundary;
        res = sum_outer(
            "xp2",
            [&](long n) {
                double nd = static_cast<double>(n);
                return z.z1 * z.z2 * (a + nd) / (b + nd);
            },
            [&](long n) {
                double nd = static_cast<double>(n);
                return horn_h10(a + nd, b + nd, z.z1, z.z3, tol_rel, shell_cap);
            },
            tol_rel, outer_cap);
        break;
    case RepChoice::Xp3:
        if (!flags.xp3)
            throw OutOfRegion("eval_x_prime: (z1, z2) outside the xp3 region");
        res = sum_outer(
            "xp3",
            [&](long n) {
                double nd = static_cast<double>(n);
                return -z.z3 / ((nd + 1.0) * (1.0 - a + nd));
            },
            [&](long n) {
                double nd = static_cast<double>(n);
                return horn_h3(a - nd, {1.0, 0.0}, b, z.z1, z.z1 * z.z2, tol_rel, shell_cap);
            },
            tol_rel, outer_cap);
        break;
    default:
        throw DomainError("eval_x_prime: representation belongs to the x family");
    }
    res.slow_convergence = boundary;
    return res;
}

ComplexScalar dx_d1(const SeriesParams& p, const TripleArg& z, double tol_rel) {
    validate_x_params(p);
    SeriesParams up{p.a + 2.0, p.b + 1.0};
    return eval_x(up, z, RepChoice::Auto, tol_rel).value / (p.a * p.b * (p.a + 1.0));
}

SeriesResult dx_d2(const SeriesParams& p, const TripleArg& z, double tol_rel,
                   long outer_cap, long shell_cap) {
    validate_x_params(p);
    const ComplexScalar a = p.a, b = p.b;
    SeriesResult res;
    res.representation = "dx_d2";
    // sum_{n>=1} n z2^{n-1}/((a)_n (b)_n) F_n(z1, z3), with F_n the same inner
    // series as the z2-outer representation at shifted parameters
    ComplexScalar coef = 1.0 / (a * b); // n = 1 coefficient
    ComplexScalar sum{0.0, 0.0};
    double err_acc = 0.0;
    int quiet = 0;
    for (long n = 1; n <= outer_cap; ++n) {
        if (n > 1) {
            double nd = static_cast<double>(n - 1);
            coef *= (nd + 1.0) / nd * z.z2 / ((a + nd) * (b + nd));
        }
        double nd = static_cast<double>(n);
        SDSpec spec;
        spec.den = {{a + nd, 2, 1}, {b + nd, 1, 0}};
        SeriesResult in = srivastava_daoust(spec, z.z1, z.z3, tol_rel, shell_cap);
        ComplexScalar term = coef * in.value;
        sum += term;
        res.terms_used += in.terms_used + 1;
        err_acc += std::abs(coef) * in.est_error;
        double mag = std::abs(term);
        if (mag < tol_rel * (1.0 + std::abs(sum))) {
            if (++quiet >= 3) {
                res.value = sum;
                res.est_error = err_acc + mag;
                return res;
            }
        } else {
            quiet = 0;
        }
    }
    throw NoConvergence("dx_d2: outer cap reached");
}

ComplexScalar dx_d3(const SeriesParams& p, const TripleArg& z, double tol_rel) {
    validate_x_params(p);
    SeriesParams up{p.a + 1.0, p.b};
    return eval_x(up, z, RepChoice::Auto, tol_rel).value / p.a;
}

ComplexScalar dxp_d3(const SeriesParams& p, const TripleArg& z, double tol_rel) {
    validate_xp_params(p);
    if (p.a == ComplexScalar{1.0, 0.0})
        throw ParameterPole("dxp_d3: a = 1");
    SeriesParams down{p.a - 1.0, p.b};
    return eval_x_prime(down, z, RepChoice::Auto, tol_rel).value / (p.a - 1.0);
}

ComplexScalar confluence_xprime(const SeriesParams& p, ComplexScalar z1z2_product, ComplexScalar z3,
                                double tol_rel) {
    validate_xp_params(p);
    return horn_h3_confluent(p.a, {1.0, 0.0}, p.b, z1z2_product, z3, tol_rel).value;
}

} // namespace rdgreen
