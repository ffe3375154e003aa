#include "rdgreen/series_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rdgreen {

bool is_nonpositive_integer(ComplexScalar z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real());
}

static bool is_positive_integer(ComplexScalar z) {
    return z.imag() == 0.0 && z.real() >= 1.0 && z.real() == std::round(z.real());
}

ComplexScalar gamma_complex(ComplexScalar z) {
    // Lanczos, g = 7, 9 coefficients.
    static const double p[9] = {
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    };
    if (is_nonpositive_integer(z))
        throw DomainError("gamma: pole at nonpositive integer");
    if (z.real() < 0.5) {
        // reflection: Gamma(z) Gamma(1-z) = pi/sin(pi z)
        const double pi = 3.14159265358979323846;
        return pi / (std::sin(pi * z) * gamma_complex(1.0 - z));
    }
    ComplexScalar zz = z - 1.0;
    ComplexScalar acc = p[0];
    for (int i = 1; i < 9; ++i)
        acc += p[i] / (zz + static_cast<double>(i));
    ComplexScalar t = zz + 7.5;
    const double sqrt2pi = 2.5066282746310002;
    return sqrt2pi * std::pow(t, zz + 0.5) * std::exp(-t) * acc;
}

ComplexScalar pochhammer(ComplexScalar a, long k) {
    if (k == 0)
        return {1.0, 0.0};
    if (k > 0) {
        ComplexScalar v{1.0, 0.0};
        for (long j = 0; j < k; ++j)
            v *= a + static_cast<double>(j);
        return v; // exact 0 if a hit a nonpositive integer in range
    }
    // (a)_{-n} = 1/((a-1)...(a-n)); a in {1,...,n} makes a factor vanish -> infinite value
    ComplexScalar v{1.0, 0.0};
    for (long j = 1; j <= -k; ++j) {
        ComplexScalar f = a - static_cast<double>(j);
        if (f == ComplexScalar{0.0, 0.0})
            throw DomainError("pochhammer: (a)_k infinite for positive integer a <= -k");
        v *= f;
    }
    return 1.0 / v;
}

ComplexScalar pochhammer_recip(ComplexScalar a, long k) {
    if (k == 0)
        return {1.0, 0.0};
    if (k > 0) {
        ComplexScalar v{1.0, 0.0};
        for (long j = 0; j < k; ++j)
            v *= a + static_cast<double>(j);
        if (v == ComplexScalar{0.0, 0.0})
            throw DomainError("pochhammer_recip: 1/(a)_k infinite, (a)_k = 0");
        return 1.0 / v;
    }
    // 1/(a)_{-n} = (a-1)...(a-n); zero factor means (a)_k was infinite -> reciprocal exactly 0
    ComplexScalar v{1.0, 0.0};
    for (long j = 1; j <= -k; ++j)
        v *= a - static_cast<double>(j);
    return v;
}

double reciprocal_factorial(long n) {
    if (n < 0)
        return 0.0;
    double v = 1.0;
    for (long j = 2; j <= n; ++j)
        v /= static_cast<double>(j);
    return v;
}

SeriesResult hyp0f1(ComplexScalar c, ComplexScalar z, double tol_rel, long term_cap) {
    if (is_nonpositive_integer(c))
        throw ParameterPole("hyp0f1: c is a nonpositive integer");
    SeriesResult res;
    res.representation = "0f1";
    ComplexScalar term{1.0, 0.0};
    ComplexScalar sum{1.0, 0.0};
    int quiet = 0;
    for (long k = 0; k < term_cap; ++k) {
        term *= z / ((c + static_cast<double>(k)) * static_cast<double>(k + 1));
        sum += term;
        ++res.terms_used;
        double mag = std::abs(term);
        res.est_error = mag;
        if (mag < tol_rel * (1.0 + std::abs(sum))) {
            if (++quiet >= 3) {
                res.value = sum;
                return res;
            }
        } else {
            quiet = 0;
        }
    }
    throw NoConvergence("hyp0f1: term cap reached");
}

namespace {

// (p)_{j+w} / (p)_j as a product of |w| linear factors. Throws nothing; a zero
// numerator factor is fine (the running term becomes exactly 0), a zero divisor
// is reported through *ok so the caller can recompute the term from scratch.
ComplexScalar poch_shift_ratio(ComplexScalar p, long j, int w, bool* ok) {
    ComplexScalar r{1.0, 0.0};
    if (w >= 0) {
        for (int i = 0; i < w; ++i)
            r *= p + static_cast<double>(j + i);
    } else {
        for (int i = 1; i <= -w; ++i) {
            ComplexScalar f = p + static_cast<double>(j - i);
            if (f == ComplexScalar{0.0, 0.0}) {
                *ok = false;
                return r;
            }
            r /= f;
        }
    }
    return r;
}

// Running term in mantissa * 2^e2 form. Individual pochhammer groups can pass
// far outside double range while the term itself stays representable, so the
// walk keeps magnitudes normalized instead of trusting raw doubles.
struct ScaledC {
    ComplexScalar m{0.0, 0.0};
    long e2 = 0;

    void normalize() {
        double a = std::abs(m);
        if (a == 0.0 || !std::isfinite(a)) {
            e2 = 0;
            return;
        }
        while (a > 1e150) {
            m *= 0x1p-500;
            e2 += 500;
            a = std::abs(m);
        }
        while (a < 1e-150) {
            m *= 0x1p+500;
            e2 -= 500;
            a = std::abs(m);
        }
    }

    ComplexScalar value() const {
        if (m == ComplexScalar{0.0, 0.0} || e2 == 0)
            return m;
        int e = static_cast<int>(std::clamp(e2, -4000L, 4000L));
        return {std::ldexp(m.real(), e), std::ldexp(m.imag(), e)};
    }
};

// Term of a Srivastava-Daoust style double series at (r, s), from scratch, in
// log space (factor groups alone can overflow a double). Exact zeros from
// numerator pochhammers short-circuit; zero denominators are poles.
ScaledC sd_term_scratch(const SDSpec& spec, ComplexScalar z1, ComplexScalar z2, long r, long s) {
    auto factor_zero = [](ComplexScalar p, long k) {
        // (p)_k = 0 for k > 0 iff p is a nonpositive integer above -k
        return k > 0 && is_nonpositive_integer(p) && p.real() > static_cast<double>(-k);
    };
    if ((r > 0 && z1 == ComplexScalar{0.0, 0.0}) || (s > 0 && z2 == ComplexScalar{0.0, 0.0}))
        return {};
    for (const auto& g : spec.num)
        if (factor_zero(g.param, g.w1 * r + g.w2 * s))
            return {};
    for (const auto& g : spec.den) {
        long k = g.w1 * r + g.w2 * s;
        if (k < 0 && is_nonpositive_integer(g.param + static_cast<double>(k)))
            return {}; // denominator pochhammer infinite -> reciprocal 0
    }

    ComplexScalar lg{0.0, 0.0};
    if (r > 0)
        lg += static_cast<double>(r) * std::log(z1);
    if (s > 0)
        lg += static_cast<double>(s) * std::log(z2);
    lg -= std::lgamma(static_cast<double>(r) + 1.0);
    lg -= std::lgamma(static_cast<double>(s) + 1.0);
    // log (p)_k = sum log(p+j), k >= 0; log (p)_{-n} = -sum log(p-j)
    auto add_poch = [&lg](ComplexScalar p, long k, double sign) {
        if (k >= 0) {
            for (long j = 0; j < k; ++j)
                lg += sign * std::log(p + static_cast<double>(j));
        } else {
            for (long j = 1; j <= -k; ++j) {
                ComplexScalar f = p - static_cast<double>(j);
                if (f == ComplexScalar{0.0, 0.0})
                    throw DomainError("srivastava_daoust: pochhammer pole in term");
                lg -= sign * std::log(f);
            }
        }
    };
    for (const auto& g : spec.num)
        add_poch(g.param, g.w1 * r + g.w2 * s, +1.0);
    for (const auto& g : spec.den) {
        long k = g.w1 * r + g.w2 * s;
        if (k > 0)
            for (long j = 0; j < k; ++j) {
                ComplexScalar f = g.param + static_cast<double>(j);
                if (f == ComplexScalar{0.0, 0.0})
                    throw ParameterPole("srivastava_daoust: zero denominator pochhammer");
                lg -= std::log(f);
            }
        else
            add_poch(g.param, k, -1.0);
    }

    const double ln2 = 0.6931471805599453;
    ScaledC t;
    t.e2 = static_cast<long>(std::floor(lg.real() / ln2));
    double res = lg.real() - static_cast<double>(t.e2) * ln2;
    t.m = std::exp(res) * ComplexScalar{std::cos(lg.imag()), std::sin(lg.imag())};
    return t;
}

} // namespace

SeriesResult srivastava_daoust(const SDSpec& spec, ComplexScalar z1, ComplexScalar z2,
                               double tol_rel, long shell_cap) {
    // Convergence bookkeeping per variable.
    long d1 = 1, d2 = 1;
    for (const auto& g : spec.den) { d1 += g.w1; d2 += g.w2; }
    for (const auto& g : spec.num) { d1 -= g.w1; d2 -= g.w2; }
    for (const auto& g : spec.den)
        if (is_nonpositive_integer(g.param))
            throw ParameterPole("srivastava_daoust: nonpositive-integer denominator parameter");
    auto check_var = [](long delta, double hint, double mag, const char* which) {
        if (delta < 0 && mag > 0.0)
            throw DomainError(std::string("srivastava_daoust: divergent weight bookkeeping in ") + which);
        if (delta == 0 && mag > 0.0) {
            if (hint <= 0.0)
                throw DomainError(std::string("srivastava_daoust: finite-radius variable ") + which +
                                  " needs a radius hint");
            if (mag >= hint - kRegionMargin)
                throw OutOfRegion(std::string("srivastava_daoust: |") + which + "| outside the hinted radius");
        }
    };
    check_var(d1, spec.radius1_hint, std::abs(z1), "z1");
    check_var(d2, spec.radius2_hint, std::abs(z2), "z2");

    SeriesResult res;
    res.representation = "sd";
    if (z1 == ComplexScalar{0.0, 0.0} && z2 == ComplexScalar{0.0, 0.0}) {
        res.value = {1.0, 0.0};
        res.terms_used = 1;
        return res;
    }

    // Triangular shells sigma = r+s. Along a shell the term is advanced from
    // (r, s) to (r+1, s-1); between shells the anchor (0, sigma) is advanced in s.
    // Ratio propagation is O(weights) per step; when a ratio divisor vanishes or
    // the previous term is exactly 0 the term is recomputed from scratch.
    ComplexScalar sum{1.0, 0.0}; // (0,0) term
    ScaledC anchor{{1.0, 0.0}, 0};
    res.terms_used = 1;
    int quiet = 0;
    for (long sigma = 1; sigma <= shell_cap; ++sigma) {
        // advance anchor (0, sigma-1) -> (0, sigma)
        bool ok = true;
        ComplexScalar ratio = z2 / static_cast<double>(sigma);
        for (const auto& g : spec.num)
            ratio *= poch_shift_ratio(g.param, g.w2 * (sigma - 1), g.w2, &ok);
        for (const auto& g : spec.den) {
            bool okd = true;
            ComplexScalar rr = poch_shift_ratio(g.param, g.w2 * (sigma - 1), g.w2, &okd);
            if (!okd) { ok = false; break; }
            if (rr == ComplexScalar{0.0, 0.0}) { ok = false; break; } // denominator grew a zero: pole ahead
            ratio /= rr;
        }
        if (ok && anchor.m != ComplexScalar{0.0, 0.0}) {
            anchor.m *= ratio;
            anchor.normalize();
        } else {
            anchor = sd_term_scratch(spec, z1, z2, 0, sigma);
        }

        ScaledC term = anchor;
        ComplexScalar shell = anchor.value();
        double shell_mag = std::abs(shell);
        for (long r = 0; r < sigma; ++r) {
            // (r, sigma-r) -> (r+1, sigma-r-1)
            long s = sigma - r;
            bool okt = true;
            ComplexScalar rt = z1 * static_cast<double>(s) / (z2 * static_cast<double>(r + 1));
            if (z2 == ComplexScalar{0.0, 0.0}) okt = false;
            for (const auto& g : spec.num) {
                if (!okt) break;
                rt *= poch_shift_ratio(g.param, g.w1 * r + g.w2 * s, g.w1 - g.w2, &okt);
            }
            for (const auto& g : spec.den) {
                if (!okt) break;
                bool okd = true;
                ComplexScalar rr = poch_shift_ratio(g.param, g.w1 * r + g.w2 * s, g.w1 - g.w2, &okd);
                if (!okd || rr == ComplexScalar{0.0, 0.0}) { okt = false; break; }
                rt /= rr;
            }
            if (okt && term.m != ComplexScalar{0.0, 0.0}) {
                term.m *= rt;
                term.normalize();
            } else {
                term = sd_term_scratch(spec, z1, z2, r + 1, s - 1);
            }
            ComplexScalar tv = term.value();
            shell += tv;
            shell_mag += std::abs(tv);
            ++res.terms_used;
        }
        sum += shell;
        res.est_error = std::abs(shell);
        if (!std::isfinite(shell_mag) || !std::isfinite(std::abs(sum)))
            throw NoConvergence("srivastava_daoust: numerical overflow");
        // Stop on the shell-sum magnitude, not the cancellation-prone signed shell,
        // so alternating series are not cut off early by a lucky cancellation.
        if (shell_mag < tol_rel * (1.0 + std::abs(sum))) {
            if (++quiet >= 3) {
                res.value = sum;
                return res;
            }
        } else {
            quiet = 0;
        }
    }
    throw NoConvergence("srivastava_daoust: shell cap reached");
}

// Membership test for the complete Horn-H3 region: exists S in (|z2|, 1) with |z1| < S(1-S).
static bool h3_region_ok(double m1, double m2) {
    if (m2 >= 1.0 - kRegionMargin)
        return false;
    double s = std::max(0.5, m2 + kRegionMargin);
    return m1 < s * (1.0 - s) - kRegionMargin;
}

SeriesResult horn_h3(ComplexScalar a, ComplexScalar b, ComplexScalar c,
                     ComplexScalar z1, ComplexScalar z2, double tol_rel, long shell_cap) {
    if (is_nonpositive_integer(c))
        throw ParameterPole("horn_h3: c is a nonpositive integer");
    if (!h3_region_ok(std::abs(z1), std::abs(z2)))
        throw OutOfRegion("horn_h3: (|z1|, |z2|) outside the convergence region");
    SDSpec spec;
    spec.num = {{a, 2, 1}, {b, 0, 1}};
    spec.den = {{c, 1, 1}};
    // region verified above; hand the evaluator permissive radii
    spec.radius1_hint = std::abs(z1) * 2.0 + 1.0;
    spec.radius2_hint = std::abs(z2) * 2.0 + 1.0;
    SeriesResult res = srivastava_daoust(spec, z1, z2, tol_rel, shell_cap);
    res.representation = "h3";
    return res;
}

SeriesResult horn_h3_confluent(ComplexScalar a, ComplexScalar b, ComplexScalar c,
                               ComplexScalar z1, ComplexScalar z2, double tol_rel, long shell_cap) {
    if (is_nonpositive_integer(c))
        throw ParameterPole("horn_h3_confluent: c is a nonpositive integer");
    if (std::abs(z1) >= 1.0 - kRegionMargin)
        throw OutOfRegion("horn_h3_confluent: |z1| >= 1");
    if (is_positive_integer(a))
        throw ParameterPole("horn_h3_confluent: (a)_{m-n} infinite for positive integer a");
    SDSpec spec;
    spec.num = {{a, 1, -1}, {b, 1, 0}};
    spec.den = {{c, 1, 0}};
    spec.radius1_hint = 1.0;
    SeriesResult res = srivastava_daoust(spec, z1, z2, tol_rel, shell_cap);
    res.representation = "h3c";
    return res;
}

SeriesResult horn_h10(ComplexScalar a, ComplexScalar c,
                      ComplexScalar z1, ComplexScalar z2, double tol_rel, long shell_cap) {
    if (is_nonpositive_integer(c))
        throw ParameterPole("horn_h10: c is a nonpositive integer");
    if (std::abs(z1) >= 0.25 - kRegionMargin)
        throw OutOfRegion("horn_h10: |z1| >= 1/4");
    if (is_positive_integer(a))
        throw ParameterPole("horn_h10: (a)_{2m-n} infinite for positive integer a");
    SDSpec spec;
    spec.num = {{a, 2, -1}};
    spec.den = {{c, 1, 0}};
    spec.radius1_hint = 0.25;
    SeriesResult res = srivastava_daoust(spec, z1, z2, tol_rel, shell_cap);
    res.representation = "h10";
    return res;
}

SeriesResult humbert_xi2(ComplexScalar a, ComplexScalar b, ComplexScalar c,
                         ComplexScalar z1, ComplexScalar z2, double tol_rel, long shell_cap) {
    if (is_nonpositive_integer(c))
        throw ParameterPole("humbert_xi2: c is a nonpositive integer");
    bool poly = is_nonpositive_integer(a) || is_nonpositive_integer(b);
    if (!poly && std::abs(z1) >= 1.0 - kRegionMargin)
        throw OutOfRegion("humbert_xi2: |z1| >= 1");
    SDSpec spec;
    spec.num = {{a, 1, 0}, {b, 1, 0}};
    spec.den = {{c, 1, 1}};
    spec.radius1_hint = poly ? std::abs(z1) * 2.0 + 1.0 : 1.0;
    SeriesResult res = srivastava_daoust(spec, z1, z2, tol_rel, shell_cap);
    res.representation = "xi2";
    return res;
}

ComplexScalar macdonald_k_half(long order_num, ComplexScalar z) {
    if (z == ComplexScalar{0.0, 0.0})
        throw DomainError("macdonald_k_half: z = 0");
    if (z.real() < 0.0 && z.imag() == 0.0)
        throw DomainError("macdonald_k_half: z on the negative real axis (|arg z| < pi required)");
    // K_{-nu} = K_{nu}: nu = order_num + 1/2 < 0 maps to n = -order_num - 1 >= 0.
    long n = order_num >= 0 ? order_num : -order_num - 1;
    // finite sum, terms built by ratio to avoid factorial overflow
    ComplexScalar sum{1.0, 0.0};
    ComplexScalar term{1.0, 0.0};
    for (long k = 0; k < n; ++k) {
        term *= static_cast<double>((n + k + 1) * (n - k)) / (static_cast<double>(k + 1) * 2.0 * z);
        sum += term;
    }
    const double pi = 3.14159265358979323846;
    return std::sqrt(pi / (2.0 * z)) * std::exp(-z) * sum;
}

} // namespace rdgreen
