#include "rdgreen/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <vector>

#include "rdgreen/series_engine.hpp"

namespace rdgreen {

namespace {

constexpr double kPi = std::numbers::pi;

// G7/K15 nodes and weights (positive half; node 7 is the midpoint).
constexpr double kXgk[8] = {
    0.9914553711208126392068547, 0.9491079123427585245261897,
    0.8648644233597690727897128, 0.7415311855993944398638648,
    0.5860872354676911302941448, 0.4058451513773971669066064,
    0.2077849550078984676006894, 0.0};
constexpr double kWgk[8] = {
    0.0229353220105292249637320, 0.0630920926299785532907007,
    0.1047900103222501838398763, 0.1406532597155259187451896,
    0.1690047266392679028265834, 0.1903505780647854099132564,
    0.2044329400752988924141620, 0.2094821410847278280129992};
constexpr double kWg[4] = {
    0.1294849661688696932706114, 0.2797053914892766679014678,
    0.3818300505051189449503698, 0.4179591836734693877551020};

struct Panel {
    double a, b;
    ComplexScalar val;
    double err;
    bool operator<(const Panel& o) const { return err < o.err; }
};

Panel eval_panel(const std::function<ComplexScalar(double)>& f, double a, double b) {
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    ComplexScalar gauss{0.0, 0.0}, kron{0.0, 0.0};
    for (int j = 0; j < 8; ++j) {
        ComplexScalar fsum = f(c + h * kXgk[j]);
        if (j < 7)
            fsum += f(c - h * kXgk[j]);
        kron += kWgk[j] * fsum;
        if (j % 2 == 1)
            gauss += kWg[j / 2] * fsum;
    }
    kron *= h;
    gauss *= h;
    // standard QUADPACK error sharpening
    double diff = std::abs(kron - gauss);
    double resabs = std::abs(kron);
    double err = resabs > 0.0 ? diff * std::min(1.0, std::pow(200.0 * diff / (resabs + 1e-300), 1.5))
                              : diff;
    return {a, b, kron, std::max(err, diff * 1e-6)};
}

ComplexScalar quarter_root(ComplexScalar w) { return std::sqrt(std::sqrt(w)); }

} // namespace

ComplexScalar integrate_gk(const std::function<ComplexScalar(double)>& f, double a, double b,
                           const QuadratureConfig& cfg, double* err_out) {
    std::priority_queue<Panel> heap;
    Panel whole = eval_panel(f, a, b);
    ComplexScalar total = whole.val;
    double total_err = whole.err;
    heap.push(whole);
    int splits = 0;
    while (total_err > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total))) {
        if (splits >= cfg.max_subdivisions || heap.empty())
            throw QuadFailure("integrate_gk: error " + std::to_string(total_err) +
                              " above tolerance after " + std::to_string(splits) + " splits");
        Panel worst = heap.top();
        heap.pop();
        double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b)
            throw QuadFailure("integrate_gk: interval too small to split");
        Panel left = eval_panel(f, worst.a, mid);
        Panel right = eval_panel(f, mid, worst.b);
        total += left.val + right.val - worst.val;
        total_err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
        ++splits;
    }
    if (err_out)
        *err_out = total_err;
    return total;
}

namespace {

// Fourier transforms over the free family, x = (0, 0, r), a = sqrt(-zeta):
//   F[1/D]   = e^{-ar}/(4 pi r)          F[1/D^2] = e^{-ar}/(8 pi a)
//   F[1/D^3] = e^{-ar}(1+ar)/(32 pi a^3) F[1/D^4] = e^{-ar}(3+3ar+a^2r^2)/(192 pi a^5)
//   F[k3^2/D^3] and F[k3^2/D^4] via -d^2/dr^2 of the previous two.
struct FreeParts {
    ComplexScalar t1, t2, t3, t4, t3pp, t4pp;
};

FreeParts free_parts(double r, ComplexScalar zeta) {
    ComplexScalar a = std::sqrt(-zeta);
    ComplexScalar e = std::exp(-a * r);
    FreeParts f;
    f.t1 = e / (4.0 * kPi * r);
    f.t2 = e / (8.0 * kPi * a);
    f.t3 = e * (1.0 + a * r) / (32.0 * kPi * a * a * a);
    f.t4 = e * (3.0 + 3.0 * a * r + a * a * r * r) / (192.0 * kPi * std::pow(a, 5));
    f.t3pp = e * (a * r - 1.0) / (32.0 * kPi * a);
    f.t4pp = -e * (1.0 + a * r - a * a * r * r) / (192.0 * kPi * a * a * a);
    return f;
}

// Remainder integrand after subtracting two Neumann terms of 1/Q resp. D/Q:
//   s = alpha^2 k^2 (1 - t^2) + beta^2, D = k^2 - zeta,
//   G1 remainder: s^2 / (D^4 (D^2 - s)); G2 remainder: s^2 / (D^3 (D^2 - s)).
ComplexScalar quad_remainder(double r, const PhysicalParams& p, int dpow,
                             const QuadratureConfig& cfg) {
    double L = cfg.radial_map_scale > 0.0 ? cfg.radial_map_scale
                                          : std::max(1.0, std::sqrt(std::abs(p.zeta)));
    double a2 = p.alpha * p.alpha, b2 = p.beta * p.beta;
    ComplexScalar zeta = p.zeta;
    auto outer = [&](double u) -> ComplexScalar {
        if (u >= 1.0)
            return {0.0, 0.0};
        double k = L * u / (1.0 - u);
        double jac = L / ((1.0 - u) * (1.0 - u));
        if (k == 0.0) {
            // the k^2 prefactor kills the integrand at the lower endpoint
            return {0.0, 0.0};
        }
        ComplexScalar D = k * k - zeta;
        ComplexScalar Dn = std::pow(D, dpow);
        auto angular = [&](double t) -> ComplexScalar {
            ComplexScalar s = a2 * k * k * (1.0 - t * t) + b2;
            return std::cos(k * r * t) * s * s / (Dn * (D * D - s));
        };
        // tighten the inner tolerance by the outer weight so inner noise
        // stays below the outer error estimate
        QuadratureConfig inner_cfg = cfg;
        inner_cfg.abs_tol = 0.1 * cfg.abs_tol / std::max(1.0, k * k * jac);
        ComplexScalar inner = integrate_gk(angular, 0.0, 1.0, inner_cfg);
        return k * k * jac * inner;
    };
    return integrate_gk(outer, 0.0, 1.0, cfg) / (2.0 * kPi * kPi);
}

} // namespace

ComplexScalar quad_g1(double r, const PhysicalParams& p, const QuadratureConfig& cfg) {
    validate_params(p);
    if (!(r > 0.0))
        throw OriginNotAllowed("quad_g1 requires r > 0");
    FreeParts f = free_parts(r, p.zeta);
    double a2 = p.alpha * p.alpha, b2 = p.beta * p.beta;
    ComplexScalar closed = f.t2 + a2 * (f.t3 + p.zeta * f.t4 + f.t4pp) + b2 * f.t4;
    return closed + quad_remainder(r, p, 4, cfg);
}

ComplexScalar quad_g2(double r, const PhysicalParams& p, const QuadratureConfig& cfg) {
    validate_params(p);
    if (!(r > 0.0))
        throw OriginNotAllowed("quad_g2 requires r > 0");
    FreeParts f = free_parts(r, p.zeta);
    double a2 = p.alpha * p.alpha, b2 = p.beta * p.beta;
    ComplexScalar closed = f.t1 + a2 * (f.t2 + p.zeta * f.t3 + f.t3pp) + b2 * f.t3;
    return closed + quad_remainder(r, p, 3, cfg);
}

MacdonaldSumArgs macdonald_args(double r, const PhysicalParams& p) {
    ComplexScalar sz = std::sqrt(-p.zeta);
    MacdonaldSumArgs a;
    a.x = -p.beta * p.beta * r * r / (4.0 * p.zeta);
    a.y = 2.0 * p.alpha * p.alpha * sz / (p.beta * p.beta * r);
    a.z = r * sz;
    return a;
}

bool macdonald_region_ok(const MacdonaldSumArgs& args) {
    double ax = std::abs(args.x), ay = std::abs(args.y), az = std::abs(args.z);
    double az2 = az * az;
    if (4.0 * ax <= az2 && ay * az < 4.0)
        return true;
    if (4.0 * ax < az2 && ax * ay <= az + std::sqrt(az2 - 4.0 * ax))
        return true;
    // exists S in (0,1) with |x| < S(1-S)|z|^2 and |xy| < 2 S |z|; the first bound
    // decreases in S past 1/2, so test the smallest admissible S
    double s = std::max(0.5, ax * ay / (2.0 * az) + 1e-12);
    return s < 1.0 && ax < s * (1.0 - s) * az2 - 1e-12 * az2;
}

namespace {

ComplexScalar macdonald_double_sum(const MacdonaldSumArgs& args, int half_shift, bool odd_factorial,
                                   double tol_rel) {
    // sum_{m>=0} sum_{n=0}^m m! x^m y^n / ((2m+odd)! (m-n)!) K_{2m-n+half_shift/2}(z)
    // The n = 0 coefficient is x^m/(2m+odd)! (the numerator m! cancels against
    // (m-0)!), so the m-walk carries that and the n-walk multiplies y (m-n).
    ComplexScalar sum{0.0, 0.0};
    ComplexScalar base{1.0, 0.0}; // x^m / (2m+odd)!
    int quiet = 0;
    for (long m = 0; m <= 400; ++m) {
        ComplexScalar coef = base;
        double shell_mag = 0.0;
        for (long n = 0; n <= m; ++n) {
            long order = 2 * m - n + (half_shift - 1) / 2; // K_{order + 1/2}
            ComplexScalar term = coef * macdonald_k_half(order, args.z);
            sum += term;
            shell_mag += std::abs(term);
            coef *= args.y * static_cast<double>(m - n); // y^{n+1}/(m-n-1)! step
        }
        if (shell_mag < tol_rel * (1.0 + std::abs(sum))) {
            if (++quiet >= 3)
                return sum;
        } else {
            quiet = 0;
        }
        double mm = static_cast<double>(m);
        base *= args.x / (odd_factorial ? (2.0 * mm + 2.0) * (2.0 * mm + 3.0)
                                        : (2.0 * mm + 1.0) * (2.0 * mm + 2.0));
        if (!std::isfinite(std::abs(sum)))
            throw NoConvergence("macdonald_double_sum: overflow");
    }
    throw NoConvergence("macdonald_double_sum: no convergence within 400 shells");
}

} // namespace

ComplexScalar macdonald_double_sum_k1(const MacdonaldSumArgs& args, double tol_rel) {
    return macdonald_double_sum(args, 1, true, tol_rel); // K_{2m-n+1/2}, (2m+1)!
}

ComplexScalar macdonald_double_sum_k2(const MacdonaldSumArgs& args, double tol_rel) {
    return macdonald_double_sum(args, -1, false, tol_rel); // K_{2m-n-1/2}, (2m)!
}

ComplexScalar macdonald_sum_g1(double r, const PhysicalParams& p) {
    validate_params(p);
    if (!(r > 0.0) || !(p.beta > 0.0))
        throw DomainError("macdonald_sum_g1 requires r > 0 and beta > 0");
    MacdonaldSumArgs args = macdonald_args(r, p);
    if (!macdonald_region_ok(args))
        throw OutOfRegion("macdonald_sum_g1: (x, y, z) outside every convergence condition");
    ComplexScalar k1 = macdonald_double_sum_k1(args);
    return std::sqrt(r) / (4.0 * kPi * std::sqrt(2.0 * kPi) * quarter_root(-p.zeta)) * k1;
}

ComplexScalar macdonald_sum_g2(double r, const PhysicalParams& p) {
    validate_params(p);
    if (!(r > 0.0) || !(p.beta > 0.0))
        throw DomainError("macdonald_sum_g2 requires r > 0 and beta > 0");
    MacdonaldSumArgs args = macdonald_args(r, p);
    if (!macdonald_region_ok(args))
        throw OutOfRegion("macdonald_sum_g2: (x, y, z) outside every convergence condition");
    ComplexScalar k2 = macdonald_double_sum_k2(args);
    return quarter_root(-p.zeta) / (2.0 * kPi * std::sqrt(2.0 * kPi * r)) * k2;
}

namespace {

ComplexScalar ipow(ComplexScalar z, long n) {
    ComplexScalar v{1.0, 0.0};
    for (long j = 0; j < n; ++j)
        v *= z;
    return v;
}

} // namespace

ComplexScalar brute_force_x(const SeriesParams& p, const TripleArg& z, long cap) {
    if (cap < 0 || cap > 200)
        throw DomainError("brute_force_x: cap must be in [0, 200]");
    ComplexScalar sum{0.0, 0.0};
    for (long q = 0; q <= cap; ++q) {
        for (long m = 0; m <= q; ++m) {
            for (long n = 0; n + m <= q; ++n) {
                long pp = q - m - n;
                ComplexScalar den = pochhammer(p.a, 2 * m + n + pp) * pochhammer(p.b, m + n);
                ComplexScalar term = ipow(z.z1, m) * ipow(z.z2, n) * ipow(z.z3, pp) *
                                     reciprocal_factorial(m) * reciprocal_factorial(pp);
                if (!std::isfinite(std::abs(den)))
                    continue; // denominator overflow; the true term is negligible
                sum += term / den;
            }
        }
    }
    return sum;
}

ComplexScalar brute_force_x_prime(const SeriesParams& p, const TripleArg& z, long cap) {
    if (cap < 0 || cap > 200)
        throw DomainError("brute_force_x_prime: cap must be in [0, 200]");
    ComplexScalar sum{0.0, 0.0};
    for (long q = 0; q <= cap; ++q) {
        for (long m = 0; m <= q; ++m) {
            for (long n = 0; n + m <= q; ++n) {
                long pp = q - m - n;
                double rf = reciprocal_factorial(m - n) * reciprocal_factorial(pp);
                if (rf == 0.0)
                    continue; // n > m: 1/(m-n)! vanishes
                ComplexScalar num = pochhammer(p.a, 2 * m - n - pp);
                ComplexScalar den = pochhammer(p.b, m);
                if (!std::isfinite(std::abs(num)) || !std::isfinite(std::abs(den)))
                    continue;
                sum += ipow(z.z1, m) * ipow(z.z2, n) * ipow(z.z3, pp) * num * rf / den;
            }
        }
    }
    return sum;
}

} // namespace rdgreen
