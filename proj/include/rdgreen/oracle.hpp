#pragma once
#include <functional>

#include "rdgreen/greens_function.hpp"

namespace rdgreen {

// Everything here is an independent check on the series implementations:
// adaptive quadrature of the defining momentum integrals, Macdonald-function
// double sums, and brute-force truncated triple sums. None of it calls
// eval_x/eval_x_prime/g1/g2.

struct QuadratureConfig {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_subdivisions = 4000;
    double radial_map_scale = 0.0; // 0 = auto: L = max(1, sqrt|zeta|)
};

// Adaptive Gauss-Kronrod (G7/K15) integration of a complex-valued integrand over [a, b].
// Returns the estimate; *err_out (optional) receives the accumulated error estimate.
// Throws QuadFailure when the subdivision budget is exhausted above tolerance.
ComplexScalar integrate_gk(const std::function<ComplexScalar(double)>& f, double a, double b,
                           const QuadratureConfig& cfg, double* err_out = nullptr);

// G1(0,0,r) and G2(0,0,r) by momentum-space quadrature:
//   (2 pi)^-3 Int d^3p e^{i p x} {1, p^2 - zeta} / Q(p),
//   Q = (p^2 - zeta)^2 - alpha^2 (p1^2 + p2^2) - beta^2.
// The free-family part (known Fourier transforms of 1/(p^2-zeta)^n and p3^2/(p^2-zeta)^n)
// is split off in closed form; the remainder decays like k^-6 (G1) / k^-4 (G2) and is
// integrated with nested adaptive Gauss-Kronrod, the radial axis mapped by k = L t/(1-t).
// Valid for x on the third axis only (the defining integrand is merely cylindrically
// symmetric; see README).
ComplexScalar quad_g1(double r, const PhysicalParams& p, const QuadratureConfig& cfg = {});
ComplexScalar quad_g2(double r, const PhysicalParams& p, const QuadratureConfig& cfg = {});

// Arguments of the Macdonald double sums: x = -beta^2 r^2/(4 zeta),
// y = 2 alpha^2 sqrt(-zeta)/(beta^2 r), z = r sqrt(-zeta).
struct MacdonaldSumArgs {
    ComplexScalar x{0.0, 0.0};
    ComplexScalar y{0.0, 0.0};
    ComplexScalar z{0.0, 0.0};
};
MacdonaldSumArgs macdonald_args(double r, const PhysicalParams& p);

// Do (x, y, z) satisfy at least one of the double-sum convergence conditions
//   (i) 4|x| <= |z|^2 and |yz| < 4
//  (ii) 4|x| < |z|^2 and |xy| <= |z| + sqrt(|z|^2 - 4|x|)
// (iii) |x| < R|z|^2 and |xy| < 2 S |z| for some R = S(1-S), S in (0,1)?
bool macdonald_region_ok(const MacdonaldSumArgs& args);

// K1: sum_{m>=0} sum_{n=0}^m m! x^m y^n / ((2m+1)! (m-n)!) K_{2m-n+1/2}(z)
// K2: same with (2m)! and K_{2m-n-1/2}(z)
ComplexScalar macdonald_double_sum_k1(const MacdonaldSumArgs& args, double tol_rel = 1e-14);
ComplexScalar macdonald_double_sum_k2(const MacdonaldSumArgs& args, double tol_rel = 1e-14);

// Green components through the Macdonald sums:
//   G1 = sqrt(r) / (4 pi sqrt(2 pi) (-zeta)^{1/4}) * K1-sum
//   G2 = (-zeta)^{1/4} / (2 pi sqrt(2 pi r)) * K2-sum
// Requires beta > 0 (y is singular at beta = 0) and r > 0.
ComplexScalar macdonald_sum_g1(double r, const PhysicalParams& p);
ComplexScalar macdonald_sum_g2(double r, const PhysicalParams& p);

// Brute-force truncated triple sums of the X / X' definitions, summed in
// ascending m+n+p shells. cap <= 200. Truncation error is the caller's concern.
ComplexScalar brute_force_x(const SeriesParams& p, const TripleArg& z, long cap);
ComplexScalar brute_force_x_prime(const SeriesParams& p, const TripleArg& z, long cap);

} // namespace rdgreen
