#pragma once
#include <complex>
#include <string>
#include <vector>

#include "rdgreen/errors.hpp"

namespace rdgreen {

using ComplexScalar = std::complex<double>;

// Numeric guards shared across the library.
inline constexpr double kRegionMargin = 1e-12;  // shrink region inequalities to avoid boundary flapping
inline constexpr double kDefaultTolRel = 1e-12;
inline constexpr long kDefaultShellCap = 2000;
inline constexpr long kDefaultOuterCap = 500;

struct SeriesResult {
    ComplexScalar value{0.0, 0.0};
    long terms_used = 0;
    double est_error = 0.0;        // magnitude of the last accepted shell; a heuristic, not a bound
    std::string representation;    // which series/branch produced the value
    bool slow_convergence = false; // set when a boundary-equality region case was accepted
};

// true iff z is exactly a nonpositive integer (0, -1, -2, ...)
bool is_nonpositive_integer(ComplexScalar z);

// Gamma via Lanczos approximation with reflection on the left half-plane.
// Accuracy ~1e-13 relative away from poles. Throws DomainError at nonpositive integers.
ComplexScalar gamma_complex(ComplexScalar z);

// Rising factorial (a)_k = Gamma(a+k)/Gamma(a), extended by limits.
//   k > 0: a(a+1)...(a+k-1); exactly 0 when a is one of {0,-1,...,-(k-1)}.
//   k = 0: 1.
//   k < 0: 1/((a-1)(a-2)...(a+k)) = (-1)^k/(1-a)_{-k}; genuinely infinite when a is a
//          positive integer <= -k, which signals DomainError.
// Computed by explicit products (not Gamma ratios) so zeros are exact.
ComplexScalar pochhammer(ComplexScalar a, long k);

// 1/(a)_k with the pole convention: returns exactly 0 where (a)_k is infinite.
// Throws DomainError where (a)_k = 0 (the reciprocal itself is infinite).
ComplexScalar pochhammer_recip(ComplexScalar a, long k);

// 1/n! for n >= 0; exactly 0 for n < 0.
double reciprocal_factorial(long n);

// 0F1(;c;z) = sum_k z^k/(k! (c)_k). Entire in z. ParameterPole if c is a nonpositive integer.
SeriesResult hyp0f1(ComplexScalar c, ComplexScalar z,
                    double tol_rel = kDefaultTolRel, long term_cap = kDefaultShellCap);

// One Pochhammer group of a Srivastava-Daoust double series: (param)_{w1*r + w2*s}.
// Weights are signed integers; negative weights realize patterns like (a)_{2m-n}.
struct SDGroup {
    ComplexScalar param;
    int w1 = 0;
    int w2 = 0;
};

// Specification of sum_{r,s} [prod num (p)_{w1 r+w2 s}] / [prod den (p)_{w1 r+w2 s}] * z1^r z2^s/(r! s!).
//
// Convergence bookkeeping: delta_i = 1 + sum_den w_i - sum_num w_i per variable.
//   delta_i > 0  -> entire in z_i.
//   delta_i = 0  -> finite radius; the caller must supply radius_hint_i (its own assertion,
//                   typically from a sharper joint-region test) or the evaluator refuses.
//   delta_i < 0  -> divergent for z_i != 0; refused.
struct SDSpec {
    std::vector<SDGroup> num;
    std::vector<SDGroup> den;
    double radius1_hint = 0.0; // 0 = unset
    double radius2_hint = 0.0;
};

SeriesResult srivastava_daoust(const SDSpec& spec, ComplexScalar z1, ComplexScalar z2,
                               double tol_rel = kDefaultTolRel, long shell_cap = kDefaultShellCap);

// Horn H3(a,b;c;z1,z2) = sum (a)_{2m+n}(b)_n/(c)_{m+n} z1^m z2^n/(m! n!).
// Region: exists S in (|z2|,1) with |z1| < S(1-S). OutOfRegion otherwise.
SeriesResult horn_h3(ComplexScalar a, ComplexScalar b, ComplexScalar c,
                     ComplexScalar z1, ComplexScalar z2,
                     double tol_rel = kDefaultTolRel, long shell_cap = kDefaultShellCap);

// Confluent variant: sum (a)_{m-n}(b)_m/(c)_m z1^m z2^n/(m! n!); |z1| < 1, entire in z2.
SeriesResult horn_h3_confluent(ComplexScalar a, ComplexScalar b, ComplexScalar c,
                               ComplexScalar z1, ComplexScalar z2,
                               double tol_rel = kDefaultTolRel, long shell_cap = kDefaultShellCap);

// Confluent Horn H10(a;c;z1,z2) = sum (a)_{2m-n}/(c)_m z1^m z2^n/(m! n!); |z1| < 1/4, entire in z2.
SeriesResult horn_h10(ComplexScalar a, ComplexScalar c,
                      ComplexScalar z1, ComplexScalar z2,
                      double tol_rel = kDefaultTolRel, long shell_cap = kDefaultShellCap);

// Humbert Xi2(a,b;c;z1,z2) = sum (a)_m(b)_m/(c)_{m+n} z1^m z2^n/(m! n!);
// |z1| < 1 unless b is a nonpositive integer (then the m-sum terminates and any z1 is fine).
SeriesResult humbert_xi2(ComplexScalar a, ComplexScalar b, ComplexScalar c,
                         ComplexScalar z1, ComplexScalar z2,
                         double tol_rel = kDefaultTolRel, long shell_cap = kDefaultShellCap);

// Macdonald function of half-integer order: nu = order_num + 1/2.
// K_{n+1/2}(z) = sqrt(pi/(2z)) e^{-z} sum_{k=0}^n (n+k)!/(k!(n-k)!(2z)^k), K_{-nu} = K_{nu}.
// Requires z != 0, |arg z| < pi.
ComplexScalar macdonald_k_half(long order_num, ComplexScalar z);

} // namespace rdgreen
