#pragma once
#include <Eigen/Dense>

#include "rdgreen/xy_series.hpp"

namespace rdgreen {

// Dispatch threshold below which alpha, beta, or r is treated as exactly degenerate.
inline constexpr double kDegenerateEps = 1e-10;
// Minimum allowed distance from zeta to the essential spectrum [-Sigma, inf).
inline constexpr double kZetaMargin = 1e-9;

// Hamiltonian parameters and spectral point.
// alpha: spin-orbit strength, beta: Zeeman field, both >= 0.
// Valid when zeta stays at least kZetaMargin away from [-Sigma, inf).
struct PhysicalParams {
    double alpha = 0.0;
    double beta = 0.0;
    ComplexScalar zeta{0.0, 0.0};
};

struct EvalPoint {
    double x1 = 0.0, x2 = 0.0, x3 = 0.0;
    double r = 0.0; // |x|, kept consistent by make_point
};
EvalPoint make_point(double x1, double x2, double x3);

// Essential-spectrum edge: Sigma = beta if beta > alpha^2/2 (or alpha = 0),
// else (beta/alpha)^2 + (alpha/2)^2.
double sigma_threshold(double alpha, double beta);

// Distance from zeta to [-Sigma, inf); used by validation.
double zeta_spectrum_distance(ComplexScalar zeta, double sigma);

// Throws InvalidZeta if alpha/beta are negative or zeta is within kZetaMargin of [-Sigma, inf).
void validate_params(const PhysicalParams& p);

// Convergence conditions of the main series theorem:
//  (a) 2 beta > alpha^2 and beta <= |zeta| < 2 (beta/alpha)^2
//  (b) |zeta| >= Sigma, equality admitted only if 0 <= 2 beta < alpha^2
//  (c) |zeta| > max(beta/(2 sqrt(R)), alpha^2/(4 S)) for some R = S(1-S), S in (0,1)
struct TheoremConditions {
    bool a = false, b = false, c = false;
    bool any() const { return a || b || c; }
};
TheoremConditions theorem_condition_flags(const PhysicalParams& p) noexcept;
// Same, but throws NoValidRegion when all three fail (validated params assumed).
TheoremConditions theorem_conditions(const PhysicalParams& p);

// Path selection for operations that have both a closed form and a series form.
enum class EvalPath {
    Prefer_closed, // use the closed form / reduction when one applies (default)
    Force_series,  // use the hypergeometric series branch (for cross-validation)
};

// Diagonal scalar components of the Green's matrix. The matrix entries are
// g11 = G2 - beta G1, g22 = G2 + beta G1, g12 = -alpha D- G1, g21 = +alpha D+ G1.
//
// g1/g2 evaluate the series representation
//   G1 = X'(1/2,3/2; v)/(8 pi sqrt(-zeta)) - r X(3/2,3/2; u)/(8 pi)
//   G2 = X(1/2,1/2; u)/(4 pi r) - sqrt(-zeta) X'(-1/2,1/2; v)/(4 pi)
// with v = (beta^2/4zeta^2, -zeta alpha^2/beta^2, zeta r^2/4),
//      u = (beta^2 r^4/64, -alpha^2 r^2/16, -zeta r^2/4),
// dispatching to the special-case branches when alpha < eps, beta < eps, or r < eps:
//   alpha ~ 0: exponential closed forms (series representation behind Force_series, needs |zeta| > beta)
//   beta  ~ 0: confluent-H3 + Kampe de Feriet series (the v-triple is singular at beta = 0)
//   r     ~ 0: g1 -> g1_at_origin; g2 -> OriginNotAllowed
ComplexScalar g1(const EvalPoint& x, const PhysicalParams& p, EvalPath path = EvalPath::Prefer_closed);
ComplexScalar g2(const EvalPoint& x, const PhysicalParams& p, EvalPath path = EvalPath::Prefer_closed);

// Detailed variants exposing representation tag / term count / error estimate.
// rep forces the representation of whichever series family it belongs to (the
// other stays Auto); it is ignored by closed-form and special-case branches.
SeriesResult g1_detailed(const EvalPoint& x, const PhysicalParams& p, EvalPath path = EvalPath::Prefer_closed,
                         RepChoice rep = RepChoice::Auto,
                         double tol_rel = kDefaultTolRel, long outer_cap = kDefaultOuterCap);
SeriesResult g2_detailed(const EvalPoint& x, const PhysicalParams& p, EvalPath path = EvalPath::Prefer_closed,
                         RepChoice rep = RepChoice::Auto,
                         double tol_rel = kDefaultTolRel, long outer_cap = kDefaultOuterCap);

// G1 at x = 0: artanh closed form (1/(4 pi alpha)) artanh((alpha/beta) sqrt((-zeta/2)(1-sqrt(1-(beta/zeta)^2))));
// Force_series evaluates the Horn-H3 representation instead (requires its region).
ComplexScalar g1_at_origin(const PhysicalParams& p, EvalPath path = EvalPath::Prefer_closed);

// Renormalized G2: g2(x) - e^{-r sqrt(-zeta)}/(4 pi r); bounded as r -> 0.
ComplexScalar g2_ren(const EvalPoint& x, const PhysicalParams& p, EvalPath path = EvalPath::Prefer_closed);

// Its r = 0 value: sqrt(-zeta)/(4 pi) (1 - H3(-1/2,1;1/2; beta^2/4zeta^2, -alpha^2/4zeta))
// using the square-root + artanh closed form of that H3 (series behind Force_series).
ComplexScalar g2_ren_at_origin(const PhysicalParams& p, EvalPath path = EvalPath::Prefer_closed);

// Off-diagonal derivative D+- G1 = (x1 +- i x2)/(8 pi) * B(r) with
// B = sqrt(-zeta) X'(-1/2,3/2; v) - X(3/2,3/2; u)/r
//     - (r/2) (beta^2 r^2/45 X(7/2,5/2; u) - (2 zeta/3) X(5/2,3/2; u) - (alpha^2/4) d2 X(3/2,3/2; u)).
// Near the origin B -> -8 pi/r, i.e. D+- G1 -> -(xhat1 +- i xhat2)/(8 pi).
ComplexScalar dpm_g1(const EvalPoint& x, const PhysicalParams& p, int sign,
                     EvalPath path = EvalPath::Prefer_closed);

struct GreenMatrix {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    ComplexScalar g11() const { return m(0, 0); }
    ComplexScalar g12() const { return m(0, 1); }
    ComplexScalar g21() const { return m(1, 0); }
    ComplexScalar g22() const { return m(1, 1); }
};

GreenMatrix green_matrix(const EvalPoint& x, const PhysicalParams& p);

// Conjugation U m U* with U = (-1)^n e^{i delta} diag(1, i): the unitary map between the
// Rashba and Dresselhaus forms. Phases cancel; effectively g12 -> -i g12, g21 -> i g21.
GreenMatrix to_dresselhaus(const GreenMatrix& m, double delta, int n);

} // namespace rdgreen
