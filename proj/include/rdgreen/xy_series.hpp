#pragma once
#include "rdgreen/series_engine.hpp"

namespace rdgreen {

// Argument triple (z1, z2, z3) of the series X and X'.
struct TripleArg {
    ComplexScalar z1{0.0, 0.0};
    ComplexScalar z2{0.0, 0.0};
    ComplexScalar z3{0.0, 0.0};
};

// Parameters (a, b).
//   X : a, b not nonpositive integers.
//   X': a not a positive integer, b not a nonpositive integer.
struct SeriesParams {
    ComplexScalar a{0.0, 0.0};
    ComplexScalar b{0.0, 0.0};
};

enum class RepChoice {
    Auto, // pick the admissible representation with the smallest leading term ratio
    X1,   // outer sum in z1, inner F with (1)_r numerator
    X2,   // outer sum in z2, inner F with (a+n:2,1) denominator weights
    X3,   // outer sum in z3, inner F with (1)_s numerator
    Xp1,  // outer sum in z1, inner Humbert Xi2 (polynomial in z2)
    Xp2,  // outer sum in (z1 z2), inner Horn H10
    Xp3,  // outer sum in z3, inner Horn H3 at shifted first parameter
};

// X(a,b;z) = sum_{m,n,p} z1^m z2^n z3^p / (m! p! (a)_{2m+n+p} (b)_{m+n}).
// Entire in all three variables; every representation is admissible.
SeriesResult eval_x(const SeriesParams& p, const TripleArg& z, RepChoice rep = RepChoice::Auto,
                    double tol_rel = kDefaultTolRel,
                    long outer_cap = kDefaultOuterCap, long shell_cap = kDefaultShellCap);

// X'(a,b;z) = sum_{m,n,p} z1^m z2^n z3^p (a)_{2m-n-p} / ((m-n)! p! (b)_m), 1/(m-n)! = 0 for m < n.
// (z1, z2) must lie in at least one representation's region (z3 unrestricted).
SeriesResult eval_x_prime(const SeriesParams& p, const TripleArg& z, RepChoice rep = RepChoice::Auto,
                          double tol_rel = kDefaultTolRel,
                          long outer_cap = kDefaultOuterCap, long shell_cap = kDefaultShellCap);

// Which X' representations converge for (z1, z2)?
//   Xp1: |z1| < 1/4 and |z2| < 2; boundary |z1| = 1/4 admitted iff Re(a-b-1/2) < 0.
//   Xp2: |z1| < 1/4 and |z1 z2| < S+ = (1+sqrt(1-4|z1|))/2; boundary admitted iff Re(a-b) < 0.
//   Xp3: exists S in (0,1) with |z1| < S(1-S) and |z1 z2| < S (strict only).
struct XpRegionFlags {
    bool xp1 = false;
    bool xp2 = false;
    bool xp3 = false;
    bool xp1_boundary = false; // admitted through the |z1| = 1/4 equality case
    bool xp2_boundary = false; // admitted through the |z1 z2| = S+ equality case
    bool any() const { return xp1 || xp2 || xp3; }
};
XpRegionFlags classify_xprime_region(const TripleArg& z, const SeriesParams& p);

// d/dz1 X(a,b;z) = X(a+2,b+1;z)/(a b (a+1))
ComplexScalar dx_d1(const SeriesParams& p, const TripleArg& z, double tol_rel = kDefaultTolRel);

// d/dz2 X(a,b;z) = sum_{n>=1} n z2^{n-1}/((a)_n (b)_n) F((a+n:2,1):(b+n:1); z1, z3)
SeriesResult dx_d2(const SeriesParams& p, const TripleArg& z, double tol_rel = kDefaultTolRel,
                   long outer_cap = kDefaultOuterCap, long shell_cap = kDefaultShellCap);

// d/dz3 X(a,b;z) = X(a+1,b;z)/a
ComplexScalar dx_d3(const SeriesParams& p, const TripleArg& z, double tol_rel = kDefaultTolRel);

// d/dz3 X'(a,b;z) = X'(a-1,b;z)/(a-1); ParameterPole at a = 1.
ComplexScalar dxp_d3(const SeriesParams& p, const TripleArg& z, double tol_rel = kDefaultTolRel);

// lim_{eps->0} X'(a,b; eps z1, z2/eps, z3) = confluent H3(a,1;b; z1 z2, z3), |z1 z2| < 1.
ComplexScalar confluence_xprime(const SeriesParams& p, ComplexScalar z1z2_product, ComplexScalar z3,
                                double tol_rel = kDefaultTolRel);

} // namespace rdgreen
