#pragma once

#include "padic/correspondence.hpp"

namespace padic {

// Point of the Hitchin base: a_1..a_n with a_k homogeneous of degree k in the
// formal variables delta_1..delta_d (stored as integer-exponent polynomials).
struct HitchinPoint {
    long n = 0;
    long d = 0;
    std::vector<RingElement> coefficients;  // size n; coefficients[k-1] is a_k
};

// coefficients of det(T - M) for a square matrix over the coefficient ring,
// computed by the division-free Berkowitz recursion: result[k] is the
// coefficient of T^(n-k), with result[0] = 1 and result[1] = -tr M.
std::vector<RingElement> char_poly(const LaurentMatrix& m);

// coefficients of det(T id - sum_i A_i delta_i), homogeneous degree k pieces
HitchinPoint hitchin_map(const ScalarHiggs& theta);

// product of the associated monic polynomials; rank n1 + n2
HitchinPoint hitchin_product(const HitchinPoint& h1, const HitchinPoint& h2);

// hitchin_map(rep_to_higgs(rho))
HitchinPoint betti_hitchin(const ScalarRep& rho);

bool hitchin_equal(const HitchinPoint& a, const HitchinPoint& b);

}  // namespace padic
