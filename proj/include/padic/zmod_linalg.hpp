#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

namespace padic {

// Plain integer matrices modulo p^N, the chain ring where Smith normal form
// lives. Row-major.
struct IntMat {
    long rows = 0, cols = 0;
    std::vector<mpz_class> a;

    IntMat() = default;
    IntMat(long r, long c) : rows(r), cols(c), a((size_t)(r * c), mpz_class(0)) {}
    mpz_class& operator()(long i, long j) { return a[(size_t)(i * cols + j)]; }
    const mpz_class& operator()(long i, long j) const { return a[(size_t)(i * cols + j)]; }
    static IntMat identity(long n) {
        IntMat m(n, n);
        for (long i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
};

IntMat mat_mul_mod(const IntMat& x, const IntMat& y, const mpz_class& mod);

// L * A * R = D diagonal with p-power entries forming a divisibility chain.
// All arithmetic mod p^N; pivots are chosen by minimal p-valuation, which makes
// every elimination step an exact division in the chain ring.
struct SmithResult {
    IntMat d;                        // diagonal matrix, same shape as input
    IntMat left;                     // row transform, invertible mod p^N
    IntMat right;                    // column transform, invertible mod p^N
    std::vector<long> exponents;     // valuations of the diagonal, clamped to N
};

SmithResult smith_normal_form(const IntMat& m, long p, long n_prec);

// Generators of ker(A) as a Z/p^N module: columns of the returned matrix.
IntMat kernel_generators(const IntMat& m, long p, long n_prec);

// Solves A x = b mod p^N (per column of b); nullopt when unsolvable.
std::optional<IntMat> solve_mod(const IntMat& m, const IntMat& b, long p, long n_prec);

}  // namespace padic
