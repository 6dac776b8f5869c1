#include "padic/context.hpp"

#include <cmath>

namespace padic {

namespace {

bool is_prime(long p) {
    if (p < 2) return false;
    for (long q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

long ceil_div(long a, long b) { return (a + b - 1) / b; }

long ceil_log(long base, long x) {  // smallest g with base^g >= x
    long g = 0, v = 1;
    while (v < x) {
        v *= base;
        ++g;
    }
    return g;
}

}  // namespace

long PrecisionContext::min_guard(long p, long N) {
    return ceil_div(N, p - 2) + ceil_log(p, N + 1) + 2;
}

std::shared_ptr<const PrecisionContext> PrecisionContext::make(
    long p, long m, long N, std::optional<long> guard_override) {
    if (p == 2)
        throw ContextMismatch("p = 2 is unsupported (exp convergence radius excludes v = 1)");
    if (!is_prime(p) || p < 3) throw ContextMismatch("p must be an odd prime");
    if (m < 0) throw ContextMismatch("cyclotomic level m must be non-negative");
    if (N < 1) throw ContextMismatch("precision N must be at least 1");

    auto ctx = std::shared_ptr<PrecisionContext>(new PrecisionContext());
    ctx->p = p;
    ctx->m = m;
    ctx->N = N;
    long bound = min_guard(p, N);
    ctx->guard = guard_override.value_or(bound);
    if (ctx->guard < bound)
        throw ContextMismatch("guard digits below the required bound " + std::to_string(bound));

    ctx->pm = 1;
    for (long i = 0; i < m; ++i) {
        if (ctx->pm > (1L << 40) / p)
            throw ContextMismatch("cyclotomic level p^m exceeds the supported exponent range");
        ctx->pm *= p;
    }
    ctx->phi = m == 0 ? 1 : (p - 1) * (ctx->pm / p);
    ctx->ram = m == 0 ? 1 : ctx->phi;

    ctx->p_mpz = p;
    long total = N + ctx->guard;
    ctx->p_powers_.resize((size_t)total + 1);
    ctx->p_powers_[0] = 1;
    for (long k = 1; k <= total; ++k) ctx->p_powers_[(size_t)k] = ctx->p_powers_[(size_t)k - 1] * p;
    ctx->modulus = ctx->p_powers_[(size_t)total];
    ctx->modulus_n = ctx->p_powers_[(size_t)N];
    return ctx;
}

std::vector<mpz_class> PrecisionContext::zeta_pow(long k) const {
    if (m < 1) throw ContextMismatch("zeta requires a cyclotomic level m >= 1");
    long r = k % pm;
    if (r < 0) r += pm;
    // the monomial x^r reduced mod Phi_{p^m}:
    // x^phi = -(x^0 + x^q + ... + x^{(p-2)q}) with q = p^(m-1)
    std::vector<mpz_class> c((size_t)phi, mpz_class(0));
    if (r < phi) {
        c[(size_t)r] = 1;
    } else {
        long q = pm / p;
        for (long j = 0; j <= p - 2; ++j) c[(size_t)(r - phi + j * q)] = modulus - 1;
    }
    return c;
}

}  // namespace padic
