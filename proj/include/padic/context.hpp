#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <vector>

#include "padic/errors.hpp"

namespace padic {

// Working precision for one computation: everything lives in
// Z[x]/(Phi_{p^m}(x), p^(N+guard)). Results are meaningful mod p^N; the
// guard digits absorb the exact-division losses in exp/log series.
class PrecisionContext {
  public:
    long p;      // odd prime
    long m;      // cyclotomic level, m = 0 means plain Z/p^(N+guard)
    long N;      // published absolute precision
    long guard;  // internal extra digits

    long phi;          // phi(p^m), degree of the coefficient ring over Z/p^(N+guard)
    long ram;          // ramification index: denominators of valuations divide this
    long pm;           // p^m (fits in long; m is small by construction)
    mpz_class modulus;     // p^(N+guard)
    mpz_class modulus_n;   // p^N
    mpz_class p_mpz;

    static long min_guard(long p, long N);

    // Factory enforcing the invariants (p odd prime, N >= 1, guard at least
    // the formula bound). guard_override, when set, must not fall below the bound.
    static std::shared_ptr<const PrecisionContext> make(
        long p, long m, long N, std::optional<long> guard_override = std::nullopt);

    bool same_ring_as(const PrecisionContext& o) const {
        return p == o.p && m == o.m && N == o.N && guard == o.guard;
    }

    // p^k for 0 <= k <= N+guard
    const mpz_class& p_pow(long k) const { return p_powers_.at((size_t)k); }

    // coefficient vector (length phi) of zeta^k, k taken mod p^m; requires m >= 1
    std::vector<mpz_class> zeta_pow(long k) const;

  private:
    PrecisionContext() = default;
    std::vector<mpz_class> p_powers_;
};

using CtxPtr = std::shared_ptr<const PrecisionContext>;

inline void require_same_ctx(const CtxPtr& a, const CtxPtr& b) {
    if (!a || !b || !a->same_ring_as(*b))
        throw ContextMismatch("operands live in different precision contexts");
}

}  // namespace padic
