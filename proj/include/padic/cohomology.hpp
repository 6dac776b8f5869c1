#pragma once

#include "padic/correspondence.hpp"
#include "padic/zmod_linalg.hpp"

namespace padic {

// Graded free modules with differentials: degree k has rank n * C(d, k) over
// the coefficient ring, and d_{k+1} d_k = 0 exactly.
struct ChainComplex {
    CtxPtr ctx;
    long d = 0;                       // number of generators / top degree
    long n = 1;                       // module rank
    std::vector<long> ranks;          // size d+1
    std::vector<ScalarMatrix> diffs;  // size d; diffs[k]: ranks[k] -> ranks[k+1]
};

// Per-degree square matrices commuting with the differentials; degreewise units.
struct ChainMap {
    std::vector<ScalarMatrix> maps;  // size d+1
};

struct DegreeReport {
    long degree = 0;
    std::vector<long> torsion_exponents;  // elementary divisors p^e with e < N
    long free_rank = 0;                   // summands Z/p^N (divisor exponent N)
    long annihilator_exp = 0;             // min e with p^e H = 0
    long pi_annihilator = -1;             // in pi-valuation units (-1: not computed)

    // composition length over Z/p, for the Euler characteristic cross-check
    long length(long n_prec) const {
        long len = free_rank * n_prec;
        for (long e : torsion_exponents) len += e;
        return len;
    }
};

struct CohomologyReport {
    std::vector<DegreeReport> degrees;

    bool annihilated_by_p() const {
        for (const auto& dr : degrees)
            if (dr.annihilator_exp > 1) return false;
        return true;
    }
};

// Fractional exponent class (i_1..i_d) in [0,1) with denominators <= p^m,
// stored as numerators over p^m. i = 0 is the invariant block.
struct CharacterIndex {
    std::vector<long> numerators;
    long denominator = 1;

    bool is_zero() const {
        for (long x : numerators)
            if (x != 0) return false;
        return true;
    }
};

// the subsets of {1..d} of size k in lexicographic order
std::vector<std::vector<long>> index_subsets(long d, long k);

// Koszul-style complex with commuting transition operators t_1..t_d:
// m (x) e_S -> sum_j t_j m (x) e_S ^ e_j, appended index sorted with sign.
ChainComplex complex_from_operators(const std::vector<ScalarMatrix>& ops, long module_rank);

ChainComplex koszul_complex(const ScalarRep& rho, long module_rank);
ChainComplex higgs_complex(const ScalarHiggs& theta, long module_rank);

// Homology is computed over the chain rings Z/p^N and Z[zeta]/p^N only; a
// representation over the tower ring must have constant entries to qualify.
ChainComplex koszul_complex(const LaurentRep& rho, long module_rank);

// u_i = f(rho(gamma_i) - 1) with f(x) = sum_{w>=1} (-1)^(w+1) x^(w-1) / w, so
// u_i (rho(gamma_i) - 1) = log rho(gamma_i); degree k acts by u_{i_1}..u_{i_k}.
ChainMap comparison_map(const ScalarRep& rho);

bool chain_map_commutes(const ChainComplex& grp, const ChainComplex& higgs, const ChainMap& u);

// Elementary-divisor homology over Z/p^N via Smith normal form of the stacked
// presentation ker(d_k)/im(d_{k-1}); cyclotomic coefficients are handled by
// restriction of scalars (free rank phi(p^m)).
CohomologyReport compute_cohomology(const ChainComplex& c, bool with_pi_annihilator = false);

// The toric character decomposition at tower level m: per character, the
// complex with operators (zeta^(i_j p^m) rho(gamma_j) - 1). Deterministic
// lexicographic order; blocks are computed independently (parallel map).
std::vector<std::pair<CharacterIndex, ChainComplex>> character_blocks(const ScalarRep& rho,
                                                                      long tower_level,
                                                                      long module_rank);

}  // namespace padic
