#pragma once

#include <optional>
#include <vector>

#include "hecke/field.hpp"
#include "hecke/primeideal.hpp"

namespace hecke {

/// Exact S-unit decomposition
///   element = torsion^k * prod fu_j^{unit_exponents_j} * prod gen(support_i)^{exponents_i}.
struct SUnitFactorization {
    FE element;
    std::vector<PrimeIdeal> support;
    ZVec exponents;
    long torsion_exp = 0;  // exponent of the field's torsion generator
    ZVec unit_exponents;   // fundamental-unit exponents
};

/// Decomposes a nonzero element over the canonical generators of its support
/// primes.  Throws BoundExceeded when |Nm| exceeds the factoring budget.
SUnitFactorization sunit_factor(const NFPtr& F, const FE& x);

/// Multiplicative relation c^t = zeta * prod a_i^{m_i} with zeta a torsion
/// unit, t >= 1 minimal, and m lexicographically reduced (by absolute value)
/// within its solution coset.
struct MultRelation {
    Int t = 1;
    ZVec m;
    FE zeta;
};

/// Exact solver.  Returns nullopt when no power of c lies in the group
/// generated by the a_i and the units, or — when forbidden > 0 — when every
/// valid t is divisible by the forbidden prime.
std::optional<MultRelation> mult_relation(const NFPtr& F, const FE& c, const std::vector<FE>& a,
                                          const Int& forbidden = 0);

/// Local membership data at the primes of K below prime_bound.
struct ProbeReport {
    std::vector<std::pair<PrimeIdeal, Int>> t_values;  // minimal t with c^t in <a_i> mod q
    std::vector<PrimeIdeal> witnesses;                 // primes with t > 1
    std::vector<PrimeIdeal> skipped;                   // residue data out of bounds
};

/// For each prime q of K with residue characteristic <= prime_bound, coprime
/// to the supports of c and the a_i and unramified: the minimal t_q >= 1 with
/// c^{t_q} in the subgroup generated by the a_i mod q.  split_only restricts
/// to degree-1 primes.
ProbeReport local_probe(const NFPtr& F, const FE& c, const std::vector<FE>& a,
                        const Int& prime_bound, bool split_only = false);

/// First prime q with ell | t_q (or just t_q > 1 when ell == 0); scans primes
/// ascending and stops at the first hit.
std::optional<PrimeIdeal> first_witness(const NFPtr& F, const FE& c, const std::vector<FE>& a,
                                        const Int& ell, const Int& prime_bound,
                                        bool split_only = false);

}  // namespace hecke
