#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hecke/heckechar.hpp"

namespace hecke {

/// One indexed prime of K with the monic degree-n polynomial f_r over L,
/// coefficients ascending (leading coefficient 1 included).
struct FrobeniusEntry {
    PrimeIdeal r;
    std::vector<FE> poly;
};

/// A compatible system of one-dimensional mod-place representations, carried
/// as Frobenius data at finitely many indexed primes plus, for generated
/// systems, the realizing characters (restricted to their conductors).
struct CompatibleSystem {
    NFPtr K, L;
    int dim = 1;
    std::vector<PrimeIdeal> S;  // ramification set, primes of K
    std::vector<PrimeIdeal> T;  // defect set, places of L
    std::vector<FrobeniusEntry> frob;  // sorted by (residue char, generator)
    std::vector<HeckeCharacter> realization;  // empty for file-loaded systems
    std::optional<Modulus> conductor_hint;

    bool realized() const { return !realization.empty(); }
    const FrobeniusEntry* entry_at(const PrimeIdeal& r) const;
    bool in_S(const PrimeIdeal& r) const;
    bool in_T(const PrimeIdeal& place) const;
};

/// Places of L above the residue characteristics of S and above primes where
/// distinct roots of unity of L collide.
std::vector<PrimeIdeal> default_defect_set(const NFPtr& L, const std::vector<PrimeIdeal>& S);

/// Largest |Nm(zeta - zeta')| over distinct roots of unity of L; places above
/// larger characteristics separate all torsion values.
Int torsion_separation_bound(const NFPtr& L);

/// Direct sum of characters sharing K, L and the embedding; indexes all
/// primes of K with residue characteristic <= index_bound coprime to S.
CompatibleSystem system_from_characters(const std::vector<HeckeCharacter>& chis,
                                        const Int& index_bound = Int(100));

/// Adds entries for primes up to the bound that are not yet indexed.
void extend_frobenius(CompatibleSystem& sys, const Int& index_bound);

struct VerificationReport {
    long pairs_checked = 0;
    std::vector<std::string> failures;
    bool unverifiable = false;  // no realization: axioms cannot be checked
    bool degenerate = false;    // zero pairs in range
    bool weak = false;          // agreement-only mode (no ramification checks)

    bool pass() const { return failures.empty() && !unverifiable; }
};

/// Checks, for every indexed r with residue characteristic <= r_bound and
/// every place of L outside T with residue characteristic <= p_bound coprime
/// to r: the characteristic polynomial of the realized tables at Frob_r
/// equals f_r reduced at the place (exact), and — unless weak — that each
/// table's conductor is supported inside S.
VerificationReport verify_strict(const CompatibleSystem& sys, const Int& r_bound,
                                 const Int& p_bound, bool weak = false);

struct ConductorVerdict {
    bool stable = false;
    Modulus value;
    std::vector<std::pair<PrimeIdeal, Modulus>> samples;
};

/// Prime-to-p conductor of the realized tables at sampled places; reports
/// whether the value stabilizes across the sample.
ConductorVerdict check_bounded_conductor(const CompatibleSystem& sys, int sample = 6);

/// Smallest modulus (over divisors of m with arbitrary real flags) through
/// which a realized mod-place table factors.
Modulus table_conductor(const ModPCharacter& rho);

struct PurityVerdict {
    bool pass = false;
    Rat t;               // fitted weight, integer or half-integer
    double max_dev = 0;  // largest |fit - t| seen
    std::string note;
};

/// Fits |root| = Nm(r)^t under every complex embedding of L at sampled
/// entries; t must be a common half-integer within 1e-6.  Exact cross-check
/// root * conj(root) = Nm(r)^{2t} whenever that product is rational.
PurityVerdict check_purity(const CompatibleSystem& sys, int sample = 8);

struct IntegralityVerdict {
    bool pass = false;
    int m = 0;  // norm-twist exponent restoring integrality
    std::string note;
};

/// Integrality of all f_r coefficients, else the smallest twist exponent
/// m <= 6 making the twisted coefficients integral.
IntegralityVerdict check_integrality(const CompatibleSystem& sys);

struct ArtinVerdict {
    bool stable = false;  // image order constant across sampled places
    Int order = 0;
    std::vector<std::pair<PrimeIdeal, Int>> samples;
};

/// Image order of the realized tables at sampled places; stable order means
/// the system is Artin-like, growth means unbounded-trend.
ArtinVerdict detect_artin(const CompatibleSystem& sys, int sample = 6);

}  // namespace hecke
