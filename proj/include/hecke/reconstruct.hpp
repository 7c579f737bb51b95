#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "hecke/compatsys.hpp"
#include "hecke/multdep.hpp"

namespace hecke {

/// The input data does not come from a Hecke character; carries a witness.
struct NotHeckeType : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Not enough Frobenius data (or probe primes) to finish the pipeline.
struct InsufficientData : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A totally positive generator congruent to 1 mod the target modulus, above
/// a rational prime that splits completely in K and is unramified in L.
struct ProbePrime {
    FE gamma;
    Int q;
    PrimeIdeal P;
};

std::vector<ProbePrime> choose_probe_primes(const NFPtr& K, const NFPtr& L, const Modulus& m,
                                            int count, const Int& height_bound);

/// Probe primes drawn from the system's indexed Frobenius data only.
std::vector<ProbePrime> probe_primes_from_entries(const CompatibleSystem& sys, const Modulus& m,
                                                  int count);

/// f_root = zeta * prod_sigma sigma(gamma)^{m_sigma} with t = 1.
struct ExponentData {
    FE zeta;
    std::vector<Int> m;
};

ExponentData infer_exponents(const FieldEmbedding& emb, const FE& f_root, const ProbePrime& r,
                             const Int& ell);

struct CrossCheck {
    std::vector<Int> m;
    std::vector<Int> cross_primes;  // residue characteristics of the product-class checks
};

CrossCheck cross_check_independence(const CompatibleSystem& sys,
                                    const std::vector<std::pair<ProbePrime, ExponentData>>& results);

FiniteCharacter extract_finite_part(const CompatibleSystem& sys, const InfinityType& ntype,
                                    const Modulus& conductor_guess);

struct AuditEntry {
    ProbePrime probe;
    MultRelation relation;
    std::vector<Int> cross_primes;
};

struct ReconstructionResult {
    InfinityType infinity_type;
    Int torsion_order_bound = 1;
    FiniteCharacter finite_part;
    HeckeCharacter character;
    Modulus conductor;
    Int ell = 1;
    std::vector<AuditEntry> audit;
};

struct ReconstructOptions {
    int probes = 3;
    Int height_bound = 20000;
};

ReconstructionResult reconstruct_character(const CompatibleSystem& sys,
                                           const ReconstructOptions& opt = {});

/// Component-wise reconstruction of a system declared as a direct sum.
std::vector<ReconstructionResult> reconstruct_split(const CompatibleSystem& sys,
                                                    const ReconstructOptions& opt = {});

}  // namespace hecke
