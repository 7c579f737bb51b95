#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hecke/field.hpp"
#include "hecke/primeideal.hpp"
#include "hecke/rayclass.hpp"

namespace hecke {

/// Infinity type of a character: one integer exponent per automorphism of the
/// base field, in catalog automorphism order.
struct InfinityType {
    std::vector<Int> n;

    bool operator==(const InfinityType&) const = default;
};

/// An algebraic Hecke character of the base field K with values in L.
///
/// On a principal ideal (gamma) with gamma coprime to the modulus,
///   chi((gamma)) = eps(gamma) * prod_sigma emb(sigma(gamma))^{n_sigma},
/// where eps is a finite-order character of the ray residue group and the
/// product runs over the automorphisms of K.  The unit-compatibility check in
/// hecke_create makes this independent of the chosen generator.
struct HeckeCharacter {
    NFPtr K;                  // base field
    NFPtr L;                  // value field
    FieldEmbedding emb;       // K -> L
    Modulus m;
    InfinityType ntype;
    std::shared_ptr<const RayResidueGroup> G;  // residue group of m
    FiniteCharacter eps;      // on G

    /// Torsion value zeta_w^(q*w) in L for a rational q with q*w integral.
    FE torsion_value(const Rat& q) const;
    /// Value at a principal ideal generated by gamma (coprime to m).
    FE eval(const FE& gamma) const;
    /// Value at a prime ideal coprime to m.
    FE eval_prime(const PrimeIdeal& P) const;
    /// Order of eps (the torsion part of the character).
    Int finite_order() const { return eps.order(); }
};

/// Validates and assembles a character.  Throws std::invalid_argument when
/// the residue-group exponent does not divide the number of roots of unity
/// in L, or when some unit u of K has eps(u) * prod emb(sigma u)^{n_sigma}
/// different from 1 (the message names the offending unit).
HeckeCharacter hecke_create(const NFPtr& K, const NFPtr& L, const FieldEmbedding& emb,
                            const Modulus& m, const InfinityType& ntype,
                            const FiniteCharacter& eps);

/// Smallest divisor of the modulus through which the finite part factors.
Modulus conductor(const HeckeCharacter& chi);

/// The same character presented on its conductor.
HeckeCharacter restrict_to_conductor(const HeckeCharacter& chi);

/// The finite part transported to a residue group of a larger modulus.
/// Representative of the class c of G that is additionally coprime to the
/// rational integer extra.
FE honest_representative_coprime(const RayResidueGroup& G, const ResidueClass& c,
                                 const Int& extra);

FiniteCharacter pullback_finite(const FiniteCharacter& eps,
                                std::shared_ptr<const RayResidueGroup> Gbig);

/// Pointwise product: modulus lcm, finite parts multiplied, infinity types added.
HeckeCharacter character_product(const HeckeCharacter& a, const HeckeCharacter& b);

/// The reduction of a character at a place of its value field: a character
/// of the ray class group of modulus m * p with all real places flagged,
/// with values in the residue field at the place.
struct ModPCharacter {
    HeckeCharacter src;
    PrimeIdeal place;         // prime of L
    FqField Fq;               // residue field at the place
    std::shared_ptr<const RayClassGroup> cl;  // Cl_{m p} with all flags
    std::vector<FqField::El> table;  // values at the SNF generators of cl

    /// Value at a class in SNF coordinates.
    FqField::El eval_class(const ZVec& x) const;
    /// Value at the class of a principal ideal (gamma coprime to m*p).
    FqField::El eval_elem(const FE& gamma) const;
    /// Value at a prime ideal of K coprime to m*p.
    FqField::El eval_prime(const PrimeIdeal& r) const;
};

/// Builds the reduction table of chi at the given place of L.  Throws
/// std::domain_error if a character value has a denominator at the place.
ModPCharacter reduce_mod_place(const HeckeCharacter& chi, const PrimeIdeal& place);

}  // namespace hecke
