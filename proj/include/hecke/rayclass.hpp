#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hecke/field.hpp"
#include "hecke/linalg.hpp"
#include "hecke/primeideal.hpp"

namespace hecke {

/// Finite abelian group Z^n / rowspace(rels), carried in Smith normal form.
/// Coordinates of elements are words in the n presentation generators; the
/// public coordinates are the SNF generators of order > 1.
struct AbGroup {
    size_t ngens = 0;
    ZMat rels;
    std::vector<Int> divisors;   // elementary divisors > 1, each dividing the next
    std::vector<Int> full_div;   // all n diagonal entries of the SNF
    ZMat V;                      // resolve(e) = (e*V) mod full_div, restricted to kept
    ZMat W;                      // V^{-1}; row kept[j] = word of SNF generator j
    std::vector<size_t> kept;
    Int order = 1;

    /// Word in presentation generators -> coordinates on the SNF generators.
    ZVec resolve(const ZVec& word) const;
    Int exponent() const { return divisors.empty() ? Int(1) : divisors.back(); }
    /// Words (over the presentation generators) of the SNF generators.
    ZVec snf_gen_word(size_t j) const { return W[kept[j]]; }
};

/// Build from a relations matrix; throws if the quotient is infinite.
AbGroup abgroup_from_relations(size_t ngens, const ZMat& rels);

/// Modulus of K: a principal finite part (m) together with flagged real places.
struct Modulus {
    NFPtr F;
    FE gen;                        // canonical-associate generator, integral
    std::vector<int> real_places;  // flagged real embedding indices, ascending
    std::vector<std::pair<PrimeIdeal, int>> factor;  // prime-power factorization of (gen)
    Int norm = 1;                  // |Nm(gen)|

    std::string str() const;
    bool is_one() const { return factor.empty() && real_places.empty(); }
};

Modulus make_modulus(const NFPtr& F, const FE& gen, std::vector<int> real_places = {});
bool modulus_equal(const Modulus& a, const Modulus& b);
/// Smallest common multiple: maximal prime powers, union of real flags.
Modulus modulus_lcm(const Modulus& a, const Modulus& b);
/// a | b : every prime power of a divides b's and a's real flags are a subset.
bool modulus_divides(const Modulus& a, const Modulus& b);
/// All divisors of m (prime exponents and real-flag subsets), sorted by
/// (finite norm, flag count, string) so the first factoring-through hit is minimal.
std::vector<Modulus> modulus_divisors(const Modulus& m);

/// Abstract element of (O/m)* x {+-1}^flags: a residue coprime to the finite
/// part plus a formal sign vector over the flagged real places (1 = negative).
struct ResidueClass {
    FE residue;
    std::vector<int> signs;
};

/// One CRT factor of the residue group.
struct GroupPiece {
    enum Kind { CYCLIC, ENUM, SIGN };
    Kind kind = CYCLIC;
    PrimeIdeal P;       // residue pieces
    int k = 1;
    int sign_place = -1;  // SIGN pieces: real embedding index
    size_t ngens = 0;
    ZMat rels;

    // CYCLIC: residue field with a primitive element and BSGS tables
    FqField Fq;
    Int cyc_order = 1;
    FqField::El prim;

    // ENUM: complete unit table keyed by normal form mod the P^k lattice
    ZMat lat;
    std::vector<size_t> lat_pcols;
    std::vector<FE> gens;  // lifts of the piece generators (residue pieces)
    std::unordered_map<std::string, ZVec> dlog;

    ZVec piece_resolve(const NumberField& F, const FE& a) const;
};

/// (O_K/m)* x {+-1}^{flags}, presented as an AbGroup over CRT piece generators.
struct RayResidueGroup {
    NFPtr F;
    Modulus m;
    std::vector<GroupPiece> pieces;
    std::vector<size_t> offset;  // start of each piece's generators in the word
    AbGroup grp;
    ZMat mlat;  // HNF lattice of (gen), for residue normalization
    std::vector<size_t> mlat_pcols;
    std::vector<FE> crt_units;          // e_i = 1 mod piece i, = 0 mod others
    std::vector<FE> gen_lifts;          // single-residue lifts of piece generators
    std::vector<ResidueClass> gen_reps; // pair representatives of the SNF generators

    Int order() const { return grp.order; }
    const std::vector<Int>& divisors() const { return grp.divisors; }
    bool coprime(const FE& a) const;
    /// Word over the piece generators for an honest element (uses its real signs).
    ZVec presentation(const FE& a) const;
    ZVec presentation_pair(const ResidueClass& c) const;
    ZVec resolve(const FE& a) const { return grp.resolve(presentation(a)); }
    ZVec resolve_pair(const ResidueClass& c) const { return grp.resolve(presentation_pair(c)); }
    ResidueClass class_of(const FE& a) const;
    ResidueClass mul(const ResidueClass& a, const ResidueClass& b) const;
    FE normalize_residue(const FE& a) const;  // canonical rep mod (gen)
};

/// Builds the residue group; throws BoundExceeded past the enumeration bound.
RayResidueGroup residue_group(const NFPtr& F, const Modulus& m, Int enum_bound = Int(10000000));

/// Images of the unit generators (torsion, then fundamental) as words.
ZMat unit_words(const RayResidueGroup& G);

/// Strict ray class group: the residue group modulo the image of the units.
struct RayClassGroup {
    std::shared_ptr<const RayResidueGroup> G;
    AbGroup grp;  // same presentation generators, unit words appended as relations
    std::vector<ResidueClass> gen_reps;
    std::vector<FE> gen_elems;  // honest elements realizing the generator classes

    Int order() const { return grp.order; }
    const std::vector<Int>& divisors() const { return grp.divisors; }
    ZVec resolve(const FE& a) const { return grp.resolve(G->presentation(a)); }
    ZVec resolve_pair(const ResidueClass& c) const { return grp.resolve(G->presentation_pair(c)); }
    ZVec resolve_prime(const PrimeIdeal& P) const;
};

RayClassGroup ray_class_group(const NFPtr& F, const Modulus& m, Int enum_bound = Int(10000000));

/// Honest element congruent to c.residue mod the finite part whose flagged
/// real signs match c.signs; found by a bounded sweep over r + gen * (box).
FE honest_representative(const RayResidueGroup& G, const ResidueClass& c);

/// Character of a residue group with values in roots of unity: the value on
/// SNF generator i of order d_i is zeta_{d_i}^{k_i}.
struct FiniteCharacter {
    std::shared_ptr<const RayResidueGroup> G;
    std::vector<Int> k;

    Int order() const;
    /// Exact exponent: value = e^{2 pi i q} with q in [0,1).
    Rat eval_rat(const FE& a) const;
    Rat eval_rat_pair(const ResidueClass& c) const;
    Rat eval_rat_coords(const ZVec& coords) const;
    bool is_trivial() const;
};

FiniteCharacter trivial_character(std::shared_ptr<const RayResidueGroup> G);
/// From exponents of zeta_w on the SNF generators; requires (w/d_i) | a_i.
FiniteCharacter character_from_w_exponents(std::shared_ptr<const RayResidueGroup> G,
                                           const std::vector<Int>& a, const Int& w);
/// Exponents of zeta_w on the SNF generators for a given character.
std::vector<Int> character_w_exponents(const FiniteCharacter& eps, const Int& w);

/// Solve for a character given constraints sum_j a_j * coords[t][j] = targets[t]
/// mod w, with well-definedness a_j * d_j = 0 mod w.  Returns the a vector.
std::optional<std::vector<Int>> character_solve(const std::vector<Int>& divisors,
                                                const std::vector<ZVec>& coords,
                                                const std::vector<Int>& targets, const Int& w);

/// Whether the given SNF coordinate vectors generate the whole group.
bool spans_group(const std::vector<Int>& divisors, const std::vector<ZVec>& coords);

/// The presentation generators of G as abstract pairs (sign vectors indexed
/// by G's flagged places; residue generators carry all-positive signs).
std::vector<ResidueClass> presentation_generator_pairs(const RayResidueGroup& G);

/// Generators of { x : x*M = 0 mod divisors } where row i of M is the image
/// of source generator i in a target group's SNF coordinates.
ZMat kernel_mod(const ZMat& M, const std::vector<Int>& divisors);

}  // namespace hecke
