#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hecke/field.hpp"
#include "hecke/linalg.hpp"
#include "hecke/poly.hpp"

namespace hecke {

// prime ideal of a catalog field, always principal, carried by a canonical
// generator; residue arithmetic goes through gpoly = the irreducible factor
// of the defining polynomial mod p that cuts this prime out
struct PrimeIdeal {
    NFPtr F;
    Int p;
    int e = 1;
    int f = 1;
    FE gen;
    FpPoly gpoly;

    Int norm() const;
    std::string str() const;
    bool operator==(const PrimeIdeal& o) const;
};

// primes above p, ordered by their residue polynomials
std::vector<PrimeIdeal> factor_rational_prime(const NFPtr& F, const Int& p);

// row-HNF basis of the lattice of an integral principal ideal (a)
ZMat principal_lattice(const NFPtr& F, const FE& a);

bool lattice_contains(const ZMat& H, const ZVec& v);

// exact P-adic valuation of a nonzero element (fractional allowed)
int valuation(const PrimeIdeal& P, const FE& a);

// T2 norm Tr(a * conj(a)) and its Gram matrix on the power basis
Rat t2_norm(const NumberField& F, const FE& a);
ZMat t2_gram(const NFPtr& F);

// deterministic choice among the associates of a nonzero integral element:
// greedy T2 descent along fundamental units, then a bounded unit sweep,
// keep candidates whose last nonzero coordinate is positive, take the one
// of least T2 norm, ties by lexicographically least coordinate vector
FE canonical_associate(const NFPtr& F, const FE& a);

// all lattice vectors x with 0 < x G x^T <= R, G positive definite
std::vector<ZVec> short_vectors(const ZMat& G, const Int& R);

// residue field O/P as F_p[y]/(gpoly)
struct FqField {
    NFPtr F;
    uint64_t p = 0;
    FpPoly g;
    int f = 1;

    using El = std::vector<uint64_t>;

    El zero() const;
    El one() const;
    El gen_el() const;  // image of theta
    Int size() const;
    Int group_order() const;
    bool is_zero(const El& a) const;
    bool is_one(const El& a) const;
    El from_int(const Int& n) const;
    El add(const El& a, const El& b) const;
    El sub(const El& a, const El& b) const;
    El neg(const El& a) const;
    El mul(const El& a, const El& b) const;
    El inv(const El& a) const;
    El pow(El a, Int e) const;
    // reduce a field element whose denominator is prime to p
    El reduce(const FE& a) const;
    std::string key(const El& a) const;
};

FqField residue_field(const PrimeIdeal& P);

// order of a unit given the factorization of the group order
Int fq_element_order(const FqField& Fq, const FqField::El& a,
                     const std::vector<std::pair<Int, int>>& group_factors);

// baby-step giant-step discrete log in <base>; nullopt if target outside
std::optional<Int> fq_dlog(const FqField& Fq, const FqField::El& base,
                           const FqField::El& target, const Int& base_order);

}  // namespace hecke
