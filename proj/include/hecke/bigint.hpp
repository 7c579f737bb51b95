#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hecke {

using Int = mpz_class;
using Rat = mpq_class;

/// Thrown when a computation exceeds a configured search or size bound.
struct BoundExceeded : std::runtime_error {
    explicit BoundExceeded(const std::string& what) : std::runtime_error(what) {}
};

uint64_t mul_mod_u64(uint64_t a, uint64_t b, uint64_t m);
uint64_t pow_mod_u64(uint64_t base, uint64_t exp, uint64_t m);

bool is_prime_u64(uint64_t n);

/// Prime factorization of n as (prime, exponent) pairs, primes ascending.
std::vector<std::pair<uint64_t, int>> factor_u64(uint64_t n);

/// Primes in [2, bound], ascending.
const std::vector<uint32_t>& primes_upto(uint32_t bound);

/// Smallest-prime-factor table for [0, bound]; index 0 and 1 hold 0.
const std::vector<uint32_t>& spf_table(uint32_t bound);

bool is_probable_prime(const Int& n);

/// Factor |n|. Trial division by small primes, then Pollard rho on the
/// leftover.  Throws BoundExceeded if a composite cofactor resists splitting
/// within the iteration budget.
std::vector<std::pair<Int, int>> factor_int(const Int& n);

Int pow_int(const Int& base, unsigned long exp);
Rat pow_rat(const Rat& base, long exp);

/// x with a*x = gcd(a,m) mod m; throws if gcd(a,m) != 1.
Int inv_mod(const Int& a, const Int& m);

long ilong(const Int& v);  // checked conversion

}  // namespace hecke
