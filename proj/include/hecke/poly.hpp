#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "hecke/bigint.hpp"

namespace hecke {

/// Dense polynomial over Q, coefficients ascending by degree.
using QPoly = std::vector<Rat>;

int degree(const QPoly& f);  // -1 for zero
QPoly qp_trim(QPoly f);
QPoly qp_add(const QPoly& a, const QPoly& b);
QPoly qp_sub(const QPoly& a, const QPoly& b);
QPoly qp_mul(const QPoly& a, const QPoly& b);
QPoly qp_scale(const QPoly& a, const Rat& c);
/// quotient and remainder; divisor must be nonzero
std::pair<QPoly, QPoly> qp_divmod(const QPoly& a, const QPoly& b);
Rat qp_eval(const QPoly& f, const Rat& x);
QPoly qp_derivative(const QPoly& f);

Int resultant(const QPoly& f, const QPoly& g);  // both integral
Int poly_discriminant(const QPoly& f);          // integral monic f

/// Number of distinct real roots (Sturm).  f squarefree not required.
int count_real_roots(const QPoly& f);

/// All complex roots, Durand-Kerner; deterministic ordering by (re, im).
std::vector<std::complex<double>> complex_roots(const QPoly& f);

/// True iff the integral monic polynomial is irreducible over Q.
/// Strategy: candidate factors from subsets of the numerically computed
/// roots, each candidate verified by exact division.
bool is_irreducible_monic(const QPoly& f);

/// Polynomials over F_p, p < 2^62, coefficients ascending.
struct FpPoly {
    uint64_t p = 0;
    std::vector<uint64_t> c;

    int deg() const { return static_cast<int>(c.size()) - 1; }
};

FpPoly fp_from_q(const QPoly& f, uint64_t p);  // denominators must be prime to p
FpPoly fp_trim(FpPoly f);
FpPoly fp_mul(const FpPoly& a, const FpPoly& b);
FpPoly fp_mod(const FpPoly& a, const FpPoly& m);
FpPoly fp_gcd(FpPoly a, FpPoly b);  // monic gcd
FpPoly fp_powmod(const FpPoly& base, const Int& e, const FpPoly& m);
FpPoly fp_monic(const FpPoly& f);

/// Irreducible factors with multiplicity, deterministic order
/// (sorted by degree, then lexicographically by coefficients).
std::vector<std::pair<FpPoly, int>> fp_factor(const FpPoly& f);

}  // namespace hecke
