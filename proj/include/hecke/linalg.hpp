#pragma once

#include <optional>
#include <vector>

#include "hecke/bigint.hpp"

namespace hecke {

using ZMat = std::vector<std::vector<Int>>;  // row major
using QVec = std::vector<Rat>;
using ZVec = std::vector<Int>;

ZMat identity_mat(size_t n);
ZVec mul_row_mat(const ZVec& x, const ZMat& A);  // x * A

/// Row-style Hermite normal form.  Returns H with H = U*A for unimodular U
/// (U optional).  H is in row echelon form with positive pivots and entries
/// above each pivot reduced into [0, pivot).  pivot_cols receives the pivot
/// column of each nonzero row; rows beyond the rank are zero.
ZMat hnf_rows(const ZMat& A, ZMat* U = nullptr, std::vector<size_t>* pivot_cols = nullptr);

/// Smith normal form: D = U*A*V diagonal with d1 | d2 | ..., di >= 0.
struct SmithForm {
    ZMat D, U, V;
    std::vector<Int> divisors;  // diagonal entries, zeros trimmed to rank are kept
};
SmithForm snf(const ZMat& A);

/// Canonical representative of v modulo the row space of an echelon H
/// (as produced by hnf_rows).  Entries at pivot columns land in [0, pivot).
ZVec reduce_mod_lattice(const ZMat& H, const std::vector<size_t>& pivot_cols, ZVec v);

/// Rational solution of x*H = v for echelon H; nullopt when inconsistent.
std::optional<QVec> solve_echelon(const ZMat& H, const std::vector<size_t>& pivot_cols,
                                  const QVec& v);

/// Determinant by fraction-free Gaussian elimination.
Int det_bareiss(ZMat A);

/// Integer solution of x*A = v; nullopt when none exists over Z.
std::optional<ZVec> solve_integer(const ZMat& A, const ZVec& v);

/// Integer solution of x*A = v with column j taken modulo mods[j]
/// (mods[j] = 0 means an exact equation).  Returns the x part only.
std::optional<ZVec> solve_mod_vec(const ZMat& A, const ZVec& v, const ZVec& mods);

/// Basis of the left kernel { x : x*A = 0 } as rows.
ZMat left_kernel(const ZMat& A);

/// Inverse of a unimodular square matrix.
ZMat inv_unimodular(const ZMat& V);

}  // namespace hecke
