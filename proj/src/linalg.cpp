#include "hecke/linalg.hpp"

#include <algorithm>
#include <cassert>

namespace hecke {

ZMat identity_mat(size_t n) {
    ZMat I(n, ZVec(n, 0));
    for (size_t i = 0; i < n; i++) I[i][i] = 1;
    return I;
}

ZVec mul_row_mat(const ZVec& x, const ZMat& A) {
    if (A.empty()) return {};
    ZVec out(A[0].size(), 0);
    assert(x.size() == A.size());
    for (size_t i = 0; i < A.size(); i++) {
        if (x[i] == 0) continue;
        for (size_t j = 0; j < out.size(); j++) out[j] += x[i] * A[i][j];
    }
    return out;
}

namespace {

int cmp_abs(const Int& a, const Int& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

void rows_gcd_combine(ZMat& H, ZMat* U, size_t r, size_t i, size_t col) {
    // replace rows r, i by unimodular combinations so H[r][col] = gcd, H[i][col] = 0
    Int a = H[r][col], b = H[i][col];
    Int g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    Int u = -(b / g), v = a / g;  // [s t; u v] has det 1
    size_t n = H[r].size();
    for (size_t j = 0; j < n; j++) {
        Int hr = H[r][j], hi = H[i][j];
        H[r][j] = s * hr + t * hi;
        H[i][j] = u * hr + v * hi;
    }
    if (U) {
        size_t m = (*U)[r].size();
        for (size_t j = 0; j < m; j++) {
            Int ur = (*U)[r][j], ui = (*U)[i][j];
            (*U)[r][j] = s * ur + t * ui;
            (*U)[i][j] = u * ur + v * ui;
        }
    }
}

void row_negate(ZMat& H, ZMat* U, size_t r) {
    for (auto& x : H[r]) x = -x;
    if (U)
        for (auto& x : (*U)[r]) x = -x;
}

void row_submul(ZMat& H, ZMat* U, size_t dst, size_t src, const Int& q) {
    if (q == 0) return;
    for (size_t j = 0; j < H[dst].size(); j++) H[dst][j] -= q * H[src][j];
    if (U)
        for (size_t j = 0; j < (*U)[dst].size(); j++) (*U)[dst][j] -= q * (*U)[src][j];
}

}  // namespace

ZMat hnf_rows(const ZMat& A, ZMat* U, std::vector<size_t>* pivot_cols) {
    ZMat H = A;
    size_t m = H.size(), n = m ? H[0].size() : 0;
    if (U) *U = identity_mat(m);
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t col = 0; col < n && r < m; col++) {
        size_t nz = m;
        for (size_t i = r; i < m; i++) {
            if (H[i][col] != 0 && (nz == m || cmp_abs(H[i][col], H[nz][col]) < 0)) nz = i;
        }
        if (nz == m) continue;
        std::swap(H[r], H[nz]);
        if (U) std::swap((*U)[r], (*U)[nz]);
        for (size_t i = r + 1; i < m; i++) {
            if (H[i][col] != 0) rows_gcd_combine(H, U, r, i, col);
        }
        if (H[r][col] < 0) row_negate(H, U, r);
        for (size_t i = 0; i < r; i++) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), H[i][col].get_mpz_t(), H[r][col].get_mpz_t());
            row_submul(H, U, i, r, q);
        }
        pivots.push_back(col);
        r++;
    }
    if (pivot_cols) *pivot_cols = pivots;
    return H;
}

namespace {

bool snf_clear_step(ZMat& D, ZMat& U, ZMat& V, size_t k) {
    size_t m = D.size(), n = D[0].size();
    bool touched = false;
    // clear column k below the pivot with unimodular row ops
    for (size_t i = k + 1; i < m; i++) {
        if (D[i][k] != 0) {
            rows_gcd_combine(D, &U, k, i, k);
            touched = true;
        }
    }
    // clear row k right of the pivot with unimodular column ops
    for (size_t j = k + 1; j < n; j++) {
        if (D[k][j] != 0) {
            Int a = D[k][k], b = D[k][j];
            Int g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
            Int u = -(b / g), v = a / g;
            for (size_t i = 0; i < m; i++) {
                Int ck = D[i][k], cj = D[i][j];
                D[i][k] = s * ck + t * cj;
                D[i][j] = u * ck + v * cj;
            }
            for (size_t i = 0; i < V.size(); i++) {
                Int ck = V[i][k], cj = V[i][j];
                V[i][k] = s * ck + t * cj;
                V[i][j] = u * ck + v * cj;
            }
            touched = true;
        }
    }
    return touched;
}

}  // namespace

SmithForm snf(const ZMat& A) {
    SmithForm out;
    out.D = A;
    size_t m = A.size(), n = m ? A[0].size() : 0;
    out.U = identity_mat(m);
    out.V = identity_mat(n);
    ZMat& D = out.D;
    for (size_t k = 0; k < std::min(m, n); k++) {
        // move a nonzero entry of the trailing block to (k,k)
        size_t pi = m, pj = n;
        for (size_t i = k; i < m; i++)
            for (size_t j = k; j < n; j++)
                if (D[i][j] != 0 && (pi == m || cmp_abs(D[i][j], D[pi][pj]) < 0)) pi = i, pj = j;
        if (pi == m) break;
        std::swap(D[k], D[pi]);
        std::swap(out.U[k], out.U[pi]);
        if (pj != k) {
            for (size_t i = 0; i < m; i++) std::swap(D[i][k], D[i][pj]);
            for (size_t i = 0; i < n; i++) std::swap(out.V[i][k], out.V[i][pj]);
        }
        while (snf_clear_step(D, out.U, out.V, k)) {
        }
        if (D[k][k] < 0) row_negate(D, &out.U, k);
        // enforce d_k | trailing entries
        bool redo = true;
        while (redo) {
            redo = false;
            for (size_t i = k + 1; i < m && !redo; i++) {
                for (size_t j = k + 1; j < n && !redo; j++) {
                    if (D[i][j] % D[k][k] != 0) {
                        // add row i to row k, then re-clear
                        for (size_t c = 0; c < n; c++) D[k][c] += D[i][c];
                        for (size_t c = 0; c < m; c++) out.U[k][c] += out.U[i][c];
                        while (snf_clear_step(D, out.U, out.V, k)) {
                        }
                        if (D[k][k] < 0) row_negate(D, &out.U, k);
                        redo = true;
                    }
                }
            }
        }
    }
    for (size_t k = 0; k < std::min(m, n); k++) out.divisors.push_back(D[k][k]);
    return out;
}

ZVec reduce_mod_lattice(const ZMat& H, const std::vector<size_t>& pivot_cols, ZVec v) {
    for (size_t r = 0; r < pivot_cols.size(); r++) {
        size_t c = pivot_cols[r];
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), v[c].get_mpz_t(), H[r][c].get_mpz_t());
        if (q != 0)
            for (size_t j = 0; j < v.size(); j++) v[j] -= q * H[r][j];
    }
    return v;
}

std::optional<QVec> solve_echelon(const ZMat& H, const std::vector<size_t>& pivot_cols,
                                  const QVec& v) {
    size_t rank = pivot_cols.size();
    QVec x(H.size(), Rat(0));
    for (size_t r = 0; r < rank; r++) {
        size_t c = pivot_cols[r];
        Rat acc = v[c];
        for (size_t i = 0; i < r; i++) acc -= x[i] * Rat(H[i][c]);
        x[r] = acc / Rat(H[r][c]);
    }
    // consistency across all columns
    for (size_t c = 0; c < v.size(); c++) {
        Rat acc(0);
        for (size_t r = 0; r < rank; r++) acc += x[r] * Rat(H[r][c]);
        if (acc != v[c]) return std::nullopt;
    }
    x.resize(H.size(), Rat(0));
    return x;
}

std::optional<ZVec> solve_integer(const ZMat& A, const ZVec& v) {
    if (A.empty()) {
        for (auto& x : v)
            if (x != 0) return std::nullopt;
        return ZVec{};
    }
    ZMat U;
    std::vector<size_t> pcols;
    ZMat H = hnf_rows(A, &U, &pcols);
    size_t rank = pcols.size();
    ZVec w = v;
    ZVec y(A.size(), 0);
    for (size_t i = 0; i < rank; i++) {
        size_t c = pcols[i];
        if (w[c] % H[i][c] != 0) return std::nullopt;
        Int q = w[c] / H[i][c];
        y[i] = q;
        if (q != 0)
            for (size_t j = 0; j < w.size(); j++) w[j] -= q * H[i][j];
    }
    for (auto& x : w)
        if (x != 0) return std::nullopt;
    return mul_row_mat(y, U);
}

std::optional<ZVec> solve_mod_vec(const ZMat& A, const ZVec& v, const ZVec& mods) {
    size_t cols = v.size();
    ZMat B = A;
    for (size_t j = 0; j < cols; j++) {
        if (mods[j] == 0) continue;
        ZVec row(cols, 0);
        row[j] = mods[j];
        B.push_back(row);
    }
    auto sol = solve_integer(B, v);
    if (!sol) return std::nullopt;
    ZVec x(sol->begin(), sol->begin() + static_cast<long>(A.size()));
    return x;
}

ZMat left_kernel(const ZMat& A) {
    ZMat U;
    std::vector<size_t> pcols;
    ZMat H = hnf_rows(A, &U, &pcols);
    size_t rank = pcols.size();
    ZMat ker;
    for (size_t i = rank; i < H.size(); i++) ker.push_back(U[i]);
    return ker;
}

ZMat inv_unimodular(const ZMat& V) {
    ZMat U;
    ZMat H = hnf_rows(V, &U);
    for (size_t i = 0; i < H.size(); i++)
        for (size_t j = 0; j < H.size(); j++)
            if (H[i][j] != (i == j ? 1 : 0))
                throw std::invalid_argument("inv_unimodular: matrix not unimodular");
    return U;
}

Int det_bareiss(ZMat A) {
    size_t n = A.size();
    if (n == 0) return 1;
    Int prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; k++) {
        if (A[k][k] == 0) {
            size_t sw = n;
            for (size_t i = k + 1; i < n; i++)
                if (A[i][k] != 0) {
                    sw = i;
                    break;
                }
            if (sw == n) return 0;
            std::swap(A[k], A[sw]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; i++) {
            for (size_t j = k + 1; j < n; j++) {
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) / prev;
            }
            A[i][k] = 0;
        }
        prev = A[k][k];
    }
    return sign > 0 ? A[n - 1][n - 1] : -A[n - 1][n - 1];
}

}  // namespace hecke
