#include "hecke/multdep.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>

#include "hecke/bigint.hpp"
#include "hecke/poly.hpp"

namespace hecke {

namespace {

// numeric |x| under the complex embedding where the fundamental unit is most
// separated from 1; used only to seed an exactly verified unit exponent
double abs_at_embedding(const NumberField& F, const FE& x, const std::vector<std::complex<double>>& roots,
                        size_t which) {
    std::complex<double> v(0.0, 0.0), t(1.0, 0.0);
    for (int i = 0; i < F.deg; i++) {
        v += t * std::complex<double>(x[i].get_d(), 0.0);
        t *= roots[which];
    }
    return std::abs(v);
}

std::pair<long, ZVec> unit_decompose(const NFPtr& F, const FE& u) {
    size_t rank = F->units.fundamental_units.size();
    if (rank == 0) {
        auto k = F->torsion_exponent(u);
        if (!k) throw std::logic_error("unit_decompose: residual not torsion in a rank-0 field");
        return {*k, {}};
    }
    const FE& fu = F->units.fundamental_units[0];
    auto roots = complex_roots(F->min_poly);
    size_t best = 0;
    double sep = 0.0;
    for (size_t i = 0; i < roots.size(); i++) {
        double s = std::fabs(std::log(abs_at_embedding(*F, fu, roots, i)));
        if (s > sep) {
            sep = s;
            best = i;
        }
    }
    double lu = std::log(abs_at_embedding(*F, u, roots, best));
    double lf = std::log(abs_at_embedding(*F, fu, roots, best));
    long b0 = std::lround(lu / lf);
    for (long off = 0; off <= 8; off++) {
        for (long sgn : {1L, -1L}) {
            long b = b0 + sgn * off;
            FE rem = F->mul(u, F->pow(fu, -b));
            auto k = F->torsion_exponent(rem);
            if (k) return {*k, {Int(b)}};
            if (off == 0) break;
        }
    }
    throw std::logic_error("unit_decompose: no torsion residual near the numeric estimate");
}

// cached factorizations of residue group orders
const std::vector<std::pair<Int, int>>& factors_cached(const Int& n) {
    static std::map<Int, std::vector<std::pair<Int, int>>> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, factor_int(n)).first;
    return it->second;
}

int valuation_int(Int n, const Int& ell) {
    int v = 0;
    while (n % ell == 0) {
        n /= ell;
        v++;
    }
    return v;
}

// minimal t with cbar^t in the subgroup generated by abar, per Sylow piece
Int minimal_t(const FqField& Fq, const FqField::El& cbar, const std::vector<FqField::El>& abar) {
    Int N = Fq.group_order();
    const auto& fac = factors_cached(N);
    Int ord_c = fq_element_order(Fq, cbar, fac);
    std::vector<Int> ord_a;
    for (auto& ab : abar) ord_a.push_back(fq_element_order(Fq, ab, fac));
    Int t = 1;
    for (auto& [ell, mult] : fac) {
        int e = valuation_int(ord_c, ell);
        int h = 0;
        for (auto& oa : ord_a) h = std::max(h, valuation_int(oa, ell));
        for (int i = h; i < e; i++) t *= ell;
    }
    return t;
}

// ---------------------------------------------------------------- fast scan
// Generator-free residue arithmetic for the local probe.  Principal
// generators are expensive to construct (lattice enumeration + associate
// canonicalization) and the probe only needs the residue fields, so clean
// primes are handled with plain (p, gpoly) data and Montgomery arithmetic;
// full PrimeIdeals are materialized only for witnesses and report entries.

struct Mont {
    uint64_t p = 0, pinv = 0, r2 = 0, one = 0;

    void init(uint64_t p_) {
        p = p_;
        uint64_t inv = p;  // Newton iteration for p^{-1} mod 2^64, p odd
        for (int i = 0; i < 5; i++) inv *= 2 - p * inv;
        pinv = ~inv + 1;
        one = (~uint64_t(0) % p) + 1;
        if (one == p) one = 0;
        r2 = static_cast<uint64_t>((unsigned __int128)one * one % p);
    }
    uint64_t redc(unsigned __int128 T) const {
        uint64_t m = static_cast<uint64_t>(T) * pinv;
        uint64_t r = static_cast<uint64_t>((T + (unsigned __int128)m * p) >> 64);
        return r >= p ? r - p : r;
    }
    uint64_t mul(uint64_t a, uint64_t b) const { return redc((unsigned __int128)a * b); }
    uint64_t to(uint64_t a) const { return mul(a % p, r2); }
    uint64_t from(uint64_t a) const { return redc(a); }
    uint64_t add(uint64_t a, uint64_t b) const {
        uint64_t s = a + b;
        return s >= p ? s - p : s;
    }
    uint64_t sub(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + p - b; }
    uint64_t pow_scalar(uint64_t a, uint64_t e) const {
        uint64_t acc = one;
        while (e) {
            if (e & 1) acc = mul(acc, a);
            a = mul(a, a);
            e >>= 1;
        }
        return acc;
    }
};

// F_p[x]/(g) with g monic of degree f <= 4; coefficients in Montgomery form
struct FqRing {
    Mont M;
    int f = 1;
    std::array<uint64_t, 5> g{};  // monic, g[f] = Mont one

    using E = std::array<uint64_t, 4>;

    E one() const {
        E e{};
        e[0] = M.one;
        return e;
    }
    bool is_one(const E& e) const {
        if (e[0] != M.one) return false;
        for (int i = 1; i < f; i++)
            if (e[i]) return false;
        return true;
    }
    bool is_zero(const E& e) const {
        for (int i = 0; i < f; i++)
            if (e[i]) return false;
        return true;
    }
    E mul(const E& a, const E& b) const {
        // raw column sums stay below 4 * p^2 < 2^63 for p < 2^30
        unsigned __int128 col[7] = {};
        for (int i = 0; i < f; i++) {
            if (!a[i]) continue;
            for (int j = 0; j < f; j++) col[i + j] += (unsigned __int128)a[i] * b[j];
        }
        uint64_t c[7];
        for (int i = 0; i < 2 * f - 1; i++) c[i] = M.redc(col[i]);
        for (int i = 2 * f - 2; i >= f; i--) {
            uint64_t t = c[i];
            if (!t) continue;
            for (int j = 0; j < f; j++) c[i - f + j] = M.sub(c[i - f + j], M.mul(t, g[j]));
        }
        E out{};
        for (int i = 0; i < f; i++) out[i] = c[i];
        return out;
    }
    E pow(E a, unsigned __int128 e) const {
        E acc = one();
        while (e) {
            if (e & 1) acc = mul(acc, a);
            a = mul(a, a);
            e >>= 1;
        }
        return acc;
    }
};

unsigned __int128 ring_element_order(const FqRing& R, const FqRing::E& a,
                                     const std::vector<std::pair<uint64_t, int>>& fac,
                                     unsigned __int128 N) {
    unsigned __int128 o = N;
    for (const auto& [ell, mult] : fac) {
        for (int i = 0; i < mult; i++) {
            if (o % ell != 0) break;
            unsigned __int128 cand = o / ell;
            if (R.is_one(R.pow(a, cand)))
                o = cand;
            else
                break;
        }
    }
    return o;
}

int val_u128(unsigned __int128 n, uint64_t ell) {
    int v = 0;
    while (n % ell == 0) {
        n /= ell;
        v++;
    }
    return v;
}

// splitting data of one rational prime: residue degrees, residue polynomials
// (plain coefficients, sorted the way factor_rational_prime orders ideals),
// and the factorizations of p^f - 1 for each occurring f
struct PrimeDatum {
    bool usable = false;
    std::vector<std::pair<int, std::array<uint64_t, 5>>> ideals;
    std::map<int, std::vector<std::pair<uint64_t, int>>> ordfac;
};

std::vector<std::pair<uint64_t, int>> unit_group_factors(uint64_t q, int f) {
    // p^f - 1 through its cyclotomic pieces, each of which fits in 64 bits
    std::map<uint64_t, int> acc;
    auto take = [&](uint64_t n) {
        for (auto& [ell, m] : factor_u64(n)) acc[ell] += m;
    };
    take(q - 1);
    if (f % 2 == 0) take(q + 1);
    if (f % 3 == 0) take(q * q + q + 1);
    if (f % 4 == 0) take(q * q + 1);
    return {acc.begin(), acc.end()};
}

struct FieldScanCache {
    std::vector<PrimeDatum> data;  // parallel to primes_upto(built)
    uint32_t built = 0;
};

FieldScanCache& field_scan_cache(const NFPtr& F, uint32_t bound) {
    static std::mutex mu;
    static std::map<std::string, FieldScanCache> caches;
    std::lock_guard<std::mutex> lock(mu);
    FieldScanCache& C = caches[F->label];
    if (C.built >= bound) return C;
    const auto& primes = primes_upto(bound);
    C.data.resize(primes.size());
    size_t start = 0;
    while (start < primes.size() && primes[start] <= C.built) start++;
    for (size_t i = start; i < primes.size(); i++) {
        uint64_t q = primes[i];
        PrimeDatum& pd = C.data[i];
        if (q < 3 || mpz_fdiv_ui(F->disc.get_mpz_t(), q) == 0) continue;
        FpPoly fbar;
        std::vector<std::pair<FpPoly, int>> factors;
        try {
            fbar = fp_from_q(F->min_poly, q);
            factors = fp_factor(fbar);
        } catch (const std::exception&) {
            continue;
        }
        bool ok = true;
        for (auto& [g, e] : factors)
            if (e != 1 || g.deg() < 1 || g.deg() > 4) ok = false;
        if (!ok) continue;
        for (auto& [g, e] : factors) {
            std::array<uint64_t, 5> gc{};
            for (size_t j = 0; j < g.c.size(); j++) gc[j] = g.c[j];
            int f = g.deg();
            pd.ideals.emplace_back(f, gc);
            if (!pd.ordfac.count(f)) pd.ordfac[f] = unit_group_factors(q, f);
        }
        pd.usable = true;
    }
    C.built = bound;
    return C;
}

struct ProbeScan {
    const NFPtr& F;
    FE c;
    std::vector<FE> a;
    std::vector<Int> bad_chars;  // residue characteristics to skip

    // visit(Q, t) may stop the scan by returning true; it is only invoked
    // for t > 1, or for every scanned ideal when a report is requested
    template <typename Visit>
    void run(const Int& prime_bound, bool split_only, ProbeReport* report, Visit visit) const {
        // q coprime to den(x) and num(Nm x) forces v_Q(x) = 0 for every Q | q:
        // the valuations are then nonnegative and sum (with weights f_Q) to zero
        Int gate = 1;
        for (const FE* x : elements()) {
            gate *= F->common_denominator(*x);
            Rat nm = F->norm(*x);
            gate *= abs(nm.get_num());
        }
        if (F->deg <= 4 && prime_bound <= 2000000 && prime_bound >= 2) {
            uint32_t bound = static_cast<uint32_t>(prime_bound.get_ui());
            const auto& primes = primes_upto(bound);
            const FieldScanCache& cache = field_scan_cache(F, bound);
            // integerized coordinates for per-prime reduction
            std::vector<const FE*> elems = elements();
            size_t ne = elems.size();
            std::vector<Int> dens(ne);
            std::vector<std::vector<Int>> nums(ne);
            for (size_t k = 0; k < ne; k++) {
                dens[k] = F->common_denominator(*elems[k]);
                for (const Rat& co : *elems[k]) {
                    Rat t = co * Rat(dens[k]);
                    nums[k].push_back(t.get_num());
                }
            }
            for (size_t i = 0; i < primes.size(); i++) {
                Int q(primes[i]);
                if (std::find(bad_chars.begin(), bad_chars.end(), q) != bad_chars.end()) continue;
                const PrimeDatum& pd = cache.data[i];
                bool clean = pd.usable && gate % q != 0;
                if (!clean) {
                    if (!pd.usable && mpz_fdiv_ui(F->disc.get_mpz_t(), primes[i]) == 0) continue;
                    if (prime_slow(q, split_only, report, visit)) return;
                    continue;
                }
                if (prime_fast(primes[i], pd, dens, nums, split_only, report, visit)) return;
            }
            return;
        }
        for (Int q = 2; q <= prime_bound; q = nextprime(q)) {
            if (std::find(bad_chars.begin(), bad_chars.end(), q) != bad_chars.end()) continue;
            if (F->disc % q == 0) continue;
            if (prime_slow(q, split_only, report, visit)) return;
        }
    }

    // reference per-ideal path: principal generators, exact valuations
    template <typename Visit>
    bool prime_slow(const Int& q, bool split_only, ProbeReport* report, Visit& visit) const {
        std::vector<PrimeIdeal> above;
        try {
            above = factor_rational_prime(F, q);
        } catch (const BoundExceeded&) {
            return false;
        }
        for (auto& Q : above) {
            if (split_only && Q.f != 1) continue;
            bool coprime = valuation(Q, c) == 0;
            for (auto& ai : a)
                if (coprime && valuation(Q, ai) != 0) coprime = false;
            if (!coprime) continue;
            FqField Fq = residue_field(Q);
            Int t;
            try {
                FqField::El cbar = Fq.reduce(c);
                std::vector<FqField::El> abar;
                for (auto& ai : a) abar.push_back(Fq.reduce(ai));
                t = minimal_t(Fq, cbar, abar);
            } catch (const BoundExceeded&) {
                if (report) report->skipped.push_back(Q);
                continue;
            }
            if (report) {
                report->t_values.emplace_back(Q, t);
                if (t > 1) report->witnesses.push_back(Q);
            }
            if ((t > 1 || report) && visit(Q, t)) return true;
        }
        return false;
    }

    template <typename Visit>
    bool prime_fast(uint64_t q, const PrimeDatum& pd, const std::vector<Int>& dens,
                    const std::vector<std::vector<Int>>& nums, bool split_only, ProbeReport* report,
                    Visit& visit) const {
        size_t ne = dens.size();
        Mont M;
        M.init(q);
        // coordinates mod q, shared by the ideals above q
        std::vector<uint64_t> dinv(ne);
        std::vector<std::array<uint64_t, 4>> co(ne);
        for (size_t k = 0; k < ne; k++) {
            dinv[k] = M.pow_scalar(M.to(mpz_fdiv_ui(dens[k].get_mpz_t(), q)), q - 2);
            co[k] = {};
            for (size_t j = 0; j < nums[k].size(); j++)
                co[k][j] = M.mul(M.to(mpz_fdiv_ui(nums[k][j].get_mpz_t(), q)), dinv[k]);
        }
        // stage reductions for every ideal first so a degenerate reduction
        // (impossible on a gated prime, kept as a safeguard) can fall back to
        // the exact path before anything is reported
        std::vector<std::pair<FqRing, std::vector<FqRing::E>>> staged(pd.ideals.size());
        for (size_t s = 0; s < pd.ideals.size(); s++) {
            const auto& [f, gc] = pd.ideals[s];
            if (split_only && f != 1) continue;
            FqRing& R = staged[s].first;
            R.M = M;
            R.f = f;
            for (int j = 0; j <= f; j++) R.g[j] = M.to(gc[j]);
            // power basis images x^j mod g, j < deg
            std::array<FqRing::E, 4> xp{};
            xp[0] = R.one();
            if (F->deg > 1) {
                FqRing::E x{};
                if (f == 1) {
                    x[0] = M.sub(0, R.g[0]);
                } else {
                    x[1] = M.one;
                }
                xp[1] = x;
                for (int j = 2; j < F->deg; j++) xp[j] = R.mul(xp[j - 1], x);
            }
            auto& vals = staged[s].second;
            vals.resize(ne);
            for (size_t k = 0; k < ne; k++) {
                FqRing::E v{};
                for (int j = 0; j < F->deg; j++) {
                    if (!co[k][j]) continue;
                    for (int l = 0; l < f; l++) v[l] = M.add(v[l], M.mul(co[k][j], xp[j][l]));
                }
                if (R.is_zero(v)) return prime_slow(Int(q), split_only, report, visit);
                vals[k] = v;
            }
        }
        for (size_t s = 0; s < pd.ideals.size(); s++) {
            const auto& [f, gc] = pd.ideals[s];
            if (split_only && f != 1) continue;
            const FqRing& R = staged[s].first;
            const auto& vals = staged[s].second;
            unsigned __int128 N = 1;
            for (int j = 0; j < f; j++) N *= q;
            N -= 1;
            const auto& fac = pd.ordfac.at(f);
            // the residue group is cyclic, so c generates mod <a..> iff
            // c^lcm(ord a_i) = 1; that one pow settles t = 1 without peeling c
            unsigned __int128 L = 1;
            std::vector<int> hs(fac.size(), 0);
            for (size_t k = 1; k < ne; k++) {
                unsigned __int128 o = ring_element_order(R, vals[k], fac, N);
                for (size_t j = 0; j < fac.size(); j++) {
                    int v = val_u128(o, fac[j].first);
                    if (v > hs[j]) hs[j] = v;
                }
            }
            for (size_t j = 0; j < fac.size(); j++)
                for (int i = 0; i < hs[j]; i++) L *= fac[j].first;
            unsigned __int128 t128 = 1;
            if (!R.is_one(R.pow(vals[0], L))) {
                unsigned __int128 oc = ring_element_order(R, vals[0], fac, N);
                for (size_t j = 0; j < fac.size(); j++) {
                    int e = val_u128(oc, fac[j].first);
                    for (int i = hs[j]; i < e; i++) t128 *= fac[j].first;
                }
            }
            Int t(static_cast<unsigned long>(t128 % 1000000000000000000ull));
            if (t128 >= 1000000000000000000ull)
                t = Int(static_cast<unsigned long>(t128 / 1000000000000000000ull)) *
                        Int(1000000000000000000UL) +
                    t;
            if (t > 1 || report) {
                PrimeIdeal Q = materialize(q, gc);
                if (t > 1) {
                    // witnesses feed verdicts: certify them on the reference path
                    FqField Fq = residue_field(Q);
                    FqField::El cbar = Fq.reduce(c);
                    std::vector<FqField::El> abar;
                    for (auto& ai : a) abar.push_back(Fq.reduce(ai));
                    if (minimal_t(Fq, cbar, abar) != t)
                        throw std::logic_error("local probe kernel mismatch at q=" + Int(q).get_str());
                }
                if (report) {
                    report->t_values.emplace_back(Q, t);
                    if (t > 1) report->witnesses.push_back(Q);
                }
                if (visit(Q, t)) return true;
            }
        }
        return false;
    }

    PrimeIdeal materialize(uint64_t q, const std::array<uint64_t, 5>& gc) const {
        for (auto& Q : factor_rational_prime(F, Int(q))) {
            if (static_cast<size_t>(Q.f + 1) != Q.gpoly.c.size()) continue;
            bool same = true;
            for (size_t j = 0; j < Q.gpoly.c.size(); j++)
                if (Q.gpoly.c[j] != gc[j]) same = false;
            if (same) return Q;
        }
        throw std::logic_error("local probe: residue polynomial does not match any prime above " +
                               Int(q).get_str());
    }

    std::vector<const FE*> elements() const {
        std::vector<const FE*> out{&c};
        for (auto& ai : a) out.push_back(&ai);
        return out;
    }

    static Int nextprime(const Int& q) {
        Int r;
        mpz_nextprime(r.get_mpz_t(), q.get_mpz_t());
        return r;
    }
};

}  // namespace

SUnitFactorization sunit_factor(const NFPtr& F, const FE& x) {
    if (F->is_zero(x)) throw std::invalid_argument("sunit_factor: zero");
    SUnitFactorization out;
    out.element = x;
    Rat nm = F->norm(x);
    Int num = abs(nm.get_num()), den = nm.get_den();
    Int budget = Int(1) << 63;
    if (num > budget || den > budget) throw BoundExceeded("sunit_factor: norm exceeds factoring budget");
    std::vector<Int> rational_primes;
    for (auto& [p, e] : factor_int(num)) rational_primes.push_back(p);
    for (auto& [p, e] : factor_int(den))
        if (std::find(rational_primes.begin(), rational_primes.end(), p) == rational_primes.end())
            rational_primes.push_back(p);
    std::sort(rational_primes.begin(), rational_primes.end());
    FE rest = x;
    for (auto& p : rational_primes) {
        for (auto& P : factor_rational_prime(F, p)) {
            int v = valuation(P, x);
            if (v == 0) continue;
            out.support.push_back(P);
            out.exponents.push_back(v);
            rest = F->mul(rest, F->pow(P.gen, -long(v)));
        }
    }
    auto [k, ue] = unit_decompose(F, rest);
    out.torsion_exp = k;
    out.unit_exponents = ue;
    return out;
}

std::optional<MultRelation> mult_relation(const NFPtr& F, const FE& c, const std::vector<FE>& a,
                                          const Int& forbidden) {
    size_t n = a.size();
    SUnitFactorization fc = sunit_factor(F, c);
    std::vector<SUnitFactorization> fa;
    for (auto& ai : a) fa.push_back(sunit_factor(F, ai));

    // combined prime support, deduplicated
    std::vector<PrimeIdeal> support = fc.support;
    for (auto& f : fa)
        for (auto& P : f.support)
            if (std::find(support.begin(), support.end(), P) == support.end()) support.push_back(P);
    size_t rank = F->units.fundamental_units.size();
    size_t cols = support.size() + rank;

    auto extended = [&](const FE& x, const SUnitFactorization& f) {
        ZVec v(cols, 0);
        for (size_t j = 0; j < support.size(); j++) v[j] = valuation(support[j], x);
        for (size_t j = 0; j < rank; j++) v[support.size() + j] = f.unit_exponents[j];
        return v;
    };
    ZVec vc = extended(c, fc);
    ZMat A;
    for (size_t i = 0; i < n; i++) A.push_back(extended(a[i], fa[i]));

    // minimal t with t*vc in the integer row span of A
    ZMat U;
    std::vector<size_t> pcols;
    ZMat H = hnf_rows(A, &U, &pcols);
    size_t r = pcols.size();
    QVec vq(cols);
    for (size_t j = 0; j < cols; j++) vq[j] = Rat(vc[j]);
    auto y = solve_echelon(H, pcols, vq);
    if (!y) return std::nullopt;
    Int t = 1;
    for (size_t i = 0; i < r; i++) t = lcm(t, (*y)[i].get_den());

    ZVec m(n, 0);
    for (size_t i = 0; i < r; i++) {
        Rat yi = (*y)[i] * t;
        if (yi.get_den() != 1) throw std::logic_error("mult_relation: non-integral scaled solution");
        for (size_t k = 0; k < n; k++) m[k] += yi.get_num() * U[i][k];
    }

    // canonical coset representative: smallest (|m|, m) lexicographically
    ZMat ker = left_kernel(A);
    if (!ker.empty()) {
        ZMat KH = hnf_rows(ker, nullptr, nullptr);
        while (KH.size() > 0 && std::all_of(KH.back().begin(), KH.back().end(),
                                            [](const Int& z) { return z == 0; }))
            KH.pop_back();
        auto better = [](const ZVec& x, const ZVec& y) {
            for (size_t i = 0; i < x.size(); i++) {
                Int ax = abs(x[i]), ay = abs(y[i]);
                if (ax != ay) return ax < ay;
            }
            return x < y;
        };
        bool improved = true;
        while (improved) {
            improved = false;
            for (auto& kv : KH) {
                for (long s : {1L, -1L}) {
                    ZVec cand = m;
                    for (size_t k = 0; k < n; k++) cand[k] += s * kv[k];
                    if (better(cand, m)) {
                        m = cand;
                        improved = true;
                    }
                }
            }
        }
    }

    // torsion residual, exact
    auto assemble = [&](const Int& tt, const ZVec& mm) {
        FE z = F->pow(c, ilong(tt));
        for (size_t i = 0; i < n; i++) z = F->mul(z, F->pow(a[i], -ilong(mm[i])));
        return z;
    };
    FE zeta = assemble(t, m);
    if (!F->is_torsion_unit(zeta)) throw std::logic_error("mult_relation: residual is not torsion");

    // reduce t when t divides every exponent (no-op for a minimal solve,
    // kept as the declared normalization postcondition)
    if (t > 1) {
        bool div = std::all_of(m.begin(), m.end(), [&](const Int& z) { return z % t == 0; });
        if (div) {
            ZVec m1(n);
            for (size_t k = 0; k < n; k++) m1[k] = m[k] / t;
            FE zeta1 = assemble(1, m1);
            if (!F->is_torsion_unit(zeta1)) throw std::logic_error("mult_relation: bad t reduction");
            t = 1;
            m = m1;
            zeta = zeta1;
        }
    }

    if (forbidden > 0 && t % forbidden == 0) return std::nullopt;
    return MultRelation{t, m, zeta};
}

ProbeReport local_probe(const NFPtr& F, const FE& c, const std::vector<FE>& a,
                        const Int& prime_bound, bool split_only) {
    ProbeReport report;
    ProbeScan scan{F, c, a, {}};
    scan.run(prime_bound, split_only, &report, [](const PrimeIdeal&, const Int&) { return false; });
    return report;
}

std::optional<PrimeIdeal> first_witness(const NFPtr& F, const FE& c, const std::vector<FE>& a,
                                        const Int& ell, const Int& prime_bound, bool split_only) {
    std::optional<PrimeIdeal> hit;
    ProbeScan scan{F, c, a, {}};
    scan.run(prime_bound, split_only, nullptr, [&](const PrimeIdeal& Q, const Int& t) {
        bool witness = ell > 0 ? (t % ell == 0 && t > 1) : t > 1;
        if (witness) hit = Q;
        return witness;
    });
    return hit;
}

}  // namespace hecke
