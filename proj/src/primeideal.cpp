#include "hecke/primeideal.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace hecke {

Int PrimeIdeal::norm() const { return pow_int(p, f); }

std::string PrimeIdeal::str() const {
    std::ostringstream os;
    os << "(" << F->fe_str(gen) << ") [p=" << p.get_str() << " e=" << e << " f=" << f << "]";
    return os.str();
}

bool PrimeIdeal::operator==(const PrimeIdeal& o) const {
    return F->label == o.F->label && p == o.p && gen == o.gen;
}

namespace {

const ZMat& t2_gram_cached(const NumberField& F) {
    static std::mutex mu;
    static std::map<std::string, ZMat> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(F.label);
    if (it != cache.end()) return it->second;
    int d = F.deg;
    ZMat T(d, ZVec(d));
    for (int i = 0; i < d; i++) {
        FE ei = F.zero();
        ei[i] = 1;
        for (int j = 0; j < d; j++) {
            FE ej = F.zero();
            ej[j] = 1;
            Rat t = F.trace(F.mul(ei, F.apply_auto(ej, F.conj_index)));
            if (t.get_den() != 1) throw std::logic_error("t2_gram: non-integral trace");
            T[i][j] = t.get_num();
        }
    }
    return cache.emplace(F.label, std::move(T)).first->second;
}

}  // namespace

Rat t2_norm(const NumberField& F, const FE& a) {
    bool integral = true;
    for (const Rat& x : a)
        if (x.get_den() != 1) integral = false;
    if (integral) {
        const ZMat& G = t2_gram_cached(F);
        int d = F.deg;
        Int s = 0;
        for (int i = 0; i < d; i++) {
            if (a[i] == 0) continue;
            for (int j = 0; j < d; j++) s += a[i].get_num() * G[i][j] * a[j].get_num();
        }
        return Rat(s);
    }
    return F.trace(F.mul(a, F.apply_auto(a, F.conj_index)));
}

ZMat t2_gram(const NFPtr& F) { return t2_gram_cached(*F); }

ZMat principal_lattice(const NFPtr& F, const FE& a) {
    if (!F->is_integral(a)) throw std::invalid_argument("principal_lattice: element not integral");
    if (F->is_zero(a)) throw std::invalid_argument("principal_lattice: zero");
    int d = F->deg;
    ZMat rows(d, ZVec(d));
    FE cur = a;
    for (int j = 0; j < d; j++) {
        for (int i = 0; i < d; i++) rows[j][i] = cur[i].get_num();
        cur = F->mul(cur, F->theta());
    }
    ZMat H = hnf_rows(rows);
    H.resize(d);
    for (int i = 0; i < d; i++)
        if (H[i][i] == 0) throw std::logic_error("principal_lattice: rank deficiency");
    return H;
}

bool lattice_contains(const ZMat& H, const ZVec& v) {
    size_t d = H.size();
    std::vector<size_t> pivots(d);
    for (size_t i = 0; i < d; i++) pivots[i] = i;
    ZVec r = reduce_mod_lattice(H, pivots, v);
    for (const auto& c : r)
        if (c != 0) return false;
    return true;
}

namespace {

std::vector<ZVec> short_vectors_exact(const ZMat& G, const Int& R) {
    int d = static_cast<int>(G.size());
    std::vector<std::vector<Rat>> q(d, std::vector<Rat>(d, Rat(0)));
    for (int i = 0; i < d; i++)
        for (int j = 0; j < d; j++) q[i][j] = Rat(G[i][j]);
    for (int i = 0; i < d; i++) {
        if (q[i][i] <= 0) throw std::invalid_argument("short_vectors: form not positive definite");
        for (int j = i + 1; j < d; j++) {
            q[j][i] = q[i][j];
            q[i][j] = q[i][j] / q[i][i];
        }
        for (int k = i + 1; k < d; k++)
            for (int l = k; l < d; l++) q[k][l] -= q[k][i] * q[i][l];
    }
    std::vector<ZVec> out;
    ZVec x(d, 0);
    std::vector<Rat> T(d, Rat(0)), U(d, Rat(0));
    std::function<void(int)> rec = [&](int i) {
        if (T[i] < 0) return;
        // window |x_i + U_i| <= sqrt(T_i / q_ii)
        Rat Z = T[i] / q[i][i];
        Int zf;
        mpz_fdiv_q(zf.get_mpz_t(), Z.get_num_mpz_t(), Z.get_den_mpz_t());
        if (zf < 0) return;
        Int K = sqrt(zf);
        Rat c = -U[i];
        Int base;
        mpz_fdiv_q(base.get_mpz_t(), c.get_num_mpz_t(), c.get_den_mpz_t());
        for (Int n = base - K - 1; n <= base + K + 1; n++) {
            Rat dv = Rat(n) + U[i];
            Rat term = dv * dv * q[i][i];
            if (term > T[i]) continue;
            x[i] = n;
            if (i == 0) {
                bool nz = false;
                for (const auto& xi : x)
                    if (xi != 0) nz = true;
                if (nz) {
                    out.push_back(x);
                    if (out.size() > 200000)
                        throw BoundExceeded("short_vectors: too many lattice points");
                }
            } else {
                T[i - 1] = T[i] - term;
                U[i - 1] = 0;
                for (int j = i; j < d; j++) U[i - 1] += q[i - 1][j] * Rat(x[j]);
                rec(i - 1);
            }
        }
        x[i] = 0;
    };
    T[d - 1] = Rat(R);
    U[d - 1] = 0;
    rec(d - 1);
    return out;
}

// float-staged Fincke-Pohst: enumerate with padded windows in long double,
// keep exactly the vectors passing the exact 0 < x G x^T <= R test
std::vector<ZVec> short_vectors_fp(const ZMat& G, const Int& R) {
    int d = static_cast<int>(G.size());
    std::vector<std::vector<long double>> q(d, std::vector<long double>(d, 0.0L));
    for (int i = 0; i < d; i++)
        for (int j = 0; j < d; j++) q[i][j] = static_cast<long double>(G[i][j].get_d());
    for (int i = 0; i < d; i++) {
        if (G[i][i] <= 0) throw std::invalid_argument("short_vectors: form not positive definite");
        for (int j = i + 1; j < d; j++) {
            q[j][i] = q[i][j];
            q[i][j] = q[i][j] / q[i][i];
        }
        for (int k = i + 1; k < d; k++)
            for (int l = k; l < d; l++) q[k][l] -= q[k][i] * q[i][l];
        if (q[i][i] <= 0) throw std::invalid_argument("short_vectors: form not positive definite");
    }
    std::vector<ZVec> out;
    if (R <= 0) return out;
    long double Rf = static_cast<long double>(R.get_d());
    long double slack = Rf * 1e-12L + 1.0L;
    std::vector<long> x(d, 0);
    std::vector<long double> T(d, 0.0L), U(d, 0.0L);
    std::function<void(int)> rec = [&](int i) {
        if (T[i] < -slack) return;
        long double Z = T[i] / q[i][i];
        if (Z < 0) Z = 0;
        if (Z > 4e36L) throw BoundExceeded("short_vectors: window overflow");
        long K = static_cast<long>(sqrtl(Z)) + 1;
        long base = static_cast<long>(floorl(-U[i]));
        for (long n = base - K - 1; n <= base + K + 1; n++) {
            long double dv = static_cast<long double>(n) + U[i];
            long double term = dv * dv * q[i][i];
            if (term > T[i] + slack) continue;
            x[i] = n;
            if (i == 0) {
                Int v = 0;
                bool nz = false;
                for (int a = 0; a < d; a++) {
                    if (x[a] != 0) nz = true;
                    for (int b = 0; b < d; b++) v += Int(x[a]) * G[a][b] * Int(x[b]);
                }
                if (nz && v > 0 && v <= R) {
                    ZVec xv(d);
                    for (int a = 0; a < d; a++) xv[a] = Int(x[a]);
                    out.push_back(std::move(xv));
                    if (out.size() > 200000)
                        throw BoundExceeded("short_vectors: too many lattice points");
                }
            } else {
                T[i - 1] = T[i] - term;
                U[i - 1] = 0;
                for (int j = i; j < d; j++) U[i - 1] += q[i - 1][j] * static_cast<long double>(x[j]);
                rec(i - 1);
            }
        }
        x[i] = 0;
    };
    T[d - 1] = Rf;
    U[d - 1] = 0;
    rec(d - 1);
    return out;
}

}  // namespace

std::vector<ZVec> short_vectors(const ZMat& G, const Int& R) {
    // the float stage needs every entry exactly representable in a double
    Int big = R < 0 ? Int(0) : R;
    for (const auto& row : G)
        for (const auto& v : row)
            if (abs(v) > big) big = abs(v);
    if (big > Int("500000000000000")) return short_vectors_exact(G, R);
    return short_vectors_fp(G, R);
}

namespace {

bool fe_lex_less(const FE& a, const FE& b) {
    for (size_t i = 0; i < a.size(); i++) {
        if (a[i] < b[i]) return true;
        if (b[i] < a[i]) return false;
    }
    return false;
}

bool last_nonzero_positive(const FE& a) {
    for (size_t i = a.size(); i-- > 0;)
        if (a[i] != 0) return a[i] > 0;
    return false;
}

}  // namespace

FE canonical_associate(const NFPtr& F, const FE& a) {
    if (F->is_zero(a)) throw std::invalid_argument("canonical_associate: zero");
    if (!F->is_integral(a)) throw std::invalid_argument("canonical_associate: not integral");
    FE cur = a;
    const auto& fus = F->units.fundamental_units;
    // T2 descent makes the result independent of which associate we start from
    bool moved = true;
    while (moved) {
        moved = false;
        for (const FE& u : fus) {
            for (const FE& m : {u, F->inv(u)}) {
                FE cand = F->mul(cur, m);
                if (t2_norm(*F, cand) < t2_norm(*F, cur)) {
                    cur = cand;
                    moved = true;
                }
            }
        }
    }
    std::vector<FE> cands;
    std::function<void(size_t, const FE&)> sweep = [&](size_t idx, const FE& v) {
        if (idx == fus.size()) {
            FE w = v;
            for (long j = 0; j < F->units.torsion_order; j++) {
                cands.push_back(w);
                w = F->mul(w, F->units.torsion_generator);
            }
            return;
        }
        FE base = F->mul(v, F->pow(fus[idx], -3));
        for (int k = -3; k <= 3; k++) {
            sweep(idx + 1, base);
            base = F->mul(base, fus[idx]);
        }
    };
    sweep(0, cur);
    FE best;
    Rat best_t2;
    bool have = false;
    for (const FE& c : cands) {
        if (!last_nonzero_positive(c)) continue;
        Rat t2 = t2_norm(*F, c);
        if (!have || t2 < best_t2 || (t2 == best_t2 && fe_lex_less(c, best))) {
            best = c;
            best_t2 = t2;
            have = true;
        }
    }
    if (!have) throw std::logic_error("canonical_associate: empty candidate set");
    return best;
}

std::vector<PrimeIdeal> factor_rational_prime(const NFPtr& F, const Int& p) {
    if (p < 2 || !is_probable_prime(p))
        throw std::invalid_argument("factor_rational_prime: p is not prime");
    if (!p.fits_ulong_p() || p.get_ui() >= (1ull << 62))
        throw BoundExceeded("factor_rational_prime: prime too large for residue arithmetic");
    static std::mutex memo_mu;
    static std::map<std::pair<std::string, Int>, std::vector<PrimeIdeal>> memo;
    {
        std::lock_guard<std::mutex> lock(memo_mu);
        auto it = memo.find({F->label, p});
        if (it != memo.end()) {
            auto out = it->second;
            for (auto& P : out) P.F = F;
            return out;
        }
    }
    uint64_t pu = p.get_ui();
    int d = F->deg;
    FpPoly fbar = fp_from_q(F->min_poly, pu);
    auto factors = fp_factor(fbar);
    ZMat T2 = t2_gram(F);

    std::vector<PrimeIdeal> out;
    int efsum = 0;
    for (const auto& [g, e] : factors) {
        int f = static_cast<int>(g.c.size()) - 1;
        efsum += e * f;
        // lattice of (p, g(theta))
        ZMat rows(2 * d, ZVec(d, 0));
        for (int j = 0; j < d; j++) rows[j][j] = p;
        FE gt = F->zero();
        {
            FE pw = F->one();
            for (size_t i = 0; i < g.c.size(); i++) {
                gt = F->add(gt, F->mul_rat(pw, Rat(Int(g.c[i]))));
                pw = F->mul(pw, F->theta());
            }
        }
        FE cur = gt;
        for (int j = 0; j < d; j++) {
            for (int i = 0; i < d; i++) rows[d + j][i] = cur[i].get_num();
            cur = F->mul(cur, F->theta());
        }
        ZMat H = hnf_rows(rows);
        H.resize(d);
        Int det = 1;
        for (int i = 0; i < d; i++) det *= H[i][i];
        Int nrm = pow_int(p, f);
        if (det != nrm) throw std::logic_error("factor_rational_prime: lattice determinant mismatch");

        // Gram of the lattice basis
        ZMat GL(d, ZVec(d, 0));
        for (int i = 0; i < d; i++)
            for (int j = 0; j < d; j++) {
                Int s = 0;
                for (int k = 0; k < d; k++)
                    for (int l = 0; l < d; l++) s += H[i][k] * T2[k][l] * H[j][l];
                GL[i][j] = s;
            }

        // T2 of a generator is at least d * nrm^(2/d)
        Int z = nrm * nrm;
        Int root;
        mpz_root(root.get_mpz_t(), z.get_mpz_t(), d);
        if (pow_int(root, d) < z) root += 1;
        Int R = Int(d) * root;
        FE found;
        bool ok = false;
        for (int iter = 0; iter < 64 && !ok; iter++, R *= 2) {
            for (const ZVec& x : short_vectors(GL, R)) {
                FE v = F->zero();
                for (int i = 0; i < d; i++)
                    for (int j = 0; j < d; j++) {
                        Int t = x[i] * H[i][j];
                        v[j] += Rat(t);
                    }
                Rat n = F->norm(v);
                if (abs(n) == Rat(nrm)) {
                    found = v;
                    ok = true;
                    break;
                }
            }
        }
        if (!ok) throw std::logic_error("factor_rational_prime: no generator found");
        PrimeIdeal P;
        P.F = F;
        P.p = p;
        P.e = e;
        P.f = f;
        P.gen = canonical_associate(F, found);
        P.gpoly = g;
        out.push_back(std::move(P));
    }
    if (efsum != d) throw std::logic_error("factor_rational_prime: sum e*f != degree");
    {
        std::lock_guard<std::mutex> lock(memo_mu);
        memo.emplace(std::make_pair(F->label, p), out);
    }
    return out;
}

int valuation(const PrimeIdeal& P, const FE& a) {
    const NumberField& F = *P.F;
    if (F.is_zero(a)) throw std::invalid_argument("valuation: zero element");
    Int den = F.common_denominator(a);
    FE b = F.mul_rat(a, Rat(den));
    int vden = 0;
    Int d2 = den;
    while (d2 % P.p == 0) {
        d2 /= P.p;
        vden++;
    }
    int v = 0;
    FE c = b;
    while (true) {
        FE c2 = F.div(c, P.gen);
        if (!F.is_integral(c2)) break;
        c = c2;
        v++;
    }
    return v - P.e * vden;
}

// ---------------------------------------------------------------- residue

namespace {

FpPoly el_to_poly(const FqField& Fq, const FqField::El& a) {
    return fp_trim(FpPoly{Fq.p, a});
}

FqField::El poly_to_el(const FqField& Fq, const FpPoly& r) {
    FqField::El a(Fq.f, 0);
    for (size_t i = 0; i < r.c.size() && i < a.size(); i++) a[i] = r.c[i];
    return a;
}

// extended gcd in F_p[x]: s*a = gcd mod m
std::pair<FpPoly, FpPoly> fp_half_extgcd(FpPoly a, FpPoly m) {
    uint64_t p = a.p;
    FpPoly s0{p, {1}}, s1{p, {}};
    while (!m.c.empty()) {
        // a = q*m + r
        FpPoly r = a;
        FpPoly q{p, {}};
        uint64_t lead_inv = pow_mod_u64(m.c.back(), p - 2, p);
        while (r.c.size() >= m.c.size() && !r.c.empty()) {
            size_t shift = r.c.size() - m.c.size();
            uint64_t coef = mul_mod_u64(r.c.back(), lead_inv, p);
            if (q.c.size() < shift + 1) q.c.resize(shift + 1, 0);
            q.c[shift] = coef;
            for (size_t i = 0; i < m.c.size(); i++) {
                uint64_t sub = mul_mod_u64(coef, m.c[i], p);
                uint64_t& tgt = r.c[shift + i];
                tgt = (tgt + p - sub) % p;
            }
            r = fp_trim(r);
        }
        // (a, m) <- (m, r);  (s0, s1) <- (s1, s0 - q*s1)
        FpPoly qs = fp_mul(q, s1);
        FpPoly s2{p, {}};
        size_t n = std::max(s0.c.size(), qs.c.size());
        s2.c.assign(n, 0);
        for (size_t i = 0; i < n; i++) {
            uint64_t x = i < s0.c.size() ? s0.c[i] : 0;
            uint64_t y = i < qs.c.size() ? qs.c[i] : 0;
            s2.c[i] = (x + p - y) % p;
        }
        s2 = fp_trim(s2);
        a = m;
        m = r;
        s0 = s1;
        s1 = s2;
    }
    return {a, s0};
}

}  // namespace

FqField::El FqField::zero() const { return El(f, 0); }

FqField::El FqField::one() const {
    El a(f, 0);
    a[0] = 1 % p;
    return a;
}

FqField::El FqField::gen_el() const {
    if (f == 1) {
        // theta reduces to the root of the linear gpoly: y = -g0
        El a(1, 0);
        a[0] = (p - g.c[0] % p) % p;
        return a;
    }
    El a(f, 0);
    a[1] = 1;
    return a;
}

Int FqField::size() const { return pow_int(Int(p), f); }

Int FqField::group_order() const { return size() - 1; }

bool FqField::is_zero(const El& a) const {
    for (uint64_t c : a)
        if (c) return false;
    return true;
}

bool FqField::is_one(const El& a) const { return a == one(); }

FqField::El FqField::from_int(const Int& n) const {
    El a(f, 0);
    Int r;
    mpz_fdiv_r_ui(r.get_mpz_t(), n.get_mpz_t(), p);
    a[0] = r.get_ui();
    return a;
}

FqField::El FqField::add(const El& a, const El& b) const {
    El r(f);
    for (int i = 0; i < f; i++) r[i] = (a[i] + b[i]) % p;
    return r;
}

FqField::El FqField::sub(const El& a, const El& b) const {
    El r(f);
    for (int i = 0; i < f; i++) r[i] = (a[i] + p - b[i]) % p;
    return r;
}

FqField::El FqField::neg(const El& a) const { return sub(zero(), a); }

FqField::El FqField::mul(const El& a, const El& b) const {
    FpPoly r = fp_mod(fp_mul(el_to_poly(*this, a), el_to_poly(*this, b)), g);
    return poly_to_el(*this, r);
}

FqField::El FqField::inv(const El& a) const {
    if (is_zero(a)) throw std::invalid_argument("FqField::inv: zero");
    auto [gc, s] = fp_half_extgcd(el_to_poly(*this, a), g);
    if (gc.c.size() != 1) throw std::logic_error("FqField::inv: gcd not constant");
    uint64_t scale = pow_mod_u64(gc.c[0], p - 2, p);
    for (auto& c : s.c) c = mul_mod_u64(c, scale, p);
    return poly_to_el(*this, fp_mod(s, g));
}

FqField::El FqField::pow(El a, Int e) const {
    if (e < 0) {
        a = inv(a);
        e = -e;
    }
    if (f == 1) {
        // single-limb ladder, avoids the vector churn of the generic path
        uint64_t b = a[0] % p, r = 1 % p;
        size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
        if (e == 0) return El(1, r);
        for (size_t i = bits; i-- > 0;) {
            r = (uint64_t)((unsigned __int128)r * r % p);
            if (mpz_tstbit(e.get_mpz_t(), i)) r = (uint64_t)((unsigned __int128)r * b % p);
        }
        return El(1, r);
    }
    El acc = one();
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    if (e == 0) return acc;
    for (size_t i = bits; i-- > 0;) {
        acc = mul(acc, acc);
        if (mpz_tstbit(e.get_mpz_t(), i)) acc = mul(acc, a);
    }
    return acc;
}

FqField::El FqField::reduce(const FE& a) const {
    Int den = F->common_denominator(a);
    if (den % Int(p) == 0)
        throw std::invalid_argument("FqField::reduce: denominator not prime to p");
    FE b = F->mul_rat(a, Rat(den));
    El acc = zero();
    El pw = one();
    El th = gen_el();
    for (int i = 0; i < F->deg; i++) {
        Int ci;
        mpz_fdiv_r_ui(ci.get_mpz_t(), b[i].get_num().get_mpz_t(), p);
        El term = pw;
        uint64_t c = ci.get_ui();
        for (auto& x : term) x = mul_mod_u64(x, c, p);
        acc = add(acc, term);
        pw = mul(pw, th);
    }
    Int dinv = inv_mod(den, Int(p));
    uint64_t di = dinv.get_ui();
    for (auto& x : acc) x = mul_mod_u64(x, di, p);
    return acc;
}

std::string FqField::key(const El& a) const {
    std::string s;
    s.reserve(a.size() * 8);
    for (uint64_t c : a)
        for (int i = 0; i < 8; i++) s.push_back(static_cast<char>((c >> (8 * i)) & 0xff));
    return s;
}

FqField residue_field(const PrimeIdeal& P) {
    FqField Fq;
    Fq.F = P.F;
    Fq.p = P.p.get_ui();
    Fq.g = P.gpoly;
    Fq.f = P.f;
    return Fq;
}

Int fq_element_order(const FqField& Fq, const FqField::El& a,
                     const std::vector<std::pair<Int, int>>& group_factors) {
    Int o = Fq.group_order();
    for (const auto& [ell, mult] : group_factors) {
        for (int i = 0; i < mult; i++) {
            if (o % ell != 0) break;
            Int cand = o / ell;
            if (Fq.is_one(Fq.pow(a, cand)))
                o = cand;
            else
                break;
        }
    }
    return o;
}

namespace {

// baby-step giant-step inside the subgroup of the given order
std::optional<Int> dlog_bsgs(const FqField& Fq, const FqField::El& base,
                             const FqField::El& target, const Int& order) {
    if (order > (Int(1) << 40)) throw BoundExceeded("fq_dlog: group too large");
    if (Fq.is_one(target)) return Int(0);
    Int mz = sqrt(order);
    if (mz * mz < order) mz += 1;
    uint64_t m = mz.get_ui();
    std::unordered_map<std::string, uint64_t> table;
    table.reserve(m * 2);
    FqField::El cur = target;
    FqField::El binv = Fq.inv(base);
    for (uint64_t j = 0; j < m; j++) {
        table.emplace(Fq.key(cur), j);
        cur = Fq.mul(cur, binv);
    }
    FqField::El giant = Fq.pow(base, Int(m));
    FqField::El gcur = Fq.one();
    for (uint64_t i = 0; i <= m; i++) {
        auto it = table.find(Fq.key(gcur));
        if (it != table.end()) {
            Int x = Int(i) * Int(m) + Int(it->second);
            Int r;
            mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), order.get_mpz_t());
            return r;
        }
        gcur = Fq.mul(gcur, giant);
    }
    return std::nullopt;
}

}  // namespace

std::optional<Int> fq_dlog(const FqField& Fq, const FqField::El& base,
                           const FqField::El& target, const Int& base_order) {
    if (Fq.is_one(target)) return Int(0);
    if (base_order <= 1) return std::nullopt;
    // Pohlig-Hellman: solve in each Sylow piece, combine by CRT
    auto fac = factor_int(base_order);
    Int x = 0, mod = 1;
    for (auto& [ell, mult] : fac) {
        Int pe = 1;
        for (int i = 0; i < mult; i++) pe *= ell;
        Int cof = base_order / pe;
        FqField::El b = Fq.pow(base, cof);  // order pe
        FqField::El t = Fq.pow(target, cof);
        FqField::El bl = Fq.pow(b, pe / ell);  // order ell
        Int xe = 0, shift = 1;
        for (int i = 0; i < mult; i++) {
            FqField::El rem = Fq.mul(t, Fq.inv(Fq.pow(b, xe)));
            FqField::El probe = Fq.pow(rem, pe / (shift * ell));
            auto d = dlog_bsgs(Fq, bl, probe, ell);
            if (!d) return std::nullopt;
            xe += shift * (*d);
            shift *= ell;
        }
        // x := x mod mod, xe mod pe  (mod and pe coprime)
        Int minv = inv_mod(mod, pe);
        Int diff;
        mpz_fdiv_r(diff.get_mpz_t(), Int((xe - x) * minv).get_mpz_t(), pe.get_mpz_t());
        x += mod * diff;
        mod *= pe;
    }
    if (Fq.key(Fq.pow(base, x)) != Fq.key(target)) return std::nullopt;
    return x;
}


}  // namespace hecke
