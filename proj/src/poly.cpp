#include "hecke/poly.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "hecke/linalg.hpp"

namespace hecke {

int degree(const QPoly& f) {
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; i--)
        if (f[i] != 0) return i;
    return -1;
}

QPoly qp_trim(QPoly f) {
    f.resize(degree(f) + 1);
    return f;
}

QPoly qp_add(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()), Rat(0));
    for (size_t i = 0; i < a.size(); i++) r[i] += a[i];
    for (size_t i = 0; i < b.size(); i++) r[i] += b[i];
    return qp_trim(r);
}

QPoly qp_sub(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()), Rat(0));
    for (size_t i = 0; i < a.size(); i++) r[i] += a[i];
    for (size_t i = 0; i < b.size(); i++) r[i] -= b[i];
    return qp_trim(r);
}

QPoly qp_mul(const QPoly& a, const QPoly& b) {
    if (degree(a) < 0 || degree(b) < 0) return {};
    QPoly r(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); i++) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); j++) r[i + j] += a[i] * b[j];
    }
    return qp_trim(r);
}

QPoly qp_scale(const QPoly& a, const Rat& c) {
    QPoly r = a;
    for (auto& x : r) x *= c;
    return qp_trim(r);
}

std::pair<QPoly, QPoly> qp_divmod(const QPoly& a, const QPoly& b) {
    int db = degree(b);
    if (db < 0) throw std::invalid_argument("qp_divmod: zero divisor");
    QPoly rem = qp_trim(a), quot;
    int da = degree(rem);
    if (da >= db) quot.assign(da - db + 1, Rat(0));
    while ((da = degree(rem)) >= db) {
        Rat c = rem[da] / b[db];
        quot[da - db] = c;
        for (int i = 0; i <= db; i++) rem[da - db + i] -= c * b[i];
    }
    return {qp_trim(quot), qp_trim(rem)};
}

Rat qp_eval(const QPoly& f, const Rat& x) {
    Rat acc(0);
    for (int i = degree(f); i >= 0; i--) acc = acc * x + f[i];
    return acc;
}

QPoly qp_derivative(const QPoly& f) {
    QPoly r;
    for (size_t i = 1; i < f.size(); i++) r.push_back(f[i] * Rat(static_cast<long>(i)));
    return qp_trim(r);
}

Int resultant(const QPoly& fq, const QPoly& gq) {
    QPoly f = qp_trim(fq), g = qp_trim(gq);
    int m = degree(f), n = degree(g);
    if (m < 0 || n < 0) return 0;
    size_t dim = static_cast<size_t>(m + n);
    ZMat S(dim, ZVec(dim, 0));
    auto as_int = [](const Rat& r) {
        if (r.get_den() != 1) throw std::invalid_argument("resultant: non-integral coefficient");
        return Int(r.get_num());
    };
    for (int i = 0; i < n; i++)
        for (int j = 0; j <= m; j++) S[i][i + j] = as_int(f[m - j]);
    for (int i = 0; i < m; i++)
        for (int j = 0; j <= n; j++) S[n + i][i + j] = as_int(g[n - j]);
    return det_bareiss(S);
}

Int poly_discriminant(const QPoly& f) {
    int n = degree(f);
    if (n < 1) throw std::invalid_argument("poly_discriminant: degree < 1");
    if (f[n] != 1) throw std::invalid_argument("poly_discriminant: not monic");
    Int res = resultant(f, qp_derivative(f));
    // disc = (-1)^{n(n-1)/2} res(f, f')
    if (((static_cast<long>(n) * (n - 1)) / 2) % 2 != 0) res = -res;
    return res;
}

int count_real_roots(const QPoly& f0) {
    QPoly f = qp_trim(f0);
    if (degree(f) <= 0) return 0;
    std::vector<QPoly> chain{f, qp_derivative(f)};
    while (degree(chain.back()) > 0) {
        auto [q, r] = qp_divmod(chain[chain.size() - 2], chain.back());
        (void)q;
        if (degree(r) < 0) break;
        chain.push_back(qp_scale(r, Rat(-1)));
    }
    auto variations = [&chain](int at_inf) {
        int var = 0, last = 0;
        for (const auto& g : chain) {
            int d = degree(g);
            if (d < 0) continue;
            int s = sgn(g[d]);
            if (at_inf < 0 && d % 2 == 1) s = -s;
            if (last != 0 && s != 0 && s != last) var++;
            if (s != 0) last = s;
        }
        return var;
    };
    return variations(-1) - variations(+1);
}

std::vector<std::complex<double>> complex_roots(const QPoly& fq) {
    QPoly f = qp_trim(fq);
    int n = degree(f);
    std::vector<std::complex<double>> z(n);
    if (n <= 0) return z;
    std::vector<std::complex<double>> c(n + 1);
    for (int i = 0; i <= n; i++) c[i] = f[i].get_d() / f[n].get_d();
    double bound = 0.0;
    for (int i = 0; i < n; i++) bound = std::max(bound, std::abs(c[i]));
    bound += 1.0;
    for (int i = 0; i < n; i++)
        z[i] = std::polar(bound * (0.5 + 0.4 * i / n), 2.0 * M_PI * i / n + 0.3);
    auto eval = [&](std::complex<double> x) {
        std::complex<double> acc = 0;
        for (int i = n; i >= 0; i--) acc = acc * x + c[i];
        return acc;
    };
    for (int iter = 0; iter < 500; iter++) {
        double shift = 0;
        for (int i = 0; i < n; i++) {
            std::complex<double> den = 1;
            for (int j = 0; j < n; j++)
                if (j != i) den *= (z[i] - z[j]);
            std::complex<double> d = eval(z[i]) / den;
            z[i] -= d;
            shift = std::max(shift, std::abs(d));
        }
        if (shift < 1e-14) break;
    }
    std::sort(z.begin(), z.end(), [](auto a, auto b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return z;
}

bool is_irreducible_monic(const QPoly& fq) {
    QPoly f = qp_trim(fq);
    int n = degree(f);
    if (n <= 0) return false;
    if (n == 1) return true;
    for (const auto& cf : f)
        if (cf.get_den() != 1) throw std::invalid_argument("is_irreducible_monic: non-integral");
    if (f[n] != 1) throw std::invalid_argument("is_irreducible_monic: not monic");
    if (f[0] == 0) return false;  // root at 0
    auto roots = complex_roots(f);
    // a monic factor over Z corresponds to a subset of roots whose product
    // polynomial has integer coefficients; candidates are verified exactly
    for (unsigned mask = 1; mask + 1 < (1u << n); mask++) {
        int k = __builtin_popcount(mask);
        if (k > n / 2) continue;  // the complementary subset covers this split
        std::vector<std::complex<double>> acc{1.0};
        for (int i = 0; i < n; i++) {
            if (!(mask >> i & 1)) continue;
            std::vector<std::complex<double>> next(acc.size() + 1, 0.0);
            for (size_t j = 0; j < acc.size(); j++) {
                next[j + 1] += acc[j];
                next[j] -= roots[i] * acc[j];
            }
            acc = std::move(next);
        }
        bool integral = true;
        QPoly cand(acc.size(), Rat(0));
        for (size_t j = 0; j < acc.size(); j++) {
            double re = acc[j].real(), rd = std::round(re);
            if (std::abs(acc[j].imag()) > 1e-6 || std::abs(re - rd) > 1e-6 || std::abs(rd) > 1e15) {
                integral = false;
                break;
            }
            cand[j] = Rat(static_cast<long>(rd));
        }
        if (!integral) continue;
        auto [q, r] = qp_divmod(f, cand);
        (void)q;
        if (degree(r) < 0) return false;
    }
    return true;
}

FpPoly fp_from_q(const QPoly& f, uint64_t p) {
    FpPoly r;
    r.p = p;
    r.c.resize(f.size());
    Int P(static_cast<unsigned long>(p));
    for (size_t i = 0; i < f.size(); i++) {
        Int num = f[i].get_num() % P;
        if (num < 0) num += P;
        Int den = f[i].get_den() % P;
        if (den == 0) throw std::invalid_argument("fp_from_q: denominator divisible by p");
        uint64_t dinv = pow_mod_u64(den.get_ui(), p - 2, p);
        r.c[i] = mul_mod_u64(num.get_ui(), dinv, p);
    }
    return fp_trim(r);
}

FpPoly fp_trim(FpPoly f) {
    while (!f.c.empty() && f.c.back() == 0) f.c.pop_back();
    return f;
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b) {
    FpPoly r;
    r.p = a.p;
    if (a.c.empty() || b.c.empty()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); i++) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; j < b.c.size(); j++) {
            r.c[i + j] = (r.c[i + j] + static_cast<unsigned __int128>(a.c[i]) * b.c[j]) % r.p;
        }
    }
    return fp_trim(r);
}

FpPoly fp_mod(const FpPoly& a, const FpPoly& m) {
    FpPoly r = fp_trim(a);
    int dm = m.deg();
    if (dm < 0) throw std::invalid_argument("fp_mod: zero modulus");
    uint64_t lead_inv = pow_mod_u64(m.c[dm], m.p - 2, m.p);
    while (r.deg() >= dm) {
        int dr = r.deg();
        uint64_t c = mul_mod_u64(r.c[dr], lead_inv, m.p);
        for (int i = 0; i <= dm; i++) {
            uint64_t sub = mul_mod_u64(c, m.c[i], m.p);
            uint64_t& dst = r.c[dr - dm + i];
            dst = (dst + m.p - sub) % m.p;
        }
        r = fp_trim(r);
    }
    return r;
}

FpPoly fp_monic(const FpPoly& f) {
    FpPoly r = fp_trim(f);
    if (r.c.empty()) return r;
    uint64_t inv = pow_mod_u64(r.c.back(), r.p - 2, r.p);
    for (auto& x : r.c) x = mul_mod_u64(x, inv, r.p);
    return r;
}

FpPoly fp_gcd(FpPoly a, FpPoly b) {
    a = fp_trim(a);
    b = fp_trim(b);
    while (!b.c.empty()) {
        FpPoly r = fp_mod(a, b);
        a = b;
        b = r;
    }
    return fp_monic(a);
}

FpPoly fp_powmod(const FpPoly& base, const Int& e, const FpPoly& m) {
    FpPoly acc;
    acc.p = base.p;
    acc.c = {1};
    FpPoly b = fp_mod(base, m);
    Int k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) acc = fp_mod(fp_mul(acc, b), m);
        b = fp_mod(fp_mul(b, b), m);
        k >>= 1;
    }
    return acc;
}

namespace {

FpPoly fp_derivative(const FpPoly& f) {
    FpPoly r;
    r.p = f.p;
    for (size_t i = 1; i < f.c.size(); i++) r.c.push_back(mul_mod_u64(f.c[i], i % f.p, f.p));
    return fp_trim(r);
}

FpPoly fp_add(const FpPoly& a, const FpPoly& b) {
    FpPoly r;
    r.p = a.p;
    r.c.assign(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < a.c.size(); i++) r.c[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); i++) r.c[i] = (r.c[i] + b.c[i]) % r.p;
    return fp_trim(r);
}

FpPoly fp_sub(const FpPoly& a, const FpPoly& b) {
    FpPoly r;
    r.p = a.p;
    r.c.assign(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < a.c.size(); i++) r.c[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); i++) r.c[i] = (r.c[i] + r.p - b.c[i]) % r.p;
    return fp_trim(r);
}

// exact quotient a / b; remainder must vanish
FpPoly fp_divexact(const FpPoly& a, const FpPoly& b) {
    FpPoly rem = fp_trim(a), quot;
    int db = b.deg();
    quot.p = a.p;
    if (rem.deg() < db) throw std::invalid_argument("fp_divexact: degree");
    quot.c.assign(rem.deg() - db + 1, 0);
    uint64_t lead_inv = pow_mod_u64(b.c[db], a.p - 2, a.p);
    while (rem.deg() >= db) {
        int dr = rem.deg();
        uint64_t c = mul_mod_u64(rem.c[dr], lead_inv, a.p);
        quot.c[dr - db] = c;
        for (int i = 0; i <= db; i++) {
            uint64_t sub = mul_mod_u64(c, b.c[i], a.p);
            rem.c[dr - db + i] = (rem.c[dr - db + i] + a.p - sub) % a.p;
        }
        rem = fp_trim(rem);
    }
    if (!rem.c.empty()) throw std::invalid_argument("fp_divexact: not divisible");
    return fp_trim(quot);
}

FpPoly fp_xpoly(uint64_t p) {
    FpPoly x;
    x.p = p;
    x.c = {0, 1};
    return x;
}

// equal-degree factorization of a squarefree product of degree-d irreducibles;
// deterministic probe sweep instead of random splitters
void fp_edf(const FpPoly& f, int d, std::vector<FpPoly>& out) {
    if (f.deg() == d) {
        out.push_back(fp_monic(f));
        return;
    }
    uint64_t p = f.p;
    for (uint64_t k = 1;; k++) {
        // probe h = x^k + k (shifting guards against degenerate sweeps)
        FpPoly h = fp_xpoly(p);
        h = fp_powmod(h, Int(static_cast<unsigned long>(k)), f);
        FpPoly shift;
        shift.p = p;
        shift.c = {k % p};
        h = fp_add(h, shift);
        FpPoly g;
        if (p == 2) {
            // trace map h + h^2 + ... + h^{2^{d-1}}
            FpPoly tr = h, pw = h;
            for (int i = 1; i < d; i++) {
                pw = fp_mod(fp_mul(pw, pw), f);
                tr = fp_add(tr, pw);
            }
            g = fp_gcd(tr, f);
        } else {
            Int q = pow_int(Int(static_cast<unsigned long>(p)), static_cast<unsigned long>(d));
            FpPoly e = fp_powmod(h, (q - 1) / 2, f);
            if (e.c.empty()) continue;
            e.c[0] = (e.c[0] + p - 1) % p;
            g = fp_gcd(e, f);
        }
        int dg = g.deg();
        if (dg > 0 && dg < f.deg()) {
            fp_edf(g, d, out);
            fp_edf(fp_divexact(f, g), d, out);
            return;
        }
        if (k > 8 * p + 256) throw BoundExceeded("fp_edf: no splitter found");
    }
}

}  // namespace

std::vector<std::pair<FpPoly, int>> fp_factor(const FpPoly& f0) {
    FpPoly f = fp_monic(f0);
    uint64_t p = f.p;
    std::vector<std::pair<FpPoly, int>> out;
    if (f.deg() <= 0) return out;
    // squarefree decomposition (Yun adapted to characteristic p)
    std::vector<std::pair<FpPoly, int>> squarefree;
    std::vector<std::pair<FpPoly, int>> stack{{f, 1}};
    while (!stack.empty()) {
        auto [g, m] = stack.back();
        stack.pop_back();
        if (g.deg() <= 0) continue;
        FpPoly d = fp_derivative(g);
        if (d.c.empty()) {
            FpPoly h;
            h.p = p;
            for (size_t i = 0; i < g.c.size(); i += p) h.c.push_back(g.c[i]);
            stack.push_back({fp_trim(h), m * static_cast<int>(p)});
            continue;
        }
        FpPoly c = fp_gcd(g, d);
        FpPoly w = fp_divexact(g, c);
        int i = 1;
        while (w.deg() > 0) {
            FpPoly y = fp_gcd(w, c);
            FpPoly part = fp_divexact(w, y);
            if (part.deg() > 0) squarefree.push_back({fp_monic(part), m * i});
            if (y.deg() >= 0 && !y.c.empty()) c = fp_divexact(c, y);
            w = y;
            i++;
            if (i > 200) throw BoundExceeded("fp_factor: squarefree loop");
        }
        if (c.deg() > 0) stack.push_back({c, m});
    }
    // distinct-degree then equal-degree per squarefree part
    for (auto& [part, m] : squarefree) {
        FpPoly g = part;
        FpPoly xq = fp_xpoly(p);
        int d = 0;
        while (g.deg() > 0) {
            d++;
            if (2 * d > g.deg()) {
                out.push_back({fp_monic(g), m});
                break;
            }
            xq = fp_powmod(xq, Int(static_cast<unsigned long>(p)), g);
            FpPoly diff = fp_sub(xq, fp_xpoly(p));
            FpPoly h = fp_gcd(diff, g);
            if (h.deg() > 0) {
                std::vector<FpPoly> irr;
                fp_edf(h, d, irr);
                for (auto& u : irr) out.push_back({u, m});
                g = fp_divexact(g, h);
                if (g.deg() > 0) xq = fp_mod(xq, g);
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first.deg() != b.first.deg()) return a.first.deg() < b.first.deg();
        return a.first.c < b.first.c;
    });
    return out;
}

}  // namespace hecke
