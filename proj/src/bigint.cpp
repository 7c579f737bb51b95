#include "hecke/bigint.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace hecke {

uint64_t mul_mod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

uint64_t pow_mod_u64(uint64_t base, uint64_t exp, uint64_t m) {
    if (m == 1) return 0;
    uint64_t acc = 1;
    base %= m;
    while (exp) {
        if (exp & 1) acc = mul_mod_u64(acc, base, m);
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    return acc;
}

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    // deterministic for all 64-bit inputs
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = pow_mod_u64(a % n, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; i++) {
            x = mul_mod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

namespace {

uint64_t pollard_brent_u64(uint64_t n) {
    if ((n & 1) == 0) return 2;
    for (uint64_t c = 1;; ++c) {
        auto f = [n, c](uint64_t x) { return (mul_mod_u64(x, x, n) + c) % n; };
        uint64_t x = 2, y = 2, d = 1;
        uint64_t count = 0;
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            uint64_t diff = x > y ? x - y : y - x;
            d = std::__gcd(diff, n);
            if (++count > (1u << 22)) break;
        }
        if (d != n && d != 1) return d;
    }
}

void factor_u64_rec(uint64_t n, std::map<uint64_t, int>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out[n]++;
        return;
    }
    uint64_t d = pollard_brent_u64(n);
    factor_u64_rec(d, out);
    factor_u64_rec(n / d, out);
}

}  // namespace

std::vector<std::pair<uint64_t, int>> factor_u64(uint64_t n) {
    std::map<uint64_t, int> acc;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
        while (n % p == 0) {
            acc[p]++;
            n /= p;
        }
    }
    factor_u64_rec(n, acc);
    return {acc.begin(), acc.end()};
}

const std::vector<uint32_t>& primes_upto(uint32_t bound) {
    static std::mutex mu;
    static std::map<uint32_t, std::vector<uint32_t>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(bound);
    if (it != cache.end()) return it->second;
    std::vector<bool> comp(bound + 1, false);
    std::vector<uint32_t> ps;
    for (uint32_t i = 2; i <= bound; i++) {
        if (!comp[i]) {
            ps.push_back(i);
            for (uint64_t j = static_cast<uint64_t>(i) * i; j <= bound; j += i) comp[j] = true;
        }
    }
    return cache.emplace(bound, std::move(ps)).first->second;
}

const std::vector<uint32_t>& spf_table(uint32_t bound) {
    static std::mutex mu;
    static std::map<uint32_t, std::vector<uint32_t>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(bound);
    if (it != cache.end()) return it->second;
    std::vector<uint32_t> spf(bound + 1, 0);
    for (uint32_t i = 2; i <= bound; i++) {
        if (spf[i] == 0) {
            for (uint64_t j = i; j <= bound; j += i) {
                if (spf[j] == 0) spf[j] = i;
            }
        }
    }
    return cache.emplace(bound, std::move(spf)).first->second;
}

bool is_probable_prime(const Int& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

namespace {

Int pollard_brent_mpz(const Int& n, gmp_randclass& rng) {
    if (n % 2 == 0) return 2;
    for (int attempt = 0; attempt < 64; ++attempt) {
        Int c = rng.get_z_range(n - 1) + 1;
        Int x = rng.get_z_range(n), y = x, d = 1;
        long count = 0;
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            Int diff = abs(x - y);
            if (diff == 0) break;
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            if (++count > (1 << 22)) break;
        }
        if (d != 1 && d != n) return d;
    }
    throw BoundExceeded("integer factorization budget exceeded for " + n.get_str());
}

void factor_int_rec(const Int& n, std::map<Int, int>& out, gmp_randclass& rng) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        out[n]++;
        return;
    }
    Int d = pollard_brent_mpz(n, rng);
    factor_int_rec(d, out, rng);
    factor_int_rec(n / d, out, rng);
}

}  // namespace

std::vector<std::pair<Int, int>> factor_int(const Int& n) {
    Int v = abs(n);
    if (v == 0) throw std::invalid_argument("factor_int: zero");
    std::map<Int, int> acc;
    for (uint32_t p : primes_upto(100000)) {
        while (v % p == 0) {
            acc[Int(p)]++;
            v /= p;
        }
        if (v == 1) break;
    }
    if (v > 1) {
        // fixed seed: factorization must be deterministic run to run
        gmp_randclass rng(gmp_randinit_default);
        rng.seed(0x5eedul);
        factor_int_rec(v, acc, rng);
    }
    return {acc.begin(), acc.end()};
}

Int pow_int(const Int& base, unsigned long exp) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

Rat pow_rat(const Rat& base, long exp) {
    if (exp == 0) return 1;
    if (base == 0 && exp < 0) throw std::invalid_argument("pow_rat: inverse of zero");
    Rat b = base;
    unsigned long e = exp < 0 ? -static_cast<unsigned long>(exp) : exp;
    if (exp < 0) b = 1 / b;
    Rat acc = 1;
    while (e) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

Int inv_mod(const Int& a, const Int& m) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw std::invalid_argument("inv_mod: not invertible");
    return r;
}

long ilong(const Int& v) {
    if (!v.fits_slong_p()) throw std::overflow_error("ilong: out of range");
    return v.get_si();
}

}  // namespace hecke
