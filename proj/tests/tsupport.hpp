#pragma once

// Shared fixtures for the test suite: a deterministic RNG, an elliptic-curve
// point-count oracle, catalog-wide pools of admissible moduli, and a sampler
// of random valid Hecke characters used by the round-trip sweeps.

#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hecke/heckechar.hpp"
#include "hecke/rayclass.hpp"

namespace tsupport {

using namespace hecke;

inline FE fel(const NFPtr& F, std::vector<long> v) {
    FE r = F->zero();
    for (size_t i = 0; i < v.size() && i < r.size(); i++) r[i] = Rat(v[i]);
    return r;
}

// deterministic across runs and platforms: raw engine draws only
struct Rng {
    std::mt19937_64 eng;
    explicit Rng(uint64_t seed) : eng(seed) {}
    long below(long n) { return long(eng() % uint64_t(n)); }
    long range(long lo, long hi) { return lo + below(hi - lo + 1); }  // inclusive
    bool coin() { return (eng() & 1) != 0; }
    template <class T>
    const T& pick(const std::vector<T>& v) {
        return v[size_t(below(long(v.size())))];
    }
};

// #E(F_p) for y^2 = x^3 - x by affine enumeration plus the point at infinity
inline long ec_point_count(long p) {
    std::vector<char> is_sq(size_t(p), 0);
    for (long y = 0; y < p; y++) is_sq[size_t((y * y) % p)] = 1;
    long count = 1;
    for (long x = 0; x < p; x++) {
        long t = ((x * x % p) * x % p - x % p + p) % p;
        if (t == 0)
            count += 1;
        else
            count += is_sq[size_t(t)] ? 2 : 0;
    }
    return count;
}

inline std::vector<int> all_flags(const NFPtr& K) {
    std::vector<int> v(size_t(K->r1));
    for (int i = 0; i < K->r1; i++) v[size_t(i)] = i;
    return v;
}

// random integral element with coordinates in [-h, h], nonzero
inline FE random_element(const NFPtr& F, Rng& rng, long h) {
    for (;;) {
        FE a = F->zero();
        for (int i = 0; i < F->deg; i++) a[size_t(i)] = Rat(rng.range(-h, h));
        if (!F->is_zero(a)) return a;
    }
}

inline FE random_coprime_element(const NFPtr& F, const RayResidueGroup& G, Rng& rng, long h) {
    for (;;) {
        FE a = random_element(F, rng, h);
        if (G.coprime(a)) return a;
    }
}

// value fields with an embedding on file, smallest torsion first
inline const std::vector<std::string>& value_fields_for(const std::string& base) {
    static const std::map<std::string, std::vector<std::string>> table = {
        {"rationals",
         {"rationals", "gaussian", "eisenstein", "sqrtm2", "sqrt2", "sqrt5", "cyclotomic5",
          "cyclotomic8", "cyclotomic12"}},
        {"gaussian", {"gaussian", "cyclotomic8", "cyclotomic12"}},
        {"eisenstein", {"eisenstein", "cyclotomic12"}},
        {"sqrtm2", {"sqrtm2", "cyclotomic8"}},
        {"sqrt2", {"sqrt2", "cyclotomic8"}},
        {"sqrt5", {"sqrt5", "cyclotomic5"}},
        {"cyclotomic5", {"cyclotomic5"}},
        {"cyclotomic8", {"cyclotomic8"}},
        {"cyclotomic12", {"cyclotomic12"}},
    };
    return table.at(base);
}

// small integral generators worth trying as finite parts of moduli
inline std::vector<FE> modulus_gen_pool(const NFPtr& K) {
    std::vector<FE> gens;
    std::set<std::string> seen;
    auto push = [&](const FE& g) {
        if (K->is_zero(g)) return;
        FE c = canonical_associate(K, g);
        std::string key = K->fe_str(c);
        if (seen.insert(key).second) gens.push_back(c);
    };
    push(K->one());
    long nmax = K->deg > 2 ? 13 : 24;
    for (long n = 2; n <= nmax; n++) push(K->from_rat(Rat(n)));
    std::vector<FE> primes;
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L})
        for (auto& P : factor_rational_prime(K, Int(p)))
            if (P.norm() <= 100) primes.push_back(P.gen);
    for (auto& g : primes) {
        push(g);
        push(K->mul(g, g));
        if (K->deg <= 2) push(K->mul(g, K->mul(g, g)));
    }
    for (size_t i = 0; i < primes.size(); i++)
        for (size_t j = i + 1; j < primes.size() && j < i + 4; j++)
            push(K->mul(primes[i], primes[j]));
    return gens;
}

struct ModulusPool {
    // moduli whose residue group has exponent dividing w and order <= cap
    std::vector<Modulus> entries;
};

inline const ModulusPool& modulus_pool(const NFPtr& K, long w, long cap) {
    static std::map<std::string, ModulusPool> cache;
    std::string key = K->label + "#" + std::to_string(w) + "#" + std::to_string(cap);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    ModulusPool pool;
    std::vector<std::vector<int>> flag_sets{{}};
    if (K->r1 == 1) flag_sets.push_back({0});
    if (K->r1 == 2) {
        flag_sets.push_back({0});
        flag_sets.push_back({1});
        flag_sets.push_back({0, 1});
    }
    for (auto& g : modulus_gen_pool(K)) {
        for (auto& fl : flag_sets) {
            Modulus m = make_modulus(K, g, fl);
            if (m.norm > 4000) continue;
            RayResidueGroup G = residue_group(K, m);
            if (G.order() > cap) continue;
            if (!G.divisors().empty() && Int(w) % G.grp.exponent() != 0) continue;
            pool.entries.push_back(m);
        }
    }
    return cache.emplace(key, std::move(pool)).first->second;
}

// infinity type sampler per field family; entries stay within [-3, 3]
inline InfinityType random_infinity_type(const NFPtr& K, Rng& rng) {
    size_t na = K->autos.size();
    std::vector<Int> n(na, Int(0));
    if (K->r1 == K->deg && K->deg > 1) {
        // totally real beyond Q: only norm powers keep units torsion-bounded
        Int c = Int(rng.range(-3, 3));
        for (auto& x : n) x = c;
    } else if (K->deg <= 2) {
        for (auto& x : n) x = Int(rng.range(-3, 3));
    } else {
        // CM quartic: opposite-conjugate entries share a common sum
        size_t c = K->conj_index;
        long wsum = rng.range(-3, 3);
        std::vector<char> done(na, 0);
        for (size_t a = 0; a < na; a++) {
            if (done[a]) continue;
            size_t b = K->comp[c][a];
            if (b == a) {
                if (wsum % 2 != 0) wsum = wsum > 0 ? wsum - 1 : wsum + 1;
                n[a] = Int(wsum / 2);
                done[a] = 1;
                continue;
            }
            long lo = std::max(-3L, wsum - 3), hi = std::min(3L, wsum + 3);
            long v = rng.range(lo, hi);
            n[a] = Int(v);
            n[b] = Int(wsum - v);
            done[a] = done[b] = 1;
        }
    }
    return InfinityType{n};
}

// exponent of zeta_w for the torsion element prod emb(sigma u)^{-n_sigma};
// nullopt when the product is not torsion (infinity type unusable)
inline std::optional<Int> unit_target(const NFPtr& K, const NFPtr& L, const FieldEmbedding& emb,
                                      const InfinityType& ntype, const FE& u, long w) {
    FE tu = L->one();
    for (size_t a = 0; a < ntype.n.size(); a++) {
        if (ntype.n[a] == 0) continue;
        tu = L->mul(tu, L->pow(emb.apply(K->apply_auto(u, a)), ilong(ntype.n[a])));
    }
    auto te = L->torsion_exponent(L->inv(tu));
    if (!te) return std::nullopt;
    Int t = Int(*te) % w;
    if (t < 0) t += w;
    return t;
}

struct SampledCharacter {
    HeckeCharacter chi;
};

// one random valid character over K: value field, modulus, infinity type and
// finite part drawn together so that unit compatibility has a solution
inline std::optional<HeckeCharacter> try_sample_character(const NFPtr& K, Rng& rng, long cap) {
    auto L = field_by_label(rng.pick(value_fields_for(K->label)));
    long w = L->units.torsion_order;
    const auto& pool = modulus_pool(K, w, cap);
    if (pool.entries.empty()) return std::nullopt;
    Modulus m = rng.pick(pool.entries);
    FieldEmbedding emb = catalog_embedding(K, L);
    InfinityType ntype = random_infinity_type(K, rng);

    auto G = std::make_shared<const RayResidueGroup>(residue_group(K, m));
    const auto& d = G->divisors();

    // random character in zeta_w exponents, then a correction solving the
    // unit-compatibility constraints on top of it
    std::vector<Int> a(d.size());
    for (size_t j = 0; j < d.size(); j++) {
        Int step = Int(w) / d[j];
        a[j] = step * Int(rng.below(ilong(d[j])));
    }
    std::vector<FE> ugens{K->units.torsion_generator};
    for (auto& fu : K->units.fundamental_units) ugens.push_back(fu);
    std::vector<ZVec> coords;
    std::vector<Int> targets;
    for (auto& u : ugens) {
        auto t = unit_target(K, L, emb, ntype, u, w);
        if (!t) return std::nullopt;
        ZVec x = G->resolve(u);
        Int have(0);
        for (size_t j = 0; j < d.size(); j++) have += a[j] * x[j];
        Int want = (*t - have) % w;
        if (want < 0) want += w;
        coords.push_back(x);
        targets.push_back(want);
    }
    auto corr = character_solve(d, coords, targets, Int(w));
    if (!corr) return std::nullopt;
    for (size_t j = 0; j < d.size(); j++) {
        a[j] = (a[j] + (*corr)[j]) % w;
        if (a[j] < 0) a[j] += w;
    }
    FiniteCharacter eps = d.empty() ? trivial_character(G) : character_from_w_exponents(G, a, Int(w));
    return hecke_create(K, L, emb, m, ntype, eps);
}

inline HeckeCharacter sample_character(const NFPtr& K, Rng& rng, long cap = 200,
                                       int attempts = 60) {
    for (int i = 0; i < attempts; i++) {
        auto c = try_sample_character(K, rng, cap);
        if (c) return *c;
    }
    throw std::runtime_error("sample_character: no admissible draw for " + K->label);
}

// named fixtures reused across the suite
inline HeckeCharacter cm_character() {
    auto K = field_by_label("gaussian");
    auto emb = catalog_embedding(K, K);
    Modulus m = make_modulus(K, K->pow(fel(K, {1, 1}), 3));
    auto G = std::make_shared<const RayResidueGroup>(residue_group(K, m));
    return hecke_create(K, K, emb, m, InfinityType{{Int(1), Int(0)}},
                        FiniteCharacter{G, {Int(3)}});
}

inline HeckeCharacter legendre_character() {
    auto Q = field_by_label("rationals");
    auto K = field_by_label("gaussian");
    Modulus m5 = make_modulus(Q, Q->from_rat(Rat(5)), {0});
    auto G5 = std::make_shared<const RayResidueGroup>(residue_group(Q, m5));
    auto a = character_solve(G5->divisors(),
                             {G5->resolve(Q->from_rat(Rat(2))), G5->resolve(Q->from_rat(Rat(-1)))},
                             {Int(2), Int(0)}, Int(4));
    return hecke_create(Q, K, catalog_embedding(Q, K), m5, InfinityType{{Int(0)}},
                        character_from_w_exponents(G5, *a, Int(4)));
}

inline HeckeCharacter norm_character() {
    auto K = field_by_label("gaussian");
    Modulus m1 = make_modulus(K, K->one());
    auto G1 = std::make_shared<const RayResidueGroup>(residue_group(K, m1));
    return hecke_create(K, K, catalog_embedding(K, K), m1, InfinityType{{Int(1), Int(1)}},
                        trivial_character(G1));
}

inline std::vector<std::string> catalog_labels() {
    std::vector<std::string> out;
    for (auto& [label, F] : field_catalog()) out.push_back(label);
    return out;
}

}  // namespace tsupport
