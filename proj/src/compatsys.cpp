#include "hecke/compatsys.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <set>
#include <stdexcept>

#include "hecke/bigint.hpp"
#include "hecke/poly.hpp"

namespace hecke {

namespace {

Int next_prime(const Int& q) {
    Int r;
    mpz_nextprime(r.get_mpz_t(), q.get_mpz_t());
    return r;
}

const std::vector<std::pair<Int, int>>& factors_of(const Int& n) {
    static std::map<Int, std::vector<std::pair<Int, int>>> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, factor_int(n)).first;
    return it->second;
}

// monic polynomial with the given roots, coefficients ascending
std::vector<FE> poly_from_roots(const NFPtr& L, const std::vector<FE>& roots) {
    std::vector<FE> c{L->one()};
    for (auto& v : roots) {
        c.insert(c.begin(), L->zero());
        for (size_t i = 0; i + 1 < c.size(); i++) c[i] = L->sub(c[i], L->mul(v, c[i + 1]));
    }
    return c;
}

std::vector<int> all_real_places(const NFPtr& K) {
    std::vector<int> v(K->r1);
    for (int i = 0; i < K->r1; i++) v[i] = i;
    return v;
}

// sampled places of L outside T, coprime to the realization moduli
std::vector<PrimeIdeal> sample_places(const CompatibleSystem& sys, int count) {
    std::vector<PrimeIdeal> out;
    for (Int p = 2; int(out.size()) < count && p < 5000; p = next_prime(p)) {
        bool bad = false;
        for (auto& chi : sys.realization)
            if (chi.m.norm % p == 0) bad = true;
        if (bad) continue;
        for (auto& place : factor_rational_prime(sys.L, p)) {
            if (sys.in_T(place) || place.e > 1) continue;
            out.push_back(place);
            if (int(out.size()) >= count) break;
        }
    }
    return out;
}

std::complex<long double> embed_at(const NumberField& F, const FE& x,
                                   const std::vector<std::complex<double>>& roots, size_t which) {
    std::complex<long double> r(roots[which].real(), roots[which].imag());
    // one Newton step lifts the double-precision root to long double
    std::complex<long double> f(0.0L), df(0.0L), t(1.0L);
    for (size_t i = 0; i + 1 < F.min_poly.size(); i++) {
        df += (long double)(i + 1) * (long double)F.min_poly[i + 1].get_d() * t;
        t *= r;
    }
    t = 1.0L;
    for (size_t i = 0; i < F.min_poly.size(); i++) {
        f += (long double)F.min_poly[i].get_d() * t;
        t *= r;
    }
    if (std::abs(df) > 0.0L) r -= f / df;
    std::complex<long double> v(0.0L), p(1.0L);
    for (int i = 0; i < F.deg; i++) {
        v += p * (long double)x[i].get_d();
        p *= r;
    }
    return v;
}

}  // namespace

const FrobeniusEntry* CompatibleSystem::entry_at(const PrimeIdeal& r) const {
    for (auto& e : frob)
        if (e.r == r) return &e;
    return nullptr;
}

bool CompatibleSystem::in_S(const PrimeIdeal& r) const {
    return std::find(S.begin(), S.end(), r) != S.end();
}

bool CompatibleSystem::in_T(const PrimeIdeal& place) const {
    return std::find(T.begin(), T.end(), place) != T.end();
}

std::vector<PrimeIdeal> default_defect_set(const NFPtr& L, const std::vector<PrimeIdeal>& S) {
    std::set<Int> chars;
    for (auto& P : S) chars.insert(P.p);
    long w = L->units.torsion_order;
    FE zk = L->one();
    for (long k = 1; k < w; k++) {
        zk = L->mul(zk, L->units.torsion_generator);
        Rat nm = L->norm(L->sub(zk, L->one()));
        Int num = abs(nm.get_num());
        if (num > 1)
            for (auto& [p, e] : factor_int(num)) chars.insert(p);
    }
    std::vector<PrimeIdeal> T;
    for (auto& p : chars)
        for (auto& place : factor_rational_prime(L, p)) T.push_back(place);
    return T;
}

Int torsion_separation_bound(const NFPtr& L) {
    long w = L->units.torsion_order;
    Int best = 1;
    FE zk = L->one();
    for (long k = 1; k < w; k++) {
        zk = L->mul(zk, L->units.torsion_generator);
        Rat nm = L->norm(L->sub(zk, L->one()));
        best = std::max(best, Int(abs(nm.get_num())));
    }
    return best;
}

CompatibleSystem system_from_characters(const std::vector<HeckeCharacter>& chis,
                                        const Int& index_bound) {
    if (chis.empty()) throw std::invalid_argument("system_from_characters: no characters");
    CompatibleSystem sys;
    sys.K = chis[0].K;
    sys.L = chis[0].L;
    sys.dim = int(chis.size());
    for (auto& chi : chis) {
        if (chi.K != sys.K || chi.L != sys.L ||
            chi.emb.theta_image != chis[0].emb.theta_image)
            throw std::invalid_argument("system_from_characters: field data mismatch");
        sys.realization.push_back(restrict_to_conductor(chi));
    }
    Modulus hint = sys.realization[0].m;
    for (auto& chi : sys.realization) {
        hint = modulus_lcm(hint, chi.m);
        for (auto& [P, k] : chi.m.factor)
            if (!sys.in_S(P)) sys.S.push_back(P);
    }
    std::sort(sys.S.begin(), sys.S.end(), [](const PrimeIdeal& a, const PrimeIdeal& b) {
        return a.p != b.p ? a.p < b.p : a.str() < b.str();
    });
    sys.conductor_hint = hint;
    sys.T = default_defect_set(sys.L, sys.S);
    extend_frobenius(sys, index_bound);
    return sys;
}

void extend_frobenius(CompatibleSystem& sys, const Int& index_bound) {
    if (!sys.realized()) throw std::invalid_argument("extend_frobenius: no realization");
    for (Int q = 2; q <= index_bound; q = next_prime(q)) {
        for (auto& r : factor_rational_prime(sys.K, q)) {
            if (sys.in_S(r) || sys.entry_at(r)) continue;
            bool coprime = true;
            for (auto& chi : sys.realization)
                if (!chi.G->coprime(r.gen)) coprime = false;
            if (!coprime) continue;
            std::vector<FE> roots;
            for (auto& chi : sys.realization) roots.push_back(chi.eval_prime(r));
            sys.frob.push_back({r, poly_from_roots(sys.L, roots)});
        }
    }
    std::sort(sys.frob.begin(), sys.frob.end(), [](const FrobeniusEntry& a, const FrobeniusEntry& b) {
        return a.r.p != b.r.p ? a.r.p < b.r.p : a.r.str() < b.r.str();
    });
}

Modulus table_conductor(const ModPCharacter& rho) {
    const NFPtr& K = rho.src.K;
    const RayResidueGroup& Gsrc = *rho.cl->G;
    auto pairs = presentation_generator_pairs(Gsrc);
    Modulus universe = make_modulus(K, rho.src.m.gen, all_real_places(K));
    FE pfe = K->from_rat(Rat(rho.place.p));
    for (auto& d : modulus_divisors(universe)) {
        Modulus target = make_modulus(K, K->mul(d.gen, pfe), d.real_places);
        RayClassGroup clt = ray_class_group(K, target);
        ZMat M;
        for (auto& c : pairs) {
            ResidueClass t;
            t.residue = c.residue;
            t.signs.assign(d.real_places.size(), 0);
            for (size_t i = 0; i < d.real_places.size(); i++) t.signs[i] = c.signs[d.real_places[i]];
            M.push_back(clt.resolve_pair(t));
        }
        bool ok = true;
        for (auto& lam : kernel_mod(M, clt.divisors())) {
            if (!rho.Fq.is_one(rho.eval_class(rho.cl->grp.resolve(lam)))) {
                ok = false;
                break;
            }
        }
        if (ok) return d;
    }
    throw std::logic_error("table_conductor: divisor scan fell through");
}

VerificationReport verify_strict(const CompatibleSystem& sys, const Int& r_bound,
                                 const Int& p_bound, bool weak) {
    VerificationReport rep;
    rep.weak = weak;
    if (!sys.realized()) {
        rep.unverifiable = true;
        return rep;
    }
    for (Int p = 2; p <= p_bound; p = next_prime(p)) {
        for (auto& place : factor_rational_prime(sys.L, p)) {
            if (sys.in_T(place)) continue;
            std::vector<ModPCharacter> rhos;
            bool usable = true;
            for (auto& chi : sys.realization) {
                try {
                    rhos.push_back(reduce_mod_place(chi, place));
                } catch (const std::domain_error& e) {
                    rep.failures.push_back("reduction failed at " + place.str() + ": " + e.what());
                    usable = false;
                    break;
                }
            }
            if (!usable) continue;
            if (!weak) {
                for (auto& rho : rhos) {
                    Modulus cond = table_conductor(rho);
                    for (auto& [P, k] : cond.factor)
                        if (!sys.in_S(P))
                            rep.failures.push_back("table at " + place.str() +
                                                   " ramified outside S at " + P.str());
                }
            }
            for (auto& entry : sys.frob) {
                if (entry.r.p > r_bound) continue;
                if (entry.r.p == p) continue;
                const FqField& Fq = rhos[0].Fq;
                std::vector<FqField::El> want;
                bool reducible = true;
                for (auto& cf : entry.poly) {
                    try {
                        want.push_back(Fq.reduce(cf));
                    } catch (const std::invalid_argument&) {
                        rep.failures.push_back("f at " + entry.r.str() +
                                               " has a denominator at " + place.str());
                        reducible = false;
                        break;
                    }
                }
                if (!reducible) continue;
                // char poly of the diagonal tables at Frob_r, built in F_q
                std::vector<FqField::El> got{Fq.one()};
                for (auto& rho : rhos) {
                    FqField::El v = rho.eval_prime(entry.r);
                    got.insert(got.begin(), Fq.zero());
                    for (size_t i = 0; i + 1 < got.size(); i++)
                        got[i] = Fq.sub(got[i], Fq.mul(v, got[i + 1]));
                }
                rep.pairs_checked++;
                if (got != want)
                    rep.failures.push_back("characteristic polynomial mismatch at r = " +
                                           entry.r.str() + ", place " + place.str());
            }
        }
    }
    rep.degenerate = rep.pairs_checked == 0;
    return rep;
}

ConductorVerdict check_bounded_conductor(const CompatibleSystem& sys, int sample) {
    if (!sys.realized()) throw std::invalid_argument("check_bounded_conductor: no realization");
    ConductorVerdict out;
    for (auto& place : sample_places(sys, sample)) {
        Modulus cond = table_conductor(reduce_mod_place(sys.realization[0], place));
        for (size_t i = 1; i < sys.realization.size(); i++)
            cond = modulus_lcm(cond, table_conductor(reduce_mod_place(sys.realization[i], place)));
        out.samples.emplace_back(place, cond);
    }
    if (out.samples.empty()) return out;
    out.value = out.samples[0].second;
    out.stable = std::all_of(out.samples.begin(), out.samples.end(),
                             [&](auto& s) { return modulus_equal(s.second, out.value); });
    return out;
}

PurityVerdict check_purity(const CompatibleSystem& sys, int sample) {
    PurityVerdict out;
    if (sys.frob.empty()) {
        out.note = "no indexed primes";
        return out;
    }
    auto roots_of_L = complex_roots(sys.L->min_poly);
    bool have_t = false;
    out.pass = true;
    int used = 0;
    Int last_char = 0;
    for (auto& entry : sys.frob) {
        if (used >= sample) break;
        if (entry.r.p == last_char) continue;  // sample across distinct characteristics
        last_char = entry.r.p;
        used++;
        std::vector<FE> roots;
        if (sys.realized()) {
            for (auto& chi : sys.realization) roots.push_back(chi.eval_prime(entry.r));
        } else if (sys.dim == 1) {
            roots.push_back(sys.L->neg(entry.poly[0]));
        } else {
            out.note = "roots unavailable for an unrealized system of dimension > 1";
            out.pass = false;
            return out;
        }
        long double lognm = std::log((long double)entry.r.norm().get_d());
        for (auto& v : roots) {
            if (sys.L->is_zero(v)) {
                out.pass = false;
                out.note = "zero root at " + entry.r.str();
                return out;
            }
            for (size_t e = 0; e < roots_of_L.size(); e++) {
                long double fit = std::log(std::abs(embed_at(*sys.L, v, roots_of_L, e))) / lognm;
                if (!have_t) {
                    out.t = Rat(std::lround(2.0L * fit), 2);
                    out.t.canonicalize();
                    have_t = true;
                }
                double dev = double(std::fabs(fit - (long double)out.t.get_d()));
                out.max_dev = std::max(out.max_dev, dev);
                if (dev > 1e-6) {
                    out.pass = false;
                    out.note = "weight deviates at " + entry.r.str();
                }
            }
            // exact cross-check when v * conj(v) is rational
            FE w = sys.L->mul(v, sys.L->apply_auto(v, sys.L->conj_index));
            if (sys.L->is_rational(w)) {
                Rat two_t = out.t * 2;
                long z = ilong(two_t.get_num());
                Rat expect = z >= 0 ? Rat(pow_int(entry.r.norm(), z)) : Rat(1) / Rat(pow_int(entry.r.norm(), -z));
                if (w[0] != expect) {
                    out.pass = false;
                    out.note = "exact absolute value mismatch at " + entry.r.str();
                }
            }
        }
    }
    return out;
}

IntegralityVerdict check_integrality(const CompatibleSystem& sys) {
    IntegralityVerdict out;
    for (int m = 0; m <= 6; m++) {
        bool ok = true;
        for (auto& entry : sys.frob) {
            Int nm = entry.r.norm();
            for (size_t k = 1; k <= size_t(sys.dim) && ok; k++) {
                FE c = entry.poly[sys.dim - k];
                if (m > 0) c = sys.L->mul_rat(c, Rat(pow_int(nm, (unsigned long)(m) * k)));
                if (!sys.L->is_integral(c)) ok = false;
            }
            if (!ok) break;
        }
        if (ok) {
            out.pass = true;
            out.m = m;
            out.note = m == 0 ? "integral" : "integral after norm twist";
            return out;
        }
    }
    out.note = "no twist in window restores integrality";
    return out;
}

ArtinVerdict detect_artin(const CompatibleSystem& sys, int sample) {
    if (!sys.realized()) throw std::invalid_argument("detect_artin: no realization");
    ArtinVerdict out;
    for (auto& place : sample_places(sys, sample)) {
        Int order = 1;
        for (auto& chi : sys.realization) {
            ModPCharacter rho = reduce_mod_place(chi, place);
            const auto& fac = factors_of(rho.Fq.group_order());
            for (auto& v : rho.table) order = lcm(order, fq_element_order(rho.Fq, v, fac));
        }
        out.samples.emplace_back(place, order);
    }
    if (out.samples.empty()) return out;
    out.order = out.samples[0].second;
    out.stable = std::all_of(out.samples.begin(), out.samples.end(),
                             [&](auto& s) { return s.second == out.order; });
    if (!out.stable) out.order = out.samples.back().second;
    return out;
}

}  // namespace hecke
