#include "hecke/reconstruct.hpp"

#include <algorithm>
#include <set>

#include "hecke/bigint.hpp"

namespace hecke {

namespace {

Int next_prime(const Int& q) {
    Int r;
    mpz_nextprime(r.get_mpz_t(), q.get_mpz_t());
    return r;
}

std::vector<int> all_real_places(const NFPtr& K) {
    std::vector<int> v(K->r1);
    for (int i = 0; i < K->r1; i++) v[i] = i;
    return v;
}

// gen times a unit, made congruent to 1 and totally positive; Gplus is the
// residue group at the modulus with every real place flagged
std::optional<FE> adjust_to_one(const NFPtr& K, const RayResidueGroup& Gplus, const FE& gen) {
    ZVec x = Gplus.resolve(gen);
    ZMat U = unit_words(Gplus);
    ZVec target;
    for (auto& xi : x) target.push_back(-xi);
    auto b = solve_mod_vec(U, target, Gplus.divisors());
    if (!b) return std::nullopt;
    std::vector<FE> units{K->units.torsion_generator};
    for (auto& fu : K->units.fundamental_units) units.push_back(fu);
    FE g = gen;
    for (size_t j = 0; j < units.size(); j++)
        if ((*b)[j] != 0) g = K->mul(g, K->pow(units[j], ilong((*b)[j])));
    for (auto& zi : Gplus.resolve(g))
        if (zi != 0) return std::nullopt;
    for (int v = 0; v < K->r1; v++)
        if (K->real_sign(g, v) < 0) return std::nullopt;
    return g;
}

bool splits_completely(const NFPtr& K, const Int& q, std::vector<PrimeIdeal>* out = nullptr) {
    auto facs = factor_rational_prime(K, q);
    if (long(facs.size()) != K->deg) return false;
    if (out) *out = std::move(facs);
    return true;
}

Int max_indexed_prime(const CompatibleSystem& sys) {
    Int m = 2;
    for (auto& e : sys.frob) m = std::max(m, e.r.p);
    return m;
}

FE root_from_relation(const FieldEmbedding& emb, const ProbePrime& r, const ExponentData& ed) {
    const NFPtr& K = emb.K;
    const NFPtr& L = emb.L;
    FE v = ed.zeta;
    for (size_t a = 0; a < K->autos.size(); a++) {
        if (ed.m[a] == 0) continue;
        v = L->mul(v, L->pow(emb.apply(K->apply_auto(r.gamma, a)), ilong(ed.m[a])));
    }
    return v;
}

}  // namespace

std::vector<ProbePrime> choose_probe_primes(const NFPtr& K, const NFPtr& L, const Modulus& m,
                                            int count, const Int& height_bound) {
    std::vector<ProbePrime> out;
    RayResidueGroup Gplus = residue_group(K, make_modulus(K, m.gen, all_real_places(K)));
    for (Int q = 2; q <= height_bound && int(out.size()) < count; q = next_prime(q)) {
        if (K->disc % q == 0 || L->disc % q == 0 || m.norm % q == 0) continue;
        std::vector<PrimeIdeal> facs;
        if (!splits_completely(K, q, &facs)) continue;
        for (auto& P : facs) {
            auto g = adjust_to_one(K, Gplus, P.gen);
            if (!g) continue;
            out.push_back({*g, q, P});
            break;
        }
    }
    if (int(out.size()) < count)
        throw InsufficientData("fewer than " + std::to_string(count) +
                               " probe primes below the height bound");
    return out;
}

std::vector<ProbePrime> probe_primes_from_entries(const CompatibleSystem& sys, const Modulus& m,
                                                  int count) {
    const NFPtr& K = sys.K;
    std::vector<ProbePrime> out;
    RayResidueGroup Gplus = residue_group(K, make_modulus(K, m.gen, all_real_places(K)));
    Int last_q = 0;
    for (auto& entry : sys.frob) {
        if (int(out.size()) >= count) break;
        Int q = entry.r.p;
        if (q == last_q) continue;
        if (K->disc % q == 0 || sys.L->disc % q == 0 || m.norm % q == 0) continue;
        if (!splits_completely(K, q)) continue;
        if (!Gplus.coprime(entry.r.gen)) continue;
        auto g = adjust_to_one(K, Gplus, entry.r.gen);
        if (!g) continue;
        out.push_back({*g, q, entry.r});
        last_q = q;
    }
    if (int(out.size()) < count)
        throw InsufficientData("indexed Frobenius data yields fewer than " +
                               std::to_string(count) + " probe primes");
    return out;
}

ExponentData infer_exponents(const FieldEmbedding& emb, const FE& f_root, const ProbePrime& r,
                             const Int& ell) {
    const NFPtr& K = emb.K;
    const NFPtr& L = emb.L;
    if (L->is_zero(f_root)) throw NotHeckeType("zero Frobenius root at " + r.P.str());
    std::vector<FE> sig;
    for (size_t a = 0; a < K->autos.size(); a++) sig.push_back(emb.apply(K->apply_auto(r.gamma, a)));
    auto rel = mult_relation(L, f_root, sig, ell);
    if (!rel) throw NotHeckeType("not of Hecke type at " + r.P.str());
    if (rel->t != 1)
        throw NotHeckeType("Frobenius root at " + r.P.str() + " only satisfies a power relation");
    if (!L->torsion_exponent(rel->zeta))
        throw std::logic_error("infer_exponents: non-torsion cofactor");
    return {rel->zeta, rel->m};
}

CrossCheck cross_check_independence(const CompatibleSystem& sys,
                                    const std::vector<std::pair<ProbePrime, ExponentData>>& results) {
    if (results.size() < 2) throw InsufficientData("need at least two probe primes");
    if (!sys.realized() && results.size() < 3)
        throw InsufficientData("need at least three probe primes for a file-loaded system");
    CrossCheck out;
    out.m = results[0].second.m;
    for (size_t i = 1; i < results.size(); i++) {
        if (results[i].second.m != out.m)
            throw NotHeckeType("exponents at " + results[0].first.P.str() + " and " +
                               results[i].first.P.str() + " disagree");
    }
    if (!sys.realized()) return out;

    // product trick: the system evaluated at the class of r r' must match
    // f_r f_{r'}; checked at two places
    const HeckeCharacter& chi = sys.realization[0];
    const NFPtr& L = sys.L;
    Int avoid = chi.m.norm;
    for (auto& [r, ed] : results) {
        Rat nm = L->norm(root_from_relation(chi.emb, r, ed));
        avoid *= r.q * abs(Int(nm.get_num() * nm.get_den()));
    }
    std::vector<PrimeIdeal> places;
    for (Int p = 2; int(places.size()) < 2 && p < 100000; p = next_prime(p)) {
        if (avoid % p == 0 || L->disc % p == 0) continue;
        for (auto& pl : factor_rational_prime(L, p)) {
            if (pl.e > 1 || sys.in_T(pl)) continue;
            places.push_back(pl);
            break;
        }
    }
    if (places.size() < 2) throw InsufficientData("no admissible cross-check places");
    for (auto& place : places) {
        ModPCharacter rho = reduce_mod_place(chi, place);
        for (size_t i = 0; i + 1 < results.size(); i++) {
            const auto& [r1, e1] = results[i];
            const auto& [r2, e2] = results[i + 1];
            FE prod = L->mul(root_from_relation(chi.emb, r1, e1), root_from_relation(chi.emb, r2, e2));
            FqField::El lhs = rho.Fq.reduce(prod);
            FqField::El rhs = rho.eval_elem(sys.K->mul(r1.gamma, r2.gamma));
            if (lhs != rhs)
                throw NotHeckeType("product class at " + r1.P.str() + " * " + r2.P.str() +
                                   " disagrees with the tables at " + place.str());
        }
        out.cross_primes.push_back(place.p);
    }
    return out;
}

FiniteCharacter extract_finite_part(const CompatibleSystem& sys, const InfinityType& ntype,
                                    const Modulus& conductor_guess) {
    const NFPtr& K = sys.K;
    const NFPtr& L = sys.L;
    auto Gc = std::make_shared<const RayResidueGroup>(residue_group(K, conductor_guess));
    size_t ng = Gc->divisors().size();
    if (ng == 0) return trivial_character(Gc);
    long w = L->units.torsion_order;

    if (sys.realized()) {
        const HeckeCharacter& chi = sys.realization[0];
        Int bound = torsion_separation_bound(L);
        std::vector<PrimeIdeal> places;
        for (Int p = 2; int(places.size()) < 2 && p < 100000; p = next_prime(p)) {
            if (p <= bound || conductor_guess.norm % p == 0 || chi.m.norm % p == 0 ||
                L->disc % p == 0)
                continue;
            for (auto& pl : factor_rational_prime(L, p)) {
                if (pl.e > 1) continue;
                places.push_back(pl);
                break;
            }
        }
        if (places.size() < 2) throw InsufficientData("no admissible identification places");
        ModPCharacter rho1 = reduce_mod_place(chi, places[0]);
        ModPCharacter rho2 = reduce_mod_place(chi, places[1]);
        std::vector<FqField::El> z1(w), z2(w);
        FE zj = L->one();
        for (long j = 0; j < w; j++) {
            z1[j] = rho1.Fq.reduce(zj);
            z2[j] = rho2.Fq.reduce(zj);
            zj = L->mul(zj, L->units.torsion_generator);
        }
        Int extra = places[0].p * places[1].p;
        std::vector<Int> k(ng);
        for (size_t j = 0; j < ng; j++) {
            FE gamma = honest_representative_coprime(*Gc, Gc->gen_reps[j], extra);
            FE type_part = L->one();
            for (size_t a = 0; a < ntype.n.size(); a++) {
                if (ntype.n[a] == 0) continue;
                type_part = L->mul(type_part, L->pow(chi.emb.apply(K->apply_auto(gamma, a)),
                                                     ilong(ntype.n[a])));
            }
            FqField::El v1 = rho1.Fq.mul(rho1.eval_elem(gamma), rho1.Fq.inv(rho1.Fq.reduce(type_part)));
            FqField::El v2 = rho2.Fq.mul(rho2.eval_elem(gamma), rho2.Fq.inv(rho2.Fq.reduce(type_part)));
            long hit = -1;
            for (long jj = 0; jj < w; jj++) {
                if (z1[jj] == v1 && z2[jj] == v2) {
                    if (hit >= 0) throw InsufficientData("ambiguous root-of-unity identification");
                    hit = jj;
                }
            }
            if (hit < 0)
                throw std::domain_error("twist at generator " + K->fe_str(gamma) +
                                        " is not a bounded root of unity");
            Int num = Int(hit) * Gc->divisors()[j];
            if (num % w != 0)
                throw std::domain_error("twist order does not divide the class order");
            k[j] = (num / w) % Gc->divisors()[j];
        }
        return FiniteCharacter{Gc, k};
    }

    // file path: solve for the character from the torsion cofactors of the
    // indexed data; unit classes are pinned by unit compatibility, the prime
    // classes together with them must span the residue group
    FieldEmbedding emb = catalog_embedding(K, L);
    std::vector<ZVec> coords;
    std::vector<Int> targets;
    std::vector<FE> ugens{K->units.torsion_generator};
    for (auto& fu : K->units.fundamental_units) ugens.push_back(fu);
    for (auto& u : ugens) {
        FE tu = L->one();
        for (size_t a = 0; a < ntype.n.size(); a++) {
            if (ntype.n[a] == 0) continue;
            tu = L->mul(tu, L->pow(emb.apply(K->apply_auto(u, a)), ilong(ntype.n[a])));
        }
        auto te = L->torsion_exponent(L->inv(tu));
        if (!te) throw std::domain_error("infinity type is not unit-compatible");
        Int t = Int(*te) % w;
        if (t < 0) t += w;
        coords.push_back(Gc->resolve(u));
        targets.push_back(t);
    }
    for (auto& entry : sys.frob) {
        if (!Gc->coprime(entry.r.gen)) continue;
        FE f_root = L->neg(entry.poly[0]);
        if (L->is_zero(f_root)) throw NotHeckeType("zero Frobenius root at " + entry.r.str());
        FE type_part = L->one();
        for (size_t a = 0; a < ntype.n.size(); a++) {
            if (ntype.n[a] == 0) continue;
            type_part = L->mul(type_part, L->pow(emb.apply(K->apply_auto(entry.r.gen, a)),
                                                 ilong(ntype.n[a])));
        }
        FE u = L->div(f_root, type_part);
        auto te = L->torsion_exponent(u);
        if (!te) throw NotHeckeType("twist at " + entry.r.str() + " is not a root of unity");
        coords.push_back(Gc->resolve(entry.r.gen));
        Int t = Int(*te) % w;
        if (t < 0) t += w;
        targets.push_back(t);
    }
    if (!spans_group(Gc->divisors(), coords))
        throw InsufficientData("indexed primes do not span the residue group at the conductor");
    auto a = character_solve(Gc->divisors(), coords, targets, Int(w));
    if (!a) throw std::domain_error("no finite character matches the torsion data");
    return character_from_w_exponents(Gc, *a, Int(w));
}

namespace {

ReconstructionResult reconstruct_at(const CompatibleSystem& sys, const FieldEmbedding& emb,
                                    const Modulus& cand, const Int& ell,
                                    const ReconstructOptions& opt) {
    const NFPtr& K = sys.K;
    const NFPtr& L = sys.L;
    CompatibleSystem work = sys;
    std::vector<ProbePrime> probes;
    if (work.realized()) {
        for (Int B : {Int(100), Int(500), Int(2000), opt.height_bound}) {
            extend_frobenius(work, B);
            try {
                probes = probe_primes_from_entries(work, cand, opt.probes);
                break;
            } catch (const InsufficientData&) {
                if (B == opt.height_bound) throw;
            }
        }
    } else {
        probes = probe_primes_from_entries(work, cand, opt.probes);
    }

    std::vector<std::pair<ProbePrime, ExponentData>> results;
    for (auto& r : probes) {
        const FrobeniusEntry* entry = work.entry_at(r.P);
        if (!entry) throw InsufficientData("no Frobenius entry at " + r.P.str());
        FE f_root = L->neg(entry->poly[0]);
        results.emplace_back(r, infer_exponents(emb, f_root, r, ell));
    }
    CrossCheck cc = cross_check_independence(work, results);
    InfinityType ntype{cc.m};

    FiniteCharacter eps = extract_finite_part(work, ntype, cand);
    HeckeCharacter chi = hecke_create(K, L, emb, cand, ntype, eps);
    chi = restrict_to_conductor(chi);

    // regenerate and compare every indexed prime coprime to the conductor
    CompatibleSystem regen = system_from_characters({chi}, max_indexed_prime(sys));
    for (auto& entry : sys.frob) {
        if (!chi.G->coprime(entry.r.gen)) continue;
        const FrobeniusEntry* e2 = regen.entry_at(entry.r);
        if (!e2) throw std::domain_error("regeneration has no entry at " + entry.r.str());
        if (e2->poly != entry.poly)
            throw std::domain_error("regenerated polynomial disagrees at " + entry.r.str());
    }

    ReconstructionResult res;
    res.infinity_type = ntype;
    res.finite_part = chi.eps;
    res.character = chi;
    res.conductor = chi.m;
    res.ell = ell;
    long w = L->units.torsion_order;
    for (auto& [r, ed] : results) {
        long te = *L->torsion_exponent(ed.zeta);
        Int ord = Int(w) / gcd(Int(w), Int(te));
        res.torsion_order_bound = lcm(res.torsion_order_bound, ord);
        res.audit.push_back({r, MultRelation{Int(1), ed.m, ed.zeta}, cc.cross_primes});
    }
    return res;
}

}  // namespace

ReconstructionResult reconstruct_character(const CompatibleSystem& sys,
                                           const ReconstructOptions& opt) {
    if (sys.dim != 1)
        throw std::invalid_argument(
            "reconstruct_character handles dimension 1; declared sums go through reconstruct_split");
    const NFPtr& K = sys.K;
    const NFPtr& L = sys.L;
    FieldEmbedding emb = sys.realized() ? sys.realization[0].emb : catalog_embedding(K, L);

    Int ell = 2;
    auto ell_collides = [&](const Int& l) {
        for (auto& P : sys.S)
            if ((P.norm() - 1) % l == 0) return true;
        return false;
    };
    while (ell_collides(ell)) ell = next_prime(ell);

    std::vector<Modulus> candidates;
    if (sys.realized()) {
        auto cv = check_bounded_conductor(sys, 6);
        if (cv.stable) candidates.push_back(cv.value);
    }
    if (candidates.empty() && sys.conductor_hint) candidates.push_back(*sys.conductor_hint);
    if (candidates.empty()) {
        FE g = K->one();
        for (auto& P : sys.S) g = K->mul(g, K->pow(P.gen, 6));
        candidates = modulus_divisors(make_modulus(K, g, all_real_places(K)));
    }

    std::string last_err = "no conductor candidates";
    std::string last_thin;
    for (auto& cand : candidates) {
        try {
            return reconstruct_at(sys, emb, cand, ell, opt);
        } catch (const std::domain_error& e) {
            last_err = e.what();
        } catch (const std::invalid_argument& e) {
            last_err = e.what();
        } catch (const InsufficientData& e) {
            last_thin = e.what();
        }
    }
    // an undecidable candidate may have been the right one
    if (!last_thin.empty()) throw InsufficientData(last_thin);
    throw NotHeckeType("no admissible conductor: " + last_err);
}

std::vector<ReconstructionResult> reconstruct_split(const CompatibleSystem& sys,
                                                    const ReconstructOptions& opt) {
    if (!sys.realized())
        throw std::invalid_argument("reconstruct_split needs a declared splitting");
    std::vector<ReconstructionResult> out;
    for (auto& chi : sys.realization)
        out.push_back(reconstruct_character(system_from_characters({chi}, max_indexed_prime(sys)), opt));
    return out;
}

}  // namespace hecke
