#include "hecke/heckechar.hpp"

#include <algorithm>
#include <stdexcept>

#include "hecke/bigint.hpp"

namespace hecke {

namespace {

long small(const Int& e, const char* what) {
    if (!e.fits_slong_p()) throw std::invalid_argument(std::string(what) + ": exponent too large");
    return e.get_si();
}

// honest representative of a class of Gc that is additionally coprime to Gm
FE honest_in(const RayResidueGroup& Gc, const ResidueClass& c, const RayResidueGroup& Gm) {
    const auto& F = *Gc.F;
    size_t d = F.deg;
    auto matches = [&](const FE& g) {
        if (!Gc.coprime(g) || !Gm.coprime(g)) return false;
        for (size_t i = 0; i < Gc.m.real_places.size(); i++) {
            int s = F.real_sign(g, Gc.m.real_places[i]) < 0 ? 1 : 0;
            if (s != c.signs[i]) return false;
        }
        return true;
    };
    if (matches(c.residue)) return c.residue;
    for (long B = 1; B <= 64; B *= 2) {
        std::vector<long> t(d, -B);
        while (true) {
            FE shift = F.zero();
            for (size_t i = 0; i < d; i++) shift[i] = Rat(t[i]);
            FE g = F.add(c.residue, F.mul(Gc.m.gen, shift));
            if (!F.is_zero(g) && matches(g)) return g;
            size_t i = 0;
            while (i < d && t[i] == B) t[i++] = -B;
            if (i == d) break;
            t[i]++;
        }
    }
    throw std::runtime_error("honest_in: sweep exhausted");
}

}  // namespace

FE honest_representative_coprime(const RayResidueGroup& G, const ResidueClass& c, const Int& extra) {
    const auto& F = *G.F;
    size_t d = F.deg;
    auto matches = [&](const FE& g) {
        if (!G.coprime(g)) return false;
        Rat nm = F.norm(g);
        if (gcd(Int(abs(nm.get_num())), extra) != 1) return false;
        for (size_t i = 0; i < G.m.real_places.size(); i++) {
            int s = F.real_sign(g, G.m.real_places[i]) < 0 ? 1 : 0;
            if (s != c.signs[i]) return false;
        }
        return true;
    };
    if (matches(c.residue)) return c.residue;
    for (long B = 1; B <= 64; B *= 2) {
        std::vector<long> t(d, -B);
        while (true) {
            FE shift = F.zero();
            for (size_t i = 0; i < d; i++) shift[i] = Rat(t[i]);
            FE g = F.add(c.residue, F.mul(G.m.gen, shift));
            if (!F.is_zero(g) && matches(g)) return g;
            size_t i = 0;
            while (i < d && t[i] == B) t[i++] = -B;
            if (i == d) break;
            t[i]++;
        }
    }
    throw std::runtime_error("honest_representative_coprime: sweep exhausted");
}

FE HeckeCharacter::torsion_value(const Rat& q) const {
    long w = L->units.torsion_order;
    Rat e = q * w;
    if (e.get_den() != 1) throw std::logic_error("torsion_value: order does not divide w");
    Int em = e.get_num() % w;
    if (em < 0) em += w;
    return L->pow(L->units.torsion_generator, em.get_si());
}

FE HeckeCharacter::eval(const FE& gamma) const {
    if (!G->coprime(gamma)) throw std::invalid_argument("hecke eval: element not coprime to modulus");
    FE val = torsion_value(eps.eval_rat(gamma));
    for (size_t a = 0; a < ntype.n.size(); a++) {
        if (ntype.n[a] == 0) continue;
        FE im = emb.apply(K->apply_auto(gamma, a));
        val = L->mul(val, L->pow(im, small(ntype.n[a], "hecke eval")));
    }
    return val;
}

FE HeckeCharacter::eval_prime(const PrimeIdeal& P) const {
    if (P.F != K) throw std::invalid_argument("hecke eval: prime of a different field");
    return eval(P.gen);
}

HeckeCharacter hecke_create(const NFPtr& K, const NFPtr& L, const FieldEmbedding& emb,
                            const Modulus& m, const InfinityType& ntype,
                            const FiniteCharacter& eps) {
    if (emb.K != K || emb.L != L) throw std::invalid_argument("hecke_create: embedding fields mismatch");
    if (m.F != K) throw std::invalid_argument("hecke_create: modulus field mismatch");
    if (!eps.G || eps.G->F != K || !modulus_equal(eps.G->m, m))
        throw std::invalid_argument("hecke_create: finite part lives on a different modulus");
    if (ntype.n.size() != K->autos.size())
        throw std::invalid_argument("hecke_create: infinity type length != automorphism count");
    long w = L->units.torsion_order;
    Int ex = eps.G->grp.exponent();
    if (ex != 1 && Int(w) % ex != 0)
        throw std::invalid_argument(
            "hecke_create: residue group exponent " + ex.get_str() +
            " does not divide the torsion order " + std::to_string(w) + " of the value field");

    HeckeCharacter chi{K, L, emb, m, ntype, eps.G, eps};

    std::vector<FE> units;
    units.push_back(K->units.torsion_generator);
    for (auto& u : K->units.fundamental_units) units.push_back(u);
    for (auto& u : units) {
        FE v = chi.eval(u);
        if (v != L->one())
            throw std::invalid_argument("hecke_create: unit compatibility fails at " + K->fe_str(u));
    }
    return chi;
}

Modulus conductor(const HeckeCharacter& chi) {
    auto pairs = presentation_generator_pairs(*chi.G);
    for (auto& d : modulus_divisors(chi.m)) {
        if (modulus_equal(d, chi.m)) return d;
        if (d.is_one()) {
            if (chi.eps.is_trivial()) return d;
            continue;
        }
        RayResidueGroup Gd = residue_group(chi.K, d);
        ZMat M;
        for (auto& c : pairs) {
            ResidueClass t;
            t.residue = c.residue;
            t.signs.assign(d.real_places.size(), 0);
            for (size_t i = 0; i < d.real_places.size(); i++) {
                auto it = std::find(chi.m.real_places.begin(), chi.m.real_places.end(),
                                    d.real_places[i]);
                if (it != chi.m.real_places.end())
                    t.signs[i] = c.signs[it - chi.m.real_places.begin()];
            }
            M.push_back(Gd.resolve_pair(t));
        }
        bool ok = true;
        for (auto& lam : kernel_mod(M, Gd.divisors())) {
            if (chi.eps.eval_rat_coords(chi.G->grp.resolve(lam)) != 0) {
                ok = false;
                break;
            }
        }
        if (ok) return d;
    }
    throw std::logic_error("conductor: divisor scan fell through");
}

HeckeCharacter restrict_to_conductor(const HeckeCharacter& chi) {
    Modulus c = conductor(chi);
    if (modulus_equal(c, chi.m)) return chi;
    auto Gc = std::make_shared<const RayResidueGroup>(residue_group(chi.K, c));
    std::vector<Int> k;
    for (size_t j = 0; j < Gc->divisors().size(); j++) {
        FE gamma = honest_in(*Gc, Gc->gen_reps[j], *chi.G);
        Rat q = chi.eps.eval_rat(gamma);
        Rat kj = q * Gc->divisors()[j];
        if (kj.get_den() != 1)
            throw std::logic_error("restrict_to_conductor: value order exceeds class order");
        Int kv = kj.get_num() % Gc->divisors()[j];
        if (kv < 0) kv += Gc->divisors()[j];
        k.push_back(kv);
    }
    FiniteCharacter eps{Gc, k};
    return hecke_create(chi.K, chi.L, chi.emb, c, chi.ntype, eps);
}

FiniteCharacter pullback_finite(const FiniteCharacter& eps,
                                std::shared_ptr<const RayResidueGroup> Gbig) {
    if (!modulus_divides(eps.G->m, Gbig->m))
        throw std::invalid_argument("pullback_finite: source modulus does not divide the target");
    if (eps.G.get() == Gbig.get()) return eps;
    std::vector<Int> k;
    for (size_t j = 0; j < Gbig->divisors().size(); j++) {
        FE gamma = honest_in(*Gbig, Gbig->gen_reps[j], *eps.G);
        Rat kj = eps.eval_rat(gamma) * Gbig->divisors()[j];
        if (kj.get_den() != 1) throw std::logic_error("pullback_finite: value order exceeds class order");
        Int kv = kj.get_num() % Gbig->divisors()[j];
        if (kv < 0) kv += Gbig->divisors()[j];
        k.push_back(kv);
    }
    return FiniteCharacter{std::move(Gbig), k};
}

HeckeCharacter character_product(const HeckeCharacter& a, const HeckeCharacter& b) {
    if (a.K != b.K || a.L != b.L || a.emb.theta_image != b.emb.theta_image)
        throw std::invalid_argument("character_product: field data mismatch");
    Modulus m = modulus_lcm(a.m, b.m);
    std::shared_ptr<const RayResidueGroup> G;
    if (modulus_equal(m, a.m))
        G = a.G;
    else if (modulus_equal(m, b.m))
        G = b.G;
    else
        G = std::make_shared<const RayResidueGroup>(residue_group(a.K, m));
    FiniteCharacter ea = pullback_finite(a.eps, G);
    FiniteCharacter eb = pullback_finite(b.eps, G);
    std::vector<Int> k(G->divisors().size());
    for (size_t j = 0; j < k.size(); j++) k[j] = (ea.k[j] + eb.k[j]) % G->divisors()[j];
    InfinityType nt;
    nt.n.resize(a.ntype.n.size());
    for (size_t i = 0; i < nt.n.size(); i++) nt.n[i] = a.ntype.n[i] + b.ntype.n[i];
    return hecke_create(a.K, a.L, a.emb, m, nt, FiniteCharacter{G, k});
}

FqField::El ModPCharacter::eval_class(const ZVec& x) const {
    if (x.size() != table.size()) throw std::invalid_argument("mod-p eval: coordinate length");
    FqField::El v = Fq.one();
    for (size_t j = 0; j < table.size(); j++) {
        if (x[j] == 0) continue;
        v = Fq.mul(v, Fq.pow(table[j], x[j]));
    }
    return v;
}

FqField::El ModPCharacter::eval_elem(const FE& gamma) const {
    return eval_class(cl->resolve(gamma));
}

FqField::El ModPCharacter::eval_prime(const PrimeIdeal& r) const {
    if (r.F != src.K) throw std::invalid_argument("mod-p eval: prime of a different field");
    return eval_elem(r.gen);
}

ModPCharacter reduce_mod_place(const HeckeCharacter& chi, const PrimeIdeal& place) {
    if (place.F != chi.L) throw std::invalid_argument("reduce_mod_place: place of a different field");
    ModPCharacter rho;
    rho.src = chi;
    rho.place = place;
    rho.Fq = residue_field(place);
    FE pgen = chi.K->mul(chi.m.gen, chi.K->from_rat(Rat(place.p)));
    std::vector<int> flags(chi.K->r1);
    for (int i = 0; i < chi.K->r1; i++) flags[i] = i;
    Modulus mp = make_modulus(chi.K, pgen, flags);
    rho.cl = std::make_shared<const RayClassGroup>(ray_class_group(chi.K, mp));
    for (size_t j = 0; j < rho.cl->divisors().size(); j++) {
        FE v = chi.eval(rho.cl->gen_elems[j]);
        FqField::El r;
        try {
            r = rho.Fq.reduce(v);
        } catch (const std::invalid_argument&) {
            throw std::domain_error("reduce_mod_place: character value has a denominator at " +
                                    place.str());
        }
        if (rho.Fq.is_zero(r))
            throw std::domain_error("reduce_mod_place: character value vanishes at " + place.str());
        rho.table.push_back(r);
    }
    return rho;
}

}  // namespace hecke
