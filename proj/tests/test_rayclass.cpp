#include <set>

#include "doctest.h"
#include "hecke/rayclass.hpp"
#include "tsupport.hpp"

using namespace hecke;
using tsupport::Rng;

namespace {

std::vector<Modulus> sample_moduli(const NFPtr& K) {
    std::vector<Modulus> out;
    std::vector<std::vector<int>> flag_sets{{}};
    if (K->r1 >= 1) flag_sets.push_back(tsupport::all_flags(K));
    std::vector<FE> gens;
    gens.push_back(K->from_rat(Rat(1)));
    gens.push_back(K->from_rat(Rat(K->deg > 2 ? 5 : 12)));
    auto above = factor_rational_prime(K, Int(K->deg > 2 ? 11 : 7));
    gens.push_back(above[0].gen);
    if (K->deg <= 2) gens.push_back(K->mul(above[0].gen, K->from_rat(Rat(3))));
    for (auto& g : gens)
        for (auto& fl : flag_sets) out.push_back(make_modulus(K, g, fl));
    return out;
}

Int euler_order(const Modulus& m) {
    Int phi(1);
    for (auto& [P, k] : m.factor) {
        Int nm = P.norm();
        Int pk(1);
        for (int i = 1; i < k; i++) pk *= nm;
        phi *= pk * (nm - 1);
    }
    for (size_t i = 0; i < m.real_places.size(); i++) phi *= 2;
    return phi;
}

// closure of the unit-image subgroup inside the SNF coordinates
Int unit_image_order(const RayResidueGroup& G) {
    const auto& d = G.divisors();
    ZMat uw = unit_words(G);
    std::set<std::vector<long>> seen;
    std::vector<std::vector<long>> frontier;
    auto norm = [&](ZVec v) {
        std::vector<long> key(d.size());
        for (size_t j = 0; j < d.size(); j++) {
            Int r = v[j] % d[j];
            if (r < 0) r += d[j];
            key[j] = ilong(r);
        }
        return key;
    };
    seen.insert(std::vector<long>(d.size(), 0));
    frontier.push_back(*seen.begin());
    std::vector<std::vector<long>> gens;
    for (auto& row : uw) gens.push_back(norm(G.grp.resolve(row)));
    while (!frontier.empty()) {
        auto cur = frontier.back();
        frontier.pop_back();
        for (auto& g : gens) {
            std::vector<long> nxt(d.size());
            for (size_t j = 0; j < d.size(); j++)
                nxt[j] = (cur[j] + g[j]) % ilong(d[j]);
            if (seen.insert(nxt).second) frontier.push_back(nxt);
        }
    }
    return Int(long(seen.size()));
}

}  // namespace

TEST_CASE("rayclass: group orders match the euler product and the unit quotient") {
    for (auto& label : tsupport::catalog_labels()) {
        auto K = field_by_label(label);
        for (auto& m : sample_moduli(K)) {
            RayResidueGroup G = residue_group(K, m);
            CHECK(G.order() == euler_order(m));
            RayClassGroup C = ray_class_group(K, m);
            CHECK(C.order() * unit_image_order(G) == G.order());
        }
    }
}

TEST_CASE("rayclass: generator representatives resolve to the standard basis") {
    for (auto& label : tsupport::catalog_labels()) {
        auto K = field_by_label(label);
        for (auto& m : sample_moduli(K)) {
            RayResidueGroup G = residue_group(K, m);
            for (size_t j = 0; j < G.divisors().size(); j++) {
                ZVec x = G.resolve_pair(G.gen_reps[j]);
                for (size_t i = 0; i < x.size(); i++) CHECK(x[i] == (i == j ? 1 : 0));
            }
            RayClassGroup C = ray_class_group(K, m);
            for (size_t j = 0; j < C.divisors().size(); j++) {
                ZVec x = C.resolve_pair(C.gen_reps[j]);
                for (size_t i = 0; i < x.size(); i++) CHECK(x[i] == (i == j ? 1 : 0));
                ZVec y = C.resolve(C.gen_elems[j]);
                CHECK(x == y);
            }
        }
    }
}

TEST_CASE("rayclass: resolve is additive on products") {
    Rng rng(201);
    for (auto& label : {"rationals", "gaussian", "sqrt2", "cyclotomic12"}) {
        auto K = field_by_label(label);
        Modulus m = make_modulus(K, K->from_rat(Rat(K->deg > 2 ? 5 : 12)),
                                 K->r1 ? tsupport::all_flags(K) : std::vector<int>{});
        RayResidueGroup G = residue_group(K, m);
        const auto& d = G.divisors();
        std::vector<FE> pool;
        for (int t = 0; t < 200; t++) pool.push_back(tsupport::random_coprime_element(K, G, rng, 40));
        for (int t = 0; t < 200; t++) {
            const FE& a = rng.pick(pool);
            const FE& b = rng.pick(pool);
            ZVec xa = G.resolve(a), xb = G.resolve(b), xab = G.resolve(K->mul(a, b));
            for (size_t j = 0; j < d.size(); j++) CHECK((xa[j] + xb[j] - xab[j]) % d[j] == 0);
        }
    }
}

TEST_CASE("rayclass: the dual basis separates classes") {
    for (auto& label : {"rationals", "gaussian", "eisenstein"}) {
        auto K = field_by_label(label);
        Modulus m = make_modulus(K, K->from_rat(Rat(label == std::string("rationals") ? 16 : 7)),
                                 K->r1 ? tsupport::all_flags(K) : std::vector<int>{});
        auto G = std::make_shared<const RayResidueGroup>(residue_group(K, m));
        REQUIRE(G->order() <= 1000);
        const auto& d = G->divisors();
        // dual basis: character j sends generator i to zeta_{d_i}^{[i==j]}
        std::vector<FiniteCharacter> dual;
        for (size_t j = 0; j < d.size(); j++) {
            std::vector<Int> k(d.size(), Int(0));
            k[j] = 1;
            dual.push_back(FiniteCharacter{G, k});
        }
        // walk every class as a word in the generators
        std::vector<ZVec> classes{ZVec(d.size(), Int(0))};
        for (size_t j = 0; j < d.size(); j++) {
            std::vector<ZVec> next;
            for (auto& c : classes)
                for (Int e(0); e < d[j]; e++) {
                    ZVec v = c;
                    v[j] = e;
                    next.push_back(v);
                }
            classes = next;
        }
        CHECK(Int(long(classes.size())) == G->order());
        long trivial_hits = 0;
        for (auto& c : classes) {
            bool all_one = true;
            for (auto& eps : dual)
                if (eps.eval_rat_coords(c) != 0) all_one = false;
            bool is_identity = true;
            for (auto& e : c)
                if (e != 0) is_identity = false;
            CHECK(all_one == is_identity);
            if (all_one) trivial_hits++;
        }
        CHECK(trivial_hits == 1);
    }
}

TEST_CASE("rayclass: honest representatives land in their class") {
    Rng rng(202);
    for (auto& label : {"gaussian", "sqrt5", "cyclotomic8"}) {
        auto K = field_by_label(label);
        Modulus m = make_modulus(K, K->from_rat(Rat(K->deg > 2 ? 3 : 11)),
                                 K->r1 ? tsupport::all_flags(K) : std::vector<int>{});
        RayResidueGroup G = residue_group(K, m);
        for (int t = 0; t < 20; t++) {
            FE a = tsupport::random_coprime_element(K, G, rng, 30);
            ResidueClass c = G.class_of(a);
            FE h = honest_representative(G, c);
            CHECK(G.resolve(h) == G.resolve(a));
        }
    }
}

TEST_CASE("rayclass: modulus divisibility and lcm agree") {
    auto K = field_by_label("gaussian");
    FE onepi = tsupport::fel(K, {1, 1});
    Modulus a = make_modulus(K, K->pow(onepi, 2));
    Modulus b = make_modulus(K, K->mul(onepi, K->from_rat(Rat(3))));
    Modulus l = modulus_lcm(a, b);
    CHECK(modulus_divides(a, l));
    CHECK(modulus_divides(b, l));
    CHECK(l.norm == 4 * 9);
    auto divs = modulus_divisors(l);
    for (auto& dm : divs) CHECK(modulus_divides(dm, l));
    CHECK(divs.front().is_one());
}
