#include "doctest.h"
#include "hecke/heckechar.hpp"
#include "tsupport.hpp"

using namespace hecke;
using tsupport::Rng;

namespace {

std::vector<HeckeCharacter> fixture_characters() {
    return {tsupport::cm_character(), tsupport::legendre_character(), tsupport::norm_character()};
}

}  // namespace

TEST_CASE("hecke: evaluation does not depend on the chosen generator") {
    Rng rng(301);
    for (auto& chi : fixture_characters()) {
        std::vector<FE> ugens{chi.K->units.torsion_generator};
        for (auto& fu : chi.K->units.fundamental_units) ugens.push_back(fu);
        for (int t = 0; t < 100; t++) {
            FE g = tsupport::random_coprime_element(chi.K, *chi.G, rng, 25);
            FE v = chi.eval(g);
            for (auto& u : ugens) CHECK(chi.eval(chi.K->mul(u, g)) == v);
        }
    }
}

TEST_CASE("hecke: evaluation is multiplicative") {
    Rng rng(302);
    long pairs = 0;
    for (auto& chi : fixture_characters()) {
        for (int t = 0; t < 334; t++) {
            FE a = tsupport::random_coprime_element(chi.K, *chi.G, rng, 25);
            FE b = tsupport::random_coprime_element(chi.K, *chi.G, rng, 25);
            CHECK(chi.eval(chi.K->mul(a, b)) == chi.L->mul(chi.eval(a), chi.eval(b)));
            pairs++;
        }
    }
    CHECK(pairs >= 1000);
}

TEST_CASE("hecke: unit compatibility violations are rejected with the unit named") {
    auto K = field_by_label("gaussian");
    auto emb = catalog_embedding(K, K);
    Modulus m = make_modulus(K, K->pow(tsupport::fel(K, {1, 1}), 3));
    auto G = std::make_shared<const RayResidueGroup>(residue_group(K, m));
    // infinity type (1,0) needs eps(i) = i^3; the trivial finite part fails
    CHECK_THROWS_AS(hecke_create(K, K, emb, m, InfinityType{{Int(1), Int(0)}},
                                 trivial_character(G)),
                    std::invalid_argument);
    try {
        hecke_create(K, K, emb, m, InfinityType{{Int(1), Int(0)}}, trivial_character(G));
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("unit") != std::string::npos);
    }
}

TEST_CASE("hecke: table reduction matches direct reduction at every place") {
    // two routes: reduce chi's exact value at r, or evaluate the mod-place
    // table built on ray class generators; exact equality at every pair
    auto chi = tsupport::cm_character();
    auto L = chi.L;
    long pairs = 0;
    for (Int p(3); p < 300; mpz_nextprime(p.get_mpz_t(), p.get_mpz_t())) {
        if (chi.m.norm % p == 0) continue;
        for (auto& place : factor_rational_prime(L, p)) {
            if (place.e > 1) continue;
            ModPCharacter rho = reduce_mod_place(chi, place);
            for (Int q(2); q < 120; mpz_nextprime(q.get_mpz_t(), q.get_mpz_t())) {
                if (q == p || chi.m.norm % q == 0) continue;
                for (auto& r : factor_rational_prime(chi.K, q)) {
                    CHECK(rho.eval_prime(r) == rho.Fq.reduce(chi.eval_prime(r)));
                    pairs++;
                }
            }
            break;  // one place per residue characteristic keeps this quick
        }
    }
    CHECK(pairs >= 1000);
}

TEST_CASE("hecke: mod-place tables have order prime to p") {
    auto chi = tsupport::cm_character();
    for (Int p(3); p < 40; mpz_nextprime(p.get_mpz_t(), p.get_mpz_t())) {
        if (chi.m.norm % p == 0) continue;
        auto place = factor_rational_prime(chi.L, p)[0];
        ModPCharacter rho = reduce_mod_place(chi, place);
        Int go = rho.Fq.group_order();
        std::vector<std::pair<Int, int>> gf;
        for (auto& [f, e] : factor_u64(go.get_ui())) gf.push_back({Int(f), e});
        for (auto& v : rho.table) {
            Int ord = fq_element_order(rho.Fq, v, gf);
            CHECK(gcd(ord, p) == 1);
        }
    }
}

TEST_CASE("hecke: CM values count points on y^2 = x^3 - x") {
    auto chi = tsupport::cm_character();
    auto K = chi.K;
    int checked = 0;
    for (long p : {5L, 13L, 17L, 29L, 37L}) {
        auto facs = factor_rational_prime(K, Int(p));
        REQUIRE(facs.size() == 2);
        Rat tr = K->trace(chi.eval_prime(facs[0]));
        REQUIRE(tr.get_den() == 1);
        long ap = p + 1 - tsupport::ec_point_count(p);
        CHECK(tr.get_num() == ap);
        CHECK(K->trace(chi.eval_prime(facs[1])) == Rat(ap));
        checked++;
    }
    CHECK(checked == 5);
    // the two named spot values
    CHECK(K->trace(chi.eval_prime(factor_rational_prime(K, Int(5))[0])) == Rat(-2));
    CHECK(K->trace(chi.eval_prime(factor_rational_prime(K, Int(13))[0])) == Rat(6));
}

TEST_CASE("hecke: conductor restriction preserves values") {
    Rng rng(303);
    // legendre character on an inflated modulus restricts back to (5) with oo
    auto leg = tsupport::legendre_character();
    auto Q = leg.K;
    Modulus big = make_modulus(Q, Q->from_rat(Rat(15)), {0});
    auto Gbig = std::make_shared<const RayResidueGroup>(residue_group(Q, big));
    auto lifted = hecke_create(Q, leg.L, leg.emb, big, leg.ntype, pullback_finite(leg.eps, Gbig));
    HeckeCharacter back = restrict_to_conductor(lifted);
    CHECK(back.m.norm == 5);
    for (int t = 0; t < 50; t++) {
        FE g = tsupport::random_coprime_element(Q, *Gbig, rng, 60);
        CHECK(back.eval(g) == leg.eval(g));
    }
}

TEST_CASE("hecke: products multiply values and lcm the moduli") {
    Rng rng(304);
    auto cm = tsupport::cm_character();
    auto nrm = tsupport::norm_character();
    HeckeCharacter prod = character_product(cm, nrm);
    CHECK(modulus_equal(prod.m, modulus_lcm(cm.m, nrm.m)));
    for (int t = 0; t < 60; t++) {
        FE g = tsupport::random_coprime_element(cm.K, *prod.G, rng, 25);
        CHECK(prod.eval(g) == prod.L->mul(cm.eval(g), nrm.eval(g)));
    }
}
