#include "doctest.h"
#include "hecke/multdep.hpp"
#include "tsupport.hpp"

using namespace hecke;
using tsupport::Rng;

namespace {

// element with small support, friendly to exact factorization
FE smooth_element(const NFPtr& F, Rng& rng) {
    std::vector<FE> atoms;
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L})
        for (auto& P : factor_rational_prime(F, Int(p))) atoms.push_back(P.gen);
    FE x = F->pow(F->units.torsion_generator, rng.below(F->units.torsion_order));
    for (auto& u : F->units.fundamental_units) x = F->mul(x, F->pow(u, rng.range(-2, 2)));
    int parts = int(rng.range(1, 3));
    for (int i = 0; i < parts; i++) {
        long e = rng.range(-2, 2);
        if (e != 0) x = F->mul(x, F->pow(rng.pick(atoms), e));
    }
    if (F->is_zero(x)) x = F->one();
    return x;
}

struct Instance {
    FE c;
    std::vector<FE> a;
    bool planted;
};

Instance random_instance(const NFPtr& F, Rng& rng) {
    Instance ins;
    int na = int(rng.range(1, 3));
    for (int i = 0; i < na; i++) ins.a.push_back(smooth_element(F, rng));
    ins.planted = rng.coin();
    if (ins.planted) {
        FE c = F->pow(F->units.torsion_generator, rng.below(F->units.torsion_order));
        for (auto& ai : ins.a) c = F->mul(c, F->pow(ai, rng.range(-2, 2)));
        ins.c = c;
    } else {
        ins.c = smooth_element(F, rng);
    }
    return ins;
}

}  // namespace

TEST_CASE("multdep: s-unit factorizations reassemble exactly") {
    Rng rng(401);
    long done = 0;
    while (done < 1000) {
        for (auto& label : tsupport::catalog_labels()) {
            auto F = field_by_label(label);
            FE x = smooth_element(F, rng);
            SUnitFactorization fac = sunit_factor(F, x);
            FE y = F->pow(F->units.torsion_generator, fac.torsion_exp);
            for (size_t j = 0; j < fac.unit_exponents.size(); j++)
                y = F->mul(y, F->pow(F->units.fundamental_units[j], ilong(fac.unit_exponents[j])));
            for (size_t i = 0; i < fac.support.size(); i++)
                y = F->mul(y, F->pow(fac.support[i].gen, ilong(fac.exponents[i])));
            CHECK(y == x);
            done++;
        }
    }
}

TEST_CASE("multdep: exact relations hold locally at small primes") {
    // when c^t = zeta * prod a_i^{m_i} exactly, the local order t_q of c
    // modulo <a_i> divides t * w, and divides t itself whenever zeta = 1
    Rng rng(402);
    int with_relation = 0;
    for (auto& label : tsupport::catalog_labels()) {
        auto F = field_by_label(label);
        long w = F->units.torsion_order;
        for (int t = 0; t < 12; t++) {
            Instance ins = random_instance(F, rng);
            auto rel = mult_relation(F, ins.c, ins.a);
            if (!rel) continue;
            with_relation++;
            // verify the relation itself, exactly
            FE lhs = F->pow(ins.c, ilong(rel->t));
            FE rhs = rel->zeta;
            for (size_t i = 0; i < ins.a.size(); i++)
                rhs = F->mul(rhs, F->pow(ins.a[i], ilong(rel->m[i])));
            CHECK(lhs == rhs);
            bool zeta_one = rel->zeta == F->one();
            ProbeReport rep = local_probe(F, ins.c, ins.a, Int(10000));
            for (auto& [q, tq] : rep.t_values) {
                CHECK(rel->t * w % tq == 0);
                if (zeta_one) CHECK(rel->t % tq == 0);
            }
        }
    }
    CHECK(with_relation >= 50);
}

TEST_CASE("multdep: returned relations are normalized") {
    Rng rng(403);
    for (auto& label : tsupport::catalog_labels()) {
        auto F = field_by_label(label);
        for (int t = 0; t < 12; t++) {
            Instance ins = random_instance(F, rng);
            auto rel = mult_relation(F, ins.c, ins.a);
            if (!rel) continue;
            CHECK(rel->t >= 1);
            // t always divides into the exponent vector only at t = 1
            if (rel->t > 1) {
                bool all_divisible = true;
                for (auto& mi : rel->m)
                    if (mi % rel->t != 0) all_divisible = false;
                CHECK(!all_divisible);
            }
            CHECK(F->is_torsion_unit(rel->zeta));
        }
    }
}

TEST_CASE("multdep: forbidden prime is honored") {
    Rng rng(404);
    for (auto& label : {"rationals", "gaussian", "cyclotomic8"}) {
        auto F = field_by_label(label);
        for (int t = 0; t < 15; t++) {
            Instance ins = random_instance(F, rng);
            for (Int ell : {Int(2), Int(3)}) {
                auto rel = mult_relation(F, ins.c, ins.a, ell);
                if (rel) CHECK(rel->t % ell != 0);
            }
        }
    }
}

TEST_CASE("multdep: fixture relations and witnesses") {
    auto Q = field_by_label("rationals");
    auto rel = mult_relation(Q, Q->from_rat(Rat(8)), {Q->from_rat(Rat(2))});
    REQUIRE(rel.has_value());
    CHECK(rel->t == 1);
    CHECK(rel->m == ZVec{Int(3)});
    CHECK(rel->zeta == Q->one());

    auto K = field_by_label("gaussian");
    auto relg = mult_relation(K, tsupport::fel(K, {-1, 2}),
                              {tsupport::fel(K, {2, 1}), tsupport::fel(K, {2, -1})});
    REQUIRE(relg.has_value());
    CHECK(relg->t == 1);
    CHECK(relg->m == ZVec{Int(1), Int(0)});
    CHECK(relg->zeta == K->theta());

    auto none = mult_relation(Q, Q->from_rat(Rat(3)), {Q->from_rat(Rat(2))});
    CHECK(!none.has_value());
    auto wit = first_witness(Q, Q->from_rat(Rat(3)), {Q->from_rat(Rat(2))}, Int(0), Int(100000));
    REQUIRE(wit.has_value());
    CHECK(wit->p == 7);
}

TEST_CASE("multdep: local and exact verdicts agree on seeded instances") {
    Rng rng(405);
    for (auto& label : {"rationals", "gaussian", "sqrt5"}) {
        auto F = field_by_label(label);
        for (int t = 0; t < 20; t++) {
            Instance ins = random_instance(F, rng);
            auto rel = mult_relation(F, ins.c, ins.a);
            auto wit = first_witness(F, ins.c, ins.a, Int(0), Int(rel ? 2000 : 100000));
            if (rel) {
                CHECK(!wit.has_value());
            } else {
                CHECK(wit.has_value());
            }
            if (ins.planted) CHECK(rel.has_value());
        }
    }
}
