#include "doctest.h"
#include "hecke/reconstruct.hpp"
#include "tsupport.hpp"

using namespace hecke;

namespace {

CompatibleSystem data_only(CompatibleSystem sys) {
    sys.realization.clear();
    sys.conductor_hint.reset();
    return sys;
}

}  // namespace

TEST_CASE("reconstruct: named fixtures round trip") {
    auto cm = tsupport::cm_character();
    auto sys = system_from_characters({cm}, 100);
    auto res = reconstruct_character(sys);
    CHECK(modulus_equal(res.conductor, cm.m));
    CHECK(res.infinity_type == cm.ntype);
    CHECK(res.finite_part.k == cm.eps.k);
    CHECK(res.audit.size() >= 3);

    auto resf = reconstruct_character(data_only(sys));
    CHECK(modulus_equal(resf.conductor, cm.m));
    CHECK(resf.finite_part.k == cm.eps.k);

    auto leg = tsupport::legendre_character();
    auto resl = reconstruct_character(data_only(system_from_characters({leg}, 100)));
    CHECK(resl.conductor.norm == 5);
    CHECK(resl.infinity_type == leg.ntype);
    auto Q = leg.K;
    CHECK(resl.finite_part.eval_rat(Q->from_rat(Rat(2))) == Rat(1, 2));
    CHECK(resl.finite_part.eval_rat(Q->from_rat(Rat(4))) == Rat(0));
}

TEST_CASE("reconstruct: inferred exponents are independent of the forbidden prime") {
    auto cm = tsupport::cm_character();
    auto K = cm.K;
    auto emb = cm.emb;
    auto probes = choose_probe_primes(K, cm.L, cm.m, 3, 2000);
    for (auto& r : probes) {
        FE root = cm.eval(r.gamma);
        auto e1 = infer_exponents(emb, root, r, Int(3));
        auto e2 = infer_exponents(emb, root, r, Int(7));
        CHECK(e1.m == e2.m);
        CHECK(e1.zeta == e2.zeta);
    }
}

TEST_CASE("reconstruct: exponents agree across three probe primes") {
    for (auto& chi : {tsupport::cm_character(), tsupport::norm_character()}) {
        auto probes = choose_probe_primes(chi.K, chi.L, chi.m, 3, 5000);
        REQUIRE(probes.size() == 3);
        std::vector<ZVec> ms;
        for (auto& r : probes) {
            // distinct rational primes by construction
            for (auto& s : probes)
                if (&r != &s) CHECK(r.q != s.q);
            ms.push_back(infer_exponents(chi.emb, chi.eval(r.gamma), r, Int(3)).m);
        }
        CHECK(ms[0] == ms[1]);
        CHECK(ms[1] == ms[2]);
        for (size_t a = 0; a < chi.ntype.n.size(); a++) CHECK(ms[0][a] == chi.ntype.n[a]);
    }
}

TEST_CASE("reconstruct: audited torsion cofactors divide the unit bound") {
    auto cm = tsupport::cm_character();
    auto res = reconstruct_character(system_from_characters({cm}, 100));
    long w = cm.L->units.torsion_order;
    CHECK(res.torsion_order_bound >= 1);
    CHECK(Int(w) % res.torsion_order_bound == 0);
    for (auto& entry : res.audit) {
        CHECK(cm.L->pow(entry.relation.zeta, w) == cm.L->one());
        CHECK(entry.relation.t == 1);
        CHECK(entry.cross_primes.size() >= 2);
    }
}

TEST_CASE("reconstruct: conjugate probes permute the exponents") {
    auto cm = tsupport::cm_character();
    auto K = cm.K;
    auto L = cm.L;
    auto probes = choose_probe_primes(K, L, cm.m, 2, 2000);
    for (auto& r : probes) {
        auto base = infer_exponents(cm.emb, cm.eval(r.gamma), r, Int(3));
        std::vector<FE> sig;
        for (size_t a = 0; a < K->autos.size(); a++)
            sig.push_back(cm.emb.apply(K->apply_auto(r.gamma, a)));
        for (size_t s = 0; s < K->autos.size(); s++) {
            FE gs = K->apply_auto(r.gamma, s);
            PrimeIdeal Ps = r.P;
            bool found = false;
            for (auto& cand : factor_rational_prime(K, r.q))
                if (valuation(cand, gs) > 0) {
                    Ps = cand;
                    found = true;
                }
            REQUIRE(found);
            FE root_s = cm.eval(gs);
            // in its own conjugated basis the exponent vector is unchanged
            auto ed = infer_exponents(cm.emb, root_s, ProbePrime{gs, r.q, Ps}, Int(3));
            CHECK(ed.m == base.m);
            // against the original probe's signature it is permuted by sigma
            auto rel = mult_relation(L, root_s, sig, Int(3));
            REQUIRE(rel.has_value());
            CHECK(rel->t == 1);
            size_t sinv = K->inverse_auto[s];
            for (size_t c = 0; c < K->autos.size(); c++)
                CHECK(rel->m[c] == base.m[K->comp[c][sinv]]);
        }
    }
}

TEST_CASE("reconstruct: corrupted data is rejected with a witness") {
    auto cm = tsupport::cm_character();
    auto sys = data_only(system_from_characters({cm}, 100));
    auto adv = sys;
    for (auto& e : adv.frob)
        if (e.r.p == 13) e.poly[0] = adv.K->apply_auto(e.poly[0], 1);
    CHECK_THROWS_AS(reconstruct_character(adv), NotHeckeType);
    try {
        reconstruct_character(adv);
    } catch (const NotHeckeType& e) {
        CHECK(std::string(e.what()).find("13") != std::string::npos);
    }
}

TEST_CASE("reconstruct: declared splittings reconstruct componentwise") {
    auto cm = tsupport::cm_character();
    auto nrm = tsupport::norm_character();
    auto sys2 = system_from_characters({cm, nrm}, 60);
    auto parts = reconstruct_split(sys2);
    REQUIRE(parts.size() == 2);
    CHECK(modulus_equal(parts[0].conductor, cm.m));
    CHECK(parts[1].conductor.is_one());
    CHECK(parts[1].infinity_type == nrm.ntype);
    CHECK_THROWS_AS(reconstruct_character(sys2), std::invalid_argument);
    CHECK_THROWS_AS(reconstruct_split(data_only(sys2)), std::invalid_argument);
}

TEST_CASE("reconstruct: probe primes satisfy their congruence and sign conditions") {
    auto Q = field_by_label("rationals");
    auto L = field_by_label("gaussian");
    Modulus m5 = make_modulus(Q, Q->from_rat(Rat(5)), {0});
    auto probes = choose_probe_primes(Q, L, m5, 3, 1000);
    for (auto& r : probes) {
        CHECK(r.gamma[0].get_den() == 1);
        Int num = r.gamma[0].get_num();
        CHECK(num > 0);
        CHECK((num - 1) % 5 == 0);
        CHECK(num % r.q == 0);
    }
    // too few probes below the height bound is reported as insufficient data
    CHECK_THROWS_AS(choose_probe_primes(Q, L, m5, 50, 200), InsufficientData);
}
