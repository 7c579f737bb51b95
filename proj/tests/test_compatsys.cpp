#include "doctest.h"
#include "hecke/compatsys.hpp"
#include "hecke/jsonio.hpp"
#include "tsupport.hpp"

using namespace hecke;

TEST_CASE("compatsys: generated systems verify against the ray-class tables") {
    for (auto& chi : {tsupport::cm_character(), tsupport::legendre_character(),
                      tsupport::norm_character()}) {
        auto sys = system_from_characters({chi}, 80);
        auto rep = verify_strict(sys, 60, 60);
        CHECK(rep.pairs_checked >= 100);
        CHECK(rep.failures.empty());
        CHECK(!rep.unverifiable);
        CHECK(rep.pass());
    }
}

TEST_CASE("compatsys: dimension-two constant terms form the product-character system") {
    auto cm = tsupport::cm_character();
    auto nrm = tsupport::norm_character();
    auto L = cm.L;
    auto sys2 = system_from_characters({cm, nrm}, 80);
    CHECK(sys2.dim == 2);
    HeckeCharacter prod = character_product(cm, nrm);
    auto sysp = system_from_characters({prod}, 80);
    long matched = 0;
    for (auto& e : sys2.frob) {
        const FrobeniusEntry* ep = sysp.entry_at(e.r);
        if (!ep) continue;
        // (-1)^2 f_r(0) = product of the two roots = value of the product character
        CHECK(e.poly[0] == L->neg(ep->poly[0]));
        CHECK(e.poly.size() == 3);
        CHECK(e.poly[2] == L->one());
        matched++;
    }
    CHECK(matched >= 20);
}

TEST_CASE("compatsys: purity weight matches the infinity-type weight") {
    auto cm = system_from_characters({tsupport::cm_character()}, 80);
    auto pv = check_purity(cm);
    CHECK(pv.pass);
    CHECK(pv.t == Rat(1, 2));
    CHECK(pv.max_dev < 1e-6);

    auto nrm = system_from_characters({tsupport::norm_character()}, 80);
    auto pvn = check_purity(nrm);
    CHECK(pvn.pass);
    CHECK(pvn.t == Rat(1));

    auto leg = system_from_characters({tsupport::legendre_character()}, 80);
    auto pvl = check_purity(leg);
    CHECK(pvl.pass);
    CHECK(pvl.t == Rat(0));
}

TEST_CASE("compatsys: conductor recovery is stable and exact") {
    auto chi = tsupport::cm_character();
    auto sys = system_from_characters({chi}, 80);
    auto cv = check_bounded_conductor(sys, 6);
    CHECK(cv.stable);
    CHECK(modulus_equal(cv.value, chi.m));
    for (auto& [place, m] : cv.samples) CHECK(modulus_equal(m, chi.m));

    auto leg = tsupport::legendre_character();
    auto cvl = check_bounded_conductor(system_from_characters({leg}, 80), 6);
    CHECK(cvl.stable);
    CHECK(cvl.value.norm == 5);
    CHECK(cvl.value.real_places.empty());
}

TEST_CASE("compatsys: integrality and norm-twist exponents") {
    auto cm = system_from_characters({tsupport::cm_character()}, 60);
    auto iv = check_integrality(cm);
    CHECK(iv.pass);
    CHECK(iv.m == 0);

    auto K = field_by_label("gaussian");
    Modulus m1 = make_modulus(K, K->one());
    auto G1 = std::make_shared<const RayResidueGroup>(residue_group(K, m1));
    auto inv_norm = hecke_create(K, K, catalog_embedding(K, K), m1,
                                 InfinityType{{Int(-1), Int(-1)}}, trivial_character(G1));
    auto ivn = check_integrality(system_from_characters({inv_norm}, 60));
    CHECK(ivn.pass);
    CHECK(ivn.m == 1);
}

TEST_CASE("compatsys: finite-order images are flagged stable and growth is not") {
    auto leg = system_from_characters({tsupport::legendre_character()}, 80);
    auto avl = detect_artin(leg, 8);
    CHECK(avl.stable);
    CHECK(avl.order == 2);

    auto cm = system_from_characters({tsupport::cm_character()}, 80);
    auto avc = detect_artin(cm, 6);
    CHECK(!avc.stable);
    // image orders grow with the place norm in the non-finite-order case
    Int mx(0);
    for (auto& [place, o] : avc.samples) mx = std::max(mx, o);
    CHECK(mx > 4);
}

TEST_CASE("compatsys: defect sets cover conductor characteristics and torsion collisions") {
    auto chi = tsupport::cm_character();
    auto sys = system_from_characters({chi}, 60);
    REQUIRE(!sys.S.empty());
    for (auto& P : sys.S) CHECK(chi.m.norm % P.p == 0);
    // every place above 2 collides i with -i and must be excluded
    bool has2 = false;
    for (auto& pl : sys.T)
        if (pl.p == 2) has2 = true;
    CHECK(has2);
    CHECK(torsion_separation_bound(chi.L) == 4);
}

TEST_CASE("compatsys: weak verification skips the conductor-support check") {
    auto sys = system_from_characters({tsupport::cm_character()}, 60);
    auto weak = verify_strict(sys, 40, 40, true);
    CHECK(weak.weak);
    CHECK(weak.pass());
    // a corrupted coefficient fails in both modes with a witness naming the pair
    auto bad = sys;
    for (auto& e : bad.frob)
        if (e.r.p == 13) e.poly[0] = bad.L->add(e.poly[0], bad.L->one());
    auto repb = verify_strict(bad, 40, 40);
    CHECK(!repb.failures.empty());
    CHECK(repb.failures[0].find("13") != std::string::npos);
}

TEST_CASE("compatsys: extend keeps entries sorted and deduplicated") {
    auto sys = system_from_characters({tsupport::cm_character()}, 40);
    size_t before = sys.frob.size();
    extend_frobenius(sys, 80);
    CHECK(sys.frob.size() > before);
    extend_frobenius(sys, 80);
    for (size_t i = 1; i < sys.frob.size(); i++) {
        CHECK(!(sys.frob[i].r == sys.frob[i - 1].r));
        CHECK(sys.frob[i - 1].r.p <= sys.frob[i].r.p);
    }
    std::string d1 = system_dump(sys);
    extend_frobenius(sys, 80);
    CHECK(system_dump(sys) == d1);
}
