#include "doctest.h"
#include "hecke/field.hpp"
#include "hecke/primeideal.hpp"
#include "tsupport.hpp"

using namespace hecke;
using tsupport::Rng;

TEST_CASE("field: automorphisms compose through the composition table") {
    Rng rng(101);
    for (auto& label : tsupport::catalog_labels()) {
        auto F = field_by_label(label);
        for (int trial = 0; trial < 20; trial++) {
            FE x = tsupport::random_element(F, rng, 9);
            for (size_t a = 0; a < F->autos.size(); a++)
                for (size_t b = 0; b < F->autos.size(); b++)
                    CHECK(F->apply_auto(F->apply_auto(x, b), a) ==
                          F->apply_auto(x, F->comp[a][b]));
        }
        // inverses really invert
        for (size_t a = 0; a < F->autos.size(); a++) CHECK(F->comp[a][F->inverse_auto[a]] == 0);
    }
}

TEST_CASE("field: norm is multiplicative and trace additive on random pairs") {
    Rng rng(102);
    long pairs = 0;
    while (pairs < 1000) {
        for (auto& label : tsupport::catalog_labels()) {
            auto F = field_by_label(label);
            FE a = tsupport::random_element(F, rng, 30);
            FE b = tsupport::random_element(F, rng, 30);
            CHECK(F->norm(F->mul(a, b)) == F->norm(a) * F->norm(b));
            CHECK(F->trace(F->add(a, b)) == F->trace(a) + F->trace(b));
            pairs++;
        }
    }
}

TEST_CASE("field: split primes have distinct residues and recover p up to a unit") {
    for (auto& label : tsupport::catalog_labels()) {
        auto F = field_by_label(label);
        int seen = 0;
        for (long p : {5L, 13L, 17L, 29L, 37L, 41L, 53L, 61L, 73L, 89L, 97L}) {
            auto facs = factor_rational_prime(F, Int(p));
            if (long(facs.size()) != F->deg) continue;
            seen++;
            std::set<uint64_t> theta_reductions;
            FE prod = F->one();
            for (auto& P : facs) {
                CHECK(P.f == 1);
                FqField Fq = residue_field(P);
                auto th = Fq.reduce(F->theta());
                REQUIRE(th.size() == 1);
                theta_reductions.insert(th[0]);
                prod = F->mul(prod, P.gen);
            }
            CHECK(theta_reductions.size() == facs.size());
            FE q = F->div(prod, F->from_rat(Rat(p)));
            CHECK(F->is_integral(q));
            Rat n = F->norm(q);
            CHECK((n == 1 || n == -1));
            if (seen >= 3) break;
        }
        CHECK(seen >= 1);
    }
}

TEST_CASE("field: residue reduction is a ring homomorphism") {
    Rng rng(103);
    long pairs = 0;
    for (auto& label : tsupport::catalog_labels()) {
        auto F = field_by_label(label);
        for (long p : {7L, 11L, 13L}) {
            auto facs = factor_rational_prime(F, Int(p));
            FqField Fq = residue_field(facs[0]);
            for (int t = 0; t < 40; t++) {
                FE a = tsupport::random_element(F, rng, 50);
                FE b = tsupport::random_element(F, rng, 50);
                CHECK(Fq.reduce(F->add(a, b)) == Fq.add(Fq.reduce(a), Fq.reduce(b)));
                CHECK(Fq.reduce(F->mul(a, b)) == Fq.mul(Fq.reduce(a), Fq.reduce(b)));
                pairs++;
            }
        }
    }
    CHECK(pairs >= 1000);
}

TEST_CASE("field: discrete log inverts exponentiation") {
    Rng rng(104);
    for (auto& label : {"gaussian", "eisenstein", "cyclotomic8"}) {
        auto F = field_by_label(label);
        for (long p : {7L, 13L, 31L}) {
            auto facs = factor_rational_prime(F, Int(p));
            FqField Fq = residue_field(facs[0]);
            Int go = Fq.group_order();
            std::vector<std::pair<Int, int>> gf;
            for (auto& [q, e] : factor_u64(uint64_t(go.get_ui()))) gf.push_back({Int(q), e});
            FE raw = tsupport::random_element(F, rng, 40);
            auto b = Fq.reduce(raw);
            if (Fq.is_zero(b)) continue;
            Int ord = fq_element_order(Fq, b, gf);
            for (int t = 0; t < 10; t++) {
                Int k(rng.below(1000));
                auto target = Fq.pow(b, k);
                auto dl = fq_dlog(Fq, b, target, ord);
                REQUIRE(dl.has_value());
                CHECK((*dl - k) % ord == 0);
            }
        }
    }
}

TEST_CASE("field: unit data has unit norms and exact torsion order") {
    for (auto& label : tsupport::catalog_labels()) {
        auto F = field_by_label(label);
        long w = F->units.torsion_order;
        FE g = F->units.torsion_generator;
        FE acc = F->one();
        for (long k = 1; k < w; k++) {
            acc = F->mul(acc, g);
            CHECK(acc != F->one());
        }
        CHECK(F->mul(acc, g) == F->one());
        Rat n = F->norm(g);
        CHECK((n == 1 || n == -1));
        for (auto& u : F->units.fundamental_units) {
            Rat nu = F->norm(u);
            CHECK((nu == 1 || nu == -1));
            CHECK(!F->is_torsion_unit(u));
        }
    }
}

TEST_CASE("field: canonical associates are stable under unit multiplication") {
    Rng rng(105);
    for (auto& label : {"gaussian", "sqrt2", "cyclotomic12"}) {
        auto F = field_by_label(label);
        for (int t = 0; t < 25; t++) {
            FE a = tsupport::random_element(F, rng, 8);
            FE c = canonical_associate(F, a);
            FE ua = F->mul(a, F->units.torsion_generator);
            if (!F->units.fundamental_units.empty() && rng.coin())
                ua = F->mul(ua, F->units.fundamental_units[0]);
            CHECK(canonical_associate(F, ua) == c);
        }
    }
}
