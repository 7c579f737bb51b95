#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "hecke/jsonio.hpp"
#include "tsupport.hpp"

using namespace hecke;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("/tmp/hecke_test_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("jsonio: character files are byte-stable across save and load") {
    for (auto& chi : {tsupport::cm_character(), tsupport::legendre_character(),
                      tsupport::norm_character()}) {
        TempFile f("char.json");
        std::string d1 = character_dump(chi);
        character_save(chi, f.path);
        HeckeCharacter back = character_load(f.path);
        CHECK(character_dump(back) == d1);
        CHECK(modulus_equal(back.m, chi.m));
        CHECK(back.ntype == chi.ntype);
        CHECK(back.eps.k == chi.eps.k);
        CHECK(back.K->label == chi.K->label);
        CHECK(back.L->label == chi.L->label);
        character_save(back, f.path);
        std::ifstream in(f.path);
        std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        CHECK(bytes == d1);
    }
}

TEST_CASE("jsonio: system files are byte-stable and preserve every entry") {
    auto sys = system_from_characters({tsupport::cm_character()}, 80);
    TempFile f("sys.json");
    std::string d1 = system_dump(sys);
    system_save(sys, f.path);
    CompatibleSystem back = system_load(f.path);
    CHECK(system_dump(back) == d1);
    CHECK(!back.realized());
    CHECK(back.dim == sys.dim);
    REQUIRE(back.frob.size() == sys.frob.size());
    for (size_t i = 0; i < sys.frob.size(); i++) {
        CHECK(back.frob[i].r == sys.frob[i].r);
        CHECK(back.frob[i].poly == sys.frob[i].poly);
    }
    CHECK(back.S.size() == sys.S.size());
    CHECK(back.T.size() == sys.T.size());
}

TEST_CASE("jsonio: malformed files are rejected with diagnostics") {
    auto sys = system_from_characters({tsupport::cm_character()}, 40);
    std::string good = system_dump(sys);

    auto expect_reject = [](const std::string& text, const char* tag) {
        TempFile f(std::string("bad_") + tag + ".json");
        std::ofstream(f.path) << text;
        CHECK_THROWS_AS(system_load(f.path), std::runtime_error);
    };

    expect_reject(good.substr(0, good.size() / 2), "truncated");
    {
        std::string t = good;
        auto pos = t.find("\"version\": 1");
        REQUIRE(pos != std::string::npos);
        t.replace(pos, 12, "\"version\": 9");
        expect_reject(t, "version");
    }
    {
        std::string t = good;
        auto pos = t.find("\"gaussian\"");
        REQUIRE(pos != std::string::npos);
        t.replace(pos, 10, "\"martian0\"");
        expect_reject(t, "label");
    }
    {
        std::string t = good;
        auto pos = t.find("\"dimension\": 1");
        REQUIRE(pos != std::string::npos);
        t.replace(pos, 14, "\"dimension\": 2");
        expect_reject(t, "dimension");
    }
    expect_reject("{}", "empty");
    expect_reject("not json at all", "nonjson");
    CHECK_THROWS_AS(system_load("/tmp/hecke_no_such_file.json"), std::runtime_error);
}

TEST_CASE("jsonio: element literals parse against the field basis") {
    auto K = field_by_label("gaussian");
    CHECK(parse_element(K, "-1+2*t") == tsupport::fel(K, {-1, 2}));
    CHECK(parse_element(K, "2-i") == tsupport::fel(K, {2, -1}));
    CHECK(parse_element(K, "3/2")[0] == Rat(3, 2));
    CHECK(parse_element(K, "t") == K->theta());
    auto C8 = field_by_label("cyclotomic8");
    FE v = parse_element(C8, "t^3-t");
    CHECK(v[3] == 1);
    CHECK(v[1] == -1);
    CHECK_THROWS_AS(parse_element(C8, "i"), std::runtime_error);
    CHECK_THROWS_AS(parse_element(K, "t^5"), std::runtime_error);
    CHECK_THROWS_AS(parse_element(K, ""), std::runtime_error);
    CHECK_THROWS_AS(parse_element(K, "1++2"), std::runtime_error);
}

TEST_CASE("jsonio: primes rebuild from their generator coordinates") {
    for (auto& label : {"gaussian", "cyclotomic5"}) {
        auto F = field_by_label(label);
        for (long p : {5L, 7L, 11L, 13L}) {
            for (auto& P : factor_rational_prime(F, Int(p))) {
                PrimeIdeal back = prime_from_coords(F, P.gen);
                CHECK(back == P);
            }
        }
    }
    auto F = field_by_label("gaussian");
    CHECK_THROWS_AS(prime_from_coords(F, tsupport::fel(F, {4, 0})), std::runtime_error);
    CHECK_THROWS_AS(prime_from_coords(F, tsupport::fel(F, {3, 1})), std::runtime_error);
}
