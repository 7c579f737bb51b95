#include "hecke/jsonio.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace hecke {

namespace {

using json = nlohmann::ordered_json;

json rat_j(const Rat& q) { return q.get_str(); }

Rat rat_parse(const json& j) {
    if (j.is_number_integer()) return Rat(j.get<long>());
    Rat q(j.get<std::string>());
    q.canonicalize();
    return q;
}

json int_j(const Int& n) {
    if (n.fits_slong_p()) return n.get_si();
    return n.get_str();
}

Int int_parse(const json& j) {
    if (j.is_number_integer()) return Int(j.get<long>());
    return Int(j.get<std::string>());
}

json fe_j(const FE& x) {
    json a = json::array();
    for (auto& c : x) a.push_back(rat_j(c));
    return a;
}

FE fe_parse(const NFPtr& F, const json& j) {
    FE x;
    for (auto& c : j) x.push_back(rat_parse(c));
    if (long(x.size()) != F->deg)
        throw std::runtime_error("coordinate length does not match the field degree");
    return x;
}

json character_json(const HeckeCharacter& chi) {
    json j;
    j["base_field_label"] = chi.K->label;
    j["value_field_label"] = chi.L->label;
    j["embedding"] = fe_j(chi.emb.theta_image);
    j["modulus"] = {{"gen", fe_j(chi.m.gen)}, {"real_places", chi.m.real_places}};
    json nt = json::array();
    for (auto& n : chi.ntype.n) nt.push_back(int_j(n));
    j["infinity_type"] = nt;
    json fp;
    json dv = json::array();
    for (auto& d : chi.G->divisors()) dv.push_back(int_j(d));
    fp["group_divisors"] = dv;
    json reps = json::array();
    for (auto& c : chi.G->gen_reps)
        reps.push_back({{"residue", fe_j(c.residue)}, {"signs", c.signs}});
    fp["generator_reps"] = reps;
    json vals = json::array();
    for (auto& k : chi.eps.k) vals.push_back(int_j(k));
    fp["values"] = vals;
    j["finite_part"] = fp;
    return j;
}

HeckeCharacter character_from_json(const json& j) {
    auto K = field_by_label(j.at("base_field_label").get<std::string>());
    auto L = field_by_label(j.at("value_field_label").get<std::string>());
    FieldEmbedding emb = make_embedding(K, L, fe_parse(L, j.at("embedding")));
    FE gen = fe_parse(K, j.at("modulus").at("gen"));
    auto rp = j.at("modulus").at("real_places").get<std::vector<int>>();
    Modulus m = make_modulus(K, gen, rp);
    InfinityType nt;
    for (auto& x : j.at("infinity_type")) nt.n.push_back(int_parse(x));
    auto G = std::make_shared<const RayResidueGroup>(residue_group(K, m));
    const json& fp = j.at("finite_part");
    std::vector<Int> dv;
    for (auto& d : fp.at("group_divisors")) dv.push_back(int_parse(d));
    if (dv != G->divisors())
        throw std::runtime_error("finite part group does not match the rebuilt residue group");
    const json& reps = fp.at("generator_reps");
    if (reps.size() != G->gen_reps.size())
        throw std::runtime_error("generator count does not match the rebuilt residue group");
    for (size_t i = 0; i < G->gen_reps.size(); i++) {
        FE res = fe_parse(K, reps[i].at("residue"));
        auto signs = reps[i].at("signs").get<std::vector<int>>();
        if (res != G->gen_reps[i].residue || signs != G->gen_reps[i].signs)
            throw std::runtime_error("generator representatives do not match the rebuilt group");
    }
    std::vector<Int> k;
    for (auto& v : fp.at("values")) k.push_back(int_parse(v));
    if (k.size() != G->divisors().size())
        throw std::runtime_error("finite part value count mismatch");
    for (size_t i = 0; i < k.size(); i++)
        if (k[i] < 0 || k[i] >= G->divisors()[i])
            throw std::runtime_error("finite part value out of range");
    return hecke_create(K, L, emb, m, nt, FiniteCharacter{G, k});
}

json system_json(const CompatibleSystem& sys) {
    json j;
    j["version"] = 1;
    j["base_field_label"] = sys.K->label;
    j["value_field_label"] = sys.L->label;
    j["dimension"] = sys.dim;
    json S = json::array();
    for (auto& P : sys.S) S.push_back(fe_j(P.gen));
    j["ramification_set"] = S;
    json T = json::array();
    for (auto& P : sys.T) T.push_back(fe_j(P.gen));
    j["defect_set"] = T;
    json fd = json::array();
    for (auto& e : sys.frob) {
        json poly = json::array();
        for (auto& c : e.poly) poly.push_back(fe_j(c));
        fd.push_back({{"prime", fe_j(e.r.gen)}, {"residue_char", int_j(e.r.p)}, {"poly", poly}});
    }
    j["frobenius_data"] = fd;
    return j;
}

CompatibleSystem system_from_json(const json& j) {
    if (j.at("version").get<int>() != 1) throw std::runtime_error("unsupported file version");
    CompatibleSystem sys;
    sys.K = field_by_label(j.at("base_field_label").get<std::string>());
    sys.L = field_by_label(j.at("value_field_label").get<std::string>());
    sys.dim = j.at("dimension").get<int>();
    if (sys.dim < 1) throw std::runtime_error("dimension must be positive");
    for (auto& x : j.at("ramification_set"))
        sys.S.push_back(prime_from_coords(sys.K, fe_parse(sys.K, x)));
    for (auto& x : j.at("defect_set"))
        sys.T.push_back(prime_from_coords(sys.L, fe_parse(sys.L, x)));
    for (auto& e : j.at("frobenius_data")) {
        FrobeniusEntry fe;
        fe.r = prime_from_coords(sys.K, fe_parse(sys.K, e.at("prime")));
        if (int_parse(e.at("residue_char")) != fe.r.p)
            throw std::runtime_error("residue characteristic mismatch at " + fe.r.str());
        for (auto& c : e.at("poly")) fe.poly.push_back(fe_parse(sys.L, c));
        if (long(fe.poly.size()) != sys.dim + 1)
            throw std::runtime_error("polynomial degree mismatch at " + fe.r.str());
        if (fe.poly.back() != sys.L->one())
            throw std::runtime_error("non-monic polynomial at " + fe.r.str());
        sys.frob.push_back(std::move(fe));
    }
    std::sort(sys.frob.begin(), sys.frob.end(), [](const FrobeniusEntry& a, const FrobeniusEntry& b) {
        return a.r.p != b.r.p ? a.r.p < b.r.p : a.r.str() < b.r.str();
    });
    return sys;
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << body;
}

json read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw std::runtime_error("malformed JSON in " + path + ": " + e.what());
    }
}

}  // namespace

std::string character_dump(const HeckeCharacter& chi) { return character_json(chi).dump(2) + "\n"; }

std::string system_dump(const CompatibleSystem& sys) { return system_json(sys).dump(2) + "\n"; }

void character_save(const HeckeCharacter& chi, const std::string& path) {
    write_file(path, character_dump(chi));
}

HeckeCharacter character_load(const std::string& path) {
    try {
        return character_from_json(read_file(path));
    } catch (const json::exception& e) {
        throw std::runtime_error("malformed character file " + path + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error("malformed character file " + path + ": " + e.what());
    }
}

void system_save(const CompatibleSystem& sys, const std::string& path) {
    write_file(path, system_dump(sys));
}

CompatibleSystem system_load(const std::string& path) {
    try {
        return system_from_json(read_file(path));
    } catch (const json::exception& e) {
        throw std::runtime_error("malformed system file " + path + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error("malformed system file " + path + ": " + e.what());
    }
}

PrimeIdeal prime_from_coords(const NFPtr& F, const FE& gen) {
    Rat nm = F->norm(gen);
    if (nm.get_den() != 1) throw std::runtime_error("prime generator is not integral");
    Int n = abs(nm.get_num());
    if (n <= 1) throw std::runtime_error("prime generator has unit norm");
    auto fac = factor_int(n);
    if (fac.size() != 1)
        throw std::runtime_error("stored generator does not generate a prime ideal");
    const Int& p = fac[0].first;
    for (auto& P : factor_rational_prime(F, p))
        if (P.norm() == n && valuation(P, gen) > 0) return P;
    throw std::runtime_error("stored generator matches no prime above " + p.get_str());
}

FE parse_element(const NFPtr& F, const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw std::runtime_error("empty element literal");
    FE out = F->zero();
    size_t i = 0;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+') {
            i++;
        } else if (s[i] == '-') {
            sign = -1;
            i++;
        }
        size_t j = i;
        while (j < s.size() && s[j] != '+' && s[j] != '-') j++;
        std::string term = s.substr(i, j - i);
        if (term.empty()) throw std::runtime_error("bad element literal: " + text);
        size_t vp = term.find_first_of("ti");
        Rat coef(1);
        long power = 0;
        try {
            if (vp == std::string::npos) {
                coef = Rat(term);
            } else {
                if (term[vp] == 'i' && F->label != "gaussian")
                    throw std::runtime_error("'i' names the generator of the gaussian field only");
                std::string c = term.substr(0, vp);
                if (!c.empty() && c.back() == '*') c.pop_back();
                if (!c.empty()) coef = Rat(c);
                power = 1;
                std::string rest = term.substr(vp + 1);
                if (!rest.empty()) {
                    if (rest[0] != '^') throw std::runtime_error("expected '^' after the generator");
                    power = std::stol(rest.substr(1));
                }
            }
        } catch (const std::invalid_argument&) {
            throw std::runtime_error("bad element literal: " + text);
        }
        coef.canonicalize();
        if (power < 0 || power >= F->deg)
            throw std::runtime_error("generator power out of range in: " + text);
        out[power] += sign * coef;
        i = j;
    }
    return out;
}

}  // namespace hecke
