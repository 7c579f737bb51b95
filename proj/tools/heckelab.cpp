// heckelab: batch front end for the hecke library.
//
// Exit codes: 0 pass, 1 verification failure, 2 usage or input error,
// 3 insufficient data, 4 not of Hecke type.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hecke/jsonio.hpp"
#include "hecke/multdep.hpp"
#include "hecke/reconstruct.hpp"
#include "json.hpp"

using namespace hecke;
using json = nlohmann::ordered_json;

namespace {

struct Global {
    unsigned long seed = 0;
    int jobs = 1;
    long bound_primes = 100;
    long bound_height = 20000;
    std::string format = "text";
};

json fe_json(const FE& x) {
    json a = json::array();
    for (auto& c : x) a.push_back(c.get_str());
    return a;
}

json modulus_json(const Modulus& m) {
    return {{"gen", fe_json(m.gen)}, {"real_places", m.real_places}};
}

void emit(const Global& gl, const json& j, const std::string& text) {
    if (gl.format == "json")
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

int cmd_field_info(const Global& gl, const std::string& label) {
    auto F = field_by_label(label);
    json j;
    j["label"] = F->label;
    j["degree"] = F->deg;
    j["signature"] = {F->r1, F->r2};
    j["disc"] = F->disc.get_str();
    j["torsion_order"] = F->units.torsion_order;
    j["torsion_generator"] = fe_json(F->units.torsion_generator);
    json fu = json::array();
    for (auto& u : F->units.fundamental_units) fu.push_back(fe_json(u));
    j["fundamental_units"] = fu;
    json facs;
    std::string ftext;
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
        json row = json::array();
        ftext += "  " + std::to_string(p) + " =";
        for (auto& P : factor_rational_prime(F, Int(p))) {
            row.push_back({{"gen", fe_json(P.gen)}, {"e", P.e}, {"f", P.f}});
            ftext += " (" + F->fe_str(P.gen) + ")[e=" + std::to_string(P.e) +
                     ",f=" + std::to_string(P.f) + "]";
        }
        facs[std::to_string(p)] = row;
        ftext += "\n";
    }
    j["sample_factorizations"] = facs;
    std::string t = "field " + F->label + "\n  degree " + std::to_string(F->deg) + ", signature (" +
                    std::to_string(F->r1) + "," + std::to_string(F->r2) + "), disc " +
                    F->disc.get_str() + "\n  torsion order " +
                    std::to_string(F->units.torsion_order) + ", generator " +
                    F->fe_str(F->units.torsion_generator) + "\n  fundamental units: ";
    if (F->units.fundamental_units.empty()) t += "(none)";
    for (auto& u : F->units.fundamental_units) t += F->fe_str(u) + "  ";
    t += "\nsample factorizations:\n" + ftext;
    emit(gl, j, t);
    return 0;
}

int cmd_char_make(const Global& gl, const std::string& base, const std::string& value,
                  const std::string& modulus_lit, const std::vector<int>& real_places,
                  const std::vector<long>& ntype, const std::vector<long>& eps_k,
                  const std::string& out) {
    auto K = field_by_label(base);
    auto L = field_by_label(value);
    Modulus m = make_modulus(K, parse_element(K, modulus_lit), real_places);
    auto G = std::make_shared<const RayResidueGroup>(residue_group(K, m));
    InfinityType nt;
    for (long n : ntype) nt.n.push_back(Int(n));
    std::vector<Int> k(G->divisors().size(), Int(0));
    if (!eps_k.empty()) {
        if (eps_k.size() != k.size())
            throw std::invalid_argument("expected " + std::to_string(k.size()) +
                                        " finite-part values for this modulus");
        for (size_t i = 0; i < k.size(); i++) {
            k[i] = Int(eps_k[i]) % G->divisors()[i];
            if (k[i] < 0) k[i] += G->divisors()[i];
        }
    }
    auto chi = hecke_create(K, L, catalog_embedding(K, L), m, nt, FiniteCharacter{G, k});
    character_save(chi, out);
    Modulus cond = conductor(chi);
    json j;
    j["written"] = out;
    j["modulus"] = modulus_json(m);
    j["conductor"] = modulus_json(cond);
    json dv = json::array();
    for (auto& d : G->divisors()) dv.push_back(d.get_str());
    j["group_divisors"] = dv;
    j["finite_order"] = chi.finite_order().get_str();
    emit(gl, j,
         "character written to " + out + "\n  residue group " + std::to_string(G->divisors().size()) +
             " generators, conductor " + cond.str() + ", finite order " +
             chi.finite_order().get_str() + "\n");
    return 0;
}

int cmd_system_gen(const Global& gl, const std::string& char_file, const std::string& out) {
    HeckeCharacter chi = character_load(char_file);
    CompatibleSystem sys = system_from_characters({chi}, Int(gl.bound_primes));
    system_save(sys, out);
    if (sys.frob.empty())
        std::cerr << "warning: empty frobenius table at prime bound " << gl.bound_primes << "\n";
    json j;
    j["written"] = out;
    j["entries"] = sys.frob.size();
    json S = json::array();
    for (auto& P : sys.S) S.push_back(P.str());
    j["ramification_set"] = S;
    json T = json::array();
    for (auto& P : sys.T) T.push_back(P.str());
    j["defect_set"] = T;
    std::string t = "system written to " + out + "\n  " + std::to_string(sys.frob.size()) +
                    " indexed primes up to " + std::to_string(gl.bound_primes) + "\n";
    emit(gl, j, t);
    return 0;
}

int cmd_verify(const Global& gl, const std::string& sys_file, const std::string& char_file,
               bool strict, bool weak, bool purity, bool cond_flag, bool integrality, bool artin) {
    CompatibleSystem sys = system_load(sys_file);
    if (!char_file.empty()) {
        HeckeCharacter chi = character_load(char_file);
        Int bound(gl.bound_primes);
        for (auto& e : sys.frob) bound = std::max(bound, e.r.p);
        CompatibleSystem regen = system_from_characters({chi}, bound);
        for (auto& e : sys.frob) {
            if (!chi.G->coprime(e.r.gen)) continue;
            const FrobeniusEntry* e2 = regen.entry_at(e.r);
            if (!e2 || e2->poly != e.poly) {
                std::cerr << "file disagrees with the declared character at " << e.r.str() << "\n";
                return 1;
            }
        }
        sys = std::move(regen);
    }
    if (!(strict || weak || purity || cond_flag || integrality || artin)) strict = true;

    json j;
    std::string t;
    int rc = 0;
    auto need_realization = [&](const char* what) {
        t += std::string(what) + ": needs a realization; data-only file (pass --char)\n";
        j[what] = "unavailable";
        rc = std::max(rc, 3);
    };

    if (strict || weak) {
        auto rep = verify_strict(sys, Int(gl.bound_primes), Int(gl.bound_primes), weak);
        json jr;
        jr["mode"] = weak ? "weak" : "strict";
        jr["pairs_checked"] = rep.pairs_checked;
        jr["failures"] = rep.failures;
        jr["degenerate"] = rep.degenerate;
        jr["unverifiable"] = rep.unverifiable;
        j["axioms"] = jr;
        if (rep.unverifiable) {
            t += "axioms: unverifiable; reconstruction-only mode\n";
            rc = std::max(rc, 3);
        } else if (!rep.pass()) {
            t += "axioms: FAIL\n";
            for (auto& f : rep.failures) t += "  " + f + "\n";
            rc = std::max(rc, 1);
        } else {
            t += "axioms: pass (" + std::to_string(rep.pairs_checked) + " pairs" +
                 (rep.degenerate ? ", degenerate" : "") + ")\n";
        }
    }
    if (cond_flag) {
        if (!sys.realized()) {
            need_realization("conductor");
        } else {
            auto cv = check_bounded_conductor(sys);
            json jc;
            jc["stable"] = cv.stable;
            jc["value"] = modulus_json(cv.value);
            json samples = json::array();
            for (auto& [pl, mm] : cv.samples) samples.push_back({{"place", pl.str()}, {"conductor", mm.str()}});
            jc["samples"] = samples;
            j["conductor"] = jc;
            t += std::string("conductor: ") + (cv.stable ? "stable " + cv.value.str() : "UNSTABLE") + "\n";
            if (!cv.stable) rc = std::max(rc, 1);
        }
    }
    if (purity) {
        auto pv = check_purity(sys);
        json jp;
        jp["pass"] = pv.pass;
        jp["t"] = pv.t.get_str();
        jp["max_dev"] = pv.max_dev;
        jp["note"] = pv.note;
        j["purity"] = jp;
        t += "purity: t = " + pv.t.get_str() + (pv.pass ? " pass" : " FAIL " + pv.note) + "\n";
        if (!pv.pass) rc = std::max(rc, 1);
    }
    if (integrality) {
        auto iv = check_integrality(sys);
        json ji;
        ji["pass"] = iv.pass;
        ji["m"] = iv.m;
        ji["note"] = iv.note;
        j["integrality"] = ji;
        t += "integrality: " + (iv.pass ? "pass (m = " + std::to_string(iv.m) + ")" : "FAIL " + iv.note) + "\n";
        if (!iv.pass) rc = std::max(rc, 1);
    }
    if (artin) {
        if (!sys.realized()) {
            need_realization("artin");
        } else {
            auto av = detect_artin(sys);
            json ja;
            ja["verdict"] = av.stable ? "artin-like" : "unbounded-trend";
            ja["order"] = av.order.get_str();
            json samples = json::array();
            for (auto& [pl, o] : av.samples) samples.push_back({{"place", pl.str()}, {"order", o.get_str()}});
            ja["samples"] = samples;
            j["artin"] = ja;
            t += std::string("artin: ") +
                 (av.stable ? "stable order " + av.order.get_str() : "unbounded-trend") + "\n";
        }
    }
    j["exit"] = rc;
    emit(gl, j, t);
    return rc;
}

int cmd_reconstruct(const Global& gl, const std::string& sys_file, const std::string& out,
                    int probes) {
    CompatibleSystem sys = system_load(sys_file);
    ReconstructOptions opt;
    opt.probes = probes;
    opt.height_bound = Int(gl.bound_height);
    ReconstructionResult res = reconstruct_character(sys, opt);
    character_save(res.character, out);
    json j;
    j["written"] = out;
    json nt = json::array();
    for (auto& n : res.infinity_type.n) nt.push_back(n.get_str());
    j["infinity_type"] = nt;
    j["conductor"] = modulus_json(res.conductor);
    j["torsion_order_bound"] = res.torsion_order_bound.get_str();
    j["ell"] = res.ell.get_str();
    json audit = json::array();
    for (auto& a : res.audit) {
        json ja;
        ja["probe"] = {{"q", a.probe.q.get_str()}, {"gamma", fe_json(a.probe.gamma)}};
        json m = json::array();
        for (auto& x : a.relation.m) m.push_back(x.get_str());
        ja["relation"] = {{"t", a.relation.t.get_str()}, {"m", m}, {"zeta", fe_json(a.relation.zeta)}};
        json cp = json::array();
        for (auto& p : a.cross_primes) cp.push_back(p.get_str());
        ja["cross_check_primes"] = cp;
        audit.push_back(ja);
    }
    j["audit"] = audit;
    std::string t = "character written to " + out + "\n  conductor " + res.conductor.str() +
                    ", torsion order bound " + res.torsion_order_bound.get_str() + ", ell " +
                    res.ell.get_str() + ", " + std::to_string(res.audit.size()) + " probes\n";
    emit(gl, j, t);
    return 0;
}

int cmd_multdep(const Global& gl, const std::string& field, const std::string& c_lit,
                const std::vector<std::string>& a_lits, long probe_bound, long forbid) {
    auto F = field_by_label(field);
    FE c = parse_element(F, c_lit);
    std::vector<FE> a;
    for (auto& s : a_lits) a.push_back(parse_element(F, s));
    auto rel = mult_relation(F, c, a, Int(forbid));
    json j;
    std::string t;
    if (rel) {
        json m = json::array();
        for (auto& x : rel->m) m.push_back(x.get_str());
        j["relation"] = {{"t", rel->t.get_str()}, {"m", m}, {"zeta", fe_json(rel->zeta)}};
        t += "relation: c^" + rel->t.get_str() + " = zeta * prod a_i^m_i, zeta = " +
             F->fe_str(rel->zeta) + ", m = (";
        for (size_t i = 0; i < rel->m.size(); i++) t += (i ? "," : "") + rel->m[i].get_str();
        t += ")\n";
    } else {
        j["relation"] = nullptr;
        t += "no relation\n";
    }
    if (!rel || probe_bound > 0) {
        Int bound(probe_bound > 0 ? probe_bound : 100000);
        auto pr = local_probe(F, c, a, bound);
        json w = json::array();
        std::string wt;
        for (auto& P : pr.witnesses) {
            w.push_back(P.p.get_str());
            wt += " " + P.p.get_str();
        }
        j["witnesses"] = w;
        t += "witness primes below " + bound.get_str() + ":" + (wt.empty() ? " none" : wt) + "\n";
    } else {
        j["witnesses"] = nullptr;
    }
    emit(gl, j, t);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hecke characters, compatible systems, and their reconstruction"};
    app.require_subcommand(1);
    app.fallthrough();
    Global gl;
    app.add_option("--seed", gl.seed, "random seed (all commands are deterministic)");
    app.add_option("--jobs", gl.jobs, "parallelism width for prime sweeps");
    app.add_option("--bound-primes", gl.bound_primes, "prime sweep bound");
    app.add_option("--bound-height", gl.bound_height, "probe height bound");
    app.add_option("--format", gl.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));

    std::string label;
    auto* fi = app.add_subcommand("field-info", "catalog field report");
    fi->add_option("label", label, "field label")->required();

    std::string base = "rationals", value, modulus_lit = "1", out_file;
    std::vector<int> real_places;
    std::vector<long> ntype_v, eps_v;
    auto* cm = app.add_subcommand("char-make", "build and save a Hecke character");
    cm->add_option("--base", base, "base field label")->required();
    cm->add_option("--value", value, "value field label")->required();
    cm->add_option("--modulus", modulus_lit, "modulus generator literal")->required();
    cm->add_option("--real-places", real_places, "flagged real places");
    cm->add_option("--ntype", ntype_v, "infinity type, one entry per automorphism")->required();
    cm->add_option("--eps", eps_v, "finite part exponents on the group generators");
    cm->add_option("out", out_file, "output character file")->required();

    std::string char_file, sys_file;
    auto* sg = app.add_subcommand("system-gen", "generate a compatible system from a character");
    sg->add_option("char", char_file, "character file")->required();
    sg->add_option("out", out_file, "output system file")->required();

    bool strict = false, weak = false, purity = false, cond_flag = false, integrality = false,
         artin = false;
    std::string verify_char;
    auto* vf = app.add_subcommand("verify", "verify a system file");
    vf->add_option("system", sys_file, "system file")->required();
    vf->add_option("--char", verify_char, "character file providing the realization");
    vf->add_flag("--strict", strict, "strict axiom sweep (default)");
    vf->add_flag("--weak", weak, "weak mode: agreement only, no conductor support check");
    vf->add_flag("--purity", purity, "purity weight check");
    vf->add_flag("--conductor", cond_flag, "bounded conductor check");
    vf->add_flag("--integrality", integrality, "integrality after norm twist");
    vf->add_flag("--artin", artin, "bounded image detection");

    int probes = 3;
    auto* rc_cmd = app.add_subcommand("reconstruct", "recover the Hecke character from a system file");
    rc_cmd->add_option("system", sys_file, "system file")->required();
    rc_cmd->add_option("out", out_file, "output character file")->required();
    rc_cmd->add_option("--probes", probes, "probe prime count");

    std::string md_field, md_c;
    std::vector<std::string> md_a;
    long md_probe = 0, md_forbid = 0;
    auto* md = app.add_subcommand("multdep", "multiplicative dependence solver and local probe");
    md->add_option("--field", md_field, "field label")->required();
    md->add_option("--c", md_c, "target element literal")->required();
    md->add_option("--a", md_a, "base element literal (repeatable)")->required();
    md->add_option("--probe", md_probe, "local probe bound");
    md->add_option("--forbid", md_forbid, "prime the relation order t must avoid");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int r = app.exit(e);
        return r == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(fi)) return cmd_field_info(gl, label);
        if (app.got_subcommand(cm))
            return cmd_char_make(gl, base, value, modulus_lit, real_places, ntype_v, eps_v, out_file);
        if (app.got_subcommand(sg)) return cmd_system_gen(gl, char_file, out_file);
        if (app.got_subcommand(vf))
            return cmd_verify(gl, sys_file, verify_char, strict, weak, purity, cond_flag,
                              integrality, artin);
        if (app.got_subcommand(rc_cmd)) return cmd_reconstruct(gl, sys_file, out_file, probes);
        if (app.got_subcommand(md)) return cmd_multdep(gl, md_field, md_c, md_a, md_probe, md_forbid);
    } catch (const NotHeckeType& e) {
        std::cerr << "not of Hecke type: " << e.what() << "\n";
        return 4;
    } catch (const InsufficientData& e) {
        std::cerr << "insufficient data: " << e.what() << "\n";
        return 3;
    } catch (const BoundExceeded& e) {
        std::cerr << "computation budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
