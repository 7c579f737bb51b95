#include "hecke/rayclass.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hecke {

namespace {

Int fdiv_mod(const Int& a, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

ZVec int_coords(const NumberField& F, const FE& a) {
    ZVec v(F.deg);
    for (int i = 0; i < F.deg; i++) {
        if (a[i].get_den() != 1) throw std::invalid_argument("integral element expected");
        v[i] = a[i].get_num();
    }
    return v;
}

FE fe_of(const ZVec& v) {
    FE a(v.size());
    for (size_t i = 0; i < v.size(); i++) a[i] = Rat(v[i]);
    return a;
}

// multiplication-by-a matrix: row j = coordinates of a * theta^j
ZMat mul_matrix(const NumberField& F, const FE& a) {
    ZMat M(F.deg);
    FE cur = a;
    for (int j = 0; j < F.deg; j++) {
        M[j] = int_coords(F, cur);
        if (j + 1 < F.deg) cur = F.mul(cur, F.theta());
    }
    return M;
}

FE reduce_fe(const NumberField& F, const ZMat& lat, const std::vector<size_t>& pcols,
             const FE& a) {
    ZVec v = reduce_mod_lattice(lat, pcols, int_coords(F, a));
    return fe_of(v);
}

FE pow_mod_lattice(const NumberField& F, const ZMat& lat, const std::vector<size_t>& pcols,
                   const FE& base, Int e) {
    if (e < 0) throw std::invalid_argument("pow_mod_lattice: negative exponent");
    FE acc = F.one();
    FE b = reduce_fe(F, lat, pcols, base);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) acc = reduce_fe(F, lat, pcols, F.mul(acc, b));
        e >>= 1;
        if (e > 0) b = reduce_fe(F, lat, pcols, F.mul(b, b));
    }
    return acc;
}

}  // namespace

// ---------------------------------------------------------------- AbGroup

ZVec AbGroup::resolve(const ZVec& word) const {
    if (word.size() != ngens) throw std::invalid_argument("AbGroup::resolve: word length");
    ZVec x = mul_row_mat(word, V);
    ZVec out(kept.size());
    for (size_t j = 0; j < kept.size(); j++) out[j] = fdiv_mod(x[kept[j]], full_div[kept[j]]);
    return out;
}

AbGroup abgroup_from_relations(size_t ngens, const ZMat& rels) {
    AbGroup A;
    A.ngens = ngens;
    A.rels = rels;
    if (ngens == 0) return A;
    if (rels.empty()) throw std::invalid_argument("abgroup: no relations, infinite quotient");
    for (auto& r : rels)
        if (r.size() != ngens) throw std::invalid_argument("abgroup: relation length mismatch");
    SmithForm S = snf(rels);
    A.V = S.V;
    A.full_div.assign(ngens, Int(0));
    size_t diag = std::min(rels.size(), ngens);
    for (size_t j = 0; j < diag; j++) A.full_div[j] = S.D[j][j] >= 0 ? S.D[j][j] : -S.D[j][j];
    for (size_t j = 0; j < ngens; j++) {
        if (A.full_div[j] == 0) throw std::invalid_argument("abgroup: infinite quotient");
        if (A.full_div[j] > 1) A.kept.push_back(j);
    }
    A.W = inv_unimodular(A.V);
    A.order = 1;
    for (size_t j : A.kept) {
        A.divisors.push_back(A.full_div[j]);
        A.order *= A.full_div[j];
    }
    return A;
}

// ---------------------------------------------------------------- Modulus

Modulus make_modulus(const NFPtr& F, const FE& gen, std::vector<int> real_places) {
    Modulus m;
    m.F = F;
    if (F->is_zero(gen)) throw std::invalid_argument("modulus: zero generator");
    if (!F->is_integral(gen)) throw std::invalid_argument("modulus: generator not integral");
    std::sort(real_places.begin(), real_places.end());
    real_places.erase(std::unique(real_places.begin(), real_places.end()), real_places.end());
    for (int v : real_places)
        if (v < 0 || v >= F->r1) throw std::invalid_argument("modulus: bad real place index");
    m.real_places = std::move(real_places);
    Rat nm = F->norm(gen);
    Int n = abs(nm.get_num());
    m.norm = n;
    if (n == 1) {
        m.gen = F->one();
        return m;
    }
    m.gen = canonical_associate(F, gen);
    for (auto& [p, e] : factor_int(n)) {
        (void)e;
        for (auto& P : factor_rational_prime(F, p)) {
            int v = valuation(P, m.gen);
            if (v > 0) m.factor.push_back({P, v});
        }
    }
    return m;
}

std::string Modulus::str() const {
    std::ostringstream os;
    os << "(" << F->fe_str(gen) << ")";
    for (int v : real_places) os << "*oo" << v;
    return os.str();
}

Modulus modulus_lcm(const Modulus& a, const Modulus& b) {
    if (a.F != b.F) throw std::invalid_argument("modulus_lcm: different fields");
    FE gen = a.gen;
    for (auto& [P, k] : b.factor) {
        int have = 0;
        for (auto& [Q, j] : a.factor)
            if (Q == P) have = j;
        if (k > have) gen = a.F->mul(gen, a.F->pow(P.gen, k - have));
    }
    std::vector<int> flags = a.real_places;
    for (int v : b.real_places)
        if (std::find(flags.begin(), flags.end(), v) == flags.end()) flags.push_back(v);
    return make_modulus(a.F, gen, flags);
}

bool modulus_equal(const Modulus& a, const Modulus& b) {
    return a.F == b.F && a.gen == b.gen && a.real_places == b.real_places;
}

bool modulus_divides(const Modulus& a, const Modulus& b) {
    if (a.F != b.F) return false;
    for (auto& [P, k] : a.factor) {
        bool ok = false;
        for (auto& [Q, l] : b.factor)
            if (P == Q && l >= k) {
                ok = true;
                break;
            }
        if (!ok) return false;
    }
    return std::includes(b.real_places.begin(), b.real_places.end(), a.real_places.begin(),
                         a.real_places.end());
}

std::vector<Modulus> modulus_divisors(const Modulus& m) {
    const NFPtr& F = m.F;
    std::vector<std::vector<int>> exp_choices;
    size_t nf = m.factor.size();
    std::vector<int> cur(nf, 0);
    for (;;) {
        exp_choices.push_back(cur);
        size_t i = 0;
        while (i < nf && cur[i] == m.factor[i].second) {
            cur[i] = 0;
            i++;
        }
        if (i == nf) break;
        cur[i]++;
    }
    std::vector<std::vector<int>> flag_choices;
    size_t ns = m.real_places.size();
    for (size_t mask = 0; mask < (size_t(1) << ns); mask++) {
        std::vector<int> fl;
        for (size_t i = 0; i < ns; i++)
            if (mask & (size_t(1) << i)) fl.push_back(m.real_places[i]);
        flag_choices.push_back(fl);
    }
    std::vector<Modulus> out;
    for (auto& ex : exp_choices) {
        FE g = F->one();
        for (size_t i = 0; i < nf; i++)
            for (int t = 0; t < ex[i]; t++) g = F->mul(g, m.factor[i].first.gen);
        for (auto& fl : flag_choices) out.push_back(make_modulus(F, g, fl));
    }
    std::sort(out.begin(), out.end(), [](const Modulus& a, const Modulus& b) {
        if (a.norm != b.norm) return a.norm < b.norm;
        if (a.real_places.size() != b.real_places.size())
            return a.real_places.size() < b.real_places.size();
        return a.str() < b.str();
    });
    return out;
}

// ---------------------------------------------------------------- pieces

ZVec GroupPiece::piece_resolve(const NumberField& F, const FE& a) const {
    switch (kind) {
        case CYCLIC: {
            if (cyc_order == 1) {
                if (Fq.is_zero(Fq.reduce(a)))
                    throw std::invalid_argument("element not coprime to modulus");
                return {Int(0)};
            }
            FqField::El x = Fq.reduce(a);
            if (Fq.is_zero(x)) throw std::invalid_argument("element not coprime to modulus");
            auto t = fq_dlog(Fq, prim, x, cyc_order);
            if (!t) throw std::runtime_error("piece dlog failed");
            return {*t};
        }
        case ENUM: {
            FqField::El r = Fq.reduce(a);
            if (Fq.is_zero(r)) throw std::invalid_argument("element not coprime to modulus");
            ZVec v = reduce_mod_lattice(lat, lat_pcols, int_coords(F, a));
            std::string key;
            for (auto& c : v) key += c.get_str() + ",";
            auto it = dlog.find(key);
            if (it == dlog.end()) throw std::runtime_error("enumerated piece lookup failed");
            return it->second;
        }
        case SIGN: {
            int s = F.real_sign(a, sign_place);
            if (s == 0) throw std::invalid_argument("zero at real place");
            return {Int(s < 0 ? 1 : 0)};
        }
    }
    throw std::logic_error("unreachable");
}

namespace {

std::string box_key(const ZVec& v) {
    std::string key;
    for (auto& c : v) key += c.get_str() + ",";
    return key;
}

GroupPiece build_cyclic_piece(const NFPtr& F, const PrimeIdeal& P) {
    GroupPiece pc;
    pc.kind = GroupPiece::CYCLIC;
    pc.P = P;
    pc.k = 1;
    pc.Fq = residue_field(P);
    pc.cyc_order = pc.Fq.group_order();
    pc.ngens = 1;
    pc.rels = {{pc.cyc_order}};
    if (pc.cyc_order == 1) {
        pc.prim = pc.Fq.one();
        pc.gens = {F->one()};
        return pc;
    }
    auto fac = factor_int(pc.cyc_order);
    // canonical scan for a primitive element: coefficient vectors by index
    Int qsize = pc.Fq.size();
    for (Int idx = 2; idx < qsize; idx++) {
        Int n = idx;
        FqField::El el(pc.Fq.f, 0);
        for (int i = 0; i < pc.Fq.f && n > 0; i++) {
            el[i] = mpz_fdiv_ui(n.get_mpz_t(), pc.Fq.p);
            n /= Int(pc.Fq.p);
        }
        if (fq_element_order(pc.Fq, el, fac) == pc.cyc_order) {
            pc.prim = el;
            FE lift(F->deg, Rat(0));
            for (int i = 0; i < pc.Fq.f; i++) lift[i] = Rat(Int(el[i]));
            pc.gens = {lift};
            return pc;
        }
    }
    throw std::logic_error("no primitive element found");
}

GroupPiece build_enum_piece(const NFPtr& F, const PrimeIdeal& P, int k) {
    GroupPiece pc;
    pc.kind = GroupPiece::ENUM;
    pc.P = P;
    pc.k = k;
    pc.Fq = residue_field(P);
    FE pk = F->one();
    for (int i = 0; i < k; i++) pk = F->mul(pk, P.gen);
    ZMat raw = principal_lattice(F, pk);
    pc.lat = hnf_rows(raw, nullptr, &pc.lat_pcols);
    pc.lat.resize(F->deg);

    Int group_order = pc.Fq.group_order();
    for (int i = 1; i < k; i++) group_order *= pc.Fq.size();
    std::vector<Int> radix(F->deg);
    Int total = 1;
    for (int j = 0; j < F->deg; j++) {
        radix[j] = pc.lat[j][j];
        total *= radix[j];
    }
    auto norm = [&](const FE& x) { return reduce_fe(*F, pc.lat, pc.lat_pcols, x); };

    // tracked subgroup: elements with exponent words over the generators so far
    std::vector<std::pair<FE, ZVec>> elems;
    std::unordered_map<std::string, size_t> index;
    FE one_n = norm(F->one());
    elems.push_back({one_n, {}});
    index[box_key(int_coords(*F, one_n))] = 0;

    // scan the residue box in mixed-radix order, growing generators greedily
    ZVec v(F->deg, 0);
    for (Int idx = 0; idx < total && Int(elems.size()) < group_order; idx++) {
        if (idx > 0) {
            int j = 0;
            while (true) {
                v[j] += 1;
                if (v[j] < radix[j]) break;
                v[j] = 0;
                j++;
            }
        }
        FE u = fe_of(v);
        if (pc.Fq.is_zero(pc.Fq.reduce(u))) continue;  // not a unit mod P
        if (index.count(box_key(v))) continue;
        size_t gi = pc.gens.size();
        // relative order: least e with u^e in the current subgroup (u itself is not)
        Int e = 2;
        FE w = norm(F->mul(u, u));
        ZVec base_vec;
        for (;;) {
            auto it = index.find(box_key(int_coords(*F, w)));
            if (it != index.end()) {
                base_vec = elems[it->second].second;
                break;
            }
            w = norm(F->mul(w, u));
            e += 1;
            if (e > group_order) throw std::logic_error("enum piece: order overflow");
        }
        ZVec row(gi + 1, 0);
        for (size_t t = 0; t < base_vec.size(); t++) row[t] = -base_vec[t];
        row[gi] = e;
        pc.rels.push_back(row);
        pc.gens.push_back(u);
        for (auto& pr : elems) pr.second.resize(gi + 1, Int(0));
        size_t old_count = elems.size();
        FE up = F->one();
        for (Int t = 1; t < e; t++) {
            up = norm(F->mul(up, u));
            for (size_t s = 0; s < old_count; s++) {
                FE y = norm(F->mul(elems[s].first, up));
                ZVec vy = elems[s].second;
                vy[gi] = t;
                std::string ky = box_key(int_coords(*F, y));
                if (index.count(ky)) throw std::logic_error("enum piece: duplicate product");
                index[ky] = elems.size();
                elems.push_back({y, vy});
            }
        }
    }
    if (Int(elems.size()) != group_order) throw std::logic_error("enum piece: wrong unit count");
    pc.ngens = pc.gens.size();
    for (auto& r : pc.rels) r.resize(pc.ngens, Int(0));
    for (auto& [x, word] : elems) {
        ZVec wd = word;
        wd.resize(pc.ngens, Int(0));
        pc.dlog[box_key(int_coords(*F, x))] = wd;
    }
    return pc;
}

}  // namespace

// ------------------------------------------------------- RayResidueGroup

bool RayResidueGroup::coprime(const FE& a) const {
    if (F->is_zero(a)) return false;
    for (auto& pc : pieces) {
        if (pc.kind == GroupPiece::SIGN) continue;
        Int den = F->common_denominator(a);
        if (den % Int(pc.Fq.p) == 0) return false;
        if (pc.Fq.is_zero(pc.Fq.reduce(a))) return false;
    }
    return true;
}

ZVec RayResidueGroup::presentation(const FE& a) const {
    ZVec word;
    for (auto& pc : pieces) {
        ZVec part = pc.piece_resolve(*F, a);
        word.insert(word.end(), part.begin(), part.end());
    }
    return word;
}

ZVec RayResidueGroup::presentation_pair(const ResidueClass& c) const {
    ZVec word;
    size_t si = 0;
    for (auto& pc : pieces) {
        if (pc.kind == GroupPiece::SIGN) {
            word.push_back(c.signs.at(si));
            si++;
        } else {
            ZVec part = pc.piece_resolve(*F, c.residue);
            word.insert(word.end(), part.begin(), part.end());
        }
    }
    return word;
}

FE RayResidueGroup::normalize_residue(const FE& a) const {
    if (m.factor.empty()) return F->one();
    return reduce_fe(*F, mlat, mlat_pcols, a);
}

ResidueClass RayResidueGroup::class_of(const FE& a) const {
    ResidueClass c;
    if (!F->is_integral(a)) throw std::invalid_argument("class_of: integral element expected");
    c.residue = normalize_residue(a);
    for (int v : m.real_places) c.signs.push_back(F->real_sign(a, v) < 0 ? 1 : 0);
    return c;
}

ResidueClass RayResidueGroup::mul(const ResidueClass& a, const ResidueClass& b) const {
    ResidueClass c;
    c.residue = normalize_residue(F->mul(a.residue, b.residue));
    c.signs.resize(a.signs.size());
    for (size_t i = 0; i < a.signs.size(); i++) c.signs[i] = (a.signs[i] + b.signs.at(i)) % 2;
    return c;
}

namespace {

ResidueClass pair_rep_from_word(const RayResidueGroup& G, const ZVec& word) {
    const NumberField& F = *G.F;
    ResidueClass rep;
    rep.residue = F.one();
    size_t gi = 0;
    for (auto& pc : G.pieces) {
        if (pc.kind == GroupPiece::SIGN) {
            rep.signs.push_back(static_cast<int>(fdiv_mod(word[gi], Int(2)).get_si()));
            gi++;
            continue;
        }
        Int piece_order = pc.Fq.group_order();
        for (int i = 1; i < pc.k; i++) piece_order *= pc.Fq.size();
        for (size_t t = 0; t < pc.ngens; t++, gi++) {
            Int e = fdiv_mod(word[gi], piece_order);
            if (e == 0) continue;
            FE powed = pow_mod_lattice(F, G.mlat, G.mlat_pcols, G.gen_lifts[gi], e);
            rep.residue = G.normalize_residue(F.mul(rep.residue, powed));
        }
    }
    return rep;
}

}  // namespace

RayResidueGroup residue_group(const NFPtr& F, const Modulus& m, Int enum_bound) {
    RayResidueGroup G;
    G.F = F;
    G.m = m;
    if (m.F != F) throw std::invalid_argument("residue_group: field mismatch");

    Int enum_orders = 1;
    for (auto& [P, k] : m.factor) {
        if (k < 2) continue;
        Int q = 1;
        for (int i = 0; i < P.f; i++) q *= Int(P.p);
        Int o = q - 1;
        for (int i = 1; i < k; i++) o *= q;
        enum_orders *= o;
    }
    if (enum_orders > enum_bound)
        throw BoundExceeded("residue group enumeration bound exceeded: " + enum_orders.get_str());

    for (auto& [P, k] : m.factor)
        G.pieces.push_back(k == 1 ? build_cyclic_piece(F, P) : build_enum_piece(F, P, k));
    for (int v : m.real_places) {
        GroupPiece pc;
        pc.kind = GroupPiece::SIGN;
        pc.sign_place = v;
        pc.ngens = 1;
        pc.rels = {{Int(2)}};
        G.pieces.push_back(pc);
    }

    if (!m.factor.empty()) {
        ZMat raw = principal_lattice(F, m.gen);
        G.mlat = hnf_rows(raw, nullptr, &G.mlat_pcols);
        G.mlat.resize(F->deg);
    }

    size_t ngens = 0;
    for (auto& pc : G.pieces) {
        G.offset.push_back(ngens);
        ngens += pc.ngens;
    }
    ZMat rels;
    for (size_t i = 0; i < G.pieces.size(); i++)
        for (auto& r : G.pieces[i].rels) {
            ZVec row(ngens, 0);
            for (size_t j = 0; j < r.size(); j++) row[G.offset[i] + j] = r[j];
            rels.push_back(row);
        }
    if (ngens > 0 && rels.empty()) throw std::logic_error("residue group: missing relations");
    G.grp = abgroup_from_relations(ngens, rels);

    // CRT idempotents over the residue pieces, then single-residue lifts
    std::vector<size_t> rp;  // indices of residue pieces
    for (size_t i = 0; i < G.pieces.size(); i++)
        if (G.pieces[i].kind != GroupPiece::SIGN) rp.push_back(i);
    std::vector<FE> crt(G.pieces.size(), F->one());
    if (rp.size() == 1) {
        crt[rp[0]] = F->one();
    } else if (rp.size() > 1) {
        for (size_t ii : rp) {
            auto& pc = G.pieces[ii];
            FE Mi = F->one();
            for (size_t jj : rp) {
                if (jj == ii) continue;
                auto& qc = G.pieces[jj];
                for (int t = 0; t < qc.k; t++) Mi = F->mul(Mi, qc.P.gen);
            }
            // solve nu * Mi = 1 mod P^k
            FE pk = F->one();
            for (int t = 0; t < pc.k; t++) pk = F->mul(pk, pc.P.gen);
            ZMat A = mul_matrix(*F, Mi);
            for (auto& row : principal_lattice(F, pk)) A.push_back(row);
            auto sol = solve_integer(A, int_coords(*F, F->one()));
            if (!sol) throw std::logic_error("CRT idempotent solve failed");
            ZVec nu(sol->begin(), sol->begin() + F->deg);
            crt[ii] = G.normalize_residue(F->mul(Mi, fe_of(nu)));
        }
    }
    G.crt_units = crt;
    for (size_t i = 0; i < G.pieces.size(); i++) {
        auto& pc = G.pieces[i];
        if (pc.kind == GroupPiece::SIGN) {
            for (size_t t = 0; t < pc.ngens; t++) G.gen_lifts.push_back(F->one());
            continue;
        }
        for (size_t t = 0; t < pc.ngens; t++) {
            // 1 + e_i * (g - 1): equals g mod this piece and 1 mod the others
            FE lift = F->add(F->one(), F->mul(crt[i], F->sub(pc.gens[t], F->one())));
            G.gen_lifts.push_back(G.normalize_residue(lift));
        }
    }

    for (size_t j = 0; j < G.grp.kept.size(); j++)
        G.gen_reps.push_back(pair_rep_from_word(G, G.grp.snf_gen_word(j)));
    return G;
}

ZMat unit_words(const RayResidueGroup& G) {
    ZMat rows;
    const NumberField& F = *G.F;
    rows.push_back(G.presentation(F.units.torsion_generator));
    for (auto& u : F.units.fundamental_units) rows.push_back(G.presentation(u));
    return rows;
}

FE honest_representative(const RayResidueGroup& G, const ResidueClass& c) {
    const NumberField& F = *G.F;
    if (G.m.real_places.empty()) return c.residue;
    auto ok = [&](const FE& g) {
        for (size_t i = 0; i < G.m.real_places.size(); i++) {
            int s = F.real_sign(g, G.m.real_places[i]);
            if (s == 0) return false;
            if ((s < 0 ? 1 : 0) != c.signs[i]) return false;
        }
        return true;
    };
    if (ok(c.residue)) return c.residue;
    for (long B = 1; B <= 64; B *= 2) {
        // sweep t in the box |t_i| <= B, candidates residue + gen * t
        std::vector<long> t(F.deg, -B);
        for (;;) {
            bool all_zero = std::all_of(t.begin(), t.end(), [](long x) { return x == 0; });
            if (!all_zero) {
                FE tt(F.deg);
                for (int i = 0; i < F.deg; i++) tt[i] = Rat(t[i]);
                FE cand = F.add(c.residue, F.mul(G.m.gen, tt));
                if (!F.is_zero(cand) && ok(cand)) return cand;
            }
            int j = 0;
            while (j < F.deg && t[j] == B) {
                t[j] = -B;
                j++;
            }
            if (j == F.deg) break;
            t[j]++;
        }
    }
    throw std::runtime_error("honest representative sweep exhausted");
}

// --------------------------------------------------------- RayClassGroup

ZVec RayClassGroup::resolve_prime(const PrimeIdeal& P) const {
    return resolve(P.gen);
}

RayClassGroup ray_class_group(const NFPtr& F, const Modulus& m, Int enum_bound) {
    RayClassGroup C;
    auto G = std::make_shared<RayResidueGroup>(residue_group(F, m, enum_bound));
    C.G = G;
    ZMat rels = G->grp.rels;
    for (auto& row : unit_words(*G)) rels.push_back(row);
    if (G->grp.ngens == 0)
        C.grp = G->grp;
    else
        C.grp = abgroup_from_relations(G->grp.ngens, rels);
    for (size_t j = 0; j < C.grp.kept.size(); j++) {
        C.gen_reps.push_back(pair_rep_from_word(*G, C.grp.snf_gen_word(j)));
        C.gen_elems.push_back(honest_representative(*G, C.gen_reps.back()));
    }
    return C;
}

// ------------------------------------------------------- FiniteCharacter

Int FiniteCharacter::order() const {
    Int o = 1;
    const auto& d = G->divisors();
    for (size_t i = 0; i < k.size(); i++) {
        Int g = gcd(d[i], k[i]);
        Int oi = d[i] / g;
        o = lcm(o, oi);
    }
    return o;
}

Rat FiniteCharacter::eval_rat_coords(const ZVec& coords) const {
    const auto& d = G->divisors();
    Rat q(0);
    for (size_t i = 0; i < k.size(); i++) {
        Int t = k[i] * coords.at(i);
        q += Rat(t) / Rat(d[i]);
    }
    // reduce into [0, 1)
    Int fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    q -= Rat(fl);
    return q;
}

Rat FiniteCharacter::eval_rat(const FE& a) const { return eval_rat_coords(G->resolve(a)); }

Rat FiniteCharacter::eval_rat_pair(const ResidueClass& c) const {
    return eval_rat_coords(G->resolve_pair(c));
}

bool FiniteCharacter::is_trivial() const {
    return std::all_of(k.begin(), k.end(), [](const Int& x) { return x == 0; });
}

FiniteCharacter trivial_character(std::shared_ptr<const RayResidueGroup> G) {
    FiniteCharacter eps;
    eps.k.assign(G->divisors().size(), Int(0));
    eps.G = std::move(G);
    return eps;
}

FiniteCharacter character_from_w_exponents(std::shared_ptr<const RayResidueGroup> G,
                                           const std::vector<Int>& a, const Int& w) {
    const auto& d = G->divisors();
    if (a.size() != d.size()) throw std::invalid_argument("character exponent count");
    FiniteCharacter eps;
    for (size_t i = 0; i < d.size(); i++) {
        if (w % d[i] != 0) throw std::invalid_argument("character: order does not divide w");
        Int unit = w / d[i];
        if (a[i] % unit != 0)
            throw std::invalid_argument("character: exponent not a multiple of w/d");
        eps.k.push_back(fdiv_mod(a[i] / unit, d[i]));
    }
    eps.G = std::move(G);
    return eps;
}

std::vector<Int> character_w_exponents(const FiniteCharacter& eps, const Int& w) {
    const auto& d = eps.G->divisors();
    std::vector<Int> a;
    for (size_t i = 0; i < d.size(); i++) {
        if (w % d[i] != 0) throw std::invalid_argument("character order does not divide w");
        a.push_back(fdiv_mod(eps.k[i] * (w / d[i]), w));
    }
    return a;
}

std::optional<std::vector<Int>> character_solve(const std::vector<Int>& divisors,
                                                const std::vector<ZVec>& coords,
                                                const std::vector<Int>& targets, const Int& w) {
    size_t g = divisors.size();
    size_t T = coords.size();
    ZMat A(g, ZVec(T + g, 0));
    for (size_t t = 0; t < T; t++) {
        if (coords[t].size() != g) throw std::invalid_argument("character_solve: coord length");
        for (size_t j = 0; j < g; j++) A[j][t] = coords[t][j];
    }
    for (size_t j = 0; j < g; j++) A[j][T + j] = divisors[j];
    ZVec v(T + g, 0);
    for (size_t t = 0; t < T; t++) v[t] = targets[t];
    ZVec mods(T + g, w);
    auto sol = solve_mod_vec(A, v, mods);
    if (!sol) return std::nullopt;
    for (auto& x : *sol) x = fdiv_mod(x, w);
    return sol;
}

bool spans_group(const std::vector<Int>& divisors, const std::vector<ZVec>& coords) {
    size_t g = divisors.size();
    if (g == 0) return true;
    ZMat M;
    for (auto& c : coords) {
        if (c.size() != g) throw std::invalid_argument("spans_group: coord length");
        M.push_back(c);
    }
    for (size_t j = 0; j < g; j++) {
        ZVec row(g, 0);
        row[j] = divisors[j];
        M.push_back(row);
    }
    std::vector<size_t> pcols;
    ZMat H = hnf_rows(M, nullptr, &pcols);
    if (pcols.size() != g) return false;
    for (size_t i = 0; i < g; i++)
        if (H[i][pcols[i]] != 1) return false;
    return true;
}

std::vector<ResidueClass> presentation_generator_pairs(const RayResidueGroup& G) {
    std::vector<ResidueClass> out;
    size_t nflags = G.m.real_places.size();
    for (size_t pi = 0; pi < G.pieces.size(); pi++) {
        const auto& pc = G.pieces[pi];
        if (pc.kind == GroupPiece::SIGN) {
            ResidueClass c;
            c.residue = G.F->one();
            c.signs.assign(nflags, 0);
            size_t at = 0;
            while (G.m.real_places[at] != pc.sign_place) at++;
            c.signs[at] = 1;
            out.push_back(c);
        } else {
            for (size_t g = 0; g < pc.ngens; g++) {
                ResidueClass c;
                c.residue = G.gen_lifts[out.size()];
                c.signs.assign(nflags, 0);
                out.push_back(c);
            }
        }
    }
    return out;
}

ZMat kernel_mod(const ZMat& M, const std::vector<Int>& divisors) {
    size_t n = M.size(), g = divisors.size();
    ZMat B = M;
    for (size_t j = 0; j < g; j++) {
        ZVec row(g, 0);
        row[j] = divisors[j];
        B.push_back(row);
    }
    ZMat full = left_kernel(B);
    ZMat out;
    for (auto& lam : full) out.push_back(ZVec(lam.begin(), lam.begin() + n));
    return out;
}

}  // namespace hecke
