#include "hecke/field.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace hecke {

namespace {

// extended Euclid over Q[x]: returns (g, s, t) with s*a + t*b = g
std::tuple<QPoly, QPoly, QPoly> qp_extgcd(QPoly a, QPoly b) {
    QPoly s0{Rat(1)}, s1, t0, t1{Rat(1)};
    while (degree(b) >= 0) {
        auto [q, r] = qp_divmod(a, b);
        a = b;
        b = r;
        QPoly s2 = qp_sub(s0, qp_mul(q, s1));
        QPoly t2 = qp_sub(t0, qp_mul(q, t1));
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    return {a, s0, t0};
}

QPoly fe_to_poly(const FE& a) { return qp_trim(a); }

FE poly_to_fe(const QPoly& f, int deg) {
    FE out(deg, Rat(0));
    for (size_t i = 0; i < f.size() && i < static_cast<size_t>(deg); i++) out[i] = f[i];
    return out;
}

using Interval = std::pair<Rat, Rat>;

Interval iv_mul(const Interval& a, const Interval& b) {
    Rat p1 = a.first * b.first, p2 = a.first * b.second;
    Rat p3 = a.second * b.first, p4 = a.second * b.second;
    Rat lo = std::min(std::min(p1, p2), std::min(p3, p4));
    Rat hi = std::max(std::max(p1, p2), std::max(p3, p4));
    return {lo, hi};
}

Interval iv_eval(const QPoly& f, const Interval& x) {
    Interval acc{Rat(0), Rat(0)};
    for (int i = degree(f); i >= 0; i--) {
        acc = iv_mul(acc, x);
        acc.first += f[i];
        acc.second += f[i];
    }
    return acc;
}

}  // namespace

FE NumberField::one() const { return from_rat(Rat(1)); }

FE NumberField::theta() const {
    FE t = zero();
    if (deg == 1) {
        t[0] = qp_eval(min_poly, Rat(0)) * Rat(-1);  // root of the linear polynomial
    } else {
        t[1] = 1;
    }
    return t;
}

FE NumberField::from_rat(const Rat& r) const {
    FE a = zero();
    a[0] = r;
    return a;
}

bool NumberField::is_zero(const FE& a) const {
    for (const auto& c : a)
        if (c != 0) return false;
    return true;
}

bool NumberField::is_rational(const FE& a) const {
    for (int i = 1; i < deg; i++)
        if (a[i] != 0) return false;
    return true;
}

FE NumberField::add(const FE& a, const FE& b) const {
    FE r = a;
    for (int i = 0; i < deg; i++) r[i] += b[i];
    return r;
}

FE NumberField::sub(const FE& a, const FE& b) const {
    FE r = a;
    for (int i = 0; i < deg; i++) r[i] -= b[i];
    return r;
}

FE NumberField::neg(const FE& a) const {
    FE r = a;
    for (auto& c : r) c = -c;
    return r;
}

FE NumberField::mul(const FE& a, const FE& b) const {
    std::vector<Rat> prod(2 * deg - 1, Rat(0));
    for (int i = 0; i < deg; i++) {
        if (a[i] == 0) continue;
        for (int j = 0; j < deg; j++) {
            if (b[j] == 0) continue;
            prod[i + j] += a[i] * b[j];
        }
    }
    FE out = zero();
    for (size_t k = 0; k < prod.size(); k++) {
        if (prod[k] == 0) continue;
        const QPoly& red = theta_pow_reduced[k];
        for (size_t i = 0; i < red.size(); i++) out[i] += prod[k] * red[i];
    }
    return out;
}

FE NumberField::inv(const FE& a) const {
    if (is_zero(a)) throw std::invalid_argument("inv: zero");
    auto [g, s, t] = qp_extgcd(fe_to_poly(a), min_poly);
    (void)t;
    if (degree(g) != 0) throw std::logic_error("inv: gcd not constant");
    QPoly r = qp_scale(s, Rat(1) / g[0]);
    auto [q, rem] = qp_divmod(r, min_poly);
    (void)q;
    return poly_to_fe(rem, deg);
}

FE NumberField::div(const FE& a, const FE& b) const { return mul(a, inv(b)); }

FE NumberField::pow(const FE& a, long e) const {
    FE base = e < 0 ? inv(a) : a;
    unsigned long k = e < 0 ? -static_cast<unsigned long>(e) : e;
    FE acc = one();
    while (k) {
        if (k & 1) acc = mul(acc, base);
        base = mul(base, base);
        k >>= 1;
    }
    return acc;
}

FE NumberField::mul_rat(const FE& a, const Rat& c) const {
    FE r = a;
    for (auto& x : r) x *= c;
    return r;
}

FE NumberField::apply_auto(const FE& a, size_t idx) const {
    FE out = zero();
    const auto& mat = auto_matrix[idx];
    for (int i = 0; i < deg; i++) {
        if (a[i] == 0) continue;
        for (int j = 0; j < deg; j++) out[j] += a[i] * mat[i][j];
    }
    return out;
}

Rat NumberField::norm(const FE& a) const {
    FE acc = one();
    for (size_t s = 0; s < autos.size(); s++) acc = mul(acc, apply_auto(a, s));
    if (!is_rational(acc)) throw std::logic_error("norm: product of conjugates not rational");
    return acc[0];
}

Rat NumberField::trace(const FE& a) const {
    FE acc = zero();
    for (size_t s = 0; s < autos.size(); s++) acc = add(acc, apply_auto(a, s));
    if (!is_rational(acc)) throw std::logic_error("trace: sum of conjugates not rational");
    return acc[0];
}

bool NumberField::is_integral(const FE& a) const {
    for (const auto& c : a)
        if (c.get_den() != 1) return false;
    return true;
}

Int NumberField::common_denominator(const FE& a) const {
    Int d = 1;
    for (const auto& c : a) {
        Int g;
        mpz_lcm(g.get_mpz_t(), d.get_mpz_t(), c.get_den_mpz_t());
        d = g;
    }
    return d;
}

int NumberField::real_sign(const FE& a, size_t place) const {
    if (place >= real_root_intervals_.size())
        throw std::invalid_argument("real_sign: no such real place");
    if (is_zero(a)) return 0;
    QPoly A = fe_to_poly(a);
    if (degree(A) == 0) return sgn(A[0]);
    Interval iv = real_root_intervals_[place];
    for (int iter = 0; iter < 4096; iter++) {
        Interval val = iv_eval(A, iv);
        if (val.first > 0) return 1;
        if (val.second < 0) return -1;
        // bisect toward the half containing the root (sign change of min_poly)
        Rat mid = (iv.first + iv.second) / 2;
        Rat fm = qp_eval(min_poly, mid);
        if (fm == 0) {
            // rational root: evaluate directly
            return sgn(qp_eval(A, mid));
        }
        Rat fl = qp_eval(min_poly, iv.first);
        if (sgn(fl) * sgn(fm) < 0)
            iv.second = mid;
        else
            iv.first = mid;
    }
    throw BoundExceeded("real_sign: interval refinement did not separate from zero");
}

bool NumberField::is_torsion_unit(const FE& a) const {
    if (is_zero(a)) return false;
    FE p = pow(a, units.torsion_order);
    return p == one();
}

std::optional<long> NumberField::torsion_exponent(const FE& a) const {
    FE acc = one();
    for (long k = 0; k < units.torsion_order; k++) {
        if (acc == a) return k;
        acc = mul(acc, units.torsion_generator);
    }
    return std::nullopt;
}

std::string NumberField::fe_str(const FE& a) const {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < deg; i++) {
        if (a[i] == 0) continue;
        Rat c = a[i];
        if (!first) {
            os << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        }
        first = false;
        if (i == 0 || c != 1 || (c == 1 && a[i] < 0 && false)) os << c.get_str();
        if (i > 0) {
            if (c != 1) os << "*";
            os << "t";
            if (i > 1) os << "^" << i;
        }
    }
    if (first) os << "0";
    return os.str();
}

namespace {

// isolating intervals for all real roots of f, ascending
std::vector<Interval> isolate_real_roots(const QPoly& f) {
    int n = count_real_roots(f);
    std::vector<Interval> out;
    if (n == 0) return out;
    // Cauchy bound
    Rat bound(1);
    int d = degree(f);
    for (int i = 0; i < d; i++) {
        Rat c = abs(f[i] / f[d]) + 1;
        if (c > bound) bound = c;
    }
    std::vector<Interval> work{{-bound, bound}};
    auto count_in = [&f](const Interval& iv) {
        // sign changes of f in (lo, hi] via evaluation-based bisection is not
        // enough for clustered roots; use Sturm counting
        QPoly g = f;
        std::vector<QPoly> chain{g, qp_derivative(g)};
        while (degree(chain.back()) > 0) {
            auto [q, r] = qp_divmod(chain[chain.size() - 2], chain.back());
            (void)q;
            if (degree(r) < 0) break;
            chain.push_back(qp_scale(r, Rat(-1)));
        }
        auto vars = [&chain](const Rat& x) {
            int v = 0, last = 0;
            for (const auto& h : chain) {
                int s = sgn(qp_eval(h, x));
                if (last != 0 && s != 0 && s != last) v++;
                if (s != 0) last = s;
            }
            return v;
        };
        return vars(iv.first) - vars(iv.second);
    };
    while (!work.empty()) {
        Interval iv = work.back();
        work.pop_back();
        int c = count_in(iv);
        if (c == 0) continue;
        if (c == 1) {
            out.push_back(iv);
            continue;
        }
        Rat mid = (iv.first + iv.second) / 2;
        while (qp_eval(f, mid) == 0) mid += (iv.second - iv.first) / 64;
        work.push_back({iv.first, mid});
        work.push_back({mid, iv.second});
    }
    std::sort(out.begin(), out.end());
    if (static_cast<int>(out.size()) != n)
        throw std::logic_error("isolate_real_roots: count mismatch");
    return out;
}

}  // namespace

NFPtr nf_create(const std::string& label, const QPoly& min_poly_in,
                const std::vector<QPoly>& automorphism_images, const UnitData& units) {
    auto field = std::make_shared<NumberField>();
    NumberField& F = *field;
    F.label = label;
    F.min_poly = qp_trim(min_poly_in);
    F.deg = degree(F.min_poly);
    if (F.deg < 1) throw std::invalid_argument("nf_create: degree must be >= 1");
    for (const auto& c : F.min_poly)
        if (c.get_den() != 1) throw std::invalid_argument("nf_create: min_poly not integral");
    if (F.min_poly[F.deg] != 1) throw std::invalid_argument("nf_create: min_poly not monic");
    if (!is_irreducible_monic(F.min_poly))
        throw std::invalid_argument("nf_create: min_poly reducible over Q");

    // reduction table for θ^k
    F.theta_pow_reduced.resize(2 * F.deg - 1);
    QPoly cur{Rat(1)};
    for (int k = 0; k < 2 * F.deg - 1; k++) {
        auto [q, r] = qp_divmod(cur, F.min_poly);
        (void)q;
        F.theta_pow_reduced[k] = r;
        cur = qp_mul(cur, QPoly{Rat(0), Rat(1)});
    }

    // automorphisms: θ-image must be a root of min_poly; the set must have
    // size deg and be closed under composition with identity first
    if (automorphism_images.size() != static_cast<size_t>(F.deg))
        throw std::invalid_argument("nf_create: automorphism count != degree (field not Galois as presented)");
    F.autos = automorphism_images;
    F.auto_matrix.resize(F.deg);
    for (int a = 0; a < F.deg; a++) {
        // reduce image mod min_poly, check min_poly(image) = 0
        auto [q0, img] = qp_divmod(F.autos[a], F.min_poly);
        (void)q0;
        F.autos[a] = img;
        // compose min_poly with img
        QPoly acc{Rat(0)};
        for (int i = F.deg; i >= 0; i--) {
            acc = qp_mul(acc, img);
            acc = qp_add(acc, QPoly{F.min_poly[i]});
            auto [q1, r1] = qp_divmod(acc, F.min_poly);
            (void)q1;
            acc = r1;
        }
        if (degree(acc) >= 0)
            throw std::invalid_argument("nf_create: automorphism image is not a root of min_poly");
        auto& mat = F.auto_matrix[a];
        mat.resize(F.deg);
        QPoly pw{Rat(1)};
        for (int i = 0; i < F.deg; i++) {
            mat[i] = poly_to_fe(pw, F.deg);
            pw = qp_mul(pw, img);
            auto [q2, r2] = qp_divmod(pw, F.min_poly);
            (void)q2;
            pw = r2;
        }
    }
    // identity must be the first automorphism
    {
        FE th = F.deg == 1 ? F.from_rat(-qp_eval(F.min_poly, Rat(0))) : [&] {
            FE t(F.deg, Rat(0));
            t[1] = 1;
            return t;
        }();
        if (F.apply_auto(th, 0) != th)
            throw std::invalid_argument("nf_create: automorphism 0 must be the identity");
    }
    for (int a = 0; a < F.deg; a++)
        for (int b = a + 1; b < F.deg; b++)
            if (F.autos[a] == F.autos[b])
                throw std::invalid_argument("nf_create: duplicate automorphism");
    // composition table
    F.comp.assign(F.deg, std::vector<size_t>(F.deg, 0));
    F.inverse_auto.assign(F.deg, 0);
    for (int a = 0; a < F.deg; a++) {
        for (int b = 0; b < F.deg; b++) {
            // σ_a ∘ σ_b : θ -> σ_a(g_b(θ)) = g_b(g_a(θ))
            FE img = poly_to_fe(F.autos[b], F.deg);
            img = F.apply_auto(img, a);
            size_t found = F.autos.size();
            for (int c = 0; c < F.deg; c++) {
                if (poly_to_fe(F.autos[c], F.deg) == img) {
                    found = c;
                    break;
                }
            }
            if (found == F.autos.size())
                throw std::invalid_argument("nf_create: automorphisms not closed under composition");
            F.comp[a][b] = found;
            if (found == 0) F.inverse_auto[a] = b;
        }
    }

    F.disc = poly_discriminant(F.min_poly);
    F.r1 = count_real_roots(F.min_poly);
    F.r2 = (F.deg - F.r1) / 2;
    if (F.r1 + 2 * F.r2 != F.deg) throw std::logic_error("nf_create: signature");
    F.real_root_intervals_ = isolate_real_roots(F.min_poly);

    // unit data validation
    F.units = units;
    if (units.torsion_generator.size() != static_cast<size_t>(F.deg))
        throw std::invalid_argument("nf_create: torsion generator has wrong length");
    long w = units.torsion_order;
    if (w < 2) throw std::invalid_argument("nf_create: torsion order must be >= 2");
    if (F.pow(units.torsion_generator, w) != F.one())
        throw std::invalid_argument("nf_create: torsion generator order incorrect");
    for (auto [q, e] : factor_u64(static_cast<uint64_t>(w))) {
        (void)e;
        if (F.pow(units.torsion_generator, w / static_cast<long>(q)) == F.one())
            throw std::invalid_argument("nf_create: torsion generator order not exact");
    }
    size_t expected_rank = static_cast<size_t>(F.r1 + F.r2 - 1);
    if (units.fundamental_units.size() != expected_rank)
        throw std::invalid_argument("nf_create: fundamental unit count != unit rank");
    for (const auto& u : units.fundamental_units) {
        if (!F.is_integral(u)) throw std::invalid_argument("nf_create: fundamental unit not integral");
        Rat n = F.norm(u);
        if (n != 1 && n != -1)
            throw std::invalid_argument("nf_create: fundamental unit norm is not a unit");
        if (F.is_torsion_unit(u))
            throw std::invalid_argument("nf_create: fundamental unit has finite order");
    }
    // real quadratic: cross-check against the smallest Pell solution
    if (F.deg == 2 && F.r1 == 2) {
        // θ satisfies x^2 - s x - c with s in {0, 1}
        long s = ilong(Int(-F.min_poly[1].get_num()));
        Int D = F.disc;
        FE pell;
        bool found = false;
        for (Int y = 1; y < 2000000 && !found; y++) {
            for (int unit_sign : {-1, +1}) {
                Int rhs = D * y * y + 4 * unit_sign;
                if (rhs < 0) continue;
                Int x = sqrt(rhs);
                if (x * x != rhs) continue;
                if ((x - y * Int(s == 0 ? 0 : 1)) % 2 != 0 && s == 1) continue;
                // unit = (x + y*sqrtD)/2 with sqrtD = 2θ - s
                Rat ycoef(y), xcoef(x);
                FE u = F.zero();
                u[1] = ycoef;
                u[0] = (xcoef - ycoef * Rat(s)) / 2;
                if (!F.is_integral(u)) continue;
                Rat n = F.norm(u);
                if (n != 1 && n != -1) continue;
                pell = u;
                found = true;
                break;
            }
        }
        if (!found) throw std::logic_error("nf_create: Pell search failed");
        const FE& fu = units.fundamental_units.at(0);
        bool match = false;
        for (const FE& cand : {pell, F.neg(pell), F.inv(pell), F.neg(F.inv(pell))})
            if (cand == fu) match = true;
        if (!match)
            throw std::invalid_argument("nf_create: fundamental unit does not match Pell solution");
    }

    // complex conjugation: order <= 2 automorphism with positive definite
    // trace form Tr(x τ(y)); identity works iff totally real
    F.conj_index = F.autos.size();
    for (int a = 0; a < F.deg; a++) {
        if (F.comp[a][a] != 0) continue;
        ZMat G(F.deg, ZVec(F.deg, 0));
        bool integral_ok = true;
        for (int i = 0; i < F.deg && integral_ok; i++) {
            for (int j = 0; j < F.deg; j++) {
                FE bj = F.zero();
                bj[j] = 1;
                FE e = F.zero();
                e[i] = 1;
                Rat t = F.trace(F.mul(e, F.apply_auto(bj, a)));
                if (t.get_den() != 1) {
                    integral_ok = false;
                    break;
                }
                G[i][j] = t.get_num();
            }
        }
        if (!integral_ok) continue;
        bool posdef = true;
        for (int k = 1; k <= F.deg && posdef; k++) {
            ZMat minor(k, ZVec(k));
            for (int i = 0; i < k; i++)
                for (int j = 0; j < k; j++) minor[i][j] = G[i][j];
            if (det_bareiss(minor) <= 0) posdef = false;
        }
        if (posdef) {
            F.conj_index = a;
            break;
        }
    }
    if (F.conj_index == F.autos.size())
        throw std::invalid_argument("nf_create: no complex conjugation found (field not CM or totally real)");
    return field;
}

namespace {

QPoly zpoly(std::initializer_list<long> cs) {
    QPoly f;
    for (long c : cs) f.push_back(Rat(c));
    return f;
}

FE fel(std::initializer_list<long> cs) {
    FE a;
    for (long c : cs) a.push_back(Rat(c));
    return a;
}

std::map<std::string, NFPtr> build_catalog() {
    std::map<std::string, NFPtr> cat;
    auto put = [&cat](NFPtr f) { cat[f->label] = f; };

    UnitData uQ{2, fel({-1}), {}};
    put(nf_create("rationals", zpoly({-1, 1}), {zpoly({0, 1})}, uQ));

    UnitData uGauss{4, fel({0, 1}), {}};
    put(nf_create("gaussian", zpoly({1, 0, 1}), {zpoly({0, 1}), zpoly({0, -1})}, uGauss));

    UnitData uEis{6, fel({0, 1}), {}};
    put(nf_create("eisenstein", zpoly({1, -1, 1}), {zpoly({0, 1}), zpoly({1, -1})}, uEis));

    UnitData uM2{2, fel({-1, 0}), {}};
    put(nf_create("sqrtm2", zpoly({2, 0, 1}), {zpoly({0, 1}), zpoly({0, -1})}, uM2));

    UnitData uS2{2, fel({-1, 0}), {fel({1, 1})}};
    put(nf_create("sqrt2", zpoly({-2, 0, 1}), {zpoly({0, 1}), zpoly({0, -1})}, uS2));

    UnitData uS5{2, fel({-1, 0}), {fel({0, 1})}};
    put(nf_create("sqrt5", zpoly({-1, -1, 1}), {zpoly({0, 1}), zpoly({1, -1})}, uS5));

    UnitData uC5{10, fel({0, -1, 0, 0}), {fel({1, 1, 0, 0})}};
    put(nf_create("cyclotomic5", zpoly({1, 1, 1, 1, 1}),
                  {zpoly({0, 1}), zpoly({0, 0, 1}), zpoly({0, 0, 0, 1}), zpoly({-1, -1, -1, -1})},
                  uC5));

    UnitData uC8{8, fel({0, 1, 0, 0}), {fel({1, 1, 0, -1})}};
    put(nf_create("cyclotomic8", zpoly({1, 0, 0, 0, 1}),
                  {zpoly({0, 1}), zpoly({0, 0, 0, 1}), zpoly({0, -1}), zpoly({0, 0, 0, -1})},
                  uC8));

    UnitData uC12{12, fel({0, 1, 0, 0}), {fel({1, 1, 0, 0})}};
    put(nf_create("cyclotomic12", zpoly({1, 0, -1, 0, 1}),
                  {zpoly({0, 1}), zpoly({0, -1, 0, 1}), zpoly({0, -1}), zpoly({0, 1, 0, -1})},
                  uC12));

    return cat;
}

}  // namespace

const std::map<std::string, NFPtr>& field_catalog() {
    static const std::map<std::string, NFPtr> cat = build_catalog();
    return cat;
}

NFPtr field_by_label(const std::string& label) {
    const auto& cat = field_catalog();
    auto it = cat.find(label);
    if (it == cat.end()) throw std::invalid_argument("unknown field label: " + label);
    return it->second;
}

FE FieldEmbedding::apply(const FE& a) const {
    FE acc = L->zero();
    for (int i = K->deg - 1; i >= 0; i--) {
        acc = L->mul(acc, theta_image);
        acc = L->add(acc, L->from_rat(a[i]));
    }
    return acc;
}

FieldEmbedding make_embedding(const NFPtr& K, const NFPtr& L, const FE& theta_image) {
    FieldEmbedding e{K, L, theta_image};
    // min_poly_K(image) must vanish in L
    FE acc = L->zero();
    for (int i = K->deg; i >= 0; i--) {
        acc = L->mul(acc, theta_image);
        acc = L->add(acc, L->from_rat(K->min_poly[i]));
    }
    if (!L->is_zero(acc))
        throw std::invalid_argument("make_embedding: theta image is not a root of the base min_poly");
    return e;
}

FieldEmbedding catalog_embedding(const NFPtr& K, const NFPtr& L) {
    if (K->label == L->label) return make_embedding(K, L, L->theta());
    if (K->label == "rationals") return make_embedding(K, L, L->one());
    static const std::map<std::pair<std::string, std::string>, FE> table = {
        {{"gaussian", "cyclotomic8"}, fel({0, 0, 1, 0})},
        {{"gaussian", "cyclotomic12"}, fel({0, 0, 0, 1})},
        {{"eisenstein", "cyclotomic12"}, fel({0, 0, 1, 0})},
        {{"sqrtm2", "cyclotomic8"}, fel({0, 1, 0, 1})},
        {{"sqrt2", "cyclotomic8"}, fel({0, 1, 0, -1})},
        {{"sqrt5", "cyclotomic5"}, fel({0, 0, -1, -1})},
    };
    auto it = table.find({K->label, L->label});
    if (it == table.end())
        throw std::invalid_argument("catalog_embedding: no embedding on file for " + K->label +
                                    " -> " + L->label);
    return make_embedding(K, L, it->second);
}

}  // namespace hecke
