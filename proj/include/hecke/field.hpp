#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "hecke/linalg.hpp"
#include "hecke/poly.hpp"

namespace hecke {

/// Element of a number field as coordinates in the power basis 1, θ, ..., θ^{d-1}.
using FE = std::vector<Rat>;

struct UnitData {
    long torsion_order = 2;
    FE torsion_generator;           // element of exact order torsion_order
    std::vector<FE> fundamental_units;
};

/// Monogenic Galois number field of class number one, presented by the
/// minimal polynomial of a power-basis generator θ.  Automorphisms are given
/// by the image of θ as a polynomial in θ.  Index 0 is the identity.
class NumberField {
  public:
    std::string label;
    QPoly min_poly;  // monic, integral, irreducible
    int deg = 0;
    std::vector<QPoly> autos;  // θ-images, one per automorphism
    Int disc = 0;
    int r1 = 0, r2 = 0;
    UnitData units;

    // derived tables
    std::vector<std::vector<FE>> auto_matrix;  // [a][i] = image of θ^i under automorphism a
    std::vector<std::vector<size_t>> comp;     // comp[a][b]: index of σ_a ∘ σ_b
    std::vector<size_t> inverse_auto;
    size_t conj_index = 0;  // complex conjugation (identity when totally real)

    FE zero() const { return FE(deg, Rat(0)); }
    FE one() const;
    FE theta() const;
    FE from_rat(const Rat& r) const;
    bool is_zero(const FE& a) const;
    bool is_rational(const FE& a) const;

    FE add(const FE& a, const FE& b) const;
    FE sub(const FE& a, const FE& b) const;
    FE neg(const FE& a) const;
    FE mul(const FE& a, const FE& b) const;
    FE inv(const FE& a) const;
    FE div(const FE& a, const FE& b) const;
    FE pow(const FE& a, long e) const;
    FE mul_rat(const FE& a, const Rat& c) const;

    FE apply_auto(const FE& a, size_t idx) const;
    Rat norm(const FE& a) const;
    Rat trace(const FE& a) const;

    bool is_integral(const FE& a) const;
    Int common_denominator(const FE& a) const;

    /// exact sign of a under the i-th real embedding (real roots ascending)
    int real_sign(const FE& a, size_t place) const;

    bool is_torsion_unit(const FE& a) const;
    /// exponent k with torsion_generator^k == a, if a is a root of unity
    std::optional<long> torsion_exponent(const FE& a) const;

    std::string fe_str(const FE& a) const;  // human readable a0 + a1*θ + ...

  private:
    friend std::shared_ptr<const NumberField> nf_create(const std::string&, const QPoly&,
                                                        const std::vector<QPoly>&,
                                                        const UnitData&);
    std::vector<QPoly> theta_pow_reduced;  // θ^k mod min_poly for k = 0..2d-2
    std::vector<std::pair<Rat, Rat>> real_root_intervals_;  // isolating, ascending
    mutable std::vector<int> sturm_cache_;
};

using NFPtr = std::shared_ptr<const NumberField>;

/// Validates the presentation (irreducibility, automorphism count d forming a
/// group, unit data) and builds the derived tables.  Throws
/// std::invalid_argument with a diagnostic on malformed input.
NFPtr nf_create(const std::string& label, const QPoly& min_poly,
                const std::vector<QPoly>& automorphism_images, const UnitData& units);

/// The built-in catalog, keyed by label.
const std::map<std::string, NFPtr>& field_catalog();
NFPtr field_by_label(const std::string& label);

/// Embedding of K into L given by the image of θ_K.
struct FieldEmbedding {
    NFPtr K, L;
    FE theta_image;  // in L

    FE apply(const FE& a) const;  // a in K -> image in L
};

/// Constructs and validates (min_poly_K(image) = 0 in L).
FieldEmbedding make_embedding(const NFPtr& K, const NFPtr& L, const FE& theta_image);
/// Built-in embedding for catalog pairs; throws if none is on file.
FieldEmbedding catalog_embedding(const NFPtr& K, const NFPtr& L);

}  // namespace hecke
