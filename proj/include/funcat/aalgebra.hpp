#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "funcat/module.hpp"

namespace funcat {

/// End(m_0 + ... + m_k) as an algebra. Basis blocks run over (source summand,
/// target summand, Hom basis index); the product x * y is "apply y, then x",
/// i.e. mat(x * y) = mat(y) * mat(x) on row vectors.
struct EndAlgebraData {
    SumData sum;       // the summed module over the base algebra
    Algebra end_alg;
    FpMatrix end_mats;  // row r: flattened sum.dim x sum.dim matrix of basis element r
    std::vector<int> block_src, block_tgt;  // summand indices per basis element
};
/// summands_local: every summand has a local endomorphism ring (e.g. a simple
/// top), making the per-summand idempotents primitive.
EndAlgebraData end_algebra(const std::vector<Module>& summands, bool summands_local);

/// End(M) for M = sum of the radical quotients Lambda/J^i, i = 1..n, refined
/// into vertex pieces e_v(Lambda/J^i) with simple tops. The corner at the
/// i = n block recovers Lambda via left multiplication.
struct AAlgebraData {
    std::vector<Module> summands;           // e_v(Lambda/J^i), ordered by (i, v)
    std::vector<std::pair<int, int>> tags;  // (i, v) per summand
    SumData msum;                           // M and its inclusions/projections
    Algebra tilde;                          // End(M)
    FpMatrix tilde_mats;                    // basis endomorphism matrices, flattened
    std::vector<u32> corner_idem;           // e = sum of the i = n idempotents
    AlgebraCorner corner;                   // e * tilde * e
    FpMatrix corner_candidate;              // row b: image of Lambda basis b in corner coords
    bool corner_iso_ok;
};
AAlgebraData build_aalgebra(const Algebra& lambda);

struct GldimResult {
    bool finite;
    int value;  // -1 when the cap was hit
};
GldimResult verify_finite_gldim(const Algebra& A, int cap = -1);

/// An object of add(gen) with an explicit split-epi witness from a power of gen.
struct CertifiedModule {
    Module mod;                 // over Lambda
    ModuleMorphism from_power;  // gen^k -> mod
    ModuleMorphism section;     // mod -> gen^k, section; from_power = id
    int power = 0;              // k
};

/// A fixed additive subcategory add(gen) of mod Lambda containing the
/// projectives, together with its shadow Gamma = End(gen): evaluation at gen
/// turns functor-level computations into Gamma-module computations.
/// Holds the Gamma instance; keep the object alive (and unmoved) while any
/// module over gamma() exists.
class SubcatGen {
public:
    SubcatGen(const Algebra& lambda, std::vector<Module> summands, bool summands_local);
    SubcatGen(const SubcatGen&) = delete;
    SubcatGen& operator=(const SubcatGen&) = delete;
    SubcatGen(SubcatGen&&) = default;

    /// add(Lambda), split into the e_v Lambda.
    static SubcatGen projectives(const Algebra& lambda);
    /// add of the refined radical quotients e_v(Lambda/J^i) (contains both
    /// the projectives and the top).
    static SubcatGen auslander(const Algebra& lambda);

    const Algebra& lambda() const { return *lambda_; }
    const Module& gen() const { return endd_.sum.sum; }
    const Algebra& gamma() const { return endd_.end_alg; }
    int summand_count() const { return int(summands_.size()); }
    const Module& summand(int t) const { return summands_[size_t(t)]; }
    const ModuleMorphism& incl(int t) const { return endd_.sum.incl[size_t(t)]; }
    const ModuleMorphism& proj(int t) const { return endd_.sum.proj[size_t(t)]; }
    const FpMatrix& gamma_mats() const { return endd_.end_mats; }
    const std::vector<int>& block_src() const { return endd_.block_src; }
    const std::vector<int>& block_tgt() const { return endd_.block_tgt; }

    /// Coordinates of an endomorphism of gen in the gamma basis.
    std::vector<u32> gamma_coords(const FpMatrix& endo) const;
    /// Endomorphism matrix of a gamma element.
    FpMatrix gamma_mat(const std::vector<u32>& coords) const;

    std::optional<CertifiedModule> certify(const Module& N) const;
    CertifiedModule certified_sum(const std::vector<int>& summand_indices) const;
    CertifiedModule certified_gen_power(int k) const;
    /// Whether the regular module certified into add(gen).  Holds for the
    /// categories of the contravariant theory; mirrors of them across duality
    /// need not satisfy it, and the operations below that present by
    /// projective covers require it explicitly.
    bool contains_projectives() const { return projcert_.has_value(); }
    const CertifiedModule& proj_certificate() const {
        require(projcert_.has_value(), "subcategory: the projectives are not inside add(gen)");
        return *projcert_;
    }

    /// Hom(gen, X) as a right Gamma-module (phi . gamma = gamma ; phi).
    Module ev_module(const Module& X) const;
    FpMatrix ev_basis(const Module& X) const;  // hom_basis(gen, X)
    /// Hom(gen, f): postcomposition, as a Gamma-module morphism.
    ModuleMorphism ev_of_map(const ModuleMorphism& f) const;

private:
    const Algebra* lambda_;
    std::vector<Module> summands_;
    EndAlgebraData endd_;
    RowSolver gsolver_;
    std::optional<CertifiedModule> projcert_;
};

/// Gamma / P for the ideal P of endomorphisms of gen factoring through a
/// projective; the stable endomorphism algebra of gen.
struct StableAlgebraData {
    Algebra alg;
    FpMatrix ideal_rows;         // basis of P in gamma coordinates
    FpMatrix proj_mat;           // gamma dim x stable dim
    FpMatrix section_mat;        // stable dim x gamma dim, section of proj_mat
    std::vector<int> surviving;  // summand indices with nonzero image idempotent
};
StableAlgebraData build_stable_algebra(const SubcatGen& X);

}  // namespace funcat
