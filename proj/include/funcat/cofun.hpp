#pragma once

#include <optional>
#include <vector>

#include "funcat/fpfun.hpp"
#include "funcat/report.hpp"

namespace funcat {

/// Mirror of a subcategory across vector-space duality: the opposite algebra
/// together with add of the dualized summands.  Covariant functors on the
/// base subcategory are finitely presented contravariant functors over the
/// mirror, so the whole presentation machinery is reused verbatim; this
/// object is the stored reduction witness.  Non-movable: modules built over
/// opp() and functors over dual_cat() hold pointers into it.
class CoContext {
public:
    explicit CoContext(const SubcatGen& X);
    CoContext(const CoContext&) = delete;
    CoContext& operator=(const CoContext&) = delete;

    const SubcatGen& cat() const { return *x_; }
    const Algebra& alg() const { return x_->lambda(); }
    const Algebra& opp() const { return aop_; }
    const SubcatGen& dual_cat() const { return xop_; }

    /// Transpose-the-action duals across the two sides.
    Module dual(const Module& M) const;       // over alg() -> over opp()
    Module dual_back(const Module& N) const;  // over opp() -> over alg()
    ModuleMorphism dual_map(const ModuleMorphism& f) const;
    ModuleMorphism dual_map_back(const ModuleMorphism& g) const;

    /// Index of the mirror summand equal to the dual of e_v Lambda.
    int dual_proj_summand(int v) const { return dual_proj_[size_t(v)]; }

private:
    const SubcatGen* x_;
    Algebra aop_;
    SubcatGen xop_;
    std::vector<int> dual_proj_;
};

/// (- tensor N) restricted to the subcategory, for N a module over opp() (a
/// left module over the base algebra): presented over the mirror by duals of
/// transposed projective covers of N.  Keeps the cover data for transporting
/// module morphisms to functor morphisms.
struct CoTensorData {
    FpFunctor F;  // over dual_cat()
    Module N;
    std::vector<int> verts0, verts1;  // cover vertex lists (second may be empty)
    ModuleMorphism eps;               // cover -> N over opp()
    ModuleMorphism dq;                // second cover -> cover over opp()
};

/// Finitely presented covariant functor on the base subcategory, reduced to a
/// contravariant presentation over the mirror.
struct CoFpFunctor {
    FpFunctor rep;                     // over dual_cat()
    std::optional<CoTensorData> tens;  // set when built as a tensor functor
};

/// Dual of a covariant functor, landing back over the base subcategory; built
/// through the evaluation shadow, with the explicit shadow identification.
struct DualBackData {
    FpFunctor F;                // over cat()
    Module shadow;              // over cat().gamma()
    ModuleMorphism shadow_iso;  // ev(F).value -> shadow, invertible
};

/// Left-module part of a covariant functor: kernel of the dualized presenting
/// arrow of its dual.  "collapsed" marks the trivial copresentation case
/// (tensor argument dual to a subcategory object), where the value is the
/// tensor argument itself on the nose.
struct VData {
    Module value;  // over opp()
    bool collapsed = false;
    std::optional<DualBackData> back;    // general path only
    std::optional<ModuleMorphism> incl;  // general path: value -> dual of back->F.x0
};

/// Kernel presentation of the injective-copresentation functor of a left
/// module, with the data needed for morphism transport.
struct KappaData {
    CoFpFunctor F;
    Module N;              // over opp()
    Module dn;             // dual_back(N) over alg()
    ModuleMorphism delta;  // P1 -> P0 over alg(), presentation of dn
    ModuleMorphism eps;    // P0 -> dn
    CoTensorData t0, t1;   // tensor functors of dual(P0), dual(P1)
    FunctorMorphism incl;  // F.rep -> t0.F
    FunctorMorphism tmap;  // t0.F -> t1.F
};

CoTensorData tensor_functor(const CoContext& C, const Module& N);
/// Transport of g: a.N -> b.N to the functor morphism a.F -> b.F.
FunctorMorphism tensor_functor_of(const CoContext& C, const CoTensorData& a,
                                  const CoTensorData& b, const ModuleMorphism& g);
CoFpFunctor t_functor(const CoContext& C, const Module& N);

/// Pointwise vector-space dual of a contravariant functor: the kernel of the
/// induced map between the tensor functors of the dualized presentation
/// terms; collapses to the tensor functor itself for representables.
CoFpFunctor duality_D(const CoContext& C, const FpFunctor& F);
/// Inverse direction, through the dualized evaluation shadow.
DualBackData duality_D_inv(const CoContext& C, const FpFunctor& rep);
/// Transport of eta: F -> G over the mirror to the morphism between the
/// dualized-back functors, contravariantly: returns tgt_data.F -> src_data.F.
FunctorMorphism duality_D_inv_of(const CoContext& C, const DualBackData& src_data,
                                 const DualBackData& tgt_data, const FunctorMorphism& eta);

KappaData kappa_data(const CoContext& C, const Module& N);
CoFpFunctor kappa_functor(const CoContext& C, const Module& N);
/// Transport of g: a.N -> b.N to a.F.rep -> b.F.rep.
FunctorMorphism kappa_of(const CoContext& C, const KappaData& a, const KappaData& b,
                         const ModuleMorphism& g);

VData v_functor(const CoContext& C, const CoFpFunctor& F);
/// Always takes the general path (usable for morphism transport).
VData v_data_general(const CoContext& C, const FpFunctor& rep);
/// Induced map v(F) -> v(G) for eta: F -> G over the mirror; both VData must
/// come from v_data_general on the corresponding reps.
ModuleMorphism v_of(const CoContext& C, const VData& a, const VData& b,
                    const FunctorMorphism& eta);

/// Right-to-left module duality through the subcategory: the kernel functor
/// of the dual of the restricted-Hom functor.  Collapses to the plain dual on
/// subcategory objects; in particular it equals dual_module exactly on
/// projectives.
Module tilde_duality(const CoContext& C, const Module& M);

/// The induced endofunctor of right modules (self-injective base only):
/// dual-back of tilde_duality.  Isomorphic to the identity on projectives'
/// subcategory choices; throws precondition_error otherwise.
Module auto_equivalence_DX(const CoContext& C, const Module& M);

/// Property suite for the covariant recollement: v o t = id, t and kappa
/// full/faithful, adjunction dimension isos with explicit transport maps,
/// exactness of v, and ker v = functors vanishing on projectives.
CheckReport recollement_check_covariant(const CoContext& C, u64 seed, int rounds = 12);

}  // namespace funcat
