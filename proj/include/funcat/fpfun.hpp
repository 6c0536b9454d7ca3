#pragma once

#include <optional>
#include <vector>

#include "funcat/aalgebra.hpp"

namespace funcat {

/// Finitely presented contravariant functor on add(gen), identified with its
/// presenting arrow d: x1 -> x0 between certified objects of add(gen).  The
/// functor itself is coker(Hom(-, x1) -> Hom(-, x0)); every operation below
/// is finite linear algebra on presentations.  Keep the SubcatGen alive while
/// any functor built on it exists.
struct FpFunctor {
    const SubcatGen* subcat = nullptr;
    CertifiedModule x1, x0;
    ModuleMorphism d;  // x1.mod -> x0.mod

    const SubcatGen& cat() const { return *subcat; }
};

FpFunctor make_functor(const SubcatGen& X, CertifiedModule x1, CertifiedModule x0, FpMatrix d);
/// Presented by 0 -> x0, i.e. the functor Hom(-, x0).
FpFunctor representable_functor(const SubcatGen& X, CertifiedModule x0);
FpFunctor zero_fp_functor(const SubcatGen& X);
/// Same presentation data on the nose (not an isomorphism test).
bool functor_data_equal(const FpFunctor& F, const FpFunctor& G);
bool is_zero_functor(const FpFunctor& F);

/// Morphism of fp functors, carried by a lift pair commuting with the
/// presentations (d_src ; l0 == l1 ; d_tgt).  The meaning of the morphism is
/// the induced map on cokernels; two lift pairs are identified when the
/// difference of the l0 components factors through the target's presenting
/// arrow (decided linearly).
struct FunctorMorphism {
    FpFunctor src, tgt;
    ModuleMorphism l1, l0;
};

FunctorMorphism make_functor_morphism(FpFunctor src, FpFunctor tgt, ModuleMorphism l1,
                                      ModuleMorphism l0);
FunctorMorphism functor_identity(const FpFunctor& F);
FunctorMorphism functor_zero_morphism(const FpFunctor& F, const FpFunctor& G);
FunctorMorphism functor_compose(const FunctorMorphism& a, const FunctorMorphism& b);  // a then b
bool functor_morphism_is_zero(const FunctorMorphism& eta);
bool functor_morphism_eq(const FunctorMorphism& a, const FunctorMorphism& b);
/// Invertibility of the induced map at gen (detects isomorphism in the whole
/// functor category, since evaluation at gen is an equivalence).
bool functor_morphism_is_iso(const FunctorMorphism& eta);

/// Value F(N) of the functor at a module N in add(gen): the quotient of the
/// coefficient space of hom_basis(N, x0) by the image of Hom(N, x1).
struct ValueAt {
    FpMatrix hom;      // hom_basis(N, x0)
    LinearQuotient q;  // quotient by the presentation image
    int dim() const { return q.dim(); }
};
ValueAt value_at(const FpFunctor& F, const Module& N);
/// Matrix of the induced map F(N) -> G(N) in the canonical value coordinates.
FpMatrix value_map_at(const FunctorMorphism& eta, const Module& N);

/// F(gen) as a right module over Gamma = End(gen), with the projection from
/// ev(x0).  This is the shadow of F under the equivalence with mod Gamma.
struct EvFunctor {
    Module value;         // over gamma()
    ModuleMorphism proj;  // ev(x0.mod) -> value
};
EvFunctor ev_functor(const FpFunctor& F);
ModuleMorphism ev_functor_map(const FunctorMorphism& eta);  // Gamma-map of shadows

/// Evaluation of the presentation at the algebra: va(F) = coker(d), with the
/// projection x0.mod -> va(F).
SubQuotient va_cokernel(const FpFunctor& F);
Module va(const FpFunctor& F);
/// Induced map va(F) -> va(G) on the cokernels.
ModuleMorphism va_of(const FunctorMorphism& eta);
/// True iff d is surjective; asserted equivalent to va(F) = 0.  These are the
/// functors vanishing on the algebra (and hence on all projectives).
bool in_mod0(const FpFunctor& F);

/// Left adjoint of va: the functor presented by the minimal projective
/// presentation of M (projectives lie in add(gen)).  eps: x0.mod -> M is the
/// cover map realizing va(va_lambda(M)) = M.
struct VaLambdaData {
    FpFunctor F;
    ModuleMorphism eps;
};
VaLambdaData va_lambda_data(const SubcatGen& X, const Module& M);
FpFunctor va_lambda(const SubcatGen& X, const Module& M);

/// Right adjoint of va: the restricted Hom functor Hom(-, M)|_add(gen),
/// presented by iterated right approximations; exactness of the presentation
/// on add(gen) is verified at gen.  eval: x0.mod -> M is the approximation.
struct VaRhoData {
    FpFunctor F;
    ModuleMorphism eval;
};
VaRhoData va_rho_data(const SubcatGen& X, const Module& M);
FpFunctor va_rho(const SubcatGen& X, const Module& M);
/// Functorial action Hom(-, f) on the restricted Hom functors.
FunctorMorphism va_rho_of(const SubcatGen& X, const ModuleMorphism& f);

/// The counit va(va_lambda(M)) -> M and unit M -> va(va_rho(M)); both are
/// verified isomorphisms.
ModuleMorphism valambda_counit(const SubcatGen& X, const Module& M);
ModuleMorphism varho_unit(const SubcatGen& X, const Module& M);
/// Canonical unit F -> va_rho(va F) and counit va_lambda(va F) -> F.
FunctorMorphism unit_map(const FpFunctor& F);
FunctorMorphism counit_map(const FpFunctor& F);

/// Natural transformations F -> G: the kernel of G(x0) -> G(x1) under
/// precomposition with d, each basis vector materialized as a morphism with
/// lifts recovered by linear solves.
struct FpHom {
    std::vector<FunctorMorphism> basis;
    FpMatrix kernel_rows;  // basis rows in the G(x0) value coordinates
    ValueAt at_x0;         // value of G at F's x0 (coordinate reference)
    int dim() const { return int(basis.size()); }
};
FpHom fp_hom(const FpFunctor& F, const FpFunctor& G);
/// Coordinates of a morphism F -> G in the canonical fp_hom basis.
std::vector<u32> fp_hom_coords(const FpHom& H, const FunctorMorphism& eta);
std::optional<FunctorMorphism> functor_iso_search(const FpFunctor& F, const FpFunctor& G,
                                                  u64 seed, int tries = 64);
/// Solve mu ; nu == eta (up to homotopy) for mu; the factorization through a
/// mono such as a kernel inclusion.
std::optional<FunctorMorphism> functor_factor_through(const FunctorMorphism& eta,
                                                      const FunctorMorphism& nu);

struct FunctorKernel {
    FpFunctor ker;
    FunctorMorphism incl;
};
struct FunctorCokernel {
    FpFunctor coker;
    FunctorMorphism proj;
};
/// Kernel presented via right approximations of the module-level pullbacks
/// (weak pullbacks in add(gen)); the inclusion is a verified mono at gen.
FunctorKernel functor_kernel(const FunctorMorphism& eta);
/// Cokernel presented by x0 (+) y1 -> y0.
FunctorCokernel functor_cokernel(const FunctorMorphism& eta);

/// The two canonical four-term exact sequences attached to F:
///   0 -> f0 -> F -> va_rho(va F) -> f1 -> 0    (through the unit)
///   0 -> f2 -> va_lambda(va F) -> F -> f3 -> 0 (through the counit)
/// with all four end terms vanishing on the algebra.  Exactness is verified
/// by rank bookkeeping at gen and at the regular module; failures throw.
struct UnitCounitSequences {
    FpFunctor f0, mid1, f1;
    FunctorMorphism incl0, unit, proj1;
    FpFunctor f2, mid2, f3;
    FunctorMorphism incl2, counit, proj3;
};
UnitCounitSequences unit_counit_sequences(const FpFunctor& F);

/// The two adjoints of the inclusion of the vanishing-on-projectives
/// subcategory: i_rho = Ker(F -> va_rho va F), i_lambda = Coker(va_lambda
/// va F -> F); both certified to vanish on the algebra.
struct SerreAdjoints {
    FpFunctor i_rho;
    FunctorMorphism incl;
    FpFunctor i_lambda;
    FunctorMorphism proj;
};
SerreAdjoints serre_adjoints(const FpFunctor& F);

/// Verified natural bijection Hom(M, va F) = Hom(va_lambda M, F); mat sends
/// hom_basis(M, va F) coordinates to fp_hom coordinates and is invertible.
struct AdjunctionCheck {
    int dim = 0;
    FpMatrix mat;
};
AdjunctionCheck adjunction_check_left(const Module& M, const FpFunctor& F);
/// Verified natural bijection Hom(va F, M) = Hom(F, va_rho M), via the unit.
AdjunctionCheck adjunction_check_right(const FpFunctor& F, const Module& M);

/// Projective resolution ... -> (-, terms[1]) -> (-, terms[0]) -> F -> 0 by
/// iterated right approximations of module-level kernels; stops early when a
/// kernel is zero or itself certified in add(gen).  cap bounds terms.size().
struct FpResolution {
    std::vector<CertifiedModule> terms;
    std::vector<ModuleMorphism> maps;  // maps[i]: terms[i+1].mod -> terms[i].mod
    bool complete = false;
};
FpResolution fp_resolution(const FpFunctor& F, int cap);
/// dim Ext^1(F, G), as homology of the applied-Hom complex of fp_resolution.
int fp_ext1(const FpFunctor& F, const FpFunctor& G);

/// Direct sum of two certified objects (certificates block-diagonal).
CertifiedModule certified_pair(const SubcatGen& X, const CertifiedModule& a,
                               const CertifiedModule& b);

}  // namespace funcat
