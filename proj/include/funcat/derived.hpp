#pragma once

#include <random>

#include "funcat/fpfun.hpp"
#include "funcat/report.hpp"

namespace funcat {

/// Bounded cochain complex of modules: terms[k] sits in degree lo + k and
/// diff[k] : terms[k] -> terms[k+1] raises the degree.  Terms outside the
/// window are zero; composites of consecutive differentials must vanish.
struct ModuleComplex {
    const Algebra* alg = nullptr;
    int lo = 0;
    std::vector<Module> terms;
    std::vector<ModuleMorphism> diff;

    const Algebra& algebra() const { return *alg; }
    int hi() const { return lo + int(terms.size()) - 1; }
};
ModuleComplex make_module_complex(const Algebra& A, int lo, std::vector<Module> terms,
                                  std::vector<ModuleMorphism> diff);
ModuleComplex stalk_complex(const Module& M, int deg);
/// Term in a given degree (the zero module outside the window).
Module complex_term(const ModuleComplex& C, int deg);
/// Differential leaving a given degree (a zero morphism outside the window).
ModuleMorphism complex_diff(const ModuleComplex& C, int deg);
/// C[k]: degree i picks up the old degree i + k, differentials scaled by
/// (-1)^k.
ModuleComplex shift_complex(const ModuleComplex& C, int k);
ModuleComplex sum_complex(const ModuleComplex& a, const ModuleComplex& b);

/// Bounded complex of fp functors on a fixed subcategory.  Squares of
/// differentials vanish as morphisms (their degree-zero lifts may differ by
/// something factoring through the presentation).
struct FunctorComplex {
    const SubcatGen* subcat = nullptr;
    int lo = 0;
    std::vector<FpFunctor> terms;
    std::vector<FunctorMorphism> diff;

    const SubcatGen& cat() const { return *subcat; }
    int hi() const { return lo + int(terms.size()) - 1; }
};
FunctorComplex make_functor_complex(const SubcatGen& X, int lo, std::vector<FpFunctor> terms,
                                    std::vector<FunctorMorphism> diff);
FunctorComplex functor_stalk_complex(const FpFunctor& F, int deg);
FpFunctor functor_complex_term(const FunctorComplex& C, int deg);
FunctorMorphism functor_complex_diff(const FunctorComplex& C, int deg);

/// Degreewise map of complexes commuting with the differentials; components
/// outside [lo, lo + comp.size()) are zero.
struct ModuleChainMap {
    ModuleComplex src, tgt;
    int lo = 0;
    std::vector<ModuleMorphism> comp;
};
ModuleChainMap make_module_chain_map(ModuleComplex src, ModuleComplex tgt, int lo,
                                     std::vector<ModuleMorphism> comp);
ModuleMorphism chain_comp(const ModuleChainMap& f, int deg);
ModuleChainMap chain_identity(const ModuleComplex& C);
ModuleChainMap chain_zero_map(const ModuleComplex& C, const ModuleComplex& D);

struct FunctorChainMap {
    FunctorComplex src, tgt;
    int lo = 0;
    std::vector<FunctorMorphism> comp;
};
FunctorChainMap make_functor_chain_map(FunctorComplex src, FunctorComplex tgt, int lo,
                                       std::vector<FunctorMorphism> comp);
FunctorMorphism functor_chain_comp(const FunctorChainMap& f, int deg);

/// Cohomology ker/im in each degree of the window (as modules; the dims
/// vector is aligned with degrees lo .. hi).
Module homology_at(const ModuleComplex& C, int deg);
std::vector<int> homology_dims(const ModuleComplex& C);
bool is_acyclic_complex(const ModuleComplex& C);
/// Cohomology dimensions of the complex of values F(N) (plain linear
/// algebra in the canonical value coordinates), aligned with lo .. hi.
std::vector<int> value_homology_dims(const FunctorComplex& C, const Module& N);

/// Chain maps modulo null-homotopies.  Coordinates live in the direct sum of
/// the degreewise Hom spaces; reps are representatives of a basis of the
/// quotient.
struct ModuleKHom {
    int lo = 0, hi = -1;             // alignment window of the coordinates
    std::vector<int> offset;         // start of each degree block
    std::vector<FpMatrix> homs;      // hom_basis(src term, tgt term) per degree
    FpMatrix null_rows;              // span of the null-homotopic maps
    FpMatrix rep_rows;               // coordinates of the representatives
    std::vector<ModuleChainMap> reps;
    int dim() const { return int(reps.size()); }
};
ModuleKHom khom(const ModuleComplex& C, const ModuleComplex& D);
/// Coefficients of a chain map against the representatives (after reduction
/// by the null-homotopic subspace).
std::vector<u32> khom_coords(const ModuleKHom& H, const ModuleChainMap& f);

struct FunctorKHom {
    int lo = 0, hi = -1;
    std::vector<int> offset;
    std::vector<FpHom> homs;
    FpMatrix null_rows;
    FpMatrix rep_rows;
    std::vector<FunctorChainMap> reps;
    int dim() const { return int(reps.size()); }
};
FunctorKHom khom(const FunctorComplex& C, const FunctorComplex& D);
std::vector<u32> khom_coords(const FunctorKHom& H, const FunctorChainMap& f);

/// Mapping cone C^{i+1} (+) D^i with the two triangle maps D -> cone and
/// cone -> C[1].
struct ConeData {
    ModuleComplex cone;
    ModuleChainMap into, onto;
};
ConeData mapping_cone(const ModuleChainMap& f);
/// Rank bookkeeping of the long exact homology sequence of the cone:
/// dim H^d(cone) = (dim H^d(tgt) - rank H^d(f)) + (dim H^{d+1}(src) -
/// rank H^{d+1}(f)) in every degree.
bool cone_long_exact_check(const ModuleChainMap& f);

/// Degreewise restricted-Hom image of a functor complex (and its transport
/// of chain maps).  Requires the subcategory to contain the projectives.
ModuleComplex termwise_va(const FunctorComplex& C);
ModuleChainMap termwise_va_map(const FunctorChainMap& eta);
/// Degreewise representable lift of a complex of projectives; every term
/// must be projective.  termwise_va returns the input exactly.
FunctorComplex termwise_va_lambda(const SubcatGen& X, const ModuleComplex& P);
/// Degreewise restricted Hom functor (-, C)|_add(gen) of any complex.
FunctorComplex termwise_va_rho(const SubcatGen& X, const ModuleComplex& C);

/// Left-adjoint lift of an arbitrary complex: degreewise projectivization
/// with differentials lifted through the covers; the counits reassemble the
/// input complex up to isomorphism.
struct VaLambdaLift {
    FunctorComplex F;
    std::vector<ModuleMorphism> counit;  // va(F term) -> C term, degreewise
};
VaLambdaLift va_lambda_lift(const SubcatGen& X, const ModuleComplex& C);

/// Degreewise four-term exact decomposition 0 -> f0 -> C -> mid -> f1 -> 0
/// through the unit, with the induced differentials on the outer complexes
/// and naturality of all three degreewise maps verified.
struct ComplexDecomposition {
    FunctorComplex f0, mid, f1;
    std::vector<FunctorMorphism> incl, unit, proj;  // aligned with C's window
};
ComplexDecomposition complex_decomposition(const FunctorComplex& C);

/// Whether the degreewise image complex is acyclic; verified equivalent to
/// acyclicity of the complex of values at the regular module (mismatch is a
/// hard error).
bool kernel_characterization(const FunctorComplex& C);

/// Verified bijection between homotopy classes: maps out of the
/// representable lift of P into C correspond to maps P -> termwise_va(C).
/// mat sends the left coordinates to the right ones and is invertible.
struct DerivedAdjunction {
    int dim = 0;
    FpMatrix mat;
};
DerivedAdjunction adjunction_check_derived(const ModuleComplex& P, const FunctorComplex& C);
/// The mirror bijection: maps C -> representable lift of P correspond to
/// maps termwise_va(C) -> P (used over self-injective algebras).
DerivedAdjunction adjunction_check_derived_right(const FunctorComplex& C, const ModuleComplex& P);

/// Deterministic corpora: stalks, two-term complexes from random Hom picks,
/// three-term complexes with the second differential solved inside the
/// kernel condition.
std::vector<ModuleComplex> random_complex_corpus(const Algebra& A, std::mt19937_64& rng,
                                                 int rounds);
std::vector<ModuleComplex> random_projective_complex_corpus(const Algebra& A,
                                                            std::mt19937_64& rng, int rounds);
std::vector<FunctorComplex> random_functor_complex_corpus(const SubcatGen& X,
                                                          std::mt19937_64& rng, int rounds);
/// A nonzero functor vanishing on the algebra (epi presentation).
FpFunctor random_mod0_functor(const SubcatGen& X, std::mt19937_64& rng);

/// End-to-end verification that the derived functor category over the
/// refined radical generator resolves the derived module category: finite
/// global dimension of the endomorphism algebra, acyclicity kernel
/// characterization, essential surjectivity, the derived adjunction, and the
/// exact unit identity, over seeded corpora.
CheckReport verify_categorical_resolution(const Algebra& lambda, u64 seed, int rounds = 6);

/// Weak crepancy over a self-injective algebra: the image functor is also a
/// right adjoint up to homotopy, restricted injectives are injective objects
/// (Hom exactness against short exact sequences), and complexes with terms
/// vanishing on the algebra admit no nonzero homotopy classes into
/// restricted-Hom complexes.  Throws precondition_error when the algebra is
/// not self-injective.
CheckReport verify_weakly_crepant(const Algebra& lambda, u64 seed, int rounds = 6);

}  // namespace funcat
