#pragma once

#include <optional>
#include <vector>

#include "funcat/algebra.hpp"

namespace funcat {

/// Right module: row vectors in F_p^dim, act[b] the matrix of the right
/// action of the b-th algebra basis element (m maps to m * act[b]).
/// The referenced algebra must outlive the module.
struct Module {
    const Algebra* alg = nullptr;
    int dim = 0;
    std::vector<FpMatrix> act;

    Fp field() const { return alg->field(); }
    /// Action matrix of an arbitrary algebra element (coordinates x).
    FpMatrix action_of(const std::vector<u32>& x) const;
    /// Asserts act is a unital algebra homomorphism (all basis pairs).
    void validate() const;
};

/// Exact data equality (same algebra object, same action matrices).
bool modules_equal(const Module& a, const Module& b);

Module make_module(const Algebra& A, std::vector<FpMatrix> act);  // validates
Module zero_module(const Algebra& A);
Module regular_module(const Algebra& A);
/// e_v * A for the v-th listed idempotent (indecomposable projective when the
/// idempotent list is primitive).
Module indec_projective(const Algebra& A, int v);

/// Morphism f: src -> tgt as a dim_src x dim_tgt matrix applied on the right
/// of row vectors; equivariance: act_src(b) * mat == mat * act_tgt(b).
struct ModuleMorphism {
    Module src, tgt;
    FpMatrix mat;

    void validate() const;  // shape + equivariance on all basis elements
};

ModuleMorphism make_morphism(Module src, Module tgt, FpMatrix mat);  // validates
ModuleMorphism identity_morphism(const Module& M);
ModuleMorphism zero_morphism(const Module& src, const Module& tgt);
ModuleMorphism compose(const ModuleMorphism& f, const ModuleMorphism& g);  // f then g

/// Rows: canonical basis of Hom(M, N), each row a flattened (row-major)
/// dim_M x dim_N matrix.
FpMatrix hom_basis(const Module& M, const Module& N);
ModuleMorphism hom_element(const Module& M, const Module& N, const FpMatrix& basis, int row);
std::vector<u32> flatten_morphism(const ModuleMorphism& f);

struct SubQuotient {
    Module module;
    ModuleMorphism map;  // inclusion (sub) or projection (quotient)
};

/// Smallest action-invariant row space containing the given rows.
FpMatrix invariant_span(const Module& M, const FpMatrix& rows);
SubQuotient submodule(const Module& M, const FpMatrix& invariant_rows);
/// Quotient by an invariant row space. Quotient of the zero subspace returns
/// the module itself with the identity projection (exact equality).
SubQuotient quotient(const Module& M, const FpMatrix& invariant_rows);

SubQuotient kernel(const ModuleMorphism& f);
SubQuotient image(const ModuleMorphism& f);
SubQuotient cokernel(const ModuleMorphism& f);

struct SumData {
    Module sum;
    std::vector<ModuleMorphism> incl, proj;
};
SumData direct_sum(const std::vector<Module>& parts);

/// M * J for the radical J.
FpMatrix radical_rows(const Module& M);
/// M * J^i (i = 0 gives the full space).
FpMatrix radical_power_rows(const Module& M, int i);
/// Semisimple top M / MJ.
SubQuotient top_of(const Module& M);

struct CoverData {
    Module cover;          // direct sum of indecomposable projectives
    ModuleMorphism epi;    // cover -> M, kernel inside cover * J (verified)
    std::vector<int> vertex_of_component;
};
/// Projective cover (requires a primitive idempotent list).
CoverData projective_cover(const Module& M);

struct Presentation {
    Module P1, P0;
    ModuleMorphism d;    // P1 -> P0
    ModuleMorphism eps;  // P0 -> M
};
/// Minimal projective presentation P1 -> P0 -> M -> 0.
Presentation projective_presentation(const Module& M);

struct Approximation {
    Module source;          // gen^h
    ModuleMorphism map;     // source -> N; every map gen -> N factors through it
    std::vector<int> used;  // indices into hom_basis(gen, N) kept as components
};
/// Universal map gen^h -> N with h = dim Hom(gen, N).
Approximation right_approximation(const Module& gen, const Module& N);
/// Greedy irredundant subset of the components (still an approximation).
Approximation irredundant_right_approximation(const Module& gen, const Module& N);

/// g with g; e = f, searched inside Hom(f.src, e.src).
std::optional<ModuleMorphism> factor_through(const ModuleMorphism& f, const ModuleMorphism& e);
/// g with m; g = f, searched inside Hom(m.tgt, f.tgt).
std::optional<ModuleMorphism> factor_over(const ModuleMorphism& f, const ModuleMorphism& m);

/// Split-epi witness that N lies in add(gen): a section of the universal
/// approximation. nullopt when N is not a summand of any gen^h.
struct AddWitness {
    Approximation approx;
    ModuleMorphism section;  // N -> source, section; approx.map = id_N
};
std::optional<AddWitness> in_add_witness(const Module& gen, const Module& N);

/// Projective dimension via iterated cover kernels; -1 if the cap is hit.
int projective_dimension(const Module& M, int cap);
/// max over simple tops of the listed idempotents; cap defaults to 2 dim + 2.
int syzygy_gldim(const Algebra& A, int cap = -1);

/// F_p-dual as a module over the opposite algebra (same basis labels).
Module dual_module(const Module& M, const Algebra& Aop);
/// Contravariant transport of morphisms along dual_module.
ModuleMorphism dual_morphism(const ModuleMorphism& f, const Algebra& Aop);

bool is_projective(const Module& M);
bool is_injective(const Module& M, const Algebra& Aop);
bool is_self_injective(const Algebra& A);

struct StableHom {
    FpMatrix reps;          // rows: flattened canonical representatives
    FpMatrix through_proj;  // rows: basis of the maps factoring through a projective
};
StableHom stable_hom_basis(const Module& M, const Module& N);

std::optional<ModuleMorphism> module_iso_search(const Module& M, const Module& N, u64 seed,
                                                int tries = 64);

}  // namespace funcat
