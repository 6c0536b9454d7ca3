#pragma once

#include <random>

#include "funcat/fpfun.hpp"

namespace funcat {

/// Random quotient of a small sum of indecomposable projectives; every module
/// arises this way. Deterministic in the rng state.
Module random_module(const Algebra& A, std::mt19937_64& rng, int max_summands = 3);

/// Random fp functor: random certified sums of subcategory summands joined by
/// a random hom combination.
FpFunctor random_fp_functor(const SubcatGen& X, std::mt19937_64& rng, int max_parts = 2);

/// Random morphism in the fp_hom span (zero when the hom space vanishes).
FunctorMorphism random_fp_morphism(const FpFunctor& F, const FpFunctor& G, const FpHom& H,
                                   std::mt19937_64& rng);

}  // namespace funcat
