#include "funcat/corpus.hpp"

namespace funcat {

Module random_module(const Algebra& A, std::mt19937_64& rng, int max_summands) {
    int nv = int(A.idempotents().size());
    if (nv == 0 || A.dim() == 0) return zero_module(A);
    int parts = 1 + int(rng() % u64(max_summands));
    std::vector<Module> ps;
    for (int i = 0; i < parts; ++i) ps.push_back(indec_projective(A, int(rng() % u64(nv))));
    Module Q = direct_sum(ps).sum;
    Fp f = A.field();
    int nrows = int(rng() % u64(Q.dim + 1));
    FpMatrix rows(nrows, Q.dim, f);
    for (int r = 0; r < nrows; ++r)
        for (int c = 0; c < Q.dim; ++c) rows.set(r, c, u32(rng() % f.p));
    return quotient(Q, invariant_span(Q, rows)).module;
}

FpFunctor random_fp_functor(const SubcatGen& X, std::mt19937_64& rng, int max_parts) {
    auto pick = [&](int lo) {
        int parts = lo + int(rng() % u64(max_parts - lo + 1));
        std::vector<int> idx;
        for (int i = 0; i < parts; ++i) idx.push_back(int(rng() % u64(X.summand_count())));
        return X.certified_sum(idx);
    };
    CertifiedModule c1 = pick(0);
    CertifiedModule c0 = pick(1);
    Fp f = X.lambda().field();
    FpMatrix H = hom_basis(c1.mod, c0.mod);
    FpMatrix d(c1.mod.dim, c0.mod.dim, f);
    for (int r = 0; r < H.rows(); ++r) {
        u32 c = u32(rng() % f.p);
        if (c) d = d + unflatten_row(H.row_ptr(r), c1.mod.dim, c0.mod.dim, f).scaled(c);
    }
    return make_functor(X, std::move(c1), std::move(c0), std::move(d));
}

FunctorMorphism random_fp_morphism(const FpFunctor& F, const FpFunctor& G, const FpHom& H,
                                   std::mt19937_64& rng) {
    Fp f = F.cat().lambda().field();
    FpMatrix l1(F.x1.mod.dim, G.x1.mod.dim, f);
    FpMatrix l0(F.x0.mod.dim, G.x0.mod.dim, f);
    bool any = false;
    for (const FunctorMorphism& b : H.basis) {
        u32 c = u32(rng() % f.p);
        if (!c) continue;
        any = true;
        l1 = l1 + b.l1.mat.scaled(c);
        l0 = l0 + b.l0.mat.scaled(c);
    }
    if (!any) return functor_zero_morphism(F, G);
    return make_functor_morphism(F, G, make_morphism(F.x1.mod, G.x1.mod, std::move(l1)),
                                 make_morphism(F.x0.mod, G.x0.mod, std::move(l0)));
}

}  // namespace funcat
