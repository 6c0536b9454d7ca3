#include "funcat/fpfun.hpp"

#include <random>
#include <utility>

namespace funcat {

namespace {

std::vector<u32> fl(const FpMatrix& m) { return m.data(); }

ModuleMorphism must(std::optional<ModuleMorphism> o, const char* what) {
    require(bool(o), std::string("required factorization missing: ") + what);
    return std::move(*o);
}

void check_certificate(const SubcatGen& X, const CertifiedModule& cm, const char* ctx) {
    require(cm.mod.alg == &X.lambda(), std::string(ctx) + ": module over a different base algebra");
    require(cm.from_power.src.dim == X.gen().dim * cm.power,
            std::string(ctx) + ": certificate power mismatch");
    ModuleMorphism idc = compose(cm.section, cm.from_power);
    require(idc.mat == FpMatrix::identity(cm.mod.dim, X.lambda().field()),
            std::string(ctx) + ": certificate is not split");
}

/// Matrix of the contravariant value map G(A) -> G(B) induced by u: B -> A,
/// in the canonical value coordinates.
FpMatrix value_precomposition(const FpFunctor& G, const Module& A, const FpMatrix& umat,
                              const ValueAt& va_a, const ValueAt& va_b) {
    Fp f = G.cat().lambda().field();
    RowSolver hb(va_b.hom);
    FpMatrix out(va_a.dim(), va_b.dim(), f);
    for (int i = 0; i < va_a.dim(); ++i) {
        std::vector<u32> amb(va_a.q.sec.row_ptr(i), va_a.q.sec.row_ptr(i) + va_a.hom.rows());
        std::vector<u32> flm = row_times_matrix(amb, va_a.hom);
        FpMatrix m = unflatten_row(flm.data(), A.dim, G.x0.mod.dim, f);
        auto c = hb.solve(fl(umat * m));
        require(bool(c), "value map: composite is not a morphism");
        std::vector<u32> val = row_times_matrix(*c, va_b.q.proj);
        for (size_t j = 0; j < val.size(); ++j) out.set(i, int(j), val[j]);
    }
    return out;
}

/// Representative morphism N -> x0 of a value class given in canonical
/// coordinates.
FpMatrix value_representative(const ValueAt& V, const std::vector<u32>& coords, int ndim,
                              int tdim, Fp f) {
    std::vector<u32> amb = row_times_matrix(coords, V.q.sec);
    std::vector<u32> flm = row_times_matrix(amb, V.hom);
    return unflatten_row(flm.data(), ndim, tdim, f);
}

/// Certificate for the source of an approximation (always a literal power of
/// gen, including the zero power).
CertifiedModule certify_power_source(const SubcatGen& X, const Approximation& a) {
    CertifiedModule cm = X.certified_gen_power(int(a.used.size()));
    require(modules_equal(cm.mod, a.source), "approximation source is not the expected power");
    return cm;
}

/// Certificate for a projective cover: match each indecomposable component to
/// a subcategory summand when possible, otherwise run the generic search.
CertifiedModule certify_cover(const SubcatGen& X, const CoverData& c) {
    if (c.vertex_of_component.empty()) return X.certified_gen_power(0);
    int nv = int(X.lambda().idempotents().size());
    std::vector<int> vertex_summand(size_t(nv), -1);
    bool all = true;
    for (int v = 0; v < nv; ++v) {
        Module pv = indec_projective(X.lambda(), v);
        for (int t = 0; t < X.summand_count(); ++t)
            if (modules_equal(X.summand(t), pv)) {
                vertex_summand[size_t(v)] = t;
                break;
            }
        if (vertex_summand[size_t(v)] < 0) all = false;
    }
    if (all) {
        std::vector<int> idx;
        for (int v : c.vertex_of_component) idx.push_back(vertex_summand[size_t(v)]);
        CertifiedModule cm = X.certified_sum(idx);
        if (modules_equal(cm.mod, c.cover)) return cm;
    }
    auto o = X.certify(c.cover);
    require(bool(o), "projective cover must lie in the subcategory");
    return std::move(*o);
}

/// Shared core of va_rho_of: transport f: M -> N along precomputed data.
FunctorMorphism varho_transport(const VaRhoData& Rs, const VaRhoData& Rt,
                                const ModuleMorphism& f) {
    ModuleMorphism l0 = must(factor_through(compose(Rs.eval, f), Rt.eval),
                             "restricted Hom transport (degree 0)");
    ModuleMorphism l1 = must(factor_through(compose(Rs.F.d, l0), Rt.F.d),
                             "restricted Hom transport (degree 1)");
    return make_functor_morphism(Rs.F, Rt.F, std::move(l1), std::move(l0));
}

/// Rank bookkeeping for one four-term sequence 0 -> A -> B -> C -> D -> 0
/// evaluated at a test module.
void check_four_term_at(const FunctorMorphism& ia, const FunctorMorphism& bc,
                        const FunctorMorphism& pd, const Module& N, const char* ctx) {
    FpMatrix m1 = value_map_at(ia, N);
    FpMatrix m2 = value_map_at(bc, N);
    FpMatrix m3 = value_map_at(pd, N);
    require((m1 * m2).is_zero(), std::string(ctx) + ": consecutive maps do not vanish (1,2)");
    require((m2 * m3).is_zero(), std::string(ctx) + ": consecutive maps do not vanish (2,3)");
    int r1 = m1.rank(), r2 = m2.rank(), r3 = m3.rank();
    require(r1 == m1.rows(), std::string(ctx) + ": leftmost map is not injective");
    require(r1 + r2 == m2.rows(), std::string(ctx) + ": not exact at the second term");
    require(r2 + r3 == m3.rows(), std::string(ctx) + ": not exact at the third term");
    require(r3 == m3.cols(), std::string(ctx) + ": rightmost map is not surjective");
}

}  // namespace

FpFunctor make_functor(const SubcatGen& X, CertifiedModule x1, CertifiedModule x0, FpMatrix d) {
    check_certificate(X, x1, "functor domain term");
    check_certificate(X, x0, "functor codomain term");
    FpFunctor F;
    F.subcat = &X;
    F.d = make_morphism(x1.mod, x0.mod, std::move(d));
    F.x1 = std::move(x1);
    F.x0 = std::move(x0);
    return F;
}

FpFunctor representable_functor(const SubcatGen& X, CertifiedModule x0) {
    FpMatrix d(0, x0.mod.dim, X.lambda().field());
    return make_functor(X, X.certified_gen_power(0), std::move(x0), std::move(d));
}

FpFunctor zero_fp_functor(const SubcatGen& X) {
    return representable_functor(X, X.certified_gen_power(0));
}

bool functor_data_equal(const FpFunctor& F, const FpFunctor& G) {
    return F.subcat == G.subcat && modules_equal(F.x1.mod, G.x1.mod) &&
           modules_equal(F.x0.mod, G.x0.mod) && F.d.mat == G.d.mat;
}

bool is_zero_functor(const FpFunctor& F) { return value_at(F, F.cat().gen()).dim() == 0; }

FunctorMorphism make_functor_morphism(FpFunctor src, FpFunctor tgt, ModuleMorphism l1,
                                      ModuleMorphism l0) {
    require(src.subcat == tgt.subcat, "functor morphism: functors on different subcategories");
    require(modules_equal(l1.src, src.x1.mod) && modules_equal(l1.tgt, tgt.x1.mod),
            "functor morphism: degree 1 lift endpoints");
    require(modules_equal(l0.src, src.x0.mod) && modules_equal(l0.tgt, tgt.x0.mod),
            "functor morphism: degree 0 lift endpoints");
    require(compose(src.d, l0).mat == compose(l1, tgt.d).mat,
            "functor morphism: lifts do not commute with the presentations");
    FunctorMorphism eta;
    eta.src = std::move(src);
    eta.tgt = std::move(tgt);
    eta.l1 = std::move(l1);
    eta.l0 = std::move(l0);
    return eta;
}

FunctorMorphism functor_identity(const FpFunctor& F) {
    return make_functor_morphism(F, F, identity_morphism(F.x1.mod), identity_morphism(F.x0.mod));
}

FunctorMorphism functor_zero_morphism(const FpFunctor& F, const FpFunctor& G) {
    return make_functor_morphism(F, G, zero_morphism(F.x1.mod, G.x1.mod),
                                 zero_morphism(F.x0.mod, G.x0.mod));
}

FunctorMorphism functor_compose(const FunctorMorphism& a, const FunctorMorphism& b) {
    require(functor_data_equal(a.tgt, b.src), "functor composition: middle functors differ");
    return make_functor_morphism(a.src, b.tgt, compose(a.l1, b.l1), compose(a.l0, b.l0));
}

bool functor_morphism_is_zero(const FunctorMorphism& eta) {
    return factor_through(eta.l0, eta.tgt.d).has_value();
}

bool functor_morphism_eq(const FunctorMorphism& a, const FunctorMorphism& b) {
    require(functor_data_equal(a.src, b.src) && functor_data_equal(a.tgt, b.tgt),
            "functor morphism comparison: endpoint functors differ");
    ModuleMorphism diff = make_morphism(a.l0.src, a.l0.tgt, a.l0.mat - b.l0.mat);
    return factor_through(diff, a.tgt.d).has_value();
}

bool functor_morphism_is_iso(const FunctorMorphism& eta) {
    FpMatrix m = value_map_at(eta, eta.src.cat().gen());
    if (m.rows() != m.cols()) return false;
    return m.try_invert().has_value();
}

ValueAt value_at(const FpFunctor& F, const Module& N) {
    require(N.alg == &F.cat().lambda(), "functor value: module over a different base algebra");
    Fp f = N.field();
    ValueAt out;
    out.hom = hom_basis(N, F.x0.mod);
    FpMatrix h1 = hom_basis(N, F.x1.mod);
    RowSolver hs(out.hom);
    FpMatrix img(h1.rows(), out.hom.rows(), f);
    for (int r = 0; r < h1.rows(); ++r) {
        FpMatrix m = unflatten_row(h1.row_ptr(r), N.dim, F.x1.mod.dim, f);
        auto c = hs.solve(fl(m * F.d.mat));
        require(bool(c), "functor value: presentation image escaped the hom space");
        for (size_t j = 0; j < c->size(); ++j) img.set(r, int(j), (*c)[j]);
    }
    out.q = linear_quotient(out.hom.rows(), img, f);
    return out;
}

FpMatrix value_map_at(const FunctorMorphism& eta, const Module& N) {
    ValueAt vs = value_at(eta.src, N);
    ValueAt vt = value_at(eta.tgt, N);
    Fp f = N.field();
    RowSolver ht(vt.hom);
    FpMatrix out(vs.dim(), vt.dim(), f);
    for (int i = 0; i < vs.dim(); ++i) {
        std::vector<u32> amb(vs.q.sec.row_ptr(i), vs.q.sec.row_ptr(i) + vs.hom.rows());
        std::vector<u32> flm = row_times_matrix(amb, vs.hom);
        FpMatrix m = unflatten_row(flm.data(), N.dim, eta.src.x0.mod.dim, f);
        auto c = ht.solve(fl(m * eta.l0.mat));
        require(bool(c), "value map: image is not a morphism");
        std::vector<u32> val = row_times_matrix(*c, vt.q.proj);
        for (size_t j = 0; j < val.size(); ++j) out.set(i, int(j), val[j]);
    }
    return out;
}

EvFunctor ev_functor(const FpFunctor& F) {
    const SubcatGen& X = F.cat();
    SubQuotient c = cokernel(X.ev_of_map(F.d));
    return EvFunctor{c.module, c.map};
}

ModuleMorphism ev_functor_map(const FunctorMorphism& eta) {
    const SubcatGen& X = eta.src.cat();
    EvFunctor es = ev_functor(eta.src);
    EvFunctor et = ev_functor(eta.tgt);
    return must(factor_over(compose(X.ev_of_map(eta.l0), et.proj), es.proj),
                "shadow of a functor morphism");
}

SubQuotient va_cokernel(const FpFunctor& F) { return cokernel(F.d); }

Module va(const FpFunctor& F) { return va_cokernel(F).module; }

ModuleMorphism va_of(const FunctorMorphism& eta) {
    SubQuotient cs = va_cokernel(eta.src);
    SubQuotient ct = va_cokernel(eta.tgt);
    return must(factor_over(compose(eta.l0, ct.map), cs.map), "induced map on evaluations");
}

bool in_mod0(const FpFunctor& F) {
    bool surj = F.d.mat.rank() == F.x0.mod.dim;
    require(surj == (va(F).dim == 0), "vanishing test: rank and cokernel disagree");
    return surj;
}

VaLambdaData va_lambda_data(const SubcatGen& X, const Module& M) {
    require(M.alg == &X.lambda(), "projectivization: module over a different base algebra");
    require(X.contains_projectives(), "projectivization: projectives not inside add(gen)");
    if (M.dim == 0) {
        FpFunctor F = zero_fp_functor(X);
        ModuleMorphism eps = zero_morphism(F.x0.mod, M);
        return VaLambdaData{std::move(F), std::move(eps)};
    }
    CoverData c0 = projective_cover(M);
    CertifiedModule cm0 = certify_cover(X, c0);
    SubQuotient k0 = kernel(c0.epi);
    if (k0.module.dim == 0) {
        FpFunctor F = representable_functor(X, std::move(cm0));
        return VaLambdaData{std::move(F), c0.epi};
    }
    CoverData c1 = projective_cover(k0.module);
    CertifiedModule cm1 = certify_cover(X, c1);
    ModuleMorphism d = compose(c1.epi, k0.map);
    FpFunctor F = make_functor(X, std::move(cm1), std::move(cm0), d.mat);
    return VaLambdaData{std::move(F), c0.epi};
}

FpFunctor va_lambda(const SubcatGen& X, const Module& M) { return va_lambda_data(X, M).F; }

VaRhoData va_rho_data(const SubcatGen& X, const Module& M) {
    require(M.alg == &X.lambda(), "restricted Hom: module over a different base algebra");
    if (M.dim == 0) {
        FpFunctor F = zero_fp_functor(X);
        ModuleMorphism eval = zero_morphism(F.x0.mod, M);
        return VaRhoData{std::move(F), std::move(eval)};
    }
    if (auto cm = X.certify(M)) {
        // M is already in the subcategory: the identity is the minimal right
        // approximation and the functor is representable on the nose.
        VaRhoData out;
        out.F = representable_functor(X, std::move(*cm));
        out.eval = identity_morphism(M);
        return out;
    }
    Approximation a0 = irredundant_right_approximation(X.gen(), M);
    CertifiedModule cm0 = certify_power_source(X, a0);
    SubQuotient K = kernel(a0.map);
    VaRhoData out;
    if (K.module.dim == 0) {
        out.F = representable_functor(X, std::move(cm0));
        out.eval = a0.map;
    } else {
        Approximation a1 = irredundant_right_approximation(X.gen(), K.module);
        CertifiedModule cm1 = certify_power_source(X, a1);
        ModuleMorphism d = compose(a1.map, K.map);
        out.F = make_functor(X, std::move(cm1), std::move(cm0), d.mat);
        out.eval = a0.map;
    }
    // exactness of the presentation after evaluating at gen
    ModuleMorphism e0 = X.ev_of_map(out.eval);
    require(e0.mat.rank() == e0.tgt.dim, "restricted Hom: approximation is not surjective at gen");
    ModuleMorphism ed = X.ev_of_map(out.F.d);
    require(ed.mat.rank() == e0.src.dim - e0.tgt.dim,
            "restricted Hom: presentation is not exact at gen");
    return out;
}

FpFunctor va_rho(const SubcatGen& X, const Module& M) { return va_rho_data(X, M).F; }

FunctorMorphism va_rho_of(const SubcatGen& X, const ModuleMorphism& f) {
    VaRhoData rs = va_rho_data(X, f.src);
    VaRhoData rt = va_rho_data(X, f.tgt);
    return varho_transport(rs, rt, f);
}

ModuleMorphism valambda_counit(const SubcatGen& X, const Module& M) {
    VaLambdaData L = va_lambda_data(X, M);
    SubQuotient c = va_cokernel(L.F);
    ModuleMorphism g = must(factor_over(L.eps, c.map), "counit on modules");
    require(g.mat.rows() == g.mat.cols(), "counit on modules: dimensions differ");
    require(g.mat.try_invert().has_value(), "counit on modules: not invertible");
    return g;
}

ModuleMorphism varho_unit(const SubcatGen& X, const Module& M) {
    VaRhoData R = va_rho_data(X, M);
    SubQuotient c = va_cokernel(R.F);
    ModuleMorphism g = must(factor_over(R.eval, c.map), "unit on modules");
    require(g.mat.rows() == g.mat.cols(), "unit on modules: dimensions differ");
    auto inv = g.mat.try_invert();
    require(inv.has_value(), "unit on modules: not invertible");
    return make_morphism(M, c.module, std::move(*inv));
}

FunctorMorphism unit_map(const FpFunctor& F) {
    const SubcatGen& X = F.cat();
    SubQuotient c = va_cokernel(F);
    VaRhoData R = va_rho_data(X, c.module);
    ModuleMorphism l0 = must(factor_through(c.map, R.eval), "unit lift (degree 0)");
    ModuleMorphism l1 = must(factor_through(compose(F.d, l0), R.F.d), "unit lift (degree 1)");
    return make_functor_morphism(F, R.F, std::move(l1), std::move(l0));
}

FunctorMorphism counit_map(const FpFunctor& F) {
    const SubcatGen& X = F.cat();
    SubQuotient c = va_cokernel(F);
    VaLambdaData L = va_lambda_data(X, c.module);
    ModuleMorphism l0 = must(factor_through(L.eps, c.map), "counit lift (degree 0)");
    ModuleMorphism l1 = must(factor_through(compose(L.F.d, l0), F.d), "counit lift (degree 1)");
    return make_functor_morphism(L.F, F, std::move(l1), std::move(l0));
}

FpHom fp_hom(const FpFunctor& F, const FpFunctor& G) {
    require(F.subcat == G.subcat, "morphism space: functors on different subcategories");
    const SubcatGen& X = F.cat();
    Fp f = X.lambda().field();
    FpHom out;
    out.at_x0 = value_at(G, F.x0.mod);
    ValueAt at_x1 = value_at(G, F.x1.mod);
    FpMatrix mapmat = value_precomposition(G, F.x0.mod, F.d.mat, out.at_x0, at_x1);
    out.kernel_rows = mapmat.transpose().kernel_basis();
    for (int r = 0; r < out.kernel_rows.rows(); ++r) {
        std::vector<u32> w(out.kernel_rows.row_ptr(r),
                           out.kernel_rows.row_ptr(r) + out.kernel_rows.cols());
        FpMatrix l0mat = value_representative(out.at_x0, w, F.x0.mod.dim, G.x0.mod.dim, f);
        ModuleMorphism l0 = make_morphism(F.x0.mod, G.x0.mod, std::move(l0mat));
        ModuleMorphism l1 =
            must(factor_through(compose(F.d, l0), G.d), "morphism space basis lift");
        out.basis.push_back(make_functor_morphism(F, G, std::move(l1), std::move(l0)));
    }
    return out;
}

std::vector<u32> fp_hom_coords(const FpHom& H, const FunctorMorphism& eta) {
    auto amb = RowSolver(H.at_x0.hom).solve(fl(eta.l0.mat));
    require(bool(amb), "morphism coordinates: lift is not in the hom space");
    std::vector<u32> val = row_times_matrix(*amb, H.at_x0.q.proj);
    auto c = RowSolver(H.kernel_rows).solve(val);
    require(bool(c), "morphism coordinates: value class is not in the morphism space");
    return *c;
}

std::optional<FunctorMorphism> functor_factor_through(const FunctorMorphism& eta,
                                                      const FunctorMorphism& nu) {
    require(functor_data_equal(eta.tgt, nu.tgt), "functor factorization: targets differ");
    if (functor_morphism_is_zero(eta)) return functor_zero_morphism(eta.src, nu.src);
    FpHom H = fp_hom(eta.src, nu.src);
    if (H.dim() == 0) return std::nullopt;
    FpHom H2 = fp_hom(eta.src, nu.tgt);
    Fp f = eta.l0.mat.field();
    FpMatrix rows(H.dim(), H2.dim(), f);
    for (int r = 0; r < H.dim(); ++r) {
        std::vector<u32> c = fp_hom_coords(H2, functor_compose(H.basis[size_t(r)], nu));
        for (size_t j = 0; j < c.size(); ++j) rows.set(r, int(j), c[j]);
    }
    auto sol = RowSolver(rows).solve(fp_hom_coords(H2, eta));
    if (!sol) return std::nullopt;
    FpMatrix l1(eta.src.x1.mod.dim, nu.src.x1.mod.dim, f);
    FpMatrix l0(eta.src.x0.mod.dim, nu.src.x0.mod.dim, f);
    for (int r = 0; r < H.dim(); ++r)
        if ((*sol)[size_t(r)]) {
            l1 = l1 + H.basis[size_t(r)].l1.mat.scaled((*sol)[size_t(r)]);
            l0 = l0 + H.basis[size_t(r)].l0.mat.scaled((*sol)[size_t(r)]);
        }
    return make_functor_morphism(eta.src, nu.src,
                                 make_morphism(eta.src.x1.mod, nu.src.x1.mod, std::move(l1)),
                                 make_morphism(eta.src.x0.mod, nu.src.x0.mod, std::move(l0)));
}

std::optional<FunctorMorphism> functor_iso_search(const FpFunctor& F, const FpFunctor& G,
                                                  u64 seed, int tries) {
    int vf = value_at(F, F.cat().gen()).dim();
    int vg = value_at(G, G.cat().gen()).dim();
    if (vf != vg) return std::nullopt;
    if (vf == 0) return functor_zero_morphism(F, G);
    FpHom H = fp_hom(F, G);
    if (H.dim() == 0) return std::nullopt;
    for (const FunctorMorphism& eta : H.basis)
        if (functor_morphism_is_iso(eta)) return eta;
    Fp f = F.cat().lambda().field();
    std::mt19937_64 rng(seed);
    for (int t = 0; t < tries; ++t) {
        FpMatrix l0(F.x0.mod.dim, G.x0.mod.dim, f);
        FpMatrix l1(F.x1.mod.dim, G.x1.mod.dim, f);
        for (const FunctorMorphism& eta : H.basis) {
            u32 c = u32(rng() % f.p);
            l0 = l0 + eta.l0.mat.scaled(c);
            l1 = l1 + eta.l1.mat.scaled(c);
        }
        FunctorMorphism cand = make_functor_morphism(
            F, G, make_morphism(F.x1.mod, G.x1.mod, std::move(l1)),
            make_morphism(F.x0.mod, G.x0.mod, std::move(l0)));
        if (functor_morphism_is_iso(cand)) return cand;
    }
    return std::nullopt;
}

FunctorKernel functor_kernel(const FunctorMorphism& eta) {
    const SubcatGen& X = eta.src.cat();
    const FpFunctor& F = eta.src;
    const FpFunctor& G = eta.tgt;
    // weak pullback of l0 against the target presentation
    SumData s1 = direct_sum({F.x0.mod, G.x1.mod});
    ModuleMorphism t1 = make_morphism(
        s1.sum, G.x0.mod, FpMatrix::vstack({eta.l0.mat, G.d.mat.negated()}));
    SubQuotient pb1 = kernel(t1);
    Approximation a0 = irredundant_right_approximation(X.gen(), pb1.module);
    CertifiedModule w0 = certify_power_source(X, a0);
    ModuleMorphism into1 = compose(a0.map, pb1.map);
    ModuleMorphism e0 = compose(into1, s1.proj[0]);   // w0 -> F.x0
    // weak pullback of e0 against the source presentation
    SumData s2 = direct_sum({w0.mod, F.x1.mod});
    ModuleMorphism t2 =
        make_morphism(s2.sum, F.x0.mod, FpMatrix::vstack({e0.mat, F.d.mat.negated()}));
    SubQuotient pb2 = kernel(t2);
    Approximation a1 = irredundant_right_approximation(X.gen(), pb2.module);
    CertifiedModule w1 = certify_power_source(X, a1);
    ModuleMorphism into2 = compose(a1.map, pb2.map);
    ModuleMorphism dk = compose(into2, s2.proj[0]);   // w1 -> w0
    ModuleMorphism li = compose(into2, s2.proj[1]);   // w1 -> F.x1
    FunctorKernel out;
    out.ker = make_functor(X, std::move(w1), std::move(w0), dk.mat);
    out.incl = make_functor_morphism(out.ker, F, std::move(li), std::move(e0));
    FpMatrix at_gen = value_map_at(out.incl, X.gen());
    require(at_gen.rank() == at_gen.rows(), "kernel inclusion is not injective at gen");
    return out;
}

FunctorCokernel functor_cokernel(const FunctorMorphism& eta) {
    const SubcatGen& X = eta.src.cat();
    const FpFunctor& F = eta.src;
    const FpFunctor& G = eta.tgt;
    CertifiedModule c1 = certified_pair(X, F.x0, G.x1);
    FpMatrix d = FpMatrix::vstack({eta.l0.mat, G.d.mat});
    FunctorCokernel out;
    out.coker = make_functor(X, std::move(c1), G.x0, std::move(d));
    Fp f = X.lambda().field();
    FpMatrix inc2 = FpMatrix::hstack(
        {FpMatrix(G.x1.mod.dim, F.x0.mod.dim, f), FpMatrix::identity(G.x1.mod.dim, f)});
    ModuleMorphism l1 = make_morphism(G.x1.mod, out.coker.x1.mod, std::move(inc2));
    out.proj = make_functor_morphism(G, out.coker, std::move(l1),
                                     identity_morphism(G.x0.mod));
    return out;
}

UnitCounitSequences unit_counit_sequences(const FpFunctor& F) {
    const SubcatGen& X = F.cat();
    UnitCounitSequences out;
    out.unit = unit_map(F);
    out.mid1 = out.unit.tgt;
    FunctorKernel k1 = functor_kernel(out.unit);
    out.f0 = k1.ker;
    out.incl0 = k1.incl;
    FunctorCokernel c1 = functor_cokernel(out.unit);
    out.f1 = c1.coker;
    out.proj1 = c1.proj;
    out.counit = counit_map(F);
    out.mid2 = out.counit.src;
    FunctorKernel k2 = functor_kernel(out.counit);
    out.f2 = k2.ker;
    out.incl2 = k2.incl;
    FunctorCokernel c2 = functor_cokernel(out.counit);
    out.f3 = c2.coker;
    out.proj3 = c2.proj;
    require(in_mod0(out.f0), "unit sequence: kernel term does not vanish on the algebra");
    require(in_mod0(out.f1), "unit sequence: cokernel term does not vanish on the algebra");
    require(in_mod0(out.f2), "counit sequence: kernel term does not vanish on the algebra");
    require(in_mod0(out.f3), "counit sequence: cokernel term does not vanish on the algebra");
    Module reg = regular_module(X.lambda());
    check_four_term_at(out.incl0, out.unit, out.proj1, X.gen(), "unit sequence at gen");
    check_four_term_at(out.incl0, out.unit, out.proj1, reg, "unit sequence at the algebra");
    check_four_term_at(out.incl2, out.counit, out.proj3, X.gen(), "counit sequence at gen");
    check_four_term_at(out.incl2, out.counit, out.proj3, reg, "counit sequence at the algebra");
    return out;
}

SerreAdjoints serre_adjoints(const FpFunctor& F) {
    SerreAdjoints out;
    FunctorKernel k = functor_kernel(unit_map(F));
    out.i_rho = k.ker;
    out.incl = k.incl;
    FunctorCokernel c = functor_cokernel(counit_map(F));
    out.i_lambda = c.coker;
    out.proj = c.proj;
    require(in_mod0(out.i_rho), "right adjoint part does not vanish on the algebra");
    require(in_mod0(out.i_lambda), "left adjoint part does not vanish on the algebra");
    return out;
}

AdjunctionCheck adjunction_check_left(const Module& M, const FpFunctor& F) {
    const SubcatGen& X = F.cat();
    VaLambdaData L = va_lambda_data(X, M);
    SubQuotient c = va_cokernel(F);
    FpMatrix hb = hom_basis(M, c.module);
    FpHom H = fp_hom(L.F, F);
    require(hb.rows() == H.dim(), "left adjunction: dimensions differ");
    Fp f = X.lambda().field();
    FpMatrix mat(hb.rows(), H.dim(), f);
    for (int r = 0; r < hb.rows(); ++r) {
        ModuleMorphism g = compose(L.eps, hom_element(M, c.module, hb, r));
        ModuleMorphism l0 = must(factor_through(g, c.map), "left adjunction lift (degree 0)");
        ModuleMorphism l1 =
            must(factor_through(compose(L.F.d, l0), F.d), "left adjunction lift (degree 1)");
        FunctorMorphism eta =
            make_functor_morphism(L.F, F, std::move(l1), std::move(l0));
        std::vector<u32> co = fp_hom_coords(H, eta);
        for (size_t j = 0; j < co.size(); ++j) mat.set(r, int(j), co[j]);
    }
    require(mat.try_invert().has_value(), "left adjunction: correspondence is not bijective");
    return AdjunctionCheck{hb.rows(), std::move(mat)};
}

AdjunctionCheck adjunction_check_right(const FpFunctor& F, const Module& M) {
    const SubcatGen& X = F.cat();
    SubQuotient c = va_cokernel(F);
    VaRhoData rs = va_rho_data(X, c.module);
    VaRhoData rt = va_rho_data(X, M);
    FunctorMorphism u = unit_map(F);
    FpMatrix hb = hom_basis(c.module, M);
    FpHom H = fp_hom(F, rt.F);
    require(hb.rows() == H.dim(), "right adjunction: dimensions differ");
    Fp f = X.lambda().field();
    FpMatrix mat(hb.rows(), H.dim(), f);
    for (int r = 0; r < hb.rows(); ++r) {
        ModuleMorphism g = hom_element(c.module, M, hb, r);
        FunctorMorphism eta = functor_compose(u, varho_transport(rs, rt, g));
        std::vector<u32> co = fp_hom_coords(H, eta);
        for (size_t j = 0; j < co.size(); ++j) mat.set(r, int(j), co[j]);
    }
    require(mat.try_invert().has_value(), "right adjunction: correspondence is not bijective");
    return AdjunctionCheck{hb.rows(), std::move(mat)};
}

FpResolution fp_resolution(const FpFunctor& F, int cap) {
    require(cap >= 1, "resolution: cap must be positive");
    const SubcatGen& X = F.cat();
    FpResolution out;
    if (is_zero_functor(F)) {
        out.complete = true;
        return out;
    }
    out.terms.push_back(F.x0);
    if (F.x1.mod.dim == 0) {
        out.complete = true;
        return out;
    }
    if (int(out.terms.size()) >= cap) return out;
    out.terms.push_back(F.x1);
    out.maps.push_back(F.d);
    SubQuotient cur = kernel(F.d);
    while (true) {
        if (cur.module.dim == 0) {
            out.complete = true;
            return out;
        }
        if (int(out.terms.size()) >= cap) return out;
        if (auto cm = X.certify(cur.module)) {
            out.maps.push_back(cur.map);
            out.terms.push_back(std::move(*cm));
            out.complete = true;
            return out;
        }
        Approximation a = irredundant_right_approximation(X.gen(), cur.module);
        CertifiedModule cm = certify_power_source(X, a);
        ModuleMorphism m = compose(a.map, cur.map);
        out.terms.push_back(std::move(cm));
        out.maps.push_back(m);
        cur = kernel(m);
    }
}

int fp_ext1(const FpFunctor& F, const FpFunctor& G) {
    require(F.subcat == G.subcat, "extension space: functors on different subcategories");
    FpResolution R = fp_resolution(F, 4);
    require(R.complete || R.terms.size() >= 3,
            "extension space: resolution too short");
    if (R.terms.size() < 2) return 0;
    ValueAt v0 = value_at(G, R.terms[0].mod);
    ValueAt v1 = value_at(G, R.terms[1].mod);
    FpMatrix d0 = value_precomposition(G, R.terms[0].mod, R.maps[0].mat, v0, v1);
    int ker1;
    if (R.terms.size() >= 3) {
        ValueAt v2 = value_at(G, R.terms[2].mod);
        FpMatrix d1 = value_precomposition(G, R.terms[1].mod, R.maps[1].mat, v1, v2);
        require((d0 * d1).is_zero(), "extension space: applied complex is not a complex");
        ker1 = v1.dim() - d1.rank();
    } else {
        ker1 = v1.dim();
    }
    return ker1 - d0.rank();
}

CertifiedModule certified_pair(const SubcatGen& X, const CertifiedModule& a,
                               const CertifiedModule& b) {
    if (a.power == 0 && a.mod.dim == 0) return b;
    if (b.power == 0 && b.mod.dim == 0) return a;
    SumData s = direct_sum({a.mod, b.mod});
    CertifiedModule p = X.certified_gen_power(a.power + b.power);
    ModuleMorphism from = make_morphism(p.mod, s.sum,
                                        FpMatrix::block_diag({a.from_power.mat, b.from_power.mat}));
    ModuleMorphism sec = make_morphism(s.sum, p.mod,
                                       FpMatrix::block_diag({a.section.mat, b.section.mat}));
    return CertifiedModule{s.sum, std::move(from), std::move(sec), a.power + b.power};
}

}  // namespace funcat
