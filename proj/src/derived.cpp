#include "funcat/derived.hpp"

#include <algorithm>
#include <string>

namespace funcat {
namespace {

template <class T>
T must(std::optional<T> o, const char* what) {
    require(o.has_value(), what);
    return std::move(*o);
}

std::vector<u32> flat(const FpMatrix& m) {
    return std::vector<u32>(m.data(), m.data() + size_t(m.rows()) * size_t(m.cols()));
}

void paste_at(std::vector<u32>& big, int off, const std::vector<u32>& piece) {
    for (size_t i = 0; i < piece.size(); ++i) big[size_t(off) + i] = piece[i];
}

void add_scaled(FpMatrix& a, const FpMatrix& b, u32 c, Fp f) {
    for (int r = 0; r < a.rows(); ++r)
        for (int k = 0; k < a.cols(); ++k) a.set(r, k, f.add(a.at(r, k), f.mul(c, b.at(r, k))));
}

FpMatrix rows_matrix(const std::vector<std::vector<u32>>& rows, int cols, Fp f) {
    FpMatrix m(int(rows.size()), cols, f);
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < cols; ++c) m.set(r, c, rows[size_t(r)][size_t(c)]);
    return m;
}

/// Morphism from coefficients against a Hom basis (zero map for an empty basis).
ModuleMorphism hom_combine(const Module& S, const Module& T, const FpMatrix& basis,
                           const std::vector<u32>& c) {
    if (basis.rows() == 0) return zero_morphism(S, T);
    Fp f = S.field();
    FpMatrix coef(1, basis.rows(), f);
    for (int j = 0; j < basis.rows(); ++j) coef.set(0, j, c[size_t(j)]);
    FpMatrix fl = coef * basis;
    return make_morphism(S, T, unflatten_row(fl.data(), S.dim, T.dim, f));
}

FunctorMorphism fphom_combine(const FpFunctor& F, const FpFunctor& G, const FpHom& H,
                              const std::vector<u32>& c) {
    if (H.dim() == 0) return functor_zero_morphism(F, G);
    Fp f = F.cat().lambda().field();
    FpMatrix l0(F.x0.mod.dim, G.x0.mod.dim, f), l1(F.x1.mod.dim, G.x1.mod.dim, f);
    for (int j = 0; j < H.dim(); ++j) {
        if (c[size_t(j)] == 0) continue;
        add_scaled(l0, H.basis[size_t(j)].l0.mat, c[size_t(j)], f);
        add_scaled(l1, H.basis[size_t(j)].l1.mat, c[size_t(j)], f);
    }
    return make_functor_morphism(F, G, make_morphism(F.x1.mod, G.x1.mod, std::move(l1)),
                                 make_morphism(F.x0.mod, G.x0.mod, std::move(l0)));
}

std::string describe(const ModuleComplex& C) {
    std::string s = "window [" + std::to_string(C.lo) + "," + std::to_string(C.hi()) + "] dims";
    for (const Module& t : C.terms) s += " " + std::to_string(t.dim);
    return s;
}

std::string describe(const FunctorComplex& C) {
    std::string s = "window [" + std::to_string(C.lo) + "," + std::to_string(C.hi()) + "] terms";
    for (const FpFunctor& t : C.terms)
        s += " " + std::to_string(t.x1.mod.dim) + "->" + std::to_string(t.x0.mod.dim);
    return s;
}

}  // namespace

ModuleComplex make_module_complex(const Algebra& A, int lo, std::vector<Module> terms,
                                  std::vector<ModuleMorphism> diff) {
    require(diff.size() + 1 == terms.size() || (terms.empty() && diff.empty()),
            "complex: differential count must be one below the term count");
    for (const Module& t : terms) require(t.alg == &A, "complex: term over a different algebra");
    for (size_t k = 0; k < diff.size(); ++k) {
        require(modules_equal(diff[k].src, terms[k]) && modules_equal(diff[k].tgt, terms[k + 1]),
                "complex: differential endpoints do not match the terms");
        if (k + 1 < diff.size())
            require((diff[k].mat * diff[k + 1].mat).is_zero(),
                    "complex: consecutive differentials do not compose to zero");
    }
    return ModuleComplex{&A, lo, std::move(terms), std::move(diff)};
}

ModuleComplex stalk_complex(const Module& M, int deg) {
    return make_module_complex(*M.alg, deg, {M}, {});
}

Module complex_term(const ModuleComplex& C, int deg) {
    if (deg < C.lo || deg > C.hi()) return zero_module(C.algebra());
    return C.terms[size_t(deg - C.lo)];
}

ModuleMorphism complex_diff(const ModuleComplex& C, int deg) {
    if (deg >= C.lo && deg < C.hi()) return C.diff[size_t(deg - C.lo)];
    return zero_morphism(complex_term(C, deg), complex_term(C, deg + 1));
}

ModuleComplex shift_complex(const ModuleComplex& C, int k) {
    std::vector<ModuleMorphism> d = C.diff;
    if (k % 2 != 0) {
        Fp f = C.algebra().field();
        for (ModuleMorphism& m : d) m = make_morphism(m.src, m.tgt, m.mat.scaled(f.neg(1)));
    }
    return ModuleComplex{C.alg, C.lo - k, C.terms, std::move(d)};
}

ModuleComplex sum_complex(const ModuleComplex& a, const ModuleComplex& b) {
    require(a.alg == b.alg, "complex sum: different algebras");
    int lo = std::min(a.lo, b.lo), hi = std::max(a.hi(), b.hi());
    if (hi < lo) return make_module_complex(a.algebra(), a.lo, {}, {});
    std::vector<SumData> sums;
    std::vector<Module> terms;
    for (int d = lo; d <= hi; ++d) {
        sums.push_back(direct_sum({complex_term(a, d), complex_term(b, d)}));
        terms.push_back(sums.back().sum);
    }
    std::vector<ModuleMorphism> diff;
    for (int d = lo; d < hi; ++d) {
        FpMatrix da = complex_diff(a, d).mat, db = complex_diff(b, d).mat;
        diff.push_back(make_morphism(terms[size_t(d - lo)], terms[size_t(d - lo + 1)],
                                     FpMatrix::block_diag({da, db})));
    }
    return make_module_complex(a.algebra(), lo, std::move(terms), std::move(diff));
}

FunctorComplex make_functor_complex(const SubcatGen& X, int lo, std::vector<FpFunctor> terms,
                                    std::vector<FunctorMorphism> diff) {
    require(diff.size() + 1 == terms.size() || (terms.empty() && diff.empty()),
            "functor complex: differential count must be one below the term count");
    for (const FpFunctor& t : terms)
        require(t.subcat == &X, "functor complex: term on a different subcategory");
    for (size_t k = 0; k < diff.size(); ++k) {
        require(functor_data_equal(diff[k].src, terms[k]) &&
                    functor_data_equal(diff[k].tgt, terms[k + 1]),
                "functor complex: differential endpoints do not match the terms");
        if (k + 1 < diff.size())
            require(functor_morphism_is_zero(functor_compose(diff[k], diff[k + 1])),
                    "functor complex: consecutive differentials do not compose to zero");
    }
    return FunctorComplex{&X, lo, std::move(terms), std::move(diff)};
}

FunctorComplex functor_stalk_complex(const FpFunctor& F, int deg) {
    return make_functor_complex(F.cat(), deg, {F}, {});
}

FpFunctor functor_complex_term(const FunctorComplex& C, int deg) {
    if (deg < C.lo || deg > C.hi()) return zero_fp_functor(C.cat());
    return C.terms[size_t(deg - C.lo)];
}

FunctorMorphism functor_complex_diff(const FunctorComplex& C, int deg) {
    if (deg >= C.lo && deg < C.hi()) return C.diff[size_t(deg - C.lo)];
    return functor_zero_morphism(functor_complex_term(C, deg), functor_complex_term(C, deg + 1));
}

ModuleChainMap make_module_chain_map(ModuleComplex src, ModuleComplex tgt, int lo,
                                     std::vector<ModuleMorphism> comp) {
    require(src.alg == tgt.alg, "chain map: complexes over different algebras");
    ModuleChainMap f{std::move(src), std::move(tgt), lo, std::move(comp)};
    for (size_t k = 0; k < f.comp.size(); ++k)
        require(modules_equal(f.comp[k].src, complex_term(f.src, lo + int(k))) &&
                    modules_equal(f.comp[k].tgt, complex_term(f.tgt, lo + int(k))),
                "chain map: component endpoints do not match the terms");
    int a = std::min(std::min(f.src.lo, f.tgt.lo), lo) - 1;
    int b = std::max(std::max(f.src.hi(), f.tgt.hi()), lo + int(f.comp.size()));
    for (int d = a; d <= b; ++d) {
        FpMatrix lhs = chain_comp(f, d).mat * complex_diff(f.tgt, d).mat;
        FpMatrix rhs = complex_diff(f.src, d).mat * chain_comp(f, d + 1).mat;
        require(lhs.rows() == rhs.rows() && lhs.cols() == rhs.cols(),
                "chain map: square shape mismatch");
        for (int r = 0; r < lhs.rows(); ++r)
            for (int c = 0; c < lhs.cols(); ++c)
                require(lhs.at(r, c) == rhs.at(r, c),
                        "chain map: squares do not commute with the differentials");
    }
    return f;
}

ModuleMorphism chain_comp(const ModuleChainMap& f, int deg) {
    if (deg >= f.lo && deg < f.lo + int(f.comp.size())) return f.comp[size_t(deg - f.lo)];
    return zero_morphism(complex_term(f.src, deg), complex_term(f.tgt, deg));
}

ModuleChainMap chain_identity(const ModuleComplex& C) {
    std::vector<ModuleMorphism> comp;
    for (const Module& t : C.terms) comp.push_back(identity_morphism(t));
    return make_module_chain_map(C, C, C.lo, std::move(comp));
}

ModuleChainMap chain_zero_map(const ModuleComplex& C, const ModuleComplex& D) {
    return make_module_chain_map(C, D, C.lo, {});
}

FunctorChainMap make_functor_chain_map(FunctorComplex src, FunctorComplex tgt, int lo,
                                       std::vector<FunctorMorphism> comp) {
    require(src.subcat == tgt.subcat, "chain map: complexes on different subcategories");
    FunctorChainMap f{std::move(src), std::move(tgt), lo, std::move(comp)};
    for (size_t k = 0; k < f.comp.size(); ++k)
        require(functor_data_equal(f.comp[k].src, functor_complex_term(f.src, lo + int(k))) &&
                    functor_data_equal(f.comp[k].tgt, functor_complex_term(f.tgt, lo + int(k))),
                "chain map: component endpoints do not match the terms");
    int a = std::min(std::min(f.src.lo, f.tgt.lo), lo) - 1;
    int b = std::max(std::max(f.src.hi(), f.tgt.hi()), lo + int(f.comp.size()));
    for (int d = a; d <= b; ++d)
        require(functor_morphism_eq(
                    functor_compose(functor_chain_comp(f, d), functor_complex_diff(f.tgt, d)),
                    functor_compose(functor_complex_diff(f.src, d), functor_chain_comp(f, d + 1))),
                "chain map: squares do not commute with the differentials");
    return f;
}

FunctorMorphism functor_chain_comp(const FunctorChainMap& f, int deg) {
    if (deg >= f.lo && deg < f.lo + int(f.comp.size())) return f.comp[size_t(deg - f.lo)];
    return functor_zero_morphism(functor_complex_term(f.src, deg),
                                 functor_complex_term(f.tgt, deg));
}

Module homology_at(const ModuleComplex& C, int deg) {
    Fp f = C.algebra().field();
    SubQuotient K = kernel(complex_diff(C, deg));
    ModuleMorphism prev = complex_diff(C, deg - 1);
    FpMatrix imK(0, K.module.dim, f);
    if (prev.src.dim > 0 && K.module.dim > 0) {
        SubQuotient im = image(prev);
        if (im.module.dim > 0)
            imK = must(RowSolver(K.map.mat).solve_rows(im.map.mat),
                       "homology: the image does not land in the kernel");
    }
    return quotient(K.module, invariant_span(K.module, imK)).module;
}

std::vector<int> homology_dims(const ModuleComplex& C) {
    std::vector<int> h;
    for (int d = C.lo; d <= C.hi(); ++d) {
        int rk = d < C.hi() ? C.diff[size_t(d - C.lo)].mat.rank() : 0;
        int rp = d > C.lo ? C.diff[size_t(d - C.lo - 1)].mat.rank() : 0;
        h.push_back(C.terms[size_t(d - C.lo)].dim - rk - rp);
    }
    return h;
}

bool is_acyclic_complex(const ModuleComplex& C) {
    for (int d : homology_dims(C))
        if (d != 0) return false;
    return true;
}

std::vector<int> value_homology_dims(const FunctorComplex& C, const Module& N) {
    std::vector<int> h;
    std::vector<int> dims;
    std::vector<int> rk;
    for (int d = C.lo; d <= C.hi(); ++d)
        dims.push_back(value_at(C.terms[size_t(d - C.lo)], N).dim());
    for (size_t k = 0; k < C.diff.size(); ++k) rk.push_back(value_map_at(C.diff[k], N).rank());
    for (size_t k = 0; k < dims.size(); ++k) {
        int a = k < rk.size() ? rk[k] : 0;
        int b = k > 0 ? rk[k - 1] : 0;
        h.push_back(dims[k] - a - b);
    }
    return h;
}

ModuleKHom khom(const ModuleComplex& C, const ModuleComplex& D) {
    require(C.alg == D.alg, "homotopy classes: complexes over different algebras");
    Fp f = C.algebra().field();
    ModuleKHom H;
    H.lo = std::min(C.lo, D.lo);
    H.hi = std::max(C.hi(), D.hi());
    int n = H.hi - H.lo + 1;
    if (n < 0) n = 0;
    std::vector<Module> ct, dt;
    H.offset.assign(size_t(n) + 1, 0);
    for (int k = 0; k < n; ++k) {
        ct.push_back(complex_term(C, H.lo + k));
        dt.push_back(complex_term(D, H.lo + k));
        H.homs.push_back(hom_basis(ct[size_t(k)], dt[size_t(k)]));
        H.offset[size_t(k) + 1] = H.offset[size_t(k)] + H.homs[size_t(k)].rows();
    }
    int U = H.offset[size_t(n)];
    H.null_rows = FpMatrix(0, U, f);
    H.rep_rows = FpMatrix(0, U, f);
    if (U == 0) return H;
    std::vector<FpMatrix> dc, dd;
    std::vector<RowSolver> hs;
    for (int k = 0; k < n; ++k) {
        dc.push_back(complex_diff(C, H.lo + k).mat);
        dd.push_back(complex_diff(D, H.lo + k).mat);
        hs.emplace_back(H.homs[size_t(k)]);
    }
    // chain-map condition: f_k ; dD_k == dC_k ; f_{k+1} in every degree
    std::vector<int> coff(size_t(n), 0);
    int tot = 0;
    for (int k = 0; k + 1 < n; ++k) {
        coff[size_t(k)] = tot;
        tot += ct[size_t(k)].dim * dt[size_t(k) + 1].dim;
    }
    FpMatrix cons(U, tot, f);
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < H.homs[size_t(k)].rows(); ++j) {
            FpMatrix h = unflatten_row(H.homs[size_t(k)].row_ptr(j), ct[size_t(k)].dim,
                                       dt[size_t(k)].dim, f);
            int u = H.offset[size_t(k)] + j;
            if (k + 1 < n) {
                FpMatrix t = h * dd[size_t(k)];
                const u32* td = t.data();
                for (int c = 0; c < t.rows() * t.cols(); ++c) cons.set(u, coff[size_t(k)] + c, td[c]);
            }
            if (k > 0) {
                FpMatrix t = dc[size_t(k) - 1] * h;
                const u32* td = t.data();
                for (int c = 0; c < t.rows() * t.cols(); ++c)
                    cons.set(u, coff[size_t(k) - 1] + c, f.neg(td[c]));
            }
        }
    FpMatrix zco = cons.transpose().kernel_basis();
    // null-homotopic subspace: s_k ; dD_{k-1} + dC_{k-1} ; s_k spread over two degrees
    RowSpan nspan(U, f);
    for (int e = 1; e < n; ++e) {
        FpMatrix sb = hom_basis(ct[size_t(e)], dt[size_t(e) - 1]);
        for (int j = 0; j < sb.rows(); ++j) {
            FpMatrix s =
                unflatten_row(sb.row_ptr(j), ct[size_t(e)].dim, dt[size_t(e) - 1].dim, f);
            std::vector<u32> row(size_t(U), 0);
            paste_at(row, H.offset[size_t(e)],
                     must(hs[size_t(e)].solve(flat(s * dd[size_t(e) - 1])),
                          "homotopy: composite escapes the Hom space"));
            paste_at(row, H.offset[size_t(e) - 1],
                     must(hs[size_t(e) - 1].solve(flat(dc[size_t(e) - 1] * s)),
                          "homotopy: composite escapes the Hom space"));
            nspan.insert(row);
        }
    }
    H.null_rows = nspan.basis();
    RowSpan acc(U, f);
    acc.insert_rows(H.null_rows);
    std::vector<std::vector<u32>> repco;
    for (int r = 0; r < zco.rows(); ++r) {
        std::vector<u32> v(zco.row_ptr(r), zco.row_ptr(r) + U);
        if (acc.insert(v)) repco.push_back(std::move(v));
    }
    H.rep_rows = rows_matrix(repco, U, f);
    for (const std::vector<u32>& v : repco) {
        std::vector<ModuleMorphism> comp;
        for (int k = 0; k < n; ++k) {
            std::vector<u32> c(v.begin() + H.offset[size_t(k)],
                               v.begin() + H.offset[size_t(k) + 1]);
            comp.push_back(hom_combine(ct[size_t(k)], dt[size_t(k)], H.homs[size_t(k)], c));
        }
        H.reps.push_back(make_module_chain_map(C, D, H.lo, std::move(comp)));
    }
    return H;
}

std::vector<u32> khom_coords(const ModuleKHom& H, const ModuleChainMap& fm) {
    int n = H.hi - H.lo + 1;
    if (n < 0) n = 0;
    int U = H.offset[size_t(n)];
    if (U == 0) {
        require(H.dim() == 0, "homotopy coordinates: inconsistent space");
        return {};
    }
    Fp f = fm.src.algebra().field();
    std::vector<u32> v(size_t(U), 0);
    for (int k = 0; k < n; ++k) {
        ModuleMorphism c = chain_comp(fm, H.lo + k);
        if (H.homs[size_t(k)].rows() == 0) {
            require(c.mat.is_zero(), "homotopy coordinates: component outside the Hom space");
            continue;
        }
        paste_at(v, H.offset[size_t(k)],
                 must(RowSolver(H.homs[size_t(k)]).solve(flatten_morphism(c)),
                      "homotopy coordinates: component outside the Hom space"));
    }
    FpMatrix big = FpMatrix::vstack({H.null_rows, H.rep_rows});
    std::vector<u32> sol =
        must(RowSolver(big).solve(v), "homotopy coordinates: the map is not a chain map");
    std::vector<u32> out(sol.begin() + H.null_rows.rows(), sol.end());
    (void)f;
    return out;
}

FunctorKHom khom(const FunctorComplex& C, const FunctorComplex& D) {
    require(C.subcat == D.subcat, "homotopy classes: complexes on different subcategories");
    const SubcatGen& X = C.cat();
    Fp f = X.lambda().field();
    FunctorKHom H;
    H.lo = std::min(C.lo, D.lo);
    H.hi = std::max(C.hi(), D.hi());
    int n = H.hi - H.lo + 1;
    if (n < 0) n = 0;
    std::vector<FpFunctor> ct, dt;
    H.offset.assign(size_t(n) + 1, 0);
    for (int k = 0; k < n; ++k) {
        ct.push_back(functor_complex_term(C, H.lo + k));
        dt.push_back(functor_complex_term(D, H.lo + k));
        H.homs.push_back(fp_hom(ct[size_t(k)], dt[size_t(k)]));
        H.offset[size_t(k) + 1] = H.offset[size_t(k)] + H.homs[size_t(k)].dim();
    }
    int U = H.offset[size_t(n)];
    H.null_rows = FpMatrix(0, U, f);
    H.rep_rows = FpMatrix(0, U, f);
    if (U == 0) return H;
    std::vector<FunctorMorphism> dc, dd;
    for (int k = 0; k < n; ++k) {
        dc.push_back(functor_complex_diff(C, H.lo + k));
        dd.push_back(functor_complex_diff(D, H.lo + k));
    }
    std::vector<FpHom> cross;  // Hom(C_k, D_{k+1})
    std::vector<int> coff(size_t(n), 0);
    int tot = 0;
    for (int k = 0; k + 1 < n; ++k) {
        cross.push_back(fp_hom(ct[size_t(k)], dt[size_t(k) + 1]));
        coff[size_t(k)] = tot;
        tot += cross.back().dim();
    }
    FpMatrix cons(U, tot, f);
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < H.homs[size_t(k)].dim(); ++j) {
            const FunctorMorphism& h = H.homs[size_t(k)].basis[size_t(j)];
            int u = H.offset[size_t(k)] + j;
            if (k + 1 < n && cross[size_t(k)].dim() > 0) {
                std::vector<u32> co =
                    fp_hom_coords(cross[size_t(k)], functor_compose(h, dd[size_t(k)]));
                for (size_t c = 0; c < co.size(); ++c)
                    cons.set(u, coff[size_t(k)] + int(c), co[c]);
            }
            if (k > 0 && cross[size_t(k) - 1].dim() > 0) {
                std::vector<u32> co =
                    fp_hom_coords(cross[size_t(k) - 1], functor_compose(dc[size_t(k) - 1], h));
                for (size_t c = 0; c < co.size(); ++c) {
                    int col = coff[size_t(k) - 1] + int(c);
                    cons.set(u, col, f.sub(cons.at(u, col), co[c]));
                }
            }
        }
    FpMatrix zco = cons.transpose().kernel_basis();
    RowSpan nspan(U, f);
    for (int e = 1; e < n; ++e) {
        FpHom sb = fp_hom(ct[size_t(e)], dt[size_t(e) - 1]);
        for (int j = 0; j < sb.dim(); ++j) {
            const FunctorMorphism& s = sb.basis[size_t(j)];
            std::vector<u32> row(size_t(U), 0);
            if (H.homs[size_t(e)].dim() > 0)
                paste_at(row, H.offset[size_t(e)],
                         fp_hom_coords(H.homs[size_t(e)],
                                       functor_compose(s, dd[size_t(e) - 1])));
            if (H.homs[size_t(e) - 1].dim() > 0)
                paste_at(row, H.offset[size_t(e) - 1],
                         fp_hom_coords(H.homs[size_t(e) - 1],
                                       functor_compose(dc[size_t(e) - 1], s)));
            nspan.insert(row);
        }
    }
    H.null_rows = nspan.basis();
    RowSpan acc(U, f);
    acc.insert_rows(H.null_rows);
    std::vector<std::vector<u32>> repco;
    for (int r = 0; r < zco.rows(); ++r) {
        std::vector<u32> v(zco.row_ptr(r), zco.row_ptr(r) + U);
        if (acc.insert(v)) repco.push_back(std::move(v));
    }
    H.rep_rows = rows_matrix(repco, U, f);
    for (const std::vector<u32>& v : repco) {
        std::vector<FunctorMorphism> comp;
        for (int k = 0; k < n; ++k) {
            std::vector<u32> c(v.begin() + H.offset[size_t(k)],
                               v.begin() + H.offset[size_t(k) + 1]);
            comp.push_back(fphom_combine(ct[size_t(k)], dt[size_t(k)], H.homs[size_t(k)], c));
        }
        H.reps.push_back(make_functor_chain_map(C, D, H.lo, std::move(comp)));
    }
    return H;
}

std::vector<u32> khom_coords(const FunctorKHom& H, const FunctorChainMap& fm) {
    int n = H.hi - H.lo + 1;
    if (n < 0) n = 0;
    int U = H.offset[size_t(n)];
    if (U == 0) {
        require(H.dim() == 0, "homotopy coordinates: inconsistent space");
        return {};
    }
    std::vector<u32> v(size_t(U), 0);
    for (int k = 0; k < n; ++k) {
        FunctorMorphism c = functor_chain_comp(fm, H.lo + k);
        if (H.homs[size_t(k)].dim() == 0) {
            require(functor_morphism_is_zero(c),
                    "homotopy coordinates: component outside the Hom space");
            continue;
        }
        paste_at(v, H.offset[size_t(k)], fp_hom_coords(H.homs[size_t(k)], c));
    }
    FpMatrix big = FpMatrix::vstack({H.null_rows, H.rep_rows});
    std::vector<u32> sol =
        must(RowSolver(big).solve(v), "homotopy coordinates: the map is not a chain map");
    return std::vector<u32>(sol.begin() + H.null_rows.rows(), sol.end());
}

ConeData mapping_cone(const ModuleChainMap& fm) {
    const ModuleComplex& C = fm.src;
    const ModuleComplex& D = fm.tgt;
    const Algebra& A = C.algebra();
    Fp f = A.field();
    int lo = std::min(C.lo - 1, D.lo), hi = std::max(C.hi() - 1, D.hi());
    std::vector<SumData> sums;
    std::vector<Module> terms;
    for (int d = lo; d <= hi; ++d) {
        sums.push_back(direct_sum({complex_term(C, d + 1), complex_term(D, d)}));
        terms.push_back(sums.back().sum);
    }
    std::vector<ModuleMorphism> diff;
    for (int d = lo; d < hi; ++d) {
        const Module& s = terms[size_t(d - lo)];
        const Module& t = terms[size_t(d - lo + 1)];
        int rc = complex_term(C, d + 1).dim;  // rows of the shifted part
        int cc = complex_term(C, d + 2).dim;
        FpMatrix m(s.dim, t.dim, f);
        FpMatrix dC = complex_diff(C, d + 1).mat;
        for (int r = 0; r < dC.rows(); ++r)
            for (int c = 0; c < dC.cols(); ++c) m.set(r, c, f.neg(dC.at(r, c)));
        FpMatrix fc = chain_comp(fm, d + 1).mat;
        for (int r = 0; r < fc.rows(); ++r)
            for (int c = 0; c < fc.cols(); ++c) m.set(r, cc + c, fc.at(r, c));
        FpMatrix dD = complex_diff(D, d).mat;
        for (int r = 0; r < dD.rows(); ++r)
            for (int c = 0; c < dD.cols(); ++c) m.set(rc + r, cc + c, dD.at(r, c));
        diff.push_back(make_morphism(s, t, std::move(m)));
    }
    ConeData out;
    out.cone = make_module_complex(A, lo, std::move(terms), std::move(diff));
    std::vector<ModuleMorphism> into, onto;
    for (int d = lo; d <= hi; ++d) {
        into.push_back(sums[size_t(d - lo)].incl[1]);
        onto.push_back(sums[size_t(d - lo)].proj[0]);
    }
    out.into = make_module_chain_map(D, out.cone, lo, std::move(into));
    out.onto = make_module_chain_map(out.cone, shift_complex(C, 1), lo, std::move(onto));
    return out;
}

bool cone_long_exact_check(const ModuleChainMap& fm) {
    ConeData K = mapping_cone(fm);
    const ModuleComplex& C = fm.src;
    const ModuleComplex& D = fm.tgt;
    Fp f = C.algebra().field();
    int lo = K.cone.lo - 1, hi = K.cone.hi() + 1;
    int n = hi - lo + 2;
    std::vector<int> hC(size_t(n), 0), hD(size_t(n), 0), hK(size_t(n), 0), a(size_t(n), 0);
    auto hdim = [&](const ModuleComplex& Z, int d) {
        return complex_term(Z, d).dim - complex_diff(Z, d).mat.rank() -
               complex_diff(Z, d - 1).mat.rank();
    };
    for (int d = lo; d <= hi + 1; ++d) {
        int k = d - lo;
        hC[size_t(k)] = hdim(C, d);
        hD[size_t(k)] = hdim(D, d);
        hK[size_t(k)] = hdim(K.cone, d);
        // rank of the induced map on homology in degree d
        FpMatrix zc = complex_diff(C, d).mat.transpose().kernel_basis();
        RowSpan span(complex_term(D, d).dim, f);
        span.insert_rows(complex_diff(D, d - 1).mat);
        int base = span.dim();
        FpMatrix img = zc * chain_comp(fm, d).mat;
        span.insert_rows(img);
        a[size_t(k)] = span.dim() - base;
    }
    for (int d = lo; d <= hi; ++d) {
        int k = d - lo;
        if (hK[size_t(k)] != (hD[size_t(k)] - a[size_t(k)]) + (hC[size_t(k) + 1] - a[size_t(k) + 1]))
            return false;
    }
    return true;
}

ModuleComplex termwise_va(const FunctorComplex& C) {
    const SubcatGen& X = C.cat();
    require(X.contains_projectives(),
            "restricted image of a complex: projectives not inside add(gen)");
    std::vector<Module> terms;
    for (const FpFunctor& F : C.terms) terms.push_back(va(F));
    std::vector<ModuleMorphism> diff;
    for (const FunctorMorphism& d : C.diff) diff.push_back(va_of(d));
    return make_module_complex(X.lambda(), C.lo, std::move(terms), std::move(diff));
}

ModuleChainMap termwise_va_map(const FunctorChainMap& eta) {
    ModuleComplex s = termwise_va(eta.src), t = termwise_va(eta.tgt);
    std::vector<ModuleMorphism> comp;
    for (const FunctorMorphism& c : eta.comp) comp.push_back(va_of(c));
    return make_module_chain_map(std::move(s), std::move(t), eta.lo, std::move(comp));
}

FunctorComplex termwise_va_lambda(const SubcatGen& X, const ModuleComplex& P) {
    require(X.contains_projectives(),
            "representable lift: projectives not inside add(gen)");
    std::vector<FpFunctor> terms;
    for (const Module& t : P.terms) {
        require(is_projective(t), "representable lift: a term is not projective");
        terms.push_back(representable_functor(
            X, must(X.certify(t), "representable lift: a term escapes the subcategory")));
    }
    std::vector<FunctorMorphism> diff;
    for (size_t k = 0; k < P.diff.size(); ++k)
        diff.push_back(make_functor_morphism(
            terms[k], terms[k + 1],
            zero_morphism(terms[k].x1.mod, terms[k + 1].x1.mod), P.diff[k]));
    return make_functor_complex(X, P.lo, std::move(terms), std::move(diff));
}

FunctorComplex termwise_va_rho(const SubcatGen& X, const ModuleComplex& C) {
    std::vector<FpFunctor> terms;
    for (const Module& t : C.terms) terms.push_back(va_rho(X, t));
    std::vector<FunctorMorphism> diff;
    for (const ModuleMorphism& d : C.diff) diff.push_back(va_rho_of(X, d));
    return make_functor_complex(X, C.lo, std::move(terms), std::move(diff));
}

VaLambdaLift va_lambda_lift(const SubcatGen& X, const ModuleComplex& C) {
    std::vector<VaLambdaData> data;
    for (const Module& t : C.terms) data.push_back(va_lambda_data(X, t));
    std::vector<FunctorMorphism> diff;
    for (size_t k = 0; k < C.diff.size(); ++k) {
        ModuleMorphism l0 = must(factor_through(compose(data[k].eps, C.diff[k]), data[k + 1].eps),
                                 "projectivized complex: cover lift");
        ModuleMorphism l1 =
            must(factor_through(compose(data[k].F.d, l0), data[k + 1].F.d),
                 "projectivized complex: relation lift");
        diff.push_back(
            make_functor_morphism(data[k].F, data[k + 1].F, std::move(l1), std::move(l0)));
    }
    VaLambdaLift out;
    std::vector<FpFunctor> terms;
    for (const VaLambdaData& d : data) terms.push_back(d.F);
    out.F = make_functor_complex(X, C.lo, std::move(terms), std::move(diff));
    for (const VaLambdaData& d : data) {
        SubQuotient q = va_cokernel(d.F);
        out.counit.push_back(
            must(factor_over(d.eps, q.map), "projectivized complex: counit"));
    }
    return out;
}

namespace {

/// xi with pre ; xi == target, solved in the Hom space (pre must kill enough).
FunctorMorphism functor_solve_over(const FunctorMorphism& pre, const FunctorMorphism& target) {
    FpHom space = fp_hom(pre.tgt, target.tgt);
    FpHom full = fp_hom(pre.src, target.tgt);
    if (full.dim() == 0) {
        require(functor_morphism_is_zero(target), "epi factorization: target must vanish");
        return fphom_combine(pre.tgt, target.tgt, space,
                             std::vector<u32>(size_t(space.dim()), 0));
    }
    Fp f = pre.src.cat().lambda().field();
    FpMatrix rows(space.dim(), full.dim(), f);
    for (int j = 0; j < space.dim(); ++j) {
        std::vector<u32> co = fp_hom_coords(full, functor_compose(pre, space.basis[size_t(j)]));
        for (size_t c = 0; c < co.size(); ++c) rows.set(j, int(c), co[c]);
    }
    std::vector<u32> want = fp_hom_coords(full, target);
    std::vector<u32> sol = must(RowSolver(rows).solve(want), "epi factorization: no solution");
    return fphom_combine(pre.tgt, target.tgt, space, sol);
}

}  // namespace

ComplexDecomposition complex_decomposition(const FunctorComplex& C) {
    const SubcatGen& X = C.cat();
    ComplexDecomposition out;
    std::vector<UnitCounitSequences> seq;
    for (const FpFunctor& t : C.terms) seq.push_back(unit_counit_sequences(t));
    std::vector<FunctorMorphism> middiff;
    for (size_t k = 0; k < C.diff.size(); ++k) {
        FunctorMorphism m = va_rho_of(X, va_of(C.diff[k]));
        require(functor_data_equal(m.src, seq[k].mid1) &&
                    functor_data_equal(m.tgt, seq[k + 1].mid1),
                "decomposition: middle terms drift from the canonical presentation");
        require(functor_morphism_eq(functor_compose(seq[k].unit, m),
                                    functor_compose(C.diff[k], seq[k + 1].unit)),
                "decomposition: the unit is not natural against the differential");
        middiff.push_back(std::move(m));
    }
    std::vector<FunctorMorphism> d0, d1;
    for (size_t k = 0; k < C.diff.size(); ++k) {
        d0.push_back(must(
            functor_factor_through(functor_compose(seq[k].incl0, C.diff[k]), seq[k + 1].incl0),
            "decomposition: kernel differential"));
        d1.push_back(
            functor_solve_over(seq[k].proj1, functor_compose(middiff[k], seq[k + 1].proj1)));
    }
    std::vector<FpFunctor> t0, tm, t1;
    for (const UnitCounitSequences& s : seq) {
        t0.push_back(s.f0);
        tm.push_back(s.mid1);
        t1.push_back(s.f1);
    }
    out.f0 = make_functor_complex(X, C.lo, std::move(t0), std::move(d0));
    out.mid = make_functor_complex(X, C.lo, std::move(tm), std::move(middiff));
    out.f1 = make_functor_complex(X, C.lo, std::move(t1), std::move(d1));
    for (UnitCounitSequences& s : seq) {
        out.incl.push_back(std::move(s.incl0));
        out.unit.push_back(std::move(s.unit));
        out.proj.push_back(std::move(s.proj1));
    }
    return out;
}

bool kernel_characterization(const FunctorComplex& C) {
    bool restricted = is_acyclic_complex(termwise_va(C));
    std::vector<int> vals = value_homology_dims(C, regular_module(C.cat().lambda()));
    bool values = true;
    for (int d : vals)
        if (d != 0) values = false;
    require(restricted == values,
            "kernel characterization: restricted-image acyclicity disagrees with the values "
            "at the algebra");
    return restricted;
}

DerivedAdjunction adjunction_check_derived(const ModuleComplex& P, const FunctorComplex& C) {
    const SubcatGen& X = C.cat();
    Fp f = X.lambda().field();
    FunctorComplex R = termwise_va_lambda(X, P);
    FunctorKHom L = khom(R, C);
    ModuleKHom Rh = khom(P, termwise_va(C));
    require(L.dim() == Rh.dim(), "derived adjunction: homotopy class counts differ");
    DerivedAdjunction out{L.dim(), FpMatrix(L.dim(), L.dim(), f)};
    for (int i = 0; i < L.dim(); ++i) {
        std::vector<u32> co = khom_coords(Rh, termwise_va_map(L.reps[size_t(i)]));
        for (size_t c = 0; c < co.size(); ++c) out.mat.set(i, int(c), co[c]);
    }
    if (out.dim > 0)
        require(out.mat.try_invert().has_value(), "derived adjunction: transport not bijective");
    return out;
}

DerivedAdjunction adjunction_check_derived_right(const FunctorComplex& C,
                                                 const ModuleComplex& P) {
    const SubcatGen& X = C.cat();
    Fp f = X.lambda().field();
    FunctorComplex R = termwise_va_lambda(X, P);
    FunctorKHom L = khom(C, R);
    ModuleKHom Rh = khom(termwise_va(C), P);
    require(L.dim() == Rh.dim(), "derived adjunction: homotopy class counts differ");
    DerivedAdjunction out{L.dim(), FpMatrix(L.dim(), L.dim(), f)};
    for (int i = 0; i < L.dim(); ++i) {
        std::vector<u32> co = khom_coords(Rh, termwise_va_map(L.reps[size_t(i)]));
        for (size_t c = 0; c < co.size(); ++c) out.mat.set(i, int(c), co[c]);
    }
    if (out.dim > 0)
        require(out.mat.try_invert().has_value(), "derived adjunction: transport not bijective");
    return out;
}

namespace {

std::vector<u32> random_coeffs(int n, std::mt19937_64& rng, u32 p) {
    std::vector<u32> c(size_t(n));
    for (int i = 0; i < n; ++i) c[size_t(i)] = u32(rng() % p);
    return c;
}

ModuleMorphism random_hom(const Module& S, const Module& T, std::mt19937_64& rng) {
    FpMatrix hb = hom_basis(S, T);
    return hom_combine(S, T, hb, random_coeffs(hb.rows(), rng, S.field().p));
}

/// Second differential drawn from { h : d0 ; h == 0 }.
ModuleMorphism random_kernel_hom(const ModuleMorphism& d0, const Module& T,
                                 std::mt19937_64& rng) {
    Fp f = d0.src.field();
    FpMatrix hb = hom_basis(d0.tgt, T);
    if (hb.rows() == 0) return zero_morphism(d0.tgt, T);
    FpMatrix rows(hb.rows(), d0.src.dim * T.dim, f);
    for (int j = 0; j < hb.rows(); ++j) {
        FpMatrix h = unflatten_row(hb.row_ptr(j), d0.tgt.dim, T.dim, f);
        FpMatrix t = d0.mat * h;
        const u32* td = t.data();
        for (int c = 0; c < t.rows() * t.cols(); ++c) rows.set(j, c, td[c]);
    }
    FpMatrix sols = rows.transpose().kernel_basis();
    if (sols.rows() == 0) return zero_morphism(d0.tgt, T);
    std::vector<u32> pick = random_coeffs(sols.rows(), rng, f.p);
    std::vector<u32> c(size_t(hb.rows()), 0);
    for (int r = 0; r < sols.rows(); ++r)
        for (int j = 0; j < hb.rows(); ++j)
            c[size_t(j)] = f.add(c[size_t(j)], f.mul(pick[size_t(r)], sols.at(r, j)));
    return hom_combine(d0.tgt, T, hb, c);
}

Module random_projective(const Algebra& A, std::mt19937_64& rng) {
    int nv = int(A.idempotents().size());
    int k = 1 + int(rng() % 2);
    std::vector<Module> parts;
    for (int i = 0; i < k; ++i) parts.push_back(indec_projective(A, int(rng() % u64(nv))));
    return direct_sum(parts).sum;
}

}  // namespace

std::vector<ModuleComplex> random_complex_corpus(const Algebra& A, std::mt19937_64& rng,
                                                 int rounds) {
    std::vector<ModuleComplex> out;
    for (int r = 0; r < rounds; ++r) {
        int lo = int(rng() % 3) - 1;
        out.push_back(stalk_complex(random_module(A, rng, 2), lo));
        Module m0 = random_module(A, rng, 2), m1 = random_module(A, rng, 2);
        out.push_back(make_module_complex(A, lo, {m0, m1}, {random_hom(m0, m1, rng)}));
        Module n0 = random_module(A, rng, 2), n1 = random_module(A, rng, 2),
               n2 = random_module(A, rng, 2);
        ModuleMorphism d0 = random_hom(n0, n1, rng);
        ModuleMorphism d1 = random_kernel_hom(d0, n2, rng);
        out.push_back(make_module_complex(A, lo, {n0, n1, n2}, {d0, d1}));
    }
    return out;
}

std::vector<ModuleComplex> random_projective_complex_corpus(const Algebra& A,
                                                            std::mt19937_64& rng, int rounds) {
    std::vector<ModuleComplex> out;
    for (int r = 0; r < rounds; ++r) {
        int lo = int(rng() % 3) - 1;
        Module p0 = random_projective(A, rng);
        out.push_back(stalk_complex(p0, lo));
        Module q0 = random_projective(A, rng), q1 = random_projective(A, rng);
        out.push_back(make_module_complex(A, lo, {q0, q1}, {random_hom(q0, q1, rng)}));
        // a contractible one: the cone of the identity
        out.push_back(
            mapping_cone(chain_identity(stalk_complex(random_projective(A, rng), lo))).cone);
    }
    return out;
}

FpFunctor random_mod0_functor(const SubcatGen& X, std::mt19937_64& rng) {
    Fp f = X.lambda().field();
    CertifiedModule x1 = X.certified_gen_power(2);
    CertifiedModule x0 = X.certified_gen_power(1);
    FpMatrix top = FpMatrix::identity(X.gen().dim, f);
    FpMatrix bottom = X.gamma_mat(random_coeffs(X.gamma().dim(), rng, f.p));
    return make_functor(X, std::move(x1), std::move(x0), FpMatrix::vstack({top, bottom}));
}

std::vector<FunctorComplex> random_functor_complex_corpus(const SubcatGen& X,
                                                          std::mt19937_64& rng, int rounds) {
    std::vector<FunctorComplex> out;
    for (int r = 0; r < rounds; ++r) {
        int lo = int(rng() % 3) - 1;
        out.push_back(functor_stalk_complex(random_fp_functor(X, rng, 2), lo));
        FpFunctor a = random_fp_functor(X, rng, 2), b = random_fp_functor(X, rng, 2);
        FpHom H = fp_hom(a, b);
        out.push_back(make_functor_complex(X, lo, {a, b}, {random_fp_morphism(a, b, H, rng)}));
        out.push_back(functor_stalk_complex(random_mod0_functor(X, rng), lo));
        // an acyclic representative: the lift of a contractible projective complex
        out.push_back(termwise_va_lambda(
            X, mapping_cone(chain_identity(stalk_complex(random_projective(X.lambda(), rng), lo)))
                   .cone));
    }
    return out;
}

CheckReport verify_categorical_resolution(const Algebra& lambda, u64 seed, int rounds) {
    CheckReport R;
    R.name = "categorical-resolution";
    lambda.generators();  // warm the lazy cache before parallel sections
    SubcatGen X = SubcatGen::auslander(lambda);
    X.gamma().generators();
    GldimResult g = verify_finite_gldim(X.gamma());
    if (!g.finite)
        R.fail("endomorphism algebra of the refined radical generator: global dimension cap hit");
    else
        R.count("gamma_gldim_finite");
    if (syzygy_gldim(lambda) >= 0) R.count("base_algebra_gldim_already_finite");

    std::mt19937_64 rng(seed);
    std::vector<ModuleComplex> mods = random_complex_corpus(lambda, rng, rounds);
    std::vector<ModuleComplex> projs = random_projective_complex_corpus(lambda, rng, rounds);
    std::vector<FunctorComplex> funs = random_functor_complex_corpus(X, rng, rounds);
    R.count("module_complexes", long(mods.size()));
    R.count("projective_complexes", long(projs.size()));
    R.count("functor_complexes", long(funs.size()));

    int nf = int(funs.size());
    std::vector<std::string> kerr(size_t(nf));
    std::vector<int> kacy(size_t(nf), 0);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < nf; ++i) {
        try {
            kacy[size_t(i)] = kernel_characterization(funs[size_t(i)]) ? 1 : 0;
        } catch (const std::exception& e) {
            kerr[size_t(i)] = std::string(e.what()) + " on " + describe(funs[size_t(i)]);
        }
    }
    for (int i = 0; i < nf; ++i) {
        if (!kerr[size_t(i)].empty())
            R.fail("kernel characterization: " + kerr[size_t(i)]);
        else {
            R.count("kernel_characterization");
            if (kacy[size_t(i)]) R.count("acyclic_restricted_images");
        }
    }

    int nm = int(mods.size());
    std::vector<std::string> serr(size_t(nm));
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < nm; ++i) {
        try {
            VaLambdaLift L = va_lambda_lift(X, mods[size_t(i)]);
            ModuleComplex back = termwise_va(L.F);
            ModuleChainMap cm =
                make_module_chain_map(back, mods[size_t(i)], mods[size_t(i)].lo, L.counit);
            for (const ModuleMorphism& c : cm.comp)
                require(c.mat.try_invert().has_value(),
                        "projectivized image does not reassemble the complex");
        } catch (const std::exception& e) {
            serr[size_t(i)] = std::string(e.what()) + " on " + describe(mods[size_t(i)]);
        }
    }
    for (int i = 0; i < nm; ++i) {
        if (!serr[size_t(i)].empty())
            R.fail("essential surjectivity: " + serr[size_t(i)]);
        else
            R.count("essential_surjectivity");
    }

    int np = int(projs.size());
    std::vector<std::string> aerr(size_t(np));
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < np; ++i) {
        try {
            adjunction_check_derived(projs[size_t(i)], funs[size_t(i) % size_t(nf)]);
        } catch (const std::exception& e) {
            aerr[size_t(i)] = std::string(e.what()) + " on " + describe(projs[size_t(i)]);
        }
    }
    for (int i = 0; i < np; ++i) {
        if (!aerr[size_t(i)].empty())
            R.fail("derived adjunction: " + aerr[size_t(i)]);
        else
            R.count("derived_adjunction");
    }

    std::vector<std::string> uerr(size_t(np));
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < np; ++i) {
        try {
            const ModuleComplex& P = projs[size_t(i)];
            ModuleComplex back = termwise_va(termwise_va_lambda(X, P));
            require(back.lo == P.lo && back.terms.size() == P.terms.size(),
                    "window changed across the round trip");
            for (size_t k = 0; k < P.terms.size(); ++k)
                require(modules_equal(back.terms[k], P.terms[k]),
                        "terms changed across the round trip");
            for (size_t k = 0; k < P.diff.size(); ++k) {
                const FpMatrix& x = back.diff[k].mat;
                const FpMatrix& y = P.diff[k].mat;
                require(x.rows() == y.rows() && x.cols() == y.cols(),
                        "differential shape changed across the round trip");
                for (int r = 0; r < x.rows(); ++r)
                    for (int c = 0; c < x.cols(); ++c)
                        require(x.at(r, c) == y.at(r, c),
                                "differentials changed across the round trip");
            }
        } catch (const std::exception& e) {
            uerr[size_t(i)] = std::string(e.what()) + " on " + describe(projs[size_t(i)]);
        }
    }
    for (int i = 0; i < np; ++i) {
        if (!uerr[size_t(i)].empty())
            R.fail("unit identity: " + uerr[size_t(i)]);
        else
            R.count("unit_identity_exact");
    }
    return R;
}

CheckReport verify_weakly_crepant(const Algebra& lambda, u64 seed, int rounds) {
    if (!is_self_injective(lambda))
        throw precondition_error("weak crepancy: the algebra is not self-injective");
    CheckReport R;
    R.name = "weakly-crepant";
    lambda.generators();
    SubcatGen X = SubcatGen::auslander(lambda);
    X.gamma().generators();

    std::mt19937_64 rng(seed);
    std::vector<ModuleComplex> mods = random_complex_corpus(lambda, rng, rounds);
    std::vector<ModuleComplex> projs = random_projective_complex_corpus(lambda, rng, rounds);
    std::vector<FunctorComplex> funs = random_functor_complex_corpus(X, rng, rounds);
    std::vector<FunctorComplex> zeros;  // complexes with terms vanishing on the algebra
    for (int r = 0; r < rounds; ++r) {
        int lo = int(rng() % 3) - 1;
        FpFunctor a = random_mod0_functor(X, rng), b = random_mod0_functor(X, rng);
        zeros.push_back(functor_stalk_complex(a, lo));
        FpHom H = fp_hom(a, b);
        zeros.push_back(make_functor_complex(X, lo, {a, b}, {random_fp_morphism(a, b, H, rng)}));
    }
    R.count("mod0_complexes", long(zeros.size()));

    int np = int(projs.size()), nf = int(funs.size());
    std::vector<std::string> aerr(size_t(np));
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < np; ++i) {
        try {
            adjunction_check_derived_right(funs[size_t(i) % size_t(nf)], projs[size_t(i)]);
        } catch (const std::exception& e) {
            aerr[size_t(i)] = std::string(e.what()) + " on " + describe(projs[size_t(i)]);
        }
    }
    for (int i = 0; i < np; ++i) {
        if (!aerr[size_t(i)].empty())
            R.fail("right adjunction: " + aerr[size_t(i)]);
        else
            R.count("right_adjunction");
    }

    // injective objects: Hom(-, (-,I)) stays exact on short exact sequences
    int nv = int(lambda.idempotents().size());
    struct SesJob {
        FpFunctor sub, mid, quo;
        FunctorMorphism incl;
        int vertex;
    };
    std::vector<SesJob> jobs;
    for (int r = 0; r < rounds; ++r) {
        FpFunctor m = random_fp_functor(X, rng, 2), t = random_fp_functor(X, rng, 2);
        FpHom H = fp_hom(m, t);
        FunctorMorphism eta = random_fp_morphism(m, t, H, rng);
        FunctorKernel K = functor_kernel(eta);
        FunctorCokernel Q = functor_cokernel(K.incl);
        jobs.push_back({K.ker, m, Q.coker, K.incl, int(rng() % u64(nv))});
    }
    int nj = int(jobs.size());
    std::vector<std::string> jerr(size_t(nj));
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < nj; ++i) {
        try {
            const SesJob& J = jobs[size_t(i)];
            FpFunctor inj = va_rho(X, indec_projective(lambda, J.vertex));
            FpHom Hm = fp_hom(J.mid, inj);
            FpHom Hs = fp_hom(J.sub, inj);
            Fp f = lambda.field();
            FpMatrix rows(Hm.dim(), std::max(Hs.dim(), 1), f);
            for (int j = 0; j < Hm.dim(); ++j) {
                std::vector<u32> co =
                    fp_hom_coords(Hs, functor_compose(J.incl, Hm.basis[size_t(j)]));
                for (size_t c = 0; c < co.size(); ++c) rows.set(j, int(c), co[c]);
            }
            require(rows.rank() == Hs.dim(),
                    "restriction along the inclusion is not surjective");
        } catch (const std::exception& e) {
            jerr[size_t(i)] = e.what();
        }
    }
    for (int i = 0; i < nj; ++i) {
        if (!jerr[size_t(i)].empty())
            R.fail("injective object: " + jerr[size_t(i)]);
        else
            R.count("injective_hom_exact");
    }

    // complexes vanishing on the algebra have no homotopy classes into (-, M)
    int nz = int(zeros.size()), nm = int(mods.size());
    std::vector<std::string> zerr(size_t(nz));
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < nz; ++i) {
        try {
            FunctorComplex Rz = termwise_va_rho(X, mods[size_t(i) % size_t(nm)]);
            FunctorKHom H = khom(zeros[size_t(i)], Rz);
            require(H.dim() == 0, "nonzero homotopy class out of a vanishing complex");
        } catch (const std::exception& e) {
            zerr[size_t(i)] = std::string(e.what()) + " on " + describe(zeros[size_t(i)]);
        }
    }
    for (int i = 0; i < nz; ++i) {
        if (!zerr[size_t(i)].empty())
            R.fail("restricted Hom vanishing: " + zerr[size_t(i)]);
        else
            R.count("hom_inj_zero");
    }
    return R;
}

}  // namespace funcat
