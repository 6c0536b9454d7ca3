#include "funcat/module.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace funcat {
namespace {

constexpr auto unit_vec = unit_vector;
constexpr auto row_times = row_times_matrix;
constexpr auto unflatten = unflatten_row;

std::vector<u32> flat(const FpMatrix& M) { return M.data(); }

}  // namespace

FpMatrix Module::action_of(const std::vector<u32>& x) const {
    require(int(x.size()) == alg->dim(), "action_of: coordinate size mismatch");
    Fp f = field();
    FpMatrix out(dim, dim, f);
    for (size_t b = 0; b < x.size(); ++b) {
        if (!x[b]) continue;
        out = out + act[b].scaled(x[b]);
    }
    return out;
}

void Module::validate() const {
    require(alg != nullptr, "module: null algebra");
    const Algebra& A = *alg;
    require(int(act.size()) == A.dim(), "module: one action matrix per algebra basis element");
    for (const FpMatrix& m : act) {
        require(m.rows() == dim && m.cols() == dim, "module: action matrix shape");
        require(m.field().p == A.field().p, "module: action field mismatch");
    }
    if (A.is_zero()) {
        require(dim == 0, "module: nonzero module over the zero algebra");
        return;
    }
    require(action_of(A.one()) == FpMatrix::identity(dim, field()), "module: unit must act as identity");
    for (int a = 0; a < A.dim(); ++a)
        for (int b = 0; b < A.dim(); ++b) {
            std::vector<u32> ab = A.mul(unit_vec(A.dim(), a), unit_vec(A.dim(), b));
            require(act[a] * act[b] == action_of(ab), "module: action is not multiplicative");
        }
}

bool modules_equal(const Module& a, const Module& b) {
    return a.alg == b.alg && a.dim == b.dim && a.act == b.act;
}

Module make_module(const Algebra& A, std::vector<FpMatrix> act) {
    Module m;
    m.alg = &A;
    m.dim = act.empty() ? 0 : act[0].rows();
    m.act = std::move(act);
    m.validate();
    return m;
}

Module zero_module(const Algebra& A) {
    Module m;
    m.alg = &A;
    m.dim = 0;
    m.act.assign(size_t(A.dim()), FpMatrix(0, 0, A.field()));
    return m;
}

Module regular_module(const Algebra& A) {
    Module m;
    m.alg = &A;
    m.dim = A.dim();
    for (int b = 0; b < A.dim(); ++b) m.act.push_back(A.right_mul_matrix(unit_vec(A.dim(), b)));
    return m;
}

Module indec_projective(const Algebra& A, int v) {
    require(v >= 0 && v < int(A.idempotents().size()), "indec_projective: idempotent index");
    Module R = regular_module(A);
    FpMatrix rows = A.left_mul_matrix(A.idempotents()[v]);  // row b = e_v * e_b
    return submodule(R, RowSpan(rows).basis()).module;
}

void ModuleMorphism::validate() const {
    require(src.alg == tgt.alg, "morphism: modules over different algebras");
    require(mat.rows() == src.dim && mat.cols() == tgt.dim, "morphism: matrix shape");
    for (size_t b = 0; b < src.act.size(); ++b)
        require(src.act[b] * mat == mat * tgt.act[b], "morphism: not equivariant");
}

ModuleMorphism make_morphism(Module src, Module tgt, FpMatrix mat) {
    ModuleMorphism f{std::move(src), std::move(tgt), std::move(mat)};
    f.validate();
    return f;
}

ModuleMorphism identity_morphism(const Module& M) {
    return ModuleMorphism{M, M, FpMatrix::identity(M.dim, M.field())};
}

ModuleMorphism zero_morphism(const Module& src, const Module& tgt) {
    return ModuleMorphism{src, tgt, FpMatrix(src.dim, tgt.dim, src.field())};
}

ModuleMorphism compose(const ModuleMorphism& f, const ModuleMorphism& g) {
    require(modules_equal(f.tgt, g.src), "compose: middle modules differ");
    return ModuleMorphism{f.src, g.tgt, f.mat * g.mat};
}

FpMatrix hom_basis(const Module& M, const Module& N) {
    require(M.alg == N.alg, "hom_basis: modules over different algebras");
    const Algebra& A = *M.alg;
    Fp f = M.field();
    int m = M.dim, n = N.dim;
    if (m * n == 0 || A.is_zero()) return FpMatrix(0, m * n, f);
    const auto& gens = A.generators();
    FpMatrix C(int(gens.size()) * m * n, m * n, f);
    for (size_t gi = 0; gi < gens.size(); ++gi) {
        FpMatrix AM = M.action_of(gens[gi]);
        FpMatrix AN = N.action_of(gens[gi]);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) {
                int row = (int(gi) * m + i) * n + j;
                for (int k = 0; k < m; ++k) {
                    int col = k * n + j;
                    C.set(row, col, f.add(C.at(row, col), AM.at(i, k)));
                }
                for (int l = 0; l < n; ++l) {
                    int col = i * n + l;
                    C.set(row, col, f.sub(C.at(row, col), AN.at(l, j)));
                }
            }
    }
    return C.kernel_basis();
}

ModuleMorphism hom_element(const Module& M, const Module& N, const FpMatrix& basis, int row) {
    require(row >= 0 && row < basis.rows(), "hom_element: row out of range");
    require(basis.cols() == M.dim * N.dim, "hom_element: basis width mismatch");
    return make_morphism(M, N, unflatten(basis.row_ptr(row), M.dim, N.dim, M.field()));
}

std::vector<u32> flatten_morphism(const ModuleMorphism& f) { return f.mat.data(); }

FpMatrix invariant_span(const Module& M, const FpMatrix& rows) {
    require(rows.cols() == M.dim, "invariant_span: ambient mismatch");
    RowSpan span(M.dim, M.field());
    span.insert_rows(rows);
    const auto& gens = M.alg->generators();
    std::vector<FpMatrix> gact;
    for (const auto& g : gens) gact.push_back(M.action_of(g));
    bool changed = true;
    while (changed) {
        changed = false;
        FpMatrix snap = span.basis();
        for (int r = 0; r < snap.rows(); ++r) {
            std::vector<u32> v(snap.row_ptr(r), snap.row_ptr(r) + snap.cols());
            for (const FpMatrix& ga : gact)
                if (span.insert(row_times(v, ga))) changed = true;
        }
    }
    return span.basis();
}

SubQuotient submodule(const Module& M, const FpMatrix& invariant_rows) {
    require(invariant_rows.cols() == M.dim, "submodule: ambient mismatch");
    FpMatrix B = RowSpan(invariant_rows).basis();
    Module S;
    S.alg = M.alg;
    S.dim = B.rows();
    RowSolver rs(B);
    for (const FpMatrix& a : M.act) {
        auto X = rs.solve_rows(B * a);
        require(X.has_value(), "submodule: row space is not action-invariant");
        S.act.push_back(*X);
    }
    return SubQuotient{S, make_morphism(S, M, B)};
}

SubQuotient quotient(const Module& M, const FpMatrix& invariant_rows) {
    require(invariant_rows.cols() == M.dim, "quotient: ambient mismatch");
    FpMatrix B = RowSpan(invariant_rows).basis();
    FpMatrix K = B.kernel_basis();      // rows: complement coordinates
    FpMatrix P = K.transpose();         // M.dim x nfree, kernel of (. * P) = row space of B
    std::vector<int> pivots;
    B.rref(&pivots, nullptr);
    std::vector<bool> is_piv(size_t(M.dim), false);
    for (int c : pivots) is_piv[size_t(c)] = true;
    Fp f = M.field();
    FpMatrix S(P.cols(), M.dim, f);  // section: unit rows at free coordinates
    {
        int j = 0;
        for (int c = 0; c < M.dim; ++c)
            if (!is_piv[size_t(c)]) S.set(j++, c, 1);
        require(j == P.cols(), "quotient: free coordinate count mismatch");
    }
    Module Q;
    Q.alg = M.alg;
    Q.dim = P.cols();
    for (const FpMatrix& a : M.act) Q.act.push_back(S * a * P);
    return SubQuotient{Q, make_morphism(M, Q, P)};
}

SubQuotient kernel(const ModuleMorphism& fm) {
    return submodule(fm.src, fm.mat.transpose().kernel_basis());
}

SubQuotient image(const ModuleMorphism& fm) { return submodule(fm.tgt, RowSpan(fm.mat).basis()); }

SubQuotient cokernel(const ModuleMorphism& fm) {
    return quotient(fm.tgt, RowSpan(fm.mat).basis());
}

SumData direct_sum(const std::vector<Module>& parts) {
    require(!parts.empty(), "direct_sum: empty part list");
    const Algebra& A = *parts[0].alg;
    Fp f = parts[0].field();
    int total = 0;
    for (const Module& m : parts) {
        require(m.alg == &A, "direct_sum: parts over different algebras");
        total += m.dim;
    }
    Module sum;
    sum.alg = &A;
    sum.dim = total;
    for (int b = 0; b < A.dim(); ++b) {
        std::vector<FpMatrix> blocks;
        for (const Module& m : parts) blocks.push_back(m.act[b]);
        sum.act.push_back(FpMatrix::block_diag(blocks));
    }
    SumData out{sum, {}, {}};
    int off = 0;
    for (const Module& m : parts) {
        FpMatrix in(m.dim, total, f), pr(total, m.dim, f);
        for (int i = 0; i < m.dim; ++i) {
            in.set(i, off + i, 1);
            pr.set(off + i, i, 1);
        }
        out.incl.push_back(ModuleMorphism{m, sum, in});
        out.proj.push_back(ModuleMorphism{sum, m, pr});
        off += m.dim;
    }
    return out;
}

FpMatrix radical_rows(const Module& M) {
    const FpMatrix& J = M.alg->radical();
    RowSpan span(M.dim, M.field());
    for (int r = 0; r < J.rows(); ++r) {
        std::vector<u32> j(J.row_ptr(r), J.row_ptr(r) + J.cols());
        span.insert_rows(M.action_of(j));
    }
    return span.basis();
}

FpMatrix radical_power_rows(const Module& M, int i) {
    require(i >= 0, "radical_power_rows: negative power");
    if (i == 0) return FpMatrix::identity(M.dim, M.field());
    const auto& filt = M.alg->filtration();
    if (size_t(i) > filt.size()) return FpMatrix(0, M.dim, M.field());
    const FpMatrix& J = filt[size_t(i) - 1];
    RowSpan span(M.dim, M.field());
    for (int r = 0; r < J.rows(); ++r) {
        std::vector<u32> j(J.row_ptr(r), J.row_ptr(r) + J.cols());
        span.insert_rows(M.action_of(j));
    }
    return span.basis();
}

SubQuotient top_of(const Module& M) { return quotient(M, radical_rows(M)); }

CoverData projective_cover(const Module& M) {
    const Algebra& A = *M.alg;
    require(A.idempotents_primitive(), "projective_cover: needs a primitive idempotent list");
    Fp f = M.field();
    if (M.dim == 0) {
        Module z = zero_module(A);
        return CoverData{z, zero_morphism(z, M), {}};
    }
    RowSpan cur(M.dim, f);
    cur.insert_rows(radical_rows(M));
    struct Comp {
        int v;
        std::vector<u32> m;
    };
    std::vector<Comp> comps;
    for (size_t v = 0; v < A.idempotents().size(); ++v) {
        FpMatrix mev = RowSpan(M.action_of(A.idempotents()[v])).basis();
        for (int r = 0; r < mev.rows(); ++r) {
            std::vector<u32> m(mev.row_ptr(r), mev.row_ptr(r) + mev.cols());
            if (cur.contains(m)) continue;
            comps.push_back({int(v), m});
            FpMatrix img(A.dim(), M.dim, f);
            for (int b = 0; b < A.dim(); ++b) {
                std::vector<u32> mb = row_times(m, M.act[b]);
                for (int j = 0; j < M.dim; ++j) img.set(b, j, mb[j]);
            }
            cur.insert_rows(img);
        }
    }
    require(cur.dim() == M.dim, "projective_cover: generators plus radical fail to span");
    Module R = regular_module(A);
    std::map<int, SubQuotient> pv;  // vertex -> (P_v, inclusion into regular)
    std::vector<Module> parts;
    std::vector<FpMatrix> mats;
    std::vector<int> verts;
    RowSpan imgspan(M.dim, f);
    for (const Comp& c : comps) {
        auto it = pv.find(c.v);
        if (it == pv.end()) {
            FpMatrix rows = A.left_mul_matrix(A.idempotents()[c.v]);
            it = pv.emplace(c.v, submodule(R, RowSpan(rows).basis())).first;
        }
        const FpMatrix& B = it->second.map.mat;  // basis of e_v A in algebra coords
        FpMatrix mat(B.rows(), M.dim, f);
        for (int r = 0; r < B.rows(); ++r) {
            std::vector<u32> b(B.row_ptr(r), B.row_ptr(r) + B.cols());
            std::vector<u32> im = row_times(c.m, M.action_of(b));
            for (int j = 0; j < M.dim; ++j) mat.set(r, j, im[j]);
        }
        parts.push_back(it->second.module);
        mats.push_back(mat);
        verts.push_back(c.v);
        imgspan.insert_rows(mat);
    }
    require(imgspan.dim() == M.dim, "projective_cover: not surjective");
    SumData sd = direct_sum(parts);
    ModuleMorphism epi = make_morphism(sd.sum, M, FpMatrix::vstack(mats));
    FpMatrix kerb = epi.mat.transpose().kernel_basis();
    RowSpan pj(sd.sum.dim, f);
    pj.insert_rows(radical_rows(sd.sum));
    for (int r = 0; r < kerb.rows(); ++r)
        require(pj.contains(std::vector<u32>(kerb.row_ptr(r), kerb.row_ptr(r) + kerb.cols())),
                "projective_cover: kernel escapes the cover radical");
    return CoverData{sd.sum, epi, verts};
}

Presentation projective_presentation(const Module& M) {
    CoverData c0 = projective_cover(M);
    SubQuotient k = kernel(c0.epi);
    CoverData c1 = projective_cover(k.module);
    return Presentation{c1.cover, c0.cover, compose(c1.epi, k.map), c0.epi};
}

Approximation right_approximation(const Module& gen, const Module& N) {
    require(gen.alg == N.alg, "right_approximation: modules over different algebras");
    Fp f = gen.field();
    FpMatrix H = hom_basis(gen, N);
    if (H.rows() == 0)
        return Approximation{zero_module(*gen.alg),
                             ModuleMorphism{zero_module(*gen.alg), N, FpMatrix(0, N.dim, f)},
                             {}};
    std::vector<Module> parts(size_t(H.rows()), gen);
    std::vector<FpMatrix> mats;
    std::vector<int> used;
    for (int r = 0; r < H.rows(); ++r) {
        mats.push_back(unflatten(H.row_ptr(r), gen.dim, N.dim, f));
        used.push_back(r);
    }
    SumData sd = direct_sum(parts);
    return Approximation{sd.sum, make_morphism(sd.sum, N, FpMatrix::vstack(mats)), used};
}

Approximation irredundant_right_approximation(const Module& gen, const Module& N) {
    require(gen.alg == N.alg, "right_approximation: modules over different algebras");
    Fp f = gen.field();
    FpMatrix H = hom_basis(gen, N);
    FpMatrix E = hom_basis(gen, gen);
    std::vector<FpMatrix> hmat, emat;
    for (int r = 0; r < H.rows(); ++r) hmat.push_back(unflatten(H.row_ptr(r), gen.dim, N.dim, f));
    for (int r = 0; r < E.rows(); ++r) emat.push_back(unflatten(E.row_ptr(r), gen.dim, gen.dim, f));
    // forward greedy: keep h_k only when it is not generated by the kept ones
    std::vector<int> keep;
    RowSpan span(gen.dim * N.dim, f);
    for (int k = 0; k < H.rows(); ++k) {
        if (span.contains(flat(hmat[size_t(k)]))) continue;
        keep.push_back(k);
        for (const FpMatrix& g : emat) span.insert(flat(g * hmat[size_t(k)]));
    }
    // backward sweep: drop any kept generator lying in the span of the others
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = int(keep.size()) - 1; i >= 0; --i) {
            RowSpan rest(gen.dim * N.dim, f);
            for (size_t j = 0; j < keep.size(); ++j) {
                if (int(j) == i) continue;
                for (const FpMatrix& g : emat) rest.insert(flat(g * hmat[size_t(keep[j])]));
            }
            if (rest.contains(flat(hmat[size_t(keep[size_t(i)])]))) {
                keep.erase(keep.begin() + i);
                changed = true;
            }
        }
    }
    if (keep.empty())
        return Approximation{zero_module(*gen.alg),
                             ModuleMorphism{zero_module(*gen.alg), N, FpMatrix(0, N.dim, f)},
                             {}};
    std::vector<Module> parts(keep.size(), gen);
    std::vector<FpMatrix> mats;
    for (int k : keep) mats.push_back(hmat[size_t(k)]);
    SumData sd = direct_sum(parts);
    return Approximation{sd.sum, make_morphism(sd.sum, N, FpMatrix::vstack(mats)), keep};
}

std::optional<ModuleMorphism> factor_through(const ModuleMorphism& fm, const ModuleMorphism& e) {
    require(modules_equal(fm.tgt, e.tgt), "factor_through: targets differ");
    Fp f = fm.src.field();
    FpMatrix H = hom_basis(fm.src, e.src);
    FpMatrix rows(H.rows(), fm.src.dim * fm.tgt.dim, f);
    for (int r = 0; r < H.rows(); ++r) {
        std::vector<u32> comp = flat(unflatten(H.row_ptr(r), fm.src.dim, e.src.dim, f) * e.mat);
        for (size_t j = 0; j < comp.size(); ++j) rows.set(r, int(j), comp[j]);
    }
    auto c = RowSolver(rows).solve(flat(fm.mat));
    if (!c) return std::nullopt;
    FpMatrix G(fm.src.dim, e.src.dim, f);
    for (int r = 0; r < H.rows(); ++r)
        if ((*c)[size_t(r)]) G = G + unflatten(H.row_ptr(r), fm.src.dim, e.src.dim, f).scaled((*c)[size_t(r)]);
    return make_morphism(fm.src, e.src, G);
}

std::optional<ModuleMorphism> factor_over(const ModuleMorphism& fm, const ModuleMorphism& m) {
    require(modules_equal(fm.src, m.src), "factor_over: sources differ");
    Fp f = fm.src.field();
    FpMatrix H = hom_basis(m.tgt, fm.tgt);
    FpMatrix rows(H.rows(), fm.src.dim * fm.tgt.dim, f);
    for (int r = 0; r < H.rows(); ++r) {
        std::vector<u32> comp = flat(m.mat * unflatten(H.row_ptr(r), m.tgt.dim, fm.tgt.dim, f));
        for (size_t j = 0; j < comp.size(); ++j) rows.set(r, int(j), comp[j]);
    }
    auto c = RowSolver(rows).solve(flat(fm.mat));
    if (!c) return std::nullopt;
    FpMatrix G(m.tgt.dim, fm.tgt.dim, f);
    for (int r = 0; r < H.rows(); ++r)
        if ((*c)[size_t(r)]) G = G + unflatten(H.row_ptr(r), m.tgt.dim, fm.tgt.dim, f).scaled((*c)[size_t(r)]);
    return make_morphism(m.tgt, fm.tgt, G);
}

std::optional<AddWitness> in_add_witness(const Module& gen, const Module& N) {
    Approximation ap = irredundant_right_approximation(gen, N);
    auto sec = factor_through(identity_morphism(N), ap.map);
    if (!sec) return std::nullopt;
    require(compose(*sec, ap.map).mat == FpMatrix::identity(N.dim, N.field()),
            "in_add_witness: section does not split");
    return AddWitness{ap, *sec};
}

int projective_dimension(const Module& M, int cap) {
    require(cap >= 0, "projective_dimension: negative cap");
    Module cur = M;
    int pd = 0;
    if (cur.dim == 0) return 0;
    for (;;) {
        CoverData c = projective_cover(cur);
        SubQuotient k = kernel(c.epi);
        if (k.module.dim == 0) return pd;
        ++pd;
        if (pd > cap) return -1;
        cur = k.module;
    }
}

int syzygy_gldim(const Algebra& A, int cap) {
    if (A.is_zero()) return 0;
    if (cap < 0) cap = 2 * A.dim() + 2;
    require(A.idempotents_primitive(), "syzygy_gldim: needs a primitive idempotent list");
    int g = 0;
    for (size_t v = 0; v < A.idempotents().size(); ++v) {
        Module S = top_of(indec_projective(A, int(v))).module;
        int pd = projective_dimension(S, cap);
        if (pd < 0) return -1;
        g = std::max(g, pd);
    }
    return g;
}

Module dual_module(const Module& M, const Algebra& Aop) {
    require(Aop.dim() == M.alg->dim() && Aop.field().p == M.field().p,
            "dual_module: incompatible opposite algebra");
    Module D;
    D.alg = &Aop;
    D.dim = M.dim;
    for (const FpMatrix& a : M.act) D.act.push_back(a.transpose());
    return D;
}

ModuleMorphism dual_morphism(const ModuleMorphism& fm, const Algebra& Aop) {
    return make_morphism(dual_module(fm.tgt, Aop), dual_module(fm.src, Aop), fm.mat.transpose());
}

bool is_projective(const Module& M) {
    if (M.dim == 0) return true;
    CoverData c = projective_cover(M);
    return kernel(c.epi).module.dim == 0;
}

bool is_injective(const Module& M, const Algebra& Aop) {
    return is_projective(dual_module(M, Aop));
}

bool is_self_injective(const Algebra& A) {
    if (A.is_zero()) return true;
    // dual of the left regular module, as a right module over A itself
    Module D;
    D.alg = &A;
    D.dim = A.dim();
    for (int b = 0; b < A.dim(); ++b)
        D.act.push_back(A.left_mul_matrix(unit_vec(A.dim(), b)).transpose());
    return is_projective(D);
}

StableHom stable_hom_basis(const Module& M, const Module& N) {
    Fp f = M.field();
    FpMatrix H = hom_basis(M, N);
    CoverData c = projective_cover(N);
    FpMatrix S = hom_basis(M, c.cover);
    RowSpan through(M.dim * N.dim, f);
    for (int r = 0; r < S.rows(); ++r)
        through.insert(flat(unflatten(S.row_ptr(r), M.dim, c.cover.dim, f) * c.epi.mat));
    FpMatrix tp = through.basis();
    RowSpan acc(tp);
    std::vector<std::vector<u32>> reps;
    for (int r = 0; r < H.rows(); ++r) {
        std::vector<u32> h(H.row_ptr(r), H.row_ptr(r) + H.cols());
        if (acc.insert(h)) reps.push_back(std::move(h));
    }
    FpMatrix R(int(reps.size()), M.dim * N.dim, f);
    for (size_t r = 0; r < reps.size(); ++r)
        for (int j = 0; j < R.cols(); ++j) R.set(int(r), j, reps[r][size_t(j)]);
    return StableHom{R, tp};
}

std::optional<ModuleMorphism> module_iso_search(const Module& M, const Module& N, u64 seed,
                                                int tries) {
    if (M.dim != N.dim || M.alg != N.alg) return std::nullopt;
    if (M.dim == 0) return ModuleMorphism{M, N, FpMatrix(0, 0, M.field())};
    Fp f = M.field();
    FpMatrix H = hom_basis(M, N);
    if (H.rows() == 0) return std::nullopt;
    for (int r = 0; r < H.rows(); ++r) {
        FpMatrix cand = unflatten(H.row_ptr(r), M.dim, N.dim, f);
        if (cand.try_invert()) return ModuleMorphism{M, N, cand};
    }
    std::mt19937_64 rng(seed);
    for (int t = 0; t < tries; ++t) {
        FpMatrix cand(M.dim, N.dim, f);
        for (int r = 0; r < H.rows(); ++r) {
            u32 c = u32(rng() % f.p);
            if (c) cand = cand + unflatten(H.row_ptr(r), M.dim, N.dim, f).scaled(c);
        }
        if (cand.try_invert()) return ModuleMorphism{M, N, cand};
    }
    return std::nullopt;
}

}  // namespace funcat
