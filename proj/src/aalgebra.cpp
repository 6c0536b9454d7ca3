#include "funcat/aalgebra.hpp"

#include <string>
#include <utility>

namespace funcat {
namespace {

// Radical of End(+ m_t) when every End(m_t) is local with residue field F_p
// (local modules with one-dimensional tops). Blocks between non-isomorphic
// summands lie inside the radical; a block Hom(m_s, m_t) between isomorphic
// ones meets it in the kernel of h -> residue(rho ; h) for a fixed iso
// rho: m_t -> m_s. Returns the full power chain in end-algebra coordinates,
// or nullopt when the radical is zero.
std::optional<std::vector<FpMatrix>> local_radical_chain(
    const std::vector<Module>& summands, const std::vector<std::vector<FpMatrix>>& homs,
    const std::vector<std::vector<int>>& offset, const std::vector<FpMatrix>& mats,
    const RowSolver& solver, int dimE, Fp f) {
    int k = int(summands.size());
    int D = mats.empty() ? 0 : mats[0].rows();

    // isomorphism classes with a fixed iso from the class representative
    std::vector<int> cls(k, -1);
    std::vector<FpMatrix> from_rep(k, FpMatrix(0, 0, f));
    std::vector<int> reps;
    for (int s = 0; s < k; ++s) {
        for (int ci = 0; ci < int(reps.size()) && cls[s] < 0; ++ci) {
            int r = reps[ci];
            if (summands[r].dim != summands[s].dim) continue;
            u64 seed = 77003u + 1009u * u64(r) + u64(s);
            auto iso = module_iso_search(summands[r], summands[s], seed);
            if (iso) {
                cls[s] = ci;
                from_rep[s] = iso->mat;
            }
        }
        if (cls[s] < 0) {
            cls[s] = int(reps.size());
            reps.push_back(s);
            from_rep[s] = FpMatrix::identity(summands[s].dim, f);
        }
    }

    RowSpan radspan(dimE, f);
    for (int s = 0; s < k; ++s)
        for (int t = 0; t < k; ++t) {
            const FpMatrix& H = homs[s][t];
            if (H.rows() == 0) continue;
            if (cls[s] != cls[t]) {
                for (int r = 0; r < H.rows(); ++r)
                    radspan.insert(unit_vector(dimE, offset[s][t] + r));
                continue;
            }
            FpMatrix rho = from_rep[t].invert() * from_rep[s];  // m_t -> m_s
            FpMatrix I = FpMatrix::identity(summands[t].dim, f);
            FpMatrix vals(1, H.rows(), f);
            for (int r = 0; r < H.rows(); ++r) {
                FpMatrix hm = unflatten_row(H.row_ptr(r), summands[s].dim, summands[t].dim, f);
                FpMatrix psi = rho * hm;
                std::optional<u32> c;
                for (u32 cc = 0; cc < f.p && !c; ++cc)
                    if (!(psi - I.scaled(cc)).try_invert().has_value()) c = cc;
                require(c.has_value(), "end_algebra: summand endomorphism ring is not local");
                vals.set(0, r, *c);
            }
            FpMatrix ker = vals.kernel_basis();
            for (int r = 0; r < ker.rows(); ++r) {
                std::vector<u32> row(dimE, 0);
                for (int j = 0; j < H.rows(); ++j) row[offset[s][t] + j] = ker.at(r, j);
                radspan.insert(row);
            }
        }

    if (radspan.dim() == 0) return std::nullopt;

    auto combo = [&](const u32* coords) {
        FpMatrix m(D, D, f);
        for (int r = 0; r < dimE; ++r)
            if (coords[r]) m = m + mats[r].scaled(coords[r]);
        return m;
    };

    std::vector<FpMatrix> chain;
    chain.push_back(radspan.basis());
    std::vector<FpMatrix> radmats, powmats;
    for (int r = 0; r < chain[0].rows(); ++r) radmats.push_back(combo(chain[0].row_ptr(r)));
    powmats = radmats;
    for (;;) {
        RowSpan nxt(D * D, f);
        for (const FpMatrix& x : powmats)
            for (const FpMatrix& j : radmats) nxt.insert((j * x).data());  // mat(x . j)
        const FpMatrix& nb = nxt.basis();
        if (nb.rows() == 0) break;
        RowSpan cspan(dimE, f);
        powmats.clear();
        for (int r = 0; r < nb.rows(); ++r) {
            std::vector<u32> row(nb.row_ptr(r), nb.row_ptr(r) + D * D);
            auto c = solver.solve(row);
            require(c.has_value(), "end_algebra: radical power escaped the span");
            cspan.insert(*c);
            powmats.push_back(unflatten_row(nb.row_ptr(r), D, D, f));
        }
        chain.push_back(cspan.basis());
        require(int(chain.size()) <= dimE, "end_algebra: radical chain does not terminate");
    }
    return chain;
}

std::vector<SubQuotient> indec_projectives_sub(const Algebra& A) {
    Module R = regular_module(A);
    std::vector<SubQuotient> out;
    for (const std::vector<u32>& e : A.idempotents()) {
        RowSpan span(A.dim(), A.field());
        span.insert_rows(A.left_mul_matrix(e));
        out.push_back(submodule(R, span.basis()));
    }
    return out;
}

// e_v(Lambda/J^i) for i = 1..n, v over the vertex idempotents, ordered (i, v).
void refined_summands(const Algebra& A, const std::vector<SubQuotient>& pv,
                      std::vector<Module>* summands, std::vector<std::pair<int, int>>* tags) {
    int n = A.nilpotency_index();
    for (int i = 1; i <= n; ++i)
        for (int v = 0; v < int(pv.size()); ++v) {
            summands->push_back(quotient(pv[v].module, radical_power_rows(pv[v].module, i)).module);
            tags->push_back({i, v});
        }
}

}  // namespace

EndAlgebraData end_algebra(const std::vector<Module>& summands, bool summands_local) {
    require(!summands.empty(), "end_algebra: empty summand list");
    const Algebra* base = summands[0].alg;
    Fp f = summands[0].field();
    for (const Module& m : summands) {
        require(m.alg == base, "end_algebra: summands over different algebras");
        require(m.dim > 0, "end_algebra: zero summand");
    }
    SumData sd = direct_sum(summands);
    int D = sd.sum.dim;
    int k = int(summands.size());

    std::vector<FpMatrix> mats;
    std::vector<int> bsrc, btgt;
    std::vector<std::string> labels;
    std::vector<std::vector<FpMatrix>> homs(k);
    std::vector<std::vector<int>> offset(k, std::vector<int>(k, 0));
    for (int s = 0; s < k; ++s) {
        homs[s].reserve(k);
        for (int t = 0; t < k; ++t) {
            FpMatrix H = hom_basis(summands[s], summands[t]);
            offset[s][t] = int(mats.size());
            for (int r = 0; r < H.rows(); ++r) {
                FpMatrix hm = unflatten_row(H.row_ptr(r), summands[s].dim, summands[t].dim, f);
                mats.push_back(sd.proj[s].mat * hm * sd.incl[t].mat);
                bsrc.push_back(s);
                btgt.push_back(t);
                labels.push_back("h" + std::to_string(s) + "_" + std::to_string(t) + "_" +
                                 std::to_string(r));
            }
            homs[s].push_back(std::move(H));
        }
    }
    int dimE = int(mats.size());
    FpMatrix end_mats(dimE, D * D, f);
    for (int r = 0; r < dimE; ++r) {
        std::vector<u32> fl = mats[r].data();
        for (int j = 0; j < D * D; ++j) end_mats.set(r, j, fl[j]);
    }
    RowSolver solver(end_mats);
    auto coords_of = [&](const FpMatrix& m) {
        auto c = solver.solve(m.data());
        require(c.has_value(), "end_algebra: matrix outside the endomorphism span");
        return *c;
    };

    // x * y = "apply y, then x": mat(x * y) = mat(y) * mat(x)
    FpMatrix table(dimE * dimE, dimE, f);
    for (int a = 0; a < dimE; ++a)
        for (int b = 0; b < dimE; ++b) {
            std::vector<u32> c = coords_of(mats[b] * mats[a]);
            for (int j = 0; j < dimE; ++j) table.set(a * dimE + b, j, c[j]);
        }
    std::vector<u32> one = coords_of(FpMatrix::identity(D, f));
    std::vector<std::vector<u32>> idems;
    for (int t = 0; t < k; ++t) idems.push_back(coords_of(sd.proj[t].mat * sd.incl[t].mat));

    std::optional<std::vector<FpMatrix>> filt = std::nullopt;
    if (summands_local)
        filt = local_radical_chain(summands, homs, offset, mats, solver, dimE, f);
    Algebra E = Algebra::from_data(f, std::move(labels), std::move(table), std::move(one),
                                   std::move(idems), summands_local, std::move(filt));
    return EndAlgebraData{std::move(sd), std::move(E), std::move(end_mats), std::move(bsrc),
                          std::move(btgt)};
}

GldimResult verify_finite_gldim(const Algebra& A, int cap) {
    int g = syzygy_gldim(A, cap);
    return GldimResult{g >= 0, g};
}

AAlgebraData build_aalgebra(const Algebra& lambda) {
    require(!lambda.is_zero(), "aalgebra: base algebra is zero");
    require(lambda.idempotents_primitive(), "aalgebra: primitive idempotent list required");
    Fp f = lambda.field();
    int n = lambda.nilpotency_index();
    int nv = int(lambda.idempotents().size());

    std::vector<SubQuotient> pv = indec_projectives_sub(lambda);
    std::vector<Module> summands;
    std::vector<std::pair<int, int>> tags;
    refined_summands(lambda, pv, &summands, &tags);

    EndAlgebraData E = end_algebra(summands, true);
    int dt = E.end_alg.dim();

    std::vector<u32> e(dt, 0);
    std::vector<std::vector<u32>> subidems;
    std::vector<int> tn(nv, -1);
    for (size_t t = 0; t < tags.size(); ++t)
        if (tags[t].first == n) {
            tn[tags[t].second] = int(t);
            const std::vector<u32>& et = E.end_alg.idempotents()[t];
            for (int j = 0; j < dt; ++j) e[j] = f.add(e[j], et[j]);
            subidems.push_back(et);
        }
    AlgebraCorner corner = E.end_alg.corner(e, subidems, true);

    // Candidate iso Lambda -> corner: lambda acts by left multiplication on the
    // i = n part of M (each (n, v) summand is the quotient of e_v Lambda by
    // nothing, so it carries the coordinates of the submodule e_v Lambda).
    RowSolver endsolver(E.end_mats);
    RowSolver cornersolver(corner.embed);
    int D = E.sum.sum.dim;
    std::vector<RowSolver> bsolve;
    bsolve.reserve(nv);
    for (int v = 0; v < nv; ++v) bsolve.emplace_back(pv[v].map.mat);

    FpMatrix cand(lambda.dim(), corner.algebra.dim(), f);
    for (int b = 0; b < lambda.dim(); ++b) {
        std::vector<u32> eb = unit_vector(lambda.dim(), b);
        FpMatrix Em(D, D, f);
        for (int v = 0; v < nv; ++v) {
            const FpMatrix& Bv = pv[v].map.mat;
            for (int w = 0; w < nv; ++w) {
                const FpMatrix& Bw = pv[w].map.mat;
                FpMatrix blk(Bv.rows(), Bw.rows(), f);
                bool nonzero = false;
                for (int r = 0; r < Bv.rows(); ++r) {
                    std::vector<u32> x(Bv.row_ptr(r), Bv.row_ptr(r) + Bv.cols());
                    std::vector<u32> lx = lambda.mul(lambda.idempotents()[w], lambda.mul(eb, x));
                    auto c = bsolve[w].solve(lx);
                    require(c.has_value(), "aalgebra: left multiplication escaped the projective");
                    for (int j = 0; j < Bw.rows(); ++j) {
                        blk.set(r, j, (*c)[j]);
                        if ((*c)[j]) nonzero = true;
                    }
                }
                if (nonzero) Em = Em + E.sum.proj[tn[v]].mat * blk * E.sum.incl[tn[w]].mat;
            }
        }
        auto tc = endsolver.solve(Em.data());
        require(tc.has_value(), "aalgebra: left multiplication is not an endomorphism");
        auto cc = cornersolver.solve(*tc);
        require(cc.has_value(), "aalgebra: left multiplication misses the corner");
        for (int j = 0; j < corner.algebra.dim(); ++j) cand.set(b, j, (*cc)[j]);
    }
    bool ok = algebra_iso_check(lambda, corner.algebra, cand);

    return AAlgebraData{std::move(summands),   std::move(tags),   std::move(E.sum),
                        std::move(E.end_alg),  std::move(E.end_mats), std::move(e),
                        std::move(corner),     std::move(cand),   ok};
}

SubcatGen::SubcatGen(const Algebra& lambda, std::vector<Module> summands, bool summands_local)
    : lambda_(&lambda),
      summands_(std::move(summands)),
      endd_(end_algebra(summands_, summands_local)),
      gsolver_(endd_.end_mats) {
    projcert_ = certify(regular_module(lambda));
}

SubcatGen SubcatGen::projectives(const Algebra& lambda) {
    require(!lambda.is_zero(), "subcategory: base algebra is zero");
    std::vector<Module> s;
    for (int v = 0; v < int(lambda.idempotents().size()); ++v)
        s.push_back(indec_projective(lambda, v));
    return SubcatGen(lambda, std::move(s), lambda.idempotents_primitive());
}

SubcatGen SubcatGen::auslander(const Algebra& lambda) {
    require(!lambda.is_zero(), "subcategory: base algebra is zero");
    require(lambda.idempotents_primitive(), "subcategory: primitive idempotent list required");
    std::vector<SubQuotient> pv = indec_projectives_sub(lambda);
    std::vector<Module> summands;
    std::vector<std::pair<int, int>> tags;
    refined_summands(lambda, pv, &summands, &tags);
    return SubcatGen(lambda, std::move(summands), true);
}

std::vector<u32> SubcatGen::gamma_coords(const FpMatrix& endo) const {
    require(endo.rows() == gen().dim && endo.cols() == gen().dim, "gamma_coords: shape mismatch");
    auto c = gsolver_.solve(endo.data());
    require(c.has_value(), "gamma_coords: not an endomorphism of gen");
    return *c;
}

FpMatrix SubcatGen::gamma_mat(const std::vector<u32>& coords) const {
    require(int(coords.size()) == gamma().dim(), "gamma_mat: coordinate size mismatch");
    Fp f = lambda_->field();
    int D = gen().dim;
    FpMatrix m(D, D, f);
    for (int r = 0; r < gamma().dim(); ++r)
        if (coords[r] % f.p)
            m = m + unflatten_row(endd_.end_mats.row_ptr(r), D, D, f).scaled(coords[r]);
    return m;
}

std::optional<CertifiedModule> SubcatGen::certify(const Module& N) const {
    require(N.alg == lambda_, "certify: module over a different base algebra");
    auto w = in_add_witness(gen(), N);
    if (!w) return std::nullopt;
    int k = int(w->approx.used.size());
    return CertifiedModule{N, w->approx.map, w->section, k};
}

CertifiedModule SubcatGen::certified_sum(const std::vector<int>& summand_indices) const {
    if (summand_indices.empty()) {
        Module z = zero_module(*lambda_);
        ModuleMorphism id = identity_morphism(z);
        return CertifiedModule{z, id, id, 0};
    }
    std::vector<Module> parts, gens;
    std::vector<FpMatrix> pblocks, sblocks;
    for (int t : summand_indices) {
        require(t >= 0 && t < summand_count(), "certified_sum: summand index out of range");
        parts.push_back(summands_[size_t(t)]);
        gens.push_back(gen());
        pblocks.push_back(proj(t).mat);
        sblocks.push_back(incl(t).mat);
    }
    Module mod = direct_sum(parts).sum;
    Module power = direct_sum(gens).sum;
    ModuleMorphism from_power =
        make_morphism(power, mod, FpMatrix::block_diag(pblocks));
    ModuleMorphism section = make_morphism(mod, power, FpMatrix::block_diag(sblocks));
    return CertifiedModule{std::move(mod), std::move(from_power), std::move(section),
                           int(summand_indices.size())};
}

CertifiedModule SubcatGen::certified_gen_power(int k) const {
    require(k >= 0, "certified_gen_power: negative power");
    if (k == 0) {
        Module z = zero_module(*lambda_);
        ModuleMorphism id = identity_morphism(z);
        return CertifiedModule{z, id, id, 0};
    }
    std::vector<Module> copies(size_t(k), gen());
    Module gk = direct_sum(copies).sum;
    ModuleMorphism id = identity_morphism(gk);
    return CertifiedModule{std::move(gk), id, id, k};
}

Module SubcatGen::ev_module(const Module& X) const {
    require(X.alg == lambda_, "ev_module: module over a different base algebra");
    Fp f = lambda_->field();
    int D = gen().dim;
    FpMatrix H = hom_basis(gen(), X);
    RowSolver hs(H);
    int d = H.rows();
    std::vector<FpMatrix> phis;
    phis.reserve(d);
    for (int r = 0; r < d; ++r) phis.push_back(unflatten_row(H.row_ptr(r), D, X.dim, f));
    std::vector<FpMatrix> act;
    act.reserve(gamma().dim());
    for (int b = 0; b < gamma().dim(); ++b) {
        FpMatrix gb = unflatten_row(endd_.end_mats.row_ptr(b), D, D, f);
        FpMatrix ab(d, d, f);
        for (int r = 0; r < d; ++r) {
            auto c = hs.solve((gb * phis[r]).data());
            require(c.has_value(), "ev_module: action left the hom space");
            for (int j = 0; j < d; ++j) ab.set(r, j, (*c)[j]);
        }
        act.push_back(std::move(ab));
    }
    return make_module(gamma(), std::move(act));
}

FpMatrix SubcatGen::ev_basis(const Module& X) const {
    require(X.alg == lambda_, "ev_basis: module over a different base algebra");
    return hom_basis(gen(), X);
}

ModuleMorphism SubcatGen::ev_of_map(const ModuleMorphism& f) const {
    Fp fp = lambda_->field();
    int D = gen().dim;
    Module src = ev_module(f.src), tgt = ev_module(f.tgt);
    FpMatrix Hs = hom_basis(gen(), f.src), Ht = hom_basis(gen(), f.tgt);
    RowSolver ts(Ht);
    FpMatrix m(Hs.rows(), Ht.rows(), fp);
    for (int r = 0; r < Hs.rows(); ++r) {
        FpMatrix phir = unflatten_row(Hs.row_ptr(r), D, f.src.dim, fp);
        auto c = ts.solve((phir * f.mat).data());
        require(c.has_value(), "ev_of_map: image left the hom space");
        for (int j = 0; j < Ht.rows(); ++j) m.set(r, j, (*c)[j]);
    }
    return make_morphism(std::move(src), std::move(tgt), std::move(m));
}

StableAlgebraData build_stable_algebra(const SubcatGen& X) {
    const Algebra& G = X.gamma();
    Fp f = G.field();
    int D = X.gen().dim;
    StableHom sh = stable_hom_basis(X.gen(), X.gen());

    RowSpan ideal(G.dim(), f);
    for (int r = 0; r < sh.through_proj.rows(); ++r)
        ideal.insert(X.gamma_coords(unflatten_row(sh.through_proj.row_ptr(r), D, D, f)));
    FpMatrix B = ideal.basis();
    int sdim = G.dim() - B.rows();

    if (sdim == 0)
        return StableAlgebraData{Algebra::zero_algebra(f), std::move(B),
                                 FpMatrix(G.dim(), 0, f), FpMatrix(0, G.dim(), f), {}};

    std::vector<int> piv;
    B.rref(&piv);
    std::vector<bool> ispiv(size_t(G.dim()), false);
    for (int c : piv) ispiv[size_t(c)] = true;
    FpMatrix S(sdim, G.dim(), f);
    {
        int r = 0;
        for (int c = 0; c < G.dim(); ++c)
            if (!ispiv[size_t(c)]) S.set(r++, c, 1);
    }
    FpMatrix P = B.rows() ? B.kernel_basis().transpose() : FpMatrix::identity(G.dim(), f);

    FpMatrix table(sdim * sdim, sdim, f);
    auto srow = [&](int i) { return std::vector<u32>(S.row_ptr(i), S.row_ptr(i) + G.dim()); };
    for (int a = 0; a < sdim; ++a)
        for (int b = 0; b < sdim; ++b) {
            std::vector<u32> pr = row_times_matrix(G.mul(srow(a), srow(b)), P);
            for (int j = 0; j < sdim; ++j) table.set(a * sdim + b, j, pr[j]);
        }
    std::vector<u32> one = row_times_matrix(G.one(), P);
    std::vector<std::string> labels;
    for (int i = 0; i < sdim; ++i) labels.push_back("s" + std::to_string(i));
    std::vector<std::vector<u32>> idems;
    std::vector<int> surviving;
    for (int t = 0; t < X.summand_count(); ++t) {
        std::vector<u32> img = row_times_matrix(G.idempotents()[size_t(t)], P);
        bool nz = false;
        for (u32 x : img) nz = nz || (x % f.p);
        if (nz) {
            idems.push_back(std::move(img));
            surviving.push_back(t);
        }
    }
    Algebra SA = Algebra::from_data(f, std::move(labels), std::move(table), std::move(one),
                                    std::move(idems), G.idempotents_primitive());
    return StableAlgebraData{std::move(SA), std::move(B), std::move(P), std::move(S),
                             std::move(surviving)};
}

}  // namespace funcat
