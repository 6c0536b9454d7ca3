#pragma once

// Brute-force recomputation paths used by the tests to pin functor-level
// dimensions independently of the production algorithms:
//   - equivariant maps by exhaustive enumeration of all matrices (small p^n),
//   - Ext^1 via the extension cocycle / coboundary linear system.
// Both operate on plain modules (action matrices), nothing else.

#include <vector>

#include "funcat/module.hpp"

namespace funcat::brute {

// Enumerates every dim(V) x dim(W) matrix over F_p and counts the ones that
// commute with all basis actions.  The count is a power of p; returns its
// exponent, i.e. dim Hom(V, W).  Guarded to at most ~2^20 candidates.
inline int equivariant_dim(const Module& V, const Module& W) {
    require(V.alg == W.alg, "brute: modules over different algebras");
    const Fp f = V.field();
    const int dv = V.dim, dw = W.dim, cells = dv * dw;
    double total = 1;
    for (int i = 0; i < cells; ++i) {
        total *= f.p;
        require(total <= double(1 << 20), "brute: enumeration space too large");
    }
    u64 count = 0;
    std::vector<u32> entry(size_t(cells), 0);
    for (;;) {
        FpMatrix m(dv, dw, f);
        for (int r = 0; r < dv; ++r)
            for (int c = 0; c < dw; ++c) m.set(r, c, entry[size_t(r * dw + c)]);
        bool ok = true;
        for (int b = 0; b < V.alg->dim() && ok; ++b)
            ok = V.act[size_t(b)] * m == m * W.act[size_t(b)];
        if (ok) ++count;
        int i = 0;
        while (i < cells && entry[size_t(i)] + 1 == f.p) {
            entry[size_t(i)] = 0;
            ++i;
        }
        if (i == cells) break;
        ++entry[size_t(i)];
    }
    int dim = 0;
    while (count > 1) {
        require(count % f.p == 0, "brute: solution count is not a power of p");
        count /= f.p;
        ++dim;
    }
    return dim;
}

// dim Ext^1(V, W) for right modules V, W over the same algebra, from first
// principles: an extension 0 -> W -> E -> V -> 0 on the row space W + V is a
// family C_b (one dv x dw block per algebra basis element) making
//   act_E(b) = [[W_b, 0], [C_b, V_b]]
// a unital representation.  Those C form the cocycle space (a linear system
// over all basis pairs plus the unit), and split extensions are exactly the
// coboundaries C_b = V_b h - h W_b.
inline int ext1_dim(const Module& V, const Module& W) {
    require(V.alg == W.alg, "brute: modules over different algebras");
    const Algebra& A = *V.alg;
    const Fp f = V.field();
    const int dv = V.dim, dw = W.dim, n = A.dim();
    const int cell = dv * dw;
    if (cell == 0) return 0;
    const int unknowns = n * cell;

    std::vector<std::vector<u32>> eq;  // rows of the cocycle system
    auto blank = [&]() { return std::vector<u32>(size_t(unknowns), 0); };
    // unknown index of entry (i, j) of C_e
    auto ux = [&](int e, int i, int j) { return (e * dv + i) * dw + j; };

    std::vector<u32> ea(size_t(n), 0), eb(size_t(n), 0);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            ea.assign(size_t(n), 0);
            eb.assign(size_t(n), 0);
            ea[size_t(a)] = 1;
            eb[size_t(b)] = 1;
            std::vector<u32> prod = A.mul(ea, eb);
            const FpMatrix& Va = V.act[size_t(a)];
            const FpMatrix& Wb = W.act[size_t(b)];
            // C_a * W_b + V_a * C_b - sum_e prod_e C_e = 0, entrywise (r, c)
            for (int r = 0; r < dv; ++r)
                for (int c = 0; c < dw; ++c) {
                    std::vector<u32> row = blank();
                    for (int j = 0; j < dw; ++j)
                        row[size_t(ux(a, r, j))] =
                            f.add(row[size_t(ux(a, r, j))], Wb.at(j, c));
                    for (int i = 0; i < dv; ++i)
                        row[size_t(ux(b, i, c))] =
                            f.add(row[size_t(ux(b, i, c))], Va.at(r, i));
                    for (int e = 0; e < n; ++e)
                        if (prod[size_t(e)])
                            row[size_t(ux(e, r, c))] =
                                f.sub(row[size_t(ux(e, r, c))], prod[size_t(e)]);
                    eq.push_back(std::move(row));
                }
        }
    }
    // unit acts as the identity: sum_e one_e C_e = 0
    for (int r = 0; r < dv; ++r)
        for (int c = 0; c < dw; ++c) {
            std::vector<u32> row = blank();
            for (int e = 0; e < n; ++e)
                if (A.one()[size_t(e)]) row[size_t(ux(e, r, c))] = A.one()[size_t(e)];
            eq.push_back(std::move(row));
        }

    FpMatrix sys(int(eq.size()), unknowns, f);
    for (int r = 0; r < int(eq.size()); ++r)
        for (int c = 0; c < unknowns; ++c) sys.set(r, c, eq[size_t(r)][size_t(c)]);
    const int cocycles = unknowns - sys.rank();

    // coboundary rank: h (dv x dw) -> tuple (V_b h - h W_b)_b
    FpMatrix cob(cell, unknowns, f);
    for (int i = 0; i < dv; ++i)
        for (int j = 0; j < dw; ++j) {
            const int hrow = i * dw + j;
            for (int b = 0; b < n; ++b) {
                const FpMatrix& Vb = V.act[size_t(b)];
                const FpMatrix& Wb = W.act[size_t(b)];
                for (int r = 0; r < dv; ++r)
                    cob.set(hrow, ux(b, r, j), f.add(cob.at(hrow, ux(b, r, j)), Vb.at(r, i)));
                for (int c = 0; c < dw; ++c)
                    cob.set(hrow, ux(b, i, c), f.sub(cob.at(hrow, ux(b, i, c)), Wb.at(j, c)));
            }
        }
    const int coboundaries = cob.rank();
    require(cocycles >= coboundaries, "brute: negative ext dimension");
    return cocycles - coboundaries;
}

}  // namespace funcat::brute
