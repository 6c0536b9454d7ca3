#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "funcat/algebra.hpp"
#include "test_support.hpp"

using namespace funcat;
using namespace funcat::testsupport;

static std::vector<u32> unit_vec(int dim, int i) {
    std::vector<u32> v(dim, 0);
    v[i] = 1;
    return v;
}

TEST_CASE("dual numbers k[x]/(x^2)") {
    for (u32 p : {2u, 5u}) {
        QuiverAlgebra Q = dual_numbers(p);
        const Algebra& A = Q.algebra;
        CHECK(A.dim() == 2);
        CHECK(A.nilpotency_index() == 2);
        CHECK(A.label(0) == "e0");
        CHECK(A.label(1) == "x");
        CHECK(A.radical().rows() == 1);
        CHECK(A.radical().at(0, 1) == 1);
        // x*x = 0
        CHECK(A.mul(unit_vec(2, 1), unit_vec(2, 1)) == std::vector<u32>{0, 0});
        CHECK(A.one() == std::vector<u32>{1, 0});
        CHECK(A.idempotents().size() == 1);
        CHECK(A.idempotents_primitive());
    }
}

TEST_CASE("path algebra of A2") {
    QuiverAlgebra Q = a2(3);
    const Algebra& A = Q.algebra;
    CHECK(A.dim() == 3);
    CHECK(A.nilpotency_index() == 2);
    CHECK(A.labels() == std::vector<std::string>{"e0", "e1", "a"});
    // left-to-right composition: e0 * a = a = a * e1, a * e0 = 0
    std::vector<u32> e0 = unit_vec(3, 0), e1 = unit_vec(3, 1), a = unit_vec(3, 2);
    CHECK(A.mul(e0, a) == a);
    CHECK(A.mul(a, e1) == a);
    CHECK(A.mul(a, e0) == std::vector<u32>{0, 0, 0});
    CHECK(A.mul(e1, a) == std::vector<u32>{0, 0, 0});
    CHECK(A.radical().rows() == 1);

    // corners at the two vertices are one-dimensional
    auto c0 = A.corner(e0);
    CHECK(c0.algebra.dim() == 1);
    CHECK(c0.algebra.nilpotency_index() == 1);
    auto c1 = A.corner(e1);
    CHECK(c1.algebra.dim() == 1);
    // corner at 1 is the whole algebra
    auto cfull = A.corner(A.one(), A.idempotents(), true);
    CHECK(cfull.algebra.dim() == 3);
    CHECK(algebra_iso_check(cfull.algebra, cfull.algebra,
                            FpMatrix::identity(3, A.field())));
    // corner at 0 is the zero algebra, flagged degenerate
    auto cz = A.corner(std::vector<u32>{0, 0, 0});
    CHECK(cz.algebra.is_zero());
    CHECK(cz.algebra.dim() == 0);
}

TEST_CASE("ground field") {
    QuiverAlgebra Q = field_alg(7);
    CHECK(Q.algebra.dim() == 1);
    CHECK(Q.algebra.nilpotency_index() == 1);
    CHECK(Q.algebra.filtration().empty());
    CHECK(Q.algebra.generators().size() == 1);
}

TEST_CASE("serial k[x]/(x^3)") {
    QuiverAlgebra Q = serial3(5);
    const Algebra& A = Q.algebra;
    CHECK(A.dim() == 3);
    CHECK(A.nilpotency_index() == 3);
    CHECK(A.labels() == std::vector<std::string>{"e0", "x", "x*x"});
    CHECK(A.filtration()[0].rows() == 2);
    CHECK(A.filtration()[1].rows() == 1);
    std::vector<u32> x = unit_vec(3, 1);
    CHECK(A.mul(x, x) == unit_vec(3, 2));
    CHECK(A.mul(A.mul(x, x), x) == std::vector<u32>{0, 0, 0});
    CHECK(A.generators().size() == 1);
    CHECK(A.generators()[0] == x);
}

TEST_CASE("inadmissible and malformed relations are rejected") {
    Quiver loop{1, {{"x", 0, 0}}};
    // x^2 - x^3: finite-dimensional but the arrow ideal is not nilpotent
    Relation bad = {{1, {"x", "x"}}, {-1, {"x", "x", "x"}}};
    CHECK_THROWS_AS(build_from_quiver(loop, {bad}, Fp(5)), Error);

    // a bare arrow is too short
    Relation shortrel = {{1, {"x"}}};
    CHECK_THROWS_AS(build_from_quiver(loop, {shortrel}, Fp(5)), Error);

    // non-parallel combination
    Quiver q2{2, {{"a", 0, 1}, {"b", 1, 1}}};
    Relation mixed = {{1, {"a", "b"}}, {1, {"b", "b"}}};
    CHECK_THROWS_AS(build_from_quiver(q2, {mixed}, Fp(5)), Error);

    // free loop: infinite-dimensional, caught by the basis cap
    CHECK_THROWS_AS(build_from_quiver(loop, {}, Fp(5), 50), Error);

    // unknown arrow name
    Relation unknown = {{1, {"z", "z"}}};
    CHECK_THROWS_AS(build_from_quiver(loop, {unknown}, Fp(5)), Error);
}

TEST_CASE("self-injective Nakayama algebra on two vertices") {
    QuiverAlgebra Q = nakayama2(3);
    const Algebra& A = Q.algebra;
    CHECK(A.dim() == 4);
    CHECK(A.nilpotency_index() == 2);
    CHECK(A.radical().rows() == 2);
    std::vector<u32> a = unit_vec(4, 2), b = unit_vec(4, 3);
    CHECK(A.mul(a, b) == std::vector<u32>(4, 0));
    CHECK(A.mul(b, a) == std::vector<u32>(4, 0));
}

TEST_CASE("exterior algebra on two generators") {
    for (u32 p : {2u, 5u}) {
        QuiverAlgebra Q = exterior2(p);
        const Algebra& A = Q.algebra;
        CHECK(A.dim() == 4);  // e, x, y, xy
        CHECK(A.nilpotency_index() == 3);
        CHECK(A.filtration()[0].rows() == 3);
        CHECK(A.filtration()[1].rows() == 1);
        std::vector<u32> x = unit_vec(4, 1), y = unit_vec(4, 2);
        std::vector<u32> xy = A.mul(x, y);
        CHECK(xy == unit_vec(4, 3));
        // yx = -xy
        std::vector<u32> yx = A.mul(y, x);
        CHECK(yx[3] == A.field().neg(1));
    }
}

TEST_CASE("commutative fat point k[x,y]/(x^2,xy,y^2)") {
    QuiverAlgebra Q = commutative_fat_point(5);
    CHECK(Q.algebra.dim() == 3);
    CHECK(Q.algebra.nilpotency_index() == 2);
    CHECK(Q.algebra.radical().rows() == 2);
}

TEST_CASE("commuting square with inhomogeneous relation") {
    QuiverAlgebra Q = commuting_square(5);
    const Algebra& A = Q.algebra;
    // 4 vertices + 4 arrows + one length-2 path class
    CHECK(A.dim() == 9);
    CHECK(A.nilpotency_index() == 3);
    // ab and cd share the same normal form
    int ia = 4, ib = 5, ic = 6, id = 7;  // arrows in basis order a,b,c,d
    CHECK(A.label(ia) == "a");
    std::vector<u32> ab = A.mul(unit_vec(9, ia), unit_vec(9, ib));
    std::vector<u32> cd = A.mul(unit_vec(9, ic), unit_vec(9, id));
    CHECK(ab == cd);
    CHECK(ab != std::vector<u32>(9, 0));
}

TEST_CASE("characteristic polynomial oracle checks") {
    Fp f(5);
    // companion matrix of t^3 + 2t + 1
    FpMatrix C = FpMatrix::from({{0, 1, 0}, {0, 0, 1}, {-1, -2, 0}}, f);
    CHECK(char_poly(C) == std::vector<u32>{1, 0, 2, 1});
    // diagonal
    FpMatrix D = FpMatrix::from({{2, 0}, {0, 3}}, f);
    // (t-2)(t-3) = t^2 - 5t + 6 = t^2 + 1 mod 5
    CHECK(char_poly(D) == std::vector<u32>{1, 0, 1});
    // nilpotent Jordan block: t^4
    FpMatrix N(4, 4, f);
    for (int i = 0; i + 1 < 4; ++i) N.set(i, i + 1, 1);
    CHECK(char_poly(N) == std::vector<u32>{1, 0, 0, 0, 0});

    // Cayley-Hamilton on random matrices over several primes
    std::mt19937_64 rng(99);
    for (u32 p : {2u, 3u, 101u}) {
        Fp ff(p);
        for (int iter = 0; iter < 10; ++iter) {
            int n = 1 + int(rng() % 5);
            FpMatrix M(n, n, ff);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) M.set(i, j, u32(rng() % p));
            std::vector<u32> c = char_poly(M);
            FpMatrix acc(n, n, ff);  // sum c[k] M^{n-k}
            FpMatrix pow = FpMatrix::identity(n, ff);
            std::vector<FpMatrix> powers{pow};
            for (int k = 1; k <= n; ++k) powers.push_back(powers.back() * M);
            for (int k = 0; k <= n; ++k) acc = acc + powers[size_t(n - k)].scaled(c[k]);
            CHECK(acc.is_zero());
        }
    }
}

TEST_CASE("radical chain agrees with the arrow ideal on the quiver corpus") {
    for (u32 p : {2u, 3u, 5u}) {
        std::vector<QuiverAlgebra> corpus;
        corpus.push_back(field_alg(p));
        corpus.push_back(dual_numbers(p));
        corpus.push_back(serial3(p));
        corpus.push_back(a2(p));
        corpus.push_back(nakayama2(p));
        corpus.push_back(exterior2(p));
        corpus.push_back(commuting_square(p));
        for (const auto& Q : corpus) {
            FpMatrix rad = radical_of_algebra(Q.algebra);
            if (Q.algebra.filtration().empty())
                CHECK(rad.rows() == 0);
            else
                CHECK(rad == Q.algebra.filtration()[0]);
        }
    }
}

TEST_CASE("radical computed from scratch when no filtration is preset") {
    // rebuild the dual numbers via from_data without a preset filtration:
    // exercises the full coefficient chain (the trace form alone fails at p=2)
    for (u32 p : {2u, 3u}) {
        QuiverAlgebra Q = dual_numbers(p);
        const Algebra& A = Q.algebra;
        Fp f(p);
        FpMatrix mul(4, 2, f);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                std::vector<u32> prod = A.mul(unit_vec(2, a), unit_vec(2, b));
                for (int k = 0; k < 2; ++k) mul.set(a * 2 + b, k, prod[k]);
            }
        Algebra B = Algebra::from_data(f, {"e", "x"}, mul, {1, 0}, {{1, 0}}, true);
        CHECK(B.radical() == A.radical());
        CHECK(B.nilpotency_index() == 2);
    }
}

TEST_CASE("construction validation rejects corrupt tables") {
    QuiverAlgebra Q = a2(3);
    const Algebra& A = Q.algebra;
    Fp f(3);
    int d = A.dim();
    FpMatrix mul(d * d, d, f);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            std::vector<u32> prod = A.mul(unit_vec(d, a), unit_vec(d, b));
            for (int k = 0; k < d; ++k) mul.set(a * d + b, k, prod[k]);
        }
    // sanity: the faithful copy passes
    std::vector<std::vector<u32>> idems = {unit_vec(d, 0), unit_vec(d, 1)};
    Algebra ok = Algebra::from_data(f, A.labels(), mul, A.one(), idems, true);
    CHECK(ok.dim() == 3);

    // a*a := e0 breaks associativity
    FpMatrix bad = mul;
    bad.set(2 * d + 2, 0, 1);
    CHECK_THROWS_AS(Algebra::from_data(f, A.labels(), bad, A.one(), idems, true), Error);

    // the unit vector must act as a unit
    CHECK_THROWS_AS(Algebra::from_data(f, A.labels(), mul, unit_vec(d, 0), idems, true), Error);

    // {1} is complete orthogonal but not primitive here
    CHECK_THROWS_AS(Algebra::from_data(f, A.labels(), mul, A.one(), {A.one()}, true), Error);
    Algebra nonprim = Algebra::from_data(f, A.labels(), mul, A.one(), {A.one()}, false);
    CHECK(nonprim.dim() == 3);
    CHECK_FALSE(nonprim.idempotents_primitive());
}

TEST_CASE("opposite algebra") {
    for (u32 p : {2u, 5u}) {
        QuiverAlgebra Q = a2(p);
        Algebra op = Q.algebra.opposite();
        CHECK(op.dim() == 3);
        // in the opposite, a * e0 = a and e0 * a = 0
        std::vector<u32> e0 = unit_vec(3, 0), a = unit_vec(3, 2);
        CHECK(op.mul(a, e0) == a);
        CHECK(op.mul(e0, a) == std::vector<u32>(3, 0));
        CHECK(op.radical() == Q.algebra.radical());
        // double opposite is the original table
        Algebra opop = op.opposite();
        for (int x = 0; x < 3; ++x)
            for (int y = 0; y < 3; ++y)
                CHECK(opop.mul(unit_vec(3, x), unit_vec(3, y)) ==
                      Q.algebra.mul(unit_vec(3, x), unit_vec(3, y)));

        // commutative algebra: opposite multiplication is identical
        QuiverAlgebra S = serial3(p);
        Algebra sop = S.algebra.opposite();
        for (int x = 0; x < 3; ++x)
            for (int y = 0; y < 3; ++y)
                CHECK(sop.mul(unit_vec(3, x), unit_vec(3, y)) ==
                      S.algebra.mul(unit_vec(3, x), unit_vec(3, y)));
    }
}

TEST_CASE("iso check") {
    QuiverAlgebra Q = dual_numbers(3);
    Quiver q2{2, {}};
    QuiverAlgebra P = build_from_quiver(q2, {}, Fp(3));  // k x k, also dim 2
    Fp f(3);
    CHECK(algebra_iso_check(Q.algebra, Q.algebra, FpMatrix::identity(2, f)));
    // no linear bijection between k[x]/(x^2) and k x k is multiplicative;
    // in particular the identity matrix is not
    CHECK_FALSE(algebra_iso_check(Q.algebra, P.algebra, FpMatrix::identity(2, f)));
    // non-invertible candidate
    CHECK_FALSE(algebra_iso_check(Q.algebra, Q.algebra, FpMatrix(2, 2, f)));
    // relabelled quiver gives the same table: identity is an isomorphism
    Quiver loop{1, {{"t", 0, 0}}};
    Relation r = {{1, {"t", "t"}}};
    QuiverAlgebra R = build_from_quiver(loop, {r}, Fp(3));
    CHECK(algebra_iso_check(Q.algebra, R.algebra, FpMatrix::identity(2, f)));
}

TEST_CASE("filtration is multiplicative") {
    for (u32 p : {2u, 5u}) {
        for (const QuiverAlgebra& Q :
             {serial3(p), exterior2(p), nakayama2(p), commuting_square(p)}) {
            const Algebra& A = Q.algebra;
            int n = A.nilpotency_index();
            const auto& filt = A.filtration();
            auto power = [&](int k) -> FpMatrix {
                if (k <= 0) return FpMatrix::identity(A.dim(), A.field());
                if (k >= n) return FpMatrix(0, A.dim(), A.field());
                return filt[size_t(k - 1)];
            };
            for (int i = 1; i < n; ++i)
                for (int j = 1; j < n; ++j) {
                    RowSpan target(A.dim(), A.field());
                    target.insert_rows(power(i + j));
                    const FpMatrix &Bi = power(i), &Bj = power(j);
                    for (int r = 0; r < Bi.rows(); ++r)
                        for (int s = 0; s < Bj.rows(); ++s) {
                            std::vector<u32> x(A.dim()), y(A.dim());
                            for (int k = 0; k < A.dim(); ++k) {
                                x[k] = Bi.at(r, k);
                                y[k] = Bj.at(s, k);
                            }
                            CHECK(target.contains(A.mul(x, y)));
                        }
                }
            // strictly decreasing dimensions
            for (size_t i = 0; i + 1 < filt.size(); ++i)
                CHECK(filt[i].rows() > filt[i + 1].rows());
        }
    }
}

TEST_CASE("generators are small and generate") {
    QuiverAlgebra Q = exterior2(5);
    const auto& gens = Q.algebra.generators();
    CHECK(gens.size() == 2);  // x and y
    QuiverAlgebra N = nakayama2(5);
    CHECK(N.algebra.generators().size() <= 3);
}
