#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "funcat/fp.hpp"
#include "funcat/kernels.hpp"

using namespace funcat;

namespace {

FpMatrix random_matrix(std::mt19937_64& rng, int rows, int cols, Fp f) {
    FpMatrix m(rows, cols, f);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.set(i, j, u32(rng() % f.p));
    return m;
}

// all vectors of F_p^n in lexicographic order
std::vector<std::vector<u32>> all_vectors(u32 p, int n) {
    std::vector<std::vector<u32>> out;
    std::vector<u32> v(n, 0);
    while (true) {
        out.push_back(v);
        int i = n - 1;
        while (i >= 0 && v[i] == p - 1) v[i--] = 0;
        if (i < 0) break;
        ++v[i];
    }
    return out;
}

std::vector<u32> mul_vec(const FpMatrix& A, const std::vector<u32>& x) {
    Fp f = A.field();
    std::vector<u32> b(A.rows(), 0);
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j) b[i] = f.add(b[i], f.mul(A.at(i, j), x[j]));
    return b;
}

}  // namespace

TEST_CASE("prime field arithmetic") {
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK(is_prime(101));
    CHECK(!is_prime(1));
    CHECK(!is_prime(0));
    CHECK(!is_prime(91));  // 7*13
    CHECK_THROWS_AS(Fp(4), Error);
    CHECK_THROWS_AS(Fp(1), Error);

    for (u32 p : {2u, 3u, 5u, 7u, 1000003u}) {
        Fp f(p);
        for (u32 a = 1; a < std::min(p, 50u); ++a) {
            CHECK(f.mul(a, f.inv(a)) == 1);
            CHECK(f.add(a, f.neg(a)) == 0);
            CHECK(f.pow(a, p - 1) == 1);  // Fermat
        }
        CHECK(f.reduce(-1) == p - 1);
        CHECK(f.reduce(p) == 0);
    }
}

TEST_CASE("rref frozen examples") {
    Fp f5(5);
    FpMatrix a = FpMatrix::from({{1, 2}, {2, 4}}, f5);
    std::vector<int> piv;
    int rk = 0;
    FpMatrix r = a.rref(&piv, &rk);
    CHECK(r == FpMatrix::from({{1, 2}, {0, 0}}, f5));
    CHECK(piv == std::vector<int>{0});
    CHECK(rk == 1);
    CHECK(a.rank() == 1);

    Fp f2(2);
    FpMatrix b = FpMatrix::from({{1, 1}}, f2);
    FpMatrix k = b.kernel_basis();
    CHECK(k == FpMatrix::from({{1, 1}}, f2));

    auto x = a.solve({1, 2});
    REQUIRE(x.has_value());
    CHECK(*x == std::vector<u32>{1, 0});
    CHECK(!a.solve({1, 3}).has_value());
}

TEST_CASE("solve and kernel against exhaustive enumeration") {
    std::mt19937_64 rng(20260815);
    for (u32 p : {2u, 3u}) {
        Fp f(p);
        for (int iter = 0; iter < 40; ++iter) {
            int rows = 1 + int(rng() % 4);
            int cols = 1 + int(rng() % 5);
            FpMatrix A = random_matrix(rng, rows, cols, f);
            auto vecs = all_vectors(p, cols);

            // kernel: rows of kernel_basis solve A v = 0, and the count matches
            FpMatrix K = A.kernel_basis();
            size_t nker = 0;
            for (const auto& v : vecs) {
                bool zero = true;
                for (u32 e : mul_vec(A, v))
                    if (e) zero = false;
                if (zero) ++nker;
            }
            size_t expect = 1;
            for (int i = 0; i < K.rows(); ++i) expect *= p;
            CHECK(nker == expect);
            CHECK(K.rows() == cols - A.rank());
            for (int i = 0; i < K.rows(); ++i) {
                std::vector<u32> v(K.row_ptr(i), K.row_ptr(i) + cols);
                for (u32 e : mul_vec(A, v)) CHECK(e == 0);
            }
            CHECK(K.rank() == K.rows());

            // solve: agrees with existence by enumeration, and verifies
            std::vector<u32> b(rows);
            for (auto& e : b) e = u32(rng() % p);
            bool exists = false;
            for (const auto& v : vecs)
                if (mul_vec(A, v) == b) exists = true;
            auto x = A.solve(b);
            CHECK(x.has_value() == exists);
            if (x) CHECK(mul_vec(A, *x) == b);
        }
    }
}

TEST_CASE("rank properties and rref idempotence") {
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 60; ++iter) {
        u32 p = (iter % 3 == 0) ? 2 : (iter % 3 == 1) ? 3 : 5;
        Fp f(p);
        int rows = 1 + int(rng() % 6);
        int cols = 1 + int(rng() % 6);
        FpMatrix A = random_matrix(rng, rows, cols, f);
        FpMatrix R = A.rref();
        CHECK(R.rref() == R);
        CHECK(A.rank() == A.transpose().rank());
        CHECK(A.rank() <= std::min(rows, cols));
        // row space is preserved: every row of R solves x * A ... both ways via rank
        CHECK(FpMatrix::vstack({A, R}).rank() == A.rank());
    }
}

TEST_CASE("image basis and cokernel projection") {
    std::mt19937_64 rng(99);
    for (int iter = 0; iter < 50; ++iter) {
        u32 p = (iter % 2) ? 2 : 3;
        Fp f(p);
        int rows = 1 + int(rng() % 5);
        int cols = int(rng() % 5);
        FpMatrix A = random_matrix(rng, rows, cols, f);

        FpMatrix im = A.image_basis();
        CHECK(im.rows() == A.rank());
        CHECK(im.rank() == im.rows());
        // columns of A lie in the row space of im
        CHECK(FpMatrix::vstack({im, A.transpose()}).rank() == im.rows());

        FpMatrix Q = A.cokernel_projection();
        CHECK(Q.rows() == rows - A.rank());
        CHECK(Q.cols() == rows);
        CHECK((Q * A).is_zero());
        CHECK(Q.rank() == Q.rows());
        // exactness: {v : Qv = 0} is precisely the column space of A
        FpMatrix KQ = Q.kernel_basis();
        CHECK(KQ.rows() == A.rank());
        CHECK(FpMatrix::vstack({im, KQ}).rank() == A.rank());
    }
}

TEST_CASE("inverse") {
    std::mt19937_64 rng(123);
    Fp f(5);
    FpMatrix sing = FpMatrix::from({{1, 2}, {2, 4}}, f);
    CHECK(!sing.try_invert().has_value());
    CHECK_THROWS_AS(sing.invert(), Error);
    int found = 0;
    for (int iter = 0; iter < 80; ++iter) {
        int n = 1 + int(rng() % 4);
        FpMatrix A = random_matrix(rng, n, n, f);
        auto inv = A.try_invert();
        if (A.rank() == n) {
            REQUIRE(inv.has_value());
            CHECK(A * *inv == FpMatrix::identity(n, f));
            CHECK(*inv * A == FpMatrix::identity(n, f));
            CHECK(A.invert() == *inv);
            ++found;
        } else {
            CHECK(!inv.has_value());
        }
    }
    CHECK(found > 10);
}

TEST_CASE("two sided matrix solves") {
    std::mt19937_64 rng(55);
    for (int iter = 0; iter < 50; ++iter) {
        u32 p = (iter % 2) ? 3 : 7;
        Fp f(p);
        int m = 1 + int(rng() % 4), k = 1 + int(rng() % 4), n = 1 + int(rng() % 4);
        FpMatrix A = random_matrix(rng, m, k, f);
        FpMatrix X0 = random_matrix(rng, k, n, f);
        FpMatrix B = A * X0;
        auto X = solve_right(A, B);
        REQUIRE(X.has_value());
        CHECK(A * *X == B);

        FpMatrix Y0 = random_matrix(rng, n, m, f);
        FpMatrix C = Y0 * A;
        auto Y = solve_left(A, C);
        REQUIRE(Y.has_value());
        CHECK(*Y * A == C);
    }
    // unsolvable instance
    Fp f2(2);
    FpMatrix Z(2, 2, f2);  // zero map
    FpMatrix I = FpMatrix::identity(2, f2);
    CHECK(!solve_right(Z, I).has_value());
    CHECK(!solve_left(Z, I).has_value());
}

TEST_CASE("row solver matches one off solves") {
    std::mt19937_64 rng(314);
    for (int iter = 0; iter < 40; ++iter) {
        u32 p = (iter % 2) ? 2 : 5;
        Fp f(p);
        int rows = 1 + int(rng() % 5), cols = 1 + int(rng() % 5);
        FpMatrix B = random_matrix(rng, rows, cols, f);
        RowSolver rs(B);
        CHECK(rs.ambient() == rows);
        for (int t = 0; t < 8; ++t) {
            std::vector<u32> x0(rows);
            for (auto& e : x0) e = u32(rng() % p);
            // v := x0 * B is in the row space by construction
            std::vector<u32> v(cols, 0);
            for (int i = 0; i < rows; ++i)
                for (int j = 0; j < cols; ++j) v[j] = f.add(v[j], f.mul(x0[i], B.at(i, j)));
            auto x = rs.solve(v);
            REQUIRE(x.has_value());
            std::vector<u32> back(cols, 0);
            for (int i = 0; i < rows; ++i)
                for (int j = 0; j < cols; ++j) back[j] = f.add(back[j], f.mul((*x)[i], B.at(i, j)));
            CHECK(back == v);
        }
        // vectors outside the row space are rejected
        FpMatrix K = B.transpose().kernel_basis();
        if (K.rows() > 0) {
            std::vector<u32> w(K.row_ptr(0), K.row_ptr(0) + cols);
            // w is orthogonal-complement material only when nonzero; any vector
            // with a component outside rowspace(B) must be rejected, so test a
            // vector v + w where w != 0 satisfies B^T w = 0 ... simpler: count
            size_t in_space = 0;
            auto vecs = all_vectors(p, cols);
            if (vecs.size() <= 4096) {
                for (const auto& vv : vecs)
                    if (rs.solve(vv)) ++in_space;
                size_t expect = 1;
                for (int i = 0; i < B.rank(); ++i) expect *= p;
                CHECK(in_space == expect);
            }
            (void)w;
        }
    }
}

TEST_CASE("stacking helpers") {
    Fp f(3);
    FpMatrix a = FpMatrix::from({{1, 2}}, f);
    FpMatrix b = FpMatrix::from({{2, 0}}, f);
    CHECK(FpMatrix::hstack({a, b}) == FpMatrix::from({{1, 2, 2, 0}}, f));
    CHECK(FpMatrix::vstack({a, b}) == FpMatrix::from({{1, 2}, {2, 0}}, f));
    CHECK(FpMatrix::block_diag({a, b}) == FpMatrix::from({{1, 2, 0, 0}, {0, 0, 2, 0}}, f));
    FpMatrix e(0, 2, f);
    CHECK(FpMatrix::vstack({e, a}) == a);
    CHECK(FpMatrix::block_diag({e, a}).rows() == 1);
    CHECK(FpMatrix::block_diag({e, a}).cols() == 4);
}

TEST_CASE("zero dimensional edge cases") {
    Fp f(2);
    FpMatrix z(0, 3, f);
    CHECK(z.rank() == 0);
    CHECK(z.kernel_basis().rows() == 3);
    CHECK(z.is_zero());
    FpMatrix z2(3, 0, f);
    CHECK(z2.rank() == 0);
    CHECK(z2.kernel_basis().rows() == 0);
    CHECK((z2 * z).rows() == 3);
    CHECK((z2 * z).cols() == 3);
    CHECK((z2 * z).is_zero());
    FpMatrix e(0, 0, f);
    CHECK(e.try_invert().has_value());
    auto s = z2.solve({0, 0, 0});
    REQUIRE(s.has_value());
    CHECK(s->empty());
}

TEST_CASE("row span closure") {
    std::mt19937_64 rng(55);
    for (u32 p : {2u, 5u}) {
        Fp f(p);
        for (int iter = 0; iter < 30; ++iter) {
            int n = 1 + int(rng() % 5);
            FpMatrix A = random_matrix(rng, int(rng() % 5), n, f);
            RowSpan sp(n, f);
            sp.insert_rows(A);
            CHECK(sp.dim() == A.rank());
            CHECK(sp.basis() == A.rref().submatrix(0, 0, A.rank(), n));
            // membership agrees with solvability of x*A = v
            for (int t = 0; t < 8; ++t) {
                std::vector<u32> v(n);
                for (auto& x : v) x = u32(rng() % p);
                FpMatrix vm(1, n, f);
                for (int j = 0; j < n; ++j) vm.set(0, j, v[j]);
                bool member = solve_left(A, vm).has_value();
                CHECK(sp.contains(v) == member);
                RowSpan sp2 = sp;
                CHECK(sp2.insert(v) == !member);
            }
        }
    }
}

TEST_CASE("serial and parallel kernels agree") {
    std::mt19937_64 rng(4242);
    Fp f(101);
    for (int iter = 0; iter < 6; ++iter) {
        int m = 20 + int(rng() % 60), k = 20 + int(rng() % 60), n = 20 + int(rng() % 60);
        FpMatrix A = random_matrix(rng, m, k, f);
        FpMatrix B = random_matrix(rng, k, n, f);
        std::vector<u32> cs(size_t(m) * n, 0), cp(size_t(m) * n, 0);
        kernels::matmul_serial(A.data().data(), B.data().data(), cs.data(), m, k, n, f);
        kernels::matmul_parallel(A.data().data(), B.data().data(), cp.data(), m, k, n, f);
        CHECK(cs == cp);

        FpMatrix M = random_matrix(rng, 40 + int(rng() % 40), 40 + int(rng() % 40), f);
        std::vector<u32> ds = M.data(), dp = M.data();
        auto ps = kernels::rref_serial(ds.data(), M.rows(), M.cols(), f);
        auto pp = kernels::rref_parallel(dp.data(), M.rows(), M.cols(), f);
        CHECK(ds == dp);
        CHECK(ps == pp);
    }

    // the runtime switch is honoured
    bool before = kernels::parallel_enabled();
    kernels::set_parallel(false);
    CHECK(!kernels::parallel_enabled());
    kernels::set_parallel(before);
}

TEST_CASE("large product exercises the dispatch threshold") {
    std::mt19937_64 rng(777);
    Fp f(2147483647);  // largest 31-bit prime: stresses the accumulator guard
    int n = 80;
    FpMatrix A = random_matrix(rng, n, n, f);
    FpMatrix B = random_matrix(rng, n, n, f);
    FpMatrix C = A * B;
    // spot check against direct accumulation
    for (int t = 0; t < 20; ++t) {
        int i = int(rng() % n), j = int(rng() % n);
        u64 acc = 0;
        u32 expect = 0;
        Fp ff = f;
        for (int l = 0; l < n; ++l) expect = ff.add(expect, ff.mul(A.at(i, l), B.at(l, j)));
        (void)acc;
        CHECK(C.at(i, j) == expect);
    }
}
