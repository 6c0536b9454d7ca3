#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace funcat {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

/// Error thrown on invalid input or violated preconditions.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw Error(msg);
}

bool is_prime(u32 n);

/// Arithmetic in the prime field F_p, 2 <= p < 2^31.
struct Fp {
    u32 p;

    explicit Fp(u32 prime);

    u32 add(u32 a, u32 b) const {
        u32 s = a + b;
        return s >= p ? s - p : s;
    }
    u32 sub(u32 a, u32 b) const { return a >= b ? a - b : a + p - b; }
    u32 neg(u32 a) const { return a ? p - a : 0; }
    u32 mul(u32 a, u32 b) const { return static_cast<u32>(u64(a) * b % p); }
    u32 inv(u32 a) const;
    u32 pow(u32 a, u64 e) const;
    /// Reduce an arbitrary signed integer into [0, p).
    u32 reduce(long long v) const {
        long long r = v % static_cast<long long>(p);
        if (r < 0) r += p;
        return static_cast<u32>(r);
    }
    bool operator==(const Fp& o) const { return p == o.p; }
};

/// Dense row-major matrix over F_p. Zero rows/cols are allowed everywhere.
class FpMatrix {
public:
    FpMatrix() : rows_(0), cols_(0), p_(2) {}
    FpMatrix(int rows, int cols, Fp f);

    static FpMatrix identity(int n, Fp f);
    /// Build from explicit (possibly negative) integer entries.
    static FpMatrix from(std::initializer_list<std::initializer_list<long long>> vals, Fp f);
    static FpMatrix from_rows(const std::vector<std::vector<long long>>& vals, int cols, Fp f);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Fp field() const { return Fp(p_); }

    u32 at(int r, int c) const { return data_[size_t(r) * cols_ + c]; }
    void set(int r, int c, u32 v) { data_[size_t(r) * cols_ + c] = v; }
    const u32* row_ptr(int r) const { return data_.data() + size_t(r) * cols_; }
    u32* row_ptr(int r) { return data_.data() + size_t(r) * cols_; }
    const std::vector<u32>& data() const { return data_; }

    FpMatrix operator+(const FpMatrix& o) const;
    FpMatrix operator-(const FpMatrix& o) const;
    FpMatrix operator*(const FpMatrix& o) const;  // kernel-dispatched
    FpMatrix negated() const;
    FpMatrix scaled(u32 c) const;
    FpMatrix transpose() const;

    bool is_zero() const;
    bool operator==(const FpMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && p_ == o.p_ && data_ == o.data_;
    }
    bool operator!=(const FpMatrix& o) const { return !(*this == o); }

    FpMatrix submatrix(int r0, int c0, int nr, int nc) const;

    static FpMatrix hstack(const std::vector<FpMatrix>& parts);
    static FpMatrix vstack(const std::vector<FpMatrix>& parts);
    static FpMatrix block_diag(const std::vector<FpMatrix>& parts);

    /// Reduced row echelon form with leftmost-pivot, topmost-row elimination.
    /// The matrix itself is replaced by its rref in the returned copy.
    FpMatrix rref(std::vector<int>* pivots = nullptr, int* rank = nullptr) const;
    int rank() const;

    /// Rows form the canonical basis of {v : A v = 0}, ordered by ascending
    /// free column of the rref.
    FpMatrix kernel_basis() const;

    /// Canonical particular solution of A x = b (free variables zero).
    std::optional<std::vector<u32>> solve(const std::vector<u32>& b) const;

    /// Rows form the canonical (rref) basis of the column space.
    FpMatrix image_basis() const;

    /// Inverse of a square matrix; throws Error on a singular input.
    FpMatrix invert() const;
    std::optional<FpMatrix> try_invert() const;

    /// Matrix Q of the canonical projection of F_p^rows onto the complement
    /// of the column space spanned by the non-pivot coordinates of
    /// rref(transpose); Q * A = 0 and Q has full row rank rows - rank(A).
    FpMatrix cokernel_projection() const;

    std::string to_string() const;

private:
    int rows_, cols_;
    u32 p_;
    std::vector<u32> data_;
};

/// Canonical X with A X = B (column by column, free vars zero).
std::optional<FpMatrix> solve_right(const FpMatrix& A, const FpMatrix& B);
/// Canonical X with X A = B.
std::optional<FpMatrix> solve_left(const FpMatrix& A, const FpMatrix& B);

std::vector<u32> unit_vector(int n, int i);
/// v * M for a row vector v.
std::vector<u32> row_times_matrix(const std::vector<u32>& v, const FpMatrix& M);
/// Rebuild a rows x cols matrix from a flattened row-major buffer.
FpMatrix unflatten_row(const u32* data, int rows, int cols, Fp f);

/// Quotient of F_p^n by the row space of a matrix: v * proj gives the
/// canonical quotient coordinates, sec is a section with sec * proj = I, and
/// sub holds the canonical (rref) basis of the subspace.
struct LinearQuotient {
    FpMatrix sub;   // r x n
    FpMatrix proj;  // n x q
    FpMatrix sec;   // q x n
    int dim() const { return proj.cols(); }
};
LinearQuotient linear_quotient(int n, const FpMatrix& rows, Fp f);

/// Repeated expression of row vectors in the row space of a fixed matrix B:
/// solve x * B = v for many v. B need not have full row rank; the returned
/// coordinates are a deterministic canonical choice.
class RowSolver {
public:
    RowSolver() = default;
    explicit RowSolver(const FpMatrix& B);
    /// Coordinates x with x*B = v, or nullopt if v is not in the row space.
    std::optional<std::vector<u32>> solve(const std::vector<u32>& v) const;
    std::optional<FpMatrix> solve_rows(const FpMatrix& V) const;
    int ambient() const { return B_.rows(); }

private:
    FpMatrix B_;      // original
    FpMatrix R_;      // rref of B
    FpMatrix T_;      // T * B = R
    std::vector<int> pivots_;
    int rank_ = 0;
};

/// Incrementally built subspace of F_p^n spanned by row vectors, kept as a
/// canonical rref basis (single-row elimination per insert).
class RowSpan {
public:
    RowSpan(int ambient, Fp f) : ambient_(ambient), p_(f.p) {}
    explicit RowSpan(const FpMatrix& rows);

    bool contains(const std::vector<u32>& v) const;
    /// Adds v to the span; returns true if the dimension grew.
    bool insert(const std::vector<u32>& v);
    void insert_rows(const FpMatrix& rows);

    int dim() const { return int(rows_.size()); }
    int ambient() const { return ambient_; }
    const FpMatrix& basis() const;

private:
    int ambient_;
    u32 p_;
    std::vector<std::vector<u32>> rows_;  // rref, pivots strictly ascending
    std::vector<int> pivots_;
    mutable FpMatrix cache_;
    mutable bool dirty_ = true;
};

}  // namespace funcat
