#include "funcat/fp.hpp"

#include <sstream>

#include "funcat/kernels.hpp"

namespace funcat {

bool is_prime(u32 n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (u64 d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

Fp::Fp(u32 prime) : p(prime) {
    require(prime >= 2 && prime < (u32(1) << 31), "field characteristic out of range [2, 2^31)");
    require(is_prime(prime), "field characteristic must be prime, got " + std::to_string(prime));
}

u32 Fp::pow(u32 a, u64 e) const {
    u64 base = a % p, r = 1;
    while (e) {
        if (e & 1) r = r * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<u32>(r);
}

u32 Fp::inv(u32 a) const {
    require(a % p != 0, "division by zero in F_p");
    // extended Euclid
    long long t = 0, newt = 1;
    long long r = p, newr = a % p;
    while (newr != 0) {
        long long q = r / newr;
        long long tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (t < 0) t += p;
    return static_cast<u32>(t);
}

FpMatrix::FpMatrix(int rows, int cols, Fp f) : rows_(rows), cols_(cols), p_(f.p) {
    require(rows >= 0 && cols >= 0, "negative matrix dimension");
    data_.assign(size_t(rows) * cols, 0);
}

FpMatrix FpMatrix::identity(int n, Fp f) {
    FpMatrix m(n, n, f);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

FpMatrix FpMatrix::from(std::initializer_list<std::initializer_list<long long>> vals, Fp f) {
    int rows = int(vals.size());
    int cols = rows ? int(vals.begin()->size()) : 0;
    FpMatrix m(rows, cols, f);
    int r = 0;
    for (const auto& row : vals) {
        require(int(row.size()) == cols, "ragged matrix literal");
        int c = 0;
        for (long long v : row) m.set(r, c++, f.reduce(v));
        ++r;
    }
    return m;
}

FpMatrix FpMatrix::from_rows(const std::vector<std::vector<long long>>& vals, int cols, Fp f) {
    FpMatrix m(int(vals.size()), cols, f);
    for (int r = 0; r < int(vals.size()); ++r) {
        require(int(vals[r].size()) == cols, "row length mismatch");
        for (int c = 0; c < cols; ++c) m.set(r, c, f.reduce(vals[r][c]));
    }
    return m;
}

static void check_same_field(const FpMatrix& a, const FpMatrix& b) {
    require(a.field().p == b.field().p, "field characteristic mismatch");
}

FpMatrix FpMatrix::operator+(const FpMatrix& o) const {
    check_same_field(*this, o);
    require(rows_ == o.rows_ && cols_ == o.cols_, "shape mismatch in matrix addition");
    FpMatrix r(rows_, cols_, field());
    Fp f = field();
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = f.add(data_[i], o.data_[i]);
    return r;
}

FpMatrix FpMatrix::operator-(const FpMatrix& o) const {
    check_same_field(*this, o);
    require(rows_ == o.rows_ && cols_ == o.cols_, "shape mismatch in matrix subtraction");
    FpMatrix r(rows_, cols_, field());
    Fp f = field();
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = f.sub(data_[i], o.data_[i]);
    return r;
}

FpMatrix FpMatrix::negated() const {
    FpMatrix r(rows_, cols_, field());
    Fp f = field();
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = f.neg(data_[i]);
    return r;
}

FpMatrix FpMatrix::scaled(u32 c) const {
    FpMatrix r(rows_, cols_, field());
    Fp f = field();
    c %= f.p;
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = f.mul(data_[i], c);
    return r;
}

FpMatrix FpMatrix::operator*(const FpMatrix& o) const {
    check_same_field(*this, o);
    require(cols_ == o.rows_, "shape mismatch in matrix product: " + std::to_string(rows_) + "x" +
                                  std::to_string(cols_) + " * " + std::to_string(o.rows_) + "x" +
                                  std::to_string(o.cols_));
    FpMatrix r(rows_, o.cols_, field());
    if (rows_ && cols_ && o.cols_)
        kernels::matmul(data_.data(), o.data_.data(), r.data_.data(), rows_, cols_, o.cols_, field());
    return r;
}

FpMatrix FpMatrix::transpose() const {
    FpMatrix r(cols_, rows_, field());
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.set(j, i, at(i, j));
    return r;
}

bool FpMatrix::is_zero() const {
    for (u32 v : data_)
        if (v) return false;
    return true;
}

FpMatrix FpMatrix::submatrix(int r0, int c0, int nr, int nc) const {
    require(r0 >= 0 && c0 >= 0 && nr >= 0 && nc >= 0 && r0 + nr <= rows_ && c0 + nc <= cols_,
            "submatrix out of range");
    FpMatrix r(nr, nc, field());
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j) r.set(i, j, at(r0 + i, c0 + j));
    return r;
}

FpMatrix FpMatrix::hstack(const std::vector<FpMatrix>& parts) {
    require(!parts.empty(), "hstack of nothing");
    int rows = parts[0].rows();
    int cols = 0;
    for (const auto& m : parts) {
        require(m.rows() == rows, "hstack row mismatch");
        cols += m.cols();
    }
    FpMatrix r(rows, cols, parts[0].field());
    int off = 0;
    for (const auto& m : parts) {
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < m.cols(); ++j) r.set(i, off + j, m.at(i, j));
        off += m.cols();
    }
    return r;
}

FpMatrix FpMatrix::vstack(const std::vector<FpMatrix>& parts) {
    require(!parts.empty(), "vstack of nothing");
    int cols = parts[0].cols();
    int rows = 0;
    for (const auto& m : parts) {
        require(m.cols() == cols, "vstack column mismatch");
        rows += m.rows();
    }
    FpMatrix r(rows, cols, parts[0].field());
    int off = 0;
    for (const auto& m : parts) {
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < cols; ++j) r.set(off + i, j, m.at(i, j));
        off += m.rows();
    }
    return r;
}

FpMatrix FpMatrix::block_diag(const std::vector<FpMatrix>& parts) {
    require(!parts.empty(), "block_diag of nothing");
    int rows = 0, cols = 0;
    for (const auto& m : parts) {
        rows += m.rows();
        cols += m.cols();
    }
    FpMatrix r(rows, cols, parts[0].field());
    int ro = 0, co = 0;
    for (const auto& m : parts) {
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) r.set(ro + i, co + j, m.at(i, j));
        ro += m.rows();
        co += m.cols();
    }
    return r;
}

FpMatrix FpMatrix::rref(std::vector<int>* pivots, int* rank) const {
    FpMatrix r = *this;
    std::vector<int> piv;
    if (rows_ && cols_)
        piv = kernels::rref(r.data_.data(), rows_, cols_, field());
    if (pivots) *pivots = piv;
    if (rank) *rank = int(piv.size());
    return r;
}

int FpMatrix::rank() const {
    int rk = 0;
    rref(nullptr, &rk);
    return rk;
}

FpMatrix FpMatrix::kernel_basis() const {
    std::vector<int> piv;
    FpMatrix R = rref(&piv);
    Fp f = field();
    std::vector<bool> is_pivot(cols_, false);
    for (int c : piv) is_pivot[c] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < cols_; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    FpMatrix K(int(free_cols.size()), cols_, f);
    for (int kidx = 0; kidx < int(free_cols.size()); ++kidx) {
        int fc = free_cols[kidx];
        K.set(kidx, fc, 1);
        for (int i = 0; i < int(piv.size()); ++i) K.set(kidx, piv[i], f.neg(R.at(i, fc)));
    }
    return K;
}

std::optional<std::vector<u32>> FpMatrix::solve(const std::vector<u32>& b) const {
    require(int(b.size()) == rows_, "solve: rhs length mismatch");
    Fp f = field();
    FpMatrix aug(rows_, cols_ + 1, f);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) aug.set(i, j, at(i, j));
        aug.set(i, cols_, b[i] % f.p);
    }
    std::vector<int> piv;
    FpMatrix R = aug.rref(&piv);
    for (int c : piv)
        if (c == cols_) return std::nullopt;  // inconsistent
    std::vector<u32> x(cols_, 0);
    for (int i = 0; i < int(piv.size()); ++i) x[piv[i]] = R.at(i, cols_);
    return x;
}

FpMatrix FpMatrix::image_basis() const {
    std::vector<int> piv;
    int rk = 0;
    FpMatrix R = transpose().rref(&piv, &rk);
    return R.submatrix(0, 0, rk, rows_);
}

std::optional<FpMatrix> FpMatrix::try_invert() const {
    require(rows_ == cols_, "invert: matrix not square");
    Fp f = field();
    FpMatrix aug = hstack({*this, identity(rows_, f)});
    std::vector<int> piv;
    FpMatrix R = aug.rref(&piv);
    // invertible iff the pivots are exactly the columns of the A-part
    if (int(piv.size()) != rows_) return std::nullopt;
    for (int i = 0; i < rows_; ++i)
        if (piv[i] != i) return std::nullopt;
    return R.submatrix(0, rows_, rows_, rows_);
}

FpMatrix FpMatrix::invert() const {
    auto inv = try_invert();
    require(inv.has_value(), "invert: singular matrix");
    return *inv;
}

FpMatrix FpMatrix::cokernel_projection() const {
    Fp f = field();
    std::vector<int> piv;
    FpMatrix R = transpose().rref(&piv);
    std::vector<bool> is_pivot(rows_, false);
    for (int c : piv) is_pivot[c] = true;
    std::vector<int> free_coords;
    for (int c = 0; c < rows_; ++c)
        if (!is_pivot[c]) free_coords.push_back(c);
    FpMatrix Q(int(free_coords.size()), rows_, f);
    for (int k = 0; k < int(free_coords.size()); ++k) {
        int fc = free_coords[k];
        Q.set(k, fc, 1);
        for (int i = 0; i < int(piv.size()); ++i) Q.set(k, piv[i], f.neg(R.at(i, fc)));
    }
    return Q;
}

std::string FpMatrix::to_string() const {
    std::ostringstream os;
    os << rows_ << "x" << cols_ << " mod " << p_ << "\n";
    for (int i = 0; i < rows_; ++i) {
        os << "[";
        for (int j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j);
        os << "]\n";
    }
    return os.str();
}

std::optional<FpMatrix> solve_right(const FpMatrix& A, const FpMatrix& B) {
    require(A.rows() == B.rows(), "solve_right: row mismatch");
    Fp f = A.field();
    FpMatrix aug = FpMatrix::hstack({A, B});
    std::vector<int> piv;
    FpMatrix R = aug.rref(&piv);
    for (int c : piv)
        if (c >= A.cols()) return std::nullopt;
    FpMatrix X(A.cols(), B.cols(), f);
    for (int i = 0; i < int(piv.size()); ++i)
        for (int j = 0; j < B.cols(); ++j) X.set(piv[i], j, R.at(i, A.cols() + j));
    return X;
}

std::optional<FpMatrix> solve_left(const FpMatrix& A, const FpMatrix& B) {
    auto t = solve_right(A.transpose(), B.transpose());
    if (!t) return std::nullopt;
    return t->transpose();
}

std::vector<u32> unit_vector(int n, int i) {
    std::vector<u32> v(n, 0);
    v[i] = 1;
    return v;
}

std::vector<u32> row_times_matrix(const std::vector<u32>& v, const FpMatrix& M) {
    require(int(v.size()) == M.rows(), "row_times_matrix: length mismatch");
    Fp f = M.field();
    std::vector<u32> out(M.cols(), 0);
    for (int i = 0; i < M.rows(); ++i) {
        u32 c = v[i] % f.p;
        if (!c) continue;
        const u32* r = M.row_ptr(i);
        for (int j = 0; j < M.cols(); ++j) out[j] = f.add(out[j], f.mul(c, r[j]));
    }
    return out;
}

FpMatrix unflatten_row(const u32* data, int rows, int cols, Fp f) {
    FpMatrix M(rows, cols, f);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) M.set(i, j, data[i * cols + j] % f.p);
    return M;
}

LinearQuotient linear_quotient(int n, const FpMatrix& rows, Fp f) {
    require(rows.rows() == 0 || rows.cols() == n, "linear_quotient: ambient mismatch");
    LinearQuotient out;
    RowSpan span(n, f);
    if (rows.rows() > 0) span.insert_rows(rows);
    out.sub = span.basis();
    if (out.sub.rows() == 0) {
        out.sub = FpMatrix(0, n, f);
        out.proj = FpMatrix::identity(n, f);
        out.sec = FpMatrix::identity(n, f);
        return out;
    }
    // row space of sub == kernel of (. * proj); section picks the free columns
    out.proj = out.sub.kernel_basis().transpose();
    std::vector<int> piv;
    out.sub.rref(&piv);
    std::vector<bool> is_piv(size_t(n), false);
    for (int c : piv) is_piv[size_t(c)] = true;
    out.sec = FpMatrix(out.proj.cols(), n, f);
    int k = 0;
    for (int c = 0; c < n; ++c)
        if (!is_piv[size_t(c)]) out.sec.set(k++, c, 1);
    require(k == out.proj.cols(), "linear_quotient: free column count");
    require(out.sec * out.proj == FpMatrix::identity(out.proj.cols(), f),
            "linear_quotient: section mismatch");
    return out;
}

RowSolver::RowSolver(const FpMatrix& B) : B_(B) {
    Fp f = B.field();
    FpMatrix aug = FpMatrix::hstack({B, FpMatrix::identity(B.rows(), f)});
    std::vector<int> piv;
    FpMatrix R = aug.rref(&piv);
    // pivots inside the B-part give the rank; transform rows record T with T*B = R_B
    rank_ = 0;
    for (int c : piv)
        if (c < B.cols()) ++rank_;
    pivots_.assign(piv.begin(), piv.begin() + rank_);
    R_ = R.submatrix(0, 0, rank_, B.cols());
    T_ = R.submatrix(0, B.cols(), rank_, B.rows());
}

std::optional<std::vector<u32>> RowSolver::solve(const std::vector<u32>& v) const {
    require(int(v.size()) == B_.cols(), "RowSolver: vector length mismatch");
    Fp f = B_.field();
    std::vector<u32> y(v);
    std::vector<u32> coeff(rank_, 0);
    for (int i = 0; i < rank_; ++i) {
        u32 c = y[pivots_[i]] % f.p;
        coeff[i] = c;
        if (c) {
            for (int j = 0; j < B_.cols(); ++j) y[j] = f.sub(y[j] % f.p, f.mul(c, R_.at(i, j)));
        }
    }
    for (u32 rem : y)
        if (rem % f.p) return std::nullopt;
    // x = coeff * T
    std::vector<u32> x(B_.rows(), 0);
    for (int i = 0; i < rank_; ++i) {
        if (!coeff[i]) continue;
        for (int j = 0; j < B_.rows(); ++j) x[j] = f.add(x[j], f.mul(coeff[i], T_.at(i, j)));
    }
    return x;
}

std::optional<FpMatrix> RowSolver::solve_rows(const FpMatrix& V) const {
    FpMatrix X(V.rows(), B_.rows(), B_.field());
    for (int r = 0; r < V.rows(); ++r) {
        std::vector<u32> v(V.row_ptr(r), V.row_ptr(r) + V.cols());
        auto x = solve(v);
        if (!x) return std::nullopt;
        for (int j = 0; j < B_.rows(); ++j) X.set(r, j, (*x)[j]);
    }
    return X;
}

RowSpan::RowSpan(const FpMatrix& rows) : ambient_(rows.cols()), p_(rows.field().p) {
    insert_rows(rows);
}

bool RowSpan::contains(const std::vector<u32>& v) const {
    require(int(v.size()) == ambient_, "RowSpan: ambient mismatch");
    Fp f(p_);
    std::vector<u32> w(v);
    for (u32& x : w) x %= p_;
    for (size_t i = 0; i < rows_.size(); ++i) {
        u32 c = w[pivots_[i]];
        if (c != 0)
            for (int j = pivots_[i]; j < ambient_; ++j) w[j] = f.sub(w[j], f.mul(c, rows_[i][j]));
    }
    for (u32 x : w)
        if (x != 0) return false;
    return true;
}

bool RowSpan::insert(const std::vector<u32>& v) {
    require(int(v.size()) == ambient_, "RowSpan: ambient mismatch");
    Fp f(p_);
    std::vector<u32> w(v);
    for (u32& x : w) x %= p_;
    for (size_t i = 0; i < rows_.size(); ++i) {
        u32 c = w[pivots_[i]];
        if (c != 0)
            for (int j = pivots_[i]; j < ambient_; ++j) w[j] = f.sub(w[j], f.mul(c, rows_[i][j]));
    }
    int piv = 0;
    while (piv < ambient_ && w[piv] == 0) ++piv;
    if (piv == ambient_) return false;
    u32 s = f.inv(w[piv]);
    for (int j = piv; j < ambient_; ++j) w[j] = f.mul(w[j], s);
    // back-eliminate the new pivot column from existing rows
    for (size_t i = 0; i < rows_.size(); ++i) {
        u32 c = rows_[i][piv];
        if (c != 0)
            for (int j = piv; j < ambient_; ++j) rows_[i][j] = f.sub(rows_[i][j], f.mul(c, w[j]));
    }
    size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < piv) ++pos;
    rows_.insert(rows_.begin() + pos, std::move(w));
    pivots_.insert(pivots_.begin() + pos, piv);
    dirty_ = true;
    return true;
}

void RowSpan::insert_rows(const FpMatrix& rows) {
    require(rows.cols() == ambient_, "RowSpan: ambient mismatch");
    for (int r = 0; r < rows.rows(); ++r)
        insert(std::vector<u32>(rows.row_ptr(r), rows.row_ptr(r) + rows.cols()));
}

const FpMatrix& RowSpan::basis() const {
    if (dirty_) {
        cache_ = FpMatrix(int(rows_.size()), ambient_, Fp(p_));
        for (size_t i = 0; i < rows_.size(); ++i)
            for (int j = 0; j < ambient_; ++j) cache_.set(int(i), j, rows_[i][j]);
        dirty_ = false;
    }
    return cache_;
}

}  // namespace funcat
