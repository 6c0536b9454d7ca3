#include "funcat/algebra.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace funcat {

void Quiver::validate() const {
    require(vertex_count >= 0, "quiver: negative vertex count");
    std::set<std::string> names;
    for (const auto& a : arrows) {
        require(!a.name.empty(), "quiver: arrow with empty name");
        require(names.insert(a.name).second, "quiver: duplicate arrow name " + a.name);
        require(a.src >= 0 && a.src < vertex_count, "quiver: arrow source out of range");
        require(a.dst >= 0 && a.dst < vertex_count, "quiver: arrow target out of range");
    }
}

int Quiver::arrow_index(const std::string& name) const {
    for (size_t i = 0; i < arrows.size(); ++i)
        if (arrows[i].name == name) return int(i);
    return -1;
}

namespace {

// ---- path words and the length-then-lex (deglex) order ----

bool word_less(const PathWord& a, const PathWord& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    if (a.length() == 0) return a.src < b.src;
    return a.arrows < b.arrows;
}

struct WordLess {
    bool operator()(const PathWord& a, const PathWord& b) const { return word_less(a, b); }
};

PathWord make_word(const Quiver& q, int src, const std::vector<int>& arrows) {
    PathWord w;
    w.arrows = arrows;
    if (arrows.empty()) {
        w.src = w.tgt = src;
    } else {
        w.src = q.arrows[arrows.front()].src;
        w.tgt = q.arrows[arrows.back()].dst;
    }
    return w;
}

PathWord concat(const Quiver& q, const PathWord& u, const PathWord& v) {
    require(u.tgt == v.src, "path concat: endpoints do not match");
    std::vector<int> a = u.arrows;
    a.insert(a.end(), v.arrows.begin(), v.arrows.end());
    PathWord w = make_word(q, u.src, a);
    if (a.empty()) w.src = w.tgt = u.src;
    return w;
}

// polynomial in the path algebra; ascending term order, leading term last
using Poly = std::map<PathWord, u32, WordLess>;

void poly_add_term(Poly& f, const PathWord& w, u32 c, Fp fp) {
    if (c == 0) return;
    auto it = f.find(w);
    if (it == f.end()) {
        f.emplace(w, c);
    } else {
        it->second = fp.add(it->second, c);
        if (it->second == 0) f.erase(it);
    }
}

const PathWord& poly_lt(const Poly& f) { return f.rbegin()->first; }
u32 poly_lc(const Poly& f) { return f.rbegin()->second; }

void poly_make_monic(Poly& f, Fp fp) {
    u32 inv = fp.inv(poly_lc(f));
    if (inv == 1) return;
    for (auto& [w, c] : f) c = fp.mul(c, inv);
}

// f -= c * (u g v)
void poly_sub_mul(Poly& f, u32 c, const Quiver& q, const PathWord& u, const Poly& g,
                  const PathWord& v, Fp fp) {
    for (const auto& [w, gc] : g) {
        PathWord uwv = concat(q, concat(q, u, w), v);
        poly_add_term(f, uwv, fp.neg(fp.mul(c, gc)), fp);
    }
}

// ---- Groebner engine (Buchberger completion with overlap ambiguities) ----

struct GbEngine {
    const Quiver& q;
    Fp fp;
    std::vector<Poly> basis;  // monic, all terms of length >= 2
    std::deque<std::pair<int, int>> pairs;
    std::deque<Poly> pending;
    size_t reduce_budget = 2000000;
    size_t element_cap = 4000;

    GbEngine(const Quiver& qq, Fp f) : q(qq), fp(f) {}

    void charge() {
        require(reduce_budget-- > 0, "relation processing exceeded the reduction budget");
    }

    // leftmost position where lt(basis[gi]) occurs as a subword of w, or -1
    static int find_subword(const PathWord& w, const PathWord& lt) {
        int wl = w.length(), ll = lt.length();
        for (int pos = 0; pos + ll <= wl; ++pos) {
            bool ok = true;
            for (int k = 0; k < ll; ++k)
                if (w.arrows[pos + k] != lt.arrows[k]) {
                    ok = false;
                    break;
                }
            if (ok) return pos;
        }
        return -1;
    }

    bool reduce_once(Poly& f) {
        for (auto it = f.rbegin(); it != f.rend(); ++it) {
            const PathWord& w = it->first;
            for (size_t gi = 0; gi < basis.size(); ++gi) {
                const PathWord& lt = poly_lt(basis[gi]);
                if (lt.length() > w.length()) continue;
                int pos = find_subword(w, lt);
                if (pos < 0) continue;
                std::vector<int> ua(w.arrows.begin(), w.arrows.begin() + pos);
                std::vector<int> va(w.arrows.begin() + pos + lt.length(), w.arrows.end());
                PathWord u = ua.empty() ? make_word(q, w.src, {}) : make_word(q, 0, ua);
                PathWord v = va.empty() ? make_word(q, lt.tgt, {}) : make_word(q, 0, va);
                poly_sub_mul(f, it->second, q, u, basis[gi], v, fp);
                charge();
                return true;
            }
        }
        return false;
    }

    void full_reduce(Poly& f) {
        while (!f.empty() && reduce_once(f)) {
        }
    }

    void insert(Poly f) {
        full_reduce(f);
        if (f.empty()) return;
        poly_make_monic(f, fp);
        for (const auto& [w, c] : f)
            require(w.length() >= 2, "internal: ideal element with a short path escaped");
        require(basis.size() < element_cap, "completion exceeded the basis element cap");
        int k = int(basis.size());
        basis.push_back(std::move(f));
        for (int i = 0; i <= k; ++i) {
            pairs.emplace_back(i, k);
            if (i != k) pairs.emplace_back(k, i);
        }
    }

    // S-polynomials from overlaps suffix(lt_i, o) == prefix(lt_j, o)
    void overlap_spolys(int i, int j, std::vector<Poly>& out) const {
        const Poly &g = basis[i], &h = basis[j];
        const PathWord &A = poly_lt(g), &B = poly_lt(h);
        int omax = std::min(A.length(), B.length()) - 1;
        for (int o = 1; o <= omax; ++o) {
            bool ok = true;
            for (int k = 0; k < o; ++k)
                if (A.arrows[A.length() - o + k] != B.arrows[k]) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            std::vector<int> va(B.arrows.begin() + o, B.arrows.end());
            PathWord v = va.empty() ? make_word(q, B.tgt, {}) : make_word(q, 0, va);
            std::vector<int> ua(A.arrows.begin(), A.arrows.end() - o);
            PathWord u = ua.empty() ? make_word(q, A.src, {}) : make_word(q, 0, ua);
            // S = g v - u h  (both monic, so the leading terms cancel)
            Poly S;
            poly_sub_mul(S, fp.neg(1), q, make_word(q, A.src, {}), g, v, fp);
            poly_sub_mul(S, 1, q, u, h, make_word(q, B.tgt, {}), fp);
            out.push_back(std::move(S));
        }
    }

    // S-polynomials from inclusions lt_i proper subword of lt_j
    void inclusion_spolys(int i, int j, std::vector<Poly>& out) const {
        const Poly &g = basis[i], &h = basis[j];
        const PathWord &A = poly_lt(g), &B = poly_lt(h);
        if (A.length() >= B.length()) return;
        for (int pos = 0; pos + A.length() <= B.length(); ++pos) {
            bool ok = true;
            for (int k = 0; k < A.length(); ++k)
                if (B.arrows[pos + k] != A.arrows[k]) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            std::vector<int> ua(B.arrows.begin(), B.arrows.begin() + pos);
            PathWord u = ua.empty() ? make_word(q, B.src, {}) : make_word(q, 0, ua);
            std::vector<int> va(B.arrows.begin() + pos + A.length(), B.arrows.end());
            PathWord v = va.empty() ? make_word(q, A.tgt, {}) : make_word(q, 0, va);
            // S = u g v - h
            Poly S;
            poly_sub_mul(S, fp.neg(1), q, u, g, v, fp);
            poly_sub_mul(S, 1, q, make_word(q, B.src, {}), h, make_word(q, B.tgt, {}), fp);
            out.push_back(std::move(S));
        }
    }

    void drain() {
        while (!pending.empty() || !pairs.empty()) {
            if (!pending.empty()) {
                Poly f = std::move(pending.front());
                pending.pop_front();
                insert(std::move(f));
                continue;
            }
            auto [i, j] = pairs.front();
            pairs.pop_front();
            std::vector<Poly> sp;
            overlap_spolys(i, j, sp);
            for (auto& S : sp) {
                charge();
                insert(std::move(S));
            }
        }
    }

    // Every overlap and inclusion ambiguity of the final system must reduce
    // to zero: this certifies unique normal forms (diamond lemma). Offending
    // remainders are inserted and completion resumes.
    bool certify() {
        for (size_t i = 0; i < basis.size(); ++i)
            for (size_t j = 0; j < basis.size(); ++j) {
                std::vector<Poly> sp;
                overlap_spolys(int(i), int(j), sp);
                if (i != j) inclusion_spolys(int(i), int(j), sp);
                for (auto& S : sp) {
                    charge();
                    full_reduce(S);
                    if (!S.empty()) {
                        insert(std::move(S));
                        return false;
                    }
                }
            }
        return true;
    }

    void run(std::vector<Poly> inputs) {
        for (auto& f : inputs) pending.push_back(std::move(f));
        drain();
        while (!certify()) drain();
    }
};

std::vector<u32> poly_coords(const Poly& f, const std::map<PathWord, int, WordLess>& index,
                             int dim) {
    std::vector<u32> v(dim, 0);
    for (const auto& [w, c] : f) {
        auto it = index.find(w);
        require(it != index.end(), "internal: normal form left the irreducible-word basis");
        v[it->second] = c;
    }
    return v;
}

}  // namespace

// ---- path algebra quotient ----

QuiverAlgebra build_from_quiver(const Quiver& q, const std::vector<Relation>& relations, Fp f,
                                size_t basis_cap) {
    q.validate();

    GbEngine eng(q, f);
    std::vector<Poly> inputs;
    for (const auto& rel : relations) {
        Poly poly;
        int src = -1, tgt = -1;
        for (const auto& term : rel) {
            u32 c = f.reduce(term.coeff);
            std::vector<int> arrows;
            for (const auto& name : term.path) {
                int idx = q.arrow_index(name);
                require(idx >= 0, "relation uses unknown arrow " + name);
                if (!arrows.empty())
                    require(q.arrows[arrows.back()].dst == q.arrows[idx].src,
                            "relation path is not composable");
                arrows.push_back(idx);
            }
            require(arrows.size() >= 2, "relation term is a path of length < 2");
            PathWord w = make_word(q, 0, arrows);
            if (src < 0) {
                src = w.src;
                tgt = w.tgt;
            } else {
                require(w.src == src && w.tgt == tgt, "relation mixes non-parallel paths");
            }
            poly_add_term(poly, w, c, f);
        }
        if (!poly.empty()) inputs.push_back(std::move(poly));
    }
    eng.run(std::move(inputs));
    eng.reduce_budget = 2000000;  // fresh budget for the normal forms below

    // irreducible words, breadth first: yields the length-then-lex basis order
    std::set<std::vector<int>> lts;
    std::set<int> lt_lengths;
    for (const auto& g : eng.basis) {
        lts.insert(poly_lt(g).arrows);
        lt_lengths.insert(poly_lt(g).length());
    }
    auto irreducible_suffix = [&](const std::vector<int>& arrows) {
        for (int L : lt_lengths) {
            if (L > int(arrows.size())) break;
            std::vector<int> suf(arrows.end() - L, arrows.end());
            if (lts.count(suf)) return false;
        }
        return true;
    };

    std::vector<PathWord> basis;
    for (int v = 0; v < q.vertex_count; ++v) basis.push_back(make_word(q, v, {}));
    size_t level_begin = 0, level_end = basis.size();
    while (level_begin < level_end) {
        for (size_t i = level_begin; i < level_end; ++i) {
            PathWord w = basis[i];  // copy: basis reallocates
            for (size_t ai = 0; ai < q.arrows.size(); ++ai) {
                if (q.arrows[ai].src != w.tgt) continue;
                std::vector<int> ext = w.arrows;
                ext.push_back(int(ai));
                if (!irreducible_suffix(ext)) continue;
                require(basis.size() < basis_cap,
                        "quotient dimension exceeds the basis cap (not finite-dimensional?)");
                basis.push_back(make_word(q, w.src, ext));
            }
        }
        // lex order within the level (grouping by parent does not give it)
        std::sort(basis.begin() + level_end, basis.end(), word_less);
        level_begin = level_end;
        level_end = basis.size();
    }

    int dim = int(basis.size());
    std::map<PathWord, int, WordLess> index;
    for (int i = 0; i < dim; ++i) index.emplace(basis[i], i);

    FpMatrix mul(dim * dim, dim, f);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            if (basis[i].tgt != basis[j].src) continue;
            Poly prod;
            poly_add_term(prod, concat(q, basis[i], basis[j]), 1, f);
            eng.full_reduce(prod);
            std::vector<u32> c = poly_coords(prod, index, dim);
            for (int k = 0; k < dim; ++k) mul.set(i * dim + j, k, c[k]);
        }

    std::vector<u32> one(dim, 0);
    std::vector<std::vector<u32>> idems;
    std::vector<std::string> labels;
    for (int v = 0; v < q.vertex_count; ++v) {
        one[v] = 1;
        std::vector<u32> e(dim, 0);
        e[v] = 1;
        idems.push_back(std::move(e));
    }
    for (int i = 0; i < dim; ++i) {
        if (basis[i].length() == 0) {
            labels.push_back("e" + std::to_string(basis[i].src));
        } else {
            std::string s;
            for (int a : basis[i].arrows) {
                if (!s.empty()) s += "*";
                s += q.arrows[a].name;
            }
            labels.push_back(s);
        }
    }

    // arrow-ideal power filtration; stabilising at a nonzero span means the
    // relation ideal is not admissible (e.g. x^2 - x^3)
    std::vector<FpMatrix> filtration;
    {
        // helper: multiply coordinate vectors through the table
        auto table_mul = [&](const std::vector<u32>& x, const std::vector<u32>& y) {
            std::vector<u32> r(dim, 0);
            for (int a = 0; a < dim; ++a) {
                if (x[a] == 0) continue;
                for (int b = 0; b < dim; ++b) {
                    if (y[b] == 0) continue;
                    u32 c = f.mul(x[a], y[b]);
                    for (int k = 0; k < dim; ++k)
                        r[k] = f.add(r[k], f.mul(c, mul.at(a * dim + b, k)));
                }
            }
            return r;
        };
        RowSpan U(dim, f);
        for (int i = 0; i < dim; ++i)
            if (basis[i].length() > 0) {
                std::vector<u32> v(dim, 0);
                v[i] = 1;
                U.insert(v);
            }
        while (U.dim() > 0) {
            filtration.push_back(U.basis());
            RowSpan next(dim, f);
            for (int r = 0; r < U.basis().rows(); ++r) {
                std::vector<u32> u(dim);
                for (int k = 0; k < dim; ++k) u[k] = U.basis().at(r, k);
                for (size_t ai = 0; ai < q.arrows.size(); ++ai) {
                    // arrows are never reducible, so each is a basis word
                    PathWord aw = make_word(q, 0, {int(ai)});
                    auto it = index.find(aw);
                    require(it != index.end(), "internal: arrow missing from the basis");
                    std::vector<u32> a(dim, 0);
                    a[it->second] = 1;
                    next.insert(table_mul(u, a));
                }
            }
            require(next.dim() < U.dim() || U.dim() == 0,
                    "arrow ideal is not nilpotent: the relation ideal is not admissible");
            U = next;
        }
    }

    QuiverAlgebra result{q,
                         Algebra::from_data(f, std::move(labels), std::move(mul), std::move(one),
                                            std::move(idems), /*idempotents_primitive=*/true,
                                            std::move(filtration)),
                         std::move(basis)};
    return result;
}

// ---- characteristic polynomial (Hessenberg reduction + recurrence) ----

std::vector<u32> char_poly(const FpMatrix& M) {
    require(M.rows() == M.cols(), "char_poly: matrix not square");
    int n = M.rows();
    Fp f = M.field();
    FpMatrix H = M;

    for (int j = 0; j + 2 < n; ++j) {
        int piv = -1;
        for (int i = j + 1; i < n; ++i)
            if (H.at(i, j) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != j + 1) {  // swap rows and columns piv <-> j+1 (similarity)
            for (int c = 0; c < n; ++c) {
                u32 t = H.at(j + 1, c);
                H.set(j + 1, c, H.at(piv, c));
                H.set(piv, c, t);
            }
            for (int r = 0; r < n; ++r) {
                u32 t = H.at(r, j + 1);
                H.set(r, j + 1, H.at(r, piv));
                H.set(r, piv, t);
            }
        }
        u32 inv = f.inv(H.at(j + 1, j));
        for (int i = j + 2; i < n; ++i) {
            u32 t = f.mul(H.at(i, j), inv);
            if (t == 0) continue;
            for (int c = 0; c < n; ++c) H.set(i, c, f.sub(H.at(i, c), f.mul(t, H.at(j + 1, c))));
            for (int r = 0; r < n; ++r) H.set(r, j + 1, f.add(H.at(r, j + 1), f.mul(t, H.at(r, i))));
        }
    }

    // d_k(t) = (t - h_kk) d_{k-1} - sum_i h_ik (prod subdiagonals) d_{i-1}
    std::vector<std::vector<u32>> d(n + 1);
    d[0] = {1};
    for (int k = 1; k <= n; ++k) {
        const std::vector<u32>& prev = d[k - 1];
        std::vector<u32> cur(k + 1, 0);
        u32 h = H.at(k - 1, k - 1);
        for (int deg = 0; deg < k; ++deg) {
            cur[deg + 1] = f.add(cur[deg + 1], prev[deg]);
            cur[deg] = f.sub(cur[deg], f.mul(h, prev[deg]));
        }
        u32 prod = 1;
        for (int i = k - 1; i >= 1; --i) {
            prod = f.mul(prod, H.at(i, i - 1));
            if (prod == 0) break;
            u32 coef = f.mul(H.at(i - 1, k - 1), prod);
            if (coef == 0) continue;
            for (int deg = 0; deg < i; ++deg) cur[deg] = f.sub(cur[deg], f.mul(coef, d[i - 1][deg]));
        }
        d[k] = std::move(cur);
    }

    std::vector<u32> c(n + 1);
    for (int k = 0; k <= n; ++k) c[k] = d[n][n - k];
    return c;
}

// ---- radical via the characteristic-polynomial coefficient chain ----

FpMatrix radical_of_algebra(const Algebra& A) {
    Fp f = A.field();
    int n = A.dim();
    if (n == 0) return FpMatrix(0, 0, f);

    FpMatrix I = FpMatrix::identity(n, f);  // current ideal basis, rows in A-coords
    u64 pj = 1;
    while (pj <= u64(n)) {
        int r = I.rows();
        if (r == 0) break;
        // M[y][x] = c_{pj}( regular rep of (basis_x * basis_y) )
        FpMatrix M(r, r, f);
        for (int yi = 0; yi < r; ++yi) {
            std::vector<u32> y(n);
            for (int k = 0; k < n; ++k) y[k] = I.at(yi, k);
            for (int xi = 0; xi < r; ++xi) {
                std::vector<u32> x(n);
                for (int k = 0; k < n; ++k) x[k] = I.at(xi, k);
                std::vector<u32> z = A.mul(x, y);
                std::vector<u32> cp = char_poly(A.right_mul_matrix(z));
                M.set(yi, xi, cp[size_t(pj)]);
            }
        }
        FpMatrix K = M.kernel_basis();  // rows: coords in the current basis
        FpMatrix NI = K * I;
        I = NI.rref().submatrix(0, 0, NI.rank(), n);
        pj *= f.p;
    }
    return I;
}

// ---- Algebra ----

Algebra Algebra::from_data(Fp f, std::vector<std::string> labels, FpMatrix mul,
                           std::vector<u32> one, std::vector<std::vector<u32>> idempotents,
                           bool idempotents_primitive,
                           std::optional<std::vector<FpMatrix>> filtration) {
    Algebra A;
    A.p_ = f.p;
    A.dim_ = int(labels.size());
    A.labels_ = std::move(labels);
    A.mul_ = std::move(mul);
    A.one_ = std::move(one);
    A.idempotents_ = std::move(idempotents);
    A.idempotents_primitive_ = idempotents_primitive;
    A.empty_ = FpMatrix(0, A.dim_, f);
    A.validate_and_finish(std::move(filtration));
    return A;
}

Algebra Algebra::zero_algebra(Fp f) {
    return from_data(f, {}, FpMatrix(0, 0, f), {}, {}, false);
}

void Algebra::validate_and_finish(std::optional<std::vector<FpMatrix>> filtration) {
    Fp f = field();
    require(mul_.rows() == dim_ * dim_ && mul_.cols() == dim_, "algebra: bad table shape");
    require(int(one_.size()) == dim_, "algebra: bad unit length");
    if (dim_ == 0) {
        require(idempotents_.empty(), "algebra: zero algebra with idempotents");
        filtration_.clear();
        return;
    }

    // unit
    for (int a = 0; a < dim_; ++a) {
        std::vector<u32> e(dim_, 0);
        e[a] = 1;
        require(mul(one_, e) == e && mul(e, one_) == e, "algebra: unit fails on basis");
    }

    // associativity on all basis triples: (e_a e_b) e_c == e_a (e_b e_c)
    for (int a = 0; a < dim_; ++a) {
        std::vector<u32> ea(dim_, 0);
        ea[a] = 1;
        std::vector<u32> ab(dim_), bc(dim_), ec(dim_, 0);
        for (int b = 0; b < dim_; ++b) {
            for (int k = 0; k < dim_; ++k) ab[k] = mul_.at(a * dim_ + b, k);
            for (int c = 0; c < dim_; ++c) {
                std::fill(ec.begin(), ec.end(), 0);
                ec[c] = 1;
                for (int k = 0; k < dim_; ++k) bc[k] = mul_.at(b * dim_ + c, k);
                require(mul(ab, ec) == mul(ea, bc),
                        "algebra: multiplication table is not associative");
            }
        }
    }

    // complete orthogonal idempotent list
    std::vector<u32> s(dim_, 0);
    for (size_t i = 0; i < idempotents_.size(); ++i) {
        const auto& e = idempotents_[i];
        require(int(e.size()) == dim_, "algebra: bad idempotent length");
        require(mul(e, e) == e, "algebra: listed element is not idempotent");
        for (size_t j = 0; j < idempotents_.size(); ++j) {
            if (i == j) continue;
            std::vector<u32> z(dim_, 0);
            require(mul(e, idempotents_[j]) == z, "algebra: idempotents not orthogonal");
        }
        for (int k = 0; k < dim_; ++k) s[k] = f.add(s[k], e[k]);
    }
    require(!idempotents_.empty(), "algebra: empty idempotent list");
    require(s == one_, "algebra: idempotents do not sum to the unit");

    // radical and its powers
    bool preset_nonempty = filtration && !filtration->empty();
    FpMatrix rad = preset_nonempty ? (*filtration)[0] : radical_of_algebra(*this);
    if (filtration && filtration->empty())
        require(rad.rows() == 0, "algebra: preset semisimple claim contradicts the radical");
    // two-sided ideal check
    {
        RowSpan span(rad);
        for (int r = 0; r < rad.rows(); ++r) {
            std::vector<u32> j(dim_);
            for (int k = 0; k < dim_; ++k) j[k] = rad.at(r, k);
            for (int b = 0; b < dim_; ++b) {
                std::vector<u32> e(dim_, 0);
                e[b] = 1;
                require(span.contains(mul(j, e)), "algebra: radical candidate not a right ideal");
                require(span.contains(mul(e, j)), "algebra: radical candidate not a left ideal");
            }
        }
    }
    filtration_.clear();
    FpMatrix cur = rad.rref().submatrix(0, 0, rad.rank(), dim_);
    while (cur.rows() > 0) {
        filtration_.push_back(cur);
        require(int(filtration_.size()) <= dim_, "algebra: radical candidate is not nilpotent");
        RowSpan next(dim_, f);
        for (int r = 0; r < cur.rows(); ++r) {
            std::vector<u32> x(dim_);
            for (int k = 0; k < dim_; ++k) x[k] = cur.at(r, k);
            for (int jr = 0; jr < rad.rows(); ++jr) {
                std::vector<u32> j(dim_);
                for (int k = 0; k < dim_; ++k) j[k] = rad.at(jr, k);
                next.insert(mul(x, j));
            }
        }
        cur = next.basis();
    }
    if (filtration) {
        require(filtration->size() == filtration_.size(), "algebra: preset filtration length off");
        for (size_t i = 0; i < filtration_.size(); ++i)
            require((*filtration)[i].rref().submatrix(0, 0, (*filtration)[i].rank(), dim_) ==
                        filtration_[i],
                    "algebra: preset filtration does not match recomputed powers");
    }
    if (preset_nonempty) {
        // a nilpotent two-sided ideal with a matching power chain could still be a
        // proper subideal of the radical; the quotient must come out semisimple
        const FpMatrix& B = filtration_[0];
        FpMatrix P = B.kernel_basis().transpose();  // dim x qdim, kernel = row space of B
        std::vector<int> piv;
        B.rref(&piv, nullptr);
        std::vector<bool> isp(size_t(dim_), false);
        for (int c : piv) isp[size_t(c)] = true;
        int qdim = P.cols();
        FpMatrix S(qdim, dim_, f);
        {
            int j = 0;
            for (int c = 0; c < dim_; ++c)
                if (!isp[size_t(c)]) S.set(j++, c, 1);
        }
        auto project = [&](const std::vector<u32>& v) {
            std::vector<u32> out(size_t(qdim), 0);
            for (int c = 0; c < qdim; ++c) {
                u32 acc = 0;
                for (int k = 0; k < dim_; ++k) acc = f.add(acc, f.mul(v[size_t(k)], P.at(k, c)));
                out[size_t(c)] = acc;
            }
            return out;
        };
        FpMatrix qtable(qdim * qdim, qdim, f);
        for (int a = 0; a < qdim; ++a)
            for (int b = 0; b < qdim; ++b) {
                std::vector<u32> x(S.row_ptr(a), S.row_ptr(a) + dim_);
                std::vector<u32> y(S.row_ptr(b), S.row_ptr(b) + dim_);
                std::vector<u32> pr = project(mul(x, y));
                for (int k = 0; k < qdim; ++k) qtable.set(a * qdim + b, k, pr[k]);
            }
        std::vector<std::string> qlabels;
        for (int k = 0; k < qdim; ++k) qlabels.push_back("q" + std::to_string(k));
        Algebra Q = from_data(f, std::move(qlabels), std::move(qtable), project(one_),
                              {project(one_)}, false);
        require(Q.radical().rows() == 0, "algebra: preset radical is smaller than the radical");
    }

    // primitivity: dim(fAf) - dim(fJf) == 1 for every listed idempotent
    if (idempotents_primitive_) {
        const FpMatrix& J = radical();
        for (const auto& e : idempotents_) {
            RowSpan fAf(dim_, f);
            for (int b = 0; b < dim_; ++b) {
                std::vector<u32> eb(dim_, 0);
                eb[b] = 1;
                fAf.insert(mul(mul(e, eb), e));
            }
            RowSpan fJf(dim_, f);
            for (int r = 0; r < J.rows(); ++r) {
                std::vector<u32> j(dim_);
                for (int k = 0; k < dim_; ++k) j[k] = J.at(r, k);
                fJf.insert(mul(mul(e, j), e));
            }
            require(fAf.dim() - fJf.dim() == 1, "algebra: listed idempotent is not primitive");
        }
    }
}

std::vector<u32> Algebra::mul(const std::vector<u32>& x, const std::vector<u32>& y) const {
    require(int(x.size()) == dim_ && int(y.size()) == dim_, "algebra mul: bad lengths");
    Fp f = field();
    std::vector<u32> r(dim_, 0);
    for (int a = 0; a < dim_; ++a) {
        if (x[a] == 0) continue;
        for (int b = 0; b < dim_; ++b) {
            if (y[b] == 0) continue;
            u32 c = f.mul(x[a], y[b]);
            for (int k = 0; k < dim_; ++k) r[k] = f.add(r[k], f.mul(c, mul_.at(a * dim_ + b, k)));
        }
    }
    return r;
}

FpMatrix Algebra::right_mul_matrix(const std::vector<u32>& y) const {
    Fp f = field();
    FpMatrix R(dim_, dim_, f);
    for (int a = 0; a < dim_; ++a)
        for (int b = 0; b < dim_; ++b) {
            if (y[b] == 0) continue;
            for (int k = 0; k < dim_; ++k)
                R.set(a, k, f.add(R.at(a, k), f.mul(y[b], mul_.at(a * dim_ + b, k))));
        }
    return R;
}

FpMatrix Algebra::left_mul_matrix(const std::vector<u32>& x) const {
    Fp f = field();
    FpMatrix L(dim_, dim_, f);
    for (int b = 0; b < dim_; ++b)
        for (int a = 0; a < dim_; ++a) {
            if (x[a] == 0) continue;
            for (int k = 0; k < dim_; ++k)
                L.set(b, k, f.add(L.at(b, k), f.mul(x[a], mul_.at(a * dim_ + b, k))));
        }
    return L;
}

const std::vector<std::vector<u32>>& Algebra::generators() const {
    if (!generators_.empty() || dim_ == 0) return generators_;
    Fp f = field();
    auto closure = [&](const std::vector<std::vector<u32>>& gens) {
        RowSpan span(dim_, f);
        span.insert(one_);
        for (const auto& g : gens) span.insert(g);
        bool grew = true;
        while (grew) {
            grew = false;
            FpMatrix b = span.basis();
            for (int i = 0; i < b.rows() && !grew; ++i)
                for (int j = 0; j < b.rows() && !grew; ++j) {
                    std::vector<u32> x(dim_), y(dim_);
                    for (int k = 0; k < dim_; ++k) x[k] = b.at(i, k), y[k] = b.at(j, k);
                    if (span.insert(mul(x, y))) grew = true;
                }
        }
        return span;
    };
    std::vector<std::vector<u32>> gens;
    RowSpan span = closure(gens);
    while (span.dim() < dim_) {
        for (int k = 0; k < dim_; ++k) {
            std::vector<u32> e(dim_, 0);
            e[k] = 1;
            if (!span.contains(e)) {
                gens.push_back(e);
                break;
            }
        }
        span = closure(gens);
    }
    generators_ = std::move(gens);
    if (generators_.empty()) generators_.push_back(one_);  // the field: generated by 1
    return generators_;
}

Algebra Algebra::opposite() const {
    Fp f = field();
    FpMatrix mul_op(dim_ * dim_, dim_, f);
    for (int a = 0; a < dim_; ++a)
        for (int b = 0; b < dim_; ++b)
            for (int k = 0; k < dim_; ++k) mul_op.set(a * dim_ + b, k, mul_.at(b * dim_ + a, k));
    return from_data(f, labels_, std::move(mul_op), one_, idempotents_, idempotents_primitive_,
                     filtration_);
}

AlgebraCorner Algebra::corner(const std::vector<u32>& e,
                                std::optional<std::vector<std::vector<u32>>> sub_idempotents,
                                bool sub_primitive) const {
    Fp f = field();
    require(is_idempotent(e), "corner: element is not idempotent");
    RowSpan span(dim_, f);
    for (int b = 0; b < dim_; ++b) {
        std::vector<u32> eb(dim_, 0);
        eb[b] = 1;
        span.insert(mul(mul(e, eb), e));
    }
    FpMatrix embed = span.basis();
    int cdim = embed.rows();
    if (cdim == 0) return AlgebraCorner{zero_algebra(f), embed};

    RowSolver solver(embed);
    auto coords = [&](const std::vector<u32>& v) {
        auto c = solver.solve(v);
        require(c.has_value(), "corner: product escaped the corner span");
        return *c;
    };
    FpMatrix mulc(cdim * cdim, cdim, f);
    for (int i = 0; i < cdim; ++i)
        for (int j = 0; j < cdim; ++j) {
            std::vector<u32> x(dim_), y(dim_);
            for (int k = 0; k < dim_; ++k) x[k] = embed.at(i, k), y[k] = embed.at(j, k);
            std::vector<u32> c = coords(mul(x, y));
            for (int k = 0; k < cdim; ++k) mulc.set(i * cdim + j, k, c[k]);
        }
    std::vector<u32> onec = coords(e);
    std::vector<std::vector<u32>> idems;
    if (sub_idempotents) {
        for (const auto& s : *sub_idempotents) idems.push_back(coords(s));
    } else {
        idems.push_back(onec);
    }
    std::vector<std::string> labels;
    for (int k = 0; k < cdim; ++k) labels.push_back("c" + std::to_string(k));
    return AlgebraCorner{from_data(f, std::move(labels), std::move(mulc), std::move(onec),
                            std::move(idems), sub_primitive),
                  embed};
}

bool Algebra::is_idempotent(const std::vector<u32>& e) const {
    if (int(e.size()) != dim_) return false;
    return mul(e, e) == e;
}

bool algebra_iso_check(const Algebra& A, const Algebra& B, const FpMatrix& candidate) {
    if (A.dim() != B.dim()) return false;
    if (A.field().p != B.field().p) return false;
    if (candidate.rows() != A.dim() || candidate.cols() != B.dim()) return false;
    if (!candidate.try_invert().has_value()) return false;
    int n = A.dim();
    Fp f = A.field();
    auto apply = [&](const std::vector<u32>& x) {
        std::vector<u32> r(n, 0);
        for (int i = 0; i < n; ++i) {
            if (x[i] == 0) continue;
            for (int j = 0; j < n; ++j) r[j] = f.add(r[j], f.mul(x[i], candidate.at(i, j)));
        }
        return r;
    };
    if (apply(A.one()) != B.one()) return false;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            std::vector<u32> ea(n, 0), eb(n, 0);
            ea[a] = 1;
            eb[b] = 1;
            if (apply(A.mul(ea, eb)) != B.mul(apply(ea), apply(eb))) return false;
        }
    return true;
}

}  // namespace funcat
