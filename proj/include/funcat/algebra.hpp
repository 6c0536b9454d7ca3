#pragma once

#include <optional>
#include <string>
#include <vector>

#include "funcat/fp.hpp"

namespace funcat {

/// A finite quiver: vertices 0..vertex_count-1 and named arrows.
struct Quiver {
    struct Arrow {
        std::string name;
        int src = 0;
        int dst = 0;
    };
    int vertex_count = 0;
    std::vector<Arrow> arrows;

    void validate() const;
    int arrow_index(const std::string& name) const;  // -1 if absent
};

/// A path: src/tgt vertices plus the arrow index sequence (empty = vertex path).
struct PathWord {
    int src = 0;
    int tgt = 0;
    std::vector<int> arrows;

    int length() const { return int(arrows.size()); }
};

/// One term of a relation: coefficient times a path given by arrow names.
struct RelationTerm {
    long long coeff = 0;
    std::vector<std::string> path;
};
using Relation = std::vector<RelationTerm>;

struct AlgebraCorner;

/// Associative unital finite-dimensional algebra over F_p given by structure
/// constants. Carries a complete orthogonal idempotent list ("vertex
/// idempotents"), the radical and its power filtration, all validated at
/// construction.
class Algebra {
public:
    /// mul has dim*dim rows: row a*dim+b = coordinates of e_a * e_b.
    /// radical/filtration may be empty, in which case they are computed
    /// (characteristic-polynomial radical algorithm on the regular
    /// representation, then ideal powers).
    static Algebra from_data(Fp f, std::vector<std::string> labels, FpMatrix mul,
                             std::vector<u32> one, std::vector<std::vector<u32>> idempotents,
                             bool idempotents_primitive,
                             std::optional<std::vector<FpMatrix>> filtration = std::nullopt);

    static Algebra zero_algebra(Fp f);  // the degenerate 0 algebra

    Fp field() const { return Fp(p_); }
    int dim() const { return dim_; }
    bool is_zero() const { return dim_ == 0; }
    const std::string& label(int i) const { return labels_[i]; }
    const std::vector<std::string>& labels() const { return labels_; }

    const std::vector<u32>& one() const { return one_; }
    const std::vector<std::vector<u32>>& idempotents() const { return idempotents_; }
    bool idempotents_primitive() const { return idempotents_primitive_; }

    std::vector<u32> mul(const std::vector<u32>& x, const std::vector<u32>& y) const;
    /// Right regular action: row x maps to x * R(y) = coords of x*y.
    FpMatrix right_mul_matrix(const std::vector<u32>& y) const;
    /// Left factor action: row y maps to y * L(x) = coords of x*y.
    FpMatrix left_mul_matrix(const std::vector<u32>& x) const;

    /// Rows: canonical basis of the radical J.
    const FpMatrix& radical() const { return filtration_.empty() ? empty_ : filtration_[0]; }
    /// filtration()[i] = canonical basis of J^{i+1}; last entry is the last
    /// nonzero power. nilpotency_index() = n with J^n = 0 (n >= 1; n = 1 for
    /// semisimple, n = 0 for the zero algebra).
    const std::vector<FpMatrix>& filtration() const { return filtration_; }
    int nilpotency_index() const { return int(filtration_.size()) + (dim_ ? 1 : 0); }

    /// A small unital generating set (indices into a cached element list),
    /// as coordinate vectors. Deterministic greedy construction.
    const std::vector<std::vector<u32>>& generators() const;

    Algebra opposite() const;

    /// eAe with a deterministic basis; embed rows give corner basis elements
    /// in A-coordinates. sub_idempotents: an optional complete orthogonal
    /// idempotent list for the corner (defaults to {e}).
    AlgebraCorner corner(const std::vector<u32>& e,
                         std::optional<std::vector<std::vector<u32>>> sub_idempotents = std::nullopt,
                         bool sub_primitive = false) const;

    bool is_idempotent(const std::vector<u32>& e) const;

private:
    Algebra() : p_(2) {}
    void validate_and_finish(std::optional<std::vector<FpMatrix>> filtration);

    int dim_ = 0;
    u32 p_;
    std::vector<std::string> labels_;
    FpMatrix mul_;  // (dim*dim) x dim
    std::vector<u32> one_;
    std::vector<std::vector<u32>> idempotents_;
    bool idempotents_primitive_ = false;
    std::vector<FpMatrix> filtration_;
    FpMatrix empty_;
    mutable std::vector<std::vector<u32>> generators_;  // lazy
};

struct AlgebraCorner {
    Algebra algebra;
    FpMatrix embed;  // corner-dim x dim
};

/// candidate: dim_A x dim_B matrix of a linear map A -> B (row convention).
/// True iff bijective, unital and multiplicative.
bool algebra_iso_check(const Algebra& A, const Algebra& B, const FpMatrix& candidate);

/// Path-algebra quotient by an admissible relation ideal.
struct QuiverAlgebra {
    Quiver quiver;
    Algebra algebra;
    std::vector<PathWord> basis;  // length-then-lex order; [v] = vertex path v first
};

/// Errors on: invalid quiver, non-parallel or short relation paths, a
/// quotient that is not finite-dimensional (basis cap) or whose arrow ideal
/// is not nilpotent (inadmissible ideal).
QuiverAlgebra build_from_quiver(const Quiver& q, const std::vector<Relation>& relations, Fp f,
                                size_t basis_cap = 10000);

/// Characteristic polynomial coefficients of a square matrix: returns
/// c[0..n] with det(tI - M) = sum c[k] t^{n-k}; c[0] = 1.
std::vector<u32> char_poly(const FpMatrix& M);

/// Radical of the algebra spanned by the given matrices (with the structure
/// inherited from an associative algebra): used internally; exposed for tests.
FpMatrix radical_of_algebra(const Algebra& A);

}  // namespace funcat
