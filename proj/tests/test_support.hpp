#pragma once

// small corpus of algebras shared across the test binaries

#include "funcat/algebra.hpp"

namespace funcat::testsupport {

// k as a one-vertex quiver
inline QuiverAlgebra field_alg(u32 p) {
    Quiver q{1, {}};
    return build_from_quiver(q, {}, Fp(p));
}

// k[x]/(x^2): one loop, relation x*x
inline QuiverAlgebra dual_numbers(u32 p) {
    Quiver q{1, {{"x", 0, 0}}};
    Relation r = {{1, {"x", "x"}}};
    return build_from_quiver(q, {r}, Fp(p));
}

// k[x]/(x^3)
inline QuiverAlgebra serial3(u32 p) {
    Quiver q{1, {{"x", 0, 0}}};
    Relation r = {{1, {"x", "x", "x"}}};
    return build_from_quiver(q, {r}, Fp(p));
}

// path algebra of A2: 0 --a--> 1
inline QuiverAlgebra a2(u32 p) {
    Quiver q{2, {{"a", 0, 1}}};
    return build_from_quiver(q, {}, Fp(p));
}

// self-injective Nakayama: 0 <--> 1 with both length-2 cycles zero
inline QuiverAlgebra nakayama2(u32 p) {
    Quiver q{2, {{"a", 0, 1}, {"b", 1, 0}}};
    Relation r1 = {{1, {"a", "b"}}};
    Relation r2 = {{1, {"b", "a"}}};
    return build_from_quiver(q, {r1, r2}, Fp(p));
}

// exterior algebra on two generators: k<x,y>/(x^2, y^2, xy + yx);
// commutative non-self-injective for p = 2 reads k[x,y]/(x^2, xy, y^2)-like
// only in characteristic 2; we also use the genuinely commutative one below.
inline QuiverAlgebra exterior2(u32 p) {
    Quiver q{1, {{"x", 0, 0}, {"y", 0, 0}}};
    Relation r1 = {{1, {"x", "x"}}};
    Relation r2 = {{1, {"y", "y"}}};
    Relation r3 = {{1, {"x", "y"}}, {1, {"y", "x"}}};
    return build_from_quiver(q, {r1, r2, r3}, Fp(p));
}

// k[x,y]/(x^2, xy, y^2): commutative local, radical square zero, dim 3
inline QuiverAlgebra commutative_fat_point(u32 p) {
    Quiver q{1, {{"x", 0, 0}, {"y", 0, 0}}};
    Relation r1 = {{1, {"x", "x"}}};
    Relation r2 = {{1, {"y", "y"}}};
    Relation r3 = {{1, {"x", "y"}}};
    Relation r4 = {{1, {"y", "x"}}};
    return build_from_quiver(q, {r1, r2, r3, r4}, Fp(p));
}

// commuting square with relation ab - cd (inhomogeneous reduction exercise)
inline QuiverAlgebra commuting_square(u32 p) {
    Quiver q{4, {{"a", 0, 1}, {"b", 1, 3}, {"c", 0, 2}, {"d", 2, 3}}};
    Relation r = {{1, {"a", "b"}}, {-1, {"c", "d"}}};
    return build_from_quiver(q, {r}, Fp(p));
}

}  // namespace funcat::testsupport
