#pragma once

#include "funcat/fp.hpp"

// Low-level dense kernels over F_p. The parallel variants use OpenMP when
// available and produce bit-identical results to the serial references
// (exact arithmetic, row-independent updates). The serial versions are kept
// as the reference implementation for tests and benchmarking.

namespace funcat::kernels {

/// Global switch; defaults to true when compiled with OpenMP.
bool parallel_enabled();
void set_parallel(bool on);
int max_threads();

/// c = a * b, sizes m x k and k x n. c must be preallocated m*n.
void matmul_serial(const u32* a, const u32* b, u32* c, int m, int k, int n, Fp f);
void matmul_parallel(const u32* a, const u32* b, u32* c, int m, int k, int n, Fp f);
void matmul(const u32* a, const u32* b, u32* c, int m, int k, int n, Fp f);

/// In-place reduced row echelon form; returns pivot columns.
std::vector<int> rref_serial(u32* a, int rows, int cols, Fp f);
std::vector<int> rref_parallel(u32* a, int rows, int cols, Fp f);
std::vector<int> rref(u32* a, int rows, int cols, Fp f);

}  // namespace funcat::kernels
