#pragma once

#include <cstddef>
#include <cstdint>

// Low-level dense kernels used by the operator-apply and orthonormalization
// hot loops. Each function exists in a scalar reference form and in SIMD
// forms (AVX2 on x86-64, NEON on aarch64); one implementation table is
// selected at process start based on CPU capability, overridable with the
// MLSC_KERNEL_IMPL environment variable (values: scalar, avx2, neon).
//
// Contracts:
//  - axpy, scal and csr_row_block are bit-exact across implementations:
//    every output element is produced by the same sequence of one multiply
//    and one add per term (no FMA, no reassociation). Their TUs are built
//    with -ffp-contract=off to keep the scalar form honest.
//  - dot may reassociate (the SIMD forms use multiple accumulators) and is
//    compared against the scalar form with a tolerance.
namespace mlsc::kern {

struct Table {
  const char* name;
  // sum_i a[i]*b[i]
  double (*dot)(const double* a, const double* b, std::size_t m);
  // y[i] += alpha*x[i]
  void (*axpy)(double* y, double alpha, const double* x, std::size_t m);
  // x[i] *= alpha
  void (*scal)(double* x, double alpha, std::size_t m);
  // One CSR row times a row-major block X (n x b):
  //   out_row[j] += vals[t] * X[cols[t]*b + j]  for t in [0,cnt), j in [0,b)
  // accumulating over t in index order for every j.
  void (*csr_row_block)(double* out_row, const std::int32_t* cols,
                        const double* vals, std::size_t cnt, const double* X,
                        std::size_t b);
};

const Table& scalar_table();
// Null when the build or the CPU lacks the instruction set.
const Table* avx2_table();
const Table* neon_table();

// The table picked for this process.
const Table& active();
const char* impl_name();

}  // namespace mlsc::kern
