#pragma once

#include <cstddef>

// Arithmetic inner loops used by the association scoring and the power
// iteration. Each kernel has a scalar reference implementation and, on
// x86-64, an AVX2+FMA variant picked at runtime. The two variants are
// equivalence-tested against each other (test_kernels.cpp); scalar is the
// reference semantics.
namespace semnet::kernels {

struct KernelTable {
  const char* name;

  // Pointwise mutual information over window-count tables, log base 2.
  //   pxy = pair_w[i]/total, px = x_w[i]/total, py = y_w[i]/total
  //   pmi  = log2(pxy / (px*py))
  //   h    = -log2(pxy)
  //   npmi = pmi/h, defined as 0 when h == 0 (pair present in every window)
  // Preconditions: total > 0, 1 <= pair_w[i] <= min(x_w[i], y_w[i]) <= total.
  void (*npmi_batch)(const double* pair_w, const double* x_w, const double* y_w,
                     double total, double* pmi, double* h, double* npmi,
                     std::size_t n);

  // y = A x for dense row-major A (n x n).
  void (*matvec)(const double* a, const double* x, double* y, std::size_t n);

  // y += x
  void (*add_in_place)(double* y, const double* x, std::size_t n);

  double (*l2_norm)(const double* x, std::size_t n);

  double (*max_abs_diff)(const double* a, const double* b, std::size_t n);

  // x *= s
  void (*scale_in_place)(double* x, double s, std::size_t n);
};

// Reference implementation, always available.
const KernelTable& scalar();

// AVX2+FMA variant; nullptr when the binary was built without x86-64 support
// or the running CPU lacks the instructions.
const KernelTable* avx2();

// Runtime selection: AVX2 when available, else scalar. The environment
// variable SEMNET_KERNELS=scalar|avx2 forces a variant (falls back to scalar
// with a warning when avx2 is requested but unavailable). The choice is made
// once per process.
const KernelTable& active();

}  // namespace semnet::kernels
