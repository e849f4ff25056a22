#include <cmath>

#include "semnet/kernels/kernels.hpp"

namespace semnet::kernels {

namespace {

void npmi_batch_scalar(const double* pair_w, const double* x_w, const double* y_w,
                       double total, double* pmi, double* h, double* npmi,
                       std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double pxy = pair_w[i] / total;
    const double px = x_w[i] / total;
    const double py = y_w[i] / total;
    const double p = std::log2(pxy / (px * py));
    const double hh = -std::log2(pxy);
    pmi[i] = p;
    h[i] = hh;
    npmi[i] = hh > 0.0 ? p / hh : 0.0;
  }
}

void matvec_scalar(const double* a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = a + i * n;
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
}

void add_in_place_scalar(double* y, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += x[i];
}

double l2_norm_scalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * x[i];
  return std::sqrt(acc);
}

double max_abs_diff_scalar(const double* a, const double* b, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = std::fabs(a[i] - b[i]);
    if (d > m) m = d;
  }
  return m;
}

void scale_in_place_scalar(double* x, double s, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= s;
}

}  // namespace

const KernelTable& scalar() {
  static const KernelTable table{
      "scalar",          npmi_batch_scalar,   matvec_scalar,
      add_in_place_scalar, l2_norm_scalar,    max_abs_diff_scalar,
      scale_in_place_scalar,
  };
  return table;
}

}  // namespace semnet::kernels
