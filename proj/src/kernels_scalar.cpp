#include "netprobe/kernels.hpp"

namespace netprobe::kernels {
namespace {

void axpby_scalar(double a, const double* x, double b, const double* y,
                  double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

double squared_norm_scalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * x[i];
  return acc;
}

double indexed_sum_scalar(const double* v, const std::uint32_t* idx,
                          std::size_t k) {
  double acc = 0.0;
  for (std::size_t i = 0; i < k; ++i) acc += v[idx[i]];
  return acc;
}

void accumulate_columns_scalar(const double* mat, std::size_t rows,
                               const std::uint32_t* idx, std::size_t k,
                               double* out) {
  for (std::size_t i = 0; i < k; ++i) {
    const double* col = mat + static_cast<std::size_t>(idx[i]) * rows;
    for (std::size_t r = 0; r < rows; ++r) out[r] += col[r];
  }
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops table = {axpby_scalar, dot_scalar, squared_norm_scalar,
                            indexed_sum_scalar, accumulate_columns_scalar};
  return table;
}

}  // namespace netprobe::kernels
