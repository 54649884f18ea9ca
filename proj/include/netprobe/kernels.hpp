#pragma once
// Data-parallel kernels behind the design objectives and the probing
// pipeline. Every kernel has a scalar reference implementation; on x86-64
// an AVX2+FMA variant is selected at runtime when the CPU supports it.
// The two implementations are equivalence-tested against each other.

#include <cstddef>
#include <cstdint>

namespace netprobe::kernels {

struct Ops {
  // out[i] = a * x[i] + b * y[i]
  void (*axpby)(double a, const double* x, double b, const double* y,
                double* out, std::size_t n);
  double (*dot)(const double* x, const double* y, std::size_t n);
  double (*squared_norm)(const double* x, std::size_t n);
  // Sum of v[idx[i]] for i < k.
  double (*indexed_sum)(const double* v, const std::uint32_t* idx,
                        std::size_t k);
  // out[r] += mat[idx[i] * rows + r] for each selected column idx[i] of a
  // column-major matrix with `rows` rows. out is accumulated, not cleared.
  void (*accumulate_columns)(const double* mat, std::size_t rows,
                             const std::uint32_t* idx, std::size_t k,
                             double* out);
};

// Reference implementation, always present.
const Ops& scalar_ops();

// True when this build has the AVX2 kernels and the running CPU supports
// AVX2+FMA.
bool avx2_available();

// The AVX2 table; falls back to the scalar table when avx2_available() is
// false.
const Ops& avx2_ops();

// Table picked once at first use: AVX2 when available, scalar otherwise.
// NETPROBE_FORCE_SCALAR=1 in the environment pins the scalar path.
const Ops& active_ops();
const char* active_isa();

// Force the scalar reference path (tests, --force-scalar). Affects
// subsequent active_ops() calls.
void force_scalar(bool on);

}  // namespace netprobe::kernels
