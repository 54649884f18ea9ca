#include "netprobe/kernels.hpp"

#include <atomic>
#include <cstdlib>

namespace netprobe::kernels {

namespace detail {
const Ops* avx2_table();  // defined in kernels_avx2.cpp
}

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

std::atomic<bool> g_force_scalar{[] {
  const char* env = std::getenv("NETPROBE_FORCE_SCALAR");
  return env != nullptr && env[0] == '1';
}()};

}  // namespace

bool avx2_available() {
  return detail::avx2_table() != nullptr && cpu_has_avx2();
}

const Ops& avx2_ops() {
  const Ops* t = detail::avx2_table();
  return (t != nullptr && cpu_has_avx2()) ? *t : scalar_ops();
}

void force_scalar(bool on) { g_force_scalar.store(on); }

const Ops& active_ops() {
  if (g_force_scalar.load()) return scalar_ops();
  return avx2_ops();
}

const char* active_isa() {
  if (g_force_scalar.load() || !avx2_available()) return "scalar";
  return "avx2";
}

}  // namespace netprobe::kernels
