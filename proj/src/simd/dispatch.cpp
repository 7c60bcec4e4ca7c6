#include <cstdlib>
#include <stdexcept>

#include "relaxlab/kernels.hpp"

namespace relaxlab {

#ifndef RELAXLAB_HAVE_AVX2
const KernelTable* avx2_kernels() noexcept { return nullptr; }
#endif

bool cpu_has_avx2() noexcept {
#if defined(__GNUC__) && (defined(__x86_64__) || defined(__i386__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

std::string to_string(KernelChoice c) {
  switch (c) {
    case KernelChoice::automatic: return "auto";
    case KernelChoice::scalar: return "scalar";
    case KernelChoice::avx2: return "avx2";
  }
  return "unknown";
}

KernelChoice parse_kernel_choice(const std::string& s) {
  if (s == "auto") return KernelChoice::automatic;
  if (s == "scalar") return KernelChoice::scalar;
  if (s == "avx2") return KernelChoice::avx2;
  throw std::invalid_argument("unknown kernel '" + s + "' (expected auto, scalar or avx2)");
}

const KernelTable& select_kernels(KernelChoice c) {
  if (c == KernelChoice::automatic) {
    if (const char* env = std::getenv("RELAXLAB_KERNEL"); env && *env) {
      c = parse_kernel_choice(env);
    }
  }
  const bool avx2_ok = avx2_kernels() != nullptr && cpu_has_avx2();
  switch (c) {
    case KernelChoice::scalar: return scalar_kernels();
    case KernelChoice::avx2:
      if (!avx2_ok) throw std::runtime_error("AVX2 kernels requested but not available on this build/CPU");
      return *avx2_kernels();
    case KernelChoice::automatic: break;
  }
  return avx2_ok ? *avx2_kernels() : scalar_kernels();
}

}  // namespace relaxlab
