#pragma once

#include <cstddef>
#include <string>

namespace relaxlab {

struct FluxParams {
  double sigma;    // frame speed
  double inv_tau;
};

/// Per-array building blocks of one explicit stage. Every implementation
/// must produce bit-identical results to the scalar reference.
struct KernelTable {
  const char* name;

  /// s[i] = minmod(v[i] - v[i-1], v[i+1] - v[i]) for 1 <= i <= n - 2.
  void (*slopes)(const double* v, double* s, std::size_t n);

  /// Rusanov flux at n_faces faces; face k lies between cells first + k and
  /// first + k + 1 of the (u, q) arrays, reconstructed with slopes (su, sq).
  void (*fluxes)(const double* u, const double* q, const double* su, const double* sq,
                 std::size_t first, std::size_t n_faces, FluxParams p, double* fu, double* fq);

  /// r[j] = (f[j] - f[j+1]) * inv_dx for 0 <= j < n.
  void (*divergence)(const double* f, double* r, std::size_t n, double inv_dx);

  /// u1 = u + dt ru;  q1 = (q + dt rq) * inv_den.
  void (*stage1)(const double* u, const double* q, const double* ru, const double* rq, double* u1,
                 double* q1, std::size_t n, double dt, double inv_den);

  /// u = 0.5 u + 0.5 (u1 + dt ru);  q = (0.5 q + 0.5 (q1 + dt rq)) * inv_den, in place on (u, q).
  void (*stage2)(double* u, double* q, const double* u1, const double* q1, const double* ru,
                 const double* rq, std::size_t n, double dt, double inv_den);

  /// max over i of spectral_radius(u[i], inv_tau, sigma).
  double (*max_speed)(const double* u, std::size_t n, FluxParams p);
};

enum class KernelChoice { automatic, scalar, avx2 };

std::string to_string(KernelChoice c);
KernelChoice parse_kernel_choice(const std::string& s);

const KernelTable& scalar_kernels() noexcept;
/// nullptr when the library was built without the AVX2 translation unit.
const KernelTable* avx2_kernels() noexcept;
bool cpu_has_avx2() noexcept;

/// Resolves a choice to a table. `automatic` consults RELAXLAB_KERNEL
/// (scalar | avx2) and otherwise picks AVX2 when the CPU supports it.
/// Throws std::runtime_error if AVX2 is requested but unavailable.
const KernelTable& select_kernels(KernelChoice c);

}  // namespace relaxlab
