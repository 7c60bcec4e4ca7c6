#include <cmath>

#include "relaxlab/kernels.hpp"
#include "relaxlab/wave_model.hpp"

namespace relaxlab {

namespace {

inline double minmod(double a, double b) noexcept {
  if (!(a * b > 0.0)) return 0.0;
  return std::fabs(a) < std::fabs(b) ? a : b;
}

void slopes(const double* v, double* s, std::size_t n) {
  for (std::size_t i = 1; i + 1 < n; ++i) s[i] = minmod(v[i] - v[i - 1], v[i + 1] - v[i]);
}

void fluxes(const double* u, const double* q, const double* su, const double* sq, std::size_t first,
            std::size_t n_faces, FluxParams p, double* fu, double* fq) {
  const double ns = -p.sigma;
  for (std::size_t k = 0; k < n_faces; ++k) {
    const std::size_t i = first + k;
    const double ul = u[i] + 0.5 * su[i];
    const double ur = u[i + 1] - 0.5 * su[i + 1];
    const double ql = q[i] + 0.5 * sq[i];
    const double qr = q[i + 1] - 0.5 * sq[i + 1];
    const double gul = (ns * ul + ul * ul * ul) - ql;
    const double gur = (ns * ur + ur * ur * ur) - qr;
    const double gql = ns * ql - ul * p.inv_tau;
    const double gqr = ns * qr - ur * p.inv_tau;
    const double al = spectral_radius(ul, p.inv_tau, p.sigma);
    const double ar = spectral_radius(ur, p.inv_tau, p.sigma);
    const double a = al > ar ? al : ar;
    fu[k] = 0.5 * (gul + gur) - 0.5 * a * (ur - ul);
    fq[k] = 0.5 * (gql + gqr) - 0.5 * a * (qr - ql);
  }
}

void divergence(const double* f, double* r, std::size_t n, double inv_dx) {
  for (std::size_t j = 0; j < n; ++j) r[j] = (f[j] - f[j + 1]) * inv_dx;
}

void stage1(const double* u, const double* q, const double* ru, const double* rq, double* u1, double* q1,
            std::size_t n, double dt, double inv_den) {
  for (std::size_t j = 0; j < n; ++j) {
    u1[j] = u[j] + dt * ru[j];
    q1[j] = (q[j] + dt * rq[j]) * inv_den;
  }
}

void stage2(double* u, double* q, const double* u1, const double* q1, const double* ru, const double* rq,
            std::size_t n, double dt, double inv_den) {
  for (std::size_t j = 0; j < n; ++j) {
    u[j] = 0.5 * u[j] + 0.5 * (u1[j] + dt * ru[j]);
    q[j] = (0.5 * q[j] + 0.5 * (q1[j] + dt * rq[j])) * inv_den;
  }
}

double max_speed(const double* u, std::size_t n, FluxParams p) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = spectral_radius(u[i], p.inv_tau, p.sigma);
    m = a > m ? a : m;
  }
  return m;
}

constexpr KernelTable kScalar{"scalar", slopes, fluxes, divergence, stage1, stage2, max_speed};

}  // namespace

const KernelTable& scalar_kernels() noexcept { return kScalar; }

}  // namespace relaxlab
