// Compiled with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include <cmath>

#include "relaxlab/kernels.hpp"
#include "relaxlab/wave_model.hpp"

namespace relaxlab {

namespace {

constexpr std::size_t W = 4;

inline double minmod1(double a, double b) noexcept {
  if (!(a * b > 0.0)) return 0.0;
  return std::fabs(a) < std::fabs(b) ? a : b;
}

inline __m256d vabs(__m256d x) noexcept { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), x); }

inline __m256d vminmod(__m256d a, __m256d b) noexcept {
  const __m256d pos = _mm256_cmp_pd(_mm256_mul_pd(a, b), _mm256_setzero_pd(), _CMP_GT_OQ);
  const __m256d a_smaller = _mm256_cmp_pd(vabs(a), vabs(b), _CMP_LT_OQ);
  const __m256d pick = _mm256_blendv_pd(b, a, a_smaller);
  return _mm256_and_pd(pos, pick);
}

inline __m256d vmax_gt(__m256d a, __m256d b) noexcept {
  return _mm256_blendv_pd(b, a, _mm256_cmp_pd(a, b, _CMP_GT_OQ));
}

// Same operation sequence as spectral_radius().
inline __m256d vspectral(__m256d u, __m256d four_inv_tau, __m256d two_s) noexcept {
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d fp = _mm256_mul_pd(_mm256_mul_pd(_mm256_set1_pd(3.0), u), u);
  const __m256d disc = _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(fp, fp), four_inv_tau));
  const __m256d c = _mm256_sub_pd(fp, two_s);
  const __m256d am = vabs(_mm256_mul_pd(half, _mm256_sub_pd(c, disc)));
  const __m256d ap = vabs(_mm256_mul_pd(half, _mm256_add_pd(c, disc)));
  return vmax_gt(am, ap);
}

void slopes(const double* v, double* s, std::size_t n) {
  if (n < 3) return;
  std::size_t i = 1;
  for (; i + W < n; i += W) {
    const __m256d vm = _mm256_loadu_pd(v + i - 1);
    const __m256d v0 = _mm256_loadu_pd(v + i);
    const __m256d vp = _mm256_loadu_pd(v + i + 1);
    _mm256_storeu_pd(s + i, vminmod(_mm256_sub_pd(v0, vm), _mm256_sub_pd(vp, v0)));
  }
  for (; i + 1 < n; ++i) s[i] = minmod1(v[i] - v[i - 1], v[i + 1] - v[i]);
}

void fluxes(const double* u, const double* q, const double* su, const double* sq, std::size_t first,
            std::size_t n_faces, FluxParams p, double* fu, double* fq) {
  const double ns = -p.sigma;
  const __m256d vns = _mm256_set1_pd(ns);
  const __m256d vit = _mm256_set1_pd(p.inv_tau);
  const __m256d v4it = _mm256_set1_pd(4.0 * p.inv_tau);
  const __m256d v2s = _mm256_set1_pd(2.0 * p.sigma);
  const __m256d half = _mm256_set1_pd(0.5);
  std::size_t k = 0;
  for (; k + W <= n_faces; k += W) {
    const std::size_t i = first + k;
    const __m256d ul = _mm256_add_pd(_mm256_loadu_pd(u + i), _mm256_mul_pd(half, _mm256_loadu_pd(su + i)));
    const __m256d ur =
        _mm256_sub_pd(_mm256_loadu_pd(u + i + 1), _mm256_mul_pd(half, _mm256_loadu_pd(su + i + 1)));
    const __m256d ql = _mm256_add_pd(_mm256_loadu_pd(q + i), _mm256_mul_pd(half, _mm256_loadu_pd(sq + i)));
    const __m256d qr =
        _mm256_sub_pd(_mm256_loadu_pd(q + i + 1), _mm256_mul_pd(half, _mm256_loadu_pd(sq + i + 1)));
    const __m256d gul = _mm256_sub_pd(
        _mm256_add_pd(_mm256_mul_pd(vns, ul), _mm256_mul_pd(_mm256_mul_pd(ul, ul), ul)), ql);
    const __m256d gur = _mm256_sub_pd(
        _mm256_add_pd(_mm256_mul_pd(vns, ur), _mm256_mul_pd(_mm256_mul_pd(ur, ur), ur)), qr);
    const __m256d gql = _mm256_sub_pd(_mm256_mul_pd(vns, ql), _mm256_mul_pd(ul, vit));
    const __m256d gqr = _mm256_sub_pd(_mm256_mul_pd(vns, qr), _mm256_mul_pd(ur, vit));
    const __m256d a = vmax_gt(vspectral(ul, v4it, v2s), vspectral(ur, v4it, v2s));
    const __m256d ha = _mm256_mul_pd(half, a);
    _mm256_storeu_pd(fu + k, _mm256_sub_pd(_mm256_mul_pd(half, _mm256_add_pd(gul, gur)),
                                           _mm256_mul_pd(ha, _mm256_sub_pd(ur, ul))));
    _mm256_storeu_pd(fq + k, _mm256_sub_pd(_mm256_mul_pd(half, _mm256_add_pd(gql, gqr)),
                                           _mm256_mul_pd(ha, _mm256_sub_pd(qr, ql))));
  }
  for (; k < n_faces; ++k) {
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
  const __m256d vi = _mm256_set1_pd(inv_dx);
  std::size_t j = 0;
  for (; j + W <= n; j += W) {
    _mm256_storeu_pd(r + j, _mm256_mul_pd(_mm256_sub_pd(_mm256_loadu_pd(f + j), _mm256_loadu_pd(f + j + 1)), vi));
  }
  for (; j < n; ++j) r[j] = (f[j] - f[j + 1]) * inv_dx;
}

void stage1(const double* u, const double* q, const double* ru, const double* rq, double* u1, double* q1,
            std::size_t n, double dt, double inv_den) {
  const __m256d vdt = _mm256_set1_pd(dt);
  const __m256d vden = _mm256_set1_pd(inv_den);
  std::size_t j = 0;
  for (; j + W <= n; j += W) {
    _mm256_storeu_pd(u1 + j, _mm256_add_pd(_mm256_loadu_pd(u + j), _mm256_mul_pd(vdt, _mm256_loadu_pd(ru + j))));
    _mm256_storeu_pd(
        q1 + j,
        _mm256_mul_pd(_mm256_add_pd(_mm256_loadu_pd(q + j), _mm256_mul_pd(vdt, _mm256_loadu_pd(rq + j))), vden));
  }
  for (; j < n; ++j) {
    u1[j] = u[j] + dt * ru[j];
    q1[j] = (q[j] + dt * rq[j]) * inv_den;
  }
}

void stage2(double* u, double* q, const double* u1, const double* q1, const double* ru, const double* rq,
            std::size_t n, double dt, double inv_den) {
  const __m256d vdt = _mm256_set1_pd(dt);
  const __m256d vden = _mm256_set1_pd(inv_den);
  const __m256d half = _mm256_set1_pd(0.5);
  std::size_t j = 0;
  for (; j + W <= n; j += W) {
    const __m256d nu = _mm256_add_pd(
        _mm256_mul_pd(half, _mm256_loadu_pd(u + j)),
        _mm256_mul_pd(half, _mm256_add_pd(_mm256_loadu_pd(u1 + j), _mm256_mul_pd(vdt, _mm256_loadu_pd(ru + j)))));
    const __m256d nq = _mm256_mul_pd(
        _mm256_add_pd(_mm256_mul_pd(half, _mm256_loadu_pd(q + j)),
                      _mm256_mul_pd(half, _mm256_add_pd(_mm256_loadu_pd(q1 + j),
                                                        _mm256_mul_pd(vdt, _mm256_loadu_pd(rq + j))))),
        vden);
    _mm256_storeu_pd(u + j, nu);
    _mm256_storeu_pd(q + j, nq);
  }
  for (; j < n; ++j) {
    u[j] = 0.5 * u[j] + 0.5 * (u1[j] + dt * ru[j]);
    q[j] = (0.5 * q[j] + 0.5 * (q1[j] + dt * rq[j])) * inv_den;
  }
}

double max_speed(const double* u, std::size_t n, FluxParams p) {
  const __m256d v4it = _mm256_set1_pd(4.0 * p.inv_tau);
  const __m256d v2s = _mm256_set1_pd(2.0 * p.sigma);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + W <= n; i += W) acc = vmax_gt(vspectral(_mm256_loadu_pd(u + i), v4it, v2s), acc);
  alignas(32) double lanes[W];
  _mm256_store_pd(lanes, acc);
  double m = 0.0;
  for (double l : lanes) m = l > m ? l : m;
  for (; i < n; ++i) {
    const double a = spectral_radius(u[i], p.inv_tau, p.sigma);
    m = a > m ? a : m;
  }
  return m;
}

constexpr KernelTable kAvx2{"avx2", slopes, fluxes, divergence, stage1, stage2, max_speed};

}  // namespace

const KernelTable* avx2_kernels() noexcept { return &kAvx2; }

}  // namespace relaxlab
