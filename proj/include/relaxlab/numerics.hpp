#pragma once

#include <array>
#include <cstddef>
#include <span>

namespace relaxlab::numerics {

/// 8-point Gauss-Legendre rule on [-1, 1].
inline constexpr std::array<double, 8> kGL8Nodes = {
    -0.9602898564975362316835609, -0.7966664774136267395915539, -0.5255324099163289858177390,
    -0.1834346424956498049394761, 0.1834346424956498049394761,  0.5255324099163289858177390,
    0.7966664774136267395915539,  0.9602898564975362316835609};
inline constexpr std::array<double, 8> kGL8Weights = {
    0.1012285362903762591525314, 0.2223810344533744705443560, 0.3137066458778872873379622,
    0.3626837833783619829651504, 0.3626837833783619829651504, 0.3137066458778872873379622,
    0.2223810344533744705443560, 0.1012285362903762591525314};

/// 5-point Gauss-Legendre rule on [-1, 1].
inline constexpr std::array<double, 5> kGL5Nodes = {
    -0.9061798459386639927976269, -0.5384693101056830910363144, 0.0,
    0.5384693101056830910363144, 0.9061798459386639927976269};
inline constexpr std::array<double, 5> kGL5Weights = {
    0.2369268850561890875142640, 0.4786286704993664680412915, 0.5688888888888888888888889,
    0.4786286704993664680412915, 0.2369268850561890875142640};

/// Integral of f over [a, b] with one 8-point Gauss-Legendre panel.
template <class F>
double gauss_legendre8(F&& f, double a, double b) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double s = 0.0;
  for (std::size_t k = 0; k < kGL8Nodes.size(); ++k) s += kGL8Weights[k] * f(mid + half * kGL8Nodes[k]);
  return half * s;
}

/// Composite 5-point Gauss-Legendre over [a, b] with panels no wider than max_panel.
template <class F>
double composite_gauss5(F&& f, double a, double b, double max_panel) {
  if (!(b > a)) return 0.0;
  auto n = static_cast<std::size_t>((b - a) / max_panel) + 1;
  const double h = (b - a) / static_cast<double>(n);
  double total = 0.0;
  for (std::size_t p = 0; p < n; ++p) {
    const double lo = a + h * static_cast<double>(p);
    const double mid = lo + 0.5 * h;
    double s = 0.0;
    for (std::size_t k = 0; k < kGL5Nodes.size(); ++k) s += kGL5Weights[k] * f(mid + 0.5 * h * kGL5Nodes[k]);
    total += 0.5 * h * s;
  }
  return total;
}

/// Pairwise (cascade) summation with a fixed split order; bit-reproducible.
double pairwise_sum(std::span<const double> v) noexcept;

struct LineFit {
  double slope;
  double intercept;
  double r_squared;
};

/// Ordinary least squares y = intercept + slope * x. Requires >= 2 points.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace relaxlab::numerics
