#include <gtest/gtest.h>

#include <cstdlib>
#include <cstring>
#include <random>
#include <vector>

#include "relaxlab/kernels.hpp"
#include "relaxlab/wave_model.hpp"

using namespace relaxlab;

namespace {

const KernelTable* avx2_or_skip() {
  if (avx2_kernels() == nullptr || !cpu_has_avx2()) return nullptr;
  return avx2_kernels();
}

std::vector<double> random_field(std::size_t n, std::uint64_t seed, double lo, double hi) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  // flat stretches exercise the minmod zero branch
  for (std::size_t i = 0; i + 3 < n; i += 17) v[i + 1] = v[i + 2] = v[i];
  return v;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

class ScopedEnv {
 public:
  ScopedEnv(const char* name, const char* value) : name_(name) {
    if (const char* old = std::getenv(name)) {
      had_ = true;
      old_ = old;
    }
    if (value) setenv(name, value, 1); else unsetenv(name);
  }
  ~ScopedEnv() {
    if (had_) setenv(name_, old_.c_str(), 1); else unsetenv(name_);
  }

 private:
  const char* name_;
  bool had_ = false;
  std::string old_;
};

}  // namespace

TEST(Kernels, ChoiceNames) {
  for (auto c : {KernelChoice::automatic, KernelChoice::scalar, KernelChoice::avx2})
    EXPECT_EQ(parse_kernel_choice(to_string(c)), c);
  EXPECT_THROW(parse_kernel_choice("sse"), std::invalid_argument);
  EXPECT_STREQ(scalar_kernels().name, "scalar");
}

TEST(Kernels, ScalarMaxSpeedUsesSpectralRadius) {
  const auto u = random_field(37, 1, -1.2, 1.2);
  const FluxParams p{0.75, 1000.0};
  double want = 0.0;
  for (double v : u) want = std::max(want, spectral_radius(v, p.inv_tau, p.sigma));
  EXPECT_EQ(scalar_kernels().max_speed(u.data(), u.size(), p), want);
  const double one = 0.0;
  EXPECT_EQ(scalar_kernels().max_speed(&one, 1, FluxParams{0.0, 1.0}), 1.0);
}

TEST(Kernels, Avx2MatchesScalarBitwise) {
  const KernelTable* v = avx2_or_skip();
  if (!v) GTEST_SKIP() << "AVX2 not available";
  const KernelTable& s = scalar_kernels();
  for (std::size_t n : {5u, 6u, 7u, 8u, 9u, 31u, 64u, 1001u}) {
    const auto u = random_field(n, 10 + n, -1.2, 1.0);
    const auto q = random_field(n, 20 + n, -0.3, 0.3);
    const FluxParams p{0.75, 1000.0};

    std::vector<double> su_s(n, 0.0), su_v(n, 0.0), sq_s(n, 0.0), sq_v(n, 0.0);
    s.slopes(u.data(), su_s.data(), n);
    v->slopes(u.data(), su_v.data(), n);
    s.slopes(q.data(), sq_s.data(), n);
    v->slopes(q.data(), sq_v.data(), n);
    EXPECT_TRUE(bitwise_equal(su_s, su_v)) << "slopes n=" << n;
    EXPECT_TRUE(bitwise_equal(sq_s, sq_v));

    const std::size_t faces = n - 3;
    std::vector<double> fu_s(faces), fu_v(faces), fq_s(faces), fq_v(faces);
    s.fluxes(u.data(), q.data(), su_s.data(), sq_s.data(), 1, faces, p, fu_s.data(), fq_s.data());
    v->fluxes(u.data(), q.data(), su_s.data(), sq_s.data(), 1, faces, p, fu_v.data(), fq_v.data());
    EXPECT_TRUE(bitwise_equal(fu_s, fu_v)) << "fluxes n=" << n;
    EXPECT_TRUE(bitwise_equal(fq_s, fq_v));

    const std::size_t m = faces - 1;
    std::vector<double> r_s(m), r_v(m);
    s.divergence(fu_s.data(), r_s.data(), m, 20.0);
    v->divergence(fu_s.data(), r_v.data(), m, 20.0);
    EXPECT_TRUE(bitwise_equal(r_s, r_v)) << "divergence n=" << n;

    std::vector<double> u1_s(n), u1_v(n), q1_s(n), q1_v(n);
    const auto ru = random_field(n, 30 + n, -1.0, 1.0), rq = random_field(n, 40 + n, -50.0, 50.0);
    s.stage1(u.data(), q.data(), ru.data(), rq.data(), u1_s.data(), q1_s.data(), n, 7e-4, 1.0 / 1.7);
    v->stage1(u.data(), q.data(), ru.data(), rq.data(), u1_v.data(), q1_v.data(), n, 7e-4, 1.0 / 1.7);
    EXPECT_TRUE(bitwise_equal(u1_s, u1_v)) << "stage1 n=" << n;
    EXPECT_TRUE(bitwise_equal(q1_s, q1_v));

    auto u2_s = u, q2_s = q, u2_v = u, q2_v = q;
    s.stage2(u2_s.data(), q2_s.data(), u1_s.data(), q1_s.data(), ru.data(), rq.data(), n, 7e-4, 1.0 / 1.35);
    v->stage2(u2_v.data(), q2_v.data(), u1_s.data(), q1_s.data(), ru.data(), rq.data(), n, 7e-4, 1.0 / 1.35);
    EXPECT_TRUE(bitwise_equal(u2_s, u2_v)) << "stage2 n=" << n;
    EXPECT_TRUE(bitwise_equal(q2_s, q2_v));

    EXPECT_EQ(s.max_speed(u.data(), n, p), v->max_speed(u.data(), n, p)) << "max_speed n=" << n;
  }
}

TEST(Kernels, EnvironmentSelectsImplementation) {
  {
    ScopedEnv env("RELAXLAB_KERNEL", "scalar");
    EXPECT_STREQ(select_kernels(KernelChoice::automatic).name, "scalar");
  }
  {
    ScopedEnv env("RELAXLAB_KERNEL", "bogus");
    EXPECT_THROW(select_kernels(KernelChoice::automatic), std::invalid_argument);
    EXPECT_STREQ(select_kernels(KernelChoice::scalar).name, "scalar");
  }
  if (avx2_or_skip()) {
    ScopedEnv env("RELAXLAB_KERNEL", "avx2");
    EXPECT_STREQ(select_kernels(KernelChoice::automatic).name, "avx2");
    ScopedEnv none("RELAXLAB_KERNEL", nullptr);
    EXPECT_STREQ(select_kernels(KernelChoice::automatic).name, "avx2");
  } else {
    EXPECT_THROW(select_kernels(KernelChoice::avx2), std::runtime_error);
  }
}
