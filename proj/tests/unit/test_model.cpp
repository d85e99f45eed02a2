#include <doctest.h>

#include <cmath>

#include "cweno/model.hpp"

using namespace cweno;

TEST_CASE("traffic kernels") {
  const auto m3 = traffic_model(3, 0.1);
  CHECK(m3.w_at_zero == doctest::Approx(15.0));
  CHECK(m3.kernel(0.0) == doctest::Approx(15.0));
  const auto m2 = traffic_model(2, 0.2);
  CHECK(m2.w_at_zero == doctest::Approx(10.0));
  CHECK(m2.kernel(0.2) == doctest::Approx(0.0));
  const auto m1 = traffic_model(1, 0.3);
  CHECK(m1.kernel(0.0) == m1.kernel(0.25));
  CHECK(m1.g(0.3) == 0.3);
  CHECK(m1.v(0.3) == doctest::Approx(0.7));
  CHECK(m1.max_principle_assumptions);
  CHECK(m1.norm_v == 1.0);
  CHECK(m1.norm_dg == 1.0);
  CHECK_THROWS_AS(traffic_model(4, 0.1), RejectedInput);
  CHECK_THROWS_AS(traffic_model(1, 0.0), RejectedInput);
  // every kernel has unit integral over [0, eta]
  for (int k = 1; k <= 3; ++k) {
    const auto m = traffic_model(k, 0.2);
    double s = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) s += m.kernel((i + 0.5) * 0.2 / n) * 0.2 / n;
    CHECK(s == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("sedimentation model") {
  const auto m = sedimentation_model(0.05);
  CHECK(m.w_at_zero == doctest::Approx(7.5));
  CHECK(m.kernel(0.1) == doctest::Approx(0.0));
  CHECK(m.kernel(-0.1) == doctest::Approx(0.0));
  CHECK(m.kernel(0.11) == 0.0);
  CHECK(m.kernel(0.03) == doctest::Approx(m.kernel(-0.03)));
  CHECK_FALSE(m.max_principle_assumptions);
  CHECK(m.norm_dv == 3.0);
  CHECK(m.norm_g == 0.25);
  CHECK(m.support == KernelSupport::symmetric);
  // the truncated parabola integrates to one; R = 4 at h = eta/4
  const auto t = kernel_samples(m, 0.05 / 4, radau_rule(4));
  CHECK(std::abs(t.raw_mass - 1.0) < 1e-6);
}

TEST_CASE("kernel samples") {
  SUBCASE("constant kernel, whole number of cells") {
    const auto t = kernel_samples(traffic_model(1, 0.2), 0.2 / 8, radau_rule(3));
    CHECK(t.n_full == 8);
    CHECK(t.fraction == 0.0);
    CHECK(t.samples.size() == 24u);
    for (const auto& s : t.samples) CHECK(std::abs(s.normalized - s.raw) < 1e-14);
    CHECK(t.min_offset() == 1);
    CHECK(t.max_offset() == 8);
  }
  SUBCASE("parabolic kernel is integrated exactly by two nodes") {
    const auto t = kernel_samples(traffic_model(3, 0.1), 1.0 / 800.0, radau_rule(2));
    CHECK(t.n_full == 80);
    CHECK(std::abs(t.raw_mass - 1.0) < 1e-10);
  }
  SUBCASE("fractional subinterval") {
    const auto whole = kernel_samples(traffic_model(2, 0.2), 1.0 / 30.0, radau_rule(2));
    CHECK(whole.n_full == 6);
    CHECK(whole.fraction == 0.0);
    CHECK(std::abs(whole.mass() - 1.0) < 1e-15);
    const auto part = kernel_samples(traffic_model(2, 0.2), 0.03, radau_rule(2));
    CHECK(part.n_full == 6);
    CHECK(part.fraction == doctest::Approx(0.02));
    CHECK(part.max_offset() == 7);
    CHECK(std::abs(part.mass() - 1.0) < 1e-15);
    // the linear kernel is exact for the two-node rule on every piece
    CHECK(std::abs(part.raw_mass - 1.0) < 1e-14);
    // partial cell evaluated on [0, 2/3]
    double ymax = 0.0;
    for (const auto& s : part.samples)
      if (s.cell_offset == 7) ymax = std::max(ymax, s.y);
    CHECK(ymax == doctest::Approx(2.0 / 3.0));
  }
  SUBCASE("symmetric kernel with fractions on both sides") {
    const auto m = sedimentation_model(0.05);
    const auto t = kernel_samples(m, 0.03, radau_rule(3));
    CHECK(t.n_full == 3);
    CHECK(t.fraction == doctest::Approx(0.01));
    CHECK(t.min_offset() == -3);
    CHECK(t.max_offset() == 4);
    CHECK(std::abs(t.mass() - 1.0) < 1e-15);
    // the parabola has degree two: R = 3 is exact on each piece
    CHECK(std::abs(t.raw_mass - 1.0) < 1e-14);
  }
  SUBCASE("traffic samples do not increase with distance") {
    for (int k = 1; k <= 3; ++k) {
      const auto t = kernel_samples(traffic_model(k, 0.2), 0.03, radau_rule(4));
      for (std::size_t i = 1; i < t.samples.size(); ++i) {
        const auto& a = t.samples[i - 1];
        const auto& b = t.samples[i];
        CHECK((a.cell_offset - 1 + a.y) < (b.cell_offset - 1 + b.y));
        CHECK(b.normalized <= a.normalized);
        CHECK(b.normalized >= 0.0);
      }
    }
  }
  CHECK_THROWS_AS(kernel_samples(traffic_model(1, 0.1), 0.2, radau_rule(2)), RejectedInput);
}
