#include <doctest.h>

#include <cmath>

#include "cweno/harness.hpp"

using namespace cweno;
using Vec = Eigen::VectorXd;

TEST_CASE("smoothstep17 against the endpoint-condition system") {
  // S(0) = 0 and S^(k)(0) = 0 for k = 1..8 leave S = x^9 sum_{i<9} c_i x^i; the
  // conditions S(1) = 1, S^(k)(1) = 0 divided by k! give sum_i C(i + 9, k) c_i = [k == 0]
  using M9 = Eigen::Matrix<long double, 9, 9>;
  using V9 = Eigen::Matrix<long double, 9, 1>;
  M9 B;
  V9 r = V9::Zero();
  r(0) = 1;
  for (int k = 0; k < 9; ++k)
    for (int i = 9; i < 18; ++i) {
      long double b = 1;
      for (int q = 0; q < k; ++q) b = b * (i - q) / (q + 1);
      B(k, i - 9) = b;
    }
  const V9 c = B.fullPivLu().solve(r);
  auto oracle = [&c](double x) {
    long double p = 0;
    for (int i = 8; i >= 0; --i) p = p * x + c(i);
    return static_cast<double>(p * std::pow(static_cast<long double>(x), 9));
  };
  for (double x : {0.0, 0.1, 0.37, 0.5, 0.81, 1.0}) CHECK(std::abs(smoothstep17(x) - oracle(x)) < 1e-10);
  // first and second derivatives vanish at the ends
  const double d = 1e-3;
  for (double x0 : {0.0, 1.0}) {
    const double s = x0 == 0.0 ? 1.0 : -1.0;
    const double f0 = smoothstep17(x0), f1 = smoothstep17(x0 + s * d), f2 = smoothstep17(x0 + 2 * s * d);
    CHECK(std::abs((f1 - f0) / d) < 1e-10);
    CHECK(std::abs((f2 - 2 * f1 + f0) / (d * d)) < 1e-10);
  }
  CHECK(smoothstep17(0.0) == 0.0);
  CHECK(smoothstep17(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(smoothstep17(0.5) == doctest::Approx(0.5).epsilon(1e-14));
  for (double x : {0.05, 0.3, 0.77}) CHECK(smoothstep17(x) + smoothstep17(1.0 - x) == doctest::Approx(1.0));
}

TEST_CASE("max-principle profile") {
  CHECK(initial_density(Problem::max_principle, 0.05) == 0.0);
  CHECK(initial_density(Problem::max_principle, 0.5) == 1.0);
  CHECK(initial_density(Problem::max_principle, 0.25) == doctest::Approx(0.5));
  CHECK(initial_density(Problem::max_principle, 0.75) == doctest::Approx(0.5));
  CHECK(initial_density(Problem::max_principle, 0.95) == 0.0);
}

TEST_CASE("error norms") {
  Vec fine(8);
  fine << 1.0, 3.0, 2.0, 2.0, 0.0, 4.0, 5.0, 5.0;
  const Vec coarse = restrict_averages(fine, 2);
  CHECK(coarse == Vec((Vec(4) << 2.0, 2.0, 2.0, 5.0).finished()));
  CHECK(coarse.mean() == doctest::Approx(fine.mean()));
  auto [l1, linf] = error_norms(coarse, fine, 0.25);
  CHECK(l1 == 0.0);
  CHECK(linf == 0.0);
  Vec off = coarse;
  off(2) += 0.3;
  std::tie(l1, linf) = error_norms(off, fine, 0.25);
  CHECK(l1 == doctest::Approx(0.25 * 0.3));
  CHECK(linf == doctest::Approx(0.3));
  std::tie(l1, linf) = error_norms(fine, fine, 0.125);
  CHECK(l1 == 0.0);
  CHECK_THROWS_AS(error_norms(Vec::Zero(3), fine, 0.1), RejectedInput);
  CHECK_THROWS_AS(error_norms(Vec::Zero(3), Vec::Zero(9), 0.1), RejectedInput);
}

TEST_CASE("table formatting") {
  std::vector<ErrorReport> rows(3);
  for (int i = 0; i < 3; ++i) {
    rows[i].n = i;
    rows[i].l1 = std::ldexp(1.0, -i);
    rows[i].linf = std::ldexp(1.0, -i);
    if (i > 0) {
      rows[i].l1_rate = std::log2(rows[i - 1].l1 / rows[i].l1);
      rows[i].linf_rate = std::log2(rows[i - 1].linf / rows[i].linf);
    }
  }
  const std::string csv = table_csv(rows);
  CHECK(csv ==
        "n,L1,L1_rate,Linf,Linf_rate\n"
        "0,1.000000e+00,,1.000000e+00,\n"
        "1,5.000000e-01,1.00,5.000000e-01,1.00\n"
        "2,2.500000e-01,1.00,2.500000e-01,1.00\n");
}

TEST_CASE("config validation") {
  RunConfig c = preset(Problem::smooth_traffic);
  c.scheme = 4;
  CHECK_THROWS_AS(c.validate(), RejectedInput);
  c = preset(Problem::smooth_traffic);
  c.h = 0.03;
  CHECK_THROWS_AS(c.validate(), RejectedInput);
  c.h = 0.025;
  CHECK_NOTHROW(c.validate());
  c.T = -1.0;
  CHECK_THROWS_AS(c.validate(), RejectedInput);
  CHECK(make_grid(preset(Problem::smooth_traffic)).n_cells == 40);
  CHECK(resolve_integrator(preset(Problem::max_principle)) == Method::tvdrk3);
  RunConfig mp = preset(Problem::max_principle);
  mp.scheme = 7;
  CHECK(resolve_integrator(mp) == Method::tsrk7);
  RunConfig st = preset(Problem::smooth_traffic);
  st.scheme = 5;
  CHECK(resolve_integrator(st) == Method::rk5);
  CHECK(parse_problem(problem_name(Problem::sedimentation)) == Problem::sedimentation);
}

TEST_CASE("zero sedimentation data stays zero") {
  const RunResult r = run_experiment(preset(Problem::zero));
  CHECK(r.final.values.isZero());
}

TEST_CASE("smooth traffic run, coarse CWENO3") {
  const RunResult r = run_experiment(preset(Problem::smooth_traffic));
  CHECK(r.grid.n_cells == 40);
  CHECK(r.final.t == doctest::Approx(0.15));
  CHECK(r.final.values.minCoeff() > 0.1 - 1e-3);
  CHECK(r.final.values.maxCoeff() < 0.9 + 1e-3);
  CHECK(std::abs(r.final.values.sum() - r.initial.values.sum()) < 1e-12 * r.initial.values.sum());
  // identical configurations give identical tables
  const Vec ref = reference_run(preset(Problem::smooth_traffic), 2).final.values;
  const std::string a = table_csv(convergence_table(preset(Problem::smooth_traffic), 0, 1, ref));
  const std::string b = table_csv(convergence_table(preset(Problem::smooth_traffic), 0, 1, ref));
  CHECK(a == b);
}

TEST_CASE("audit") {
  std::vector<StepRecord> hist{{0.0, 0.3, 0.3}, {0.1, 0.3, 0.3}};
  AuditReport a = maxprinciple_audit(hist, {0.3, 0.3});
  CHECK(a.ok());
  CHECK(a.global_min == 0.3);
  CHECK(a.global_max == 0.3);
  hist.push_back({0.2, -1e-6, 1.0});
  a = maxprinciple_audit(hist, {0.0, 1.0});
  CHECK_FALSE(a.ok());
  CHECK(a.violations == 1);
  CHECK(*a.first_violation_time == doctest::Approx(0.2));
  CHECK(audit_text(a).find("VIOLATED") != std::string::npos);
  CHECK_THROWS_AS(maxprinciple_audit({}, {0.0, 1.0}), RejectedInput);
}

TEST_CASE("constant initial data keeps min = max") {
  RunConfig c = preset(Problem::max_principle);
  c.T = 0.005;
  // max-principle setup with a flat profile: use the explicit bounds hook
  c.bounds = BoundPair{0.0, 1.0};
  const RunResult r = run_experiment(c);
  const AuditReport a = maxprinciple_audit(r.history, r.bounds);
  CHECK(a.ok());
}

TEST_CASE("non-smooth traffic keeps both jumps within a few cells") {
  RunConfig c = preset(Problem::nonsmooth);
  c.scheme = 7;
  const RunResult r = run_experiment(c);
  const Vec& u = r.final.values;
  // largest change over `width` cells with the left cell centre in [a, b]
  auto spread = [&](double a, double b, Eigen::Index width) {
    double best = 0.0;
    for (Eigen::Index j = 0; j + width < r.grid.n_cells; ++j) {
      const double x = r.grid.center(j);
      if (x >= a && x <= b) best = std::max(best, std::abs(u(j + width) - u(j)));
    }
    return best;
  };
  for (auto [a, b] : {std::pair{-0.6, -0.4}, std::pair{0.4, 0.6}}) {
    CAPTURE(a);
    const double narrow = spread(a, b, 6), wide = spread(a, b, 16);
    CHECK(wide > 0.3);
    CHECK(narrow >= 0.8 * wide);
  }
  CHECK(u.minCoeff() > 0.05 - 1e-3);
  CHECK(u.maxCoeff() < 0.95 + 1e-3);
}

TEST_CASE("solution files round-trip") {
  const Grid grid = uniform_grid(0.0, 1.0, 4);
  Vec v(4);
  v << 0.1, 0.2, 1.0 / 3.0, 0.4;
  const std::string path = "roundtrip_test.dat";
  write_file_atomic(path, solution_dat(grid, v));
  CHECK(read_solution_dat(path) == v);
  std::remove(path.c_str());
}
