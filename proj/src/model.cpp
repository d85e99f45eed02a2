#include "cweno/model.hpp"

#include <algorithm>
#include <cmath>

namespace cweno {

NonlocalModel traffic_model(int kernel_id, double eta) {
  if (!(eta > 0.0)) throw RejectedInput("traffic_model: eta must be positive");
  NonlocalModel m;
  m.kind = ModelKind::traffic;
  m.eta = eta;
  m.support = KernelSupport::downstream;
  m.g = [](double r) { return r; };
  m.dg = [](double) { return 1.0; };
  m.v = [](double r) { return 1.0 - r; };
  m.dv = [](double) { return -1.0; };
  switch (kernel_id) {
    case 1:
      m.kernel = [eta](double x) { return (x >= 0.0 && x <= eta) ? 1.0 / eta : 0.0; };
      m.w_at_zero = 1.0 / eta;
      break;
    case 2:
      m.kernel = [eta](double x) { return (x >= 0.0 && x <= eta) ? 2.0 * (eta - x) / (eta * eta) : 0.0; };
      m.w_at_zero = 2.0 / eta;
      break;
    case 3:
      m.kernel = [eta](double x) {
        return (x >= 0.0 && x <= eta) ? 3.0 * (eta * eta - x * x) / (2.0 * eta * eta * eta) : 0.0;
      };
      m.w_at_zero = 3.0 / (2.0 * eta);
      break;
    default:
      throw RejectedInput("traffic_model: unknown kernel " + std::to_string(kernel_id));
  }
  m.name = "traffic-w" + std::to_string(kernel_id);
  m.max_principle_assumptions = true;
  return m;
}

NonlocalModel sedimentation_model(double eta) {
  if (!(eta > 0.0)) throw RejectedInput("sedimentation_model: eta must be positive");
  NonlocalModel m;
  m.kind = ModelKind::sedimentation;
  m.name = "sedimentation";
  m.eta = eta;
  m.support = KernelSupport::symmetric;
  m.g = [](double r) { return r * (1.0 - r); };
  m.dg = [](double r) { return 1.0 - 2.0 * r; };
  m.v = [](double r) { return (1.0 - r) * (1.0 - r) * (1.0 - r); };
  m.dv = [](double r) { return -3.0 * (1.0 - r) * (1.0 - r); };
  m.kernel = [eta](double x) {
    const double y = x / eta;
    return std::abs(y) <= 2.0 ? 0.375 * (1.0 - 0.25 * y * y) / eta : 0.0;
  };
  m.w_at_zero = 0.375 / eta;
  m.norm_v = 1.0;
  m.norm_dv = 3.0;
  m.norm_g = 0.25;
  m.norm_dg = 1.0;
  // g is not monotone and the kernel is not non-increasing
  m.max_principle_assumptions = false;
  return m;
}

int KernelSampleTable::min_offset() const {
  int lo = samples.empty() ? 0 : samples.front().cell_offset;
  for (const auto& s : samples) lo = std::min(lo, s.cell_offset);
  return lo;
}

int KernelSampleTable::max_offset() const {
  int hi = samples.empty() ? 0 : samples.front().cell_offset;
  for (const auto& s : samples) hi = std::max(hi, s.cell_offset);
  return hi;
}

double KernelSampleTable::mass() const {
  double acc = 0.0;
  for (const auto& s : samples) acc += s.coefficient();
  return acc;
}

namespace {

int point_index(std::vector<double>& points, double y) {
  for (std::size_t i = 0; i < points.size(); ++i)
    if (points[i] == y) return static_cast<int>(i);
  points.push_back(y);
  return static_cast<int>(points.size()) - 1;
}

}  // namespace

KernelSampleTable kernel_samples(const NonlocalModel& model, double h, const QuadratureRule<double>& rule) {
  if (!(h > 0.0)) throw RejectedInput("kernel_samples: h must be positive");
  const double reach = model.reach();
  if (h > reach) throw RejectedInput("kernel_samples: h exceeds the kernel support");

  KernelSampleTable t;
  t.h = h;
  // guard against eta/h landing a hair below a whole number
  t.n_full = static_cast<int>(std::floor(reach / h + 1e-9));
  t.fraction = reach - t.n_full * h;
  if (t.fraction <= 1e-9 * h) t.fraction = 0.0;
  for (Eigen::Index nu = 0; nu < rule.size(); ++nu) t.points.push_back(rule.nodes(nu));

  auto add = [&](int k, double y, double weight) {
    KernelSample s;
    s.cell_offset = k + 1;
    s.y = y;
    s.point = point_index(t.points, y);
    s.weight = weight;
    s.raw = model.kernel((k + y) * h);
    t.samples.push_back(s);
  };

  const int k_first = model.support == KernelSupport::downstream ? 0 : -t.n_full;
  for (int k = k_first; k < t.n_full; ++k)
    for (Eigen::Index nu = 0; nu < rule.size(); ++nu) add(k, rule.nodes(nu), h * rule.weights(nu));

  if (t.fraction > 0.0) {
    const double f = t.fraction / h;
    // [N h, reach] lies at the start of cell j + N + 1
    for (Eigen::Index nu = 0; nu < rule.size(); ++nu)
      add(t.n_full, f * rule.nodes(nu), t.fraction * rule.weights(nu));
    // [-reach, -N h] lies at the end of cell j - N
    if (model.support == KernelSupport::symmetric)
      for (Eigen::Index nu = 0; nu < rule.size(); ++nu)
        add(-t.n_full - 1, 1.0 - f + f * rule.nodes(nu), t.fraction * rule.weights(nu));
  }

  t.raw_mass = 0.0;
  for (const auto& s : t.samples) t.raw_mass += s.weight * s.raw;
  if (!(t.raw_mass > 0.0)) throw InvariantViolation("kernel_samples: kernel has no discrete mass");
  for (auto& s : t.samples) s.normalized = s.raw / t.raw_mass;
  return t;
}

}  // namespace cweno
