#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cweno/errors.hpp"
#include "cweno/quadrature.hpp"

namespace cweno {

enum class ModelKind { traffic, sedimentation };

/// Where the kernel sits relative to the interface: [0, eta] downstream, or
/// [-2 eta, 2 eta] around it.
enum class KernelSupport { downstream, symmetric };

/// d/dt rho + d/dx (g(rho) v(rho * w_eta)) = 0 with its constants for the
/// step-size bounds.
struct NonlocalModel {
  using Fn = std::function<double(double)>;

  ModelKind kind = ModelKind::traffic;
  std::string name;
  Fn g, v, dg, dv;
  Fn kernel;
  double eta = 0.0;
  KernelSupport support = KernelSupport::downstream;
  double rho_max = 1.0;
  // sup-norms over [0, rho_max]
  double norm_v = 1.0, norm_dv = 1.0, norm_g = 1.0, norm_dg = 1.0;
  double w_at_zero = 0.0;
  /// g' >= 0, v' <= 0, monotone kernel: the maximum-principle results apply.
  bool max_principle_assumptions = false;

  /// Extent of the kernel on one side of the interface (eta or 2 eta).
  double reach() const { return support == KernelSupport::downstream ? eta : 2.0 * eta; }
};

/// Kernel 1: 1/eta, kernel 2: 2(eta - x)/eta^2, kernel 3: 3(eta^2 - x^2)/(2 eta^3), on [0, eta].
NonlocalModel traffic_model(int kernel_id, double eta);

/// g = rho(1 - rho), v = (1 - rho)^3, w = K(x/eta)/eta with K(y) = 3/8 (1 - y^2/4) on |y| <= 2.
NonlocalModel sedimentation_model(double eta);

/// One kernel sample: cell j + cell_offset is evaluated at the cell-relative
/// position y for the velocity at interface j+1/2.
struct KernelSample {
  int cell_offset = 0;
  int point = 0;        // index into KernelSampleTable::points
  double y = 0.0;
  double weight = 0.0;  // h gamma_nu, or delta gamma_nu on a fractional subinterval
  double raw = 0.0;     // w_eta at the sample position
  double normalized = 0.0;

  double coefficient() const { return weight * normalized; }
};

struct KernelSampleTable {
  double h = 0.0;
  int n_full = 0;          // N
  double fraction = 0.0;   // delta, length of each boundary subinterval (0 if eta/h is whole)
  double raw_mass = 0.0;   // sum weight * raw before renormalisation
  std::vector<KernelSample> samples;
  /// Distinct cell-relative evaluation positions, quadrature nodes first.
  std::vector<double> points;

  int min_offset() const;
  int max_offset() const;
  double mass() const;
};

/// Samples w_eta^{nu,k} with the fractional subintervals and the
/// renormalisation to unit discrete mass.
KernelSampleTable kernel_samples(const NonlocalModel& model, double h, const QuadratureRule<double>& rule);

}  // namespace cweno
