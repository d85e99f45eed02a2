#include "cweno/timestep.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>

#include "cweno/errors.hpp"
#include "tableaux_data.hpp"

namespace cweno {

std::string fnv1a64(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

const std::array<std::pair<Method, const char*>, 7> kNames{{{Method::euler, "euler"},
                                                            {Method::tvdrk3, "tvdrk3"},
                                                            {Method::rk5, "rk5"},
                                                            {Method::rk7, "rk7"},
                                                            {Method::ssprk54, "ssprk54"},
                                                            {Method::tsrk5, "tsrk5"},
                                                            {Method::tsrk7, "tsrk7"}}};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

Method parse_method(const std::string& name) {
  for (const auto& [id, n] : kNames)
    if (name == n) return id;
  throw RejectedInput("unknown integrator '" + name + "'");
}

std::string method_name(Method id) {
  for (const auto& [m, n] : kNames)
    if (m == id) return n;
  return "?";
}

IntegratorSpec parse_tableau(const std::string& text) {
  IntegratorSpec spec;
  std::istringstream in(text);
  std::string line, body, checksum, kind;
  struct Entry {
    bool is_alpha;
    int i, j;
    double value;
  };
  std::vector<Entry> entries;
  int max_index = 0;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "checksum") {
      std::string algo;
      ls >> algo >> checksum;
      if (algo != "fnv1a64") throw RejectedInput("tableau: unsupported checksum " + algo);
      continue;
    }
    if (!body.empty()) body += '\n';
    body += line;
    if (key == "name") {
      ls >> spec.name;
    } else if (key == "kind") {
      ls >> kind;
    } else if (key == "order") {
      ls >> spec.order;
    } else if (key == "stages") {
      ls >> spec.stages;
    } else if (key == "ssp_radius") {
      ls >> spec.ssp_coefficient;
    } else if (key == "cfl_constant") {
      ls >> spec.cfl_constant;
    } else if (key == "alpha" || key == "beta") {
      Entry e{key == "alpha", 0, 0, 0.0};
      ls >> e.i >> e.j >> e.value;
      if (e.j < 0 || e.j >= e.i) throw RejectedInput("tableau: entry (" + line + ") is not explicit");
      entries.push_back(e);
      max_index = std::max(max_index, e.i);
    } else {
      throw RejectedInput("tableau: unknown key '" + key + "'");
    }
    if (ls.fail()) throw RejectedInput("tableau: malformed line '" + line + "'");
  }
  if (checksum.empty()) throw RejectedInput("tableau " + spec.name + ": missing checksum");
  if (fnv1a64(body) != checksum) throw RejectedInput("tableau " + spec.name + ": checksum mismatch");
  if (kind == "one-step") {
    spec.inputs = 1;
  } else if (kind == "two-step") {
    spec.inputs = 2;
  } else {
    throw RejectedInput("tableau " + spec.name + ": unknown kind '" + kind + "'");
  }
  const int rows = spec.stages + (spec.inputs == 1 ? 1 : 2);
  if (max_index != rows - 1) throw RejectedInput("tableau " + spec.name + ": stage count does not match entries");
  spec.alpha = Eigen::MatrixXd::Zero(rows, rows);
  spec.beta = Eigen::MatrixXd::Zero(rows, rows);
  for (const Entry& e : entries) (e.is_alpha ? spec.alpha : spec.beta)(e.i, e.j) = e.value;
  for (int i = spec.inputs; i < rows; ++i) {
    if (std::abs(spec.alpha.row(i).sum() - 1.0) > 1e-14)
      throw RejectedInput("tableau " + spec.name + ": row " + std::to_string(i) + " is not consistent");
  }
  if (spec.is_ssp() && (spec.alpha.minCoeff() < 0.0 || spec.beta.minCoeff() < 0.0))
    throw RejectedInput("tableau " + spec.name + ": SSP form with negative coefficients");
  spec.id = parse_method(spec.name);
  return spec;
}

const IntegratorSpec& integrator(Method id) {
  static const std::map<Method, IntegratorSpec> specs = [] {
    std::map<Method, IntegratorSpec> out;
    for (const auto& [name, text] : data::tableaux) {
      IntegratorSpec s = parse_tableau(std::string(text));
      out.emplace(s.id, std::move(s));
    }
    return out;
  }();
  return specs.at(id);
}

namespace {

// Runs the stage rows from the given inputs; F of an input may be supplied.
Eigen::VectorXd run_rows(const IntegratorSpec& spec, std::vector<Eigen::VectorXd> w,
                         std::vector<std::optional<Eigen::VectorXd>> F, double tau, const RhsFn& f) {
  const Eigen::Index rows = spec.rows();
  w.resize(rows);
  F.resize(rows);
  // rows sum to one, so combining increments about the last input is the
  // same map and leaves constant states exactly unchanged
  const Eigen::Index ref = spec.inputs - 1;
  for (Eigen::Index i = spec.inputs; i < rows; ++i) {
    Eigen::VectorXd acc = w[ref];
    for (Eigen::Index j = 0; j < i; ++j) {
      if (spec.alpha(i, j) != 0.0 && j != ref) acc += spec.alpha(i, j) * (w[j] - w[ref]);
      if (spec.beta(i, j) != 0.0) {
        if (!F[j]) F[j] = f(w[j]);
        acc += (tau * spec.beta(i, j)) * *F[j];
      }
    }
    w[i] = std::move(acc);
  }
  return w[rows - 1];
}

}  // namespace

CellAverages euler_step(const CellAverages& u, double tau, const RhsFn& f) {
  if (!(tau > 0.0)) throw RejectedInput("euler_step: tau must be positive");
  return {u.values + tau * f(u.values), u.t + tau};
}

CellAverages rk_step(const CellAverages& u, double tau, const RhsFn& f, const IntegratorSpec& spec) {
  if (spec.two_step()) throw RejectedInput("rk_step: " + spec.name + " is a two-step method");
  if (!(tau > 0.0)) throw RejectedInput("rk_step: tau must be positive");
  return {run_rows(spec, {u.values}, {}, tau, f), u.t + tau};
}

CellAverages tsrk_step(const CellAverages& prev, const CellAverages& curr, double tau, const RhsFn& f,
                       const IntegratorSpec& spec, const Eigen::VectorXd* f_prev, Eigen::VectorXd* f_curr_out) {
  if (!spec.two_step()) throw RejectedInput("tsrk_step: " + spec.name + " is a one-step method");
  if (!(tau > 0.0)) throw RejectedInput("tsrk_step: tau must be positive");
  if (std::abs((curr.t - prev.t) - tau) > 1e-6 * tau)
    throw RejectedInput("tsrk_step: states are not one step apart");
  std::vector<std::optional<Eigen::VectorXd>> F(2);
  if (f_prev) F[0] = *f_prev;
  F[1] = f(curr.values);
  if (f_curr_out) *f_curr_out = *F[1];
  return {run_rows(spec, {prev.values, curr.values}, std::move(F), tau, f), curr.t + tau};
}

CellAverages bootstrap_first_step(const CellAverages& u0, double tau, const RhsFn& f, double sub_tau) {
  if (!(tau > 0.0 && sub_tau > 0.0)) throw RejectedInput("bootstrap_first_step: steps must be positive");
  if (sub_tau > tau * (1.0 + 1e-12)) throw RejectedInput("bootstrap_first_step: sub_tau exceeds tau");
  const long m = std::max(1L, static_cast<long>(std::ceil(tau / sub_tau - 1e-9)));
  const double dt = tau / static_cast<double>(m);
  const IntegratorSpec& spec = integrator(Method::ssprk54);
  CellAverages u = u0;
  for (long k = 0; k < m; ++k) u = rk_step(u, dt, f, spec);
  u.t = u0.t + tau;
  return u;
}

double uniform_step(double T, double tau_max) {
  if (!(T > 0.0 && tau_max > 0.0)) throw RejectedInput("uniform_step: T and tau_max must be positive");
  const double steps = std::ceil(T / tau_max - 1e-12);
  return T / std::max(1.0, steps);
}

IntegrationResult integrate_to(const CellAverages& u0, double T, double tau_max, const RhsFn& f,
                               const IntegratorSpec& spec, const IntegrationOptions& options) {
  IntegrationResult res;
  res.tau = uniform_step(T, tau_max);
  const long n_steps = static_cast<long>(std::llround(T / res.tau));
  const double t0 = u0.t;
  auto record = [&](const CellAverages& u) {
    if (options.record) res.history.push_back({u.t, u.values.minCoeff(), u.values.maxCoeff()});
  };
  record(u0);

  CellAverages curr = u0;
  if (!spec.two_step()) {
    for (long k = 1; k <= n_steps; ++k) {
      curr = rk_step(curr, res.tau, f, spec);
      curr.t = t0 + static_cast<double>(k) * res.tau;
      record(curr);
    }
  } else {
    const double sub = options.bootstrap_sub_tau > 0.0 ? std::min(options.bootstrap_sub_tau, res.tau) : res.tau;
    CellAverages prev = curr;
    curr = bootstrap_first_step(prev, res.tau, f, sub);
    curr.t = t0 + res.tau;
    record(curr);
    Eigen::VectorXd f_prev, f_curr;
    bool have_prev = false;
    for (long k = 2; k <= n_steps; ++k) {
      CellAverages next = tsrk_step(prev, curr, res.tau, f, spec, have_prev ? &f_prev : nullptr, &f_curr);
      next.t = t0 + static_cast<double>(k) * res.tau;
      f_prev = std::move(f_curr);
      have_prev = true;
      prev = std::move(curr);
      curr = std::move(next);
      record(curr);
    }
  }
  res.steps = n_steps;
  res.state = std::move(curr);
  return res;
}

}  // namespace cweno
