#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <limits>
#include <map>
#include <random>
#include <thread>

#include "circgeo/circgeo.hpp"

namespace circgeo::app {

namespace {

constexpr double kClosedFormRelTol = 1e-7;
constexpr double kExampleRelTol = 1e-8;
constexpr double kOffDiagonalTol = 1e-10;
constexpr double kNotParallelTol = 1e-6;
constexpr double kRouteTol = 1e-10;
constexpr double kInverseTol = 1e-12;
constexpr double kFdTol = 1e-5;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

json vec3(const Vec3& v) { return vec_json(v.data(), 3); }

json mat3(const Mat3& m) {
  json a = json::array();
  for (const auto& row : m) a.push_back(vec3(row));
  return a;
}

json tensor3(const Tensor3& t) {
  json a = json::array();
  for (const auto& m : t) a.push_back(mat3(m));
  return a;
}

json tensor4(const Tensor4& t) {
  json a = json::array();
  for (const auto& m : t) a.push_back(tensor3(m));
  return a;
}

json components(const ClosedFormComponents& c) {
  json j = json::object();
  const auto v = c.as_array();
  for (std::size_t k = 0; k < 6; ++k) j[kComponentNames[k]] = v[k];
  return j;
}

double rel_diff(double a, double b) {
  const double scale = std::max({std::fabs(a), std::fabs(b), 1e-300});
  return std::fabs(a - b) / scale;
}

// Relative agreement of the six components; pairs that are both below the
// absolute floor count as equal.
double component_rel_diff(const ClosedFormComponents& a, const ClosedFormComponents& b, double floor) {
  const auto x = a.as_array();
  const auto y = b.as_array();
  double r = 0.0;
  for (std::size_t k = 0; k < 6; ++k) {
    if (std::fabs(x[k]) <= floor && std::fabs(y[k]) <= floor) continue;
    r = std::max(r, rel_diff(x[k], y[k]));
  }
  return r;
}

struct Context {
  const ManifoldSpec& spec;
  const CommandRequest& req;
  const Point& p;
  MetricOptions metric_options() const { return MetricOptions{req.allow_weak_metric}; }
  Vec3 vector_or(const Vec3& fallback) const { return req.vector.value_or(fallback); }
};

using Handler = std::function<void(const Context&, Report&)>;

void cmd_validate(const Context& c, Report& r) {
  const MetricAtPoint M = metric_at(c.spec.metric, c.p, c.metric_options());
  const PositiveDefiniteReport pd = check_positive_definite(M.a(), M.b());
  const Mat3 prod = multiply(M.g, M.g_inv);
  double inv_res = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) inv_res = std::max(inv_res, std::fabs(prod[i][j] - (i == j ? 1.0 : 0.0)));
  r.results["A"] = M.a();
  r.results["B"] = M.b();
  r.results["D"] = M.D;
  r.results["g"] = mat3(M.g);
  r.results["g_inv"] = mat3(M.g_inv);
  r.results["minors"] = vec_json(pd.minors.data(), 3);
  r.results["weak"] = M.weak;
  const double ab_violation = std::max({0.0, M.b() - M.a(), -M.b()});
  r.verdicts.push_back(upper_verdict("ab_condition", ab_violation, 0.0));
  r.verdicts.push_back(upper_verdict("inverse_metric", inv_res, kInverseTol));
}

void cmd_christoffel(const Context& c, Report& r) {
  const MetricAtPoint M = metric_at(c.spec.metric, c.p, c.metric_options());
  const ChristoffelTable G = christoffel(M);
  double sym = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t h = 0; h < 3; ++h) sym = std::max(sym, std::fabs(G.gamma[i][j][h] - G.gamma[j][i][h]));
  r.results["gamma"] = tensor3(G.gamma);
  r.results["dgamma"] = tensor4(G.dgamma);
  r.verdicts.push_back(upper_verdict("lower_index_symmetry", sym, c.req.tol));
  r.verdicts.push_back(upper_verdict("metric_compatibility", metric_compatibility_residual(M, G), c.req.tol));
  if (c.req.fd_check) {
    const Tensor4 fd = christoffel_derivative_fd(c.spec.metric, c.p, 1e-5, c.metric_options());
    double d = 0.0;
    for (std::size_t k = 0; k < 3; ++k)
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
          for (std::size_t h = 0; h < 3; ++h) d = std::max(d, std::fabs(fd[k][i][j][h] - G.dgamma[k][i][j][h]));
    r.verdicts.push_back(upper_verdict("dgamma_finite_difference", d, kFdTol));
  }
}

void cmd_riemann(const Context& c, Report& r) {
  const CurvatureTensor R = riemann(c.spec.metric, c.p, c.metric_options());
  const SymmetryResiduals s = symmetry_residuals(R);
  const double scale = 1.0 + R.max_abs();
  r.results["components"] = components(components_of(R));
  r.results["max_abs"] = R.max_abs();
  r.results["low"] = tensor4(R.low);
  r.verdicts.push_back(upper_verdict("antisymmetry", std::max(s.antisymmetry_first, s.antisymmetry_second),
                                     c.req.tol * scale));
  r.verdicts.push_back(upper_verdict("pair_symmetry", s.pair_symmetry, c.req.tol * scale));
  r.verdicts.push_back(upper_verdict("bianchi", s.bianchi, c.req.tol * scale));
}

void cmd_closed_form(const Context& c, Report& r) {
  r.results["components"] = components(closed_form_components(c.spec.metric, c.p, c.metric_options()));
}

void cmd_compare(const Context& c, Report& r) {
  const MetricAtPoint M = metric_at(c.spec.metric, c.p, c.metric_options());
  const CurvatureTensor R = riemann(M, christoffel(M));
  const ClosedFormComponents numeric = components_of(R);
  const ClosedFormComponents closed = closed_form_components(M);
  const auto a = numeric.as_array();
  const auto b = closed.as_array();
  json diff = json::object();
  for (std::size_t k = 0; k < 6; ++k) diff[kComponentNames[k]] = std::fabs(a[k] - b[k]);
  r.results["numeric"] = components(numeric);
  r.results["closed_form"] = components(closed);
  r.results["abs_difference"] = diff;
  const double floor = 1e-12 * (1.0 + R.max_abs());
  r.verdicts.push_back(upper_verdict("closed_form_matches", component_rel_diff(numeric, closed, floor),
                                     kClosedFormRelTol));
}

void cmd_sectional(const Context& c, Report& r) {
  const Vec3 x = c.req.x.value_or(basis_vector(0));
  const Vec3 y = c.req.y.value_or(basis_vector(1));
  const MetricAtPoint M = metric_at(c.spec.metric, c.p, c.metric_options());
  const CurvatureTensor R = riemann(M, christoffel(M));
  r.inputs["x"] = vec3(x);
  r.inputs["y"] = vec3(y);
  r.results["mu"] = sectional_curvature(M, R, x, y);
  r.results["R_xyxy"] = riemann_apply(R, x, y, x, y);
  r.results["gram"] = inner(M, x, x) * inner(M, y, y) - inner(M, x, y) * inner(M, x, y);
}

void cmd_angles(const Context& c, Report& r) {
  const Vec3 x = c.vector_or(basis_vector(0));
  const MetricAtPoint M = metric_at(c.spec.metric, c.p, c.metric_options());
  const AngleReport a = q_basis_angles(M, x);
  r.inputs["vector"] = vec3(x);
  r.results["a"] = a.a;
  r.results["b"] = a.b;
  r.results["cos_x_qx"] = a.cos_phi_x_qx;
  r.results["cos_x_q2x"] = a.cos_phi_x_q2x;
  r.results["cos_qx_q2x"] = a.cos_theta_qx_q2x;
  r.results["cos_inner_product"] = vec_json(a.cos_inner.data(), 3);
  r.results["angles"] = vec_json(a.angles.data(), 3);
  r.verdicts.push_back(upper_verdict("route_agreement", a.route_residual, kRouteTol));
  // cos(x,qx) in (-1, 1/2) and cos(x,q^2x) in (-1/2, 1): distance outside the open intervals.
  const double c1 = a.cos_phi_x_qx;
  const double c2 = a.cos_phi_x_q2x;
  const double out = std::max({0.0, -1.0 - c1 + 1e-12, c1 - 0.5 + 1e-12, -0.5 - c2 + 1e-12, c2 - 1.0 + 1e-12});
  r.verdicts.push_back(upper_verdict("angle_ranges", out, 0.0));
}

void cmd_qbasis(const Context& c, Report& r) {
  const Vec3 x = c.vector_or(basis_vector(0));
  const double n = euclidean_norm(x);
  const double threshold = kQBasisRankTolerance * std::max(1.0, n * n * n);
  r.inputs["vector"] = vec3(x);
  r.results["induces_q_basis"] = induces_q_basis(x);
  r.results["determinant"] = q_basis_determinant(x);
  r.results["threshold"] = threshold;
  r.verdicts.push_back(lower_verdict("induces_q_basis", q_basis_determinant(x), threshold));
}

void cmd_orthobasis(const Context& c, Report& r) {
  const MetricAtPoint M = metric_at(c.spec.metric, c.p, c.metric_options());
  const Vec3 x = construct_orthogonal_vector(M.a(), M.b());
  const Vec3 qx = apply_q(x);
  const Vec3 q2x = apply_q2(x);
  const double nx2 = inner(M, x, x);
  const double pairwise =
      std::max({std::fabs(inner(M, x, qx)), std::fabs(inner(M, x, q2x)), std::fabs(inner(M, qx, q2x))}) / nx2;
  const Vec3 y = construct_special_angle_vector(M.a(), M.b());
  const double cos_y = q_basis_angles(M, y).cos_phi_x_qx;
  r.results["orthogonal_vector"] = vec3(x);
  r.results["orthogonality_defect"] = orthogonality_defect(M, x);
  r.results["max_pairwise_inner"] = pairwise;
  r.results["special_angle_vector"] = vec3(y);
  r.results["cos_y_qy"] = cos_y;
  r.verdicts.push_back(upper_verdict("orthogonal", pairwise, 1e-9));
  r.verdicts.push_back(lower_verdict("q_basis", q_basis_determinant(x),
                                     kQBasisRankTolerance * std::max(1.0, std::pow(euclidean_norm(x), 3))));
  r.verdicts.push_back(upper_verdict("special_angle", std::fabs(cos_y + 0.5), kRouteTol));
}

void cmd_check_identity(const Context& c, Report& r) {
  const CurvatureTensor R = riemann(c.spec.metric, c.p, c.metric_options());
  const IdentityRCheck id = check_identity_R(R, c.req.tol);
  r.results["components"] = components(components_of(R));
  r.results["diagonal_residual"] = id.diagonal_residual;
  r.results["off_diagonal_residual"] = id.off_diagonal_residual;
  r.results["direct_residual"] = id.direct_residual;
  r.verdicts.push_back(upper_verdict("identity_R", id.residual(), c.req.tol * id.scale));
  r.verdicts.push_back(upper_verdict("identity_R_direct", id.direct_residual, c.req.tol * id.scale));
  r.verdicts.push_back(upper_verdict("routes_agree", id.routes_agree() ? 0.0 : 1.0, 0.0));
}

void cmd_check_parallel(const Context& c, Report& r) {
  const MetricAtPoint M = metric_at(c.spec.metric, c.p, c.metric_options());
  const ChristoffelTable G = christoffel(M);
  const Vec3 res = parallel_condition_residual(M.A, M.B);
  const double res_norm = euclidean_norm(res);
  const double nq = nabla_q(G).max_abs();
  const double eq = check_christoffel_equalities(G);
  r.results["grad_A"] = vec3(M.A.grad());
  r.results["gradient_residual"] = vec3(res);
  r.results["christoffel_equalities"] = eq;
  r.results["nabla_q_max"] = nq;
  r.verdicts.push_back(upper_verdict("q_parallel", nq, c.req.tol));
  r.verdicts.push_back(upper_verdict("gradient_condition", res_norm, c.req.tol));
  // Both sides of the parallelism criterion must give the same verdict.
  const bool agree = (nq <= c.req.tol) == (res_norm <= c.req.tol);
  r.verdicts.push_back(upper_verdict("criterion_equivalence", agree ? 0.0 : 1.0, 0.0));
}

void cmd_nabla_q(const Context& c, Report& r) {
  const NablaQTensor n = nabla_q(c.spec.metric, c.p, c.metric_options());
  r.results["nabla_q"] = tensor3(n.nq);
  r.results["max_abs"] = n.max_abs();
}

void cmd_verify_theorems(const Context& c, Report& r) {
  const Vec3 u = c.vector_or(basis_vector(0));
  r.inputs["vector"] = vec3(u);
  const CurvatureTensor R = riemann(c.spec.metric, c.p, c.metric_options());
  const IdentityRCheck id = check_identity_R(R, c.req.tol);
  r.verdicts.push_back(upper_verdict("identity_R", id.residual(), c.req.tol * id.scale));
  if (!id.holds) {
    r.results["mu_r"] = nullptr;
    r.results["mu_r2"] = nullptr;
    r.results["equal_sectional"] = nullptr;
    r.results["refused"] = "the theorems assume R(qx,qy,qz,qu) = R(x,y,z,u), which fails at this point";
    for (const char* name : {"mu_r", "mu_r2", "equal_sectional"})
      r.verdicts.push_back(Verdict{name, false, kNaN, kTheoremTolerance, false, {}, {}});
    return;
  }
  TheoremOptions opt;
  opt.identity_tol = c.req.tol;
  opt.metric = c.metric_options();
  const TheoremCheck t1 = verify_theorem_mu_r(c.spec.metric, c.p, u, opt);
  const TheoremCheck t2 = verify_theorem_mu_r2(c.spec.metric, c.p, u, opt);
  const EqualSectionalCheck e = verify_equal_sectional(c.spec.metric, c.p, u, opt);
  r.results["mu_r"] = {{"lhs", t1.lhs}, {"rhs", t1.rhs}};
  r.results["mu_r2"] = {{"lhs", t2.lhs}, {"rhs", t2.rhs}};
  r.results["equal_sectional"] = vec_json(e.mu.data(), 3);
  r.results["refused"] = nullptr;
  r.verdicts.push_back(upper_verdict("mu_r", t1.residual, t1.bound));
  r.verdicts.push_back(upper_verdict("mu_r2", t2.residual, t2.bound));
  r.verdicts.push_back(upper_verdict("equal_sectional", std::max(e.residuals[0], e.residuals[1]), e.bound));
}

// (2X1 + X2 + X3) / ((X2 + X3)(6X1 + 2X2 + 2X3))
double example_m5_r1212(const Point& p) {
  const double s = p[1] + p[2];
  return (2.0 * p[0] + s) / (s * (6.0 * p[0] + 2.0 * s));
}

void cmd_example_m5(const Context& c, Report& r) {
  const MetricAtPoint M = metric_at(c.spec.metric, c.p, c.metric_options());
  const ChristoffelTable G = christoffel(M);
  const CurvatureTensor R = riemann(M, G);
  const ClosedFormComponents comp = components_of(R);
  const double expected = example_m5_r1212(c.p);
  const double diag = std::max({rel_diff(comp.R1212, expected), rel_diff(comp.R1313, expected),
                                rel_diff(comp.R2323, expected)});
  const double off = std::max({std::fabs(comp.R1213), std::fabs(comp.R1223), std::fabs(comp.R1323)});
  const IdentityRCheck id = check_identity_R(R, c.req.tol);
  const double nq = nabla_q(G).max_abs();
  const Vec3 par = parallel_condition_residual(M.A, M.B);

  r.results["components"] = components(comp);
  r.results["R1212_expected"] = expected;
  r.results["nabla_q_max"] = nq;
  r.results["gradient_residual"] = vec3(par);
  r.results["max_abs_curvature"] = R.max_abs();
  r.verdicts.push_back(upper_verdict("diagonal_matches_closed_form", diag, kExampleRelTol));
  r.verdicts.push_back(upper_verdict("off_diagonal_vanish", off, kOffDiagonalTol));
  r.verdicts.push_back(upper_verdict("identity_R", id.residual(), c.req.tol * id.scale));
  r.verdicts.push_back(lower_verdict("not_parallel", nq, kNotParallelTol));
  r.verdicts.push_back(lower_verdict("not_flat", R.max_abs(), c.req.tol));
}

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table = {
      {"validate", cmd_validate},
      {"christoffel", cmd_christoffel},
      {"riemann", cmd_riemann},
      {"closed-form", cmd_closed_form},
      {"compare-curvature", cmd_compare},
      {"sectional", cmd_sectional},
      {"angles", cmd_angles},
      {"qbasis", cmd_qbasis},
      {"orthobasis", cmd_orthobasis},
      {"check-identity", cmd_check_identity},
      {"check-parallel", cmd_check_parallel},
      {"nabla-q", cmd_nabla_q},
      {"verify-theorems", cmd_verify_theorems},
      {"example-m5", cmd_example_m5},
  };
  return table;
}

const Handler& handler_for(const std::string& name) {
  const auto it = handlers().find(name);
  if (it == handlers().end()) throw UsageError("run_command", "unknown command '" + name + "'");
  return it->second;
}

// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
double unit_interval(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Report new_report(const ManifoldSpec& spec, const CommandRequest& req) {
  Report r;
  r.command = req.command;
  r.spec_name = spec.name;
  return r;
}

void echo_common_inputs(const CommandRequest& req, Report& r) {
  r.inputs["tol"] = req.tol;
  r.inputs["allow_weak_metric"] = req.allow_weak_metric;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, h] : handlers()) v.push_back(name);
    return v;
  }();
  return names;
}

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Syntax:
    case ErrorKind::Usage:
    case ErrorKind::Io: return kExitUsage;
    case ErrorKind::ExpressionDomain:
    case ErrorKind::Positivity:
    case ErrorKind::DomainConstraint:
    case ErrorKind::Sampling: return kExitDomain;
    case ErrorKind::Verification: return kExitVerdictFailed;
  }
  return kExitUsage;
}

Report evaluate_at(const ManifoldSpec& spec, const CommandRequest& req, const Point& p) {
  const Handler& h = handler_for(req.command);
  Report r = new_report(spec, req);
  r.inputs["point"] = vec3(p.x);
  echo_common_inputs(req, r);
  h(Context{spec, req, p}, r);
  return r;
}

SampledPoints draw_points(const ManifoldSpec& spec, const Box& box, int n, std::uint64_t seed,
                          bool allow_weak_metric) {
  if (n < 1) throw UsageError("sample_box", "sample count must be >= 1");
  SampledPoints s;
  std::mt19937_64 rng(seed);
  const std::uint64_t max_draws = 100ull * static_cast<std::uint64_t>(n);
  const MetricOptions options{allow_weak_metric};
  while (s.points.size() < static_cast<std::size_t>(n)) {
    if (s.draws == max_draws)
      throw SamplingExhausted("accepted " + std::to_string(s.points.size()) + " of " + std::to_string(n) +
                              " points after " + std::to_string(max_draws) + " draws");
    ++s.draws;
    Point p;
    for (std::size_t k = 0; k < 3; ++k) p[k] = box[k].first + unit_interval(rng) * (box[k].second - box[k].first);
    try {
      (void)metric_at(spec.metric, p, options);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Positivity || e.kind() == ErrorKind::DomainConstraint ||
          e.kind() == ErrorKind::ExpressionDomain)
        continue;
      throw;
    }
    s.points.push_back(p);
  }
  return s;
}

Report sample_box(const ManifoldSpec& spec, const CommandRequest& req) {
  handler_for(req.command);
  const std::optional<Box> box = req.box ? req.box : spec.sample_box;
  if (!box) throw UsageError("sample_box", "no sample box: pass --box or add a [sample] section");
  const int n = req.sample.value_or(1);
  const SampledPoints sampled = draw_points(spec, *box, n, req.seed, req.allow_weak_metric);

  // Evaluate concurrently; reports are merged in point order afterwards.
  std::vector<Report> per_point(sampled.points.size());
  const std::size_t workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < sampled.points.size(); i += workers)
        per_point[i] = evaluate_at(spec, req, sampled.points[i]);
    }));
  }
  for (auto& j : jobs) j.get();

  Report r = new_report(spec, req);
  json jbox = json::array();
  for (const auto& iv : *box) jbox.push_back({iv.first, iv.second});
  r.inputs["box"] = jbox;
  if (req.vector) r.inputs["vector"] = vec3(*req.vector);
  echo_common_inputs(req, r);
  json points = json::array();
  for (const auto& p : sampled.points) points.push_back(vec3(p.x));
  r.results["points_accepted"] = sampled.points.size();
  r.results["draws"] = sampled.draws;
  r.results["points"] = points;
  r.seed = req.seed;
  r.n = n;

  for (const Report& pr : per_point) {
    for (const Verdict& v : pr.verdicts) {
      auto it = std::find_if(r.verdicts.begin(), r.verdicts.end(), [&](const Verdict& a) { return a.name == v.name; });
      if (it == r.verdicts.end()) {
        Verdict agg = v;
        agg.passed = v.pass ? 1 : 0;
        agg.total = 1;
        r.verdicts.push_back(agg);
        continue;
      }
      *it->passed += v.pass ? 1 : 0;
      *it->total += 1;
      it->pass = it->pass && v.pass;
      // Worst case: largest residual for upper bounds, smallest for lower bounds.
      if (std::isnan(v.residual) || std::isnan(it->residual))
        it->residual = kNaN;
      else
        it->residual = v.lower_bound ? std::min(it->residual, v.residual) : std::max(it->residual, v.residual);
      it->tol = v.lower_bound ? std::min(it->tol, v.tol) : std::max(it->tol, v.tol);
    }
  }
  return r;
}

CommandOutcome run_command(const ManifoldSpec& spec, const CommandRequest& req) {
  CommandOutcome out;
  out.report = new_report(spec, req);
  try {
    if (req.sample) {
      out.report = sample_box(spec, req);
    } else {
      if (!req.at) throw UsageError("run_command", "missing --at point");
      out.report = evaluate_at(spec, req, *req.at);
    }
    out.exit_code = out.report.all_pass() ? kExitOk : kExitVerdictFailed;
  } catch (const Error& e) {
    out.exit_code = exit_code_for(e);
    out.error = e.what();
  }
  return out;
}

}  // namespace circgeo::app
