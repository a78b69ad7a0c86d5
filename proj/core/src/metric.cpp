#include "circgeo/metric.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "circgeo/errors.hpp"

namespace circgeo {

namespace {

std::string describe(double A, double B, const Point* p) {
  std::ostringstream os;
  os.precision(17);
  os << "A=" << A << ", B=" << B;
  if (p) os << " at (" << (*p)[0] << ", " << (*p)[1] << ", " << (*p)[2] << ")";
  return os.str();
}

MetricAtPoint assemble(const Jet2& A, const Jet2& B, const MetricOptions& options, const Point* p) {
  const double a = A.value();
  const double b = B.value();
  MetricAtPoint M;
  M.A = A;
  M.B = B;
  if (!(a > b && b > 0.0)) {
    const PositiveDefiniteReport pd = check_positive_definite(a, b);
    if (!options.allow_weak_metric || !pd.positive_definite)
      throw PositivityViolation("metric_at", "condition A > B > 0 violated: " + describe(a, b, p));
    M.weak = true;
  }
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) M.g[i][j] = i == j ? a : b;
  M.D = (a - b) * (a + 2.0 * b);
  const double diag = (a + b) / M.D;
  const double off = -b / M.D;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) M.g_inv[i][j] = i == j ? diag : off;
  return M;
}

}  // namespace

PositiveDefiniteReport check_positive_definite(double A, double B) {
  PositiveDefiniteReport r;
  r.minors = {A, (A - B) * (A + B), (A - B) * (A - B) * (A + 2.0 * B)};
  r.positive_definite = r.minors[0] > 0.0 && r.minors[1] > 0.0 && r.minors[2] > 0.0;
  return r;
}

MetricAtPoint metric_at(const MetricFunctions& m, const Point& p, const MetricOptions& options) {
  if (!p.is_finite()) throw UsageError("metric_at", "point has non-finite coordinates");
  for (std::size_t k = 0; k < m.domain_constraints.size(); ++k) {
    const double c = m.domain_constraints[k].value(p);
    if (!(c > 0.0)) {
      std::ostringstream os;
      os.precision(17);
      os << "domain constraint " << m.domain_constraints[k].to_string() << " > 0 fails (value " << c
         << ") at (" << p[0] << ", " << p[1] << ", " << p[2] << ")";
      throw DomainViolation("metric_at", os.str());
    }
  }
  return assemble(m.A.jet(p), m.B.jet(p), options, &p);
}

MetricAtPoint metric_from_values(double A, double B, const MetricOptions& options) {
  return assemble(Jet2(A), Jet2(B), options, nullptr);
}

double inner(const MetricAtPoint& M, const Vec3& x, const Vec3& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) s += M.g[i][j] * x[i] * y[j];
  return s;
}

}  // namespace circgeo
