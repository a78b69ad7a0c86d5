#include "cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "spec_file.hpp"

namespace circgeo::app {

namespace {

struct Help {
  const char* name;
  const char* description;
};

constexpr Help kCommands[] = {
    {"validate", "check A > B > 0 and the domain constraints; print g, g^-1, D"},
    {"christoffel", "Christoffel symbols and their derivatives"},
    {"riemann", "Riemann tensor, six components, symmetry checks"},
    {"closed-form", "the six closed-form curvature components"},
    {"compare-curvature", "closed-form components against the numeric tensor"},
    {"sectional", "sectional curvature of the plane spanned by --x and --y"},
    {"angles", "angles of the q-basis generated by --vector"},
    {"qbasis", "does --vector generate a q-basis"},
    {"orthobasis", "orthogonal and 2pi/3 q-basis generators"},
    {"check-identity", "does R(qx,qy,qz,qu) = R(x,y,z,u) hold"},
    {"check-parallel", "is q parallel; both criteria"},
    {"nabla-q", "components of the covariant derivative of q"},
    {"verify-theorems", "sectional curvature identities for the q-basis of --vector"},
    {"example-m5", "built-in example manifold A = 2x1, B = 2x1 + x2 + x3"},
};

Vec3 parse_triple(const std::string& text, const char* flag) {
  Vec3 v{};
  std::size_t start = 0;
  for (std::size_t k = 0; k < 3; ++k) {
    const std::size_t end = k < 2 ? text.find(',', start) : text.size();
    if (end == std::string::npos) throw UsageError("cli", std::string(flag) + " expects three comma-separated numbers");
    std::string item = text.substr(start, end - start);
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    item = b == std::string::npos ? "" : item.substr(b, e - b + 1);
    const char* first = item.data();
    if (!item.empty() && item[0] == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, item.data() + item.size(), v[k]);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size() || !std::isfinite(v[k]))
      throw UsageError("cli", std::string(flag) + ": '" + item + "' is not a finite number");
    start = end + 1;
  }
  return v;
}

struct Flags {
  std::string spec;
  std::string at, vector, x, y, box;
  double tol = kDefaultTol;
  bool allow_weak = false;
  bool json = false;
  bool fd_check = false;
  int sample = 0;
  std::uint64_t seed = 0;
};

void add_common(CLI::App* sub, Flags& f, bool needs_spec) {
  auto* spec = sub->add_option("--spec", f.spec, "manifold spec file");
  if (needs_spec) spec->required();
  sub->add_option("--at", f.at, "point x1,x2,x3");
  sub->add_option("--tol", f.tol, "verdict tolerance")->check(CLI::PositiveNumber);
  sub->add_flag("--allow-weak-metric", f.allow_weak, "accept any positive definite g, not only A > B > 0");
  sub->add_flag("--json", f.json, "machine-readable report");
  sub->add_option("--sample", f.sample, "evaluate at N seeded points of the sample box")->check(CLI::PositiveNumber);
  sub->add_option("--seed", f.seed, "sampling seed");
  sub->add_option("--box", f.box, "sample box lo,hi;lo,hi;lo,hi");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"circgeo: curvature of circulant metrics with a structure q, q^3 = -id"};
  app.require_subcommand(1);
  app.footer(
      "Expressions: numbers, x1 x2 x3, + - * /, ^ with a numeric exponent, sqrt exp log sin cos.\n"
      "Unary minus binds looser than ^, so -x1^2 is -(x1^2). No implicit multiplication.\n"
      "Points and vectors are comma-separated triples, e.g. --at 2,-1,-1.\n"
      "Exit codes: 0 all verdicts pass, 1 a verdict failed, 2 usage or parse error, 3 positivity or domain violation.");
  Flags f;
  for (const Help& h : kCommands) {
    CLI::App* sub = app.add_subcommand(h.name, h.description);
    const std::string name = h.name;
    add_common(sub, f, name != "example-m5");
    if (name == "angles" || name == "qbasis" || name == "verify-theorems")
      sub->add_option("--vector", f.vector, "tangent vector x1,x2,x3");
    if (name == "sectional") {
      sub->add_option("--x", f.x, "first vector")->required();
      sub->add_option("--y", f.y, "second vector")->required();
    }
    if (name == "christoffel") sub->add_flag("--fd-check", f.fd_check, "compare dGamma with finite differences");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  CommandRequest req;
  req.command = app.get_subcommands().front()->get_name();
  req.tol = f.tol;
  req.allow_weak_metric = f.allow_weak;
  req.fd_check = f.fd_check;
  req.seed = f.seed;
  if (f.sample > 0) req.sample = f.sample;

  ManifoldSpec spec;
  try {
    if (req.command == "example-m5") {
      spec = example_m5_spec();
      if (f.at.empty() && !req.sample) f.at = "2,-1,-1";
    } else {
      spec = load_spec(f.spec);
    }
    if (!f.at.empty()) req.at = Point{parse_triple(f.at, "--at")};
    if (!f.vector.empty()) req.vector = parse_triple(f.vector, "--vector");
    if (!f.x.empty()) req.x = parse_triple(f.x, "--x");
    if (!f.y.empty()) req.y = parse_triple(f.y, "--y");
    if (!f.box.empty()) req.box = parse_box(f.box);
    if (req.sample && req.at) throw UsageError("cli", "--at and --sample are mutually exclusive");
    if (!req.sample && (!f.box.empty() || f.seed != 0))
      throw UsageError("cli", "--box and --seed need --sample");
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }

  const CommandOutcome outcome = run_command(spec, req);
  if (outcome.error) {
    err << "error: " << *outcome.error << '\n';
    return outcome.exit_code;
  }
  if (f.json)
    out << outcome.report.to_json().dump(2) << '\n';
  else
    out << outcome.report.to_text();
  if (outcome.report.results.contains("refused") && outcome.report.results["refused"].is_string())
    err << "verify-theorems: refused, " << outcome.report.results["refused"].get<std::string>() << '\n';
  return outcome.exit_code;
}

}  // namespace circgeo::app
