#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace circgeo::app {

using json = nlohmann::ordered_json;

struct Verdict {
  std::string name;
  bool pass = false;
  double residual = 0.0;
  double tol = 0.0;
  // Passing means residual > tol (e.g. "not flat") rather than residual <= tol.
  bool lower_bound = false;
  // Filled in for sampled reports.
  std::optional<int> passed;
  std::optional<int> total;
};

inline Verdict upper_verdict(std::string name, double residual, double tol) {
  return Verdict{std::move(name), residual <= tol, residual, tol, false, {}, {}};
}

inline Verdict lower_verdict(std::string name, double residual, double tol) {
  return Verdict{std::move(name), residual > tol, residual, tol, true, {}, {}};
}

// Report shape: {command, spec_name, inputs, results, verdicts{name:{pass,residual,tol}}, meta{seed,n}}.
struct Report {
  std::string command;
  std::string spec_name;
  json inputs = json::object();
  json results = json::object();
  std::vector<Verdict> verdicts;
  std::optional<std::uint64_t> seed;
  int n = 1;

  bool all_pass() const;
  json to_json() const;
  std::string to_text() const;
};

json vec_json(const double* v, std::size_t n);

}  // namespace circgeo::app
