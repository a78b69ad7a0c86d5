#include "report.hpp"

#include <sstream>

namespace circgeo::app {

bool Report::all_pass() const {
  for (const auto& v : verdicts)
    if (!v.pass) return false;
  return true;
}

json vec_json(const double* v, std::size_t n) {
  json a = json::array();
  for (std::size_t i = 0; i < n; ++i) a.push_back(v[i]);
  return a;
}

json Report::to_json() const {
  json j;
  j["command"] = command;
  j["spec_name"] = spec_name;
  j["inputs"] = inputs;
  j["results"] = results;
  json v = json::object();
  for (const auto& verdict : verdicts) {
    json e;
    e["pass"] = verdict.pass;
    e["residual"] = verdict.residual;
    e["tol"] = verdict.tol;
    if (verdict.passed) e["passed"] = *verdict.passed;
    if (verdict.total) e["total"] = *verdict.total;
    v[verdict.name] = e;
  }
  j["verdicts"] = v;
  j["meta"] = {{"seed", seed ? json(*seed) : json(nullptr)}, {"n", n}};
  return j;
}

std::string Report::to_text() const {
  std::ostringstream os;
  os << command << " [" << spec_name << "]\n";
  for (const auto& [key, value] : inputs.items()) os << "  input   " << key << " = " << value.dump() << "\n";
  for (const auto& [key, value] : results.items()) os << "  result  " << key << " = " << value.dump() << "\n";
  for (const auto& v : verdicts) {
    os << "  verdict " << v.name << ": " << (v.pass ? "PASS" : "FAIL") << " (residual "
       << json(v.residual).dump() << ", need " << (v.lower_bound ? "> " : "<= ") << json(v.tol).dump() << ")";
    if (v.passed && v.total) os << " " << *v.passed << "/" << *v.total;
    os << "\n";
  }
  return os.str();
}

}  // namespace circgeo::app
