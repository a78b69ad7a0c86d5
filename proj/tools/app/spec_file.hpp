#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "circgeo/errors.hpp"
#include "circgeo/metric.hpp"

namespace circgeo::app {

using Interval = std::pair<double, double>;
using Box = std::array<Interval, 3>;

struct ManifoldSpec {
  std::string name;
  MetricFunctions metric;
  std::optional<Box> sample_box;
};

// Raised for malformed spec files; line and column are 1-based.
class SpecError : public Error {
 public:
  SpecError(std::size_t line, std::size_t column, const std::string& message)
      : Error(ErrorKind::Syntax, "load_spec",
              "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Flat TOML subset:
//
//   name = "example"            # optional, top level
//   [metric]                    # required: A and B
//   A = "2*x1"
//   B = "2*x1 + x2 + x3"
//   [domain]                    # optional: each value must be > 0 on the chart
//   c1 = "2*x1 + x2 + x3"
//   [sample]                    # optional: all three intervals "lo, hi"
//   x1 = "1, 3"
ManifoldSpec parse_spec(std::string_view text, std::string default_name = "manifold");
ManifoldSpec load_spec(const std::filesystem::path& path);

// A = 2 x1, B = 2 x1 + x2 + x3 on {2x1 + x2 + x3 > 0, x2 + x3 < 0}.
ManifoldSpec example_m5_spec();
inline constexpr std::string_view kExampleM5Text = R"spec(name = "example-m5"

[metric]
A = "2*x1"
B = "2*x1 + x2 + x3"

[domain]
b_positive = "2*x1 + x2 + x3"
sum_negative = "-(x2 + x3)"

[sample]
x1 = "1, 3"
x2 = "-2, -0.1"
x3 = "-2, -0.1"
)spec";

Box parse_box(std::string_view text);

}  // namespace circgeo::app
