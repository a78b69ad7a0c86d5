#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "circgeo/types.hpp"
#include "report.hpp"
#include "spec_file.hpp"

namespace circgeo::app {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerdictFailed = 1,
  kExitUsage = 2,
  kExitDomain = 3,
};

inline constexpr double kDefaultTol = 1e-9;

struct CommandRequest {
  std::string command;
  std::optional<Point> at;
  std::optional<Vec3> vector;  // angles, qbasis, verify-theorems
  std::optional<Vec3> x;       // sectional
  std::optional<Vec3> y;       // sectional
  double tol = kDefaultTol;
  bool allow_weak_metric = false;
  bool fd_check = false;
  std::optional<int> sample;  // number of sampled points
  std::uint64_t seed = 0;
  std::optional<Box> box;
};

struct CommandOutcome {
  Report report;
  int exit_code = kExitOk;
  std::optional<std::string> error;
};

class SamplingExhausted : public Error {
 public:
  SamplingExhausted(const std::string& message) : Error(ErrorKind::Sampling, "sample_box", message) {}
};

const std::vector<std::string>& command_names();

int exit_code_for(const Error& e);

// Runs one command at req.at (or over a sampled box when req.sample is set).
// Never throws for library errors; they are mapped onto exit codes.
CommandOutcome run_command(const ManifoldSpec& spec, const CommandRequest& req);

// Throwing building blocks.
Report evaluate_at(const ManifoldSpec& spec, const CommandRequest& req, const Point& p);
Report sample_box(const ManifoldSpec& spec, const CommandRequest& req);

struct SampledPoints {
  std::vector<Point> points;
  std::uint64_t draws = 0;
};

// Rejection-samples n points of the box where the metric is admissible.
// Points are generated serially from the seed. Throws SamplingExhausted
// after 100 n draws without n acceptances.
SampledPoints draw_points(const ManifoldSpec& spec, const Box& box, int n, std::uint64_t seed,
                          bool allow_weak_metric = false);

}  // namespace circgeo::app
