#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "expderham/cli/json_io.hpp"
#include "expderham/localperiods/periods.hpp"

namespace expderham {

enum class ProblemKind { local, global0, borel };
const char* to_string(ProblemKind k);

struct ProblemSpec {
  int version = 1;
  ProblemKind kind = ProblemKind::local;
  json payload;
  double tolerance = 1e-8;
  int truncation_order = 0;
  Convention convention = Convention::plus;
};

/// Command-line flags take precedence over the options block of the spec.
struct Overrides {
  std::optional<double> tolerance;
  std::optional<int> truncation_order;
  std::optional<Convention> convention;
};

/// Parses and validates; every failure is an InputError.
ProblemSpec parse_problem(const std::string& text, const Overrides& o = {});
ProblemSpec load_problem(const std::string& path, const Overrides& o = {});

struct Report {
  json body;
  int exit_code = 0;
};

Report cmd_reduce(const ProblemSpec& spec);
Report cmd_periods(const ProblemSpec& spec, PeriodMode mode);
Report cmd_borel(const ProblemSpec& spec);
Report cmd_global(const ProblemSpec& spec);
Report cmd_verify(const std::string& suite);

const std::vector<std::string>& verify_suites();

/// Runs f, mapping library errors to their exit codes and an error report.
Report guarded(const std::function<Report()>& f);

std::string render_json(const json& report);
std::string render_table(const json& report);

}  // namespace expderham
