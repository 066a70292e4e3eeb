#include <CLI11.hpp>

#include <iostream>

#include "expderham/cli/commands.hpp"
#include "expderham/error.hpp"

using namespace expderham;

int main(int argc, char** argv) {
  CLI::App app{"exponential de Rham cohomology on log-Riemann surfaces"};
  app.require_subcommand(1);

  std::optional<double> tolerance;
  std::optional<int> truncation;
  std::string convention, format = "json", mode = "analytic";
  app.add_option("--tolerance", tolerance, "target accuracy in [1e-14, 1e-2]");
  app.add_option("--truncation-order", truncation, "stored germ terms for tailed coefficients");
  app.add_option("--convention", convention, "default local sign: plus | minus");
  app.add_option("--format", format, "json | table")->check(CLI::IsMember({"json", "table"}));

  std::string spec_path, suite;
  auto* reduce = app.add_subcommand("reduce", "reduce a local form to the canonical basis");
  reduce->add_option("spec", spec_path, "problem spec")->required();
  auto* periods = app.add_subcommand("periods", "local or global periods");
  periods->add_option("spec", spec_path, "problem spec")->required();
  periods->add_option("--mode", mode, "analytic | quadrature | both")
      ->check(CLI::IsMember({"analytic", "quadrature", "both"}));
  auto* borel = app.add_subcommand("borel", "Borel transform residues and Laplace inversion");
  borel->add_option("spec", spec_path, "problem spec")->required();
  auto* global = app.add_subcommand("global", "genus 0 periods, exactness and rank");
  global->add_option("spec", spec_path, "problem spec")->required();
  auto* verify = app.add_subcommand("verify", "run a built-in check suite");
  verify->add_option("suite", suite, "suite name")->required();

  for (auto* sub : {reduce, periods, borel, global, verify}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(ErrorKind::input);
  }

  const Report r = guarded([&]() -> Report {
    Overrides o;
    o.tolerance = tolerance;
    o.truncation_order = truncation;
    if (!convention.empty()) o.convention = parse_convention(convention);
    if (*verify) return cmd_verify(suite);
    const ProblemSpec spec = load_problem(spec_path, o);
    if (*reduce) return cmd_reduce(spec);
    if (*periods) return cmd_periods(spec, parse_period_mode(mode));
    if (*borel) return cmd_borel(spec);
    return cmd_global(spec);
  });
  if (r.body.contains("error")) std::cerr << r.body["error"]["message"].get<std::string>() << "\n";
  std::cout << (format == "table" ? render_table(r.body) : render_json(r.body));
  return r.exit_code;
}
