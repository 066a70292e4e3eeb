#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "expderham/cli/commands.hpp"
#include "expderham/error.hpp"

using namespace expderham;

namespace {
constexpr double kPi = std::numbers::pi;

std::string example(const std::string& name) { return std::string(EXPDERHAM_DOCS_DIR) + "/examples/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Report run(const std::string& cmd, const std::string& spec, PeriodMode mode = PeriodMode::analytic) {
  return guarded([&] {
    const auto s = load_problem(example(spec));
    if (cmd == "reduce") return cmd_reduce(s);
    if (cmd == "periods") return cmd_periods(s, mode);
    if (cmd == "borel") return cmd_borel(s);
    return cmd_global(s);
  });
}

// Structural equality with a relative tolerance on floating leaves.
void expect_near_json(const json& a, const json& b, const std::string& path = "") {
  if (a.is_number() && b.is_number()) {
    const double x = a.get<double>(), y = b.get<double>();
    EXPECT_LE(std::abs(x - y), 1e-9 * std::max(1.0, std::abs(y)) + 1e-12) << path;
    return;
  }
  ASSERT_EQ(a.type(), b.type()) << path;
  if (a.is_object()) {
    ASSERT_EQ(a.size(), b.size()) << path;
    for (const auto& [k, v] : a.items()) {
      ASSERT_TRUE(b.contains(k)) << path << "/" << k;
      expect_near_json(v, b[k], path + "/" + k);
    }
  } else if (a.is_array()) {
    ASSERT_EQ(a.size(), b.size()) << path;
    for (std::size_t i = 0; i < a.size(); ++i) expect_near_json(a[i], b[i], path + "/" + std::to_string(i));
  } else {
    EXPECT_EQ(a, b) << path;
  }
}
}  // namespace

TEST(Cli, ReduceInverseSquare) {
  const auto r = run("reduce", "reduce_inverse_square.json");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.body["reduction"]["canonical"]["0"], "2");
  EXPECT_EQ(r.body["reduction"]["canonical"]["-1"], "0");
  EXPECT_EQ(r.body["reduction"]["primitive"]["-1"], "-1");
  EXPECT_TRUE(r.body["residual_zero"].get<bool>());
}

TEST(Cli, ReduceZeroAndMalformed) {
  const auto z = run("reduce", "reduce_zero.json");
  EXPECT_EQ(z.exit_code, 0);
  for (const auto& [k, v] : z.body["reduction"]["canonical"].items()) EXPECT_EQ(v, "0") << k;
  EXPECT_EQ(z.body["exactness"], "exact");
  const auto m = run("reduce", "reduce_malformed.json");
  EXPECT_EQ(m.exit_code, 2);
  EXPECT_EQ(m.body["error"]["kind"], "input");
}

TEST(Cli, SchemaViolations) {
  auto code = [](const std::string& text) {
    return guarded([&] { return cmd_reduce(parse_problem(text)); }).exit_code;
  };
  EXPECT_EQ(code(R"({"version": 2, "kind": "local", "payload": {}})"), 2);
  EXPECT_EQ(code(R"({"version": 1, "kind": "torus", "payload": {}})"), 2);
  EXPECT_EQ(code(R"({"version": 1, "kind": "local", "payload": {"type": {"d": 0}, "coefficient": {}}})"), 2);
  EXPECT_EQ(code(R"({"version": 1, "kind": "local", "payload": {"type": {"d": 2}, "coefficient": {"x": "1"}}})"), 2);
  EXPECT_EQ(code(R"({"version": 1, "kind": "local", "payload": {"type": {"d": 2}, "coefficient": {"1": "1/0"}}})"), 2);
  EXPECT_EQ(code(R"({"version": 1, "kind": "local", "payload": {"type": {"d": 2}, "coefficient": {"1": 1.5}}})"), 2);
  EXPECT_EQ(code(R"({"version": 1, "kind": "local", "payload": {"type": {"d": 2}}, "options": {"speed": 1}})"), 2);
  EXPECT_EQ(code(R"({"version": 1, "kind": "local", "payload": {"type": {"d": 2}, "coefficient": {"1": "1"}},
                     "options": {"truncation_order": -1}})"),
            2);
  EXPECT_EQ(code(R"({"version": 1, "kind": "local", "payload": {"type": {"d": 2}, "coefficient": {"1": "1"}}})"), 0);
}

TEST(Cli, Overrides) {
  const std::string text = R"({"version": 1, "kind": "local", "payload": {"type": {"d": 2}, "coefficient": {"-2": "1"}}})";
  Overrides o;
  o.convention = Convention::minus;
  o.tolerance = 1e-6;
  const auto s = parse_problem(text, o);
  EXPECT_EQ(s.tolerance, 1e-6);
  const auto r = cmd_reduce(s);
  EXPECT_EQ(r.body["reduction"]["convention"], "minus");
  // z^{-2} = -2 z^0 modulo exact forms when h = -z^2
  EXPECT_EQ(r.body["reduction"]["canonical"]["0"], "-2");
  o.tolerance = 1.0;
  EXPECT_THROW(parse_problem(text, o), InputError);
}

TEST(Cli, UndecidedExitCode) {
  // every stored coefficient lies inside the truncation band
  const std::string text = R"({"version": 1, "kind": "local",
    "payload": {"type": {"d": 1}, "coefficient": {"-3": "1/1000000000000", "tail": {"C": 1, "R": 0.5, "start": 3}}}})";
  const auto r = guarded([&] { return cmd_reduce(parse_problem(text)); });
  EXPECT_EQ(r.body["exactness"], "undecided");
  EXPECT_EQ(r.exit_code, 3);
}

TEST(Cli, PeriodMatrixFirstRow) {
  const auto r = run("periods", "periods_basis_d2.json");
  ASSERT_EQ(r.exit_code, 0);
  const auto& row = r.body["matrix"]["entries"][0];
  EXPECT_NEAR(row[0]["value"][0].get<double>(), 0.0, 1e-15);
  EXPECT_NEAR(row[0]["value"][1].get<double>(), 2.0 * kPi, 1e-15);
  EXPECT_EQ(row[1]["value"][0].get<double>(), 0.0);
  EXPECT_EQ(row[1]["value"][1].get<double>(), 0.0);
  EXPECT_EQ(r.body["matrix"]["entries"][1][0]["provenance"], "quadrature");
}

TEST(Cli, GaussianBothModes) {
  const auto r = run("periods", "periods_gaussian.json", PeriodMode::both);
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_LT(r.body["agreement_residual"].get<double>(), 1e-7);
  EXPECT_NEAR(r.body["periods"][1]["value"][0].get<double>(), -std::sqrt(kPi), 1e-9);
  EXPECT_EQ(run("periods", "periods_bad_tolerance.json").exit_code, 2);
}

TEST(Cli, PreconditionExitCode) {
  // e^{-z} / (z - 1) has a residue off the punctures
  const std::string pole = R"({"version": 1, "kind": "global0",
    "payload": {"type": {"punctures": [{"location": "inf", "principal": ["0", "-1"]}]},
                "coefficient": {"numerator": ["1"], "denominator": ["-1", "1"]}}})";
  const auto bad = guarded([&] { return cmd_global(parse_problem(pole)); });
  EXPECT_EQ(bad.exit_code, 4);
  EXPECT_EQ(bad.body["error"]["kind"], "precondition");
  // the Borel transform needs phi = O(t^-2)
  const std::string slow = R"({"version": 1, "kind": "borel",
    "payload": {"type": {"d": 2}, "coefficient": {"-1": "1"}}})";
  EXPECT_EQ(guarded([&] { return cmd_borel(parse_problem(slow)); }).exit_code, 4);
}

TEST(Cli, BorelReport) {
  const auto r = run("borel", "borel_double_pole_d2.json");
  ASSERT_EQ(r.exit_code, 0);
  ASSERT_EQ(r.body["residues"].size(), 2u);
  for (const auto& row : r.body["residues"]) EXPECT_LT(row["residual"].get<double>(), 1e-6);
  for (const auto& row : r.body["inversion"]) EXPECT_LT(row["relative_residual"].get<double>(), 1e-6);
  EXPECT_EQ(r.body["evaluations"].size(), 2u);
}

TEST(Cli, GlobalReports) {
  const auto rank = run("global", "global_rank_d21.json");
  ASSERT_EQ(rank.exit_code, 0);
  EXPECT_EQ(rank.body["dimension"], 3);
  EXPECT_EQ(rank.body["rank"]["rank"], 3);
  const auto ex = run("global", "global_exact_form.json");
  EXPECT_EQ(ex.body["exactness"], "exact");
  EXPECT_EQ(ex.body["certificate"]["numerator"], json::array({"-1", "1"}));
  const auto circ = run("global", "global_circle_period.json");
  EXPECT_EQ(circ.body["exactness"], "not_exact");
  EXPECT_LT(std::abs(circ.body["circle_sum"][1].get<double>()), 1e-9);
}

TEST(Cli, Verify) {
  EXPECT_EQ(verify_suites().size(), 10u);
  const auto r = guarded([] { return cmd_verify("local-d3"); });
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_TRUE(r.body["passed"].get<bool>());
  const auto b = guarded([] { return cmd_verify("borel-d2"); });
  EXPECT_LT(b.body["checks"][0]["residual"].get<double>(), 1e-6);
  EXPECT_EQ(guarded([] { return cmd_verify("nope"); }).exit_code, 2);
}

TEST(Cli, GoldenFiles) {
  const std::vector<std::tuple<std::string, std::string, PeriodMode>> cases = {
      {"reduce", "reduce_inverse_square", PeriodMode::analytic},
      {"reduce", "reduce_zero", PeriodMode::analytic},
      {"reduce", "reduce_malformed", PeriodMode::analytic},
      {"periods", "periods_basis_d2", PeriodMode::analytic},
      {"periods", "periods_gaussian", PeriodMode::both},
      {"periods", "periods_bad_tolerance", PeriodMode::analytic},
      {"borel", "borel_double_pole_d2", PeriodMode::analytic},
      {"global", "global_rank_d21", PeriodMode::analytic},
      {"global", "global_exact_form", PeriodMode::analytic},
      {"global", "global_circle_period", PeriodMode::analytic}};
  for (const auto& [cmd, name, mode] : cases) {
    json expected = json::parse(slurp(example(name + ".expected.json")));
    json got = run(cmd, name + ".json", mode).body;
    if (got.contains("error")) {
      // the parser message carries no numbers worth a tolerance
      EXPECT_EQ(got["error"]["kind"], expected["error"]["kind"]) << name;
      continue;
    }
    // singular values at the noise floor are not reproducible across kernels
    if (got.contains("rank")) {
      for (json* j : {&got, &expected}) {
        auto& sv = (*j)["rank"]["singular_values"];
        for (auto& x : sv)
          if (x.get<double>() < 1e-10) x = 0.0;
        (*j)["rank"].erase("gap");
        (*j)["rank"].erase("max_circle_sum");
      }
    }
    SCOPED_TRACE(name);
    expect_near_json(got, expected);
  }
}

TEST(Cli, Deterministic) {
  const auto a = render_json(run("borel", "borel_double_pole_d2.json").body);
  const auto b = render_json(run("borel", "borel_double_pole_d2.json").body);
  EXPECT_EQ(a, b);
  EXPECT_EQ(render_table(run("global", "global_rank_d21.json").body),
            render_table(run("global", "global_rank_d21.json").body));
}
