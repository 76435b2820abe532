#include <cmath>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "stablecut/report.hpp"

namespace stablecut {
namespace {

TEST(Report, NonFiniteNumbersBecomeStrings) {
  EXPECT_EQ(number(kInfinity), Json("inf"));
  EXPECT_EQ(number(-kInfinity), Json("-inf"));
  EXPECT_EQ(number(std::nan("")), Json("nan"));
  EXPECT_EQ(number(1.5), Json(1.5));
}

TEST(Report, StabilitySection) {
  const StabilityReport rep = analyze_stability(fixtures::c4());
  const Json j = to_json(rep, 1.0, OracleOptions{});
  EXPECT_EQ(j["status"], "computed");
  EXPECT_EQ(j["gamma_star"], "inf");
  EXPECT_EQ(j["worst_cut"], nullptr);
  EXPECT_EQ(j["max_cut"], Json::parse("[1,-1,1,-1]"));
  EXPECT_EQ(j["tie_tolerance"], 1e-9);
}

TEST(Report, MergeTraceFields) {
  const Json j = to_json(find_max_cut_greedy(fixtures::triangle()).trace);
  ASSERT_EQ(j.size(), 2U);
  for (const char* key : {"iteration", "component_sizes", "chosen_j", "chosen_c", "edge_weight_added"}) {
    EXPECT_TRUE(j[0].contains(key)) << key;
  }
  EXPECT_EQ(j[1]["edge_weight_added"], 3.0);
}

TEST(Report, AllSolversAgreeOnC4) {
  const SolveReport rep = solve_report(fixtures::c4(), SolveOptions{}, Json{{"source", "test"}});
  const Json& solvers = rep.json["solvers"];
  ASSERT_EQ(solvers.size(), 5U);
  for (const Json& s : solvers) {
    EXPECT_EQ(s["status"], "ok") << s["name"];
    EXPECT_EQ(s["value"], 4.0) << s["name"];
    EXPECT_TRUE(s["certified"].get<bool>()) << s["name"];
  }
  EXPECT_TRUE(rep.all_certified);
  EXPECT_EQ(rep.json["oracle"]["status"], "computed");
  EXPECT_EQ(rep.json["oracle"]["cheeger"], 1.0);
  EXPECT_TRUE(rep.json["conditions"]["eigenvalue_psd_condition"]["holds"].get<bool>());
}

TEST(Report, OracleSectionIsExplicitlySkippedForLargeGraphs) {
  const WeightedGraph g = gen_planted(20, WeightDistribution::uniform(0.5, 1.5), 3.0, 1).graph;
  SolveOptions opts;
  opts.solver = "greedy";
  const SolveReport rep = solve_report(g, opts, Json::object());
  EXPECT_EQ(rep.json["oracle"]["status"], "skipped");
  EXPECT_EQ(rep.json["oracle"]["reason"], "n > limit");
  EXPECT_EQ(rep.json["conditions"]["cut_source"], "best_solver");
}

TEST(Report, ExplicitOracleAboveLimitThrows) {
  SolveOptions opts;
  opts.solver = "oracle";
  opts.oracle.max_n = 4;
  EXPECT_THROW(solve_report(fixtures::complete(5), opts, Json::object()), SizeLimitError);
}

TEST(Report, ContractionSolverNeedsSimpleGraph) {
  SolveOptions opts;
  opts.solver = "contract";
  EXPECT_THROW(solve_report(fixtures::triangle(), opts, Json::object()), ValidationError);
  opts.solver = "all";
  const SolveReport rep = solve_report(fixtures::triangle(), opts, Json::object());
  EXPECT_EQ(rep.json["solvers"][1]["status"], "skipped");
}

TEST(Report, DeterministicWithoutTiming) {
  const WeightedGraph g = fixtures::random_weighted(10, 0.6, 4);
  const std::string a = solve_report(g, SolveOptions{}, Json::object()).json.dump();
  const std::string b = solve_report(g, SolveOptions{}, Json::object()).json.dump();
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.find("wall_ms"), std::string::npos);
}

TEST(Report, SidecarFields) {
  const PlantedInstance inst = gen_planted(4, WeightDistribution::constant(1.0), 2.0, 3);
  const Json j = sidecar(3, "planted", Json{{"n", 4}}, inst.planted);
  EXPECT_EQ(j["seed"], 3);
  EXPECT_EQ(j["model"], "planted");
  EXPECT_EQ(j["planted_cut"].size(), 4U);
  EXPECT_EQ(sidecar(0, "gnp", Json::object(), std::nullopt)["planted_cut"], nullptr);
}

TEST(Report, SpectrumAndVerify) {
  const Json s = spectrum_report(fixtures::c4(), OracleOptions{}, 16, Tolerances{}, Json::object());
  EXPECT_EQ(s["spectrum"].size(), 4U);
  EXPECT_NEAR(s["spectrum"][3].get<double>(), -2.0, 1e-12);
  EXPECT_TRUE(s["conditions"]["kernel_certificate"]["psd"].get<bool>());
  const Json v = verify_report(fixtures::triangle(), OracleOptions{}, Json::object());
  EXPECT_NEAR(v["oracle"]["gamma_star"].get<double>(), 2.0, 1e-12);
}

}  // namespace
}  // namespace stablecut
