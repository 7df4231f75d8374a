#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "suspension/cli.hpp"

using namespace suspension;

namespace {

std::size_t line_count(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::size_t n = 0;
  for (std::string s; std::getline(f, s);)
    ++n;
  return n;
}

} // namespace

TEST(Config, RoundTripsEveryPreset) {
  for (const auto& [name, text] : preset_texts()) {
    SystemConfig a = parse_config(text);
    SystemConfig b = parse_config(render_config(a));
    EXPECT_EQ(a, b) << name;
    EXPECT_EQ(config_hash(a), config_hash(b)) << name;
  }
}

TEST(Config, HashTracksContent) {
  SystemConfig a = preset_config("example-4.1");
  SystemConfig b = a;
  b.options["horizon"] = "300";
  EXPECT_NE(config_hash(a), config_hash(b));
  EXPECT_EQ(config_hash(a).size(), 16u);
}

TEST(Config, CommentsAndWhitespace) {
  auto cfg = parse_config("# header\n[alphabet]\n  symbols = a b c   # three\n\n[shift]\nkind = forbidden\n"
                          "forbidden = a a\n[roof]\nvalue = a : 1\nvalue = b : 2\nvalue = c : 3/2\n");
  EXPECT_EQ(cfg.alphabet, (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(cfg.shift.kind, "forbidden");
  ASSERT_TRUE(cfg.roof);
  EXPECT_EQ(cfg.roof->values.size(), 3u);
  System sys = build_system(cfg);
  ASSERT_TRUE(sys.edge_shift);
  EXPECT_EQ(cmd_decide(sys).exit_code, 10);
}

TEST(Config, ParseErrorsCarryPosition) {
  auto where = [](const std::string& text) -> std::pair<int, int> {
    try {
      parse_config(text);
    } catch (const ParseError& e) {
      return {e.line(), e.column()};
    }
    return {0, 0};
  };
  EXPECT_EQ(where("[alphabet]\nsymbols = 0 1\n[bogus]\n"), std::make_pair(3, 1));
  EXPECT_EQ(where("[alphabet]\nsymbols = 0 1\n[shift]\n  kind = nope\n"), std::make_pair(4, 10));
  EXPECT_EQ(where("[alphabet]\nsymbols = 0 1\n[roof]\npast = -1\n"), std::make_pair(4, 8));
  EXPECT_EQ(where("[alphabet]\nsymbols = 0 1\n[shift]\njust words\n"), std::make_pair(4, 1));
  EXPECT_EQ(where("symbols = 0 1\n"), std::make_pair(1, 1));
  EXPECT_EQ(where("[alphabet\n"), std::make_pair(1, 1));
  EXPECT_EQ(where("[shift]\nkind = full\n"), std::make_pair(2, 1));
  EXPECT_EQ(where("[alphabet]\nsymbols = 0 1\n[shift]\nfamily = 2 3\n"), std::make_pair(4, 10));
}

TEST(Config, BuildRejectsBadSystems) {
  auto build = [](const std::string& text) { return build_system(parse_config(text)); };
  EXPECT_THROW(build("[alphabet]\nsymbols = 0 1\n[roof]\nvalue = 0 : 1\n"), Error);
  EXPECT_THROW(build("[alphabet]\nsymbols = 0 1\n[roof]\nvalue = 0 : -1\nvalue = 1 : 1\n"), Error);
  EXPECT_THROW(build("[alphabet]\nsymbols = 0 1\n[roof]\nvalue = 0 : c\nvalue = 1 : 1\n"), Error);
  EXPECT_THROW(preset_config("nope"), InvalidArgument);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(exit_code_for(VerdictKind::TopMixing), 0);
  EXPECT_EQ(exit_code_for(VerdictKind::NotTopMixing), 10);
  EXPECT_EQ(exit_code_for(VerdictKind::NotMixingUpToBound), 11);
  EXPECT_EQ(exit_code_for(VerdictKind::Unknown), 20);

  EXPECT_EQ(cmd_decide(build_system(preset_config("example-4.1"))).exit_code, 10);
  EXPECT_EQ(cmd_decide(build_system(preset_config("example-4.3"))).exit_code, 11);
  EXPECT_EQ(cmd_decide(build_system(preset_config("mixing-alpha"))).exit_code, 0);
  EXPECT_EQ(cmd_decide(build_system(preset_config("two-orbit"))).exit_code, 20);
  EXPECT_EQ(cmd_decide(build_system(preset_config("example-4.2"))).exit_code, 20);
  EXPECT_EQ(cmd_decide(build_system(preset_config("golden-beta"))).exit_code, 0);
}

TEST(Cli, DecideReport) {
  auto r = cmd_decide(build_system(preset_config("example-4.1")));
  EXPECT_EQ(r.report["command"], "decide");
  EXPECT_EQ(r.report["result"]["verdict"], "NotTopMixing");
  EXPECT_TRUE(r.report["provenance"].contains("config_hash"));
  EXPECT_NE(r.text.find("delta = 1"), std::string::npos);
}

TEST(Cli, Cohomology) {
  System sys = build_system(preset_config("example-4.1"));
  auto test = cmd_cohomology(sys, "test");
  EXPECT_EQ(test.text, "not cohomologous\nwitness orbit 0 with obstruction -1/2\n");

  auto norm = cmd_cohomology(sys, "normalize");
  EXPECT_NE(norm.text.find("delta = 1"), std::string::npos);

  auto section = cmd_cohomology(sys, "section");
  EXPECT_EQ(section.text.substr(0, section.text.find('\n')), "5 vertices, 7 edges");

  System mixing = build_system(preset_config("mixing-alpha"));
  EXPECT_THROW(cmd_cohomology(mixing, "normalize"), InvalidArgument);
  EXPECT_THROW(cmd_cohomology(mixing, "section"), InvalidArgument);
  EXPECT_THROW(cmd_cohomology(sys, "bogus"), InvalidArgument);
  EXPECT_THROW(cmd_cohomology(build_system(preset_config("example-4.3")), "test"), InvalidArgument);
}

TEST(Cli, Beta) {
  auto r = cmd_beta("rational 3/2", 6, 12);
  EXPECT_EQ(r.report["nu_prefix"], "101000001001");
  auto g = cmd_beta("quadratic 1/2 1/2 5", 8, 5);
  EXPECT_EQ(g.report["nu_prefix"], "11000");
  EXPECT_TRUE(g.report["finite_expansion"].get<bool>());
  for (const auto& c : g.report["spot_checks"])
    EXPECT_EQ(c["graph_words"], c["beta_words"]);
  EXPECT_THROW(cmd_beta("rational 1/2", 6, 12), Error);
}

TEST(Cli, SimulateWritesCsv) {
  const auto dir = std::filesystem::temp_directory_path() / ("suspension_cli_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  auto r = cmd_simulate(build_system(preset_config("constant")), std::nullopt, dir.string());
  EXPECT_EQ(r.report["hits"], 21);
  EXPECT_EQ(line_count(dir / "series.csv"), 22u);
  EXPECT_TRUE(std::filesystem::exists(dir / "diagnostic.csv"));
  EXPECT_EQ(r.report["diagnostic"]["suggestion"], "non-mixing-consistent");
  std::filesystem::remove_all(dir);
}

TEST(Cli, SimulateExample41) {
  auto run = run_simulation(build_system(preset_config("example-4.1")));
  ASSERT_TRUE(run.diagnostic.grid_fraction);
  EXPECT_EQ(*run.diagnostic.grid_fraction, 1.0);
  EXPECT_GT(run.series.times.size(), 100u);
  EXPECT_THROW(run_simulation(build_system(preset_config("example-4.3"))), InvalidArgument);
}

TEST(Cli, Examples) {
  auto r = cmd_examples("two-orbit");
  EXPECT_EQ(r.exit_code, 0) << r.text;
  EXPECT_TRUE(r.report["examples"]["two-orbit"]["pass"].get<bool>());
  EXPECT_THROW(cmd_examples("nope"), InvalidArgument);
}
