#pragma once

// Command implementations behind the suspflow tool. Each command returns a
// JSON report, a short text summary and an exit code.

#include <chrono>
#include <filesystem>
#include <functional>
#include <numeric>

#include "config.hpp"
#include "report.hpp"

namespace suspension {

inline constexpr const char* kToolVersion = "0.1.0";

struct CommandResult {
  Json report;
  std::string text;
  int exit_code = 0;
};

/// 0 TopMixing, 10 NotTopMixing, 11 NotMixingUpToBound, 20 Unknown.
inline int exit_code_for(VerdictKind k) {
  switch (k) {
  case VerdictKind::TopMixing:
    return 0;
  case VerdictKind::NotTopMixing:
    return 10;
  case VerdictKind::NotMixingUpToBound:
    return 11;
  case VerdictKind::Unknown:
    return 20;
  }
  return 20;
}

inline Json provenance(const SystemConfig& cfg) {
  return Json{{"config_hash", config_hash(cfg)}, {"tool_version", kToolVersion}};
}

/// Decider for the shift kind of the system.
inline MixingVerdict decide_system(const System& sys, std::optional<std::size_t> bound_override = std::nullopt) {
  const std::size_t bound = bound_override.value_or(sys.count_option("bound", 10));
  if (sys.evaluable)
    return MixingVerdict::unknown("roof '" + sys.evaluable->name() +
                                  "' is not locally constant; approximate it first (see approximate_locally_constant)");
  if (!sys.roof)
    throw InvalidArgument("config has no [roof]");
  if (sys.edge_shift)
    return decide_mixing_sft(*sys.edge_shift, *sys.roof);
  if (sys.coded) {
    Word v = sys.word_option("cylinder", Word{0});
    return decide_mixing_synchronized(coded_oracle(*sys.coded), *sys.roof, v, bound);
  }
  if (sys.beta)
    return decide_mixing_beta(*sys.beta, *sys.roof, sys.config.shift.depth, bound);
  if (sys.two_orbit)
    return MixingVerdict::unknown("the two-orbit shift has no synchronizing word and its periodic points are not dense");
  throw InvalidArgument("unsupported shift kind '" + sys.config.shift.kind + "'");
}

inline CommandResult cmd_decide(const System& sys, std::optional<std::size_t> bound = std::nullopt) {
  MixingVerdict v = decide_system(sys, bound);
  CommandResult out;
  out.report = Json{{"command", "decide"}, {"shift", sys.config.shift.kind}};
  out.report["result"] = to_json(v, sys.alphabet);
  out.report["provenance"] = provenance(sys.config);
  out.text = to_string(v.kind);
  if (v.delta)
    out.text += " delta = " + to_string(*v.delta);
  out.text += "\n" + v.reason + "\n";
  for (const auto& w : v.warnings)
    out.text += "warning: " + w + "\n";
  out.exit_code = exit_code_for(v.kind);
  return out;
}

inline CommandResult cmd_cohomology(const System& sys, const std::string& mode) {
  if (!sys.edge_shift)
    throw InvalidArgument("cohomology needs a shift of finite type");
  if (!sys.roof)
    throw InvalidArgument("cohomology needs a locally constant [roof]");
  const EdgeShift& shift = *sys.edge_shift;
  CommandResult out;
  out.report = Json{{"command", "cohomology"}, {"mode", mode}};
  if (mode == "test") {
    const LocallyConstantRoof& s = sys.compare ? *sys.compare : *sys.roof;
    CohomologyResult c = are_cohomologous(*sys.roof, s, shift);
    out.report["result"] = to_json(c, sys.alphabet);
    out.text = c.cohomologous ? "cohomologous\n" : "not cohomologous\n";
    if (c.witness)
      out.text += "witness orbit " + to_string(*c.witness, sys.alphabet) + " with obstruction " +
                  to_string(*c.obstruction) + "\n";
  } else if (mode == "normalize" || mode == "section") {
    MixingVerdict v = decide_mixing_sft(shift, *sys.roof);
    if (v.kind != VerdictKind::NotTopMixing)
      throw InvalidArgument("refusing to " + mode + ": the verdict is " + to_string(v.kind) +
                            ", so no common period delta exists");
    if (mode == "normalize") {
      NormalizedRoof n = normalize_to_delta_grid(shift, *sys.roof, *v.delta);
      out.report["result"] = Json{{"delta", to_string(n.delta)},
                                  {"transfer", to_json(n.g, sys.alphabet)},
                                  {"normalized_roof", to_json(n.s, sys.alphabet)}};
      out.text = "delta = " + to_string(n.delta) + "\n";
      for (const auto& [w, x] : n.s.table())
        out.text += "s(" + to_string(w, sys.alphabet) + ") = " + to_string(x) + "\n";
    } else {
      CrossSection c = unit_cross_section(shift, *sys.roof, *v.delta);
      out.report["result"] = to_json(c);
      out.text = std::to_string(c.graph.vertex_count()) + " vertices, " + std::to_string(c.graph.edge_count()) +
                 " edges\n";
      for (const auto& e : c.graph.edges())
        out.text += c.graph.vertex_name(e.source) + " -> " + c.graph.vertex_name(e.target) + "\n";
    }
  } else {
    throw InvalidArgument("unknown cohomology mode '" + mode + "' (test, normalize, section)");
  }
  out.report["provenance"] = provenance(sys.config);
  return out;
}

/// Witness family, hitting times and the residue diagnostic.
struct SimulationRun {
  ReturnTimeSeries series;
  MixingDiagnostic diagnostic;
  std::size_t family_size = 0;
};

inline SimulationRun run_simulation(const System& sys, std::optional<double> horizon_override = std::nullopt) {
  if (!sys.edge_shift)
    throw InvalidArgument("simulate needs a shift of finite type");
  if (!sys.roof && !sys.evaluable)
    throw InvalidArgument("simulate needs a [roof]");
  const EdgeShift& shift = *sys.edge_shift;
  const double horizon = horizon_override.value_or(sys.real_option("horizon", 100.0));
  const Word target = sys.word_option("target", Word{0});
  if (!is_word_admissible(shift, target))
    throw InvalidArgument("target cylinder is not admissible");
  const double min_roof = sys.roof ? sys.roof->min_value() : sys.evaluable->floor();
  const double eps = sys.real_option("epsilon", min_roof / 10);

  std::vector<SuspensionPoint> family;
  if (sys.config.option("witness_u")) {
    auto first = parse_count_list(sys.string_option("first_counts", "0"));
    auto second = parse_count_list(sys.string_option("second_counts", "0"));
    for (auto& w : witness_family(shift, sys.word_option("witness_u"), sys.word_option("witness_w"),
                                  sys.word_option("witness_v1"), sys.word_option("witness_v2"),
                                  sys.word_option("witness_zeta"), first, second))
      family.push_back({std::move(w.point), 0.0, false});
  } else {
    family.push_back({close_orbit(shift, target), 0.0, false});
  }

  std::optional<double> delta;
  if (auto d = sys.config.option("delta"))
    delta = detail::parse_real(*d, 0, 0);
  else if (sys.roof) {
    MixingVerdict v = decide_mixing_sft(shift, *sys.roof);
    if (v.delta)
      delta = v.delta->value();
  }
  const double omega = sys.real_option("omega", delta.value_or(1.0));
  HittingOptions opts{sys.count_option("max_hits", 0), sys.count_option("threads", 0)};
  SimulationRun run{sys.roof ? hitting_times(family, target, eps, *sys.roof, horizon, omega, opts)
                             : hitting_times(family, target, eps, *sys.evaluable, horizon, omega, opts),
                    {},
                    family.size()};
  run.diagnostic = density_diagnostic(run.series, delta);
  return run;
}

inline CommandResult cmd_simulate(const System& sys, std::optional<double> horizon, const std::string& out_dir) {
  SimulationRun run = run_simulation(sys, horizon);
  CommandResult out;
  out.report = Json{{"command", "simulate"}, {"family_size", run.family_size}, {"hits", run.series.times.size()}};
  out.report["diagnostic"] = to_json(run.diagnostic);
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    const auto series = (std::filesystem::path(out_dir) / "series.csv").string();
    const auto diag = (std::filesystem::path(out_dir) / "diagnostic.csv").string();
    export_series(run.series, series);
    export_diagnostic(run.diagnostic, diag);
    out.report["files"] = {series, diag};
  }
  out.report["provenance"] = provenance(sys.config);
  std::ostringstream t;
  t << std::setprecision(6) << run.diagnostic.suggestion << ": " << run.series.times.size() << " hits, max gap "
    << run.diagnostic.max_gap;
  if (run.diagnostic.grid_fraction)
    t << ", grid fraction " << *run.diagnostic.grid_fraction;
  t << "\n";
  out.text = t.str();
  return out;
}

inline CommandResult cmd_beta(const std::string& spec, std::size_t depth, std::size_t n) {
  BetaShift shift(parse_beta(spec), std::max<std::size_t>(n, 1));
  CommandResult out;
  std::string prefix;
  for (Symbol d : shift.nu())
    prefix += std::to_string(d);
  EdgeShift g = build_beta_graph(shift, depth);
  out.report = Json{{"command", "beta"}, {"beta", describe(shift.beta())}, {"nu_prefix", prefix},
                    {"finite_expansion", shift.finite_expansion()}};
  out.report["graph"] = Json{{"depth", depth},
                             {"vertices", g.vertex_count()},
                             {"edges", g.edge_count()},
                             {"transitive", is_transitive(g)},
                             {"base_period", base_period(g)}};
  Json checks = Json::array();
  for (std::size_t len = 1; len <= 6; ++len) {
    Json c{{"length", len}};
    auto words = admissible_words(g, len);
    c["graph_words"] = words.size();
    try {
      std::size_t count = 0;
      std::vector<Word> all;
      Word cur;
      detail::enumerate_words(shift.alphabet(), len, cur, all);
      for (const auto& w : all)
        count += is_beta_admissible(w, shift) ? 1 : 0;
      c["beta_words"] = count;
    } catch (const Error& e) {
      c["beta_words"] = nullptr;
      c["note"] = e.what();
    }
    checks.push_back(c);
  }
  out.report["spot_checks"] = checks;
  out.text = "nu = " + prefix + (shift.finite_expansion() ? "" : "...") + "\ngraph: " +
             std::to_string(g.vertex_count()) + " vertices, " + std::to_string(g.edge_count()) + " edges\n";
  return out;
}

namespace detail {

/// Whether g (ignoring labels and multiplicity) is isomorphic to the simple
/// digraph on `n` vertices with the given arcs.
inline bool isomorphic_to(const EdgeShift& g, std::size_t n, const std::vector<std::pair<int, int>>& arcs) {
  if (g.vertex_count() != n || g.edge_count() != arcs.size())
    return false;
  std::set<std::pair<int, int>> want(arcs.begin(), arcs.end());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::set<std::pair<int, int>> got;
    for (const auto& e : g.edges())
      got.insert({perm[e.source], perm[e.target]});
    if (got == want)
      return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

struct CheckList {
  Json items = Json::array();
  bool all = true;

  void add(const std::string& name, bool pass, const std::string& detail = {}) {
    items.push_back(Json{{"check", name}, {"pass", pass}, {"detail", detail}});
    all = all && pass;
  }
};

inline CheckList example_4_1() {
  CheckList c;
  System sys = build_system(preset_config("example-4.1"));
  const EdgeShift& shift = *sys.edge_shift;
  const auto& r = *sys.roof;
  MixingVerdict v = decide_mixing_sft(shift, r);
  c.add("verdict NotTopMixing", v.kind == VerdictKind::NotTopMixing, to_string(v.kind));
  c.add("delta = 1", v.delta && *v.delta == QVector::constant(sys.basis, 1), v.delta ? to_string(*v.delta) : "none");
  NormalizedRoof n = normalize_to_delta_grid(shift, r, *v.delta);
  std::set<Rational> values;
  bool integral = true;
  for (const auto& [w, x] : n.s.table()) {
    integral = integral && x.is_rational() && is_integer(x.rational_part());
    if (x.is_rational())
      values.insert(x.rational_part());
  }
  c.add("normalized roof takes values {2, 3}", integral && values == std::set<Rational>{2, 3});
  CrossSection cs = unit_cross_section(shift, r, *v.delta);
  c.add("cross-section matches the 5-vertex, 7-edge graph",
        isomorphic_to(cs.graph, 5, {{0, 1}, {1, 0}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {4, 2}}));
  c.add("cross-section base period 1", base_period(cs.graph) == 1);
  CohomologyResult h = are_cohomologous(r, *sys.compare, shift);
  c.add("not cohomologous to 5/2, obstruction -1/2 on 0̄",
        !h.cohomologous && h.witness && h.obstruction &&
            (*h.witness == Word{0} ? *h.obstruction == QVector::constant(sys.basis, Rational(-1, 2))
                                   : !h.obstruction->is_zero()),
        h.witness ? to_string(*h.witness, sys.alphabet) : "none");
  auto zero = EventuallyPeriodicPoint::periodic({0});
  auto p = flow({zero, 0.0, false}, 2.0, r);
  c.add("flow of (0̄, 0) for time 2 returns", p.base == zero && std::abs(p.height) < 1e-12);
  auto alt = EventuallyPeriodicPoint::periodic({0, 1});
  auto q = flow({alt, 0.0, false}, 5.0, r);
  c.add("flow of ((01)‾, 0) for time 5 returns", q.base == alt && std::abs(q.height) < 1e-12);
  c.add("Walters norm of the constant roof 1 is 2",
        walters_norm(LocallyConstantRoof::constant(sys.basis, QVector::constant(sys.basis, 1), sys.alphabet), shift)
                .exact == Rational(2));
  SimulationRun run = run_simulation(sys);
  c.add("hitting times concentrate on Z", run.diagnostic.grid_fraction && *run.diagnostic.grid_fraction == 1.0,
        run.diagnostic.suggestion);
  return c;
}

inline CheckList example_4_2() {
  CheckList c;
  System sys = build_system(preset_config("example-4.2"));
  const auto& roof = *sys.evaluable;
  bool formula = true;
  for (std::size_t m = 0; m <= 12; ++m)
    for (std::size_t k = 0; k <= 12; ++k) {
      Word core = concat({{1, 1}, Word(m, 0), Word(k, 1)});
      EventuallyPeriodicPoint x({1}, core, {1}, 0);
      double expected = 1.0 + 1.0 + static_cast<double>(m + k);
      for (std::size_t j = 2; j <= m + 1; ++j)
        expected += 1.0 / static_cast<double>(j);
      formula = formula && std::abs(birkhoff_sum(roof, x, static_cast<long>(core.size())) - expected) < 1e-9;
    }
  c.add("witness Birkhoff sums match the harmonic formula", formula);
  SimulationRun run = run_simulation(sys);
  c.add("residues mod 1 have max gap below 0.01", run.diagnostic.max_gap < 0.01,
        std::to_string(run.diagnostic.max_gap));
  c.add("diagnostic suggests mixing", run.diagnostic.suggestion == "mixing-consistent", run.diagnostic.suggestion);
  return c;
}

inline CheckList example_4_3() {
  CheckList c;
  System sys = build_system(preset_config("example-4.3"));
  const auto& g = *sys.coded;
  const auto& r = *sys.roof;
  QVector ab = parse_qvector("a + b", sys.basis);
  bool multiples = true;
  auto points = coded_periodic_in_cylinder(g, {0}, 10);
  for (const auto& p : points) {
    auto per = *p.period();
    QVector s = birkhoff_sum(r, p, static_cast<long>(per));
    auto ratio = s.ratio_to(ab);
    multiples = multiples && ratio && is_integer(*ratio) && *ratio > 0;
  }
  c.add("orbit sums through [0] are multiples of a + b", multiples && !points.empty(),
        std::to_string(points.size()) + " orbits");
  MixingVerdict v = decide_system(sys);
  c.add("verdict NotMixingUpToBound(a + b)",
        v.kind == VerdictKind::NotMixingUpToBound && v.delta && *v.delta == ab,
        v.delta ? to_string(*v.delta) : to_string(v.kind));
  std::vector<QVector> spectrum;
  for (const auto& w : periodic_words_in_cylinder(coded_oracle(g), {}, 6))
    spectrum.push_back(birkhoff_sum(r, EventuallyPeriodicPoint::periodic(w), static_cast<long>(w.size())));
  c.add("global periodic spectrum has rank 2", span_rank(spectrum) == 2);
  c.add("2 is not synchronizing", coded_synchronizing(g, {2}) == std::optional<bool>(false));
  return c;
}

inline CheckList example_two_orbit() {
  CheckList c;
  TwoOrbitShift s;
  auto orbits = two_orbit_periodic_words(s, 12);
  c.add("periodic scan to 12 finds exactly 1̄ and (01)‾", orbits == std::vector<Word>{{0, 1}, {1}});
  bool connectors = true;
  for (const auto& [u, v] : std::vector<std::pair<Word, Word>>{{{1, 0, 1}, {0, 0, 0, 1}}, {{0, 1, 1}, {1, 0, 1, 0}}})
    connectors = connectors && find_connectors(s, u, v, 2, 20).has_value();
  c.add("connectors exist for every 2 <= n <= 20", connectors);
  return c;
}

inline CheckList example_golden_beta() {
  CheckList c;
  System sys = build_system(preset_config("golden-beta"));
  const auto& b = *sys.beta;
  Word nu(b.nu().begin(), b.nu().begin() + 5);
  c.add("nu(phi) = 1 1 0 0 0", nu == Word{1, 1, 0, 0, 0} && b.finite_expansion());
  EdgeShift g = build_beta_graph(b, sys.config.shift.depth);
  EdgeShift golden = sft_from_forbidden_words(Alphabet::digits(2), {{1, 1}});
  bool same = true;
  for (std::size_t n = 1; n <= 6; ++n)
    same = same && admissible_words(g, n) == admissible_words(golden, n);
  c.add("truncated graph language equals the golden mean shift", same);
  MixingVerdict v = decide_system(sys);
  c.add("roof {1, alpha} is mixing", v.kind == VerdictKind::TopMixing, to_string(v.kind));
  auto one = LocallyConstantRoof::constant(sys.basis, QVector::constant(sys.basis, 1), b.alphabet());
  MixingVerdict w = decide_mixing_beta(b, one, sys.config.shift.depth, 10);
  c.add("constant roof 1 is not mixing up to the bound",
        w.kind == VerdictKind::NotMixingUpToBound && w.delta && *w.delta == QVector::constant(sys.basis, 1));
  return c;
}

} // namespace detail

inline const std::vector<std::pair<std::string, std::function<detail::CheckList()>>>& example_registry() {
  static const std::vector<std::pair<std::string, std::function<detail::CheckList()>>> r{
      {"4.1", detail::example_4_1},
      {"4.2", detail::example_4_2},
      {"4.3", detail::example_4_3},
      {"two-orbit", detail::example_two_orbit},
      {"golden-beta", detail::example_golden_beta},
  };
  return r;
}

inline CommandResult cmd_examples(std::string name) {
  if (name.rfind("example-", 0) == 0)
    name = name.substr(8);
  const auto& reg = example_registry();
  std::vector<std::pair<std::string, std::function<detail::CheckList()>>> chosen;
  for (const auto& e : reg)
    if (name == "all" || e.first == name)
      chosen.push_back(e);
  if (chosen.empty()) {
    std::string names = "all";
    for (const auto& e : reg)
      names += ", " + e.first;
    throw InvalidArgument("unknown example '" + name + "' (available: " + names + ")");
  }
  CommandResult out;
  out.report = Json{{"command", "examples"}};
  Json results = Json::object();
  bool all = true;
  for (const auto& [n, fn] : chosen) {
    auto t0 = std::chrono::steady_clock::now();
    detail::CheckList c = fn();
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    results[n] = Json{{"pass", c.all}, {"seconds", secs}, {"checks", c.items}};
    for (const auto& item : c.items)
      out.text += std::string(item["pass"].get<bool>() ? "PASS " : "FAIL ") + n + ": " +
                  item["check"].get<std::string>() + "\n";
    all = all && c.all;
  }
  out.report["examples"] = results;
  out.exit_code = all ? 0 : 1;
  return out;
}

} // namespace suspension
