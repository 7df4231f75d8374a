#pragma once

// Line-oriented system description:
//
//   # comment
//   [section]
//   key = value
//
// Sections: alphabet, shift, basis, roof, compare, options. Repeated keys
// (edge, forbidden, generator, element, value) accumulate in order.

#include <cstdint>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "beta.hpp"
#include "coded.hpp"
#include "roofs.hpp"
#include "shift.hpp"
#include "two_orbit.hpp"

namespace suspension {

struct RoofSpec {
  std::size_t past = 0;
  std::size_t future = 0;
  std::vector<std::pair<std::string, std::string>> values; ///< window text, value text
  std::string named;                                       ///< built-in evaluable roof

  bool operator==(const RoofSpec&) const = default;
};

struct EdgeSpec {
  std::string source;
  std::string target;
  std::string label;

  bool operator==(const EdgeSpec&) const = default;
};

struct ShiftSpec {
  std::string kind = "full"; ///< full | forbidden | edges | beta | coded | two-orbit
  std::vector<std::string> forbidden;
  std::vector<EdgeSpec> edges;
  std::string beta;
  std::size_t depth = 8;
  std::vector<std::string> generators;
  std::string family; ///< "first second max_n" for coded shifts
  std::size_t level = 0; ///< two-orbit block bound i (0: the union S)

  bool operator==(const ShiftSpec&) const = default;
};

struct SystemConfig {
  std::vector<std::string> alphabet;
  ShiftSpec shift;
  std::vector<std::pair<std::string, double>> basis;
  std::optional<RoofSpec> roof;
  std::optional<RoofSpec> compare;
  std::map<std::string, std::string> options;

  bool operator==(const SystemConfig&) const = default;

  std::optional<std::string> option(const std::string& key) const {
    auto it = options.find(key);
    if (it == options.end())
      return std::nullopt;
    return it->second;
  }
};

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
    ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
    --b;
  return std::string(s.substr(a, b - a));
}

inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string t; in >> t;)
    out.push_back(t);
  return out;
}

inline std::size_t parse_count(const std::string& text, std::size_t line, std::size_t col) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(text, &used);
    if (used != text.size() || v < 0)
      throw ParseError("expected a non-negative integer, got '" + text + "'", line, col);
    return static_cast<std::size_t>(v);
  } catch (const std::logic_error&) {
    throw ParseError("expected a non-negative integer, got '" + text + "'", line, col);
  }
}

inline double parse_real(const std::string& text, std::size_t line, std::size_t col) {
  try {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used != text.size())
      throw ParseError("expected a number, got '" + text + "'", line, col);
    return v;
  } catch (const std::logic_error&) {
    throw ParseError("expected a number, got '" + text + "'", line, col);
  }
}

} // namespace detail

inline SystemConfig parse_config(std::string_view text) {
  SystemConfig cfg;
  std::string section;
  std::size_t line_no = 0;
  bool saw_alphabet = false;
  std::istringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    auto hash = raw.find('#');
    std::string line = raw.substr(0, hash);
    std::string t = detail::trim(line);
    if (t.empty())
      continue;
    const std::size_t indent = line.find_first_not_of(" \t") + 1;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw ParseError("unterminated section header", line_no, indent);
      section = detail::trim(std::string_view(t).substr(1, t.size() - 2));
      static const std::vector<std::string> known{"alphabet", "shift", "basis", "roof", "compare", "options"};
      if (std::find(known.begin(), known.end(), section) == known.end())
        throw ParseError("unknown section [" + section + "]", line_no, indent);
      if (section == "roof" && !cfg.roof)
        cfg.roof.emplace();
      if (section == "compare" && !cfg.compare)
        cfg.compare.emplace();
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("expected 'key = value'", line_no, indent);
    if (section.empty())
      throw ParseError("key outside any section", line_no, indent);
    std::string key = detail::trim(std::string_view(line).substr(0, eq));
    std::string value = detail::trim(std::string_view(line).substr(eq + 1));
    std::size_t vcol = line.find_first_not_of(" \t", eq + 1);
    vcol = vcol == std::string::npos ? line.size() + 1 : vcol + 1;
    auto unknown_key = [&] { return ParseError("unknown key '" + key + "' in [" + section + "]", line_no, indent); };

    if (section == "alphabet") {
      if (key != "symbols")
        throw unknown_key();
      cfg.alphabet = detail::split_ws(value);
      if (cfg.alphabet.empty())
        throw ParseError("empty alphabet", line_no, vcol);
      saw_alphabet = true;
    } else if (section == "shift") {
      auto& s = cfg.shift;
      if (key == "kind") {
        static const std::vector<std::string> kinds{"full", "forbidden", "edges", "beta", "coded", "two-orbit"};
        if (std::find(kinds.begin(), kinds.end(), value) == kinds.end())
          throw ParseError("unknown shift kind '" + value + "'", line_no, vcol);
        s.kind = value;
      } else if (key == "forbidden") {
        s.forbidden.push_back(value);
      } else if (key == "edge") {
        auto parts = detail::split_ws(value);
        if (parts.size() != 3)
          throw ParseError("edge needs 'source target label'", line_no, vcol);
        s.edges.push_back({parts[0], parts[1], parts[2]});
      } else if (key == "beta") {
        s.beta = value;
      } else if (key == "depth") {
        s.depth = detail::parse_count(value, line_no, vcol);
      } else if (key == "generator") {
        s.generators.push_back(value);
      } else if (key == "family") {
        if (detail::split_ws(value).size() != 3)
          throw ParseError("family needs 'first second max_n'", line_no, vcol);
        s.family = value;
      } else if (key == "level") {
        s.level = detail::parse_count(value, line_no, vcol);
      } else {
        throw unknown_key();
      }
    } else if (section == "basis") {
      if (key != "element")
        throw unknown_key();
      auto parts = detail::split_ws(value);
      if (parts.size() != 2)
        throw ParseError("element needs 'name approximation'", line_no, vcol);
      cfg.basis.emplace_back(parts[0], detail::parse_real(parts[1], line_no, vcol));
    } else if (section == "roof" || section == "compare") {
      auto& r = section == "roof" ? *cfg.roof : *cfg.compare;
      if (key == "past") {
        r.past = detail::parse_count(value, line_no, vcol);
      } else if (key == "future") {
        r.future = detail::parse_count(value, line_no, vcol);
      } else if (key == "value") {
        auto colon = value.find(':');
        if (colon == std::string::npos)
          throw ParseError("value needs 'window : number'", line_no, vcol);
        r.values.emplace_back(detail::trim(std::string_view(value).substr(0, colon)),
                              detail::trim(std::string_view(value).substr(colon + 1)));
      } else if (key == "name") {
        r.named = value;
      } else {
        throw unknown_key();
      }
    } else {
      cfg.options[key] = value;
    }
  }
  if (!saw_alphabet && cfg.shift.kind != "beta" && cfg.shift.kind != "two-orbit")
    throw ParseError("missing [alphabet] symbols", line_no == 0 ? 1 : line_no, 1);
  return cfg;
}

inline std::string render_config(const SystemConfig& cfg) {
  std::ostringstream out;
  out << std::setprecision(17);
  if (!cfg.alphabet.empty()) {
    out << "[alphabet]\nsymbols =";
    for (const auto& a : cfg.alphabet)
      out << ' ' << a;
    out << "\n\n";
  }
  const auto& s = cfg.shift;
  out << "[shift]\nkind = " << s.kind << '\n';
  for (const auto& f : s.forbidden)
    out << "forbidden = " << f << '\n';
  for (const auto& e : s.edges)
    out << "edge = " << e.source << ' ' << e.target << ' ' << e.label << '\n';
  if (!s.beta.empty())
    out << "beta = " << s.beta << '\n';
  if (s.depth != ShiftSpec{}.depth)
    out << "depth = " << s.depth << '\n';
  for (const auto& g : s.generators)
    out << "generator = " << g << '\n';
  if (!s.family.empty())
    out << "family = " << s.family << '\n';
  if (s.level != 0)
    out << "level = " << s.level << '\n';
  if (!cfg.basis.empty()) {
    out << "\n[basis]\n";
    for (const auto& [name, x] : cfg.basis)
      out << "element = " << name << ' ' << x << '\n';
  }
  auto roof = [&](const char* name, const RoofSpec& r) {
    out << "\n[" << name << "]\n";
    if (!r.named.empty())
      out << "name = " << r.named << '\n';
    out << "past = " << r.past << "\nfuture = " << r.future << '\n';
    for (const auto& [w, v] : r.values)
      out << "value = " << w << " : " << v << '\n';
  };
  if (cfg.roof)
    roof("roof", *cfg.roof);
  if (cfg.compare)
    roof("compare", *cfg.compare);
  if (!cfg.options.empty()) {
    out << "\n[options]\n";
    for (const auto& [k, v] : cfg.options)
      out << k << " = " << v << '\n';
  }
  return out.str();
}

/// FNV-1a over the rendered form.
inline std::string config_hash(const SystemConfig& cfg) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : render_config(cfg)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

/// Library objects described by a config.
struct System {
  SystemConfig config;
  Alphabet alphabet;
  BasisPtr basis;
  std::optional<EdgeShift> edge_shift;
  std::optional<BetaShift> beta;
  std::optional<CodedGenerator> coded;
  std::optional<TwoOrbitShift> two_orbit;
  std::optional<LocallyConstantRoof> roof;
  std::optional<LocallyConstantRoof> compare;
  std::optional<EvaluableRoof> evaluable;

  std::size_t count_option(const std::string& key, std::size_t fallback) const {
    auto v = config.option(key);
    return v ? detail::parse_count(*v, 0, 0) : fallback;
  }
  double real_option(const std::string& key, double fallback) const {
    auto v = config.option(key);
    return v ? detail::parse_real(*v, 0, 0) : fallback;
  }
  std::string string_option(const std::string& key, std::string fallback) const {
    return config.option(key).value_or(std::move(fallback));
  }
  Word word_option(const std::string& key, const Word& fallback = {}) const {
    auto v = config.option(key);
    return v ? parse_word(*v, alphabet) : fallback;
  }
};

namespace detail {

inline LocallyConstantRoof build_roof(const RoofSpec& spec, const Alphabet& alphabet, const BasisPtr& basis) {
  std::map<Word, QVector> table;
  for (const auto& [w, v] : spec.values) {
    Word window = parse_word(w, alphabet);
    if (window.size() != spec.past + spec.future + 1)
      throw InvalidArgument("roof window '" + w + "' has length " + std::to_string(window.size()) + ", expected " +
                            std::to_string(spec.past + spec.future + 1));
    if (!table.emplace(window, parse_qvector(v, basis)).second)
      throw InvalidArgument("roof window '" + w + "' listed twice");
  }
  return LocallyConstantRoof(basis, spec.past, spec.future, std::move(table));
}

inline EvaluableRoof named_roof(const std::string& name) {
  if (name == "harmonic")
    return example_roof_harmonic();
  throw InvalidArgument("unknown named roof '" + name + "' (available: harmonic)");
}

} // namespace detail

inline System build_system(const SystemConfig& cfg) {
  const auto& s = cfg.shift;
  std::optional<BetaShift> beta;
  std::optional<TwoOrbitShift> two_orbit;
  Alphabet alphabet = Alphabet::digits(2);
  if (s.kind == "beta") {
    if (s.beta.empty())
      throw InvalidArgument("beta shift needs 'beta = ...'");
    beta.emplace(parse_beta(s.beta), std::max<std::size_t>(s.depth, 16));
    alphabet = beta->alphabet();
  } else if (s.kind == "two-orbit") {
    two_orbit.emplace(s.level);
    alphabet = TwoOrbitShift::alphabet();
  }
  if (!cfg.alphabet.empty()) {
    Alphabet declared(cfg.alphabet);
    if ((beta || two_orbit) && declared.size() != alphabet.size())
      throw InvalidArgument("declared alphabet does not match the shift's alphabet");
    alphabet = declared;
  }

  std::vector<RealBasis::Element> extra;
  for (const auto& [name, x] : cfg.basis)
    extra.push_back({name, x});
  BasisPtr basis = extra.empty() ? RealBasis::rational() : RealBasis::make(std::move(extra));

  System sys{cfg, alphabet, basis, std::nullopt, std::move(beta), std::nullopt, std::move(two_orbit),
             std::nullopt, std::nullopt, std::nullopt};
  if (s.kind == "full") {
    sys.edge_shift.emplace(full_shift(alphabet));
  } else if (s.kind == "forbidden") {
    std::vector<Word> forbidden;
    for (const auto& f : s.forbidden)
      forbidden.push_back(parse_word(f, alphabet));
    sys.edge_shift.emplace(sft_from_forbidden_words(alphabet, forbidden));
  } else if (s.kind == "edges") {
    std::vector<std::string> names;
    std::vector<Edge> edges;
    auto vertex = [&](const std::string& n) {
      auto it = std::find(names.begin(), names.end(), n);
      if (it != names.end())
        return static_cast<std::size_t>(it - names.begin());
      names.push_back(n);
      return names.size() - 1;
    };
    for (const auto& e : s.edges) {
      auto label = alphabet.find(e.label);
      if (!label)
        throw InvalidArgument("edge label '" + e.label + "' is not in the alphabet");
      std::size_t a = vertex(e.source);
      std::size_t b = vertex(e.target);
      edges.push_back({a, b, *label});
    }
    sys.edge_shift.emplace(alphabet, names, std::move(edges));
  } else if (s.kind == "coded") {
    std::vector<Word> words;
    for (const auto& g : s.generators)
      words.push_back(parse_word(g, alphabet));
    std::optional<BalancedFamily> family;
    if (!s.family.empty()) {
      auto parts = detail::split_ws(s.family);
      auto a = alphabet.find(parts[0]);
      auto b = alphabet.find(parts[1]);
      if (!a || !b)
        throw InvalidArgument("family symbols must be in the alphabet");
      family = BalancedFamily{*a, *b, detail::parse_count(parts[2], 0, 0)};
    }
    sys.coded.emplace(alphabet, std::move(words), family);
  }

  if (cfg.roof) {
    if (!cfg.roof->named.empty())
      sys.evaluable.emplace(detail::named_roof(cfg.roof->named));
    else
      sys.roof.emplace(detail::build_roof(*cfg.roof, alphabet, basis));
  }
  if (cfg.compare)
    sys.compare.emplace(detail::build_roof(*cfg.compare, alphabet, basis));
  if (sys.edge_shift) {
    if (sys.roof)
      sys.roof->check_covers(*sys.edge_shift);
    if (sys.compare)
      sys.compare->check_covers(*sys.edge_shift);
  }
  return sys;
}

/// Built-in system descriptions.
inline const std::map<std::string, std::string>& preset_texts() {
  static const std::map<std::string, std::string> presets{
      {"example-4.1", R"([alphabet]
symbols = 0 1

[shift]
kind = full

[roof]
past = 0
future = 0
value = 0 : 2
value = 1 : 3

[compare]
past = 0
future = 0
value = 0 : 5/2
value = 1 : 5/2

[options]
delta = 1
epsilon = 0.25
first_counts = 0..40
horizon = 200
max_hits = 0
omega = 1
second_counts = 0..40
target = 0
witness_u = 0
witness_v1 = 0
witness_v2 = 1
witness_w = 1
witness_zeta = 0
)"},
      {"example-4.2", R"([alphabet]
symbols = 0 1

[shift]
kind = full

[roof]
name = harmonic
past = 0
future = 0

[options]
epsilon = 0.01
first_counts = 0..5000
horizon = 10000
max_hits = 3
omega = 1
second_counts = 0..0
target = 1
witness_u = 1
witness_v1 = 0
witness_v2 = 1
witness_w = 1
witness_zeta = 1
)"},
      {"example-4.3", R"([alphabet]
symbols = 0 1 2 3

[shift]
kind = coded
generator = 0
generator = 1
family = 2 3 0

[basis]
element = a 1
element = b 1.4142135623730951

[roof]
past = 0
future = 0
value = 0 : a + b
value = 1 : a + b
value = 2 : a
value = 3 : b

[options]
bound = 10
cylinder = 0
)"},
      {"two-orbit", R"([shift]
kind = two-orbit

[roof]
past = 0
future = 0
value = 0 : 1
value = 1 : 1

[options]
bound = 12
)"},
      {"golden-beta", R"([shift]
kind = beta
beta = quadratic 1/2 1/2 5
depth = 8

[basis]
element = alpha 1.4142135623730951

[roof]
past = 0
future = 0
value = 0 : 1
value = 1 : alpha

[options]
bound = 10
)"},
      {"mixing-alpha", R"([alphabet]
symbols = 0 1

[shift]
kind = full

[basis]
element = alpha 1.4142135623730951

[roof]
past = 0
future = 0
value = 0 : 1
value = 1 : alpha
)"},
      {"constant", R"([alphabet]
symbols = 0 1

[shift]
kind = full

[roof]
past = 0
future = 0
value = 0 : 3/2
value = 1 : 3/2

[options]
epsilon = 0.1
first_counts = 0..0
horizon = 30
max_hits = 0
omega = 1.5
second_counts = 0..0
target = 0
witness_u = 0
witness_v1 = 0
witness_v2 = 0
witness_w = 0
witness_zeta = 0
)"},
  };
  return presets;
}

inline SystemConfig preset_config(const std::string& name) {
  const auto& p = preset_texts();
  auto it = p.find(name);
  if (it == p.end()) {
    std::string names;
    for (const auto& [k, v] : p)
      names += (names.empty() ? "" : ", ") + k;
    throw InvalidArgument("unknown preset '" + name + "' (available: " + names + ")");
  }
  return parse_config(it->second);
}

/// "a..b" or a comma list of naturals.
inline std::vector<std::size_t> parse_count_list(const std::string& text) {
  std::vector<std::size_t> out;
  auto dots = text.find("..");
  if (dots != std::string::npos) {
    std::size_t a = detail::parse_count(detail::trim(text.substr(0, dots)), 0, 0);
    std::size_t b = detail::parse_count(detail::trim(text.substr(dots + 2)), 0, 0);
    for (std::size_t k = a; k <= b; ++k)
      out.push_back(k);
    return out;
  }
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');)
    if (!detail::trim(item).empty())
      out.push_back(detail::parse_count(detail::trim(item), 0, 0));
  return out;
}

} // namespace suspension
