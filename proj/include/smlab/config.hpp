#pragma once

// Experiment configuration and the config-document parser.
//
// Documents are a small TOML subset, one `key = value` per line:
//   strings "..."; integers; floats; booleans; arrays of numbers [a, b];
//   one-level inline tables { k = v, ... }; comments start with '#'.
// Recognized keys: experiment, n, reps, d, dist, engine, seed, threads,
// lambda, kappa, ds, out, format, check. `d = <x>` is shorthand for
// `dist = { kind = "weibull", d = <x> }`. Parse errors carry the line
// number and the offending key.

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "distributions.hpp"
#include "errors.hpp"

namespace smlab {

enum class Experiment {
  TypicalCost,
  TotalCostLLN,
  VarianceLimit,
  CLT,
  Segments,
  EngineEquivalence,
  GammaTable,
  CouplingCheck,
};

enum class Engine { Direct, Recursion };

struct ExperimentConfig {
  Experiment experiment = Experiment::TypicalCost;
  std::size_t n = 10000;
  std::size_t reps = 200;
  DistributionSpec dist{DistKind::Exponential, 1.0, 1.0, 1};
  Engine engine = Engine::Recursion;
  std::uint64_t seed = 1;
  unsigned threads = 0;  // 0: SMLAB_THREADS env var, then hardware concurrency
  std::optional<std::size_t> lambda_n;
  std::optional<std::size_t> kappa_n;
  std::vector<double> gamma_grid;  // gamma-table only; default grid when empty
  std::string out;                 // empty: stdout
  std::string format = "csv";
  bool check = false;
};

inline const char* experiment_name(Experiment e) {
  switch (e) {
    case Experiment::TypicalCost: return "typical-cost";
    case Experiment::TotalCostLLN: return "total-cost-lln";
    case Experiment::VarianceLimit: return "variance-limit";
    case Experiment::CLT: return "clt";
    case Experiment::Segments: return "segments";
    case Experiment::EngineEquivalence: return "engine-equivalence";
    case Experiment::GammaTable: return "gamma-table";
    case Experiment::CouplingCheck: return "coupling-check";
  }
  return "?";
}

inline const char* engine_name(Engine e) {
  return e == Engine::Direct ? "direct" : "recursion";
}

namespace detail {

inline std::string normalized_token(std::string_view s) {
  std::string out;
  for (char c : s)
    if (c != '-' && c != '_') out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace detail

inline std::optional<Experiment> experiment_from_string(std::string_view s) {
  const std::string t = detail::normalized_token(s);
  if (t == "typicalcost") return Experiment::TypicalCost;
  if (t == "totalcostlln") return Experiment::TotalCostLLN;
  if (t == "variancelimit") return Experiment::VarianceLimit;
  if (t == "clt") return Experiment::CLT;
  if (t == "segments") return Experiment::Segments;
  if (t == "engineequivalence") return Experiment::EngineEquivalence;
  if (t == "gammatable") return Experiment::GammaTable;
  if (t == "couplingcheck") return Experiment::CouplingCheck;
  return std::nullopt;
}

inline std::optional<Engine> engine_from_string(std::string_view s) {
  const std::string t = detail::normalized_token(s);
  if (t == "direct") return Engine::Direct;
  if (t == "recursion") return Engine::Recursion;
  return std::nullopt;
}

// "exponential" | "weibull[:shape[:scale]]" | "maxuniform:degree" | "chisquared:k"
inline DistributionSpec parse_dist_string(std::string_view s) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const auto c = s.find(':', pos);
    parts.emplace_back(s.substr(pos, c == std::string_view::npos ? c : c - pos));
    if (c == std::string_view::npos) break;
    pos = c + 1;
  }
  auto num = [&](const std::string& p, const char* what) {
    double v = 0.0;
    const auto [q, ec] = std::from_chars(p.data(), p.data() + p.size(), v);
    if (ec != std::errc() || q != p.data() + p.size())
      throw ParseError(std::string("dist: bad ") + what + " '" + p + "'");
    return v;
  };
  const std::string kind = detail::normalized_token(parts[0]);
  if (kind == "exponential" || kind == "exp") {
    if (parts.size() > 1) throw ParseError("dist: exponential takes no parameters");
    return {DistKind::Exponential, 1.0, 1.0, 1};
  }
  if (kind == "weibull") {
    if (parts.size() > 3) throw ParseError("dist: weibull takes at most shape and scale");
    const double shape = parts.size() > 1 ? num(parts[1], "shape") : 1.0;
    const double scale = parts.size() > 2 ? num(parts[2], "scale") : 1.0;
    if (!(shape > 0.0)) throw ParseError("dist: weibull shape must be > 0");
    if (!(scale > 0.0)) throw ParseError("dist: weibull scale must be > 0");
    return {DistKind::Weibull, shape, scale, 1};
  }
  if (kind == "maxuniform") {
    if (parts.size() != 2) throw ParseError("dist: maxuniform needs a degree, e.g. maxuniform:2");
    const double deg = num(parts[1], "degree");
    if (deg < 1.0 || deg != static_cast<int>(deg))
      throw ParseError("dist: maxuniform degree must be a positive integer");
    return {DistKind::MaxUniform, 1.0, 1.0, static_cast<int>(deg)};
  }
  if (kind == "chisquared" || kind == "chi2") {
    if (parts.size() != 2) throw ParseError("dist: chisquared needs degrees of freedom, e.g. chisquared:4");
    const double k = num(parts[1], "degrees of freedom");
    if (k < 1.0 || k != static_cast<int>(k))
      throw ParseError("dist: chisquared degrees of freedom must be a positive integer");
    return {DistKind::ChiSquared, 1.0, 1.0, static_cast<int>(k)};
  }
  throw ParseError("dist: unknown kind '" + parts[0] + "'");
}

inline std::string dist_to_string(const DistributionSpec& s) {
  switch (s.kind) {
    case DistKind::Exponential: return "exponential";
    case DistKind::Weibull:
      return "weibull:" + std::to_string(s.shape) + ":" + std::to_string(s.scale);
    case DistKind::MaxUniform: return "maxuniform:" + std::to_string(s.degree);
    case DistKind::ChiSquared: return "chisquared:" + std::to_string(s.degree);
    case DistKind::Custom: break;
  }
  return "custom";
}

namespace detail {

struct ConfigValue {
  enum Kind { String, Number, Bool, Array, Table } kind = Number;
  std::string str;
  double num = 0.0;
  bool b = false;
  std::vector<double> arr;
  std::vector<std::pair<std::string, ConfigValue>> table;
};

struct ConfigParser {
  std::string_view text;
  std::size_t pos = 0;
  int line = 1;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("config line " + std::to_string(line) + ": " + msg);
  }
  bool at_end() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }
  void skip_ws_inline() {
    while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) ++pos;
  }
  void skip_blank() {
    for (;;) {
      skip_ws_inline();
      if (at_end()) return;
      if (peek() == '#') {
        while (!at_end() && peek() != '\n') ++pos;
        continue;
      }
      if (peek() == '\n') {
        ++pos;
        ++line;
        continue;
      }
      return;
    }
  }

  std::string parse_key() {
    skip_ws_inline();
    const std::size_t start = pos;
    while (!at_end()) {
      const char c = peek();
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-') ++pos;
      else break;
    }
    if (pos == start) fail("expected a key");
    return std::string(text.substr(start, pos - start));
  }

  std::string parse_string_literal() {
    if (at_end() || peek() != '"') fail("expected '\"'");
    ++pos;
    std::string out;
    while (!at_end() && peek() != '"') {
      if (peek() == '\n') fail("unterminated string");
      if (peek() == '\\') {
        ++pos;
        if (at_end()) fail("unterminated escape");
        const char c = peek();
        if (c == '"' || c == '\\') out += c;
        else if (c == 'n') out += '\n';
        else if (c == 't') out += '\t';
        else fail(std::string("unsupported escape '\\") + c + "'");
        ++pos;
        continue;
      }
      out += peek();
      ++pos;
    }
    if (at_end()) fail("unterminated string");
    ++pos;
    return out;
  }

  double parse_number() {
    skip_ws_inline();
    const std::size_t start = pos;
    while (!at_end()) {
      const char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.' ||
          c == 'e' || c == 'E')
        ++pos;
      else break;
    }
    double v = 0.0;
    const char* b = text.data() + start;
    const char* e = text.data() + pos;
    const auto [q, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || q != e || b == e) fail("expected a number");
    return v;
  }

  ConfigValue parse_value() {
    skip_ws_inline();
    if (at_end()) fail("expected a value");
    ConfigValue v;
    const char c = peek();
    if (c == '"') {
      v.kind = ConfigValue::String;
      v.str = parse_string_literal();
      return v;
    }
    if (c == '[') {
      ++pos;
      v.kind = ConfigValue::Array;
      skip_ws_inline();
      if (!at_end() && peek() == ']') {
        ++pos;
        return v;
      }
      for (;;) {
        v.arr.push_back(parse_number());
        skip_ws_inline();
        if (!at_end() && peek() == ',') {
          ++pos;
          continue;
        }
        if (!at_end() && peek() == ']') {
          ++pos;
          return v;
        }
        fail("expected ',' or ']' in array");
      }
    }
    if (c == '{') {
      ++pos;
      v.kind = ConfigValue::Table;
      skip_ws_inline();
      if (!at_end() && peek() == '}') {
        ++pos;
        return v;
      }
      for (;;) {
        skip_ws_inline();
        std::string k = parse_key();
        skip_ws_inline();
        if (at_end() || peek() != '=') fail("expected '=' in inline table");
        ++pos;
        skip_ws_inline();
        ConfigValue inner;
        if (!at_end() && peek() == '"') {
          inner.kind = ConfigValue::String;
          inner.str = parse_string_literal();
        } else {
          inner.kind = ConfigValue::Number;
          inner.num = parse_number();
        }
        v.table.emplace_back(std::move(k), std::move(inner));
        skip_ws_inline();
        if (!at_end() && peek() == ',') {
          ++pos;
          continue;
        }
        if (!at_end() && peek() == '}') {
          ++pos;
          return v;
        }
        fail("expected ',' or '}' in inline table");
      }
    }
    if (text.compare(pos, 4, "true") == 0) {
      pos += 4;
      v.kind = ConfigValue::Bool;
      v.b = true;
      return v;
    }
    if (text.compare(pos, 5, "false") == 0) {
      pos += 5;
      v.kind = ConfigValue::Bool;
      v.b = false;
      return v;
    }
    v.kind = ConfigValue::Number;
    v.num = parse_number();
    return v;
  }

  void expect_line_end() {
    skip_ws_inline();
    if (at_end()) return;
    if (peek() == '#') {
      while (!at_end() && peek() != '\n') ++pos;
    }
    if (!at_end()) {
      if (peek() != '\n') fail("trailing characters after value");
      ++pos;
      ++line;
    }
  }
};

inline std::size_t positive_int_field(const ConfigParser& p, const ConfigValue& v,
                                      const char* field) {
  if (v.kind != ConfigValue::Number || v.num < 1.0 || v.num != std::floor(v.num) ||
      v.num > 9.007199254740992e15)
    p.fail(std::string("'") + field + "' must be a positive integer");
  return static_cast<std::size_t>(v.num);
}

inline DistributionSpec dist_from_table(const ConfigParser& p, const ConfigValue& v) {
  std::string kind;
  std::optional<double> shape, scale, dval, degree;
  for (const auto& [k, inner] : v.table) {
    if (k == "kind") {
      if (inner.kind != ConfigValue::String) p.fail("'dist.kind' must be a string");
      kind = normalized_token(inner.str);
    } else if (k == "shape" || k == "scale" || k == "d" || k == "degree" || k == "k" ||
               k == "df") {
      if (inner.kind != ConfigValue::Number) p.fail("'dist." + k + "' must be a number");
      if (k == "shape") shape = inner.num;
      else if (k == "scale") scale = inner.num;
      else if (k == "d") dval = inner.num;
      else degree = inner.num;
    } else {
      p.fail("unknown key 'dist." + k + "'");
    }
  }
  if (kind.empty()) p.fail("'dist' needs a kind");
  auto as_posint = [&](double x, const std::string& f) {
    if (!(x >= 1.0) || x != std::floor(x))
      p.fail("'dist." + f + "' must be a positive integer");
    return static_cast<int>(x);
  };
  if (kind == "exponential" || kind == "exp") {
    if (shape || scale || dval || degree) p.fail("'dist': exponential takes no parameters");
    return {DistKind::Exponential, 1.0, 1.0, 1};
  }
  if (kind == "weibull") {
    if (dval && shape) p.fail("'dist': give either d or shape, not both");
    if (degree) p.fail("'dist': weibull takes shape (or d) and scale only");
    const double sh = dval ? *dval : (shape ? *shape : 1.0);
    const double sc = scale ? *scale : 1.0;
    if (!(sh > 0.0)) p.fail("'dist.d' must be > 0");
    if (!(sc > 0.0)) p.fail("'dist.scale' must be > 0");
    return {DistKind::Weibull, sh, sc, 1};
  }
  if (kind == "maxuniform") {
    if (shape || scale) p.fail("'dist': maxuniform takes degree only");
    const std::optional<double> deg = degree ? degree : dval;
    if (!deg) p.fail("'dist': maxuniform needs degree");
    return {DistKind::MaxUniform, 1.0, 1.0, as_posint(*deg, "degree")};
  }
  if (kind == "chisquared" || kind == "chi2") {
    if (shape || scale || dval) p.fail("'dist': chisquared takes k (degrees of freedom) only");
    if (!degree) p.fail("'dist': chisquared needs k (degrees of freedom)");
    return {DistKind::ChiSquared, 1.0, 1.0, as_posint(*degree, "k")};
  }
  p.fail("unknown dist kind '" + kind + "'");
}

}  // namespace detail

inline ExperimentConfig parse_config(std::string_view text) {
  detail::ConfigParser p{text};
  ExperimentConfig cfg;
  bool have_experiment = false, have_d = false, have_dist = false;
  std::vector<std::string> seen;
  for (;;) {
    p.skip_blank();
    if (p.at_end()) break;
    const int key_line = p.line;
    std::string key = p.parse_key();
    for (const auto& s : seen)
      if (s == key) p.fail("duplicate key '" + key + "'");
    seen.push_back(key);
    p.skip_ws_inline();
    if (p.at_end() || p.peek() != '=') p.fail("expected '=' after '" + key + "'");
    ++p.pos;
    const detail::ConfigValue v = p.parse_value();
    p.line = key_line;  // report errors at the key's line
    using CV = detail::ConfigValue;

    if (key == "experiment") {
      if (v.kind != CV::String) p.fail("'experiment' must be a string");
      const auto e = experiment_from_string(v.str);
      if (!e) p.fail("unknown experiment '" + v.str + "'");
      cfg.experiment = *e;
      have_experiment = true;
    } else if (key == "n") {
      cfg.n = detail::positive_int_field(p, v, "n");
    } else if (key == "reps") {
      cfg.reps = detail::positive_int_field(p, v, "reps");
    } else if (key == "d") {
      if (v.kind != CV::Number || !(v.num > 0.0)) p.fail("'d' must be a number > 0");
      cfg.dist = {DistKind::Weibull, v.num, 1.0, 1};
      have_d = true;
    } else if (key == "dist") {
      if (v.kind == CV::String) cfg.dist = parse_dist_string(v.str);
      else if (v.kind == CV::Table) cfg.dist = detail::dist_from_table(p, v);
      else p.fail("'dist' must be a string or inline table");
      have_dist = true;
    } else if (key == "engine") {
      if (v.kind != CV::String) p.fail("'engine' must be a string");
      const auto e = engine_from_string(v.str);
      if (!e) p.fail("unknown engine '" + v.str + "' (direct|recursion)");
      cfg.engine = *e;
    } else if (key == "seed") {
      if (v.kind != CV::Number || v.num < 0.0 || v.num != std::floor(v.num))
        p.fail("'seed' must be a non-negative integer");
      cfg.seed = static_cast<std::uint64_t>(v.num);
    } else if (key == "threads") {
      if (v.kind != CV::Number || v.num < 0.0 || v.num != std::floor(v.num) || v.num > 4096.0)
        p.fail("'threads' must be an integer in [0, 4096]");
      cfg.threads = static_cast<unsigned>(v.num);
    } else if (key == "lambda") {
      cfg.lambda_n = detail::positive_int_field(p, v, "lambda");
    } else if (key == "kappa") {
      cfg.kappa_n = detail::positive_int_field(p, v, "kappa");
    } else if (key == "ds") {
      if (v.kind != CV::Array || v.arr.empty()) p.fail("'ds' must be a non-empty array");
      for (double d : v.arr)
        if (!(d > 2.0)) p.fail("'ds' entries must be > 2 (variance constant diverges otherwise)");
      cfg.gamma_grid = v.arr;
    } else if (key == "out") {
      if (v.kind != CV::String) p.fail("'out' must be a string");
      cfg.out = v.str;
    } else if (key == "format") {
      if (v.kind != CV::String || (v.str != "csv" && v.str != "json"))
        p.fail("'format' must be \"csv\" or \"json\"");
      cfg.format = v.str;
    } else if (key == "check") {
      if (v.kind != CV::Bool) p.fail("'check' must be true or false");
      cfg.check = v.b;
    } else {
      p.fail("unknown key '" + key + "'");
    }
    p.expect_line_end();
  }
  if (!have_experiment) throw ParseError("config: missing required key 'experiment'");
  if (have_d && have_dist) throw ParseError("config: 'd' conflicts with explicit 'dist'");
  return cfg;
}

}  // namespace smlab
