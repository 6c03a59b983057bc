#include "paretolab/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "paretolab/error.hpp"

namespace paretolab {

using nlohmann::json;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& text) {
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr == text.data()) {
    throw Error(ErrorKind::Parse, "not a number: '" + text + "'");
  }
  if (ptr != end) throw Error(ErrorKind::Parse, "trailing characters in '" + text + "'");
  return v;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

void expect_header(std::istream& in, const std::string& header) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::Parse, "empty CSV, expected '" + header + "'");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) {
    throw Error(ErrorKind::Parse, "CSV header '" + line + "' does not match '" + header + "'");
  }
}

}  // namespace

void write_grid_csv(std::ostream& out, const GridDistribution& g) {
  out << "x,f\n";
  for (std::size_t j = 0; j < g.size(); ++j) {
    out << format_double(g.x(j)) << ',' << format_double(g.values[j]) << '\n';
  }
}

GridDistribution read_grid_csv(std::istream& in, double lambda, int m) {
  expect_header(in, "x,f");
  GridDistribution g;
  g.lambda = lambda;
  g.m = m;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 2) throw Error(ErrorKind::Parse, "grid row needs two columns: " + line);
    const double x = parse_double(cells[0]);
    const double f = parse_double(cells[1]);
    if (!(x > 0.0)) throw Error(ErrorKind::Parse, "grid x must be positive");
    const auto k = g.index_of(x);
    if (std::abs(std::log(x) - g.log_x_at(k)) > 1e-9 * std::max(1.0, std::abs(std::log(x)))) {
      throw Error(ErrorKind::AlignmentMismatch, "x = " + cells[0] + " is off the grid lattice");
    }
    if (first) {
      g.base_index = k;
      first = false;
    } else if (k != g.base_index + static_cast<std::int64_t>(g.size())) {
      throw Error(ErrorKind::Parse, "grid rows are not consecutive lattice cells");
    }
    if (f < 0.0) g.is_perturbation = true;
    g.values.push_back(f);
  }
  return g;
}

void write_samples_csv(std::ostream& out, std::span<const double> samples) {
  out << "wealth\n";
  for (double v : samples) out << format_double(v) << '\n';
}

std::vector<double> read_samples_csv(std::istream& in) {
  expect_header(in, "wealth");
  std::vector<double> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    out.push_back(parse_double(line));
  }
  return out;
}

void write_trace_csv(std::ostream& out, std::span<const double> distances,
                     std::span<const double> ratios) {
  out << "step,distance,ratio\n";
  for (std::size_t k = 0; k < distances.size(); ++k) {
    out << k << ',' << format_double(distances[k]) << ',';
    if (k > 0 && k - 1 < ratios.size()) out << format_double(ratios[k - 1]);
    out << '\n';
  }
}

ConvergenceTrace read_trace_csv(std::istream& in) {
  expect_header(in, "step,distance,ratio");
  ConvergenceTrace t;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 3) throw Error(ErrorKind::Parse, "trace row needs three columns: " + line);
    if (std::stoul(cells[0]) != t.distances.size()) {
      throw Error(ErrorKind::Parse, "trace steps are not consecutive");
    }
    t.distances.push_back(parse_double(cells[1]));
    if (!cells[2].empty()) t.ratios.push_back(parse_double(cells[2]));
  }
  t.steps = t.distances.empty() ? 0 : static_cast<int>(t.distances.size()) - 1;
  return t;
}

json json_number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

double json_to_double(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_double(j.get<std::string>());
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  throw Error(ErrorKind::Parse, "expected a number, got " + j.dump());
}

namespace {

json number_array(const std::vector<double>& v) {
  json arr = json::array();
  for (double x : v) arr.push_back(json_number(x));
  return arr;
}

std::vector<double> double_array(const json& j) {
  std::vector<double> out;
  for (const auto& x : j) out.push_back(json_to_double(x));
  return out;
}

}  // namespace

json to_json(const ModelParams& params, const ExponentReport& r) {
  return json{{"p", params.p()},          {"gamma", params.gamma()}, {"kappa", params.kappa()},
              {"lambda", r.coeffs.lambda}, {"a", r.coeffs.a},        {"b", r.coeffs.b},
              {"x1", r.x1},               {"x2", r.x2},             {"rho0", r.rho0},
              {"rho1", r.rho1},           {"alpha", r.alpha}};
}

json to_json(const TailEstimate& t) {
  return json{{"alpha_hat", json_number(t.alpha_hat)},
              {"zeta_hat", json_number(t.zeta_hat)},
              {"k", t.k},
              {"threshold", json_number(t.threshold)},
              {"stderr", json_number(t.std_error)}};
}

json to_json(const StabilityReport& r) {
  return json{{"x_c", json_number(r.x_c)},
              {"kappa", json_number(r.kappa)},
              {"alpha", json_number(r.alpha)},
              {"d", number_array(r.d)},
              {"ratios", number_array(r.ratios)},
              {"rate", json_number(r.rate)},
              {"max_ratio_deviation", json_number(r.max_ratio_deviation)},
              {"epsilon", json_number(r.epsilon)},
              {"recovered_alpha", json_number(r.recovered_alpha)},
              {"slope_error", json_number(r.slope_error)},
              {"window", json::array({r.window_lo, r.window_hi})},
              {"geometric", r.geometric},
              {"shape_recovered", r.shape_recovered},
              {"verdict", r.verdict}};
}

StabilityReport stability_from_json(const json& j) {
  try {
    StabilityReport r;
    r.x_c = json_to_double(j.at("x_c"));
    r.kappa = json_to_double(j.at("kappa"));
    r.alpha = json_to_double(j.at("alpha"));
    r.d = double_array(j.at("d"));
    r.ratios = double_array(j.at("ratios"));
    r.rate = json_to_double(j.at("rate"));
    r.max_ratio_deviation = json_to_double(j.at("max_ratio_deviation"));
    r.epsilon = json_to_double(j.at("epsilon"));
    r.recovered_alpha = json_to_double(j.at("recovered_alpha"));
    r.slope_error = json_to_double(j.at("slope_error"));
    r.window_lo = j.at("window").at(0).get<std::int64_t>();
    r.window_hi = j.at("window").at(1).get<std::int64_t>();
    r.geometric = j.at("geometric").get<bool>();
    r.shape_recovered = j.at("shape_recovered").get<bool>();
    r.verdict = j.at("verdict").get<std::string>();
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("stability report: ") + e.what());
  }
}

ClassMix mix_from_json(const json& j) {
  std::vector<ClassEntry> entries;
  double kappa = 0.0;
  try {
    kappa = j.at("kappa").get<double>();
    for (const auto& c : j.at("classes")) {
      entries.push_back({c.at("p").get<double>(), c.at("q").get<double>(),
                         c.at("gamma").get<double>()});
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("mix config: ") + e.what());
  }
  return validate_mix(std::move(entries), kappa);
}

json to_json(const ClassMix& mix) {
  json classes = json::array();
  for (const auto& e : mix.entries()) {
    classes.push_back({{"p", e.p}, {"q", e.q}, {"gamma", e.gamma}});
  }
  return json{{"kappa", mix.kappa()}, {"classes", classes}};
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  out << content;
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path);
}

}  // namespace paretolab
