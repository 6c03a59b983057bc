#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "paretolab/closed_form.hpp"
#include "paretolab/dirichlet.hpp"
#include "paretolab/estimators.hpp"
#include "paretolab/experiments.hpp"
#include "paretolab/log_grid.hpp"

namespace paretolab {

// 17 significant digits; "inf", "-inf" and "nan" for non-finite values.
std::string format_double(double v);
double parse_double(const std::string& text);

// Header `x,f`, one row per cell.
void write_grid_csv(std::ostream& out, const GridDistribution& g);
// The lattice (lambda, m) is not stored in the file; the caller supplies it
// and every x must sit on that lattice.
GridDistribution read_grid_csv(std::istream& in, double lambda, int m);

// Header `wealth`, one row per agent.
void write_samples_csv(std::ostream& out, std::span<const double> samples);
std::vector<double> read_samples_csv(std::istream& in);

// Header `step,distance,ratio`; the ratio cell of step 0 is empty.
void write_trace_csv(std::ostream& out, std::span<const double> distances,
                     std::span<const double> ratios);
ConvergenceTrace read_trace_csv(std::istream& in);

// Non-finite numbers are written as the strings "inf", "-inf", "nan".
nlohmann::json json_number(double v);
double json_to_double(const nlohmann::json& j);

nlohmann::json to_json(const ModelParams& params, const ExponentReport& r);
nlohmann::json to_json(const TailEstimate& t);
nlohmann::json to_json(const StabilityReport& r);
StabilityReport stability_from_json(const nlohmann::json& j);

// {"kappa": number, "classes": [{"p": .., "q": .., "gamma": ..}, ...]}
ClassMix mix_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ClassMix& mix);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace paretolab
