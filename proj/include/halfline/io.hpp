#pragma once

#include <string>

#include <json.hpp>

#include "halfline/potential.hpp"
#include "halfline/sampled.hpp"

namespace halfline::io {

nlohmann::json spec_to_json(const OperatorSpec& spec);
OperatorSpec spec_from_json(const nlohmann::json& j);

void write_spec(const std::string& path, const OperatorSpec& spec);
OperatorSpec read_spec(const std::string& path);

// CSV with header x_or_k,re,im; values written with 17 significant digits.
void write_csv(const std::string& path, const SampledFunction& f);
SampledFunction read_csv(const std::string& path);
std::string csv_string(const SampledFunction& f);
SampledFunction parse_csv(const std::string& text);

// Rounds to 12 significant digits for reports.
double round12(double x);

}  // namespace halfline::io
