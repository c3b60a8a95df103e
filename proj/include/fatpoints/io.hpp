#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "fatpoints/alpha.hpp"
#include "fatpoints/bezout.hpp"
#include "fatpoints/projective.hpp"

namespace fatpoints {

using Json = nlohmann::json;

// Configuration interchange format, shared by every module and the CLI:
//   {"label": string?, "points": [["num/den","num/den","num/den"], ...]}
// with rationals as exact fraction strings.
Json config_to_json(const PointConfiguration& cfg);
PointConfiguration config_from_json(const Json& j);
PointConfiguration load_config(const std::string& path);
void save_config(const PointConfiguration& cfg, const std::string& path);

// Divisor/curve input file:
//   {"config": <configuration object or path>, "divisor": {...}, "curves": [...]}
struct BezoutInput {
  PointConfiguration config;
  DivisorClass divisor;
  std::vector<CurveClass> curves;
};

Json bezout_input_to_json(const BezoutInput& input);
// base_dir resolves a path-valued "config" entry relative to the input file.
BezoutInput bezout_input_from_json(const Json& j, const std::string& base_dir = "");
BezoutInput load_bezout_input(const std::string& path);

Json waldschmidt_to_json(const WaldschmidtInterval& w);
Json classification_to_json(const Classification& c);

// {"alpha": [...], "beta0": n, "beta": [...], "waldschmidt": {...},
//  "classification": {...}}
Json analysis_to_json(const AlphaSequence& seq,
                      const std::optional<WaldschmidtInterval>& w,
                      const std::optional<Classification>& cls);

Json bezout_to_json(const BezoutDecomposition& dec,
                    const std::vector<CurveClass>& curves);
Json confluence_to_json(const ConfluenceReport& report);

// flat table: m, alpha(mZ), beta_(m-1)
std::string sequence_to_csv(const AlphaSequence& seq);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace fatpoints
