#include "fatpoints/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fatpoints/error.hpp"

namespace fatpoints {

namespace {

Integer integer_from_json(const Json& j, const char* what) {
  if (j.is_number_integer()) return Integer(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) {
    try {
      return Integer(j.get<std::string>());
    } catch (const std::invalid_argument&) {
      throw parse_error(std::string("malformed integer for ") + what);
    }
  }
  throw parse_error(std::string("expected integer for ") + what);
}

Json integer_to_json(const Integer& v) {
  if (v.fits_slong_p()) return Json(static_cast<std::int64_t>(v.get_si()));
  return Json(v.get_str());
}

}  // namespace

Json config_to_json(const PointConfiguration& cfg) {
  Json j;
  if (cfg.label) j["label"] = *cfg.label;
  Json pts = Json::array();
  for (const ProjectivePoint& p : cfg.points) {
    Json triple = Json::array();
    for (const Rational& c : p.coords()) triple.push_back(format_rational(c));
    pts.push_back(std::move(triple));
  }
  j["points"] = std::move(pts);
  return j;
}

PointConfiguration config_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("points") || !j["points"].is_array())
    throw parse_error("configuration needs a \"points\" array");
  std::vector<ProjectivePoint> pts;
  for (const Json& triple : j["points"]) {
    if (!triple.is_array() || triple.size() != 3)
      throw parse_error("each point needs exactly 3 coordinates");
    std::array<Rational, 3> coords;
    for (int i = 0; i < 3; ++i) {
      if (!triple[i].is_string()) throw parse_error("coordinates are fraction strings");
      coords[i] = parse_rational(triple[i].get<std::string>());
    }
    try {
      pts.emplace_back(coords[0], coords[1], coords[2]);
    } catch (const precondition_error& e) {
      throw parse_error(e.what());
    }
  }
  std::optional<std::string> label;
  if (j.contains("label")) {
    if (!j["label"].is_string()) throw parse_error("label must be a string");
    label = j["label"].get<std::string>();
  }
  try {
    return PointConfiguration(std::move(pts), std::move(label));
  } catch (const precondition_error& e) {
    throw parse_error(e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw error("cannot write " + path);
  out << content;
}

namespace {

Json parse_json_text(const std::string& text, const std::string& where) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw parse_error("invalid JSON in " + where + ": " + e.what());
  }
}

}  // namespace

PointConfiguration load_config(const std::string& path) {
  return config_from_json(parse_json_text(read_file(path), path));
}

void save_config(const PointConfiguration& cfg, const std::string& path) {
  write_file(path, config_to_json(cfg).dump(2) + "\n");
}

Json bezout_input_to_json(const BezoutInput& input) {
  Json j;
  j["config"] = config_to_json(input.config);
  Json div;
  div["degree"] = integer_to_json(input.divisor.degree);
  Json mults = Json::array();
  for (const Integer& m : input.divisor.mults) mults.push_back(integer_to_json(m));
  div["mults"] = std::move(mults);
  j["divisor"] = std::move(div);
  Json curves = Json::array();
  for (const CurveClass& c : input.curves) {
    Json jc;
    jc["degree"] = integer_to_json(c.degree);
    Json cm = Json::array();
    for (const Integer& m : c.mults) cm.push_back(integer_to_json(m));
    jc["mults"] = std::move(cm);
    if (c.tag) jc["tag"] = *c.tag;
    curves.push_back(std::move(jc));
  }
  j["curves"] = std::move(curves);
  return j;
}

BezoutInput bezout_input_from_json(const Json& j, const std::string& base_dir) {
  if (!j.is_object() || !j.contains("config") || !j.contains("divisor") ||
      !j.contains("curves"))
    throw parse_error("divisor input needs config, divisor and curves");

  PointConfiguration cfg = [&] {
    if (j["config"].is_string()) {
      std::filesystem::path p(j["config"].get<std::string>());
      if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
      return load_config(p.string());
    }
    return config_from_json(j["config"]);
  }();

  const Json& dj = j["divisor"];
  if (!dj.is_object() || !dj.contains("degree") || !dj.contains("mults") ||
      !dj["mults"].is_array())
    throw parse_error("divisor needs degree and mults");
  DivisorClass divisor;
  divisor.degree = integer_from_json(dj["degree"], "divisor degree");
  for (const Json& m : dj["mults"])
    divisor.mults.push_back(integer_from_json(m, "divisor multiplicity"));
  if (divisor.mults.size() != cfg.size())
    throw parse_error("divisor multiplicity count does not match the configuration");

  std::vector<CurveClass> curves;
  for (const Json& jc : j["curves"]) {
    if (!jc.is_object() || !jc.contains("degree") || !jc.contains("mults") ||
        !jc["mults"].is_array())
      throw parse_error("each curve needs degree and mults");
    CurveClass c;
    c.degree = integer_from_json(jc["degree"], "curve degree");
    for (const Json& m : jc["mults"])
      c.mults.push_back(integer_from_json(m, "curve multiplicity"));
    if (c.mults.size() != cfg.size())
      throw parse_error("curve multiplicity count does not match the configuration");
    if (jc.contains("tag")) {
      if (!jc["tag"].is_string()) throw parse_error("curve tag must be a string");
      c.tag = jc["tag"].get<std::string>();
    }
    curves.push_back(std::move(c));
  }
  return BezoutInput{std::move(cfg), std::move(divisor), std::move(curves)};
}

BezoutInput load_bezout_input(const std::string& path) {
  const std::string dir = std::filesystem::path(path).parent_path().string();
  return bezout_input_from_json(parse_json_text(read_file(path), path), dir);
}

Json waldschmidt_to_json(const WaldschmidtInterval& w) {
  Json j;
  j["lower"] = format_rational(w.lower);
  j["upper"] = format_rational(w.upper);
  j["lower_at"] = w.lower_at;
  j["upper_at"] = w.upper_at;
  j["exact"] = w.exact;
  if (w.conjectured) {
    j["conjectured"] = format_rational(*w.conjectured);
    j["period"] = w.period;
    j["period_start"] = w.period_start;
  } else {
    j["conjectured"] = nullptr;
  }
  return j;
}

Json classification_to_json(const Classification& c) {
  Json j;
  j["tag"] = class_tag_name(c.tag);
  if (c.tag == ClassTag::collinear_plus_one) j["k"] = c.k;
  j["evidence"] = c.evidence;
  if (c.interval) j["waldschmidt"] = waldschmidt_to_json(*c.interval);
  if (c.tag == ClassTag::unclassified)
    j["lower_bound_exceeds_nine_quarters"] = c.lower_bound_exceeds_nine_quarters;
  return j;
}

Json analysis_to_json(const AlphaSequence& seq,
                      const std::optional<WaldschmidtInterval>& w,
                      const std::optional<Classification>& cls) {
  Json j;
  j["alpha"] = seq.values;
  j["alpha_certified"] = seq.certified;
  if (seq.values.size() >= 2) {
    const BetaSequence beta = beta_sequence(seq);
    j["beta0"] = beta.beta0;
    j["beta"] = beta.betas;
  } else if (!seq.values.empty()) {
    j["beta0"] = seq.values[0];
    j["beta"] = Json::array();
  }
  if (w) j["waldschmidt"] = waldschmidt_to_json(*w);
  if (cls) j["classification"] = classification_to_json(*cls);
  return j;
}

Json bezout_to_json(const BezoutDecomposition& dec,
                    const std::vector<CurveClass>& curves) {
  Json j;
  Json coeffs = Json::array();
  for (const Integer& a : dec.coeffs) coeffs.push_back(integer_to_json(a));
  j["coeffs"] = std::move(coeffs);
  Json residual;
  residual["degree"] = integer_to_json(dec.residual.degree);
  Json rm = Json::array();
  for (const Integer& m : dec.residual.mults) rm.push_back(integer_to_json(m));
  residual["mults"] = std::move(rm);
  j["residual"] = std::move(residual);
  Json rounds = Json::array();
  for (const auto& round : dec.rounds) {
    Json r = Json::array();
    for (const std::size_t i : round) {
      if (i < curves.size() && curves[i].tag)
        r.push_back(*curves[i].tag);
      else
        r.push_back(i);
    }
    rounds.push_back(std::move(r));
  }
  j["rounds"] = std::move(rounds);
  j["non_effective"] = dec.non_effective;
  if (!dec.duplicate_groups.empty()) j["duplicate_groups"] = dec.duplicate_groups;
  return j;
}

Json confluence_to_json(const ConfluenceReport& report) {
  Json j;
  j["trials"] = report.trials;
  j["all_identical"] = report.all_identical;
  if (report.counterexample) {
    j["counterexample_trial"] = *report.counterexample_trial;
    j["counterexample"] = bezout_to_json(*report.counterexample, {});
  }
  return j;
}

std::string sequence_to_csv(const AlphaSequence& seq) {
  std::ostringstream os;
  os << "m,alpha,beta\n";
  for (std::size_t i = 0; i < seq.values.size(); ++i) {
    const int beta = i == 0 ? seq.values[0] : seq.values[i] - seq.values[i - 1];
    os << (i + 1) << ',' << seq.values[i] << ',' << beta << "\n";
  }
  return os.str();
}

}  // namespace fatpoints
