// fatpoints: exact computation of initial degrees of symbolic powers of
// planar point configurations, Waldschmidt intervals, Bezout decompositions
// and the named example configurations.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <iostream>
#include <sstream>
#include <string>

#include "fatpoints/alpha.hpp"
#include "fatpoints/bezout.hpp"
#include "fatpoints/error.hpp"
#include "fatpoints/generators.hpp"
#include "fatpoints/io.hpp"

namespace {

using namespace fatpoints;

constexpr int kExitMismatch = 1;
constexpr int kExitParse = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitGenericity = 4;
constexpr int kExitInternal = 70;

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct OutputOptions {
  std::string path;  // empty: stdout
  bool no_timestamp = false;
  std::string format = "json";
};

void emit(const std::string& text, const OutputOptions& opts) {
  if (opts.path.empty())
    std::cout << text;
  else
    write_file(opts.path, text);
}

void emit_json(Json manifest, const Json& result, const OutputOptions& opts) {
  if (!opts.path.empty()) manifest["output"] = opts.path;
  Json j;
  j["manifest"] = std::move(manifest);
  j["result"] = result;
  if (!opts.no_timestamp) j["timestamp"] = utc_timestamp();
  emit(j.dump(2) + "\n", opts);
}

CertaintyPolicy parse_policy(const std::string& name) {
  if (name == "fast") return CertaintyPolicy::fast;
  if (name == "certified") return CertaintyPolicy::certified;
  throw precondition_error("unknown policy \"" + name + "\" (fast|certified)");
}

// ---------------------------------------------------------------------------
// reproduce
// ---------------------------------------------------------------------------

struct Claim {
  std::string name;
  std::string expected;
  std::string computed;
  std::string source;  // "paper" or "derived"
  bool pass = false;
};

struct RecipeReport {
  std::string recipe;
  std::vector<Claim> claims;

  void add(const std::string& name, const std::string& expected,
           const std::string& computed, const std::string& source) {
    claims.push_back({name, expected, computed, source, expected == computed});
  }
  bool all_pass() const {
    for (const Claim& c : claims)
      if (!c.pass) return false;
    return true;
  }
};

std::string ints_to_string(const std::vector<int>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  return os.str();
}

std::vector<int> beta_prefix(int beta0, const std::vector<int>& pattern, int len) {
  // beta0 followed by a repeating pattern, truncated to len values
  std::vector<int> out = {beta0};
  for (int i = 0; static_cast<int>(out.size()) < len; ++i)
    out.push_back(pattern[i % pattern.size()]);
  return out;
}

RecipeReport reproduce_star4(int m_max, std::uint64_t seed, CertaintyPolicy policy) {
  RecipeReport rep{"star4", {}};
  const PointConfiguration cfg = gen_star(4, seed);
  const AlphaSequence seq = alpha_sequence(cfg, m_max, policy);
  const BetaSequence beta = beta_sequence(seq);
  rep.add("beta sequence", ints_to_string(beta_prefix(3, {1, 3}, m_max)),
          ints_to_string(beta.full()), "paper");
  const WaldschmidtInterval w = waldschmidt_from(seq);
  rep.add("waldschmidt interval contains 2", "yes",
          (w.lower <= Rational(2) && Rational(2) <= w.upper) ? "yes" : "no", "paper");
  rep.add("waldschmidt upper bound", "2/1", format_rational(w.upper), "paper");
  return rep;
}

RecipeReport reproduce_quasi_star3(int m_max, std::uint64_t seed, CertaintyPolicy policy) {
  RecipeReport rep{"quasi_star3", {}};
  const PointConfiguration cfg = gen_quasi_star(3, seed);
  const AlphaSequence seq = alpha_sequence(cfg, m_max, policy);
  const BetaSequence beta = beta_sequence(seq);
  rep.add("beta sequence", ints_to_string(beta_prefix(3, {2, 2, 2, 3}, m_max)),
          ints_to_string(beta.full()), "paper");
  if (m_max >= 4)
    rep.add("alpha(4Z)", "9", std::to_string(seq.values[3]), "paper");
  const WaldschmidtInterval w = waldschmidt_from(seq);
  rep.add("waldschmidt upper bound", "9/4", format_rational(w.upper), "paper");
  if (m_max >= 4)
    rep.add("upper bound attained at m", "4", std::to_string(w.upper_at), "paper");
  return rep;
}

RecipeReport reproduce_collinear(int k, std::uint64_t seed, CertaintyPolicy policy) {
  RecipeReport rep{"collinear_k", {}};
  const int lo = k > 0 ? k : 2;
  const int hi = k > 0 ? k : 6;
  for (int kk = lo; kk <= hi; ++kk) {
    const PointConfiguration cfg = gen_collinear_plus_point(kk, seed + kk);
    const AlphaSequence seq = alpha_sequence(cfg, kk, policy);
    rep.add("alpha(" + std::to_string(kk) + "Z), k=" + std::to_string(kk),
            std::to_string(2 * kk - 1), std::to_string(seq.values[kk - 1]), "paper");
    const WaldschmidtInterval w = waldschmidt_from(seq);
    rep.add("waldschmidt upper bound, k=" + std::to_string(kk),
            std::to_string(2 * kk - 1) + "/" + std::to_string(kk),
            format_rational(w.upper), "paper");
  }
  return rep;
}

RecipeReport reproduce_prop42(int m_max, std::uint64_t seed, CertaintyPolicy policy) {
  RecipeReport rep{"prop42", {}};
  const PointConfiguration cfg = gen_prop42(seed);
  const AlphaSequence seq = alpha_sequence(cfg, m_max, policy);
  rep.add("alpha(Z)", "4", std::to_string(seq.values[0]), "paper");
  std::vector<int> expected = {4};
  for (int m = 2; m <= m_max; ++m) expected.push_back(3 * m);
  rep.add("alpha sequence", ints_to_string(expected), ints_to_string(seq.values), "paper");
  return rep;
}

RecipeReport reproduce_conic_example(int k_max, std::uint64_t seed, CertaintyPolicy policy,
                                     bool full) {
  RecipeReport rep{"conic_example", {}};
  const PointConfiguration cfg = gen_conic_example(seed);
  // the full range is modular-first: emptiness is certified by full modular
  // rank, positivity confirmed at a second prime inside the fast search
  const CertaintyPolicy effective = full ? CertaintyPolicy::fast : policy;
  const AlphaSequence seq = alpha_sequence(cfg, k_max, effective);
  rep.add("alpha(Z)", "4", std::to_string(seq.values[0]), "paper");
  const BetaSequence beta = beta_sequence(seq);
  bool increments_ok = true;
  for (int k = 2; k <= std::min(k_max, 29); ++k)
    increments_ok &= (beta.betas[k - 2] == 3);
  rep.add("alpha(kZ) - alpha((k-1)Z) = 3 for k = 2.." + std::to_string(std::min(k_max, 29)),
          "yes", increments_ok ? "yes" : "no", "paper");
  if (k_max >= 30)
    rep.add("alpha(30Z) - alpha(29Z)", "4", std::to_string(beta.betas[28]), "paper");
  return rep;
}

RecipeReport reproduce_six_general(int m_max, std::uint64_t seed, CertaintyPolicy policy) {
  RecipeReport rep{"six_general", {}};
  const PointConfiguration cfg = gen_generic_points(6, seed);
  const AlphaSequence seq = alpha_sequence(cfg, m_max, policy);
  if (m_max >= 10) rep.add("alpha(10Z)", "24", std::to_string(seq.values[9]), "derived");
  const Classification cls = classify(cfg, m_max);
  rep.add("classification", "unclassified", class_tag_name(cls.tag), "derived");
  rep.add("certified lower bound > 9/4", "yes",
          cls.lower_bound_exceeds_nine_quarters ? "yes" : "no", "derived");
  return rep;
}

Json report_to_json(const RecipeReport& rep) {
  Json j;
  j["recipe"] = rep.recipe;
  Json claims = Json::array();
  for (const Claim& c : rep.claims) {
    Json jc;
    jc["name"] = c.name;
    jc["expected"] = c.expected;
    jc["computed"] = c.computed;
    jc["source"] = c.source;
    jc["pass"] = c.pass;
    claims.push_back(std::move(jc));
  }
  j["claims"] = std::move(claims);
  j["pass"] = rep.all_pass();
  return j;
}

void print_report(const RecipeReport& rep) {
  for (const Claim& c : rep.claims) {
    std::cout << (c.pass ? "[ok]   " : "[FAIL] ") << rep.recipe << ": " << c.name
              << " expected " << c.expected;
    if (!c.pass) std::cout << " computed " << c.computed;
    std::cout << " (" << c.source << ")\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact symbolic-power computations for planar point configurations"};
  app.require_subcommand(1);

  // common options
  std::string config_path, output_path, input_path, format = "json", policy_name = "certified";
  std::uint64_t seed = 0;
  bool no_timestamp = false;
  int m = 1, m_max = 4, d_cap = 0, k = 0;

  // gen
  auto* gen = app.add_subcommand("gen", "generate a seeded configuration");
  std::string gen_type;
  int gen_d = 4, gen_k = 3, gen_s = 6;
  gen->add_option("type", gen_type,
                  "star | quasi_star | collinear | prop42 | conic_example | generic")
      ->required();
  gen->add_option("--d", gen_d, "number of lines (star / quasi_star)");
  gen->add_option("--k", gen_k, "points on the line (collinear)");
  gen->add_option("--s", gen_s, "number of points (generic)");
  gen->add_option("--seed", seed, "RNG seed");
  gen->add_option("-o,--output", output_path, "output file (default stdout)");

  // alpha
  auto* alpha_cmd = app.add_subcommand("alpha", "initial degree of one symbolic power");
  alpha_cmd->add_option("--config", config_path, "configuration file")->required();
  alpha_cmd->add_option("--m", m, "multiplicity")->required();
  alpha_cmd->add_option("--policy", policy_name, "fast | certified");
  alpha_cmd->add_option("-o,--output", output_path, "output file");
  alpha_cmd->add_flag("--no-timestamp", no_timestamp, "omit the timestamp field");

  // sequence
  auto* seq_cmd = app.add_subcommand("sequence", "alpha and beta sequences");
  seq_cmd->add_option("--config", config_path, "configuration file")->required();
  seq_cmd->add_option("--mmax", m_max, "largest multiplicity")->required();
  seq_cmd->add_option("--policy", policy_name, "fast | certified");
  seq_cmd->add_option("--format", format, "json | csv");
  seq_cmd->add_option("-o,--output", output_path, "output file");
  seq_cmd->add_flag("--no-timestamp", no_timestamp, "omit the timestamp field");

  // waldschmidt
  auto* wald_cmd = app.add_subcommand("waldschmidt", "certified Waldschmidt interval");
  wald_cmd->add_option("--config", config_path, "configuration file")->required();
  wald_cmd->add_option("--mmax", m_max, "largest multiplicity")->required();
  wald_cmd->add_option("--policy", policy_name, "fast | certified");
  wald_cmd->add_option("-o,--output", output_path, "output file");
  wald_cmd->add_flag("--no-timestamp", no_timestamp, "omit the timestamp field");

  // classify
  auto* cls_cmd = app.add_subcommand("classify", "match the configuration against the named shapes");
  cls_cmd->add_option("--config", config_path, "configuration file")->required();
  cls_cmd->add_option("--mmax", m_max, "largest multiplicity for the bounds");
  cls_cmd->add_option("-o,--output", output_path, "output file");
  cls_cmd->add_flag("--no-timestamp", no_timestamp, "omit the timestamp field");

  // bezout
  auto* bez_cmd = app.add_subcommand("bezout", "Bezout decomposition of a numerical divisor");
  int confluence_trials = 0;
  std::string order_name = "simultaneous";
  bez_cmd->add_option("--input", input_path, "divisor/curves file")->required();
  bez_cmd->add_option("--confluence", confluence_trials, "compare N random single-step orders");
  bez_cmd->add_option("--order", order_name, "simultaneous | single");
  bez_cmd->add_option("--seed", seed, "RNG seed for single-step orders");
  bez_cmd->add_option("-o,--output", output_path, "output file");
  bez_cmd->add_flag("--no-timestamp", no_timestamp, "omit the timestamp field");

  // reproduce
  auto* rep_cmd = app.add_subcommand("reproduce", "recompute a named example end to end");
  std::string recipe;
  int k_max = 8;
  bool full = false;
  rep_cmd->add_option("recipe", recipe,
                      "star4 | quasi_star3 | collinear_k | prop42 | conic_example | six_general")
      ->required();
  rep_cmd->add_option("--mmax", m_max, "largest multiplicity (sequence recipes)");
  rep_cmd->add_option("--kmax", k_max, "largest multiplicity (conic_example)");
  rep_cmd->add_option("--k", k, "single k for collinear_k (default: run k = 2..6)");
  rep_cmd->add_flag("--full", full, "conic_example: run the full k = 30 range, modular-first");
  rep_cmd->add_option("--seed", seed, "RNG seed");
  rep_cmd->add_option("--policy", policy_name, "fast | certified");
  rep_cmd->add_option("-o,--output", output_path, "also write a JSON report here");

  // dump-matrix
  auto* dump_cmd = app.add_subcommand("dump-matrix", "debug CSV dump of a condition matrix");
  dump_cmd->add_option("--config", config_path, "configuration file")->required();
  dump_cmd->add_option("--m", m, "multiplicity")->required();
  dump_cmd->add_option("--d", d_cap, "degree")->required();
  dump_cmd->add_option("-o,--output", output_path, "output file");

  CLI11_PARSE(app, argc, argv);

  OutputOptions out{output_path, no_timestamp, format};

  try {
    if (gen->parsed()) {
      PointConfiguration cfg = [&] {
        if (gen_type == "star") return gen_star(gen_d, seed);
        if (gen_type == "quasi_star") return gen_quasi_star(gen_d, seed);
        if (gen_type == "collinear") return gen_collinear_plus_point(gen_k, seed);
        if (gen_type == "prop42") return gen_prop42(seed);
        if (gen_type == "conic_example") return gen_conic_example(seed);
        if (gen_type == "generic") return gen_generic_points(gen_s, seed);
        throw precondition_error("unknown generator \"" + gen_type + "\"");
      }();
      Json j = config_to_json(cfg);
      j["generator"] = gen_type;
      j["seed"] = seed;
      const std::string text = j.dump(2) + "\n";
      emit(text, out);
      return 0;
    }

    const CertaintyPolicy policy = parse_policy(policy_name);

    if (alpha_cmd->parsed()) {
      const PointConfiguration cfg = load_config(config_path);
      if (m < 1) throw precondition_error("--m must be >= 1");
      const int value = alpha(FatPointScheme(cfg, m), policy);
      Json manifest{{"command", "alpha"}, {"config", config_path}, {"m", m},
                    {"policy", policy_name}, {"seed", seed}, {"prime_bits", 31}};
      Json result{{"alpha", value}};
      emit_json(manifest, result, out);
      return 0;
    }

    if (seq_cmd->parsed() || wald_cmd->parsed()) {
      const PointConfiguration cfg = load_config(config_path);
      if (m_max < 1) throw precondition_error("--mmax must be >= 1");
      const AlphaSequence seq = alpha_sequence(cfg, m_max, policy);
      const WaldschmidtInterval w = waldschmidt_from(seq);
      Json manifest{{"command", seq_cmd->parsed() ? "sequence" : "waldschmidt"},
                    {"config", config_path}, {"mmax", m_max}, {"policy", policy_name},
                    {"seed", seed}, {"prime_bits", 31}};
      if (seq_cmd->parsed() && format == "csv") {
        std::ostringstream os;
        os << "# command=sequence config=" << config_path << " mmax=" << m_max
           << " policy=" << policy_name << " seed=" << seed << "\n";
        os << sequence_to_csv(seq);
        emit(os.str(), out);
      } else {
        emit_json(manifest, analysis_to_json(seq, w, std::nullopt), out);
      }
      return 0;
    }

    if (cls_cmd->parsed()) {
      const PointConfiguration cfg = load_config(config_path);
      const Classification cls = classify(cfg, m_max);
      Json manifest{{"command", "classify"}, {"config", config_path}, {"mmax", m_max},
                    {"policy", policy_name}, {"seed", seed}, {"prime_bits", 31}};
      emit_json(manifest, classification_to_json(cls), out);
      return 0;
    }

    if (bez_cmd->parsed()) {
      const BezoutInput input = load_bezout_input(input_path);
      Json manifest{{"command", "bezout"}, {"input", input_path}, {"seed", seed},
                    {"order", order_name}, {"confluence", confluence_trials}};
      Json result;
      if (order_name == "single") {
        result = bezout_to_json(
            bezout_decompose(input.divisor, input.curves, ReductionOrder::single_random(seed)),
            input.curves);
      } else if (order_name == "simultaneous") {
        result = bezout_to_json(bezout_decompose(input.divisor, input.curves), input.curves);
      } else {
        throw precondition_error("unknown order \"" + order_name + "\"");
      }
      if (confluence_trials > 0) {
        const ConfluenceReport rep =
            confluence_test(input.divisor, input.curves, confluence_trials, seed);
        result["confluence"] = confluence_to_json(rep);
      }
      emit_json(manifest, result, out);
      return 0;
    }

    if (rep_cmd->parsed()) {
      if (full) k_max = std::max(k_max, 30);
      const bool mmax_given = rep_cmd->count("--mmax") > 0;
      RecipeReport report = [&] {
        if (recipe == "star4") return reproduce_star4(mmax_given ? m_max : 8, seed, policy);
        if (recipe == "quasi_star3")
          return reproduce_quasi_star3(mmax_given ? m_max : 8, seed, policy);
        if (recipe == "collinear_k") return reproduce_collinear(k, seed, policy);
        if (recipe == "prop42") return reproduce_prop42(mmax_given ? m_max : 6, seed, policy);
        if (recipe == "conic_example") return reproduce_conic_example(k_max, seed, policy, full);
        if (recipe == "six_general")
          return reproduce_six_general(mmax_given ? m_max : 10, seed, policy);
        throw precondition_error("unknown recipe \"" + recipe + "\"");
      }();
      print_report(report);
      if (!output_path.empty()) {
        Json manifest{{"command", "reproduce"}, {"recipe", recipe}, {"seed", seed},
                      {"policy", policy_name}, {"prime_bits", 31}};
        OutputOptions file_out{output_path, no_timestamp, "json"};
        emit_json(manifest, report_to_json(report), file_out);
      }
      return report.all_pass() ? 0 : kExitMismatch;
    }

    if (dump_cmd->parsed()) {
      const PointConfiguration cfg = load_config(config_path);
      const ConditionMatrix mat = build_condition_matrix(FatPointScheme(cfg, m), d_cap);
      std::ostringstream os;
      dump_matrix_csv(mat, os);
      emit(os.str(), out);
      return 0;
    }
  } catch (const parse_error& e) {
    Json err{{"error", "parse"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return kExitParse;
  } catch (const genericity_error& e) {
    Json err{{"error", "genericity"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return kExitGenericity;
  } catch (const precondition_error& e) {
    Json err{{"error", "precondition"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return kExitPrecondition;
  } catch (const internal_error& e) {
    Json err{{"error", "internal"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    Json err{{"error", "internal"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return kExitInternal;
  }
  return 0;
}
