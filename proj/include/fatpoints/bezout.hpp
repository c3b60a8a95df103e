#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fatpoints/numeric.hpp"
#include "fatpoints/projective.hpp"

namespace fatpoints {

// Numerical divisor data: degree plus one multiplicity per configuration
// point. Residuals of the reduction may carry negative entries; they are
// kept raw and flagged, never clamped.
struct DivisorClass {
  Integer degree;
  std::vector<Integer> mults;
};

// Numerical class of an (assumed irreducible) curve: degree >= 1 and
// nonnegative multiplicities. The module never checks irreducibility; the
// decomposition is determined purely numerically.
struct CurveClass {
  Integer degree;
  std::vector<Integer> mults;
  std::optional<std::string> tag;
};

// Convenience: the class of a line together with its incidences on a
// configuration.
CurveClass line_class(const ProjectiveLine& l, const PointConfiguration& cfg,
                      std::optional<std::string> tag = std::nullopt);

struct ReductionOrder {
  enum class Kind { simultaneous, single_random };
  Kind kind = Kind::simultaneous;
  std::uint64_t seed = 0;

  static ReductionOrder simultaneous() { return {}; }
  static ReductionOrder single_random(std::uint64_t seed) {
    return {Kind::single_random, seed};
  }
};

struct BezoutDecomposition {
  std::vector<Integer> coeffs;  // a_i per input curve
  DivisorClass residual;
  std::vector<std::vector<std::size_t>> rounds;  // curve indices subtracted per round
  bool non_effective = false;  // some residual (or the input) had negative data
  std::vector<std::vector<std::size_t>> duplicate_groups;  // identical input classes
};

// The Bezout scores (d_i, e_i) = (deg D * c_i, sum_j m_j m^i_j) per curve.
std::vector<std::pair<Integer, Integer>> bezout_step_scores(
    const DivisorClass& divisor, const std::vector<CurveClass>& curves);

// Repeatedly subtracts curves whose score e_i strictly exceeds d_i —
// every violating curve once per round in simultaneous order, one uniformly
// chosen violating curve per round in single_random order — until no curve
// violates. The round cap guards non-terminating purely-numerical inputs.
BezoutDecomposition bezout_decompose(const DivisorClass& divisor,
                                     const std::vector<CurveClass>& curves,
                                     const ReductionOrder& order = ReductionOrder::simultaneous());

// deg(B) * c_i >= sum_j residual_j * m^i_j for every curve.
bool check_residual_inequality(const BezoutDecomposition& dec,
                               const std::vector<CurveClass>& curves);

struct ConfluenceReport {
  int trials = 0;
  bool all_identical = true;
  BezoutDecomposition simultaneous;
  std::optional<BezoutDecomposition> counterexample;  // first mismatching run
  std::optional<int> counterexample_trial;
};

// Compares the simultaneous-order result against `trials` random
// single-step orders. A mismatch would contradict the uniqueness of the
// decomposition and signals an implementation bug.
ConfluenceReport confluence_test(const DivisorClass& divisor,
                                 const std::vector<CurveClass>& curves, int trials,
                                 std::uint64_t seed);

}  // namespace fatpoints
