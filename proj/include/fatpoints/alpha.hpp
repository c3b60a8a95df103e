#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fatpoints/interpolation.hpp"

namespace fatpoints {

// alpha((m+1)Z) values for m = 0..m_max-1, strictly increasing, with a
// certification flag per entry.
struct AlphaSequence {
  PointConfiguration config;
  std::vector<int> values;
  std::vector<bool> certified;
};

// First differences; beta0 is alpha(Z) itself.
struct BetaSequence {
  int beta0 = 0;
  std::vector<int> betas;

  // full list beta_0, beta_1, ... as printed and used for period search
  std::vector<int> full() const;
};

struct WaldschmidtInterval {
  Rational lower;       // max over computed m of (alpha(mZ)+1)/(m+1)
  Rational upper;       // min over computed m of alpha(mZ)/m
  int lower_at = 1;     // first m attaining each bound
  int upper_at = 1;
  bool exact = false;   // lower == upper
  std::optional<Rational> conjectured;  // periodic-tail evidence, never certified
  int period = 0;
  int period_start = 0;  // index into the full beta list
};

enum class ClassTag {
  line,
  conic,
  four_star,
  three_quasi_star,
  collinear_plus_one,
  unclassified,
};

std::string class_tag_name(ClassTag tag);

struct Classification {
  ClassTag tag = ClassTag::unclassified;
  int k = 0;  // populated for collinear_plus_one
  std::string evidence;
  std::optional<WaldschmidtInterval> interval;    // computed for unclassified
  bool lower_bound_exceeds_nine_quarters = false;
};

// Least d with a nonzero degree-d form in the m-th symbolic power. The
// search window is theorem-backed: it starts at the Chudnovsky/EV lower
// bound and is capped by subadditivity, so termination is unconditional.
int alpha(const FatPointScheme& scheme, CertaintyPolicy policy);

// alpha(mZ) for m = 1..m_max, each search seeded with EV lower bounds and
// subadditive caps from the earlier entries. Validates strict monotonicity,
// subadditivity, Chudnovsky and EV on the result (violations are engine
// bugs and raise internal_error).
AlphaSequence alpha_sequence(const PointConfiguration& cfg, int m_max,
                             CertaintyPolicy policy);

// Requires at least 2 entries.
BetaSequence beta_sequence(const AlphaSequence& seq);

// (alpha(Z)+1)/2, a certified lower bound for the Waldschmidt constant.
Rational chudnovsky_bound(int alpha1);

// Necessary self-consistency of a sequence: strictly increasing and
// (alpha(nZ)+1)/(n+1) <= alpha(mZ)/m for every n <= m in range.
bool ev_check(const AlphaSequence& seq);

// (d-1)(m+k)/(k-1): the bound on alpha((m+k)Z) when alpha((m+k)Z) =
// alpha(mZ) + d. Requires d >= k >= 2 and m >= 1.
Rational ev_gap_bound(int m, int k, int d);

WaldschmidtInterval waldschmidt_from(const AlphaSequence& seq);
WaldschmidtInterval waldschmidt_interval(const PointConfiguration& cfg, int m_max,
                                         CertaintyPolicy policy);

// Geometric detectors first (most specific shape wins), Waldschmidt bounds
// only for the leftover case. Requires m_max >= 2.
Classification classify(const PointConfiguration& cfg, int m_max);

}  // namespace fatpoints
