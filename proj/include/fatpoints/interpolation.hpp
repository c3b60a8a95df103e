#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>

#include "fatpoints/forms.hpp"
#include "fatpoints/linalg.hpp"
#include "fatpoints/projective.hpp"

namespace fatpoints {

// The scheme mZ: every point of the configuration taken with the same
// multiplicity m.
struct FatPointScheme {
  PointConfiguration config;
  int multiplicity;

  FatPointScheme(PointConfiguration cfg, int m);
};

enum class CertaintyPolicy { fast, certified };

// Conditions for a degree-d form to vanish to order m on the configuration:
// one row per point and per derivative multi-index (a,b,c), a+b+c = m-1,
// holding the evaluations of that partial derivative on each degree-d
// monomial. Entries are exact integers (points enter through their primitive
// integer representatives). The kernel is the coefficient space of the
// degree-d part of the m-th symbolic power.
struct ConditionMatrix {
  int degree = 0;
  int multiplicity = 1;
  std::size_t points = 0;
  IntMatrix entries;

  std::size_t rows() const { return entries.rows; }
  std::size_t cols() const { return entries.cols; }
};

// Requires degree >= multiplicity - 1; below that the derivative encoding
// degenerates (and the system is trivially empty).
ConditionMatrix build_condition_matrix(const FatPointScheme& scheme, int degree);

// Rank of the entrywise reduction mod prime; always <= the rational rank.
// Throws precondition_error unless prime is an odd prime > max(degree, m).
std::size_t rank_modular(const ConditionMatrix& mat, std::uint32_t prime);

// Exact rank over Q (fraction-free elimination).
std::size_t rank_rational(const ConditionMatrix& mat);

// Same value as rank_modular(build_condition_matrix(scheme, d), prime) but
// generates rows mod p on the fly; this is what makes large fast-policy
// searches affordable in time and memory.
std::size_t rank_modular_direct(const FatPointScheme& scheme, int degree,
                                std::uint32_t prime);

struct LinearSystemResult {
  int degree = 0;
  int multiplicity = 1;
  std::size_t dimension = 0;
  std::optional<Form> witness;
  bool certified = false;
};

// dimension = columns - rank of the condition system.
//
// fast: single modular rank; certified only when the modular rank is full
// (full modular rank forces full rational rank).
//
// certified: emptiness claims come from full modular rank (one-sided, hence
// sound); any positive dimension is pinned by exact rational kernel vectors
// (modular rank bounds the rank from below, the verified kernel vectors
// bound it from above), and the first kernel vector is returned as witness
// after passing verify_multiplicity.
LinearSystemResult system_dimension(const FatPointScheme& scheme, int degree,
                                    CertaintyPolicy policy);

// True iff all order-(m-1) partial derivatives of the form vanish at every
// point of the scheme, in exact arithmetic. Throws precondition_error on a
// zero form.
bool verify_multiplicity(const Form& form, const FatPointScheme& scheme);

// Debug dump: header line with d, m, s and the dimensions, then one CSV line
// of integers per row.
void dump_matrix_csv(const ConditionMatrix& mat, std::ostream& os);

}  // namespace fatpoints
