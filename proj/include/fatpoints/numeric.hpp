#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <string>

namespace fatpoints {

// All arithmetic in the library is exact. Integers and rationals are
// GMP-backed; mpq_class canonicalization gives the lowest-terms,
// positive-denominator representation required everywhere.
using Integer = mpz_class;
using Rational = mpq_class;

// num/den in lowest terms, den > 0. Throws precondition_error on den == 0.
Rational make_rational(const Integer& num, const Integer& den);

// Exact fraction strings: "p/q" (q > 0, lowest terms). parse accepts "p"
// as shorthand for "p/1". Throws parse_error on anything else.
Rational parse_rational(const std::string& s);
std::string format_rational(const Rational& q);

// ceil(a/b) for exact integers, b > 0.
Integer ceil_div(const Integer& a, const Integer& b);

// Deterministic uniform draws on top of mt19937_64. The engine itself is
// fully specified by the standard; std::uniform_int_distribution is not,
// so the range reduction is hand-rolled (rejection sampling) to keep
// identical seeds giving identical configurations on every platform.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);

 private:
  std::mt19937_64 engine_;
};

}  // namespace fatpoints
