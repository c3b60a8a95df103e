#include "fatpoints/numeric.hpp"

#include "fatpoints/error.hpp"

namespace fatpoints {

Rational make_rational(const Integer& num, const Integer& den) {
  if (sgn(den) == 0) throw precondition_error("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw parse_error("empty fraction string");
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      Integer num(s);
      return Rational(num);
    }
    Integer num(s.substr(0, slash));
    Integer den(s.substr(slash + 1));
    if (sgn(den) == 0) throw parse_error("zero denominator in \"" + s + "\"");
    return make_rational(num, den);
  } catch (const std::invalid_argument&) {
    throw parse_error("malformed fraction string \"" + s + "\"");
  }
}

std::string format_rational(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Integer ceil_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

std::int64_t SeededRng::uniform(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw precondition_error("uniform: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next_u64());  // full range
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t r;
  do {
    r = next_u64();
  } while (r >= limit);
  return lo + static_cast<std::int64_t>(r % span);
}

}  // namespace fatpoints
