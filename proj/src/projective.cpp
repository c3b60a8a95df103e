#include "fatpoints/projective.hpp"

#include <algorithm>

#include "fatpoints/error.hpp"
#include "fatpoints/linalg.hpp"

namespace fatpoints {

namespace detail {

RationalTriple canonicalize(RationalTriple t, const char* what) {
  int lead = -1;
  for (int i = 0; i < 3; ++i) {
    if (sgn(t[i]) != 0) {
      lead = i;
      break;
    }
  }
  if (lead < 0) throw precondition_error(std::string(what) + ": all coordinates zero");
  const Rational scale = t[lead];
  for (int i = 0; i < 3; ++i) t[i] /= scale;
  return t;
}

IntegerTriple primitive_of(const RationalTriple& t) {
  Integer lcm(1);
  for (const Rational& q : t)
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den().get_mpz_t());
  IntegerTriple out;
  for (int i = 0; i < 3; ++i) {
    Integer s;
    mpz_divexact(s.get_mpz_t(), lcm.get_mpz_t(), t[i].get_den().get_mpz_t());
    out[i] = t[i].get_num() * s;
  }
  Integer content(0);
  for (const Integer& e : out) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), e.get_mpz_t());
  if (content > 1)
    for (Integer& e : out) mpz_divexact(e.get_mpz_t(), e.get_mpz_t(), content.get_mpz_t());
  // canonical scaling already makes the first nonzero entry positive
  return out;
}

std::string triple_str(const RationalTriple& t, char open, char close) {
  std::string s(1, open);
  for (int i = 0; i < 3; ++i) {
    if (i) s += " : ";
    s += format_rational(t[i]);
  }
  s += close;
  return s;
}

IntegerTriple cross(const IntegerTriple& a, const IntegerTriple& b) {
  return {a[1] * b[2] - a[2] * b[1],
          a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

Integer dot(const IntegerTriple& a, const IntegerTriple& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

}  // namespace detail

ProjectivePoint::ProjectivePoint(const Rational& x, const Rational& y, const Rational& z)
    : coords_(detail::canonicalize({x, y, z}, "point")),
      primitive_(detail::primitive_of(coords_)) {}

ProjectivePoint ProjectivePoint::from_integers(long x, long y, long z) {
  return ProjectivePoint(Rational(x), Rational(y), Rational(z));
}

bool ProjectivePoint::operator<(const ProjectivePoint& o) const {
  for (int i = 0; i < 3; ++i) {
    const int c = cmp(coords_[i], o.coords_[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

std::string ProjectivePoint::str() const { return detail::triple_str(coords_, '[', ']'); }

ProjectiveLine::ProjectiveLine(const Rational& a, const Rational& b, const Rational& c)
    : coeffs_(detail::canonicalize({a, b, c}, "line")),
      primitive_(detail::primitive_of(coeffs_)) {}

ProjectiveLine ProjectiveLine::from_integers(long a, long b, long c) {
  return ProjectiveLine(Rational(a), Rational(b), Rational(c));
}

bool ProjectiveLine::operator<(const ProjectiveLine& o) const {
  for (int i = 0; i < 3; ++i) {
    const int c = cmp(coeffs_[i], o.coeffs_[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

std::string ProjectiveLine::str() const { return detail::triple_str(coeffs_, '(', ')'); }

PointConfiguration::PointConfiguration(std::vector<ProjectivePoint> pts,
                                       std::optional<std::string> tag)
    : points(std::move(pts)), label(std::move(tag)) {
  if (points.empty()) throw precondition_error("configuration must be nonempty");
  std::vector<ProjectivePoint> sorted = points;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i - 1] == sorted[i])
      throw precondition_error("configuration points must be pairwise distinct");
}

ProjectiveLine line_through(const ProjectivePoint& p, const ProjectivePoint& q) {
  if (p == q) throw precondition_error("line_through: identical points");
  const IntegerTriple c = detail::cross(p.primitive(), q.primitive());
  return ProjectiveLine(Rational(c[0]), Rational(c[1]), Rational(c[2]));
}

ProjectivePoint meet(const ProjectiveLine& l1, const ProjectiveLine& l2) {
  if (l1 == l2) throw precondition_error("meet: identical lines");
  const IntegerTriple c = detail::cross(l1.primitive(), l2.primitive());
  return ProjectivePoint(Rational(c[0]), Rational(c[1]), Rational(c[2]));
}

bool incident(const ProjectivePoint& p, const ProjectiveLine& l) {
  return sgn(detail::dot(p.primitive(), l.primitive())) == 0;
}

bool collinear(std::span<const ProjectivePoint> pts) {
  if (pts.size() < 2) throw precondition_error("collinear: need at least 2 points");
  // find two distinct points spanning the candidate line
  std::size_t second = 0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i] != pts[0]) {
      second = i;
      break;
    }
  }
  if (second == 0) return true;  // all coincide
  const ProjectiveLine l = line_through(pts[0], pts[second]);
  for (const ProjectivePoint& p : pts)
    if (!incident(p, l)) return false;
  return true;
}

bool on_common_conic(std::span<const ProjectivePoint> pts) {
  if (pts.size() < 6) return true;  // 5 conditions on 6 coefficients
  IntMatrix m(pts.size(), 6);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const IntegerTriple& v = pts[i].primitive();
    m.at(i, 0) = v[0] * v[0];
    m.at(i, 1) = v[0] * v[1];
    m.at(i, 2) = v[0] * v[2];
    m.at(i, 3) = v[1] * v[1];
    m.at(i, 4) = v[1] * v[2];
    m.at(i, 5) = v[2] * v[2];
  }
  return rank_rational(m) < 6;
}

}  // namespace fatpoints
