#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fatpoints/numeric.hpp"

namespace fatpoints {

using RationalTriple = std::array<Rational, 3>;
using IntegerTriple = std::array<Integer, 3>;

namespace detail {
// Canonical scaling: first nonzero coordinate equals 1. Throws
// precondition_error when all three entries vanish.
RationalTriple canonicalize(RationalTriple t, const char* what);
// Coprime integer representative with positive first nonzero entry.
IntegerTriple primitive_of(const RationalTriple& t);
}  // namespace detail

// Point of P^2 with exact rational coordinates, stored canonically so that
// equality is plain field comparison.
class ProjectivePoint {
 public:
  ProjectivePoint(const Rational& x, const Rational& y, const Rational& z);
  static ProjectivePoint from_integers(long x, long y, long z);

  const RationalTriple& coords() const { return coords_; }
  const IntegerTriple& primitive() const { return primitive_; }

  bool operator==(const ProjectivePoint& o) const { return coords_ == o.coords_; }
  bool operator!=(const ProjectivePoint& o) const { return !(*this == o); }
  bool operator<(const ProjectivePoint& o) const;

  std::string str() const;

 private:
  RationalTriple coords_;
  IntegerTriple primitive_;
};

// Line of P^2 in dual coordinates, canonicalized the same way.
class ProjectiveLine {
 public:
  ProjectiveLine(const Rational& a, const Rational& b, const Rational& c);
  static ProjectiveLine from_integers(long a, long b, long c);

  const RationalTriple& coeffs() const { return coeffs_; }
  const IntegerTriple& primitive() const { return primitive_; }

  bool operator==(const ProjectiveLine& o) const { return coeffs_ == o.coeffs_; }
  bool operator!=(const ProjectiveLine& o) const { return !(*this == o); }
  bool operator<(const ProjectiveLine& o) const;

  std::string str() const;

 private:
  RationalTriple coeffs_;
  IntegerTriple primitive_;
};

// Ordered list of pairwise distinct points.
struct PointConfiguration {
  std::vector<ProjectivePoint> points;
  std::optional<std::string> label;

  PointConfiguration(std::vector<ProjectivePoint> pts,
                     std::optional<std::string> tag = std::nullopt);

  std::size_t size() const { return points.size(); }
};

ProjectiveLine line_through(const ProjectivePoint& p, const ProjectivePoint& q);
ProjectivePoint meet(const ProjectiveLine& l1, const ProjectiveLine& l2);

bool incident(const ProjectivePoint& p, const ProjectiveLine& l);

// True iff all points lie on one common line. Requires >= 2 points.
bool collinear(std::span<const ProjectivePoint> pts);

// True iff a nonzero quadratic form vanishes on all the points, decided by
// the exact rank of the Veronese evaluation matrix.
bool on_common_conic(std::span<const ProjectivePoint> pts);

}  // namespace fatpoints
