#pragma once

#include <cstdint>
#include <vector>

#include "fatpoints/projective.hpp"

namespace fatpoints {

// Seeded generators for the named configurations. "General position" is
// operationalized as: draw integer coordinates/parameters from a seeded box,
// then verify an explicit list of genericity predicates, retrying with fresh
// randomness up to kRetryCap times before raising genericity_error.
// Identical seeds give identical configurations, bit for bit.
inline constexpr int kRetryCap = 64;
inline constexpr long kCoordBound = 1000;

// All d(d-1)/2 pairwise intersection points of d drawn lines (pairwise
// distinct, no three concurrent). Requires d >= 2.
PointConfiguration gen_star(int d, std::uint64_t seed);

// A d-star plus one extra point on each line; extras avoid all other lines
// and vertices, no three of them are collinear, and the output carries no
// collinear triple beyond the d line triples. Requires d >= 3.
PointConfiguration gen_quasi_star(int d, std::uint64_t seed);

// k distinct points on a line plus one point off it. Requires k >= 1.
PointConfiguration gen_collinear_plus_point(int k, std::uint64_t seed);

// Ten points: the three vertices of a triangle of lines, two extra points on
// each line, and one general point; exactly three maximal collinear
// quadruples, and no cubic passes through all ten points.
PointConfiguration gen_prop42(std::uint64_t seed);

// Seven points on the conic x z = y^2 with parameters drawn from a small
// window, plus three constructed chord intersections off the conic.
PointConfiguration gen_conic_example(std::uint64_t seed);

// s distinct points with no three collinear and (for s >= 6) no common
// conic.
PointConfiguration gen_generic_points(int s, std::uint64_t seed);

// Combinatorial recognition by enumerating maximal collinear subsets and
// matching the incidence structure.
bool is_star(const PointConfiguration& cfg, int d);
bool is_quasi_star(const PointConfiguration& cfg, int d);

// Maximal collinear subsets of the configuration, as bitmasks over point
// indices (configurations up to 64 points). Every mask has >= 2 bits.
std::vector<std::uint64_t> maximal_collinear_masks(const PointConfiguration& cfg);

}  // namespace fatpoints
