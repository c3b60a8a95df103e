#pragma once

#include <array>
#include <vector>

#include "fatpoints/numeric.hpp"
#include "fatpoints/projective.hpp"

namespace fatpoints {

// Monomials of degree d in x, y, z are enumerated with exponents (i, j, k),
// i + j + k = d, ordered by descending i then descending j. Every
// coefficient vector in the library uses this order.
std::size_t monomial_count(int degree);
std::vector<std::array<int, 3>> monomial_exponents(int degree);
std::size_t monomial_index(int degree, int i, int j);

// Homogeneous form with exact integer coefficients.
struct Form {
  int degree = 0;
  std::vector<Integer> coeffs;

  Form() : coeffs(1, Integer(0)) {}
  Form(int d, std::vector<Integer> c);  // throws on size/degree mismatch

  bool is_zero() const;
  const Integer& coeff(int i, int j) const { return coeffs[monomial_index(degree, i, j)]; }

  Integer evaluate(const IntegerTriple& p) const;
};

Form form_from_line(const ProjectiveLine& l);
Form multiply(const Form& a, const Form& b);
Form power(const Form& a, int e);

}  // namespace fatpoints
