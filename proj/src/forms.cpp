#include "fatpoints/forms.hpp"

#include "fatpoints/error.hpp"

namespace fatpoints {

std::size_t monomial_count(int degree) {
  if (degree < 0) throw precondition_error("monomial_count: negative degree");
  return static_cast<std::size_t>(degree + 1) * static_cast<std::size_t>(degree + 2) / 2;
}

std::vector<std::array<int, 3>> monomial_exponents(int degree) {
  std::vector<std::array<int, 3>> out;
  out.reserve(monomial_count(degree));
  for (int i = degree; i >= 0; --i)
    for (int j = degree - i; j >= 0; --j) out.push_back({i, j, degree - i - j});
  return out;
}

std::size_t monomial_index(int degree, int i, int j) {
  const int di = degree - i;
  return static_cast<std::size_t>(di) * (di + 1) / 2 + static_cast<std::size_t>(di - j);
}

Form::Form(int d, std::vector<Integer> c) : degree(d), coeffs(std::move(c)) {
  if (d < 0 || coeffs.size() != monomial_count(d))
    throw precondition_error("form coefficient vector does not match its degree");
}

bool Form::is_zero() const {
  for (const Integer& e : coeffs)
    if (sgn(e) != 0) return false;
  return true;
}

Integer Form::evaluate(const IntegerTriple& p) const {
  std::vector<Integer> xp(degree + 1), yp(degree + 1), zp(degree + 1);
  xp[0] = yp[0] = zp[0] = 1;
  for (int t = 1; t <= degree; ++t) {
    xp[t] = xp[t - 1] * p[0];
    yp[t] = yp[t - 1] * p[1];
    zp[t] = zp[t - 1] * p[2];
  }
  Integer acc(0);
  std::size_t idx = 0;
  for (int i = degree; i >= 0; --i)
    for (int j = degree - i; j >= 0; --j, ++idx) {
      if (sgn(coeffs[idx]) == 0) continue;
      acc += coeffs[idx] * xp[i] * yp[j] * zp[degree - i - j];
    }
  return acc;
}

Form form_from_line(const ProjectiveLine& l) {
  const IntegerTriple& c = l.primitive();
  return Form(1, {c[0], c[1], c[2]});
}

Form multiply(const Form& a, const Form& b) {
  const int d = a.degree + b.degree;
  std::vector<Integer> out(monomial_count(d), Integer(0));
  const auto ea = monomial_exponents(a.degree);
  const auto eb = monomial_exponents(b.degree);
  for (std::size_t s = 0; s < ea.size(); ++s) {
    if (sgn(a.coeffs[s]) == 0) continue;
    for (std::size_t t = 0; t < eb.size(); ++t) {
      if (sgn(b.coeffs[t]) == 0) continue;
      const std::size_t idx = monomial_index(d, ea[s][0] + eb[t][0], ea[s][1] + eb[t][1]);
      out[idx] += a.coeffs[s] * b.coeffs[t];
    }
  }
  return Form(d, std::move(out));
}

Form power(const Form& a, int e) {
  if (e < 0) throw precondition_error("power: negative exponent");
  Form acc(0, {Integer(1)});
  for (int t = 0; t < e; ++t) acc = multiply(acc, a);
  return acc;
}

}  // namespace fatpoints
