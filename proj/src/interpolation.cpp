#include "fatpoints/interpolation.hpp"

#include <algorithm>
#include <ostream>

#include "fatpoints/error.hpp"

namespace fatpoints {

FatPointScheme::FatPointScheme(PointConfiguration cfg, int m)
    : config(std::move(cfg)), multiplicity(m) {
  if (m < 1) throw precondition_error("multiplicity must be >= 1");
}

namespace {

// falling factorials ff[n][t] = n (n-1) ... (n-t+1), exact
std::vector<std::vector<Integer>> falling_factorials(int max_n, int max_t) {
  std::vector<std::vector<Integer>> ff(max_n + 1, std::vector<Integer>(max_t + 1));
  for (int n = 0; n <= max_n; ++n) {
    ff[n][0] = 1;
    for (int t = 1; t <= max_t; ++t) ff[n][t] = ff[n][t - 1] * (n - t + 1);
  }
  return ff;
}

void check_prime_argument(std::uint32_t prime, int degree, int multiplicity) {
  if (prime < 3 || prime % 2 == 0 || !is_small_prime(prime))
    throw precondition_error("modular rank needs an odd prime");
  if (prime <= static_cast<std::uint32_t>(std::max(degree, multiplicity)))
    throw precondition_error("prime too small for this degree and multiplicity");
}

}  // namespace

ConditionMatrix build_condition_matrix(const FatPointScheme& scheme, int degree) {
  const int m = scheme.multiplicity;
  if (degree < m - 1)
    throw precondition_error("condition matrix needs degree >= multiplicity - 1");
  const auto derivs = monomial_exponents(m - 1);
  const auto monos = monomial_exponents(degree);
  const std::size_t s = scheme.config.size();

  ConditionMatrix out;
  out.degree = degree;
  out.multiplicity = m;
  out.points = s;
  out.entries = IntMatrix(s * derivs.size(), monos.size());

  const auto ff = falling_factorials(degree, m - 1);
  std::vector<Integer> xp(degree + 1), yp(degree + 1), zp(degree + 1);
  std::size_t row = 0;
  for (std::size_t pt = 0; pt < s; ++pt) {
    const IntegerTriple& v = scheme.config.points[pt].primitive();
    xp[0] = yp[0] = zp[0] = 1;
    for (int t = 1; t <= degree; ++t) {
      xp[t] = xp[t - 1] * v[0];
      yp[t] = yp[t - 1] * v[1];
      zp[t] = zp[t - 1] * v[2];
    }
    for (const auto& d : derivs) {
      Integer* dst = &out.entries.data[row * out.entries.cols];
      for (std::size_t c = 0; c < monos.size(); ++c) {
        const auto& e = monos[c];
        if (e[0] < d[0] || e[1] < d[1] || e[2] < d[2]) continue;
        dst[c] = ff[e[0]][d[0]] * ff[e[1]][d[1]] * ff[e[2]][d[2]] * xp[e[0] - d[0]] *
                 yp[e[1] - d[1]] * zp[e[2] - d[2]];
      }
      ++row;
    }
  }
  return out;
}

std::size_t rank_modular(const ConditionMatrix& mat, std::uint32_t prime) {
  check_prime_argument(prime, mat.degree, mat.multiplicity);
  return rank_mod(mat.entries, prime);
}

std::size_t rank_rational(const ConditionMatrix& mat) {
  return rank_rational(mat.entries);
}

std::size_t rank_modular_direct(const FatPointScheme& scheme, int degree,
                                std::uint32_t prime) {
  const int m = scheme.multiplicity;
  if (degree < m - 1)
    throw precondition_error("condition matrix needs degree >= multiplicity - 1");
  check_prime_argument(prime, degree, m);
  const ModArith F(prime);
  const auto derivs = monomial_exponents(m - 1);
  const auto monos = monomial_exponents(degree);
  const std::size_t s = scheme.config.size();

  // falling factorials mod p
  std::vector<std::vector<std::uint32_t>> ff(degree + 1,
                                             std::vector<std::uint32_t>(m, 0));
  for (int n = 0; n <= degree; ++n) {
    ff[n][0] = 1 % prime;
    for (int t = 1; t <= m - 1; ++t) {
      const long factor = n - t + 1;
      ff[n][t] = factor <= 0 ? 0 : F.mul(ff[n][t - 1], static_cast<std::uint32_t>(factor) % prime);
    }
  }

  ModMatrix mm(s * derivs.size(), monos.size(), prime);
  std::vector<std::uint32_t> xp(degree + 1), yp(degree + 1), zp(degree + 1);
  std::size_t row = 0;
  for (std::size_t pt = 0; pt < s; ++pt) {
    const IntegerTriple& v = scheme.config.points[pt].primitive();
    xp[0] = yp[0] = zp[0] = 1 % prime;
    const std::uint32_t x0 = mod_of(v[0], F), y0 = mod_of(v[1], F), z0 = mod_of(v[2], F);
    for (int t = 1; t <= degree; ++t) {
      xp[t] = F.mul(xp[t - 1], x0);
      yp[t] = F.mul(yp[t - 1], y0);
      zp[t] = F.mul(zp[t - 1], z0);
    }
    for (const auto& d : derivs) {
      std::uint32_t* dst = &mm.data[row * mm.cols];
      for (std::size_t c = 0; c < monos.size(); ++c) {
        const auto& e = monos[c];
        if (e[0] < d[0] || e[1] < d[1] || e[2] < d[2]) continue;
        const std::uint32_t f =
            F.mul(F.mul(ff[e[0]][d[0]], ff[e[1]][d[1]]), ff[e[2]][d[2]]);
        dst[c] = F.mul(f, F.mul(xp[e[0] - d[0]], F.mul(yp[e[1] - d[1]], zp[e[2] - d[2]])));
      }
      ++row;
    }
  }
  return eliminate_mod(mm).rank;
}

namespace {

Form witness_to_form(int degree, std::vector<Integer> v) {
  return Form(degree, std::move(v));
}

}  // namespace

LinearSystemResult system_dimension(const FatPointScheme& scheme, int degree,
                                    CertaintyPolicy policy) {
  const int m = scheme.multiplicity;
  LinearSystemResult res;
  res.degree = degree;
  res.multiplicity = m;
  if (degree < 0) throw precondition_error("negative degree");

  const std::size_t cols = monomial_count(degree);
  if (degree < m) {
    // a nonzero curve of degree d has multiplicity at most d at a point
    res.dimension = 0;
    res.certified = true;
    return res;
  }
  const std::size_t rows =
      scheme.config.size() * static_cast<std::size_t>(m) * (m + 1) / 2;
  const std::size_t full = std::min(rows, cols);

  const std::size_t r1 = rank_modular_direct(scheme, degree, worker_prime(0));
  if (policy == CertaintyPolicy::fast) {
    res.dimension = cols - r1;
    res.certified = (r1 == full);
    return res;
  }

  if (r1 == full) {
    res.dimension = cols - r1;
    res.certified = true;
    if (res.dimension > 0) {
      // rank == rows < cols: the value is already pinned; one exact kernel
      // vector confirms positivity and serves as witness
      const ConditionMatrix mat = build_condition_matrix(scheme, degree);
      auto basis = kernel_exact(mat.entries, 1);
      if (basis.empty())
        throw internal_error("kernel extraction lost a modularly-certified kernel");
      res.witness = witness_to_form(degree, std::move(basis[0]));
    }
  } else {
    const ConditionMatrix mat = build_condition_matrix(scheme, degree);
    auto basis = kernel_exact(mat.entries);
    if (basis.size() < cols - std::min(rows, cols) ||
        cols - basis.size() < r1)
      throw internal_error("exact kernel contradicts the modular rank bound");
    res.dimension = basis.size();
    res.certified = true;
    if (!basis.empty()) res.witness = witness_to_form(degree, std::move(basis[0]));
  }
  if (res.witness && !verify_multiplicity(*res.witness, scheme))
    throw internal_error("witness failed multiplicity verification");
  return res;
}

bool verify_multiplicity(const Form& form, const FatPointScheme& scheme) {
  if (form.is_zero()) throw precondition_error("verify_multiplicity: zero form");
  const int m = scheme.multiplicity;
  const int degree = form.degree;
  if (degree < m - 1) return false;  // multiplicity cannot exceed the degree

  const auto derivs = monomial_exponents(m - 1);
  const auto monos = monomial_exponents(degree);
  const auto ff = falling_factorials(degree, m - 1);
  std::vector<Integer> xp(degree + 1), yp(degree + 1), zp(degree + 1);
  Integer acc, term;
  for (const ProjectivePoint& p : scheme.config.points) {
    const IntegerTriple& v = p.primitive();
    xp[0] = yp[0] = zp[0] = 1;
    for (int t = 1; t <= degree; ++t) {
      xp[t] = xp[t - 1] * v[0];
      yp[t] = yp[t - 1] * v[1];
      zp[t] = zp[t - 1] * v[2];
    }
    for (const auto& d : derivs) {
      acc = 0;
      for (std::size_t c = 0; c < monos.size(); ++c) {
        if (sgn(form.coeffs[c]) == 0) continue;
        const auto& e = monos[c];
        if (e[0] < d[0] || e[1] < d[1] || e[2] < d[2]) continue;
        term = ff[e[0]][d[0]] * ff[e[1]][d[1]] * ff[e[2]][d[2]] * xp[e[0] - d[0]] *
               yp[e[1] - d[1]] * zp[e[2] - d[2]];
        acc += form.coeffs[c] * term;
      }
      if (sgn(acc) != 0) return false;
    }
  }
  return true;
}

void dump_matrix_csv(const ConditionMatrix& mat, std::ostream& os) {
  os << "# d=" << mat.degree << " m=" << mat.multiplicity << " s=" << mat.points
     << " rows=" << mat.rows() << " cols=" << mat.cols() << "\n";
  for (std::size_t i = 0; i < mat.rows(); ++i) {
    for (std::size_t j = 0; j < mat.cols(); ++j) {
      if (j) os << ',';
      os << mat.entries.at(i, j).get_str();
    }
    os << "\n";
  }
}

}  // namespace fatpoints
