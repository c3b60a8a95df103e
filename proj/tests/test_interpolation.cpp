#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "fatpoints/error.hpp"
#include "fatpoints/interpolation.hpp"

using namespace fatpoints;

namespace {

ProjectivePoint P(long x, long y, long z) { return ProjectivePoint::from_integers(x, y, z); }

PointConfiguration single_point() { return PointConfiguration({P(2, -1, 1)}); }

// brute-force oracle: exact kernel dimension by naive mpq elimination
std::size_t oracle_dimension(const FatPointScheme& scheme, int d) {
  if (d < scheme.multiplicity) return 0;
  const ConditionMatrix mat = build_condition_matrix(scheme, d);
  std::vector<std::vector<Rational>> w(mat.rows(), std::vector<Rational>(mat.cols()));
  for (std::size_t i = 0; i < mat.rows(); ++i)
    for (std::size_t j = 0; j < mat.cols(); ++j) w[i][j] = Rational(mat.entries.at(i, j));
  std::size_t rank = 0;
  for (std::size_t col = 0; col < mat.cols() && rank < mat.rows(); ++col) {
    std::size_t piv = mat.rows();
    for (std::size_t r = rank; r < mat.rows(); ++r)
      if (sgn(w[r][col]) != 0) {
        piv = r;
        break;
      }
    if (piv == mat.rows()) continue;
    std::swap(w[piv], w[rank]);
    for (std::size_t r = rank + 1; r < mat.rows(); ++r) {
      if (sgn(w[r][col]) == 0) continue;
      const Rational f = w[r][col] / w[rank][col];
      for (std::size_t c = col; c < mat.cols(); ++c) w[r][c] -= f * w[rank][c];
    }
    ++rank;
  }
  return mat.cols() - rank;
}

}  // namespace

TEST_CASE("monomial order is stable") {
  CHECK(monomial_count(0) == 1);
  CHECK(monomial_count(2) == 6);
  const auto e = monomial_exponents(2);
  REQUIRE(e.size() == 6);
  CHECK(e[0] == std::array<int, 3>{2, 0, 0});
  CHECK(e[1] == std::array<int, 3>{1, 1, 0});
  CHECK(e[2] == std::array<int, 3>{1, 0, 1});
  CHECK(e[3] == std::array<int, 3>{0, 2, 0});
  CHECK(e[4] == std::array<int, 3>{0, 1, 1});
  CHECK(e[5] == std::array<int, 3>{0, 0, 2});
  for (int d = 0; d <= 7; ++d) {
    const auto exps = monomial_exponents(d);
    for (std::size_t t = 0; t < exps.size(); ++t)
      CHECK(monomial_index(d, exps[t][0], exps[t][1]) == t);
  }
}

TEST_CASE("form arithmetic") {
  // (x + y)(x - y) = x^2 - y^2
  const Form a(1, {Integer(1), Integer(1), Integer(0)});
  const Form b(1, {Integer(1), Integer(-1), Integer(0)});
  const Form p = multiply(a, b);
  CHECK(p.coeff(2, 0) == 1);
  CHECK(p.coeff(0, 2) == -1);
  CHECK(p.coeff(1, 1) == 0);
  CHECK(power(a, 0).degree == 0);
  CHECK(power(a, 3).degree == 3);
  CHECK_THROWS_AS(Form(2, {Integer(1)}), precondition_error);
  CHECK(p.evaluate({Integer(3), Integer(2), Integer(9)}) == 5);
}

TEST_CASE("condition matrix shapes and single-point fixtures") {
  // one point, m=1, d=1: one row, kernel dim 2 (lines through a point)
  FatPointScheme s1(single_point(), 1);
  const ConditionMatrix m1 = build_condition_matrix(s1, 1);
  CHECK(m1.rows() == 1);
  CHECK(m1.cols() == 3);
  CHECK(system_dimension(s1, 1, CertaintyPolicy::certified).dimension == 2);

  // one point, m=2, d=1: 3x3 of full rank, no singular line
  FatPointScheme s2(single_point(), 2);
  const ConditionMatrix m2 = build_condition_matrix(s2, 1);
  CHECK(m2.rows() == 3);
  CHECK(m2.cols() == 3);
  CHECK(rank_rational(m2) == 3);
  CHECK(system_dimension(s2, 1, CertaintyPolicy::certified).dimension == 0);

  // one point [0:0:1], m=2, d=2: conics singular there are line pairs, dim 3
  FatPointScheme s3(PointConfiguration({P(0, 0, 1)}), 2);
  const auto r3 = system_dimension(s3, 2, CertaintyPolicy::certified);
  CHECK(r3.dimension == 3);
  CHECK(r3.certified);
  CHECK(oracle_dimension(s3, 2) == 3);

  // one point, m=5, d=4: 15 independent conditions on 15 coefficients
  FatPointScheme s5(single_point(), 5);
  const auto r5 = system_dimension(s5, 4, CertaintyPolicy::certified);
  CHECK(r5.dimension == 0);
  CHECK(r5.certified);

  // degree below multiplicity is empty without building anything
  CHECK(system_dimension(s5, 3, CertaintyPolicy::fast).dimension == 0);
  CHECK_THROWS_AS(build_condition_matrix(s5, 2), precondition_error);
}

TEST_CASE("three non-collinear points impose independent conditions on lines") {
  FatPointScheme s(PointConfiguration({P(0, 0, 1), P(1, 0, 1), P(0, 1, 1)}), 1);
  CHECK(rank_rational(build_condition_matrix(s, 1)) == 3);
}

TEST_CASE("six points on a conic drop one Veronese condition") {
  std::vector<ProjectivePoint> pts;
  for (long t = 0; t <= 5; ++t) pts.push_back(P(t * t, t, 1));
  FatPointScheme s(PointConfiguration(pts), 1);
  const ConditionMatrix mat = build_condition_matrix(s, 2);
  CHECK(mat.rows() == 6);
  CHECK(mat.cols() == 6);
  CHECK(rank_rational(mat) == 5);

  const auto res = system_dimension(s, 2, CertaintyPolicy::certified);
  REQUIRE(res.dimension == 1);
  REQUIRE(res.witness.has_value());
  // the kernel is spanned by x z - y^2
  CHECK(res.witness->coeff(1, 0) * Integer(-1) == res.witness->coeff(0, 2));
  CHECK(verify_multiplicity(*res.witness, s));
}

TEST_CASE("rank_modular checks its prime argument") {
  FatPointScheme s(single_point(), 2);
  const ConditionMatrix mat = build_condition_matrix(s, 3);
  CHECK_THROWS_AS(rank_modular(mat, 4u), precondition_error);     // not prime
  CHECK_THROWS_AS(rank_modular(mat, 2u), precondition_error);     // even
  CHECK_THROWS_AS(rank_modular(mat, 3u), precondition_error);     // <= degree
  CHECK(rank_modular(mat, 1009u) <= rank_rational(mat));
  CHECK(rank_modular(mat, worker_prime(0)) == rank_rational(mat));
}

TEST_CASE("streamed modular rank equals reduce-then-eliminate") {
  SeededRng rng(5150);
  for (int t = 0; t < 25; ++t) {
    std::vector<ProjectivePoint> pts;
    const int s = static_cast<int>(rng.uniform(1, 4));
    for (int i = 0; i < s; ++i) {
      try {
        pts.push_back(P(rng.uniform(-9, 9), rng.uniform(-9, 9), rng.uniform(-9, 9)));
      } catch (const precondition_error&) {
        --i;  // rejected zero triple
        continue;
      }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const int m = static_cast<int>(rng.uniform(1, 3));
    const int d = static_cast<int>(rng.uniform(m, 6));
    FatPointScheme scheme(PointConfiguration(pts), m);
    const std::uint32_t p = worker_prime(static_cast<std::size_t>(rng.uniform(0, 3)));
    CHECK(rank_modular_direct(scheme, d, p) ==
          rank_modular(build_condition_matrix(scheme, d), p));
  }
}

TEST_CASE("dimension agrees with the brute-force oracle on small systems") {
  SeededRng rng(31337);
  for (int t = 0; t < 50; ++t) {
    std::vector<ProjectivePoint> pts;
    const int s = static_cast<int>(rng.uniform(1, 4));
    while (static_cast<int>(pts.size()) < s) {
      long x = rng.uniform(-6, 6), y = rng.uniform(-6, 6), z = rng.uniform(-6, 6);
      if (x == 0 && y == 0 && z == 0) continue;
      const ProjectivePoint cand = P(x, y, z);
      bool dup = false;
      for (const auto& q : pts) dup |= (q == cand);
      if (!dup) pts.push_back(cand);
    }
    const int m = static_cast<int>(rng.uniform(1, 2));
    const int d = static_cast<int>(rng.uniform(0, 4));
    FatPointScheme scheme(PointConfiguration(pts), m);
    const auto res = system_dimension(scheme, d, CertaintyPolicy::certified);
    CHECK(res.dimension == oracle_dimension(scheme, d));
    CHECK(res.certified);
    if (res.witness) CHECK(verify_multiplicity(*res.witness, scheme));
  }
}

TEST_CASE("monotonicity of dimensions in degree and multiplicity") {
  std::vector<ProjectivePoint> pts = {P(0, 0, 1), P(1, 0, 1), P(0, 1, 1), P(3, 2, 1)};
  for (int m = 1; m <= 3; ++m) {
    FatPointScheme s(PointConfiguration(pts), m);
    std::size_t prev = 0;
    for (int d = m; d <= 7; ++d) {
      const auto res = system_dimension(s, d, CertaintyPolicy::fast);
      if (prev > 0) CHECK(res.dimension > 0);
      prev = res.dimension;
      // expected-dimension lower bound
      const long ed = static_cast<long>(monomial_count(d)) -
                      static_cast<long>(pts.size()) * m * (m + 1) / 2;
      CHECK(static_cast<long>(res.dimension) >= ed);
      if (m > 1) {
        FatPointScheme weaker(PointConfiguration(pts), m - 1);
        CHECK(system_dimension(weaker, d, CertaintyPolicy::fast).dimension >= res.dimension);
      }
    }
  }
}

TEST_CASE("verify_multiplicity on line products and error paths") {
  // two points and the line through them: the line vanishes once, not twice
  const ProjectivePoint a = P(0, 0, 1), b = P(1, 2, 1);
  const Form line = form_from_line(line_through(a, b));
  FatPointScheme once(PointConfiguration({a, b}), 1);
  FatPointScheme twice(PointConfiguration({a, b}), 2);
  CHECK(verify_multiplicity(line, once));
  CHECK_FALSE(verify_multiplicity(line, twice));
  CHECK(verify_multiplicity(multiply(line, line), twice));

  const Form zero(1, {Integer(0), Integer(0), Integer(0)});
  CHECK_THROWS_AS(verify_multiplicity(zero, once), precondition_error);
  CHECK_THROWS_AS(FatPointScheme(PointConfiguration({a}), 0), precondition_error);
}

TEST_CASE("matrix csv dump carries the header") {
  FatPointScheme s(single_point(), 1);
  const ConditionMatrix mat = build_condition_matrix(s, 1);
  std::ostringstream os;
  dump_matrix_csv(mat, os);
  CHECK(os.str().rfind("# d=1 m=1 s=1 rows=1 cols=3", 0) == 0);
}

TEST_CASE("explicit 4-star: the line product witnesses multiplicity 2 in degree 4") {
  // four lines, no three concurrent
  const ProjectiveLine l1 = ProjectiveLine::from_integers(1, 0, 0);
  const ProjectiveLine l2 = ProjectiveLine::from_integers(0, 1, 0);
  const ProjectiveLine l3 = ProjectiveLine::from_integers(1, 1, -1);
  const ProjectiveLine l4 = ProjectiveLine::from_integers(1, -1, 3);
  std::vector<ProjectivePoint> pts;
  const std::vector<ProjectiveLine> lines = {l1, l2, l3, l4};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) pts.push_back(meet(lines[i], lines[j]));
  const FatPointScheme scheme(PointConfiguration(pts), 2);

  Form delta = form_from_line(l1);
  for (const auto& l : {l2, l3, l4}) delta = multiply(delta, form_from_line(l));
  CHECK(delta.degree == 4);
  CHECK(verify_multiplicity(delta, scheme));

  const auto res = system_dimension(scheme, 4, CertaintyPolicy::certified);
  CHECK(res.dimension >= 1);
  REQUIRE(res.witness.has_value());
  CHECK(verify_multiplicity(*res.witness, scheme));

  // the product lies in the kernel of the condition matrix
  const ConditionMatrix mat = build_condition_matrix(scheme, 4);
  CHECK(in_kernel(mat.entries, delta.coeffs));
}

TEST_CASE("quasi-star divisor 2T + extra lines vanishes to order 4") {
  const ProjectivePoint A = P(0, 0, 1), B = P(1, 0, 1), C = P(0, 1, 1);
  const ProjectivePoint D = P(0, 2, 1), E = P(3, 0, 1), F = P(2, -1, 1);
  const FatPointScheme scheme(PointConfiguration({A, B, C, D, E, F}), 4);

  const Form t_ab = form_from_line(line_through(A, B));
  const Form t_bc = form_from_line(line_through(B, C));
  const Form t_ac = form_from_line(line_through(A, C));
  Form delta = multiply(multiply(power(t_ab, 2), power(t_bc, 2)), power(t_ac, 2));
  delta = multiply(delta, form_from_line(line_through(D, E)));
  delta = multiply(delta, form_from_line(line_through(E, F)));
  delta = multiply(delta, form_from_line(line_through(D, F)));
  CHECK(delta.degree == 9);
  CHECK(verify_multiplicity(delta, scheme));

  // a single line through two of the points does not vanish twice
  const Form l = form_from_line(line_through(A, B));
  const FatPointScheme two(PointConfiguration({A, B}), 2);
  CHECK_FALSE(verify_multiplicity(l, two));
}
