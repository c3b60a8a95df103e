// Acceptance suite: one criterion per section, one pass/fail line each.
// Values asserted here are exact; runtimes are checked against the stated
// budgets. Run with --full to extend the conic-chord criterion to k = 30
// (modular-first; expect a long run on small machines).

#include <chrono>
#include <cstring>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "fatpoints/alpha.hpp"
#include "fatpoints/error.hpp"
#include "fatpoints/bezout.hpp"
#include "fatpoints/generators.hpp"
#include "fatpoints/io.hpp"
#include "fatpoints/linalg.hpp"

using namespace fatpoints;

namespace {

struct Criterion {
  std::string name;
  double budget_seconds;
  std::function<void(std::ostringstream&)> run;  // appends failures
};

int g_failures = 0;

void run_criterion(const Criterion& c) {
  std::ostringstream problems;
  const auto start = std::chrono::steady_clock::now();
  try {
    c.run(problems);
  } catch (const std::exception& e) {
    problems << "  exception: " << e.what() << "\n";
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs > c.budget_seconds)
    problems << "  runtime " << secs << "s exceeds budget " << c.budget_seconds << "s\n";
  const bool pass = problems.str().empty();
  if (!pass) ++g_failures;
  std::printf("[%s] %s (%.2fs, budget %.0fs)\n", pass ? "PASS" : "FAIL", c.name.c_str(),
              secs, c.budget_seconds);
  if (!pass) std::cout << problems.str();
  std::cout.flush();
}

template <typename T>
void expect_eq(std::ostringstream& out, const char* what, const T& got, const T& want) {
  if (!(got == want)) out << "  " << what << ": mismatch\n";
}

void expect(std::ostringstream& out, const char* what, bool ok) {
  if (!ok) out << "  " << what << "\n";
}

std::vector<int> betas_of(const AlphaSequence& seq) { return beta_sequence(seq).full(); }

// independent re-checks of the sequence laws (the library also validates
// internally; the suite recomputes them from the raw values)
void check_sequence_laws(std::ostringstream& out, const std::vector<int>& a) {
  for (std::size_t i = 0; i + 1 < a.size(); ++i)
    expect(out, "strict monotonicity", a[i + 1] > a[i]);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j + i + 1 < a.size(); ++j)
      expect(out, "subadditivity", a[i + j + 1] <= a[i] + a[j]);
  for (std::size_t i = 0; i < a.size(); ++i)
    expect(out, "chudnovsky",
           static_cast<long>(a[0] + 1) * static_cast<long>(i + 1) <= 2L * a[i]);
  for (std::size_t n = 1; n <= a.size(); ++n)
    for (std::size_t m = n; m <= a.size(); ++m)
      expect(out, "EV inequality",
             static_cast<long>(a[n - 1] + 1) * static_cast<long>(m) <=
                 static_cast<long>(a[m - 1]) * static_cast<long>(n + 1));
}

// --------------------------------------------------------------------------
// criterion bodies
// --------------------------------------------------------------------------

void criterion1(std::ostringstream& out) {
  const AlphaSequence seq = alpha_sequence(gen_star(4, 7), 8, CertaintyPolicy::fast);
  expect_eq(out, "4-star beta sequence", betas_of(seq),
            std::vector<int>{3, 1, 3, 1, 3, 1, 3, 1});
}

void criterion2(std::ostringstream& out) {
  const AlphaSequence seq = alpha_sequence(gen_quasi_star(3, 3), 8, CertaintyPolicy::fast);
  expect_eq(out, "3-quasi-star beta sequence", betas_of(seq),
            std::vector<int>{3, 2, 2, 2, 3, 2, 2, 2});
  expect_eq(out, "alpha(4Z)", seq.values[3], 9);
  const WaldschmidtInterval w = waldschmidt_from(seq);
  expect(out, "upper bound 9/4", w.upper == make_rational(Integer(9), Integer(4)));
  expect_eq(out, "upper bound attained at m", w.upper_at, 4);
}

void criterion3(std::ostringstream& out) {
  for (int k = 2; k <= 6; ++k) {
    const PointConfiguration cfg = gen_collinear_plus_point(k, 50 + k);
    const AlphaSequence seq = alpha_sequence(cfg, k, CertaintyPolicy::fast);
    expect(out, "alpha(kZ) = 2k-1", seq.values[k - 1] == 2 * k - 1);
    const WaldschmidtInterval w = waldschmidt_from(seq);
    expect(out, "upper bound (2k-1)/k",
           w.upper == make_rational(Integer(2 * k - 1), Integer(k)));
  }
}

void criterion4(std::ostringstream& out) {
  const AlphaSequence seq = alpha_sequence(gen_prop42(23), 6, CertaintyPolicy::fast);
  expect_eq(out, "prop42 alpha sequence", seq.values, std::vector<int>{4, 6, 9, 12, 15, 18});
}

void criterion5(std::ostringstream& out) {
  const AlphaSequence seq = alpha_sequence(gen_conic_example(2), 8, CertaintyPolicy::fast);
  expect_eq(out, "alpha(Z)", seq.values[0], 4);
  const BetaSequence beta = beta_sequence(seq);
  for (int k = 2; k <= 8; ++k)
    expect(out, "increment alpha(kZ)-alpha((k-1)Z) = 3", beta.betas[k - 2] == 3);
}

void criterion5_full(std::ostringstream& out) {
  const AlphaSequence seq = alpha_sequence(gen_conic_example(2), 30, CertaintyPolicy::fast);
  const BetaSequence beta = beta_sequence(seq);
  for (int k = 2; k <= 29; ++k)
    expect(out, "increment = 3 for k = 2..29", beta.betas[k - 2] == 3);
  expect_eq(out, "alpha(30Z) - alpha(29Z)", beta.betas[28], 4);
}

void criterion6(std::ostringstream& out) {
  const BezoutInput delta = load_bezout_input(std::string(FATPOINTS_FIXTURES) +
                                              "/quasistar_delta.json");
  const BezoutDecomposition dec = bezout_decompose(delta.divisor, delta.curves);
  expect_eq(out, "quasi-star coefficients", dec.coeffs,
            std::vector<Integer>{2, 2, 2, 1, 1, 1});
  expect(out, "quasi-star residual zero",
         dec.residual.degree == 0 &&
             std::all_of(dec.residual.mults.begin(), dec.residual.mults.end(),
                         [](const Integer& m) { return sgn(m) == 0; }));

  const BezoutInput p34 = load_bezout_input(std::string(FATPOINTS_FIXTURES) +
                                            "/collinear2_divisor.json");
  const BezoutDecomposition dec34 = bezout_decompose(p34.divisor, p34.curves);
  expect_eq(out, "collinear-plus-one coefficients", dec34.coeffs,
            std::vector<Integer>{1, 1, 1});
  expect(out, "collinear-plus-one residual zero", dec34.residual.degree == 0);

  expect(out, "confluence on the quasi-star divisor",
         confluence_test(delta.divisor, delta.curves, 100, 20240819).all_identical);
  expect(out, "confluence on the collinear-plus-one divisor",
         confluence_test(p34.divisor, p34.curves, 100, 20240820).all_identical);
}

void criterion7a_c(std::ostringstream& out) {
  SeededRng rng(70001);
  int witnesses = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int s = static_cast<int>(rng.uniform(1, 8));
    std::vector<ProjectivePoint> pts;
    while (static_cast<int>(pts.size()) < s) {
      const long x = rng.uniform(-9, 9), y = rng.uniform(-9, 9), z = rng.uniform(-9, 9);
      if (x == 0 && y == 0 && z == 0) continue;
      const ProjectivePoint cand{Rational(x), Rational(y), Rational(z)};
      bool dup = false;
      for (const auto& p : pts) dup |= (p == cand);
      if (!dup) pts.push_back(cand);
    }
    const int m_max = static_cast<int>(rng.uniform(2, 5));
    const PointConfiguration cfg(pts);
    const AlphaSequence seq = alpha_sequence(cfg, m_max, CertaintyPolicy::certified);
    check_sequence_laws(out, seq.values);
    expect(out, "ev_check", ev_check(seq));

    // (c): witnesses at the threshold degree verify their multiplicity
    for (int m = 1; m <= m_max; ++m) {
      const FatPointScheme scheme(cfg, m);
      const LinearSystemResult res =
          system_dimension(scheme, seq.values[m - 1], CertaintyPolicy::certified);
      expect(out, "positive dimension at alpha", res.dimension > 0);
      if (res.witness) {
        ++witnesses;
        expect(out, "witness verifies", verify_multiplicity(*res.witness, scheme));
      }
    }
  }
  expect(out, "at least 200 witnesses checked", witnesses >= 200);
}

void criterion7b(std::ostringstream& out) {
  SeededRng rng(70002);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = static_cast<std::size_t>(rng.uniform(1, 10));
    const std::size_t cols = static_cast<std::size_t>(rng.uniform(1, 10));
    IntMatrix m(rows, cols);
    for (auto& e : m.data) e = rng.uniform(-1000000, 1000000);
    if (trial % 4 == 0)  // plant entries divisible by the worker prime
      m.at(0, 0) = Integer(worker_prime(0)) * rng.uniform(1, 5);
    expect(out, "rank_modular <= rank_rational",
           rank_mod(m, worker_prime(trial % 3)) <= rank_rational(m));
  }
}

void criterion7d(std::ostringstream& out) {
  SeededRng rng(70004);
  int completed = 0;
  for (int trial = 0; trial < 280; ++trial) {
    const std::size_t s = static_cast<std::size_t>(rng.uniform(1, 6));
    const std::size_t r = static_cast<std::size_t>(rng.uniform(1, 5));
    DivisorClass d;
    d.degree = rng.uniform(4, 20);
    for (std::size_t j = 0; j < s; ++j) d.mults.push_back(rng.uniform(0, 5));
    std::vector<CurveClass> curves;
    for (std::size_t i = 0; i < r; ++i) {
      CurveClass c;
      c.degree = rng.uniform(1, 3);
      for (std::size_t j = 0; j < s; ++j) c.mults.push_back(rng.uniform(0, 2));
      curves.push_back(std::move(c));
    }
    BezoutDecomposition dec;
    try {
      dec = bezout_decompose(d, curves);
    } catch (const internal_error&) {
      continue;  // round-cap guard on a non-terminating numerical input
    }
    ++completed;
    Integer deg = dec.residual.degree;
    std::vector<Integer> mults = dec.residual.mults;
    for (std::size_t i = 0; i < curves.size(); ++i) {
      deg += dec.coeffs[i] * curves[i].degree;
      for (std::size_t j = 0; j < mults.size(); ++j)
        mults[j] += dec.coeffs[i] * curves[i].mults[j];
    }
    expect(out, "reconstruction identity", deg == d.degree && mults == d.mults);
    expect(out, "residual inequality", check_residual_inequality(dec, curves));
  }
  expect(out, "at least 200 decompositions completed", completed >= 200);
}

// exhaustive-minor helpers for 7e: cofactor expansion with subset-mask
// memoization, O(2^n n) per determinant
Integer subset_det(const IntMatrix& m, const std::vector<std::size_t>& rows,
                   const std::vector<std::size_t>& cols) {
  const std::size_t n = rows.size();
  if (n == 0) return Integer(1);
  std::vector<Integer> g(std::size_t(1) << n, Integer(0));
  g[0] = 1;
  for (std::size_t mask = 1; mask < g.size(); ++mask) {
    const int used = std::popcount(mask);
    const std::size_t row = rows[used - 1];
    int position = 0;
    Integer acc(0);
    for (std::size_t j = 0; j < n; ++j) {
      if (!(mask & (std::size_t(1) << j))) continue;
      const Integer term = m.at(row, cols[j]) * g[mask ^ (std::size_t(1) << j)];
      if (position % 2 == 0)
        acc += term;
      else
        acc -= term;
      ++position;
    }
    g[mask] = std::move(acc);
  }
  return g.back();
}

double binomial_count(std::size_t n, std::size_t k) {
  double acc = 1;
  for (std::size_t t = 0; t < k; ++t) acc = acc * double(n - t) / double(t + 1);
  return acc;
}

bool exists_nonzero_minor(const IntMatrix& m, std::size_t size) {
  std::vector<std::size_t> rows(size), cols(size);
  std::function<bool(std::size_t, std::size_t)> pick_rows;
  std::function<bool(std::size_t, std::size_t)> pick_cols = [&](std::size_t at,
                                                                std::size_t from) {
    if (at == size) return sgn(subset_det(m, rows, cols)) != 0;
    for (std::size_t c = from; c + (size - at) <= m.cols; ++c) {
      cols[at] = c;
      if (pick_cols(at + 1, c + 1)) return true;
    }
    return false;
  };
  pick_rows = [&](std::size_t at, std::size_t from) {
    if (at == size) return pick_cols(0, 0);
    for (std::size_t r = from; r + (size - at) <= m.rows; ++r) {
      rows[at] = r;
      if (pick_rows(at + 1, r + 1)) return true;
    }
    return false;
  };
  return pick_rows(0, 0);
}

std::size_t rank_by_minor_expansion(const IntMatrix& m) {
  for (std::size_t size = std::min(m.rows, m.cols); size >= 1; --size)
    if (exists_nonzero_minor(m, size)) return size;
  return 0;
}

void criterion7e(std::ostringstream& out) {
  SeededRng rng(70005);
  for (int trial = 0; trial < 200; ++trial) {
    const int s = static_cast<int>(rng.uniform(1, 4));
    std::vector<ProjectivePoint> pts;
    while (static_cast<int>(pts.size()) < s) {
      const long x = rng.uniform(-5, 5), y = rng.uniform(-5, 5), z = rng.uniform(-5, 5);
      if (x == 0 && y == 0 && z == 0) continue;
      const ProjectivePoint cand{Rational(x), Rational(y), Rational(z)};
      bool dup = false;
      for (const auto& p : pts) dup |= (p == cand);
      if (!dup) pts.push_back(cand);
    }
    const int m = static_cast<int>(rng.uniform(1, 2));
    const int d = static_cast<int>(rng.uniform(std::max(0, m - 1), 4));
    const FatPointScheme scheme(PointConfiguration(pts), m);
    const ConditionMatrix mat = build_condition_matrix(scheme, d);
    const std::size_t dim =
        system_dimension(scheme, d, CertaintyPolicy::certified).dimension;

    // exhaustive minor-expansion rank on the m = 1 half (small matrices),
    // pivot-minor plus bounded (r+1)-minor checks otherwise
    if (m == 1) {
      expect(out, "minor-expansion oracle (m=1)",
             mat.cols() - rank_by_minor_expansion(mat.entries) == dim);
    } else {
      const std::size_t r = mat.cols() - dim;
      if (r <= 8)
        expect(out, "some r-minor is nonzero",
               r == 0 || exists_nonzero_minor(mat.entries, r));
      if (r + 1 <= std::min(mat.rows(), mat.cols()) && r + 1 <= 8 &&
          binomial_count(mat.rows(), r + 1) * binomial_count(mat.cols(), r + 1) <= 2000)
        expect(out, "all (r+1)-minors vanish", !exists_nonzero_minor(mat.entries, r + 1));
    }
    // and the naive rational-elimination oracle on everything
    std::size_t naive_rank = 0;
    {
      std::vector<std::vector<Rational>> w(mat.rows(), std::vector<Rational>(mat.cols()));
      for (std::size_t i = 0; i < mat.rows(); ++i)
        for (std::size_t j = 0; j < mat.cols(); ++j) w[i][j] = Rational(mat.entries.at(i, j));
      for (std::size_t col = 0; col < mat.cols() && naive_rank < mat.rows(); ++col) {
        std::size_t piv = mat.rows();
        for (std::size_t rr = naive_rank; rr < mat.rows(); ++rr)
          if (sgn(w[rr][col]) != 0) {
            piv = rr;
            break;
          }
        if (piv == mat.rows()) continue;
        std::swap(w[piv], w[naive_rank]);
        for (std::size_t rr = naive_rank + 1; rr < mat.rows(); ++rr) {
          if (sgn(w[rr][col]) == 0) continue;
          const Rational f = w[rr][col] / w[naive_rank][col];
          for (std::size_t cc = col; cc < mat.cols(); ++cc) w[rr][cc] -= f * w[naive_rank][cc];
        }
        ++naive_rank;
      }
    }
    expect(out, "naive elimination oracle", mat.cols() - naive_rank == dim);
  }
}

void criterion8(std::ostringstream& out) {
  expect(out, "gen_star(4) classifies as four_star",
         classify(gen_star(4, 7), 2).tag == ClassTag::four_star);
  expect(out, "gen_quasi_star(3) classifies as three_quasi_star",
         classify(gen_quasi_star(3, 3), 2).tag == ClassTag::three_quasi_star);

  const PointConfiguration g6 = gen_generic_points(6, 11);
  const FatPointScheme m10(g6, 10);

  // alpha(10Z) = 24: emptiness at degree 23 re-checked at two distinct
  // primes (full modular rank pins the rational rank)
  const std::size_t cols23 = monomial_count(23);
  expect(out, "degree 23 empty at prime 0",
         rank_modular_direct(m10, 23, worker_prime(0)) == cols23);
  expect(out, "degree 23 empty at prime 1",
         rank_modular_direct(m10, 23, worker_prime(1)) == cols23);
  expect(out, "degree 24 deficient at prime 0",
         rank_modular_direct(m10, 24, worker_prime(0)) < monomial_count(24));
  expect(out, "degree 24 deficient at prime 1",
         rank_modular_direct(m10, 24, worker_prime(1)) < monomial_count(24));

  // rational certification: the certified policy pins the dimension with an
  // exact verified kernel vector
  const LinearSystemResult res24 = system_dimension(m10, 24, CertaintyPolicy::certified);
  expect(out, "alpha(10Z) = 24 rationally certified",
         res24.dimension > 0 && res24.certified && res24.witness.has_value());

  const Classification cls = classify(g6, 10);
  expect(out, "six generic points unclassified", cls.tag == ClassTag::unclassified);
  expect(out, "certified lower bound > 9/4", cls.lower_bound_exceeds_nine_quarters);
  // the m = 10 entry alone certifies (24+1)/11 = 25/11 > 9/4; the interval
  // keeps the best bound over all computed m, which can only be stronger
  expect(out, "alpha(10Z) entry certifies at least 25/11",
         res24.degree == 24 && cls.interval &&
             cls.interval->lower >= make_rational(Integer(25), Integer(11)));
}

}  // namespace

int main(int argc, char** argv) {
  bool full = false;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--full") == 0) full = true;

  std::vector<Criterion> criteria = {
      {"criterion 1: 4-star beta sequence 3,1,3,1,...", 5, criterion1},
      {"criterion 2: 3-quasi-star beta sequence and 9/4 bound", 10, criterion2},
      {"criterion 3: collinear-plus-one family, k = 2..6", 10, criterion3},
      {"criterion 4: prop42 configuration, alpha(mZ) = 3m", 30, criterion4},
      {"criterion 5: conic chords at desk scale, k <= 8", 120, criterion5},
      {"criterion 6: Bezout fixtures and confluence", 5, criterion6},
      {"criterion 7a+c: sequence laws and witness verification (200 cases)", 600,
       criterion7a_c},
      {"criterion 7b: modular vs rational rank (200 cases)", 600, criterion7b},
      {"criterion 7d: Bezout reconstruction and residual inequality (200 cases)", 600,
       criterion7d},
      {"criterion 7e: brute-force nullspace oracle (200 cases)", 600, criterion7e},
      {"criterion 8: classification with certified bounds", 180, criterion8},
  };
  if (full)
    criteria.push_back({"criterion 5 (extended): conic chords to k = 30, modular-first",
                        3600, criterion5_full});

  for (const Criterion& c : criteria) run_criterion(c);

  if (g_failures) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
