#include "fatpoints/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <optional>

#include "fatpoints/error.hpp"
#include "fatpoints/threads.hpp"

namespace fatpoints {

std::uint32_t ModArith::pow(std::uint32_t a, std::uint64_t e) const {
  std::uint32_t base = a % p;
  std::uint32_t acc = 1 % p;
  while (e) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

std::uint32_t mod_of(const Integer& v, const ModArith& m) {
  // fdiv remainder is non-negative for a positive modulus.
  return static_cast<std::uint32_t>(mpz_fdiv_ui(v.get_mpz_t(), m.p));
}

ModMatrix reduce_mod(const IntMatrix& m, std::uint32_t prime) {
  ModMatrix out(m.rows, m.cols, prime);
  const ModArith F(prime);
  for (std::size_t i = 0; i < m.data.size(); ++i)
    out.data[i] = mod_of(m.data[i], F);
  return out;
}

EchelonProfile eliminate_mod(ModMatrix& m) {
  const ModArith F(m.p);
  EchelonProfile prof;
  std::vector<std::size_t> orig(m.rows);
  std::iota(orig.begin(), orig.end(), std::size_t{0});

  std::size_t pr = 0;
  for (std::size_t col = 0; col < m.cols; ++col) {
    std::size_t piv = m.rows;
    for (std::size_t r = pr; r < m.rows; ++r) {
      if (m.at(r, col) != 0) {
        piv = r;
        break;
      }
    }
    if (piv == m.rows) {
      prof.free_cols.push_back(col);
      continue;
    }
    if (piv != pr) {
      for (std::size_t c = 0; c < m.cols; ++c) std::swap(m.at(pr, c), m.at(piv, c));
      std::swap(orig[pr], orig[piv]);
    }
    prof.pivot_rows.push_back(orig[pr]);
    prof.pivot_cols.push_back(col);

    const std::uint32_t inv = F.inv(m.at(pr, col));
    const std::uint32_t* src = &m.data[pr * m.cols];
    const std::size_t width = m.cols;
    parallel_for(
        pr + 1, m.rows,
        [&](std::size_t lo, std::size_t hi) {
          for (std::size_t r = lo; r < hi; ++r) {
            std::uint32_t* dst = &m.data[r * width];
            const std::uint32_t lead = dst[col];
            if (lead == 0) continue;
            const std::uint64_t q = F.mul(lead, inv);
            for (std::size_t c = col; c < width; ++c)
              dst[c] = F.reduce(dst[c] + q * (F.p - src[c]));
            dst[col] = 0;
          }
        },
        // enough remaining work to pay for thread spawn
        (m.cols - col) > 512 ? 64 : std::numeric_limits<std::size_t>::max());
    ++pr;
    if (pr == m.rows) {
      for (std::size_t c = col + 1; c < m.cols; ++c) prof.free_cols.push_back(c);
      break;
    }
  }
  prof.rank = prof.pivot_cols.size();
  return prof;
}

std::size_t rank_mod(const IntMatrix& m, std::uint32_t prime) {
  ModMatrix mm = reduce_mod(m, prime);
  return eliminate_mod(mm).rank;
}

namespace {

// Fraction-free forward elimination (Bareiss). Entries after step k are
// (k+1)-minors of the input, so every division is exact (Sylvester's
// identity); this holds with skipped columns as well. Returns pivot columns;
// w is left in echelon form with pivots on rows 0..rank-1.
std::vector<std::size_t> bareiss_echelon(IntMatrix& w) {
  std::vector<std::size_t> pivot_cols;
  Integer prev(1);
  std::size_t pr = 0;
  for (std::size_t col = 0; col < w.cols && pr < w.rows; ++col) {
    std::size_t piv = w.rows;
    for (std::size_t r = pr; r < w.rows; ++r) {
      const Integer& e = w.at(r, col);
      if (sgn(e) == 0) continue;
      if (piv == w.rows ||
          mpz_cmpabs(e.get_mpz_t(), w.at(piv, col).get_mpz_t()) < 0)
        piv = r;
    }
    if (piv == w.rows) continue;
    if (piv != pr)
      for (std::size_t c = 0; c < w.cols; ++c) std::swap(w.at(pr, c), w.at(piv, c));

    const Integer pivot = w.at(pr, col);
    Integer t;
    for (std::size_t r = pr + 1; r < w.rows; ++r) {
      const Integer lead = w.at(r, col);
      for (std::size_t c = col + 1; c < w.cols; ++c) {
        t = pivot * w.at(r, c) - lead * w.at(pr, c);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        w.at(r, c) = t;
      }
      w.at(r, col) = 0;
    }
    prev = pivot;
    pivot_cols.push_back(col);
    ++pr;
  }
  return pivot_cols;
}

}  // namespace

std::size_t rank_rational(const IntMatrix& m) {
  IntMatrix w = m;
  return bareiss_echelon(w).size();
}

void make_primitive(std::vector<Integer>& v) {
  Integer content(0);
  for (const Integer& e : v) {
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), e.get_mpz_t());
    if (content == 1) break;
  }
  if (sgn(content) == 0) return;
  int lead = 0;
  for (const Integer& e : v) {
    if (sgn(e) != 0) {
      lead = sgn(e);
      break;
    }
  }
  if (lead < 0) content = -content;
  if (content != 1)
    for (Integer& e : v) mpz_divexact(e.get_mpz_t(), e.get_mpz_t(), content.get_mpz_t());
}

std::vector<std::vector<Integer>> nullspace_rational(const IntMatrix& m) {
  IntMatrix w = m;
  const std::vector<std::size_t> pivot_cols = bareiss_echelon(w);
  const std::size_t rank = pivot_cols.size();

  std::vector<bool> is_pivot(m.cols, false);
  for (std::size_t c : pivot_cols) is_pivot[c] = true;

  std::vector<std::vector<Integer>> basis;
  for (std::size_t f = 0; f < m.cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> x(m.cols, Rational(0));
    x[f] = 1;
    for (std::size_t i = rank; i-- > 0;) {
      const std::size_t pc = pivot_cols[i];
      if (pc > f) continue;  // echelon row has no support at or before f
      Rational acc(0);
      for (std::size_t j = pc + 1; j < m.cols; ++j) {
        if (sgn(w.at(i, j)) == 0 || sgn(x[j]) == 0) continue;
        acc += Rational(w.at(i, j)) * x[j];
      }
      x[pc] = -acc / Rational(w.at(i, pc));
    }
    Integer scale(1);
    for (const Rational& q : x)
      mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), q.get_den().get_mpz_t());
    std::vector<Integer> v(m.cols);
    for (std::size_t j = 0; j < m.cols; ++j) {
      Integer s;
      mpz_divexact(s.get_mpz_t(), scale.get_mpz_t(), x[j].get_den().get_mpz_t());
      v[j] = x[j].get_num() * s;
    }
    make_primitive(v);
    basis.push_back(std::move(v));
  }
  return basis;
}

bool in_kernel(const IntMatrix& m, const std::vector<Integer>& v) {
  if (v.size() != m.cols) return false;
  Integer acc;
  for (std::size_t i = 0; i < m.rows; ++i) {
    acc = 0;
    for (std::size_t j = 0; j < m.cols; ++j) {
      if (sgn(v[j]) == 0) continue;
      mpz_addmul(acc.get_mpz_t(), m.at(i, j).get_mpz_t(), v[j].get_mpz_t());
    }
    if (sgn(acc) != 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Deterministic worker primes
// ---------------------------------------------------------------------------

bool is_small_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t q : {2u, 3u, 5u, 7u}) {
    if (n % q == 0) return n == q;
  }
  // Miller-Rabin with bases 2,3,5,7 is deterministic below 3.2e9.
  std::uint32_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  const ModArith F(n);
  for (std::uint32_t a : {2u, 3u, 5u, 7u}) {
    std::uint32_t x = F.pow(a, d);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = F.mul(x, x);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

std::uint32_t worker_prime(std::size_t index) {
  static std::vector<std::uint32_t> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  std::uint32_t candidate = cache.empty() ? 0x7fffffffu : cache.back() - 2;
  while (cache.size() <= index) {
    while (!is_small_prime(candidate)) candidate -= 2;
    cache.push_back(candidate);
    candidate -= 2;
  }
  return cache[index];
}

// ---------------------------------------------------------------------------
// Dixon lifting
// ---------------------------------------------------------------------------

namespace {

// Dense LU mod p with row pivoting, O(n^2) per solve afterwards.
struct ModLU {
  std::size_t n = 0;
  ModArith F{3};
  std::vector<std::uint32_t> a;     // L below diagonal, U on and above
  std::vector<std::size_t> ipiv;    // row swapped with k at step k
  std::vector<std::uint32_t> dinv;  // inverses of U diagonal

  static std::optional<ModLU> factor(ModMatrix mat) {
    ModLU lu;
    lu.n = mat.rows;
    lu.F = ModArith(mat.p);
    lu.ipiv.resize(lu.n);
    lu.dinv.resize(lu.n);
    const std::size_t n = lu.n;
    auto& a = mat.data;
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t piv = n;
      for (std::size_t r = k; r < n; ++r) {
        if (a[r * n + k] != 0) {
          piv = r;
          break;
        }
      }
      if (piv == n) return std::nullopt;
      lu.ipiv[k] = piv;
      if (piv != k)
        for (std::size_t c = 0; c < n; ++c) std::swap(a[k * n + c], a[piv * n + c]);
      const std::uint32_t inv = lu.F.inv(a[k * n + k]);
      lu.dinv[k] = inv;
      for (std::size_t r = k + 1; r < n; ++r) {
        const std::uint32_t lead = a[r * n + k];
        if (lead == 0) continue;
        const std::uint64_t q = lu.F.mul(lead, inv);
        a[r * n + k] = static_cast<std::uint32_t>(q);
        for (std::size_t c = k + 1; c < n; ++c)
          a[r * n + c] = lu.F.reduce(a[r * n + c] + q * (lu.F.p - a[k * n + c]));
      }
    }
    lu.a = std::move(mat.data);
    return lu;
  }

  std::vector<std::uint32_t> solve(std::vector<std::uint32_t> b) const {
    for (std::size_t k = 0; k < n; ++k)
      if (ipiv[k] != k) std::swap(b[k], b[ipiv[k]]);
    for (std::size_t k = 0; k < n; ++k) {
      const std::uint64_t bk = b[k];
      if (bk == 0) continue;
      for (std::size_t r = k + 1; r < n; ++r)
        b[r] = F.reduce(b[r] + static_cast<std::uint64_t>(a[r * n + k]) * (F.p - bk));
    }
    std::vector<std::uint32_t> x(n);
    for (std::size_t k = n; k-- > 0;) {
      std::uint64_t acc = b[k];
      for (std::size_t c = k + 1; c < n; ++c)
        acc = F.reduce(acc + static_cast<std::uint64_t>(a[k * n + c]) * (F.p - x[c]));
      x[k] = F.mul(static_cast<std::uint32_t>(acc), dinv[k]);
    }
    return x;
  }
};

double log2_bitlen(const Integer& v) {
  if (sgn(v) == 0) return 0.0;
  return static_cast<double>(mpz_sizeinbase(v.get_mpz_t(), 2));
}

// Little-endian base-p digit stream -> integer, by pairwise tree combining
// (keeps the big multiplications in GMP's subquadratic range).
Integer collect_digits(std::vector<Integer> cur, std::uint32_t p) {
  if (cur.empty()) return Integer(0);
  Integer P(p);
  while (cur.size() > 1) {
    std::vector<Integer> nxt;
    nxt.reserve((cur.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < cur.size(); i += 2) nxt.push_back(cur[i] + P * cur[i + 1]);
    if (cur.size() & 1) nxt.push_back(cur.back());
    cur.swap(nxt);
    P = P * P;
  }
  return cur[0];
}

Integer balanced(Integer x, const Integer& M) {
  x %= M;
  if (sgn(x) < 0) x += M;
  if (2 * x >= M) x -= M;
  return x;
}

// Wang-style rational reconstruction: x = num/den mod M with |num| <= N.
bool rational_reconstruct(const Integer& x, const Integer& M, const Integer& N,
                          Integer& num, Integer& den) {
  Integer r0 = M, r1 = x % M;
  if (sgn(r1) < 0) r1 += M;
  Integer t0(0), t1(1), q, tmp;
  while (r1 > N) {
    mpz_fdiv_q(q.get_mpz_t(), r0.get_mpz_t(), r1.get_mpz_t());
    tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (sgn(t1) == 0) return false;
  if (sgn(t1) < 0) {
    num = -r1;
    den = -t1;
  } else {
    num = r1;
    den = t1;
  }
  Integer g;
  mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (g != 1) {
    mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), g.get_mpz_t());
  }
  // confirm the congruence (the Euclid walk can stop on a spurious pair)
  Integer check = (num - x * den) % M;
  return sgn(check) == 0;
}

struct DixonSolution {
  std::vector<Integer> nums;
  Integer den;
};

// Solves A x = b over Q for square A nonsingular mod prime, by p-adic
// lifting to a modulus past the Hadamard bounds, then common-denominator
// rational reconstruction. Returns nullopt when reconstruction fails (the
// caller escalates; the caller also verifies any result exactly).
std::optional<DixonSolution> dixon_solve(const IntMatrix& A,
                                         const std::vector<Integer>& b,
                                         std::uint32_t prime) {
  const std::size_t n = A.rows;
  if (n == 0) return DixonSolution{{}, Integer(1)};
  auto lu = ModLU::factor(reduce_mod(A, prime));
  if (!lu) return std::nullopt;

  const double log2n_half = 0.5 * std::log2(static_cast<double>(n) + 1.0);
  double log2_den = 0.0;  // Hadamard bound over rows
  for (std::size_t i = 0; i < n; ++i) {
    double mx = 0.0;
    for (std::size_t j = 0; j < n; ++j) mx = std::max(mx, log2_bitlen(A.at(i, j)));
    log2_den += mx + log2n_half + 1.0;
  }
  double col_sum = 0.0, col_min = std::numeric_limits<double>::max();
  for (std::size_t j = 0; j < n; ++j) {
    double mx = 0.0;
    for (std::size_t i = 0; i < n; ++i) mx = std::max(mx, log2_bitlen(A.at(i, j)));
    const double cn = mx + log2n_half + 1.0;
    col_sum += cn;
    col_min = std::min(col_min, cn);
  }
  double b_norm = 0.0;
  for (const Integer& e : b) b_norm = std::max(b_norm, log2_bitlen(e));
  b_norm += log2n_half + 1.0;
  const double log2_num = col_sum - col_min + b_norm;

  const double log2_p = std::log2(static_cast<double>(prime));
  const std::size_t iters =
      static_cast<std::size_t>((log2_num + log2_den + 2.0) / log2_p) + 3;

  // lifting loop: r <- (r - A x_i) / p, digits x_i = A^{-1} r mod p
  const ModArith F(prime);
  std::vector<Integer> r = b;
  std::vector<std::vector<std::uint32_t>> digits;
  digits.reserve(iters);
  std::vector<std::uint32_t> rbar(n);
  std::size_t done = 0;
  for (; done < iters; ++done) {
    bool all_zero = true;
    for (std::size_t i = 0; i < n; ++i) {
      rbar[i] = mod_of(r[i], F);
      if (sgn(r[i]) != 0) all_zero = false;
    }
    if (all_zero) break;  // exact nonnegative integer solution already reached
    digits.push_back(lu->solve(rbar));
    const std::vector<std::uint32_t>& x = digits.back();
    parallel_for(
        0, n,
        [&](std::size_t lo, std::size_t hi) {
          for (std::size_t i = lo; i < hi; ++i) {
            Integer& acc = r[i];
            const Integer* row = &A.data[i * n];
            for (std::size_t j = 0; j < n; ++j) {
              if (x[j] == 0) continue;
              mpz_submul_ui(acc.get_mpz_t(), row[j].get_mpz_t(), x[j]);
            }
            mpz_divexact_ui(acc.get_mpz_t(), acc.get_mpz_t(), prime);
          }
        },
        n >= 128 ? 32 : std::numeric_limits<std::size_t>::max());
  }

  const std::size_t k = digits.size();
  Integer M;
  mpz_ui_pow_ui(M.get_mpz_t(), prime, k == 0 ? 1 : static_cast<unsigned long>(k));
  std::vector<Integer> X(n, Integer(0));
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Integer> col(k);
    for (std::size_t i = 0; i < k; ++i) col[i] = digits[i][j];
    X[j] = collect_digits(std::move(col), prime);
  }
  if (done < iters && k > 0) {
    // early exit: X is the exact solution over Z
    return DixonSolution{std::move(X), Integer(1)};
  }
  if (k == 0) return DixonSolution{std::vector<Integer>(n, Integer(0)), Integer(1)};

  Integer N_bound(1), D_bound(1);
  mpz_mul_2exp(N_bound.get_mpz_t(), N_bound.get_mpz_t(),
               static_cast<unsigned long>(log2_num) + 1);
  mpz_mul_2exp(D_bound.get_mpz_t(), D_bound.get_mpz_t(),
               static_cast<unsigned long>(log2_den) + 1);

  // common-denominator reconstruction with restart on denominator growth
  Integer den(1);
  std::vector<Integer> nums(n);
  for (int restart = 0; restart < 8; ++restart) {
    bool again = false;
    bool failed = false;
    for (std::size_t j = 0; j < n; ++j) {
      Integer t = balanced(X[j] * den, M);
      Integer limit = N_bound * den;
      if (mpz_cmpabs(t.get_mpz_t(), limit.get_mpz_t()) <= 0) {
        nums[j] = t;
        continue;
      }
      Integer nj, dj;
      if (!rational_reconstruct(X[j], M, N_bound, nj, dj) || dj > D_bound) {
        failed = true;
        break;
      }
      Integer nden;
      mpz_lcm(nden.get_mpz_t(), den.get_mpz_t(), dj.get_mpz_t());
      den = nden;
      again = true;
      break;
    }
    if (failed) return std::nullopt;
    if (!again) return DixonSolution{std::move(nums), den};
  }
  return std::nullopt;
}

}  // namespace

std::vector<std::vector<Integer>> kernel_exact(const IntMatrix& m,
                                               std::size_t max_vectors) {
  if (m.cols == 0) return {};
  if (m.rows == 0) {
    // whole space
    std::vector<std::vector<Integer>> basis;
    for (std::size_t f = 0; f < m.cols; ++f) {
      if (max_vectors && basis.size() == max_vectors) break;
      std::vector<Integer> v(m.cols, Integer(0));
      v[f] = 1;
      basis.push_back(std::move(v));
    }
    return basis;
  }
  for (std::size_t attempt = 0; attempt < 3; ++attempt) {
    const std::uint32_t p = worker_prime(attempt);
    ModMatrix mm = reduce_mod(m, p);
    const EchelonProfile prof = eliminate_mod(mm);
    if (prof.rank == m.cols) return {};  // full rank mod p pins full rank over Q

    const std::size_t r = prof.rank;
    IntMatrix A(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        A.at(i, j) = m.at(prof.pivot_rows[i], prof.pivot_cols[j]);

    std::vector<std::vector<Integer>> basis;
    bool ok = true;
    for (std::size_t f : prof.free_cols) {
      if (max_vectors && basis.size() == max_vectors) break;
      std::vector<Integer> b(r);
      for (std::size_t i = 0; i < r; ++i) b[i] = m.at(prof.pivot_rows[i], f);
      auto sol = dixon_solve(A, b, p);
      if (!sol) {
        ok = false;
        break;
      }
      std::vector<Integer> v(m.cols, Integer(0));
      for (std::size_t j = 0; j < r; ++j) v[prof.pivot_cols[j]] = -sol->nums[j];
      v[f] = sol->den;
      make_primitive(v);
      if (!in_kernel(m, v)) {
        ok = false;
        break;
      }
      basis.push_back(std::move(v));
    }
    if (ok) return basis;
  }
  auto basis = nullspace_rational(m);
  if (max_vectors && basis.size() > max_vectors) basis.resize(max_vectors);
  return basis;
}

}  // namespace fatpoints
