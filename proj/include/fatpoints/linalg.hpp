#pragma once

#include <cstdint>
#include <vector>

#include "fatpoints/numeric.hpp"

namespace fatpoints {

// Dense row-major matrix of exact integers.
struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Integer> data;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

  Integer& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  const Integer& at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

// Dense row-major matrix over Z/p with p < 2^31.
struct ModMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::uint32_t p = 0;
  std::vector<std::uint32_t> data;

  ModMatrix() = default;
  ModMatrix(std::size_t r, std::size_t c, std::uint32_t prime)
      : rows(r), cols(c), p(prime), data(r * c, 0) {}

  std::uint32_t& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  std::uint32_t at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

// Barrett-reduced arithmetic mod a fixed prime p < 2^31.
struct ModArith {
  std::uint32_t p;
  std::uint64_t magic;  // floor(2^64 / p)

  explicit ModArith(std::uint32_t prime) : p(prime), magic(~0ULL / prime) {}

  std::uint32_t reduce(std::uint64_t x) const {
    const std::uint64_t q = static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(x) * magic) >> 64);
    std::uint64_t r = x - q * p;
    if (r >= p) r -= p;
    return static_cast<std::uint32_t>(r);
  }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return reduce(static_cast<std::uint64_t>(a) * b);
  }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t s = a + b;
    if (s >= p) s -= p;
    return s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
    return a >= b ? a - b : a + p - b;
  }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
  std::uint32_t inv(std::uint32_t a) const { return pow(a, p - 2); }
};

std::uint32_t mod_of(const Integer& v, const ModArith& m);

ModMatrix reduce_mod(const IntMatrix& m, std::uint32_t prime);

// Row echelon profile of a mod-p elimination.
struct EchelonProfile {
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_rows;  // original row carrying pivot i
  std::vector<std::size_t> pivot_cols;
  std::vector<std::size_t> free_cols;
};

// In-place row echelon over Z/p. Deterministic pivot choice (first nonzero,
// scanning columns left to right).
EchelonProfile eliminate_mod(ModMatrix& m);

std::size_t rank_mod(const IntMatrix& m, std::uint32_t prime);

// Exact rank over Q via fraction-free (Bareiss) elimination with
// smallest-magnitude pivoting.
std::size_t rank_rational(const IntMatrix& m);

// Exact kernel basis over Q, returned as primitive integer vectors (content
// 1, first nonzero entry positive). Ground-truth path: fraction-free
// elimination plus rational back-substitution. Intended for small systems
// and as the escalation target of kernel_exact.
std::vector<std::vector<Integer>> nullspace_rational(const IntMatrix& m);

// Exact kernel basis of m over Q. Fast path: modular rank profile plus
// Dixon p-adic lifting of each free column, verified entry-for-entry in
// exact arithmetic; falls back to nullspace_rational if verification fails.
// The result is always exactly verified (m * v == 0 over Z). max_vectors
// truncates the basis (0 keeps all of it).
std::vector<std::vector<Integer>> kernel_exact(const IntMatrix& m,
                                               std::size_t max_vectors = 0);

bool in_kernel(const IntMatrix& m, const std::vector<Integer>& v);

// Divide by content and normalize sign of the first nonzero entry.
void make_primitive(std::vector<Integer>& v);

// Deterministic worker primes just below 2^31, largest first.
std::uint32_t worker_prime(std::size_t index);

// Deterministic Miller-Rabin, exact for 32-bit inputs.
bool is_small_prime(std::uint32_t n);

}  // namespace fatpoints
