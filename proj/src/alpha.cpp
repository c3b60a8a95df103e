#include "fatpoints/alpha.hpp"

#include <algorithm>
#include <bit>

#include "fatpoints/error.hpp"
#include "fatpoints/generators.hpp"
#include "fatpoints/linalg.hpp"

namespace fatpoints {

namespace {

// Least d in [lo, hi] with positive dimension. Positive fast-policy answers
// are confirmed at a second prime (modular emptiness is one-sided and needs
// no confirmation). The dimension is monotone in the degree over Q, so the
// fast policy may bisect wide windows; the certified policy scans linearly
// to keep exact kernel extraction at the threshold degree only.
int alpha_search(const PointConfiguration& cfg, int m, int lo, int hi,
                 CertaintyPolicy policy, bool& certified) {
  const FatPointScheme scheme(cfg, m);
  lo = std::max(lo, 0);

  // dimension estimate at the larger of two worker-prime ranks; one-sided
  // errors can only overestimate the dimension, never underestimate it
  struct Probe {
    std::size_t dim = 0;
    bool certified = true;
  };
  const auto probe_fast = [&](int d) -> Probe {
    if (d < m) return {0, true};
    const std::size_t cols = monomial_count(d);
    const std::size_t rows =
        scheme.config.size() * static_cast<std::size_t>(m) * (m + 1) / 2;
    const std::size_t full = std::min(rows, cols);
    std::size_t r = rank_modular_direct(scheme, d, worker_prime(0));
    if (cols - r > 0) r = std::max(r, rank_modular_direct(scheme, d, worker_prime(1)));
    return {cols - r, r == full};
  };

  if (policy == CertaintyPolicy::fast) {
    if (hi - lo > 3) {
      // the subadditive cap carries a witness, so positivity at hi is a theorem
      int a = lo, b = hi;
      Probe at_b{};
      bool b_probed = false;
      while (a < b) {
        const int mid = a + (b - a) / 2;
        const Probe p = probe_fast(mid);
        if (p.dim > 0) {
          b = mid;
          at_b = p;
          b_probed = true;
        } else {
          a = mid + 1;
        }
      }
      if (!b_probed) {
        at_b = probe_fast(a);
        if (at_b.dim == 0)
          throw internal_error("alpha search exhausted its theorem-backed window");
      }
      certified = at_b.certified;
      return a;
    }
    for (int d = lo; d <= hi; ++d) {
      const Probe p = probe_fast(d);
      if (p.dim == 0) continue;
      certified = p.certified;
      return d;
    }
    throw internal_error("alpha search exhausted its theorem-backed window");
  }

  for (int d = lo; d <= hi; ++d) {
    const LinearSystemResult res = system_dimension(scheme, d, policy);
    if (res.dimension == 0) continue;
    certified = res.certified;
    return d;
  }
  throw internal_error("alpha search exhausted its theorem-backed window");
}

int alpha_of_radical(const PointConfiguration& cfg, CertaintyPolicy policy,
                     bool& certified) {
  // for m = 1 the search is capped by the first degree with more monomials
  // than points
  int hi = 1;
  while (monomial_count(hi) <= cfg.size()) ++hi;
  return alpha_search(cfg, 1, 1, hi, policy, certified);
}

void validate_sequence(const AlphaSequence& seq) {
  const auto& a = seq.values;
  for (std::size_t i = 0; i + 1 < a.size(); ++i)
    if (a[i + 1] <= a[i])
      throw internal_error("alpha sequence is not strictly increasing");
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j + i + 1 < a.size(); ++j)
      if (a[i + j + 1] > a[i] + a[j])
        throw internal_error("alpha sequence violates subadditivity");
  // Chudnovsky: (alpha(Z)+1)/2 <= alpha(mZ)/m
  for (std::size_t i = 0; i < a.size(); ++i)
    if (Integer(a[0] + 1) * static_cast<long>(i + 1) > Integer(a[i]) * 2)
      throw internal_error("alpha sequence violates the Chudnovsky bound");
  if (!ev_check(seq)) throw internal_error("alpha sequence violates the EV inequality");
}

}  // namespace

int alpha(const FatPointScheme& scheme, CertaintyPolicy policy) {
  bool certified = false;
  const int m = scheme.multiplicity;
  if (m == 1) return alpha_of_radical(scheme.config, policy, certified);
  const int a1 = alpha_of_radical(scheme.config, policy, certified);
  const Integer lo_num = Integer(a1 + 1) * m;
  const int lo = std::max<long>(static_cast<long>(ceil_div(lo_num, Integer(2)).get_si()),
                                static_cast<long>(m));
  return alpha_search(scheme.config, m, lo, m * a1, policy, certified);
}

AlphaSequence alpha_sequence(const PointConfiguration& cfg, int m_max,
                             CertaintyPolicy policy) {
  if (m_max < 1) throw precondition_error("alpha_sequence: m_max must be >= 1");
  AlphaSequence seq{cfg, {}, {}};
  bool certified = false;
  seq.values.push_back(alpha_of_radical(cfg, policy, certified));
  seq.certified.push_back(certified);
  for (int m = 2; m <= m_max; ++m) {
    int lo = seq.values[m - 2] + 1;
    for (int n = 1; n < m; ++n) {
      // EV: alpha(mZ) >= m (alpha(nZ)+1) / (n+1)
      const Integer bound = ceil_div(Integer(seq.values[n - 1] + 1) * m, Integer(n + 1));
      lo = std::max<long>(lo, bound.get_si());
    }
    int hi = seq.values[0] * m;
    for (int n = 1; n < m; ++n)
      hi = std::min(hi, seq.values[n - 1] + seq.values[m - n - 1]);
    seq.values.push_back(alpha_search(cfg, m, lo, hi, policy, certified));
    seq.certified.push_back(certified);
  }
  validate_sequence(seq);
  return seq;
}

std::vector<int> BetaSequence::full() const {
  std::vector<int> out = {beta0};
  out.insert(out.end(), betas.begin(), betas.end());
  return out;
}

BetaSequence beta_sequence(const AlphaSequence& seq) {
  if (seq.values.size() < 2)
    throw precondition_error("beta_sequence needs at least 2 alpha values");
  BetaSequence out;
  out.beta0 = seq.values[0];
  for (std::size_t i = 0; i + 1 < seq.values.size(); ++i)
    out.betas.push_back(seq.values[i + 1] - seq.values[i]);
  return out;
}

Rational chudnovsky_bound(int alpha1) {
  if (alpha1 < 1) throw precondition_error("chudnovsky_bound: alpha(Z) must be >= 1");
  return make_rational(Integer(alpha1 + 1), Integer(2));
}

bool ev_check(const AlphaSequence& seq) {
  const auto& a = seq.values;
  for (std::size_t i = 0; i + 1 < a.size(); ++i)
    if (a[i + 1] <= a[i]) return false;
  for (std::size_t n = 1; n <= a.size(); ++n)
    for (std::size_t m = n; m <= a.size(); ++m)
      if (Integer(a[n - 1] + 1) * static_cast<long>(m) >
          Integer(a[m - 1]) * static_cast<long>(n + 1))
        return false;
  return true;
}

Rational ev_gap_bound(int m, int k, int d) {
  if (!(d >= k && k >= 2 && m >= 1))
    throw precondition_error("ev_gap_bound needs d >= k >= 2 and m >= 1");
  return make_rational(Integer(d - 1) * (m + k), Integer(k - 1));
}

WaldschmidtInterval waldschmidt_from(const AlphaSequence& seq) {
  if (seq.values.empty()) throw precondition_error("empty alpha sequence");
  WaldschmidtInterval out;
  for (std::size_t i = 0; i < seq.values.size(); ++i) {
    const int m = static_cast<int>(i) + 1;
    const Rational lo = make_rational(Integer(seq.values[i] + 1), Integer(m + 1));
    const Rational hi = make_rational(Integer(seq.values[i]), Integer(m));
    if (i == 0 || lo > out.lower) {
      out.lower = lo;
      out.lower_at = m;
    }
    if (i == 0 || hi < out.upper) {
      out.upper = hi;
      out.upper_at = m;
    }
  }
  if (out.lower > out.upper)
    throw internal_error("Waldschmidt bounds crossed; the EV inequality failed");
  out.exact = (out.lower == out.upper);

  if (seq.values.size() >= 2) {
    const std::vector<int> full = beta_sequence(seq).full();
    const int len = static_cast<int>(full.size());
    for (int q = 1; q <= len / 2 && !out.conjectured; ++q) {
      for (int start = 0; start + 2 * q <= len; ++start) {
        bool periodic = true;
        for (int i = start; i + q < len; ++i)
          if (full[i] != full[i + q]) {
            periodic = false;
            break;
          }
        if (!periodic) continue;
        long r = 0;
        for (int i = start; i < start + q; ++i) r += full[i];
        const Rational cand = make_rational(Integer(r), Integer(q));
        if (cand == out.upper) {
          out.conjectured = cand;
          out.period = q;
          out.period_start = start;
        }
        break;  // smallest start for this q decides
      }
    }
  }
  return out;
}

WaldschmidtInterval waldschmidt_interval(const PointConfiguration& cfg, int m_max,
                                         CertaintyPolicy policy) {
  if (m_max < 1) throw precondition_error("waldschmidt_interval: m_max must be >= 1");
  return waldschmidt_from(alpha_sequence(cfg, m_max, policy));
}

std::string class_tag_name(ClassTag tag) {
  switch (tag) {
    case ClassTag::line: return "line";
    case ClassTag::conic: return "conic";
    case ClassTag::four_star: return "four_star";
    case ClassTag::three_quasi_star: return "three_quasi_star";
    case ClassTag::collinear_plus_one: return "collinear_plus_one";
    case ClassTag::unclassified: return "unclassified";
  }
  return "unclassified";
}

Classification classify(const PointConfiguration& cfg, int m_max) {
  if (m_max < 2) throw precondition_error("classify: m_max must be >= 2");
  Classification out;
  const std::size_t s = cfg.size();

  if (s == 1 || collinear(cfg.points)) {
    out.tag = ClassTag::line;
    out.evidence = s == 1 ? "single point" : ("all points on " + line_through(cfg.points[0], cfg.points[1]).str());
    return out;
  }

  // k collinear points plus one off the line; checked before the conic
  // detector because the degenerate conic (line pair) would otherwise
  // shadow the sharper value (2k-1)/k
  if (s >= 3) {
    const auto masks = maximal_collinear_masks(cfg);
    for (const std::uint64_t m : masks) {
      if (std::popcount(m) != static_cast<int>(s) - 1) continue;
      out.tag = ClassTag::collinear_plus_one;
      out.k = static_cast<int>(s) - 1;
      std::size_t off = 0;
      for (std::size_t t = 0; t < s; ++t)
        if (!(m & (1ULL << t))) off = t;
      out.evidence = std::to_string(s - 1) + " collinear points plus " + cfg.points[off].str();
      return out;
    }
  }

  if (on_common_conic(cfg.points)) {
    out.tag = ClassTag::conic;
    IntMatrix veronese(s, 6);
    for (std::size_t i = 0; i < s; ++i) {
      const IntegerTriple& v = cfg.points[i].primitive();
      veronese.at(i, 0) = v[0] * v[0];
      veronese.at(i, 1) = v[0] * v[1];
      veronese.at(i, 2) = v[0] * v[2];
      veronese.at(i, 3) = v[1] * v[1];
      veronese.at(i, 4) = v[1] * v[2];
      veronese.at(i, 5) = v[2] * v[2];
    }
    const auto kernel = nullspace_rational(veronese);
    if (!kernel.empty()) {
      std::string conic = "conic ";
      const char* names[6] = {"x^2", "xy", "xz", "y^2", "yz", "z^2"};
      bool first = true;
      for (int j = 0; j < 6; ++j) {
        if (sgn(kernel[0][j]) == 0) continue;
        if (!first) conic += " + ";
        conic += kernel[0][j].get_str() + " " + names[j];
        first = false;
      }
      out.evidence = conic;
    }
    return out;
  }

  if (is_star(cfg, 4)) {
    out.tag = ClassTag::four_star;
    out.evidence = "six points forming a 4-star";
    return out;
  }
  if (is_quasi_star(cfg, 3)) {
    out.tag = ClassTag::three_quasi_star;
    out.evidence = "six points forming a 3-quasi-star";
    return out;
  }

  out.tag = ClassTag::unclassified;
  out.interval = waldschmidt_interval(cfg, m_max, CertaintyPolicy::certified);
  const Rational nine_quarters = make_rational(Integer(9), Integer(4));
  if (out.interval->lower > nine_quarters) {
    out.lower_bound_exceeds_nine_quarters = true;
    out.evidence = "certified lower bound " + format_rational(out.interval->lower) +
                   " > 9/4 at m = " + std::to_string(out.interval->lower_at);
  } else {
    out.evidence = "Waldschmidt interval [" + format_rational(out.interval->lower) + ", " +
                   format_rational(out.interval->upper) + "]";
  }
  return out;
}

}  // namespace fatpoints
