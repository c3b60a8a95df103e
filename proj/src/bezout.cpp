#include "fatpoints/bezout.hpp"

#include <algorithm>

#include "fatpoints/error.hpp"

namespace fatpoints {

CurveClass line_class(const ProjectiveLine& l, const PointConfiguration& cfg,
                      std::optional<std::string> tag) {
  CurveClass out;
  out.degree = 1;
  out.mults.reserve(cfg.size());
  for (const ProjectivePoint& p : cfg.points)
    out.mults.push_back(incident(p, l) ? 1 : 0);
  out.tag = std::move(tag);
  return out;
}

namespace {

void validate(const DivisorClass& divisor, const std::vector<CurveClass>& curves) {
  for (const CurveClass& c : curves) {
    if (c.mults.size() != divisor.mults.size())
      throw precondition_error("curve multiplicity vector length does not match the divisor");
    if (c.degree < 1) throw precondition_error("curve classes must have degree >= 1");
    for (const Integer& m : c.mults)
      if (sgn(m) < 0) throw precondition_error("curve multiplicities must be >= 0");
  }
}

bool effective(const DivisorClass& d) {
  if (sgn(d.degree) < 0) return false;
  for (const Integer& m : d.mults)
    if (sgn(m) < 0) return false;
  return true;
}

std::vector<std::vector<std::size_t>> duplicate_groups_of(
    const std::vector<CurveClass>& curves) {
  std::vector<std::vector<std::size_t>> groups;
  std::vector<bool> seen(curves.size(), false);
  for (std::size_t i = 0; i < curves.size(); ++i) {
    if (seen[i]) continue;
    std::vector<std::size_t> group = {i};
    for (std::size_t j = i + 1; j < curves.size(); ++j) {
      if (seen[j]) continue;
      if (curves[i].degree == curves[j].degree && curves[i].mults == curves[j].mults) {
        group.push_back(j);
        seen[j] = true;
      }
    }
    if (group.size() > 1) groups.push_back(std::move(group));
  }
  return groups;
}

}  // namespace

std::vector<std::pair<Integer, Integer>> bezout_step_scores(
    const DivisorClass& divisor, const std::vector<CurveClass>& curves) {
  validate(divisor, curves);
  std::vector<std::pair<Integer, Integer>> out;
  out.reserve(curves.size());
  for (const CurveClass& c : curves) {
    Integer e(0);
    for (std::size_t j = 0; j < c.mults.size(); ++j) e += divisor.mults[j] * c.mults[j];
    out.emplace_back(divisor.degree * c.degree, e);
  }
  return out;
}

BezoutDecomposition bezout_decompose(const DivisorClass& divisor,
                                     const std::vector<CurveClass>& curves,
                                     const ReductionOrder& order) {
  validate(divisor, curves);
  BezoutDecomposition out;
  out.coeffs.assign(curves.size(), Integer(0));
  out.residual = divisor;
  out.duplicate_groups = duplicate_groups_of(curves);
  out.non_effective = !effective(divisor);

  // every productive round reduces the degree by at least one, so effective
  // inputs need at most deg(D) * r rounds; the floor keeps mildly
  // non-effective inputs processable before the guard fires
  const long d_long = std::max(0L, out.residual.degree.get_si());
  const std::size_t cap = std::max<std::size_t>(
      static_cast<std::size_t>(d_long) * curves.size() + 1, curves.size() + 1);

  SeededRng rng(order.seed);
  for (;;) {
    std::vector<std::size_t> violating;
    for (std::size_t i = 0; i < curves.size(); ++i) {
      Integer e(0);
      for (std::size_t j = 0; j < curves[i].mults.size(); ++j)
        e += out.residual.mults[j] * curves[i].mults[j];
      if (e > out.residual.degree * curves[i].degree) violating.push_back(i);
    }
    if (violating.empty()) break;
    if (out.rounds.size() >= cap)
      throw internal_error(
          "bezout reduction exceeded its round cap; the input divisor is not "
          "numerically effective");

    std::vector<std::size_t> round;
    if (order.kind == ReductionOrder::Kind::simultaneous) {
      round = violating;
    } else {
      const std::size_t pick = static_cast<std::size_t>(
          rng.uniform(0, static_cast<long>(violating.size()) - 1));
      round = {violating[pick]};
    }
    for (const std::size_t i : round) {
      out.residual.degree -= curves[i].degree;
      for (std::size_t j = 0; j < curves[i].mults.size(); ++j)
        out.residual.mults[j] -= curves[i].mults[j];
      out.coeffs[i] += 1;
    }
    if (!effective(out.residual)) out.non_effective = true;
    out.rounds.push_back(std::move(round));
  }

  // numerically identical classes must end with identical coefficients
  for (const auto& group : out.duplicate_groups)
    for (std::size_t t = 1; t < group.size(); ++t)
      if (out.coeffs[group[t]] != out.coeffs[group[0]])
        throw internal_error("duplicate curve classes received distinct coefficients");
  return out;
}

bool check_residual_inequality(const BezoutDecomposition& dec,
                               const std::vector<CurveClass>& curves) {
  for (const CurveClass& c : curves) {
    Integer e(0);
    for (std::size_t j = 0; j < c.mults.size(); ++j) e += dec.residual.mults[j] * c.mults[j];
    if (dec.residual.degree * c.degree < e) return false;
  }
  return true;
}

namespace {

bool same_result(const BezoutDecomposition& a, const BezoutDecomposition& b) {
  return a.coeffs == b.coeffs && a.residual.degree == b.residual.degree &&
         a.residual.mults == b.residual.mults;
}

}  // namespace

ConfluenceReport confluence_test(const DivisorClass& divisor,
                                 const std::vector<CurveClass>& curves, int trials,
                                 std::uint64_t seed) {
  if (trials < 1) throw precondition_error("confluence_test needs trials >= 1");
  ConfluenceReport report;
  report.trials = trials;
  report.simultaneous = bezout_decompose(divisor, curves, ReductionOrder::simultaneous());
  SeededRng seeder(seed);
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = seeder.next_u64();
    const BezoutDecomposition run =
        bezout_decompose(divisor, curves, ReductionOrder::single_random(trial_seed));
    if (!same_result(report.simultaneous, run)) {
      report.all_identical = false;
      if (!report.counterexample) {
        report.counterexample = run;
        report.counterexample_trial = t;
      }
    }
  }
  return report;
}

}  // namespace fatpoints
