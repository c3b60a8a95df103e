#include "fatpoints/generators.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <string>

#include "fatpoints/error.hpp"
#include "fatpoints/interpolation.hpp"
#include "fatpoints/numeric.hpp"

namespace fatpoints {

namespace {

Integer det3(const IntegerTriple& a, const IntegerTriple& b, const IntegerTriple& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
         a[2] * (b[0] * c[1] - b[1] * c[0]);
}

ProjectiveLine random_line(SeededRng& rng) {
  for (;;) {
    const long a = rng.uniform(-kCoordBound, kCoordBound);
    const long b = rng.uniform(-kCoordBound, kCoordBound);
    const long c = rng.uniform(-kCoordBound, kCoordBound);
    if (a == 0 && b == 0 && c == 0) continue;
    return ProjectiveLine::from_integers(a, b, c);
  }
}

ProjectivePoint random_point(SeededRng& rng) {
  for (;;) {
    const long x = rng.uniform(-kCoordBound, kCoordBound);
    const long y = rng.uniform(-kCoordBound, kCoordBound);
    const long z = rng.uniform(-kCoordBound, kCoordBound);
    if (x == 0 && y == 0 && z == 0) continue;
    return ProjectivePoint::from_integers(x, y, z);
  }
}

// Two independent points spanning the line (a, b, c).
std::pair<IntegerTriple, IntegerTriple> span_of_line(const ProjectiveLine& l) {
  const IntegerTriple& c = l.primitive();
  std::vector<IntegerTriple> cands = {{Integer(0), c[2], -c[1]},
                                      {c[2], Integer(0), -c[0]},
                                      {c[1], -c[0], Integer(0)}};
  std::vector<IntegerTriple> good;
  for (auto& t : cands) {
    if (sgn(t[0]) != 0 || sgn(t[1]) != 0 || sgn(t[2]) != 0) good.push_back(t);
    if (good.size() == 2) {
      const IntegerTriple cr = {good[0][1] * good[1][2] - good[0][2] * good[1][1],
                                good[0][2] * good[1][0] - good[0][0] * good[1][2],
                                good[0][0] * good[1][1] - good[0][1] * good[1][0]};
      if (sgn(cr[0]) == 0 && sgn(cr[1]) == 0 && sgn(cr[2]) == 0)
        good.pop_back();  // dependent pair, keep looking
      else
        return {good[0], good[1]};
    }
  }
  throw internal_error("line without two spanning points");
}

ProjectivePoint random_point_on(const ProjectiveLine& l, SeededRng& rng) {
  const auto [a, b] = span_of_line(l);
  for (;;) {
    const long u = rng.uniform(-kCoordBound, kCoordBound);
    const long v = rng.uniform(-kCoordBound, kCoordBound);
    if (u == 0 && v == 0) continue;
    const IntegerTriple t = {a[0] * u + b[0] * v, a[1] * u + b[1] * v, a[2] * u + b[2] * v};
    if (sgn(t[0]) == 0 && sgn(t[1]) == 0 && sgn(t[2]) == 0) continue;
    return ProjectivePoint(Rational(t[0]), Rational(t[1]), Rational(t[2]));
  }
}

bool pairwise_distinct(const std::vector<ProjectivePoint>& pts) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (pts[i] == pts[j]) return false;
  return true;
}

// lines pairwise distinct and no three concurrent
bool generic_line_family(const std::vector<ProjectiveLine>& lines) {
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j)
      if (lines[i] == lines[j]) return false;
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j)
      for (std::size_t k = j + 1; k < lines.size(); ++k)
        if (sgn(det3(lines[i].primitive(), lines[j].primitive(), lines[k].primitive())) == 0)
          return false;
  return true;
}

// every collinear triple is contained in one of the allowed masks
bool only_allowed_collinear_triples(const std::vector<ProjectivePoint>& pts,
                                    const std::vector<std::uint64_t>& allowed) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      for (std::size_t k = j + 1; k < pts.size(); ++k) {
        if (sgn(det3(pts[i].primitive(), pts[j].primitive(), pts[k].primitive())) != 0)
          continue;
        const std::uint64_t triple = (1ULL << i) | (1ULL << j) | (1ULL << k);
        bool covered = false;
        for (const std::uint64_t m : allowed) covered |= ((triple & m) == triple);
        if (!covered) return false;
      }
  return true;
}

[[noreturn]] void give_up(const char* generator) {
  throw genericity_error(std::string(generator) + ": genericity predicates failed after " +
                         std::to_string(kRetryCap) + " attempts");
}

}  // namespace

PointConfiguration gen_star(int d, std::uint64_t seed) {
  if (d < 2) throw precondition_error("gen_star: d must be >= 2");
  SeededRng rng(seed);
  for (int attempt = 0; attempt < kRetryCap; ++attempt) {
    std::vector<ProjectiveLine> lines;
    for (int i = 0; i < d; ++i) lines.push_back(random_line(rng));
    if (!generic_line_family(lines)) continue;
    std::vector<ProjectivePoint> pts;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) pts.push_back(meet(lines[i], lines[j]));
    return PointConfiguration(std::move(pts), "star-" + std::to_string(d));
  }
  give_up("gen_star");
}

PointConfiguration gen_quasi_star(int d, std::uint64_t seed) {
  if (d < 3) throw precondition_error("gen_quasi_star: d must be >= 3");
  SeededRng rng(seed);
  for (int attempt = 0; attempt < kRetryCap; ++attempt) {
    std::vector<ProjectiveLine> lines;
    for (int i = 0; i < d; ++i) lines.push_back(random_line(rng));
    if (!generic_line_family(lines)) continue;

    std::vector<ProjectivePoint> vertices;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) vertices.push_back(meet(lines[i], lines[j]));

    std::vector<ProjectivePoint> extras;
    bool ok = true;
    for (int i = 0; i < d && ok; ++i) {
      bool placed = false;
      for (int tries = 0; tries < kRetryCap; ++tries) {
        const ProjectivePoint cand = random_point_on(lines[i], rng);
        bool clash = false;
        for (const auto& v : vertices) clash |= (cand == v);
        for (const auto& e : extras) clash |= (cand == e);
        for (int j = 0; j < d && !clash; ++j)
          if (j != i) clash |= incident(cand, lines[j]);
        if (clash) continue;
        extras.push_back(cand);
        placed = true;
        break;
      }
      ok = placed;
    }
    if (!ok) continue;

    // no three extras collinear (in particular they are not all collinear,
    // which would turn the configuration into a (d+1)-star)
    bool extras_generic = true;
    for (std::size_t i = 0; i < extras.size() && extras_generic; ++i)
      for (std::size_t j = i + 1; j < extras.size() && extras_generic; ++j)
        for (std::size_t k = j + 1; k < extras.size(); ++k)
          if (sgn(det3(extras[i].primitive(), extras[j].primitive(),
                       extras[k].primitive())) == 0) {
            extras_generic = false;
            break;
          }
    if (!extras_generic) continue;

    std::vector<ProjectivePoint> pts = vertices;
    pts.insert(pts.end(), extras.begin(), extras.end());

    // reject accidental collinear triples across vertices and extras: each
    // of the d lines carries exactly d configuration points and nothing else
    // is collinear
    std::vector<std::uint64_t> allowed;
    for (int i = 0; i < d; ++i) {
      std::uint64_t mask = 0;
      for (std::size_t t = 0; t < pts.size(); ++t)
        if (incident(pts[t], lines[i])) mask |= 1ULL << t;
      allowed.push_back(mask);
    }
    if (!only_allowed_collinear_triples(pts, allowed)) continue;

    return PointConfiguration(std::move(pts), "quasi-star-" + std::to_string(d));
  }
  give_up("gen_quasi_star");
}

PointConfiguration gen_collinear_plus_point(int k, std::uint64_t seed) {
  if (k < 1) throw precondition_error("gen_collinear_plus_point: k must be >= 1");
  SeededRng rng(seed);
  for (int attempt = 0; attempt < kRetryCap; ++attempt) {
    const ProjectiveLine l = random_line(rng);
    std::vector<ProjectivePoint> pts;
    bool ok = true;
    for (int i = 0; i < k && ok; ++i) {
      bool placed = false;
      for (int tries = 0; tries < kRetryCap; ++tries) {
        const ProjectivePoint cand = random_point_on(l, rng);
        bool clash = false;
        for (const auto& p : pts) clash |= (cand == p);
        if (clash) continue;
        pts.push_back(cand);
        placed = true;
        break;
      }
      ok = placed;
    }
    if (!ok) continue;
    ProjectivePoint q = random_point(rng);
    bool found = false;
    for (int tries = 0; tries < kRetryCap; ++tries) {
      if (!incident(q, l)) {
        found = true;
        break;
      }
      q = random_point(rng);
    }
    if (!found) continue;
    pts.push_back(q);
    return PointConfiguration(std::move(pts),
                              "collinear-" + std::to_string(k) + "-plus-1");
  }
  give_up("gen_collinear_plus_point");
}

PointConfiguration gen_prop42(std::uint64_t seed) {
  SeededRng rng(seed);
  for (int attempt = 0; attempt < kRetryCap; ++attempt) {
    std::vector<ProjectiveLine> lines;
    for (int i = 0; i < 3; ++i) lines.push_back(random_line(rng));
    if (!generic_line_family(lines)) continue;

    // P1 on L1&L2, P2 on L2&L3, P3 on L3&L1
    std::vector<ProjectivePoint> pts = {meet(lines[0], lines[1]), meet(lines[1], lines[2]),
                                        meet(lines[2], lines[0])};

    bool ok = true;
    for (int i = 0; i < 3 && ok; ++i) {  // two extra points per line
      for (int c = 0; c < 2 && ok; ++c) {
        bool placed = false;
        for (int tries = 0; tries < kRetryCap; ++tries) {
          const ProjectivePoint cand = random_point_on(lines[i], rng);
          bool clash = false;
          for (const auto& p : pts) clash |= (cand == p);
          for (int j = 0; j < 3 && !clash; ++j)
            if (j != i) clash |= incident(cand, lines[j]);
          if (clash) continue;
          pts.push_back(cand);
          placed = true;
          break;
        }
        ok = placed;
      }
    }
    if (!ok) continue;

    bool found = false;
    for (int tries = 0; tries < kRetryCap && !found; ++tries) {
      const ProjectivePoint cand = random_point(rng);
      bool clash = false;
      for (int j = 0; j < 3; ++j) clash |= incident(cand, lines[j]);
      for (const auto& p : pts) clash |= (cand == p);
      if (clash) continue;
      pts.push_back(cand);
      found = true;
    }
    if (!found) continue;

    PointConfiguration cfg(pts, "prop42");

    // exactly the three line quadruples may align four or more points
    const auto masks = maximal_collinear_masks(cfg);
    std::size_t quads = 0;
    bool bad = false;
    for (const std::uint64_t m : masks) {
      const int pc = std::popcount(m);
      if (pc >= 5) bad = true;
      if (pc == 4) ++quads;
    }
    if (bad || quads != 3) continue;

    // downstream check: no cubic through all ten points
    const auto cubics = system_dimension(FatPointScheme(cfg, 1), 3, CertaintyPolicy::certified);
    if (cubics.dimension != 0) continue;

    return cfg;
  }
  give_up("gen_prop42");
}

PointConfiguration gen_conic_example(std::uint64_t seed) {
  SeededRng rng(seed);
  // parameter window kept small so that certified witness extraction on the
  // resulting schemes stays affordable
  constexpr long kParamBound = 40;
  for (int attempt = 0; attempt < kRetryCap; ++attempt) {
    std::vector<long> t;
    while (t.size() < 7) {
      const long cand = rng.uniform(-kParamBound, kParamBound);
      if (std::find(t.begin(), t.end(), cand) == t.end()) t.push_back(cand);
    }
    std::vector<ProjectivePoint> pts;
    for (const long ti : t) pts.push_back(ProjectivePoint::from_integers(ti * ti, ti, 1));

    const ProjectiveLine l12 = line_through(pts[0], pts[1]);
    const ProjectiveLine l67 = line_through(pts[5], pts[6]);
    const ProjectiveLine l23 = line_through(pts[1], pts[2]);
    const ProjectiveLine l45 = line_through(pts[3], pts[4]);
    if (l12 == l67 || l23 == l45) continue;
    const ProjectivePoint p8 = meet(l12, l67);
    const ProjectivePoint p10 = meet(l23, l45);
    if (p10 == pts[0]) continue;
    const ProjectiveLine l1_10 = line_through(pts[0], p10);
    if (l1_10 == l67) continue;
    const ProjectivePoint p9 = meet(l1_10, l67);

    pts.push_back(p8);
    pts.push_back(p9);
    pts.push_back(p10);
    if (!pairwise_distinct(pts)) continue;

    // the constructed points must avoid the conic, and P10 must miss the
    // chord carrying P8 and P9 (otherwise a cubic through everything exists)
    const auto on_conic = [](const ProjectivePoint& p) {
      const IntegerTriple& v = p.primitive();
      return sgn(v[1] * v[1] - v[0] * v[2]) == 0;
    };
    if (on_conic(p8) || on_conic(p9) || on_conic(p10)) continue;
    if (incident(p10, l67)) continue;

    return PointConfiguration(std::move(pts), "conic-example");
  }
  give_up("gen_conic_example");
}

PointConfiguration gen_generic_points(int s, std::uint64_t seed) {
  if (s < 1) throw precondition_error("gen_generic_points: s must be >= 1");
  SeededRng rng(seed);
  for (int attempt = 0; attempt < kRetryCap; ++attempt) {
    std::vector<ProjectivePoint> pts;
    while (static_cast<int>(pts.size()) < s) {
      const ProjectivePoint cand = random_point(rng);
      bool clash = false;
      for (const auto& p : pts) clash |= (cand == p);
      if (!clash) pts.push_back(cand);
    }
    bool generic = true;
    for (std::size_t i = 0; i < pts.size() && generic; ++i)
      for (std::size_t j = i + 1; j < pts.size() && generic; ++j)
        for (std::size_t k = j + 1; k < pts.size(); ++k)
          if (sgn(det3(pts[i].primitive(), pts[j].primitive(), pts[k].primitive())) == 0) {
            generic = false;
            break;
          }
    if (!generic) continue;
    if (s >= 6 && on_common_conic(pts)) continue;
    return PointConfiguration(std::move(pts), "generic-" + std::to_string(s));
  }
  give_up("gen_generic_points");
}

std::vector<std::uint64_t> maximal_collinear_masks(const PointConfiguration& cfg) {
  const std::size_t s = cfg.size();
  if (s > 64) throw precondition_error("incidence masks support at most 64 points");
  std::map<ProjectiveLine, std::uint64_t> by_line;
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = i + 1; j < s; ++j) {
      const ProjectiveLine l = line_through(cfg.points[i], cfg.points[j]);
      auto it = by_line.find(l);
      if (it != by_line.end()) continue;
      std::uint64_t mask = 0;
      for (std::size_t t = 0; t < s; ++t)
        if (incident(cfg.points[t], l)) mask |= 1ULL << t;
      by_line.emplace(l, mask);
    }
  std::vector<std::uint64_t> out;
  for (const auto& [l, mask] : by_line) out.push_back(mask);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

// Backtracking search for d candidate masks matching an incidence predicate.
// check(chosen) is called on complete selections.
bool choose_lines(const std::vector<std::uint64_t>& cands, int d,
                  const std::function<bool(const std::vector<std::uint64_t>&)>& check) {
  std::vector<std::uint64_t> chosen;
  std::function<bool(std::size_t)> rec = [&](std::size_t from) {
    if (static_cast<int>(chosen.size()) == d) return check(chosen);
    if (cands.size() - from < d - chosen.size()) return false;
    for (std::size_t i = from; i < cands.size(); ++i) {
      // candidate must meet every chosen line in at most one point
      bool fits = true;
      for (const std::uint64_t m : chosen)
        if (std::popcount(m & cands[i]) > 1) fits = false;
      if (!fits) continue;
      chosen.push_back(cands[i]);
      if (rec(i + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  return rec(0);
}

std::vector<int> coverage(const std::vector<std::uint64_t>& chosen, std::size_t s) {
  std::vector<int> cov(s, 0);
  for (const std::uint64_t m : chosen)
    for (std::size_t t = 0; t < s; ++t)
      if (m & (1ULL << t)) ++cov[t];
  return cov;
}

}  // namespace

bool is_star(const PointConfiguration& cfg, int d) {
  if (d < 2) return false;
  if (d == 2) return cfg.size() == 1;
  const std::size_t s = cfg.size();
  if (s != static_cast<std::size_t>(d) * (d - 1) / 2) return false;

  const auto masks = maximal_collinear_masks(cfg);
  std::vector<std::uint64_t> cands;
  for (const std::uint64_t m : masks)
    if (std::popcount(m) == d - 1) cands.push_back(m);
  if (cands.size() < static_cast<std::size_t>(d)) return false;

  return choose_lines(cands, d, [&](const std::vector<std::uint64_t>& chosen) {
    for (std::size_t i = 0; i < chosen.size(); ++i)
      for (std::size_t j = i + 1; j < chosen.size(); ++j)
        if (std::popcount(chosen[i] & chosen[j]) != 1) return false;
    for (const int c : coverage(chosen, s))
      if (c != 2) return false;
    return true;
  });
}

bool is_quasi_star(const PointConfiguration& cfg, int d) {
  if (d < 3) return false;
  const std::size_t s = cfg.size();
  if (s != static_cast<std::size_t>(d) * (d + 1) / 2) return false;

  const auto masks = maximal_collinear_masks(cfg);
  std::vector<std::uint64_t> cands;
  for (const std::uint64_t m : masks)
    if (std::popcount(m) == d) cands.push_back(m);
  if (cands.size() < static_cast<std::size_t>(d)) return false;

  return choose_lines(cands, d, [&](const std::vector<std::uint64_t>& chosen) {
    for (std::size_t i = 0; i < chosen.size(); ++i)
      for (std::size_t j = i + 1; j < chosen.size(); ++j)
        if (std::popcount(chosen[i] & chosen[j]) != 1) return false;
    const std::vector<int> cov = coverage(chosen, s);
    std::size_t vertices = 0, extras = 0;
    std::vector<ProjectivePoint> extra_pts;
    for (std::size_t t = 0; t < s; ++t) {
      if (cov[t] == 2) ++vertices;
      else if (cov[t] == 1) {
        ++extras;
        extra_pts.push_back(cfg.points[t]);
      } else
        return false;
    }
    if (vertices != static_cast<std::size_t>(d) * (d - 1) / 2 ||
        extras != static_cast<std::size_t>(d))
      return false;
    // collinear extras would make this a (d+1)-star instead
    return !collinear(extra_pts);
  });
}

}  // namespace fatpoints
