#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "slemst/conformal.hpp"
#include "slemst/lattice.hpp"
#include "slemst/rng.hpp"
#include "slemst/spanning.hpp"

namespace slemst {

// ---------------------------------------------------------------------------
// Schramm's left-passage formula

// 2F1(1/2, b; 3/2; -u2) for u2 >= 0.
//
// Small arguments use the Pfaff transform
//   (1 + u2)^(-b) 2F1(1, b; 3/2; u2 / (1 + u2)),
// whose series argument lies in [0, 1). For u2 > 3 and b > 1/2 the identity
//   u 2F1(1/2, b; 3/2; -u^2) = int_0^u (1 + s^2)^(-b) ds
// is evaluated as the full integral minus an alternating tail series in 1/u.
// For u2 > 3 and b <= 1/2 the integral is taken in tau = asinh(s).
inline double gauss_2f1_negz(double b, double u2) {
  if (!(u2 >= 0.0)) throw std::domain_error("gauss_2f1_negz: argument must be non-negative");
  if (u2 == 0.0) return 1.0;
  constexpr double tol = 1e-14;
  if (b > 0.5 && u2 > 3.0) {
    const double u = std::sqrt(u2);
    const double v2 = 1.0 / u2;
    const double total = 0.5 * std::sqrt(std::numbers::pi) * std::exp(std::lgamma(b - 0.5) - std::lgamma(b));
    // sum_n (-1)^n (b)_n / n! * v^(2b-1+2n) / (2b-1+2n)
    const double lead = std::pow(u, 1.0 - 2.0 * b);
    double coef = 1.0, tail = 0.0;
    for (int n = 0; n < 100000; ++n) {
      const double term = coef / (2.0 * b - 1.0 + 2.0 * n);
      tail += term;
      if (std::abs(term) <= tol * std::abs(tail)) break;
      coef *= -(b + n) / (n + 1.0) * v2;
    }
    return (total - lead * tail) / u;
  }
  if (b <= 0.5 && u2 > 3.0) {
    // u F = int_0^asinh(u) cosh(tau)^c dtau with c = 1 - 2b; split at u0^2 = 3
    // and expand cosh^c = 2^-c sum_k binom(c, k) e^{(c - 2k) tau} beyond it.
    const double c = 1.0 - 2.0 * b;
    const double t0 = std::asinh(std::sqrt(3.0));
    const double t1 = std::asinh(std::sqrt(u2));
    double binom = 1.0, tail = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const double r = c - 2.0 * k;
      const double piece = r == 0.0 ? t1 - t0 : (std::exp(r * t1) - std::exp(r * t0)) / r;
      const double term = binom * piece;
      tail += term;
      if (k > 0 && std::abs(term) <= tol * std::abs(tail)) break;
      binom *= (c - k) / (k + 1.0);
      if (binom == 0.0) break;
    }
    const double head = std::sqrt(3.0) * gauss_2f1_negz(b, 3.0);
    return (head + std::pow(2.0, -c) * tail) / std::sqrt(u2);
  }
  const double x = u2 / (1.0 + u2);
  double term = 1.0, sum = 1.0;
  for (int n = 0; n < 10000000; ++n) {
    term *= (b + n) / (1.5 + n) * x;
    sum += term;
    // the remaining terms are bounded by a geometric tail of ratio x
    if (std::abs(term) * x <= tol * (1.0 - x) * std::abs(sum)) break;
  }
  return std::pow(1.0 + u2, -b) * sum;
}

// Probability that an SLE_kappa trace from 0 to infinity in the upper
// half-plane passes to the left of a point at angle t from the imaginary axis
// (t > 0 towards the positive real axis). t = +-pi/2 return the boundary
// limits 1 and 0.
inline double schramm_lpp(double t, double kappa) {
  constexpr double half_pi = std::numbers::pi / 2.0;
  if (!(kappa > 0.0 && kappa < 8.0)) throw std::domain_error("schramm_lpp: kappa must lie in (0,8)");
  if (!(std::abs(t) <= half_pi)) throw std::domain_error("schramm_lpp: t must lie in [-pi/2, pi/2]");
  if (t == half_pi) return 1.0;
  if (t == -half_pi) return 0.0;
  const double b = 4.0 / kappa;
  const double norm = std::exp(std::lgamma(b) - std::lgamma((8.0 - kappa) / (2.0 * kappa))) / std::sqrt(std::numbers::pi);
  const double u = std::tan(t);
  return 0.5 + norm * u * gauss_2f1_negz(b, u * u);
}

// ---------------------------------------------------------------------------
// Left-passage field

enum class PathSelector { StoT, OptimalCrossing };

inline std::string to_string(PathSelector s) { return s == PathSelector::StoT ? "s_to_t" : "optimal_crossing"; }

// Interior face centroids used as probes, with integer tallies.
struct LeftPassageField {
  PathSelector selector = PathSelector::StoT;
  std::vector<int> faces;
  std::vector<Point> points;
  std::vector<double> angles;
  std::vector<std::uint64_t> counts_left;
  std::vector<std::uint64_t> counts_total;
  std::uint64_t on_path = 0;  // probes lying on a path (never happens for centroids)
  std::uint64_t samples = 0;

  // scanline layout: probes grouped by grid row, sorted by grid x
  int min_row = 0;
  int max_row = -1;
  std::vector<std::vector<int>> rows;  // index: grid y - min_row
  std::vector<int> grid_x;

  std::size_t size() const { return faces.size(); }

  void merge(const LeftPassageField& other) {
    if (other.faces != faces) throw std::invalid_argument("LeftPassageField::merge: probe sets differ");
    for (std::size_t i = 0; i < faces.size(); ++i) {
      counts_left[i] += other.counts_left[i];
      counts_total[i] += other.counts_total[i];
    }
    on_path += other.on_path;
    samples += other.samples;
  }
};

// Probe angle: through the half-plane map for s -> t paths, through the
// linear identification t = pi (x / a - 1/2) for crossing paths.
inline LeftPassageField make_left_passage_field(const PlanarLattice& lattice, PathSelector selector) {
  LeftPassageField field;
  field.selector = selector;
  const conformal::RectangleMap map(lattice.width(), lattice.height());
  int lo = std::numeric_limits<int>::max(), hi = std::numeric_limits<int>::min();
  for (std::size_t f = 0; f < lattice.interior_face_count(); ++f) {
    const Face& face = lattice.face(static_cast<int>(f));
    field.faces.push_back(static_cast<int>(f));
    field.points.push_back(face.centroid);
    field.grid_x.push_back(face.grid_centroid.x);
    double t;
    if (selector == PathSelector::StoT) {
      t = conformal::halfplane_angle(conformal::rect_to_halfplane({face.centroid.x, face.centroid.y}, map));
    } else {
      t = std::numbers::pi * (face.centroid.x / lattice.width() - 0.5);
    }
    field.angles.push_back(t);
    lo = std::min(lo, face.grid_centroid.y);
    hi = std::max(hi, face.grid_centroid.y);
  }
  field.min_row = lo;
  field.max_row = hi;
  field.rows.assign(static_cast<std::size_t>(hi - lo + 1), {});
  for (std::size_t i = 0; i < field.faces.size(); ++i)
    field.rows[lattice.face(field.faces[i]).grid_centroid.y - lo].push_back(static_cast<int>(i));
  for (auto& row : field.rows)
    std::sort(row.begin(), row.end(), [&](int p, int q) { return field.grid_x[p] < field.grid_x[q]; });
  field.counts_left.assign(field.faces.size(), 0);
  field.counts_total.assign(field.faces.size(), 0);
  return field;
}

// Tallies which probes lie left of a bottom-to-top path. The path is closed
// from its top end around the right-hand side of the rectangle back to its
// bottom end; a probe inside that closed curve is right of the path. The
// parity is read off by casting a ray to the right along the probe's grid
// row: the closing segment always contributes one crossing, so an odd number
// of path crossings means the probe is left.
inline void accumulate_left_passage(const LatticePath& path, const PlanarLattice& lattice, LeftPassageField& field) {
  if (path.vertices.size() < 2) throw std::invalid_argument("accumulate_left_passage: path is too short");
  const int y0 = lattice.grid(path.vertices.front()).y;
  const int y1 = lattice.grid(path.vertices.back()).y;
  bool upward;
  if (y0 < field.min_row && y1 > field.max_row)
    upward = true;
  else if (y1 < field.min_row && y0 > field.max_row)
    upward = false;
  else
    throw std::invalid_argument("accumulate_left_passage: path does not join bottom and top");

  std::vector<std::vector<double>> crossings(field.rows.size());
  for (std::size_t k = 0; k + 1 < path.vertices.size(); ++k) {
    const GridPoint p = lattice.grid(path.vertices[k]);
    const GridPoint q = lattice.grid(path.vertices[k + 1]);
    const int ylo = std::min(p.y, q.y), yhi = std::max(p.y, q.y);
    for (int y = std::max(ylo + 1, field.min_row); y < yhi && y <= field.max_row; ++y) {
      const double x = p.x + static_cast<double>(y - p.y) * (q.x - p.x) / (q.y - p.y);
      crossings[y - field.min_row].push_back(x);
    }
  }
  for (std::size_t r = 0; r < field.rows.size(); ++r) {
    auto& xs = crossings[r];
    std::sort(xs.begin(), xs.end());
    const auto& row = field.rows[r];
    std::size_t k = 0;
    for (int probe : row) {
      const double px = field.grid_x[probe];
      while (k < xs.size() && xs[k] <= px) {
        if (xs[k] == px) ++field.on_path;
        ++k;
      }
      const std::size_t right = xs.size() - k;  // crossings strictly right of the probe
      const bool left = (right % 2 == 1) == upward;
      ++field.counts_total[probe];
      if (left) ++field.counts_left[probe];
    }
  }
  ++field.samples;
}

// ---------------------------------------------------------------------------
// kappa fit

enum class FitVerdict { Fit, NoFit };

inline std::string to_string(FitVerdict v) { return v == FitVerdict::Fit ? "fit" : "no_fit"; }

struct FitOptions {
  double max_abs_angle = 1.3;     // probes with |t| >= this are excluded
  double nofit_factor = 5.0;      // NoFit when residual > factor * noise floor
  std::uint64_t min_counts = 100;
};

struct KappaFit {
  double kappa_hat = 0.0;
  double std_error = 0.0;
  double residual = 0.0;     // mean squared residual at the optimum
  double noise_floor = 0.0;  // mean binomial variance p(1-p)/N of the probes
  std::size_t probes = 0;
  FitVerdict verdict = FitVerdict::NoFit;
};

class InsufficientStatistics : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unweighted least squares of schramm_lpp over the probe angles. The observed
// quantity is the frequency with which the path passes left of a probe, i.e.
// 1 - (fraction of samples with the probe on the path's left).
inline KappaFit fit_kappa(const LeftPassageField& field, const FitOptions& opt = {}) {
  std::vector<double> t, p;
  double floor = 0.0;
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (!(std::abs(field.angles[i]) < opt.max_abs_angle)) continue;
    if (field.counts_total[i] < opt.min_counts)
      throw InsufficientStatistics("fit_kappa: probe with fewer than " + std::to_string(opt.min_counts) + " samples");
    const double n = static_cast<double>(field.counts_total[i]);
    const double pass_left = 1.0 - static_cast<double>(field.counts_left[i]) / n;
    t.push_back(field.angles[i]);
    p.push_back(pass_left);
    floor += pass_left * (1.0 - pass_left) / n;
  }
  if (t.size() < 3) throw InsufficientStatistics("fit_kappa: fewer than 3 probes inside the fit window");
  const auto n = static_cast<double>(t.size());
  floor /= n;

  auto msr = [&](double kappa) {
    double s = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double r = p[i] - schramm_lpp(t[i], kappa);
      s += r * r;
    }
    return s / n;
  };
  constexpr double lo = 0.05, hi = 7.95, step = 0.05;
  double best_k = lo, best = msr(lo);
  for (double k = lo + step; k <= hi + 1e-9; k += step) {
    const double v = msr(k);
    if (v < best) {
      best = v;
      best_k = k;
    }
  }
  // golden-section refinement around the best grid point
  double a = std::max(lo, best_k - step), b = std::min(hi, best_k + step);
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = msr(c), fd = msr(d);
  while (b - a > 1e-7) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = msr(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = msr(d);
    }
  }
  KappaFit fit;
  fit.kappa_hat = 0.5 * (a + b);
  fit.residual = msr(fit.kappa_hat);
  if (best < fit.residual) {
    fit.kappa_hat = best_k;
    fit.residual = best;
  }
  fit.noise_floor = floor;
  fit.probes = t.size();

  const double h = 1e-4;
  double jj = 0.0;
  for (double ti : t) {
    const double dk = (schramm_lpp(ti, std::min(fit.kappa_hat + h, 7.9999)) -
                       schramm_lpp(ti, std::max(fit.kappa_hat - h, 1e-4))) /
                      (std::min(fit.kappa_hat + h, 7.9999) - std::max(fit.kappa_hat - h, 1e-4));
    jj += dk * dk;
  }
  const double sigma2 = fit.residual * n / (n - 1.0);
  fit.std_error = jj > 0.0 ? std::sqrt(sigma2 / jj) : std::numeric_limits<double>::infinity();
  fit.verdict = fit.residual > opt.nofit_factor * floor ? FitVerdict::NoFit : FitVerdict::Fit;
  return fit;
}

// ---------------------------------------------------------------------------
// Scaling fits

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
};

// Ordinary least squares y = intercept + slope * x.
inline LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw std::invalid_argument("least_squares: need at least two points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("least_squares: degenerate abscissae");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (n > 2) {
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = y[i] - fit.intercept - fit.slope * x[i];
      rss += r * r;
    }
    fit.slope_stderr = std::sqrt(rss / (n - 2.0) / sxx);
  }
  return fit;
}

struct SizeLength {
  double size = 0.0;
  double mean_length = 0.0;
};

struct ScalingFit {
  std::vector<double> sizes;
  std::vector<double> values;
  double slope = 0.0;
  double std_error = 0.0;
};

// d = slope of log(mean length) against log(size).
inline ScalingFit fractal_dimension(std::span<const SizeLength> samples) {
  std::vector<SizeLength> s(samples.begin(), samples.end());
  std::sort(s.begin(), s.end(), [](const auto& a, const auto& b) { return a.size < b.size; });
  s.erase(std::unique(s.begin(), s.end(), [](const auto& a, const auto& b) { return a.size == b.size; }), s.end());
  if (s.size() < 3) throw std::invalid_argument("fractal_dimension: degenerate, fewer than 3 distinct sizes");
  const double ratio = s[1].size / s[0].size;
  for (std::size_t i = 1; i < s.size(); ++i)
    if (std::abs(s[i].size / s[i - 1].size - ratio) > 1e-6 * ratio)
      throw std::invalid_argument("fractal_dimension: sizes are not in geometric progression");
  ScalingFit fit;
  std::vector<double> lx, ly;
  for (const auto& e : s) {
    if (!(e.size > 0.0 && e.mean_length > 0.0)) throw std::invalid_argument("fractal_dimension: non-positive entry");
    fit.sizes.push_back(e.size);
    fit.values.push_back(e.mean_length);
    lx.push_back(std::log(e.size));
    ly.push_back(std::log(e.mean_length));
  }
  const LinearFit lf = least_squares(lx, ly);
  fit.slope = lf.slope;
  fit.std_error = lf.slope_stderr;
  return fit;
}

// Inverse of d = 1 + kappa / 8.
inline double kappa_from_dimension(double d) {
  if (!(d >= 1.0 && d <= 2.0)) throw std::domain_error("kappa_from_dimension: d must lie in [1,2]");
  return 8.0 * (d - 1.0);
}

// (x_end - x_start) / a for a bottom-to-top crossing path.
inline double horizontal_displacement(const LatticePath& path, const PlanarLattice& lattice) {
  if (path.vertices.size() < 2) throw std::invalid_argument("horizontal_displacement: empty path");
  const auto& bottom = lattice.bottom_vertices();
  const auto& top = lattice.top_vertices();
  const int s = path.vertices.front(), e = path.vertices.back();
  const bool starts_bottom = std::binary_search(bottom.begin(), bottom.end(), s);
  const bool ends_top = std::binary_search(top.begin(), top.end(), e);
  if (!starts_bottom || !ends_top) throw std::invalid_argument("horizontal_displacement: not a bottom-to-top crossing");
  return (lattice.position(e).x - lattice.position(s).x) / lattice.width();
}

struct DisplacementRecord {
  double aspect = 0.0;  // b / a
  double dx2 = 0.0;
};

struct DisplacementFit {
  std::vector<double> aspects;  // distinct ratios, ascending
  std::vector<double> mean_dx2;
  double exponent = 0.0;
  double exponent_stderr = 0.0;
  double plateau = 0.0;
  double plateau_stderr = 0.0;
};

inline constexpr double kSmallAspect = 0.25;
inline constexpr double kLargeAspect = 4.0;

// Exponent l of <dx^2> ~ (b/a)^l from aspect ratios <= 1/4, and the plateau
// <dx^2> pooled over all records with b/a >= 4.
inline DisplacementFit displacement_scaling(std::span<const DisplacementRecord> records) {
  std::map<double, std::pair<double, std::size_t>> by_aspect;
  double plateau_sum = 0.0, plateau_sq = 0.0;
  std::size_t plateau_n = 0;
  for (const auto& r : records) {
    auto& [sum, count] = by_aspect[r.aspect];
    sum += r.dx2;
    ++count;
    if (r.aspect >= kLargeAspect) {
      plateau_sum += r.dx2;
      plateau_sq += r.dx2 * r.dx2;
      ++plateau_n;
    }
  }
  DisplacementFit fit;
  std::vector<double> lx, ly;
  for (const auto& [aspect, acc] : by_aspect) {
    fit.aspects.push_back(aspect);
    fit.mean_dx2.push_back(acc.first / acc.second);
    if (aspect <= kSmallAspect && acc.first > 0.0) {
      lx.push_back(std::log(aspect));
      ly.push_back(std::log(acc.first / acc.second));
    }
  }
  if (lx.size() < 3 || std::exp(lx.back() - lx.front()) < 4.0)
    throw std::invalid_argument(
        "displacement_scaling: insufficient aspect-ratio coverage, need >= 3 ratios <= 1/4 spanning a factor >= 4");
  if (plateau_n < 2) throw std::invalid_argument("displacement_scaling: insufficient aspect-ratio coverage, no b/a >= 4");
  const LinearFit lf = least_squares(lx, ly);
  fit.exponent = lf.slope;
  fit.exponent_stderr = lf.slope_stderr;
  const double m = plateau_sum / plateau_n;
  fit.plateau = m;
  fit.plateau_stderr = std::sqrt(std::max(0.0, plateau_sq / plateau_n - m * m) / (plateau_n - 1.0));
  return fit;
}

// ---------------------------------------------------------------------------
// Triple point

// The median of three tree vertices: the vertex shared by all three pairwise
// tree paths, i.e. the deepest of the three pairwise lowest common ancestors.
inline int triple_point(const SpanningTree& tree, int c1, int c2, int c3) {
  const int a = tree_lca(tree, c1, c2);
  const int b = tree_lca(tree, c2, c3);
  const int c = tree_lca(tree, c1, c3);
  int m = a;
  if (tree.depth[b] > tree.depth[m]) m = b;
  if (tree.depth[c] > tree.depth[m]) m = c;
  return m;
}

// Polar histogram on the unit disk: equal-area rings and sectors whose count
// is a multiple of 3 with a boundary at angle 0, so a rotation by 2pi/3
// permutes bins.
struct TriplePointHistogram {
  int rings = 8;
  int sectors = 24;
  std::vector<std::uint64_t> counts;

  TriplePointHistogram(int rings_ = 8, int sectors_ = 24) : rings(rings_), sectors(sectors_) {
    if (rings < 1 || sectors < 3 || sectors % 3 != 0)
      throw std::invalid_argument("TriplePointHistogram: sectors must be a positive multiple of 3");
    counts.assign(static_cast<std::size_t>(rings) * sectors, 0);
  }

  int bin(std::complex<double> z) const {
    const double r2 = std::min(std::norm(z), 1.0);
    const int ring = std::min(rings - 1, static_cast<int>(r2 * rings));
    double ang = std::arg(z);
    if (ang < 0.0) ang += 2.0 * std::numbers::pi;
    const int sector = std::min(sectors - 1, static_cast<int>(ang / (2.0 * std::numbers::pi) * sectors));
    return ring * sectors + sector;
  }
  int rotate(int bin_index, int steps = 1) const {
    const int ring = bin_index / sectors, sector = bin_index % sectors;
    return ring * sectors + (sector + steps * (sectors / 3)) % sectors;
  }
  void add(std::complex<double> z) { ++counts[bin(z)]; }
  std::uint64_t total() const {
    std::uint64_t t = 0;
    for (auto c : counts) t += c;
    return t;
  }
  void merge(const TriplePointHistogram& other) {
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
  }
};

struct RotationTest {
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t resamples = 0;
};

// Total-variation distance between a count vector and its average over the
// 3-fold rotation group.
inline double rotation_distance(const TriplePointHistogram& h, std::span<const std::uint64_t> counts) {
  double total = 0.0;
  for (auto c : counts) total += static_cast<double>(c);
  if (total == 0.0) return 0.0;
  double tv = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const int b = static_cast<int>(i);
    const double avg = (static_cast<double>(counts[b]) + counts[h.rotate(b, 1)] + counts[h.rotate(b, 2)]) / 3.0;
    tv += std::abs(static_cast<double>(counts[b]) - avg);
  }
  return 0.5 * tv / total;
}

// Statistic plus a randomization p-value: under 3-fold symmetry each point is
// equally likely to sit at any of its three rotated images, so the null is
// sampled by redistributing each orbit's total multinomially.
inline RotationTest rotation_symmetry_statistic(const TriplePointHistogram& hist, std::size_t resamples = 999,
                                                std::uint64_t seed = 0x5eed) {
  if (hist.total() < 1000) throw InsufficientStatistics("rotation_symmetry_statistic: fewer than 1000 entries");
  RotationTest out;
  out.statistic = rotation_distance(hist, hist.counts);
  out.resamples = resamples;
  const int third = hist.sectors / 3;
  std::vector<int> orbit_base;
  for (int ring = 0; ring < hist.rings; ++ring)
    for (int s = 0; s < third; ++s) orbit_base.push_back(ring * hist.sectors + s);

  SplitMix64 rng(seed);
  std::vector<std::uint64_t> sim(hist.counts.size());
  std::size_t exceed = 0;
  for (std::size_t r = 0; r < resamples; ++r) {
    for (int b0 : orbit_base) {
      const int b1 = hist.rotate(b0, 1), b2 = hist.rotate(b0, 2);
      const std::uint64_t n = hist.counts[b0] + hist.counts[b1] + hist.counts[b2];
      std::binomial_distribution<std::uint64_t> first(n, 1.0 / 3.0);
      const std::uint64_t x0 = n ? first(rng) : 0;
      std::binomial_distribution<std::uint64_t> second(n - x0, 0.5);
      const std::uint64_t x1 = n - x0 ? second(rng) : 0;
      sim[b0] = x0;
      sim[b1] = x1;
      sim[b2] = n - x0 - x1;
    }
    if (rotation_distance(hist, sim) >= out.statistic - 1e-15) ++exceed;
  }
  out.p_value = (1.0 + exceed) / (1.0 + resamples);
  return out;
}

}  // namespace slemst
