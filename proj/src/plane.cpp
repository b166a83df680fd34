#include "renorm/plane.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace renorm {

namespace {

constexpr double kBailout = 1e100;
constexpr double kTwoPi = 2 * std::numbers::pi;

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

Params::Params(Complex c_value, double eps, int iterations) : c(c_value), epsilon(eps), max_iter(iterations) {
  escape_radius = 2.0 + std::abs(c);
}

void Params::check() const {
  if (max_iter <= 0) throw std::invalid_argument("iteration cap must be positive");
  if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
  if (!(escape_radius >= 2.0 + std::abs(c))) throw std::invalid_argument("escape radius must be at least 2 + |c|");
}

Complex iterate(const Params& params, Complex z, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) z = z * z + params.c;
  return z;
}

double green(const Params& params, Complex z) {
  params.check();
  double scale = 1.0;
  for (int n = 0; n < params.max_iter; ++n) {
    double r = std::abs(z);
    // Past the bailout |f(z)| = |z|^2 (1 + O(|c|/|z|^2)); the tail is below double precision.
    if (r > kBailout) return scale * std::log(r);
    z = z * z + params.c;
    scale *= 0.5;
  }
  return 0.0;
}

// --- rays ---

namespace {

// Newton for f^n(z) = w; returns false on divergence.
bool newton_level(const Params& params, Complex& z, std::size_t n, Complex w, int max_iter) {
  const double target = std::abs(w);
  for (int it = 0; it < max_iter; ++it) {
    Complex y = z, d = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
      d *= 2.0 * y;
      y = y * y + params.c;
    }
    Complex f = y - w;
    if (!finite(f) || !finite(d) || d == Complex(0.0)) return false;
    if (std::abs(f) <= 1e-12 * target) return true;
    Complex step = f / d;
    z -= step;
    if (!finite(z)) return false;
    // Stagnation: the residual sits at the rounding floor of f^n.
    if (std::abs(step) <= 1e-13 * (1.0 + std::abs(z))) return true;
  }
  return false;
}

}  // namespace

std::optional<PeriodicPoint> refine_periodic(const Params& params, Complex z0, std::size_t m) {
  if (m == 0) throw std::invalid_argument("period must be positive");
  Complex z = z0;
  for (int it = 0; it < 100; ++it) {
    Complex y = z, d = 1.0;
    for (std::size_t k = 0; k < m; ++k) {
      d *= 2.0 * y;
      y = y * y + params.c;
      if (std::abs(y) > kBailout) return std::nullopt;
    }
    Complex step = (y - z) / (d - 1.0);
    if (!finite(step)) return std::nullopt;
    z -= step;
    if (std::abs(step) <= 1e-15 * (1.0 + std::abs(z))) break;
  }
  PeriodicPoint p;
  p.point = z;
  Complex y = z, d = 1.0;
  for (std::size_t k = 0; k < m; ++k) {
    d *= 2.0 * y;
    y = y * y + params.c;
  }
  p.multiplier = d;
  p.residual = std::abs(y - z);
  p.converged = p.residual <= 1e-8 * (1.0 + std::abs(d));
  return p;
}

namespace {

// Newton continuation down the ray; fills points, levels, aborted, status.
void descend(const Params& params, const Angle& t, double level_min, const RayOptions& options, RayPath& path) {
  const double ratio = std::exp2(-1.0 / options.substeps);
  double level = options.start_level;
  std::size_t n = 0;
  double phase = t.to_double();
  Complex z = std::polar(std::exp(level), kTwoPi * phase);
  path.points.push_back(z);
  path.levels.push_back(level);
  double scaled = level;
  while (level * ratio >= level_min) {
    level *= ratio;
    scaled *= ratio;
    if (scaled < options.start_level) {
      scaled *= 2;
      ++n;
      phase = sigma_pow(t, n).to_double();
    }
    Complex w = std::polar(std::exp(scaled), kTwoPi * phase);
    Complex next = z;
    if (!newton_level(params, next, n, w, options.newton_iter)) {
      path.aborted = true;
      path.status = "newton divergence at level " + std::to_string(level);
      return;
    }
    z = next;
    path.points.push_back(z);
    path.levels.push_back(level);
  }
  path.status = "complete";
}

Complex nearer_root(const Params& params, Complex y, Complex hint) {
  Complex root = std::sqrt(y - params.c);
  return std::abs(root - hint) <= std::abs(-root - hint) ? root : -root;
}

constexpr std::size_t kMaxCyclePeriod = 4096;
constexpr double kReferenceLevel = 1e-2;

// Landing cycle of the periodic angle u: every cycle ray is traced to a
// reference level, then inverse branches around the cycle (each picked by
// proximity to the current estimate) are iterated to their attracting cycle.
std::optional<std::pair<Complex, double>> landing_cycle(const Params& params, const Angle& u, std::size_t q,
                                                        double level_min, const RayOptions& options,
                                                        Complex anchor) {
  std::vector<Complex> y(q);
  const double ref_level = std::max(level_min, kReferenceLevel);
  for (std::size_t k = 0; k < q; ++k) {
    RayPath ref;
    descend(params, sigma_pow(u, k), ref_level, options, ref);
    if (ref.points.empty()) return std::nullopt;
    y[k] = ref.points.back();
  }
  y[0] = anchor;
  double change = 0.0;
  for (int sweep = 0; sweep < 2000; ++sweep) {
    change = 0.0;
    for (std::size_t k = q; k-- > 0;) {
      Complex next = nearer_root(params, y[(k + 1) % q], y[k]);
      change = std::max(change, std::abs(next - y[k]));
      y[k] = next;
    }
    if (!finite(y[0])) return std::nullopt;
    if (change <= 1e-14 * (1.0 + std::abs(y[0]))) break;
  }
  if (change > 1e-12) return std::nullopt;
  double residual = 0.0;
  for (std::size_t k = 0; k < q; ++k) {
    Complex image = y[k] * y[k] + params.c;
    residual = std::max(residual, std::abs(image - y[(k + 1) % q]));
  }
  // The anchor, pulled back once around the cycle, must move towards the
  // landing point.
  Complex pulled = anchor;
  for (std::size_t k = q; k-- > 0;) {
    Complex image = pulled;
    pulled = nearer_root(params, image, y[k]);
  }
  if (std::abs(pulled - y[0]) >= std::abs(anchor - y[0]) && std::abs(anchor - y[0]) > 1e-12) return std::nullopt;
  return std::make_pair(y[0], residual);
}

}  // namespace

RayPath trace_ray(const Params& params, const Angle& t, double level_min, const RayOptions& options) {
  params.check();
  if (!(level_min > 0)) throw std::invalid_argument("level_min must be positive");
  if (options.substeps < 1) throw std::invalid_argument("substeps must be positive");
  RayPath path;
  path.angle = t;
  descend(params, t, level_min, options, path);

  const std::size_t decade = static_cast<std::size_t>(std::lround(options.substeps * std::log2(10.0)));
  if (path.points.size() <= decade) return path;
  const Complex last = path.points.back();
  const double displacement = std::abs(last - path.points[path.points.size() - 1 - decade]);
  if (displacement < options.tail_tolerance) {
    path.landing = Landing{last, displacement, "tail"};
    return path;
  }

  OrbitInfo info;
  try {
    info = orbit_info(t, kMaxCyclePeriod);
  } catch (const std::exception&) {
    return path;
  }
  std::vector<Complex> orbit{last};
  for (std::size_t k = 0; k < info.preperiod; ++k) orbit.push_back(orbit.back() * orbit.back() + params.c);
  if (!finite(orbit.back()) || std::abs(orbit.back()) > params.escape_radius) return path;
  auto cycle = landing_cycle(params, sigma_pow(t, info.preperiod), info.period, level_min, options, orbit.back());
  if (!cycle) return path;
  Complex y = cycle->first;
  for (std::size_t k = info.preperiod; k-- > 0;) y = nearer_root(params, y, orbit[k]);
  path.landing = Landing{y, cycle->second, "periodic"};
  return path;
}

// --- periodic points ---

std::vector<PeriodicPoint> periodic_points(const Params& params, std::size_t m) {
  params.check();
  if (m < 1 || m > 12) throw std::invalid_argument("periodic_points: period must lie in 1..12");
  const std::size_t count = std::size_t{1} << m;
  const double bound = 0.5 + std::sqrt(0.25 + std::abs(params.c));

  auto newton_ratio = [&](Complex z) {
    Complex y = z, d = 1.0;
    for (std::size_t k = 0; k < m; ++k) {
      // Past the bailout z_{j+1}/d_{j+1} = (z_j/d_j)/2 to double precision.
      if (std::abs(y) > 1e100) return y / (d * std::ldexp(1.0, static_cast<int>(m - k)));
      d *= 2.0 * y;
      y = y * y + params.c;
    }
    return (y - z) / (d - 1.0);
  };

  std::vector<Complex> z(count);
  for (std::size_t i = 0; i < count; ++i) {
    z[i] = std::polar(bound, kTwoPi * (static_cast<double>(i) + 0.25) / static_cast<double>(count));
  }
  std::vector<bool> done(count, false);
  for (int sweep = 0; sweep < 800; ++sweep) {
    bool all = true;
    for (std::size_t i = 0; i < count; ++i) {
      if (done[i]) continue;
      Complex ratio = newton_ratio(z[i]);
      double sr = 0.0, si = 0.0;
      for (std::size_t j = 0; j < count; ++j) {
        if (j == i) continue;
        const double dr = z[i].real() - z[j].real(), di = z[i].imag() - z[j].imag();
        const double inv = 1.0 / (dr * dr + di * di);
        sr += dr * inv;
        si -= di * inv;
      }
      const Complex sum(sr, si);
      Complex step = ratio / (1.0 - ratio * sum);
      if (!finite(step)) step = ratio;
      z[i] -= step;
      if (std::abs(step) <= 1e-14 * (1.0 + std::abs(z[i]))) {
        done[i] = true;
      } else {
        all = false;
      }
    }
    if (all) break;
  }

  std::vector<PeriodicPoint> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    PeriodicPoint p;
    p.point = z[i];
    Complex y = z[i], d = 1.0;
    for (std::size_t k = 0; k < m; ++k) {
      d *= 2.0 * y;
      y = y * y + params.c;
    }
    p.multiplier = d;
    p.residual = std::abs(y - z[i]);
    p.converged = done[i] || p.residual <= 1e-9 * std::max(1.0, std::abs(d));
    out.push_back(p);
  }
  std::sort(out.begin(), out.end(), [](const PeriodicPoint& a, const PeriodicPoint& b) {
    if (a.point.real() != b.point.real()) return a.point.real() < b.point.real();
    return a.point.imag() < b.point.imag();
  });
  return out;
}

BetaResult beta_point(const Params& params, const RenormCombinatorics& comb, std::size_t n, double tolerance,
                      double level_min) {
  const RayPair& pair = comb.level(n);
  auto land = [&](const Angle& t) {
    RayPath path = trace_ray(params, t, level_min);
    if (path.landing) return path.landing->point;
    if (path.points.empty()) throw std::runtime_error("ray " + t.str() + " produced no points");
    return path.points.back();
  };
  BetaResult out;
  out.landing_lo = land(pair.lo);
  out.landing_hi = land(pair.hi);
  auto score = [&](Complex root) { return std::max(std::abs(root - out.landing_lo), std::abs(root - out.landing_hi)); };
  if (pair.period <= 12) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& root : periodic_points(params, pair.period)) {
      if (score(root.point) < best) {
        best = score(root.point);
        out.beta = root.point;
        out.residual = root.residual;
      }
    }
  } else {
    auto root = refine_periodic(params, 0.5 * (out.landing_lo + out.landing_hi), pair.period);
    if (!root) {
      out.beta = out.landing_lo;
      out.residual = std::numeric_limits<double>::infinity();
    } else {
      out.beta = root->point;
      out.residual = root->residual;
    }
  }
  out.distance_lo = std::abs(out.beta - out.landing_lo);
  out.distance_hi = std::abs(out.beta - out.landing_hi);
  out.matched = out.distance_lo < tolerance && out.distance_hi < tolerance;
  return out;
}

// --- Feigenbaum cascade ---

double feigenbaum_parameter(std::size_t depth) {
  if (depth < 1 || depth > 12) throw std::invalid_argument("feigenbaum_parameter: depth must lie in 1..12");
  auto g = [](double c, std::size_t period) {
    double x = 0.0;
    for (std::size_t k = 0; k < period; ++k) x = x * x + c;
    return x;
  };
  double before = 0.0, current = -1.0;
  for (std::size_t n = 2; n <= depth; ++n) {
    const std::size_t period = std::size_t{1} << n;
    const double step = (before - current) / 20.0;
    double a = current - step / 1000.0;
    double ga = g(a, period);
    double b = a;
    bool bracketed = false;
    for (int k = 0; k < 400; ++k) {
      b = a - step;
      double gb = g(b, period);
      if ((ga <= 0) != (gb <= 0)) {
        bracketed = true;
        break;
      }
      a = b;
      ga = gb;
    }
    if (!bracketed) throw std::runtime_error("feigenbaum_parameter: no sign change found at depth " + std::to_string(n));
    for (int k = 0; k < 200; ++k) {
      double mid = 0.5 * (a + b);
      if (mid == a || mid == b) break;
      double gm = g(mid, period);
      if ((gm <= 0) == (ga <= 0)) {
        a = mid;
        ga = gm;
      } else {
        b = mid;
      }
    }
    before = current;
    current = 0.5 * (a + b);
  }
  return current;
}

// --- expansion ---

namespace {

ExpansionSummary summarize(const std::vector<double>& values, std::size_t excluded) {
  ExpansionSummary s;
  s.used = values.size();
  s.excluded = excluded;
  if (values.empty()) return s;
  s.min = *std::min_element(values.begin(), values.end());
  s.max = *std::max_element(values.begin(), values.end());
  double log_sum = 0.0;
  for (double v : values) log_sum += std::log(v);
  s.geometric_mean = std::exp(log_sum / static_cast<double>(values.size()));
  return s;
}

}  // namespace

ExpansionReport expansion_report(const Params& params, const std::vector<Complex>& sample, std::size_t m) {
  params.check();
  ExpansionReport report;
  report.m = m;
  std::vector<double> euclid, spherical;
  std::size_t excluded = 0;
  for (Complex x : sample) {
    ExpansionSample s;
    s.point = x;
    Complex z = x;
    double d = 1.0;
    for (std::size_t k = 0; k < m; ++k) {
      d *= 2.0 * std::abs(z);
      z = z * z + params.c;
      if (std::abs(z) > params.escape_radius || !finite(z)) {
        s.escaped = true;
        break;
      }
    }
    if (s.escaped) {
      ++excluded;
    } else {
      s.euclidean = d;
      s.spherical = d * (1.0 + std::norm(x)) / (1.0 + std::norm(z));
      euclid.push_back(s.euclidean);
      spherical.push_back(s.spherical);
    }
    report.samples.push_back(s);
  }
  report.euclidean = summarize(euclid, excluded);
  report.spherical = summarize(spherical, excluded);
  return report;
}

// --- telescopes ---

namespace {

bool segments_cross(Complex a, Complex b, Complex c, Complex d) {
  auto orient = [](Complex p, Complex q, Complex r) {
    double v = (q.real() - p.real()) * (r.imag() - p.imag()) - (q.imag() - p.imag()) * (r.real() - p.real());
    return (v > 0) - (v < 0);
  };
  int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
  return o1 * o2 < 0 && o3 * o4 < 0;
}

bool simple_polygon(const std::vector<Complex>& poly) {
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (segments_cross(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n])) return false;
    }
  }
  return true;
}

struct Continuation {
  bool ok = true;
  std::string failure;
  std::vector<Complex> at;  // at[j]: position at time j, 0 <= j <= top
};

// Follows the branch of f^{-top} fixing the orbit along the segment from
// orbit[top] to w, one square-root choice per time step.
Continuation pull_back(const Params& params, const std::vector<Complex>& orbit, std::size_t top, Complex w,
                       int substeps) {
  Continuation out;
  out.at.assign(orbit.begin(), orbit.begin() + static_cast<std::ptrdiff_t>(top + 1));
  for (int u = 1; u <= substeps; ++u) {
    Complex v = orbit[top] + (w - orbit[top]) * (static_cast<double>(u) / substeps);
    out.at[top] = v;
    for (std::size_t j = top; j-- > 0;) {
      Complex root = std::sqrt(v - params.c);
      Complex near = root, far = -root;
      if (std::abs(far - out.at[j]) < std::abs(near - out.at[j])) std::swap(near, far);
      if (std::abs(root) < 1e-12 || std::abs(near - out.at[j]) > 0.25 * std::abs(near - far)) {
        out.ok = false;
        out.failure = "branch ambiguous at time " + std::to_string(j) + " near (" + std::to_string(near.real()) +
                      ", " + std::to_string(near.imag()) + ")";
        return out;
      }
      out.at[j] = near;
      v = near;
    }
  }
  return out;
}

}  // namespace

TelescopeReport telescope_check(const Params& params, Complex x, double r, double kappa, double delta,
                                const std::vector<std::size_t>& times, std::size_t boundary_samples) {
  params.check();
  if (times.empty() || times.front() != 0) throw std::invalid_argument("telescope times must start at 0");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (times[i] <= times[i - 1]) throw std::invalid_argument("telescope times must be strictly increasing");
  }
  if (!(r > 0) || !(delta >= 0)) throw std::invalid_argument("telescope needs r > 0 and delta >= 0");
  if (boundary_samples < 8) throw std::invalid_argument("at least 8 boundary samples required");

  TelescopeReport report;
  report.r = r;
  report.kappa = kappa;
  report.delta = delta;
  report.k = times.size() - 1;
  report.times = times;

  std::vector<Complex> orbit{x};
  for (std::size_t j = 0; j < times.back(); ++j) orbit.push_back(orbit.back() * orbit.back() + params.c);

  report.stages.push_back(TelescopeStage{});
  constexpr int kSubsteps = 16;
  for (std::size_t l = 1; l < times.size(); ++l) {
    TelescopeStage stage;
    stage.l = l;
    stage.n = times[l];
    stage.ratio = static_cast<double>(l) / static_cast<double>(times[l]);
    stage.cond_i = *stage.ratio > kappa;

    const std::size_t top = times[l], prev = times[l - 1];
    std::vector<Complex> wide;
    double margin = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < boundary_samples && stage.branch_ok; ++s) {
      const Complex dir = std::polar(1.0, kTwoPi * static_cast<double>(s) / static_cast<double>(boundary_samples));
      Continuation outer = pull_back(params, orbit, top, orbit[top] + 2.0 * r * dir, kSubsteps);
      Continuation inner = pull_back(params, orbit, top, orbit[top] + r * dir, kSubsteps);
      if (!outer.ok || !inner.ok) {
        stage.branch_ok = false;
        stage.failure = outer.ok ? inner.failure : outer.failure;
        break;
      }
      wide.push_back(outer.at[0]);
      margin = std::min(margin, r - std::abs(inner.at[prev] - orbit[prev]));
    }
    if (stage.branch_ok) {
      stage.univalent = simple_polygon(wide);
      stage.margin = margin;
      stage.cond_ii = margin > delta;
      if (!stage.univalent) stage.failure = "image of the 2r boundary is not a simple curve";
    } else {
      stage.univalent = false;
    }
    stage.pass = *stage.cond_i && stage.branch_ok && stage.univalent && stage.cond_ii.value_or(false);
    report.stages.push_back(stage);
    if (!stage.branch_ok) {
      report.aborted_at = l;
      break;
    }
  }
  report.pass = !report.aborted_at &&
                std::all_of(report.stages.begin(), report.stages.end(), [](const TelescopeStage& s) { return s.pass; });
  return report;
}

}  // namespace renorm
