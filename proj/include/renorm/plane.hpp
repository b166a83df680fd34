#pragma once

// Numerical dynamics of f(z) = z^2 + c in double precision: Green function,
// external rays, periodic points, superstable real parameters, derivative
// growth and telescope checks.

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "renorm/circle.hpp"
#include "renorm/combinatorics.hpp"

namespace renorm {

using Complex = std::complex<double>;

struct Params {
  Complex c{0.0, 0.0};
  double epsilon = 1e-12;
  int max_iter = 4096;
  double escape_radius = 0.0;  // 0 selects 2 + |c|

  explicit Params(Complex c_value = {}, double eps = 1e-12, int iterations = 4096);
  // Throws std::invalid_argument unless caps are positive and the escape
  // radius is at least 2 + |c|.
  void check() const;
};

Complex iterate(const Params& params, Complex z, std::size_t n);

// G(z) = lim 2^-n ln|f^n(z)|; 0 when z does not escape within max_iter.
double green(const Params& params, Complex z);

struct Landing {
  Complex point;
  double residual = 0.0;
  std::string method;  // "tail" or "periodic"
};

struct RayPath {
  Angle angle;
  std::vector<Complex> points;
  std::vector<double> levels;  // strictly decreasing Green levels
  std::optional<Landing> landing;
  bool aborted = false;
  std::string status;
};

struct RayOptions {
  int substeps = 8;           // points per halving of the level
  double start_level = 24.0;  // 2^n * level stays in [start_level, 2 * start_level)
  int newton_iter = 64;
  double tail_tolerance = 1e-9;
};

// Descends from level start_level down to level_min with Newton continuation
// on f^n(z) = exp(2^n level + 2 pi i 2^n t). Newton failure returns the
// partial path flagged as aborted.
RayPath trace_ray(const Params& params, const Angle& t, double level_min, const RayOptions& options = {});

struct PeriodicPoint {
  Complex point;
  Complex multiplier;
  double residual = 0.0;
  bool converged = false;
};

// All 2^m roots of f^m(z) = z (Aberth iteration), sorted by real then
// imaginary part. Requires 1 <= m <= 12.
std::vector<PeriodicPoint> periodic_points(const Params& params, std::size_t m);

// Newton polish of a root of f^m(z) = z from z0.
std::optional<PeriodicPoint> refine_periodic(const Params& params, Complex z0, std::size_t m);

struct BetaResult {
  Complex beta;
  bool matched = false;
  double residual = 0.0;
  Complex landing_lo;
  Complex landing_hi;
  double distance_lo = 0.0;
  double distance_hi = 0.0;
};
BetaResult beta_point(const Params& params, const RenormCombinatorics& comb, std::size_t n,
                      double tolerance = 1e-4, double level_min = 1e-10);

// Superstable real parameter s_depth with f^{2^depth}(0) = 0; s_1 = -1.
double feigenbaum_parameter(std::size_t depth);

struct ExpansionSample {
  Complex point;
  bool escaped = false;
  double euclidean = 0.0;  // |D(f^m)(x)|
  double spherical = 0.0;  // euclidean * (1 + |x|^2) / (1 + |f^m(x)|^2)
};
struct ExpansionSummary {
  std::size_t used = 0;
  std::size_t excluded = 0;
  double min = 0.0;
  double max = 0.0;
  double geometric_mean = 0.0;
};
struct ExpansionReport {
  std::size_t m = 0;
  std::vector<ExpansionSample> samples;
  ExpansionSummary euclidean;
  ExpansionSummary spherical;
};
ExpansionReport expansion_report(const Params& params, const std::vector<Complex>& sample, std::size_t m);

struct TelescopeStage {
  std::size_t l = 0;
  std::size_t n = 0;
  std::optional<double> ratio;   // l / n_l, absent at l = 0
  std::optional<bool> cond_i;    // l / n_l > kappa
  bool branch_ok = true;         // continuation of g_{n_l} succeeded
  bool univalent = true;         // heuristic
  std::optional<double> margin;  // min over the image boundary of r - |p - f^{n_{l-1}}(x)|
  std::optional<bool> cond_ii;   // margin > delta
  bool pass = true;
  std::string failure;
};
struct TelescopeReport {
  double r = 0.0;
  double kappa = 0.0;
  double delta = 0.0;
  std::size_t k = 0;
  std::vector<std::size_t> times;
  std::vector<TelescopeStage> stages;
  std::optional<std::size_t> aborted_at;
  bool pass = false;
  std::string certification = "heuristic";
};
TelescopeReport telescope_check(const Params& params, Complex x, double r, double kappa, double delta,
                                const std::vector<std::size_t>& times, std::size_t boundary_samples = 64);

}  // namespace renorm
