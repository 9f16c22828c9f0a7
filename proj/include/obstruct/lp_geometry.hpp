#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "obstruct/errors.hpp"
#include "obstruct/rational.hpp"

namespace obstruct {

using Vec = std::vector<double>;

/// (sum |x_i|^p)^{1/p}, scaled by max |x_i| so large or tiny inputs do not
/// overflow. p > 1.
double lp_norm(std::span<const double> x, double p);
/// sum |x_i|^p (unscaled).
double lp_norm_pow(std::span<const double> x, double p);

struct ClarksonResult {
  double lhs = 0.0;  // ||x + y||^p + ||x - y||^p
  double rhs = 0.0;  // 2 (||x||^p + ||y||^p)
  bool direction_holds = false;  // lhs >= rhs for p > 2, <= for p < 2
  bool equality = false;         // |lhs - rhs| <= 1e-12 (1 + |rhs|)
  bool disjoint_supports = false;
};

/// Sums are formed coordinate by coordinate, so vectors with disjoint
/// supports give lhs == rhs exactly. p = 2 is rejected.
ClarksonResult clarkson_check(std::span<const double> x, std::span<const double> y, double p);

struct TriangleCheck {
  double lhs = 0.0;  // ||u + w||
  double rhs = 0.0;  // ||u|| + ||w||
  bool equality = false;  // within `tol` relative
};
TriangleCheck triangle_check(std::span<const double> u, std::span<const double> w, double p,
                             double tol = 1e-12);

/// Copy {x + r t v : t in P} of a collinear set.
struct LineCopy {
  Vec x;
  Vec v;
  double r = 1.0;
  std::vector<double> params;
  bool degenerate = false;  // |P| = 1: v fixed to e_1 by convention
  double max_error = 0.0;   // max_t ||y_t - (x + r t v)||_p
};

/// Raised by recover_line when some pair violates ||y_s - y_t|| = r |s - t|.
class CopyPreconditionError : public InputError {
 public:
  CopyPreconditionError(double s, double t, double residual, const std::string& what)
      : InputError(what), s_(s), t_(t), residual_(residual) {}
  double s() const noexcept { return s_; }
  double t() const noexcept { return t_; }
  double residual() const noexcept { return residual_; }

 private:
  double s_, t_, residual_;
};

/// Anchors a = min P, b = max P: v = (y_b - y_a) / (r (b - a)), x = y_a - r a v.
/// Every pair must satisfy | ||y_s - y_t||_p - r|s - t| | <= tol (1 + r|s - t|).
LineCopy recover_line(std::span<const double> params, const std::vector<Vec>& points, double p,
                      double r, double tol = 1e-9);

/// Points on the first axis k e_1 (k = -1..n-2d) and +-e_2..+-e_d, with
/// E = {x : (x_1 + ... + x_d) mod 1 in [0, 1 - eps)}, eps = 1/(n - 2d + 2)
/// and scales r_j = j + eps.
struct AxisConfiguration {
  int dim = 1;
  int n = 3;
  std::vector<Vec> points;
  std::vector<std::string> labels;
  Rational epsilon;

  bool member(std::span<const double> x) const;
  double scale(std::int64_t j) const { return static_cast<double>(j) + epsilon.to_double(); }
  /// Number of collinear points n - 2d + 2.
  int axis_count() const { return n - 2 * dim + 2; }
};

AxisConfiguration axis_configuration(int dim, int n);

/// Fraction of [-R/2, R/2]^d inside the configuration's set (Monte Carlo).
double configuration_density(const AxisConfiguration& config, double side, std::uint64_t samples,
                             std::uint64_t seed);

/// True iff no half-open arc of length 1 - 1/count contains all of
/// {k / count : 0 <= k < count}; exact integer arithmetic.
bool equally_spaced_obstruction(std::int64_t count);

enum class DeductionStatus { confirmed, hypothesis_failed, insufficient };

struct SignAxisResult {
  DeductionStatus status = DeductionStatus::insufficient;
  std::string failed_hypothesis;  // antipodal | clarkson_u | clarkson_pair | disjoint_support
  std::vector<std::size_t> witness;  // indices into v_plus (and u as index v_plus.size())
  double residual = 0.0;
  double max_residual = 0.0;  // over all hypotheses checked
  int axis = -1;  // 0-based; u = sign * e_axis
  int sign = 0;
};

/// u and the images v_i^+ (and optionally v_i^-) of the unit vectors.
/// Hypotheses: ||v_i^+ - v_i^-|| = 2, ||v^+ -+ u||^p sum = 4 and the same for
/// every pair v_i^+, v_k^+. When they hold, checks that the supports are
/// pairwise disjoint and, given d vectors in R^d, reads off u = +-e_l.
SignAxisResult sign_axis_deduction(std::span<const double> u, const std::vector<Vec>& v_plus,
                                   const std::vector<Vec>& v_minus, double p, double tol = 1e-9);

struct CopySamplerReport {
  std::uint64_t placements = 0;
  std::uint64_t violations = 0;
  Rational epsilon;
  std::vector<std::int64_t> j_list;
  struct Violation {
    std::vector<std::int64_t> x_units;  // x in units of 2^-32
    int axis = 0;
    int sign = 1;
    std::int64_t j = 1;
  };
  std::optional<Violation> first_violation;
  bool pass = false;
};

/// Samples axis-aligned copies x + sigma r_j k e_l (k = -1..n-2d) with x on
/// the 2^-32 grid and checks each has a point outside E, exactly.
/// `epsilon_override` replaces eps in both r_j and E.
CopySamplerReport copy_sampler_check(int dim, int n, const std::vector<std::int64_t>& j_list,
                                     std::uint64_t samples, std::uint64_t seed,
                                     std::optional<Rational> epsilon_override = std::nullopt);

}  // namespace obstruct
