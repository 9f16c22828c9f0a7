#include "obstruct/lp_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "obstruct/parallel.hpp"
#include "obstruct/torus.hpp"

namespace obstruct {

namespace {

constexpr std::uint64_t kSamplerBlock = 4096;

void check_exponent(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw InputError("p must lie in (1, inf)");
}

double abs_pow(double t, double p) {
  const double a = std::fabs(t);
  if (p == 2.0) return a * a;
  return std::pow(a, p);
}

Vec difference(std::span<const double> a, std::span<const double> b) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vec sum(std::span<const double> a, std::span<const double> b) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

void check_same_size(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InputError("vectors have different dimensions");
}

}  // namespace

double lp_norm(std::span<const double> x, double p) {
  check_exponent(p);
  double m = 0.0;
  for (const double c : x) {
    if (!std::isfinite(c)) throw InputError("non-finite coordinate");
    m = std::max(m, std::fabs(c));
  }
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (const double c : x) s += abs_pow(c / m, p);
  return m * (p == 2.0 ? std::sqrt(s) : std::pow(s, 1.0 / p));
}

double lp_norm_pow(std::span<const double> x, double p) {
  check_exponent(p);
  double s = 0.0;
  for (const double c : x) s += abs_pow(c, p);
  return s;
}

ClarksonResult clarkson_check(std::span<const double> x, std::span<const double> y, double p) {
  check_exponent(p);
  if (p == 2.0) throw InputError("Clarkson equality classification excludes p = 2");
  check_same_size(x, y);
  ClarksonResult r;
  r.disjoint_supports = true;
  for (std::size_t i = 0; i < x.size(); ++i) {
    r.lhs += abs_pow(x[i] + y[i], p) + abs_pow(x[i] - y[i], p);
    r.rhs += 2.0 * (abs_pow(x[i], p) + abs_pow(y[i], p));
    if (x[i] != 0.0 && y[i] != 0.0) r.disjoint_supports = false;
  }
  const double tol = 1e-12 * (1.0 + std::fabs(r.rhs));
  r.equality = std::fabs(r.lhs - r.rhs) <= tol;
  r.direction_holds = p > 2.0 ? r.lhs >= r.rhs - tol : r.lhs <= r.rhs + tol;
  return r;
}

TriangleCheck triangle_check(std::span<const double> u, std::span<const double> w, double p,
                             double tol) {
  check_same_size(u, w);
  TriangleCheck t;
  t.lhs = lp_norm(sum(u, w), p);
  t.rhs = lp_norm(u, p) + lp_norm(w, p);
  t.equality = std::fabs(t.lhs - t.rhs) <= tol * std::max(1.0, t.rhs);
  return t;
}

// ---------------------------------------------------------------------------

LineCopy recover_line(std::span<const double> params, const std::vector<Vec>& points, double p,
                      double r, double tol) {
  check_exponent(p);
  if (!(r > 0.0)) throw InputError("scale r must be positive");
  if (params.empty() || params.size() != points.size())
    throw InputError("need one point per parameter");
  const std::size_t d = points.front().size();
  for (const auto& y : points)
    if (y.size() != d || d == 0) throw InputError("points have inconsistent dimensions");

  double worst = -1.0;
  std::size_t ws = 0, wt = 0;
  for (std::size_t s = 0; s < params.size(); ++s)
    for (std::size_t t = s + 1; t < params.size(); ++t) {
      if (params[s] == params[t]) throw InputError("parameters must be distinct");
      const double expected = r * std::fabs(params[s] - params[t]);
      const double got = lp_norm(difference(points[s], points[t]), p);
      const double residual = std::fabs(got - expected) / (1.0 + expected);
      if (residual > worst) {
        worst = residual;
        ws = s;
        wt = t;
      }
    }
  if (worst > tol) {
    std::ostringstream msg;
    msg << "not an l^p copy of a collinear set: pair (" << params[ws] << ", " << params[wt]
        << ") has relative distance residual " << worst;
    throw CopyPreconditionError(params[ws], params[wt], worst, msg.str());
  }

  LineCopy out;
  out.r = r;
  out.params.assign(params.begin(), params.end());
  const auto a_it = std::min_element(params.begin(), params.end());
  const auto b_it = std::max_element(params.begin(), params.end());
  const auto ia = static_cast<std::size_t>(a_it - params.begin());
  const auto ib = static_cast<std::size_t>(b_it - params.begin());
  const double a = *a_it, b = *b_it;
  out.v.assign(d, 0.0);
  if (params.size() == 1) {
    out.v[0] = 1.0;
    out.degenerate = true;
  } else {
    for (std::size_t i = 0; i < d; ++i) out.v[i] = (points[ib][i] - points[ia][i]) / (r * (b - a));
  }
  out.x.resize(d);
  for (std::size_t i = 0; i < d; ++i) out.x[i] = points[ia][i] - r * a * out.v[i];

  Vec model(d);
  for (std::size_t t = 0; t < params.size(); ++t) {
    for (std::size_t i = 0; i < d; ++i) model[i] = out.x[i] + r * params[t] * out.v[i];
    out.max_error = std::max(out.max_error, lp_norm(difference(points[t], model), p));
  }
  return out;
}

// ---------------------------------------------------------------------------

bool AxisConfiguration::member(std::span<const double> x) const {
  if (x.size() != static_cast<std::size_t>(dim)) throw InputError("point has the wrong dimension");
  double s = 0.0;
  for (const double c : x) s += c;
  const double f = s - std::floor(s);
  return f < 1.0 - epsilon.to_double();
}

AxisConfiguration axis_configuration(int dim, int n) {
  if (dim < 1) throw InputError("dimension must be at least 1");
  if (n < 2 * dim + 1) throw InputError("need n >= 2d + 1");
  AxisConfiguration c;
  c.dim = dim;
  c.n = n;
  c.epsilon = Rational::make(1, n - 2 * dim + 2);
  for (int k = -1; k <= n - 2 * dim; ++k) {
    Vec p(static_cast<std::size_t>(dim), 0.0);
    p[0] = k;
    c.points.push_back(std::move(p));
    c.labels.push_back(std::to_string(k) + "e1");
  }
  for (int i = 1; i < dim; ++i)
    for (const int s : {1, -1}) {
      Vec p(static_cast<std::size_t>(dim), 0.0);
      p[static_cast<std::size_t>(i)] = s;
      c.points.push_back(std::move(p));
      c.labels.push_back((s > 0 ? "+e" : "-e") + std::to_string(i + 1));
    }
  return c;
}

double configuration_density(const AxisConfiguration& config, double side, std::uint64_t samples,
                             std::uint64_t seed) {
  if (samples < 1) throw InputError("need at least one sample");
  const std::size_t n_blocks = (samples + kSamplerBlock - 1) / kSamplerBlock;
  std::vector<std::uint64_t> hits(n_blocks, 0);
  parallel_for_blocks(n_blocks, [&](std::size_t block) {
    std::mt19937_64 rng(derive_seed(seed, block));
    std::uniform_real_distribution<double> coord(-side / 2.0, side / 2.0);
    const std::uint64_t count = std::min<std::uint64_t>(kSamplerBlock, samples - block * kSamplerBlock);
    Vec x(static_cast<std::size_t>(config.dim));
    std::uint64_t h = 0;
    for (std::uint64_t s = 0; s < count; ++s) {
      for (auto& c : x) c = coord(rng);
      h += config.member(x) ? 1 : 0;
    }
    hits[block] = h;
  });
  std::uint64_t total = 0;
  for (const auto h : hits) total += h;
  return static_cast<double>(total) / static_cast<double>(samples);
}

bool equally_spaced_obstruction(std::int64_t count) {
  if (count < 2) throw InputError("count must be at least 2");
  // Positions in units of 1/count, sorted; every gap must be exactly one unit.
  std::vector<std::int64_t> pos(static_cast<std::size_t>(count));
  for (std::int64_t k = 0; k < count; ++k) pos[static_cast<std::size_t>(k)] = k;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    const std::int64_t next = i + 1 < pos.size() ? pos[i + 1] : pos[0] + count;
    if (next - pos[i] != 1) return false;
  }
  // Most points a half-open arc of length count - 1 units can hold; an
  // optimal arc may be assumed to start at a point.
  const std::int64_t length = count - 1;
  std::int64_t best = 0;
  std::size_t j = 0;
  auto at = [&](std::size_t idx) {
    return idx < pos.size() ? pos[idx] : pos[idx - pos.size()] + count;
  };
  for (std::size_t i = 0; i < pos.size(); ++i) {
    j = std::max(j, i);
    while (j < i + pos.size() && at(j) - at(i) < length) ++j;
    best = std::max<std::int64_t>(best, static_cast<std::int64_t>(j - i));
  }
  return best < count;
}

// ---------------------------------------------------------------------------

SignAxisResult sign_axis_deduction(std::span<const double> u, const std::vector<Vec>& v_plus,
                                   const std::vector<Vec>& v_minus, double p, double tol) {
  check_exponent(p);
  if (p == 2.0) throw InputError("the deduction needs p != 2");
  const std::size_t d = u.size();
  if (d == 0) throw InputError("empty vector");
  if (!v_minus.empty() && v_minus.size() != v_plus.size())
    throw InputError("v_minus must be empty or match v_plus");
  auto check_unit = [&](std::span<const double> w) {
    if (w.size() != d) throw InputError("vectors have different dimensions");
    if (std::fabs(lp_norm(w, p) - 1.0) > 1e-9) throw InputError("input vector is not l^p-unit");
  };
  check_unit(u);
  for (const auto& w : v_plus) check_unit(w);
  for (const auto& w : v_minus) check_unit(w);

  SignAxisResult out;
  auto fail = [&](const char* name, std::vector<std::size_t> witness, double residual) {
    out.status = DeductionStatus::hypothesis_failed;
    out.failed_hypothesis = name;
    out.witness = std::move(witness);
    out.residual = residual;
    return out;
  };
  auto track = [&](double residual) { out.max_residual = std::max(out.max_residual, residual); };
  auto clarkson_residual = [&](std::span<const double> a, std::span<const double> b) {
    return std::fabs(lp_norm_pow(difference(a, b), p) + lp_norm_pow(sum(a, b), p) - 4.0);
  };

  const std::size_t u_index = v_plus.size();
  for (std::size_t i = 0; i < v_minus.size(); ++i) {
    const double res = std::fabs(lp_norm(difference(v_plus[i], v_minus[i]), p) - 2.0);
    track(res);
    if (res > tol) return fail("antipodal", {i}, res);
  }
  for (std::size_t i = 0; i < v_plus.size(); ++i) {
    const double res = clarkson_residual(v_plus[i], u);
    track(res);
    if (res > 4.0 * tol) return fail("clarkson_u", {i, u_index}, res);
  }
  for (std::size_t i = 0; i < v_plus.size(); ++i)
    for (std::size_t k = i + 1; k < v_plus.size(); ++k) {
      const double res = clarkson_residual(v_plus[i], v_plus[k]);
      track(res);
      if (res > 4.0 * tol) return fail("clarkson_pair", {i, k}, res);
    }

  // Overlaps of size delta move the Clarkson sums by about delta^min(p, 2).
  const double support_tol = 10.0 * std::pow(tol, 1.0 / std::min(p, 2.0));
  std::vector<Vec> all(v_plus.begin(), v_plus.end());
  all.emplace_back(u.begin(), u.end());
  for (std::size_t a = 0; a < all.size(); ++a)
    for (std::size_t b = a + 1; b < all.size(); ++b)
      for (std::size_t i = 0; i < d; ++i)
        if (std::fabs(all[a][i]) > support_tol && std::fabs(all[b][i]) > support_tol)
          return fail("disjoint_support", {a, b}, std::min(std::fabs(all[a][i]), std::fabs(all[b][i])));

  if (all.size() < d) {
    out.status = DeductionStatus::insufficient;
    return out;
  }
  int axis = -1;
  for (std::size_t i = 0; i < d; ++i) {
    if (std::fabs(u[i]) > support_tol) {
      if (axis >= 0) return fail("disjoint_support", {u_index}, std::fabs(u[i]));
      axis = static_cast<int>(i);
    }
  }
  out.status = DeductionStatus::confirmed;
  out.axis = axis;
  out.sign = u[static_cast<std::size_t>(axis)] > 0.0 ? 1 : -1;
  return out;
}

// ---------------------------------------------------------------------------

CopySamplerReport copy_sampler_check(int dim, int n, const std::vector<std::int64_t>& j_list,
                                     std::uint64_t samples, std::uint64_t seed,
                                     std::optional<Rational> epsilon_override) {
  const AxisConfiguration config = axis_configuration(dim, n);
  const Rational eps = epsilon_override ? Rational::make(epsilon_override->num, epsilon_override->den)
                                        : config.epsilon;
  if (eps.num < 0 || eps.num >= eps.den) throw InputError("epsilon must lie in [0, 1)");
  for (const auto j : j_list)
    if (j < 1) throw InputError("scale index j must be positive");

  CopySamplerReport out;
  out.epsilon = eps;
  out.j_list = j_list;
  const std::size_t blocks_per_j = (samples + kSamplerBlock - 1) / kSamplerBlock;
  const std::size_t n_blocks = blocks_per_j * j_list.size();
  struct BlockResult {
    std::uint64_t placements = 0;
    std::uint64_t violations = 0;
    std::optional<CopySamplerReport::Violation> first;
  };
  std::vector<BlockResult> results(n_blocks);
  constexpr i128 kUnit = i128{1} << 32;

  parallel_for_blocks(n_blocks, [&](std::size_t block) {
    const std::size_t ji = block / blocks_per_j;
    const std::size_t local = block % blocks_per_j;
    const std::int64_t j = j_list[ji];
    std::mt19937_64 rng(derive_seed(derive_seed(seed, ji), local));
    // r_j = (j b + a) / b with eps = a / b; sums are kept in units of 1 / (b 2^32).
    const i128 a = eps.num, b = eps.den;
    const i128 r_num = j * b + a;
    const i128 modulus = b * kUnit;
    const i128 inside_below = modulus - a * kUnit;
    const double r = static_cast<double>(r_num) / static_cast<double>(b);
    const auto bound = static_cast<std::int64_t>(std::floor(10.0 * r * 4294967296.0));
    std::uniform_int_distribution<std::int64_t> coord(-bound, bound);
    std::uniform_int_distribution<int> axis_pick(0, dim - 1);
    std::uniform_int_distribution<int> coin(0, 1);

    BlockResult& res = results[block];
    const std::uint64_t begin = local * kSamplerBlock;
    const std::uint64_t end = std::min(samples, begin + kSamplerBlock);
    std::vector<std::int64_t> x(static_cast<std::size_t>(dim));
    for (std::uint64_t s = begin; s < end; ++s) {
      i128 total = 0;
      for (auto& c : x) {
        c = coord(rng);
        total += c;
      }
      const int axis = axis_pick(rng);
      const int sign = coin(rng) ? 1 : -1;
      bool all_inside = true;
      for (int k = -1; k <= n - 2 * dim && all_inside; ++k) {
        // Coordinate sum of x + sign r_j k e_axis.
        i128 value = total * b + sign * k * r_num * kUnit;
        value %= modulus;
        if (value < 0) value += modulus;
        if (value >= inside_below) all_inside = false;
      }
      ++res.placements;
      if (all_inside) {
        ++res.violations;
        if (!res.first) res.first = CopySamplerReport::Violation{x, axis, sign, j};
      }
    }
  });

  for (auto& r : results) {
    out.placements += r.placements;
    out.violations += r.violations;
    if (!out.first_violation && r.first) out.first_violation = std::move(r.first);
  }
  out.pass = out.violations == 0;
  return out;
}

}  // namespace obstruct
