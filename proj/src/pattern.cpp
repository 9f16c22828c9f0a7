#include "obstruct/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <unordered_set>

#include "obstruct/errors.hpp"
#include "obstruct/parallel.hpp"
#include "obstruct/simd.hpp"

namespace obstruct {

namespace {

constexpr std::uint64_t kNetBlock = 4096;
constexpr std::uint64_t kSampleBlock = 1024;

double raw_gap_to_double(u128 gap) {
  return static_cast<double>(static_cast<long double>(gap) / static_cast<long double>(kTwoPow64));
}

void check_degree(int degree) {
  if (degree < 1) throw InputError("degree must be at least 1");
}

// Leading term A k^p and the powers k^i (i = 1..p-1) over the pattern.
struct PatternTables {
  std::vector<std::uint64_t> lead;
  std::vector<std::vector<std::uint64_t>> powers;
};

PatternTables make_tables(const Pattern& pattern, const TorusCoefficient& leading, int degree) {
  PatternTables t;
  t.lead.reserve(pattern.size());
  for (const auto k : pattern.indices) t.lead.push_back(leading.term_raw(k, degree));
  t.powers.resize(static_cast<std::size_t>(degree - 1));
  for (int i = 1; i < degree; ++i) {
    auto& row = t.powers[static_cast<std::size_t>(i - 1)];
    row.reserve(pattern.size());
    for (const auto k : pattern.indices) row.push_back(wrapping_power(k, i));
  }
  return t;
}

// Evaluates x_k(b) for the whole pattern into `buf` and returns its max gap.
u128 gap_at(const PatternTables& t, std::span<const std::uint64_t> b, std::vector<std::uint64_t>& buf,
            GapFinder& finder) {
  std::copy(t.lead.begin(), t.lead.end(), buf.begin());
  for (std::size_t i = 0; i < b.size(); ++i) simd::multiply_accumulate(buf, t.powers[i], b[i]);
  return finder.max_gap(buf);
}

struct WorstCase {
  u128 gap = 0;
  std::vector<std::uint64_t> b;
  bool set = false;
};

// Net with |B_i| = ceil(100 p Q^i ratio) points, ratio = scale / eps.
NetSpec nets_from_ratio(int degree, std::int64_t universe, long double ratio) {
  NetSpec nets;
  nets.degree = degree;
  nets.universe = universe;
  long double qi = 1.0L;
  for (int i = 1; i < degree; ++i) {
    qi *= static_cast<long double>(universe);
    const long double inverse_mesh = 100.0L * degree * qi * ratio;
    nets.meshes.push_back(static_cast<double>(1.0L / inverse_mesh));
    const long double size = std::ceil(inverse_mesh);
    nets.sizes.push_back(size >= 1.8e19L ? std::numeric_limits<std::uint64_t>::max()
                                         : static_cast<std::uint64_t>(size));
  }
  return nets;
}

long double cells_of(const std::vector<std::uint64_t>& sizes) {
  long double cells = 1.0L;
  for (const auto s : sizes) cells *= static_cast<long double>(s);
  return cells;
}

struct NetScan {
  u128 worst = 0;
  std::vector<std::uint64_t> worst_b;
  std::uint64_t cells = 0;
};

NetScan scan_net(const Pattern& pattern, const Rational& leading, int degree, const NetSpec& nets) {
  const auto tables = make_tables(pattern, TorusCoefficient::rational(leading), degree);
  const std::uint64_t cells = nets.cells();
  const std::size_t n_blocks = (cells + kNetBlock - 1) / kNetBlock;
  const std::size_t dims = nets.sizes.size();
  std::vector<WorstCase> per_block(n_blocks);

  parallel_for_blocks(n_blocks, [&](std::size_t block) {
    std::vector<std::uint64_t> buf(pattern.size());
    std::vector<std::uint64_t> b(dims);
    GapFinder finder(pattern.size());
    WorstCase& worst = per_block[block];
    const std::uint64_t begin = block * kNetBlock;
    const std::uint64_t end = std::min(cells, begin + kNetBlock);
    for (std::uint64_t cell = begin; cell < end; ++cell) {
      std::uint64_t rest = cell;
      for (std::size_t i = 0; i < dims; ++i) {
        const std::uint64_t size = nets.sizes[i];
        const std::uint64_t j = rest % size;
        rest /= size;
        b[i] = static_cast<std::uint64_t>((static_cast<u128>(j) << 64) / size);
      }
      const u128 gap = gap_at(tables, b, buf, finder);
      if (!worst.set || gap > worst.gap) {
        worst.gap = gap;
        worst.b = b;
        worst.set = true;
      }
    }
  });

  NetScan scan;
  scan.cells = cells;
  bool set = false;
  for (auto& w : per_block) {
    if (!set || w.gap > scan.worst) {
      scan.worst = w.gap;
      scan.worst_b = std::move(w.b);
      set = true;
    }
  }
  return scan;
}

HittingReport net_report(const NetScan& scan, double epsilon, const NetSpec& nets) {
  HittingReport r;
  r.method = HittingMethod::net;
  r.epsilon = epsilon;
  r.worst_gap = raw_gap_to_double(scan.worst);
  r.worst_b = scan.worst_b;
  r.samples_tested = scan.cells;
  r.transfer_slack = nets.transfer_slack();
  r.pass_threshold = 0.9 * epsilon - 2.0 * r.transfer_slack;
  r.pass = r.worst_gap <= r.pass_threshold;
  r.full_resolution = nets.full_resolution();
  // Points are rounded to 2^-64 once each and the gap is read in double.
  r.guaranteed_epsilon = r.worst_gap + 2.0 * r.transfer_slack + std::ldexp(1.0, -62);
  return r;
}

void check_net_inputs(const Pattern& pattern, int degree, const NetSpec& nets) {
  check_degree(degree);
  if (pattern.size() == 0) throw InputError("empty pattern");
  if (nets.degree != degree) throw InputError("net degree does not match the polynomial degree");
  if (nets.universe < pattern.effective_universe())
    throw InputError("net universe Q must bound every |k| in the pattern");
  if (nets.sizes.size() != static_cast<std::size_t>(degree - 1))
    throw InputError("net has the wrong number of coordinates");
  for (const auto s : nets.sizes)
    if (s == 0) throw InputError("empty net coordinate");
}

std::int64_t isqrt(std::int64_t n) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------

PolySeqSpec::PolySeqSpec(int degree, TorusCoefficient leading, std::vector<TorusCoefficient> lower)
    : degree_(degree), leading_(leading), lower_(std::move(lower)) {
  check_degree(degree);
  if (leading_.is_zero()) throw InputError("leading coefficient must be nonzero");
  if (lower_.size() > static_cast<std::size_t>(degree - 1))
    throw InputError("too many lower coefficients for the degree");
  lower_.resize(static_cast<std::size_t>(degree - 1), TorusCoefficient::dyadic(0));
  std::vector<TorusCoefficient> coefficients;
  coefficients.reserve(static_cast<std::size_t>(degree) + 1);
  coefficients.push_back(TorusCoefficient::dyadic(0));
  for (const auto& c : lower_) coefficients.push_back(c);
  coefficients.push_back(leading_);
  polynomial_ = TorusPolynomial(std::move(coefficients));
}

PolySeqSpec PolySeqSpec::exact(int degree, const Rational& leading,
                               const std::vector<std::uint64_t>& lower_raw) {
  std::vector<TorusCoefficient> lower;
  for (const auto raw : lower_raw) lower.push_back(TorusCoefficient::dyadic(raw));
  return PolySeqSpec(degree, TorusCoefficient::rational(leading), std::move(lower));
}

PolySeqSpec PolySeqSpec::real(int degree, long double leading, const std::vector<long double>& lower) {
  std::vector<TorusCoefficient> coefficients;
  for (const auto b : lower) coefficients.push_back(TorusCoefficient::real(b));
  return PolySeqSpec(degree, TorusCoefficient::real(leading), std::move(coefficients));
}

// ---------------------------------------------------------------------------

std::string_view provenance_name(Provenance provenance) {
  switch (provenance) {
    case Provenance::thinned: return "thinned";
    case Provenance::elementary: return "elementary";
    case Provenance::explicit_set: return "explicit";
  }
  return "explicit";
}

Provenance parse_provenance(std::string_view name) {
  if (name == "thinned") return Provenance::thinned;
  if (name == "elementary") return Provenance::elementary;
  if (name == "explicit") return Provenance::explicit_set;
  throw InputError("unknown provenance '" + std::string(name) + "'");
}

Pattern Pattern::make(std::vector<std::int64_t> indices, std::int64_t universe, Provenance provenance,
                      std::uint64_t seed) {
  if (universe < 0) throw InputError("universe must be non-negative");
  std::sort(indices.begin(), indices.end());
  if (std::adjacent_find(indices.begin(), indices.end()) != indices.end())
    throw InputError("pattern indices must be distinct");
  if (universe > 0 && !indices.empty() && (indices.front() < 0 || indices.back() >= universe))
    throw InputError("pattern index outside {0..Q-1}");
  Pattern p;
  p.indices = std::move(indices);
  p.universe = universe;
  p.provenance = provenance;
  p.seed = seed;
  return p;
}

std::int64_t Pattern::effective_universe() const {
  if (universe > 0) return universe;
  std::int64_t m = 0;
  for (const auto k : indices) m = std::max(m, k < 0 ? -k : k);
  return m + 1;
}

std::vector<std::uint64_t> evaluate_on_pattern(const Pattern& pattern, const PolySeqSpec& f) {
  std::vector<std::uint64_t> out;
  out.reserve(pattern.size());
  for (const auto k : pattern.indices) out.push_back(f.value_raw(k));
  return out;
}

Pattern thin_pattern(std::int64_t n, std::int64_t universe, std::uint64_t seed) {
  if (n < 1) throw InputError("pattern size must be positive");
  if (n > universe) throw InputError("cannot choose n > Q indices from {0..Q-1}");
  std::mt19937_64 rng(seed);
  std::vector<std::int64_t> chosen;
  chosen.reserve(static_cast<std::size_t>(n));
  if (universe <= (std::int64_t{1} << 16)) {
    std::vector<std::int64_t> all(static_cast<std::size_t>(universe));
    std::iota(all.begin(), all.end(), std::int64_t{0});
    for (std::int64_t i = 0; i < n; ++i) {
      std::uniform_int_distribution<std::int64_t> pick(i, universe - 1);
      std::swap(all[static_cast<std::size_t>(i)], all[static_cast<std::size_t>(pick(rng))]);
    }
    chosen.assign(all.begin(), all.begin() + n);
  } else {
    // Floyd: one draw per element, no O(Q) storage.
    std::unordered_set<std::int64_t> seen;
    seen.reserve(static_cast<std::size_t>(n) * 2);
    for (std::int64_t j = universe - n; j < universe; ++j) {
      std::uniform_int_distribution<std::int64_t> pick(0, j);
      const std::int64_t t = pick(rng);
      const std::int64_t v = seen.contains(t) ? j : t;
      seen.insert(v);
      chosen.push_back(v);
    }
  }
  return Pattern::make(std::move(chosen), universe, Provenance::thinned, seed);
}

// ---------------------------------------------------------------------------

std::uint64_t NetSpec::cells() const {
  std::uint64_t c = 1;
  for (const auto s : sizes) c *= s;
  return c;
}

double NetSpec::transfer_slack() const {
  long double slack = 0.0L;
  long double qi = 1.0L;
  for (const double mesh : meshes) {
    qi *= static_cast<long double>(universe);
    slack += static_cast<long double>(mesh) * qi;
  }
  return static_cast<double>(slack);
}

NetSpec build_nets(int degree, std::int64_t universe, double epsilon, double resolution_scale,
                   std::uint64_t cell_budget) {
  check_degree(degree);
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InputError("epsilon must lie in (0, 1)");
  if (universe < 2) throw InputError("Q must be at least 2");
  if (!(resolution_scale > 0.0 && resolution_scale <= 1.0))
    throw InputError("resolution_scale must lie in (0, 1]");

  const long double ratio = static_cast<long double>(resolution_scale) / epsilon;
  NetSpec nets = nets_from_ratio(degree, universe, ratio);
  nets.epsilon = epsilon;
  nets.resolution_scale = resolution_scale;
  nets.interval_stride = epsilon / 100.0;
  nets.interval_length = 0.9 * epsilon;
  nets.interval_count = static_cast<std::uint64_t>(std::ceil(100.0 / epsilon));

  long double qi = 1.0L;
  for (std::size_t i = 0; i < nets.sizes.size(); ++i) {
    qi *= static_cast<long double>(universe);
    const long double size = 100.0L * degree * qi * ratio;
    if (size > static_cast<long double>(cell_budget)) {
      std::ostringstream msg;
      msg << "net size |B_" << i + 1 << "| = ceil(100*p*Q^" << i + 1 << "*scale/eps) = "
          << static_cast<double>(std::ceil(size)) << " exceeds the cell budget " << cell_budget
          << " (Q^" << i + 1 << "/eps = " << static_cast<double>(qi / epsilon) << ")";
      throw BudgetError(msg.str());
    }
  }
  const long double cells = cells_of(nets.sizes);
  if (cells > static_cast<long double>(cell_budget)) {
    std::ostringstream msg;
    msg << "net has " << static_cast<double>(cells) << " cells, over the budget " << cell_budget;
    throw BudgetError(msg.str());
  }
  return nets;
}

HittingReport verify_hitting_net(const Pattern& pattern, const Rational& leading, int degree,
                                 double epsilon, const NetSpec& nets) {
  check_net_inputs(pattern, degree, nets);
  if (leading.is_zero()) throw InputError("leading coefficient must be nonzero");
  return net_report(scan_net(pattern, leading, degree, nets), epsilon, nets);
}

HittingReport verify_hitting_sampled(const Pattern& pattern, const TorusCoefficient& leading,
                                     int degree, double epsilon, std::uint64_t n_samples,
                                     std::uint64_t seed) {
  check_degree(degree);
  if (n_samples < 1) throw InputError("need at least one sample");
  if (pattern.size() == 0) throw InputError("empty pattern");
  const auto tables = make_tables(pattern, leading, degree);
  const std::size_t dims = static_cast<std::size_t>(degree - 1);
  const std::size_t n_blocks = (n_samples + kSampleBlock - 1) / kSampleBlock;
  std::vector<WorstCase> per_block(n_blocks);

  parallel_for_blocks(n_blocks, [&](std::size_t block) {
    std::mt19937_64 rng(derive_seed(seed, block));
    std::vector<std::uint64_t> buf(pattern.size());
    std::vector<std::uint64_t> b(dims);
    GapFinder finder(pattern.size());
    WorstCase& worst = per_block[block];
    const std::uint64_t begin = block * kSampleBlock;
    const std::uint64_t end = std::min(n_samples, begin + kSampleBlock);
    for (std::uint64_t s = begin; s < end; ++s) {
      for (auto& coordinate : b) coordinate = rng();
      const u128 gap = gap_at(tables, b, buf, finder);
      if (!worst.set || gap > worst.gap) {
        worst.gap = gap;
        worst.b = b;
        worst.set = true;
      }
    }
  });

  HittingReport r;
  r.method = HittingMethod::sampled;
  r.epsilon = epsilon;
  r.samples_tested = n_samples;
  bool set = false;
  u128 worst = 0;
  for (auto& w : per_block) {
    if (!set || w.gap > worst) {
      worst = w.gap;
      r.worst_b = std::move(w.b);
      set = true;
    }
  }
  r.worst_gap = raw_gap_to_double(worst);
  r.pass_threshold = epsilon;
  r.pass = r.worst_gap <= epsilon;
  return r;
}

// ---------------------------------------------------------------------------

ElementaryPattern elementary_pattern(std::int64_t n) {
  if (n < 4) throw InputError("elementary pattern needs n >= 4");
  ElementaryPattern e;
  e.m = isqrt(n);
  e.leading = Rational::make(1, e.m * e.m);
  std::vector<std::int64_t> indices(static_cast<std::size_t>(n));
  std::iota(indices.begin(), indices.end(), std::int64_t{0});
  e.pattern = Pattern::make(std::move(indices), n, Provenance::elementary);
  return e;
}

std::int64_t find_hitter(std::int64_t n, const TorusPoint& b, const TorusInterval& target) {
  if (n < 16) throw InputError("find_hitter needs n >= 16");
  const double required = 10.0 / std::sqrt(static_cast<double>(n));
  if (target.length() < std::min(1.0, required) * (1.0 - 1e-12))
    throw InputError("target arc shorter than 10/sqrt(n)");

  const std::int64_t m = isqrt(n);
  const auto um = static_cast<u128>(m);
  const std::uint64_t b_raw = b.raw();
  // m * ((B + 2i/m) mod 1) = (m B + 2i) mod m, held in units of 2^-64.
  const u128 period = um << 64;
  const u128 mb = (static_cast<u128>(b_raw) * um) % period;
  std::int64_t block = -1;
  for (std::int64_t i = 0; i < m; ++i) {
    const u128 y = (mb + ((static_cast<u128>(2 * i) % um) << 64)) % period;
    if (y >= kTurn && y < 3 * kTurn) {
      block = i;
      break;
    }
  }
  if (block < 0) throw InvariantError("no block i with (B + 2i/m) mod 1 in [1/m, 3/m)");

  const PolySeqSpec f = PolySeqSpec::exact(2, Rational::make(1, m * m), {b_raw});
  for (std::int64_t l = 0; l < m; ++l) {
    const std::int64_t k = block * m + l;
    if (target.contains_raw(f.value_raw(k))) return k;
  }
  throw InvariantError("walk over block " + std::to_string(block) + " found no hitter");
}

// ---------------------------------------------------------------------------

SampledCalibration calibrate_sampled(std::int64_t n, std::int64_t universe, int degree,
                                     std::uint64_t seed, std::uint64_t n_samples,
                                     std::uint64_t sample_seed, unsigned retries,
                                     std::optional<double> target_epsilon) {
  if (retries < 1) throw InputError("need at least one calibration attempt");
  const auto leading = TorusCoefficient::rational(Rational::make(1, universe));
  SampledCalibration out;
  bool have = false;
  for (unsigned a = 0; a < retries; ++a) {
    const std::uint64_t attempt_seed = seed + a;
    Pattern p = thin_pattern(n, universe, attempt_seed);
    HittingReport r = verify_hitting_sampled(p, leading, degree, 1.0, n_samples, sample_seed);
    out.attempts.push_back({attempt_seed, r.worst_gap});
    if (!have || r.worst_gap < out.report.worst_gap) {
      out.pattern = std::move(p);
      out.report = std::move(r);
      have = true;
    }
    if (target_epsilon && out.report.worst_gap <= *target_epsilon) break;
  }
  out.epsilon = out.report.worst_gap;
  out.report.epsilon = out.epsilon;
  out.report.pass_threshold = out.epsilon;
  out.report.pass = true;
  return out;
}

NetCalibration calibrate_net(const Pattern& pattern, const Rational& leading, int degree,
                             std::uint64_t max_cells) {
  check_degree(degree);
  if (max_cells < 1) throw InputError("max_cells must be positive");
  const std::int64_t universe = std::max<std::int64_t>(2, pattern.effective_universe());

  // Largest ratio = scale/eps whose net fits in max_cells, by bisection on log(ratio).
  long double lo = -80.0L, hi = 80.0L;
  if (degree > 1) {
    if (cells_of(nets_from_ratio(degree, universe, std::exp(lo)).sizes) > max_cells)
      throw BudgetError("even the coarsest net exceeds max_cells");
    for (int it = 0; it < 200; ++it) {
      const long double mid = 0.5L * (lo + hi);
      if (cells_of(nets_from_ratio(degree, universe, std::exp(mid)).sizes) <= max_cells)
        lo = mid;
      else
        hi = mid;
    }
  }
  const long double ratio = std::exp(lo);
  NetSpec nets = nets_from_ratio(degree, universe, ratio);
  check_net_inputs(pattern, degree, nets);
  const NetScan scan = scan_net(pattern, leading, degree, nets);

  const double worst = raw_gap_to_double(scan.worst);
  const double slack = nets.transfer_slack();
  const double epsilon = (worst + 2.0 * slack) / 0.9 * (1.0 + 1e-12);
  nets.epsilon = epsilon;
  nets.resolution_scale = static_cast<double>(ratio * epsilon);
  nets.interval_stride = epsilon / 100.0;
  nets.interval_length = 0.9 * epsilon;
  nets.interval_count = static_cast<std::uint64_t>(std::ceil(100.0 / epsilon));

  NetCalibration out;
  out.epsilon = epsilon;
  out.report = net_report(scan, epsilon, nets);
  out.nets = std::move(nets);
  return out;
}

}  // namespace obstruct
