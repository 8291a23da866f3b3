#include "rtn/mc.hpp"

#include <cmath>
#include <vector>

#include "rtn/errors.hpp"
#include "rtn/parallel.hpp"

namespace rtn {

namespace {

// SplitMix64: tiny, seedable, and good enough for trajectory averaging.
// One generator per trajectory index keeps parallel and serial runs
// bitwise identical.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed, std::uint64_t stream) {
    state = seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1));
    next();
    next();
  }
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  double uniform() {  // in [0, 1)
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }
  double exponential(double rate) { return -std::log1p(-uniform()) / rate; }
  bool coin() { return (next() & 1ULL) != 0; }
};

// Walks one telegraph trajectory and reports the exact phase integral at
// each grid time.
template <typename Visit>
void walk_trajectory(const NoiseParams& params, std::uint64_t seed,
                     std::uint64_t index, const std::vector<double>& grid,
                     Visit&& visit) {
  SplitMix64 rng(seed, index);
  double xi = rng.coin() ? params.nu : -params.nu;
  double t_last = 0.0;
  double phase = 0.0;
  double t_flip = rng.exponential(params.lambda);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    while (t_flip < grid[i]) {
      phase += xi * (t_flip - t_last);
      t_last = t_flip;
      xi = -xi;
      t_flip += rng.exponential(params.lambda);
    }
    visit(i, phase + xi * (grid[i] - t_last), xi);
  }
}

struct Accumulator {
  double sum = 0.0, sum_sq = 0.0;
  void add(double x) {
    sum += x;
    sum_sq += x * x;
  }
  void merge(const Accumulator& other) {
    sum += other.sum;
    sum_sq += other.sum_sq;
  }
  double mean(double n) const { return sum / n; }
  double standard_error(double n) const {
    const double var = std::max(0.0, (sum_sq - sum * sum / n) / (n - 1.0));
    return std::sqrt(var / n);
  }
};

constexpr std::uint64_t kBlock = 4096;

}  // namespace

void McConfig::validate() const {
  if (samples < 1) throw ConfigError("mc: samples must be >= 1");
  if (!(dt_record > 0.0)) throw ConfigError("mc: dt_record must be > 0");
  if (!(t_max >= 0.0)) throw ConfigError("mc: t_max must be >= 0");
}

std::vector<McCurvePoint> mc_dephasing_memoryless(const NoiseParams& params,
                                                  const McConfig& cfg) {
  params.validate();
  cfg.validate();

  std::vector<double> grid;
  for (double t = 0.0; t <= cfg.t_max + 1e-12 * cfg.t_max; t += cfg.dt_record)
    grid.push_back(t);

  const std::uint64_t blocks = (cfg.samples + kBlock - 1) / kBlock;
  std::vector<std::vector<Accumulator>> cos_acc(blocks), sin_acc(blocks);
  parallel_for(blocks, [&](std::size_t b) {
    cos_acc[b].resize(grid.size());
    sin_acc[b].resize(grid.size());
    const std::uint64_t begin = b * kBlock;
    const std::uint64_t end = std::min(cfg.samples, begin + kBlock);
    for (std::uint64_t traj = begin; traj < end; ++traj) {
      walk_trajectory(params, cfg.seed, traj, grid,
                      [&](std::size_t i, double phase, double) {
                        cos_acc[b][i].add(std::cos(phase));
                        sin_acc[b][i].add(std::sin(phase));
                      });
    }
  });

  // Deterministic merge in block order.
  std::vector<Accumulator> cos_total(grid.size()), sin_total(grid.size());
  for (std::uint64_t b = 0; b < blocks; ++b)
    for (std::size_t i = 0; i < grid.size(); ++i) {
      cos_total[i].merge(cos_acc[b][i]);
      sin_total[i].merge(sin_acc[b][i]);
    }

  const double n = static_cast<double>(cfg.samples);
  std::vector<McCurvePoint> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out[i] = {grid[i], cos_total[i].mean(n),
              cfg.samples > 1 ? cos_total[i].standard_error(n) : 0.0,
              sin_total[i].mean(n),
              cfg.samples > 1 ? sin_total[i].standard_error(n) : 0.0};
  }
  return out;
}

MomentReport mc_moment_checks(const NoiseParams& params, const McConfig& cfg) {
  params.validate();
  cfg.validate();
  const double inv_lambda = 1.0 / params.lambda;
  // Ordered sample times t1 > t2 > t3 > t4 in units of 1/lambda.
  const std::vector<double> grid{0.5 * inv_lambda, 1.0 * inv_lambda,
                                 1.5 * inv_lambda, 2.0 * inv_lambda};

  const std::uint64_t blocks = (cfg.samples + kBlock - 1) / kBlock;
  // Per block: means at the 4 times, pair, triple, quad products, and the
  // occupation indicator at the latest time.
  struct BlockStats {
    Accumulator mean[4];
    Accumulator pair, triple, quad, occupation;
  };
  std::vector<BlockStats> stats(blocks);
  parallel_for(blocks, [&](std::size_t b) {
    const std::uint64_t begin = b * kBlock;
    const std::uint64_t end = std::min(cfg.samples, begin + kBlock);
    for (std::uint64_t traj = begin; traj < end; ++traj) {
      double xi_at[4];
      walk_trajectory(params, cfg.seed ^ 0xA5A5A5A5A5A5A5A5ULL, traj, grid,
                      [&](std::size_t i, double, double xi) { xi_at[i] = xi; });
      for (int i = 0; i < 4; ++i) stats[b].mean[i].add(xi_at[i]);
      stats[b].pair.add(xi_at[1] * xi_at[0]);                          // t=1.0, 0.5
      stats[b].triple.add(xi_at[2] * xi_at[1] * xi_at[0]);             // 1.5, 1.0, 0.5
      stats[b].quad.add(xi_at[3] * xi_at[2] * xi_at[1] * xi_at[0]);    // 2.0 ... 0.5
      stats[b].occupation.add(xi_at[3] > 0.0 ? 1.0 : 0.0);
    }
  });
  BlockStats total;
  for (const auto& s : stats) {
    for (int i = 0; i < 4; ++i) total.mean[i].merge(s.mean[i]);
    total.pair.merge(s.pair);
    total.triple.merge(s.triple);
    total.quad.merge(s.quad);
    total.occupation.merge(s.occupation);
  }

  const double n = static_cast<double>(cfg.samples);
  const double nu2 = params.nu * params.nu;
  const double c_half = nu2 * std::exp(-2.0 * params.lambda * (0.5 * inv_lambda));
  MomentReport report;
  auto add_check = [&](const std::string& name, const Accumulator& acc,
                       double expected) {
    const double est = acc.mean(n);
    const double se = acc.standard_error(n);
    report.checks.push_back(
        {name, est, expected, se, std::abs(est - expected) <= 3.0 * se});
  };
  for (int i = 0; i < 4; ++i)
    add_check("mean xi(t" + std::to_string(i + 1) + ")", total.mean[i], 0.0);
  add_check("pair correlation C(0.5/lambda)", total.pair, c_half);
  add_check("third moment", total.triple, 0.0);
  add_check("fourth moment factorization", total.quad, c_half * c_half);
  add_check("occupation fraction at t=2/lambda", total.occupation, 0.5);

  report.all_pass = true;
  for (const auto& c : report.checks) report.all_pass = report.all_pass && c.pass;
  return report;
}

}  // namespace rtn
