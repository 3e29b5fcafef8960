#include "modchaos/randproc.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <random>
#include <set>

namespace modchaos {

TimeGrid TimeGrid::of(std::vector<double> times) {
  if (times.empty()) raise(ErrorCode::InvalidArgument, "time grid must be nonempty");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i - 1] < times[i]))
      raise(ErrorCode::InvalidArgument, "time grid must be strictly increasing");
  }
  return TimeGrid{std::move(times)};
}

RandomProcessSpec::RandomProcessSpec(Alphabet alphabet,
                                     std::function<SetDescriptor(std::size_t, Symbol)> state_at,
                                     std::vector<double> probabilities)
    : alphabet_(alphabet), state_at_(std::move(state_at)),
      probabilities_(std::move(probabilities)) {
  if (!state_at_) raise(ErrorCode::InvalidArgument, "state function required");
  if (probabilities_.size() != static_cast<std::size_t>(alphabet_.size()))
    raise(ErrorCode::InvalidArgument, "need one probability per symbol");
  double sum = 0.0;
  for (double p : probabilities_) {
    if (!(p > 0.0))
      raise(ErrorCode::InvalidArgument, "probabilities must be strictly positive");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    raise(ErrorCode::InvalidArgument, "probabilities must sum to 1");
}

SetDescriptor RandomProcessSpec::state_at(std::size_t time_index, Symbol a) const {
  if (!alphabet_.contains(a))
    raise(ErrorCode::SymbolOutOfRange, "state symbol outside the alphabet");
  return state_at_(time_index, a);
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Portable uniform in [0,1): top 53 bits of the engine output.
double uniform01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

Symbol draw_symbol(std::mt19937_64& eng, const std::vector<double>& probabilities) {
  const double u = uniform01(eng);
  double acc = 0.0;
  for (std::size_t a = 0; a < probabilities.size(); ++a) {
    acc += probabilities[a];
    if (u < acc) return static_cast<Symbol>(a) + 1;
  }
  return static_cast<Symbol>(probabilities.size());
}

}  // namespace

std::uint64_t realization_seed(std::uint64_t master_seed, std::uint64_t index) {
  return splitmix64(splitmix64(master_seed) + index);
}

Realization sample_realization(const RandomProcessSpec& spec, const TimeGrid& grid,
                               std::uint64_t seed, std::size_t length) {
  if (length > grid.size())
    raise(ErrorCode::InvalidArgument, "length exceeds the time grid");

  Realization r;
  r.grid.times.assign(grid.times.begin(),
                      grid.times.begin() + static_cast<std::ptrdiff_t>(length));
  r.alphabet_size = spec.alphabet().size();
  r.seed = seed;
  std::mt19937_64 eng(seed);
  r.symbols.reserve(length);
  r.values.reserve(length);
  for (std::size_t i = 0; i < length; ++i) {
    const Symbol s = draw_symbol(eng, spec.probabilities());
    r.symbols.push_back(s);
    r.values.push_back(spec.state_at(i, s));
  }
  return r;
}

ModularPoint realization_to_point(const Realization& realization, int start_module) {
  return ModularPoint(start_module,
                      SymbolSeq::finite_prefix(Alphabet(realization.alphabet_size),
                                               realization.symbols));
}

EquivalenceReport equivalence_report(const RandomProcessSpec& spec,
                                     const TimeGrid& grid,
                                     const ModularStructure& structure,
                                     std::uint64_t n_samples, int prefix_len,
                                     std::uint64_t seed, std::uint64_t budget) {
  if (prefix_len < 1) raise(ErrorCode::InvalidArgument, "prefix length must be >= 1");
  if (static_cast<std::size_t>(prefix_len) > grid.size())
    raise(ErrorCode::InvalidArgument, "prefix length exceeds the time grid");
  std::uint64_t possible = 1;
  for (int i = 0; i < prefix_len; ++i) {
    possible *= static_cast<std::uint64_t>(spec.alphabet().size());
    if (possible > budget)
      raise(ErrorCode::BudgetExceeded, "m^prefix_len exceeds the configured budget");
  }

  EquivalenceReport report;
  report.n_samples = n_samples;
  report.prefix_len = prefix_len;
  report.possible = possible;
  report.seed = seed;
  report.symbol_frequency.assign(static_cast<std::size_t>(spec.alphabet().size()), 0.0);

  std::set<std::vector<Symbol>> seen;
  std::uint64_t valid = 0;
  for (std::uint64_t idx = 0; idx < n_samples; ++idx) {
    const Realization r = sample_realization(
        spec, grid, realization_seed(seed, idx), static_cast<std::size_t>(prefix_len));
    const ModularPoint start = realization_to_point(r, structure.range_lo());

    bool ok = true;
    for (std::size_t i = 0; i < r.symbols.size(); ++i) {
      report.symbol_frequency[static_cast<std::size_t>(r.symbols[i]) - 1] += 1.0;
      const SetDescriptor reached =
          point_value(structure, phi_n(start, i), 1);
      if (!descriptor_equal(reached, r.values[i])) ok = false;
    }
    if (ok) ++valid;
    seen.insert(r.symbols);
  }

  report.coverage = seen.size();
  report.valid_prefix_fraction =
      n_samples == 0 ? 0.0 : static_cast<double>(valid) / static_cast<double>(n_samples);
  const double draws = static_cast<double>(n_samples) * prefix_len;
  if (draws > 0) {
    for (double& f : report.symbol_frequency) f /= draws;
  }
  return report;
}

namespace {

constexpr int kBuiltinMaxDepth = 64;

// Example 2 module geometry: module j sits at t = (99 + j) / 100, so the
// certification range 1..301 covers the paper grid i = 100..400 and the
// factory stays defined for every later module an orbit can reach.
double example2_time(int j) { return static_cast<double>(99 + j) / 100.0; }

ModuleSpace example2_module(int j, Alphabet alphabet) {
  const double t = example2_time(j);
  auto cells = [t](std::span<const Symbol> prefix) {
    if (prefix.empty()) return SetDescriptor::points({{t}, {-t}});
    return prefix.front() == 1 ? SetDescriptor::point(t) : SetDescriptor::point(-t);
  };
  return ModuleSpace(j, alphabet, cells, kBuiltinMaxDepth);
}

std::vector<double> example3_module_grid(int i) {
  const double lo = static_cast<double>(i) / 10.0;
  const double h = 0.1 / 101.0;
  std::vector<double> grid(101);
  for (int r = 0; r <= 100; ++r) grid[static_cast<std::size_t>(r)] = lo + r * h;
  return grid;
}

ModuleSpace example3_module(int j, int i_lo, Alphabet alphabet) {
  const int i = i_lo + j - 1;
  auto grid = example3_module_grid(i);
  std::vector<double> f_row = grid;
  std::vector<double> g_row(grid.size());
  for (std::size_t r = 0; r < grid.size(); ++r) g_row[r] = -grid[r];
  auto cells = [grid, f_row, g_row](std::span<const Symbol> prefix) {
    if (prefix.empty()) return SetDescriptor::grid_functions(grid, {f_row, g_row});
    return SetDescriptor::grid_functions(grid, {prefix.front() == 1 ? f_row : g_row});
  };
  return ModuleSpace(j, alphabet, cells, kBuiltinMaxDepth);
}

}  // namespace

ExampleSystem example1_structure(const std::vector<std::function<double(double)>>& functions,
                                 const std::vector<double>& probabilities,
                                 const TimeGrid& grid) {
  if (functions.size() < 2)
    raise(ErrorCode::InvalidArgument, "need at least two functions");
  const Alphabet alphabet(static_cast<int>(functions.size()));

  // Sampled value table: values[a][i] = f_(a+1)(t_i).
  auto values = std::make_shared<std::vector<std::vector<double>>>();
  values->reserve(functions.size());
  for (const auto& f : functions) {
    std::vector<double> row;
    row.reserve(grid.size());
    for (double t : grid.times) row.push_back(f(t));
    values->push_back(std::move(row));
  }

  // Range disjointness: positive gap between the sampled range hulls.
  for (std::size_t a = 0; a < values->size(); ++a) {
    for (std::size_t b = a + 1; b < values->size(); ++b) {
      const auto [alo, ahi] = std::minmax_element((*values)[a].begin(), (*values)[a].end());
      const auto [blo, bhi] = std::minmax_element((*values)[b].begin(), (*values)[b].end());
      const double gap = std::max({0.0, *blo - *ahi, *alo - *bhi});
      if (!(gap > 0.0)) {
        raise(ErrorCode::RangesOverlap,
              "function ranges " + std::to_string(a + 1) + " and " +
                  std::to_string(b + 1) + " have no positive gap");
      }
    }
  }

  auto state_at = [values, alphabet](std::size_t i, Symbol a) {
    if (i >= values->front().size())
      raise(ErrorCode::InvalidArgument, "time index outside the grid");
    return SetDescriptor::point((*values)[static_cast<std::size_t>(a) - 1][i]);
  };

  const int module_count = static_cast<int>(grid.size());
  auto factory = [values, alphabet](int j) {
    auto cells = [values, j](std::span<const Symbol> prefix) {
      const std::size_t i = static_cast<std::size_t>(j) - 1;
      if (prefix.empty()) {
        std::vector<std::vector<double>> pts;
        for (const auto& row : *values) pts.push_back({row[i]});
        return SetDescriptor::points(std::move(pts));
      }
      return SetDescriptor::point((*values)[static_cast<std::size_t>(prefix.front()) - 1][i]);
    };
    return ModuleSpace(j, alphabet, cells, kBuiltinMaxDepth);
  };

  return ExampleSystem{
      RandomProcessSpec(alphabet, state_at, probabilities),
      ModularStructure(alphabet, factory, 1, module_count, module_count), grid};
}

ExampleSystem example2_structure() {
  const Alphabet alphabet(2);
  std::vector<double> times;
  times.reserve(301);
  for (int i = 100; i <= 400; ++i) times.push_back(static_cast<double>(i) / 100.0);
  TimeGrid grid = TimeGrid::of(std::move(times));

  auto state_at = [](std::size_t i, Symbol a) {
    const double t = example2_time(static_cast<int>(i) + 1);
    return a == 1 ? SetDescriptor::point(t) : SetDescriptor::point(-t);
  };
  auto factory = [alphabet](int j) { return example2_module(j, alphabet); };

  return ExampleSystem{RandomProcessSpec(alphabet, state_at, {0.5, 0.5}),
                       ModularStructure(alphabet, factory, 1, 301), grid};
}

ExampleSystem example3_structure(int i_lo, int i_hi) {
  if (i_lo < 1 || i_hi < i_lo)
    raise(ErrorCode::InvalidArgument, "invalid interval index range");
  const Alphabet alphabet(2);
  std::vector<double> times;
  for (int i = i_lo; i <= i_hi; ++i) times.push_back(static_cast<double>(i) / 10.0);
  TimeGrid grid = TimeGrid::of(std::move(times));

  auto state_at = [i_lo, alphabet](std::size_t idx, Symbol a) {
    const int i = i_lo + static_cast<int>(idx);
    auto g = example3_module_grid(i);
    std::vector<double> row(g.size());
    for (std::size_t r = 0; r < g.size(); ++r) row[r] = (a == 1 ? g[r] : -g[r]);
    return SetDescriptor::grid_functions(std::move(g), {std::move(row)});
  };
  auto factory = [i_lo, alphabet](int j) { return example3_module(j, i_lo, alphabet); };

  return ExampleSystem{RandomProcessSpec(alphabet, state_at, {0.5, 0.5}),
                       ModularStructure(alphabet, factory, 1, i_hi - i_lo + 1), grid};
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

double scalar_state(const SetDescriptor& d) {
  if (d.variant() != SetDescriptor::Variant::FinitePoints || d.pts().size() != 1 ||
      d.pts().front().size() != 1) {
    raise(ErrorCode::InvalidArgument, "step rendering needs scalar point states");
  }
  return d.pts().front().front();
}

}  // namespace

std::string emit_path_csv(const Realization& realization, PathRender mode) {
  if (realization.symbols.empty())
    raise(ErrorCode::InvalidArgument, "realization is empty");

  std::string out = "t,x\n";
  auto row = [&out](double t, double x) {
    out += format_double(t);
    out += ',';
    out += format_double(x);
    out += '\n';
  };

  if (mode == PathRender::Step) {
    const auto& t = realization.grid.times;
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
      const double x = scalar_state(realization.values[i]);
      row(t[i], x);
      row(t[i + 1], x);
    }
    if (t.size() == 1) row(t[0], scalar_state(realization.values[0]));
    return out;
  }

  for (const SetDescriptor& d : realization.values) {
    if (d.variant() != SetDescriptor::Variant::GridFunctions || d.rows().size() != 1)
      raise(ErrorCode::InvalidArgument, "grid rendering needs single-function states");
    for (std::size_t r = 0; r < d.grid().size(); ++r) row(d.grid()[r], d.rows()[0][r]);
  }
  return out;
}

}  // namespace modchaos
