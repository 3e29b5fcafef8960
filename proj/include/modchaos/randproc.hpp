#pragma once

// Random-process layer: m-alternative process specifications over finite time
// grids, seeded realization sampling, conversion of realizations to symbol
// trajectories of the similarity map, statistical equivalence reports, and
// the three builtin example processes.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "modchaos/dynamics.hpp"
#include "modchaos/structure.hpp"

namespace modchaos {

/// Finite strictly increasing time grid (truncation of t_alpha).
struct TimeGrid {
  std::vector<double> times;

  static TimeGrid of(std::vector<double> times);
  std::size_t size() const noexcept { return times.size(); }
};

/// One m-alternative random process over a time grid: state_at(i, a) is the
/// labeled alternative for 0-based time index i and symbol a; probabilities
/// are per-symbol, strictly positive, and sum to one.
class RandomProcessSpec {
public:
  RandomProcessSpec(Alphabet alphabet,
                    std::function<SetDescriptor(std::size_t, Symbol)> state_at,
                    std::vector<double> probabilities);

  Alphabet alphabet() const noexcept { return alphabet_; }
  const std::vector<double>& probabilities() const noexcept { return probabilities_; }
  SetDescriptor state_at(std::size_t time_index, Symbol a) const;

private:
  Alphabet alphabet_;
  std::function<SetDescriptor(std::size_t, Symbol)> state_at_;
  std::vector<double> probabilities_;
};

/// One sampled path: symbol and state per grid time, plus the seed used.
struct Realization {
  TimeGrid grid;
  int alphabet_size = 2;
  std::vector<Symbol> symbols;
  std::vector<SetDescriptor> values;
  std::uint64_t seed = 0;
};

/// Deterministic per-index stream split for parallel sampling: the
/// realization with index i under master seed s uses
/// splitmix64(splitmix64(s) + i) to seed its own mt19937_64.
std::uint64_t realization_seed(std::uint64_t master_seed, std::uint64_t index);

/// Draws `length` independent symbols from the categorical distribution and
/// reads the matching states. Reproducible: same seed, same realization.
Realization sample_realization(const RandomProcessSpec& spec, const TimeGrid& grid,
                               std::uint64_t seed, std::size_t length);

/// The realization's symbols as a horizon-bounded point of the structure:
/// the i-th iterate of phi lands in module start_module + i with the
/// remaining symbols.
ModularPoint realization_to_point(const Realization& realization, int start_module);

struct EquivalenceReport {
  std::uint64_t n_samples = 0;
  int prefix_len = 0;
  double valid_prefix_fraction = 0.0;
  std::uint64_t coverage = 0;        // distinct prefixes observed
  std::uint64_t possible = 0;        // m^prefix_len
  std::vector<double> symbol_frequency;
  std::uint64_t seed = 0;
};

/// Samples n_samples length-prefix_len realizations and checks each against
/// the structure: every sampled value must equal the cell reached by the
/// corresponding phi iterate. Counts distinct prefixes and symbol
/// frequencies.
EquivalenceReport equivalence_report(const RandomProcessSpec& spec,
                                     const TimeGrid& grid,
                                     const ModularStructure& structure,
                                     std::uint64_t n_samples, int prefix_len,
                                     std::uint64_t seed,
                                     std::uint64_t budget = kDefaultPrefixBudget);

/// Process + structure + grid for one example system.
struct ExampleSystem {
  RandomProcessSpec spec;
  ModularStructure structure;
  TimeGrid grid;
};

/// Finitely many scalar functions with pairwise disjoint ranges on a grid;
/// the label's first symbol picks the function. Fails with RangesOverlap when
/// the sampled ranges have no positive gap.
ExampleSystem example1_structure(const std::vector<std::function<double(double)>>& functions,
                                 const std::vector<double>& probabilities,
                                 const TimeGrid& grid);

/// The +-t process on t_i = i/100, i = 100..400: states {t, -t} with fair
/// probabilities; the first symbol picks the sign. Modules extend beyond the
/// grid (t keeps growing), so orbits can be iterated arbitrarily far.
ExampleSystem example2_structure();

/// Discrete-time process of the functions t and -t on [i/10, (i+1)/10) for
/// i in [i_lo, i_hi] (default 10..39); each interval is sampled on 101 points
/// from the left endpoint to one gap short of the right endpoint.
ExampleSystem example3_structure(int i_lo = 10, int i_hi = 39);

enum class PathRender {
  Step,          // point states held constant over [t_i, t_(i+1))
  FunctionGrid,  // function states sampled on their own grids
};

/// CSV path of a realization, header "t,x", LF line endings, shortest
/// round-trip number formatting.
std::string emit_path_csv(const Realization& realization, PathRender mode);

/// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double v);

}  // namespace modchaos
