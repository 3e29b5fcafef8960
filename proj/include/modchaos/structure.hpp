#pragma once

// Metric-space modules with prefix-labeled cells, and the certifiers for
// nesting, diameter decay, separation, and the (strong) modular chaotic
// structure conditions. Certificates state finite-range evidence only.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "modchaos/symseq.hpp"

namespace modchaos {

constexpr double kDefaultTolerance = 1e-9;
constexpr std::uint64_t kDefaultPrefixBudget = 256;  // max m^degree cells scanned

using Prefix = std::vector<Symbol>;

/// A concrete bounded set in a metric space. Three variants:
///  - FinitePoints: a finite point set in R^d (Euclidean metric)
///  - Interval: a real interval [lo, hi]
///  - GridFunctions: functions sampled on a shared grid (sup metric);
///    a single row is one function, so its diameter is 0.
class SetDescriptor {
public:
  enum class Variant { FinitePoints, Interval, GridFunctions };

  static SetDescriptor points(std::vector<std::vector<double>> pts);
  static SetDescriptor point(double x) { return points({{x}}); }
  static SetDescriptor interval(double lo, double hi);
  static SetDescriptor grid_functions(std::vector<double> grid,
                                      std::vector<std::vector<double>> rows);

  Variant variant() const noexcept { return variant_; }
  const std::vector<std::vector<double>>& pts() const { return points_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  const std::vector<double>& grid() const { return grid_; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }

  double diameter() const;

private:
  SetDescriptor() = default;
  Variant variant_ = Variant::Interval;
  std::vector<std::vector<double>> points_;
  double lo_ = 0.0, hi_ = 0.0;
  std::vector<double> grid_;
  std::vector<std::vector<double>> rows_;
};

/// inf-distance between two nonempty bounded sets (delta_j of the model).
double set_distance(const SetDescriptor& a, const SetDescriptor& b);

/// diam(A) = sup of pairwise distances, exact per variant.
inline double diameter(const SetDescriptor& a) { return a.diameter(); }

/// Containment test used by the nesting check; tolerance absorbs rounding.
bool descriptor_contains(const SetDescriptor& outer, const SetDescriptor& inner,
                         double tol = kDefaultTolerance);

/// Equality of descriptors as sets, within tolerance.
bool descriptor_equal(const SetDescriptor& a, const SetDescriptor& b,
                      double tol = kDefaultTolerance);

/// One module (F_j, d_j): a cell map from finite label prefixes to sets.
/// The empty prefix names the whole module set. cell_map must be pure.
class ModuleSpace {
public:
  ModuleSpace(int index, Alphabet alphabet,
              std::function<SetDescriptor(std::span<const Symbol>)> cell_map,
              int max_depth);

  int index() const noexcept { return index_; }
  Alphabet alphabet() const noexcept { return alphabet_; }
  int max_depth() const noexcept { return max_depth_; }

  SetDescriptor cell(std::span<const Symbol> prefix) const;
  SetDescriptor cell(const Prefix& prefix) const {
    return cell(std::span<const Symbol>(prefix));
  }

private:
  int index_;
  Alphabet alphabet_;
  std::function<SetDescriptor(std::span<const Symbol>)> cell_map_;
  int max_depth_;
};

/// The countable family of modules. module_factory(j) must be pure and
/// defined at least on [range_lo, range_hi]; max_module bounds the factory
/// domain (nullopt = every j >= 1 is available, as for the builtins).
class ModularStructure {
public:
  ModularStructure(Alphabet alphabet,
                   std::function<ModuleSpace(int)> module_factory,
                   int range_lo, int range_hi,
                   std::optional<int> max_module = std::nullopt);

  Alphabet alphabet() const noexcept { return alphabet_; }
  int range_lo() const noexcept { return range_lo_; }
  int range_hi() const noexcept { return range_hi_; }
  std::optional<int> max_module() const noexcept { return max_module_; }

  ModuleSpace module_at(int j) const;

private:
  Alphabet alphabet_;
  std::function<ModuleSpace(int)> module_factory_;
  int range_lo_, range_hi_;
  std::optional<int> max_module_;
};

struct NestingResult {
  bool ok = true;
  std::optional<Prefix> violation;  // child prefix that escapes its parent
};

/// True iff every child cell is contained in its parent for all prefixes up
/// to `depth` (depth 0 is vacuously true).
NestingResult check_nesting(const ModuleSpace& module, int depth,
                            double tol = kDefaultTolerance);

struct DiameterReport {
  std::vector<double> max_diameter_by_depth;  // index = depth, 0..max checked
  double threshold = 0.0;
  bool nonincreasing = true;
  bool verdict = false;  // value at max depth <= threshold and nonincreasing
};

DiameterReport diameter_report(const ModuleSpace& module, int max_depth_checked,
                               double threshold);

struct SeparationWitness {
  Prefix prefix;
  Prefix partner;   // depth-n cell realizing the best separation
  double distance;  // set_distance between the two cells
};

struct SeparationReport {
  int degree = 0;
  double epsilon = 0.0;  // min over prefixes of max over partners
  std::vector<SeparationWitness> witnesses;
};

SeparationReport separation_report(const ModuleSpace& module, int degree,
                                   std::uint64_t budget = kDefaultPrefixBudget);

struct ModuleSummary {
  int index = 0;
  bool nesting_ok = true;
  DiameterReport diameters;
  SeparationReport separation;
};

/// Finite-range certificate: the facts checked plus the range they cover.
/// Never a claim about the paper-level asymptotic conditions.
struct Certificate {
  int j_lo = 0, j_hi = 0;
  int depth = 0;
  int degree = 0;
  double threshold = 0.0;
  bool strong = false;

  std::vector<ModuleSummary> modules;
  std::vector<double> sup_diameter_by_depth;  // sup over modules, per depth
  double epsilon0 = 0.0;                      // min over modules of epsilon
  int epsilon0_module = 0;                    // module attaining the min

  bool nesting_ok = false;
  bool diameter_ok = false;
  bool separation_ok = false;  // epsilon0 > 0
  bool verdict = false;
  std::string statement;
};

Certificate modular_certificate(const ModularStructure& structure, int j_lo,
                                int j_hi, int depth, int degree,
                                double threshold,
                                std::uint64_t budget = kDefaultPrefixBudget);

/// Strong variant: the diameter table is the sup over checked modules per
/// depth and the verdict requires that sup to decay below the threshold.
Certificate strong_certificate(const ModularStructure& structure, int j_lo,
                               int j_hi, const std::vector<int>& depths,
                               double threshold, int degree = 1,
                               std::uint64_t budget = kDefaultPrefixBudget);

/// All words of the given length over the alphabet, lexicographic order.
std::vector<Prefix> enumerate_prefixes(Alphabet alphabet, int length);

}  // namespace modchaos
