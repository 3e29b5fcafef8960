#include "modchaos/structure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace modchaos {

namespace {

double euclid(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

double sup_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s = std::max(s, std::abs(a[i] - b[i]));
  return s;
}

}  // namespace

SetDescriptor SetDescriptor::points(std::vector<std::vector<double>> pts) {
  if (pts.empty()) raise(ErrorCode::InvalidArgument, "point set must be nonempty");
  const std::size_t dim = pts.front().size();
  if (dim == 0) raise(ErrorCode::InvalidArgument, "points need at least one coordinate");
  for (const auto& p : pts) {
    if (p.size() != dim)
      raise(ErrorCode::InvalidArgument, "points must share one dimension");
  }
  SetDescriptor d;
  d.variant_ = Variant::FinitePoints;
  d.points_ = std::move(pts);
  return d;
}

SetDescriptor SetDescriptor::interval(double lo, double hi) {
  if (!(lo <= hi)) raise(ErrorCode::InvalidArgument, "interval needs lo <= hi");
  SetDescriptor d;
  d.variant_ = Variant::Interval;
  d.lo_ = lo;
  d.hi_ = hi;
  return d;
}

SetDescriptor SetDescriptor::grid_functions(std::vector<double> grid,
                                            std::vector<std::vector<double>> rows) {
  if (grid.empty()) raise(ErrorCode::InvalidArgument, "grid must be nonempty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i - 1] < grid[i]))
      raise(ErrorCode::InvalidArgument, "grid must be strictly increasing");
  }
  if (rows.empty()) raise(ErrorCode::InvalidArgument, "need at least one function row");
  for (const auto& r : rows) {
    if (r.size() != grid.size())
      raise(ErrorCode::InvalidArgument, "row length must match the grid");
  }
  SetDescriptor d;
  d.variant_ = Variant::GridFunctions;
  d.grid_ = std::move(grid);
  d.rows_ = std::move(rows);
  return d;
}

double SetDescriptor::diameter() const {
  switch (variant_) {
    case Variant::FinitePoints: {
      double best = 0.0;
      for (std::size_t i = 0; i < points_.size(); ++i)
        for (std::size_t j = i + 1; j < points_.size(); ++j)
          best = std::max(best, euclid(points_[i], points_[j]));
      return best;
    }
    case Variant::Interval:
      return hi_ - lo_;
    case Variant::GridFunctions: {
      double best = 0.0;
      for (std::size_t i = 0; i < rows_.size(); ++i)
        for (std::size_t j = i + 1; j < rows_.size(); ++j)
          best = std::max(best, sup_dist(rows_[i], rows_[j]));
      return best;
    }
  }
  raise(ErrorCode::Internal, "unreachable");
}

namespace {

bool grids_match(const SetDescriptor& a, const SetDescriptor& b) {
  if (a.grid().size() != b.grid().size()) return false;
  for (std::size_t i = 0; i < a.grid().size(); ++i) {
    if (std::abs(a.grid()[i] - b.grid()[i]) > kDefaultTolerance) return false;
  }
  return true;
}

}  // namespace

double set_distance(const SetDescriptor& a, const SetDescriptor& b) {
  using V = SetDescriptor::Variant;
  if (a.variant() == V::FinitePoints && b.variant() == V::FinitePoints) {
    if (a.pts().front().size() != b.pts().front().size())
      raise(ErrorCode::IncompatibleDescriptors, "point dimensions differ");
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : a.pts())
      for (const auto& q : b.pts()) best = std::min(best, euclid(p, q));
    return best;
  }
  if (a.variant() == V::Interval && b.variant() == V::Interval) {
    return std::max({0.0, a.lo() - b.hi(), b.lo() - a.hi()});
  }
  if (a.variant() == V::GridFunctions && b.variant() == V::GridFunctions) {
    if (!grids_match(a, b))
      raise(ErrorCode::IncompatibleDescriptors, "function grids differ");
    double best = std::numeric_limits<double>::infinity();
    for (const auto& f : a.rows())
      for (const auto& g : b.rows()) best = std::min(best, sup_dist(f, g));
    return best;
  }
  // 1-d points against an interval is the one useful mixed case.
  if (a.variant() == V::Interval && b.variant() == V::FinitePoints)
    return set_distance(b, a);
  if (a.variant() == V::FinitePoints && b.variant() == V::Interval) {
    if (a.pts().front().size() != 1)
      raise(ErrorCode::IncompatibleDescriptors, "interval vs multi-d points");
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : a.pts()) {
      const double x = p[0];
      const double d = (x < b.lo()) ? b.lo() - x : (x > b.hi() ? x - b.hi() : 0.0);
      best = std::min(best, d);
    }
    return best;
  }
  raise(ErrorCode::IncompatibleDescriptors, "descriptor variants are incompatible");
}

bool descriptor_contains(const SetDescriptor& outer, const SetDescriptor& inner,
                         double tol) {
  using V = SetDescriptor::Variant;
  if (outer.variant() == V::FinitePoints && inner.variant() == V::FinitePoints) {
    if (outer.pts().front().size() != inner.pts().front().size()) return false;
    for (const auto& p : inner.pts()) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& q : outer.pts()) best = std::min(best, euclid(p, q));
      if (best > tol) return false;
    }
    return true;
  }
  if (outer.variant() == V::Interval && inner.variant() == V::Interval) {
    return inner.lo() >= outer.lo() - tol && inner.hi() <= outer.hi() + tol;
  }
  if (outer.variant() == V::Interval && inner.variant() == V::FinitePoints) {
    if (inner.pts().front().size() != 1) return false;
    for (const auto& p : inner.pts()) {
      if (p[0] < outer.lo() - tol || p[0] > outer.hi() + tol) return false;
    }
    return true;
  }
  if (outer.variant() == V::GridFunctions && inner.variant() == V::GridFunctions) {
    if (!grids_match(outer, inner)) return false;
    for (const auto& f : inner.rows()) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& g : outer.rows()) best = std::min(best, sup_dist(f, g));
      if (best > tol) return false;
    }
    return true;
  }
  return false;
}

bool descriptor_equal(const SetDescriptor& a, const SetDescriptor& b, double tol) {
  return descriptor_contains(a, b, tol) && descriptor_contains(b, a, tol);
}

ModuleSpace::ModuleSpace(int index, Alphabet alphabet,
                         std::function<SetDescriptor(std::span<const Symbol>)> cell_map,
                         int max_depth)
    : index_(index), alphabet_(alphabet), cell_map_(std::move(cell_map)),
      max_depth_(max_depth) {
  if (index < 1) raise(ErrorCode::InvalidArgument, "module index must be positive");
  if (max_depth < 0) raise(ErrorCode::InvalidArgument, "max_depth must be >= 0");
  if (!cell_map_) raise(ErrorCode::InvalidArgument, "cell map must be callable");
}

SetDescriptor ModuleSpace::cell(std::span<const Symbol> prefix) const {
  if (static_cast<int>(prefix.size()) > max_depth_) {
    raise(ErrorCode::DepthExceeded,
          "prefix length " + std::to_string(prefix.size()) + " exceeds max depth " +
              std::to_string(max_depth_));
  }
  for (Symbol s : prefix) {
    if (!alphabet_.contains(s))
      raise(ErrorCode::SymbolOutOfRange, "prefix symbol outside the alphabet");
  }
  return cell_map_(prefix);
}

ModularStructure::ModularStructure(Alphabet alphabet,
                                   std::function<ModuleSpace(int)> module_factory,
                                   int range_lo, int range_hi,
                                   std::optional<int> max_module)
    : alphabet_(alphabet), module_factory_(std::move(module_factory)),
      range_lo_(range_lo), range_hi_(range_hi), max_module_(max_module) {
  if (!module_factory_) raise(ErrorCode::InvalidArgument, "module factory required");
  if (range_lo < 1 || range_hi < range_lo)
    raise(ErrorCode::InvalidArgument, "invalid module range hint");
  if (max_module && *max_module < range_hi)
    raise(ErrorCode::InvalidArgument, "max_module below the range hint");
}

ModuleSpace ModularStructure::module_at(int j) const {
  if (j < 1) raise(ErrorCode::InvalidArgument, "module index must be positive");
  if (max_module_ && j > *max_module_) {
    raise(ErrorCode::InvalidArgument,
          "module " + std::to_string(j) + " beyond the structure's last module " +
              std::to_string(*max_module_));
  }
  ModuleSpace m = module_factory_(j);
  if (m.index() != j) raise(ErrorCode::Internal, "module factory index mismatch");
  if (m.alphabet() != alphabet_)
    raise(ErrorCode::AlphabetMismatch, "module alphabet differs from the structure");
  return m;
}

std::vector<Prefix> enumerate_prefixes(Alphabet alphabet, int length) {
  if (length < 0) raise(ErrorCode::InvalidArgument, "length must be >= 0");
  std::vector<Prefix> out;
  Prefix cur(static_cast<std::size_t>(length), 1);
  const int m = alphabet.size();
  std::uint64_t total = 1;
  for (int i = 0; i < length; ++i) total *= static_cast<std::uint64_t>(m);
  out.reserve(total);
  for (std::uint64_t w = 0; w < total; ++w) {
    std::uint64_t v = w;
    for (int i = length - 1; i >= 0; --i) {
      cur[static_cast<std::size_t>(i)] = static_cast<Symbol>(v % m) + 1;
      v /= m;
    }
    out.push_back(cur);
  }
  return out;
}

NestingResult check_nesting(const ModuleSpace& module, int depth, double tol) {
  if (depth > module.max_depth())
    raise(ErrorCode::DepthExceeded, "nesting depth beyond the module's max depth");
  for (int d = 0; d < depth; ++d) {
    for (const Prefix& parent : enumerate_prefixes(module.alphabet(), d)) {
      const SetDescriptor parent_cell = module.cell(parent);
      for (Symbol a = 1; a <= module.alphabet().size(); ++a) {
        Prefix child = parent;
        child.push_back(a);
        if (!descriptor_contains(parent_cell, module.cell(child), tol)) {
          return NestingResult{false, child};
        }
      }
    }
  }
  return NestingResult{true, std::nullopt};
}

DiameterReport diameter_report(const ModuleSpace& module, int max_depth_checked,
                               double threshold) {
  if (max_depth_checked > module.max_depth())
    raise(ErrorCode::DepthExceeded, "depth beyond the module's max depth");
  DiameterReport report;
  report.threshold = threshold;
  for (int d = 0; d <= max_depth_checked; ++d) {
    double worst = 0.0;
    for (const Prefix& p : enumerate_prefixes(module.alphabet(), d)) {
      worst = std::max(worst, module.cell(p).diameter());
    }
    report.max_diameter_by_depth.push_back(worst);
  }
  for (std::size_t d = 1; d < report.max_diameter_by_depth.size(); ++d) {
    if (report.max_diameter_by_depth[d] >
        report.max_diameter_by_depth[d - 1] + kDefaultTolerance) {
      report.nonincreasing = false;
    }
  }
  report.verdict = report.nonincreasing &&
                   report.max_diameter_by_depth.back() <= threshold;
  return report;
}

SeparationReport separation_report(const ModuleSpace& module, int degree,
                                   std::uint64_t budget) {
  if (degree < 1) raise(ErrorCode::InvalidArgument, "degree must be >= 1");
  if (degree > module.max_depth())
    raise(ErrorCode::DepthExceeded, "degree beyond the module's max depth");
  std::uint64_t cells = 1;
  for (int i = 0; i < degree; ++i) {
    cells *= static_cast<std::uint64_t>(module.alphabet().size());
    if (cells > budget) {
      raise(ErrorCode::BudgetExceeded,
            "m^degree exceeds the prefix budget of " + std::to_string(budget));
    }
  }

  const std::vector<Prefix> prefixes = enumerate_prefixes(module.alphabet(), degree);
  std::vector<SetDescriptor> cell_sets;
  cell_sets.reserve(prefixes.size());
  for (const Prefix& p : prefixes) cell_sets.push_back(module.cell(p));

  SeparationReport report;
  report.degree = degree;
  report.epsilon = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < prefixes.size(); ++i) {
    double best = -1.0;
    std::size_t best_j = i;
    for (std::size_t j = 0; j < prefixes.size(); ++j) {
      const double d = set_distance(cell_sets[i], cell_sets[j]);
      if (d > best) {
        best = d;
        best_j = j;
      }
    }
    report.witnesses.push_back({prefixes[i], prefixes[best_j], best});
    report.epsilon = std::min(report.epsilon, best);
  }
  return report;
}

namespace {

Certificate run_certificate(const ModularStructure& structure, int j_lo, int j_hi,
                            const std::vector<int>& depths, int degree,
                            double threshold, std::uint64_t budget, bool strong) {
  if (depths.empty())
    raise(ErrorCode::InvalidArgument, "at least one depth is required");
  if (j_lo < structure.range_lo() || j_hi > structure.range_hi() || j_lo > j_hi)
    raise(ErrorCode::InvalidArgument, "module range outside the structure's hint");

  const int max_depth = *std::max_element(depths.begin(), depths.end());

  Certificate cert;
  cert.j_lo = j_lo;
  cert.j_hi = j_hi;
  cert.depth = max_depth;
  cert.degree = degree;
  cert.threshold = threshold;
  cert.strong = strong;
  cert.sup_diameter_by_depth.assign(static_cast<std::size_t>(max_depth) + 1, 0.0);
  cert.nesting_ok = true;
  cert.epsilon0 = std::numeric_limits<double>::infinity();

  bool all_diam = true;
  for (int j = j_lo; j <= j_hi; ++j) {
    const ModuleSpace module = structure.module_at(j);
    ModuleSummary summary;
    summary.index = j;
    summary.nesting_ok = check_nesting(module, max_depth).ok;
    summary.diameters = diameter_report(module, max_depth, threshold);
    summary.separation = separation_report(module, degree, budget);

    cert.nesting_ok = cert.nesting_ok && summary.nesting_ok;
    all_diam = all_diam && summary.diameters.verdict;
    for (std::size_t d = 0; d < cert.sup_diameter_by_depth.size(); ++d) {
      cert.sup_diameter_by_depth[d] = std::max(
          cert.sup_diameter_by_depth[d], summary.diameters.max_diameter_by_depth[d]);
    }
    if (summary.separation.epsilon < cert.epsilon0) {
      cert.epsilon0 = summary.separation.epsilon;
      cert.epsilon0_module = j;
    }
    cert.modules.push_back(std::move(summary));
  }

  if (strong) {
    bool noninc = true;
    for (std::size_t d = 1; d < cert.sup_diameter_by_depth.size(); ++d) {
      if (cert.sup_diameter_by_depth[d] >
          cert.sup_diameter_by_depth[d - 1] + kDefaultTolerance)
        noninc = false;
    }
    cert.diameter_ok = all_diam && noninc &&
                       cert.sup_diameter_by_depth.back() <= threshold;
  } else {
    cert.diameter_ok = all_diam;
  }
  cert.separation_ok = cert.epsilon0 > 0.0;
  cert.verdict = cert.nesting_ok && cert.diameter_ok && cert.separation_ok;
  cert.statement =
      std::string(strong ? "strong " : "") + "modular chaotic structure evidence for modules " +
      std::to_string(j_lo) + ".." + std::to_string(j_hi) + " at depth " +
      std::to_string(max_depth) + ", separation degree " + std::to_string(degree) +
      "; finite-range check only, no claim beyond the stated range";
  return cert;
}

}  // namespace

Certificate modular_certificate(const ModularStructure& structure, int j_lo,
                                int j_hi, int depth, int degree, double threshold,
                                std::uint64_t budget) {
  if (depth < 1) raise(ErrorCode::InvalidArgument, "depth must be >= 1");
  return run_certificate(structure, j_lo, j_hi, {depth}, degree, threshold, budget,
                         /*strong=*/false);
}

Certificate strong_certificate(const ModularStructure& structure, int j_lo,
                               int j_hi, const std::vector<int>& depths,
                               double threshold, int degree, std::uint64_t budget) {
  for (int d : depths) {
    if (d < 1) raise(ErrorCode::InvalidArgument, "depths must be >= 1");
  }
  return run_certificate(structure, j_lo, j_hi, depths, degree, threshold, budget,
                         /*strong=*/true);
}

}  // namespace modchaos
