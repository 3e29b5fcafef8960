#include "modchaos/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace modchaos {

ModularPoint phi(const ModularPoint& p) {
  return ModularPoint(p.module + 1, p.seq.shifted(1));
}

ModularPoint phi_n(const ModularPoint& p, std::uint64_t n) {
  return ModularPoint(p.module + static_cast<int>(n), p.seq.shifted(n));
}

SetDescriptor point_value(const ModularStructure& structure, const ModularPoint& p,
                          int depth) {
  if (depth < 0) raise(ErrorCode::InvalidArgument, "depth must be >= 0");
  Prefix prefix;
  prefix.reserve(static_cast<std::size_t>(depth));
  for (int k = 1; k <= depth; ++k) prefix.push_back(p.seq.at(static_cast<std::uint64_t>(k)));
  return structure.module_at(p.module).cell(prefix);
}

MetricInterval point_distance(const ModularStructure& structure,
                              const ModularPoint& a, const ModularPoint& b,
                              int depth) {
  if (a.module != b.module)
    raise(ErrorCode::ModuleMismatch, "delta is defined within one module");
  const SetDescriptor ca = point_value(structure, a, depth);
  const SetDescriptor cb = point_value(structure, b, depth);
  const double d = set_distance(ca, cb);
  return MetricInterval{d, d + ca.diameter() + cb.diameter()};
}

bool in_km_neighborhood(const ModularPoint& a, const ModularPoint& b,
                        std::uint64_t k, std::uint64_t len) {
  if (len < 1) raise(ErrorCode::InvalidArgument, "neighborhood length must be >= 1");
  if (a.module + static_cast<int>(k) != b.module) return false;
  for (std::uint64_t i = 1; i <= len; ++i) {
    if (a.seq.at(k + i) != b.seq.at(i)) return false;
  }
  return true;
}

AffineSimilarityReport verify_affine_similarity(const ModularStructure& structure,
                                                const Prefix& prefix, int j_start,
                                                std::uint64_t budget) {
  const int n = static_cast<int>(prefix.size());
  const Alphabet alphabet = structure.alphabet();
  std::uint64_t extensions = 1;
  for (int i = 0; i < n; ++i) {
    extensions *= static_cast<std::uint64_t>(alphabet.size());
    if (extensions > budget)
      raise(ErrorCode::BudgetExceeded, "m^n extensions exceed the budget");
  }

  AffineSimilarityReport report;
  report.j_start = j_start;
  report.prefix = prefix;
  report.order = n;

  // Landing cells at truncation depth n after n applications of phi to the
  // points whose label extends the prefix: one cell per extension word.
  std::vector<SetDescriptor> image;
  if (n == 0) {
    ModularPoint p(j_start, SymbolSeq::periodic(alphabet, {1}));
    image.push_back(point_value(structure, p, 0));
  } else {
    for (const Prefix& w : enumerate_prefixes(alphabet, n)) {
      Prefix label = prefix;
      label.insert(label.end(), w.begin(), w.end());
      ModularPoint p(j_start, SymbolSeq::eventually_periodic(alphabet, label, w));
      image.push_back(point_value(structure, phi_n(p, static_cast<std::uint64_t>(n)), n));
    }
  }

  auto covers_module = [&](int target_module) {
    if (structure.max_module() && target_module > *structure.max_module()) return false;
    std::vector<SetDescriptor> target;
    for (const Prefix& w : enumerate_prefixes(alphabet, n))
      target.push_back(structure.module_at(target_module).cell(w));
    if (n == 0) target.push_back(structure.module_at(target_module).cell(Prefix{}));
    auto covered = [](const std::vector<SetDescriptor>& xs,
                      const std::vector<SetDescriptor>& ys) {
      for (const auto& x : xs) {
        bool hit = false;
        for (const auto& y : ys) {
          if (descriptor_equal(x, y)) {
            hit = true;
            break;
          }
        }
        if (!hit) return false;
      }
      return true;
    };
    return covered(image, target) && covered(target, image);
  };

  report.covers_shift_n = covers_module(j_start + n);
  report.covers_shift_n_plus_1 = covers_module(j_start + n + 1);
  return report;
}

std::optional<SensitivityWitness> find_sensitivity_witness(
    const ModularStructure& structure, const Certificate& certificate,
    const ModularPoint& p, double kappa, int max_shared_prefix) {
  if (!(certificate.epsilon0 > 0.0))
    raise(ErrorCode::InvalidArgument,
          "sensitivity search requires a certificate with positive epsilon0");
  if (!(kappa > 0.0)) raise(ErrorCode::InvalidArgument, "kappa must be positive");

  const ModuleSpace base_module = structure.module_at(p.module);
  const int degree = certificate.degree;

  // Shared prefix length k: the depth-k cell through p must be smaller than
  // kappa (both points then sit in one cell, so their distance upper bound is
  // twice its diameter).
  int shared = -1;
  for (int k = 0; k <= std::min(max_shared_prefix, base_module.max_depth()); ++k) {
    Prefix prefix;
    for (int i = 1; i <= k; ++i) prefix.push_back(p.seq.at(static_cast<std::uint64_t>(i)));
    if (2.0 * base_module.cell(prefix).diameter() < kappa) {
      shared = k;
      break;
    }
  }
  if (shared < 0) return std::nullopt;

  // At module p.module + shared, pick the separation partner of the shifted
  // prefix; the companion follows p for `shared` symbols and the partner after.
  const int landing_module_index = p.module + shared;
  const ModuleSpace landing = structure.module_at(landing_module_index);
  const SeparationReport separation = separation_report(landing, degree);

  Prefix shifted_prefix;
  for (int i = 1; i <= degree; ++i)
    shifted_prefix.push_back(p.seq.at(static_cast<std::uint64_t>(shared + i)));
  const SeparationWitness* witness = nullptr;
  for (const auto& w : separation.witnesses) {
    if (w.prefix == shifted_prefix) {
      witness = &w;
      break;
    }
  }
  if (witness == nullptr || !(witness->distance > 0.0)) return std::nullopt;

  Prefix companion_prefix;
  for (int i = 1; i <= shared; ++i)
    companion_prefix.push_back(p.seq.at(static_cast<std::uint64_t>(i)));
  companion_prefix.insert(companion_prefix.end(), witness->partner.begin(),
                          witness->partner.end());
  ModularPoint companion(
      p.module, SymbolSeq::eventually_periodic(structure.alphabet(), companion_prefix,
                                               witness->partner));

  SensitivityWitness out{p, companion, shared, static_cast<std::uint64_t>(shared),
                         0.0, 0.0, false};
  out.initial_distance_upper = point_distance(structure, p, companion, shared).hi;
  out.separated_distance_lower =
      point_distance(structure, phi_n(p, static_cast<std::uint64_t>(shared)),
                     phi_n(companion, static_cast<std::uint64_t>(shared)), degree)
          .lo;
  out.revalidated = out.initial_distance_upper < kappa &&
                    out.separated_distance_lower >= certificate.epsilon0;
  if (!out.revalidated) return std::nullopt;
  return out;
}

std::optional<TransitivityWitness> find_transitivity_witness(
    const ModularStructure& structure, const ModularPoint& source,
    const Prefix& target_prefix, std::uint64_t budget) {
  if (target_prefix.empty())
    raise(ErrorCode::InvalidArgument, "target prefix must be nonempty");
  for (Symbol s : target_prefix) {
    if (!structure.alphabet().contains(s))
      raise(ErrorCode::SymbolOutOfRange, "target prefix symbol outside the alphabet");
  }

  const auto pos = contains_word(source.seq, target_prefix, budget);
  if (!pos) return std::nullopt;
  const std::uint64_t shift_count = *pos - 1;

  TransitivityWitness w{shift_count,
                        source.module + static_cast<int>(shift_count),
                        phi_n(source, shift_count), false};
  ModularPoint target(w.landing_module,
                      SymbolSeq::eventually_periodic(structure.alphabet(), {},
                                                     target_prefix));
  w.revalidated = in_km_neighborhood(source, target, shift_count,
                                     target_prefix.size());
  return w;
}

ModularPoint periodic_point_in_neighborhood(const ModularPoint& target,
                                            std::uint64_t len,
                                            std::uint64_t module_offset) {
  if (len < 1) raise(ErrorCode::InvalidArgument, "len must be >= 1");
  if (module_offset > static_cast<std::uint64_t>(target.module) - 1)
    raise(ErrorCode::InvalidOffset, "offset would leave the module range");

  std::vector<Symbol> head;
  head.reserve(len);
  for (std::uint64_t i = 1; i <= len; ++i) head.push_back(target.seq.at(i));

  // Phase-align the block so the target's leading symbols appear exactly
  // module_offset positions into the periodic orbit.
  std::vector<Symbol> block(head.size());
  for (std::uint64_t k = 0; k < len; ++k) {
    block[static_cast<std::size_t>((k + module_offset) % len)] =
        head[static_cast<std::size_t>(k)];
  }
  return ModularPoint(target.module - static_cast<int>(module_offset),
                      SymbolSeq::periodic(target.seq.alphabet(), block));
}

UnpredictabilityResult check_unpredictability(const ModularPoint& p,
                                              const std::vector<std::uint64_t>& l_schedule,
                                              std::uint64_t horizon) {
  UnpredictabilityResult result;
  std::uint64_t kappa_floor = 1;
  for (std::uint64_t l : l_schedule) {
    if (l < 1) raise(ErrorCode::InvalidArgument, "prefix lengths must be >= 1");
    bool found = false;
    for (std::uint64_t kappa = kappa_floor; !found && 2 * kappa + 1 <= horizon; ++kappa) {
      bool recurs = true;
      for (std::uint64_t s = 1; s <= l; ++s) {
        if (kappa + s > horizon || p.seq.at(kappa + s) != p.seq.at(s)) {
          recurs = false;
          break;
        }
      }
      if (!recurs) continue;
      // Mismatch between the shifted and original sequence at kappa + zeta.
      for (std::uint64_t zeta = 1; 2 * kappa + zeta <= horizon; ++zeta) {
        if (p.seq.at(kappa + zeta) != p.seq.at(2 * kappa + zeta)) {
          result.entries.push_back({kappa, l, zeta});
          kappa_floor = kappa + 1;
          found = true;
          break;
        }
      }
    }
    if (!found) result.not_found.push_back(l);
  }
  return result;
}

LiYorkeReport liyorke_report(const ModularStructure& structure,
                             const Certificate& certificate, const ModularPoint& a,
                             const ModularPoint& b, std::uint64_t horizon,
                             double kappa, double eps, int depth) {
  if (a.module != b.module)
    raise(ErrorCode::ModuleMismatch, "the pair must start in one module");
  if (!certificate.verdict)
    raise(ErrorCode::InvalidArgument, "li-yorke scan requires a certified structure");

  LiYorkeReport report;
  report.horizon = horizon;
  report.kappa = kappa;
  report.eps = eps;

  for (std::uint64_t k = 1; k <= horizon; ++k) {
    const ModularPoint pa = phi_n(a, k);
    const ModularPoint pb = phi_n(b, k);
    const ModuleSpace module = structure.module_at(pa.module);
    const int max_depth = std::min(depth, module.max_depth());

    // Agreement depth of the shifted labels bounds the useful cell depth.
    std::uint64_t agree = 0;
    while (agree < static_cast<std::uint64_t>(max_depth) &&
           pa.seq.at(agree + 1) == pb.seq.at(agree + 1)) {
      ++agree;
    }
    const int probe_depth = agree > 0 ? static_cast<int>(agree)
                                      : std::min(max_depth, certificate.degree);
    const MetricInterval d = point_distance(structure, pa, pb, probe_depth);
    if (d.hi < kappa) report.proximal.push_back({k, d.hi});
    if (d.lo >= eps) report.separated.push_back({k, d.lo});
  }
  return report;
}

}  // namespace modchaos
