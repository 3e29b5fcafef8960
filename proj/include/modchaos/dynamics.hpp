#pragma once

// The modular similarity map phi (drop one label symbol, advance the module
// index), neighborhood predicates by indexing, and constructive finite-horizon
// witnesses for sensitivity, transitivity, periodic density, unpredictability,
// and Li-Yorke pair behavior.

#include <cstdint>
#include <optional>
#include <vector>

#include "modchaos/structure.hpp"
#include "modchaos/symseq.hpp"

namespace modchaos {

/// A labeled point of the union: module index plus label sequence.
struct ModularPoint {
  int module = 1;
  SymbolSeq seq;

  ModularPoint(int module_index, SymbolSeq sequence)
      : module(module_index), seq(std::move(sequence)) {
    if (module < 1) raise(ErrorCode::InvalidArgument, "module index must be >= 1");
  }
};

/// phi: (j, i1 i2 i3 ...) -> (j+1, i2 i3 ...).
ModularPoint phi(const ModularPoint& p);

/// n-fold phi; the lower and upper index shifts are equal (affine property).
ModularPoint phi_n(const ModularPoint& p, std::uint64_t n);

/// Cell of module p.module at the first `depth` label symbols; approximates
/// the labeled point within that cell's diameter.
SetDescriptor point_value(const ModularStructure& structure, const ModularPoint& p,
                          int depth);

/// Sound bracket for delta between two labeled points of one module,
/// computed from depth-limited cells: [cell distance, cell distance + both
/// diameters]. The lower bound is safe for separation claims, the upper for
/// proximity claims.
MetricInterval point_distance(const ModularStructure& structure,
                              const ModularPoint& a, const ModularPoint& b,
                              int depth);

/// Closeness by indexing: a.module + k == b.module and a's symbols
/// k+1 .. k+len equal b's symbols 1 .. len.
bool in_km_neighborhood(const ModularPoint& a, const ModularPoint& b,
                        std::uint64_t k, std::uint64_t len);

/// Empirical probe of the similarity order: applies phi n times to the points
/// extending a depth-n prefix and compares the landing cells, at truncation
/// depth n, against candidate target modules j+n and j+n+1.
struct AffineSimilarityReport {
  int j_start = 0;
  Prefix prefix;
  int order = 0;                      // n = |prefix|
  bool covers_shift_n = false;        // image cells == cells of module j+n
  bool covers_shift_n_plus_1 = false; // image cells == cells of module j+n+1
};

AffineSimilarityReport verify_affine_similarity(const ModularStructure& structure,
                                                const Prefix& prefix, int j_start,
                                                std::uint64_t budget = kDefaultPrefixBudget);

struct SensitivityWitness {
  ModularPoint base;
  ModularPoint companion;
  int shared_prefix_len = 0;
  std::uint64_t iterate = 0;
  double initial_distance_upper = 0.0;
  double separated_distance_lower = 0.0;
  bool revalidated = false;
};

/// Constructive sensitivity search following the separation-condition recipe:
/// keep a prefix long enough that the shared cell is smaller than kappa, then
/// continue with the separation witness of the shifted prefix. Requires a
/// certificate with positive epsilon0.
std::optional<SensitivityWitness> find_sensitivity_witness(
    const ModularStructure& structure, const Certificate& certificate,
    const ModularPoint& p, double kappa, int max_shared_prefix = 64);

struct TransitivityWitness {
  std::uint64_t shift = 0;       // iterations of phi
  int landing_module = 0;        // source.module + shift
  ModularPoint landing;
  bool revalidated = false;
};

/// Finds the shift taking the source orbit into the (shift, |target|)
/// neighborhood of the target prefix; scans the source sequence to `budget`.
std::optional<TransitivityWitness> find_transitivity_witness(
    const ModularStructure& structure, const ModularPoint& source,
    const Prefix& target_prefix, std::uint64_t budget);

/// Periodic point at module target.module - offset whose orbit reaches the
/// target's first `len` symbols after `offset` steps; period is `len` (the
/// block is the target's leading symbols, phase-aligned to the offset).
ModularPoint periodic_point_in_neighborhood(const ModularPoint& target,
                                            std::uint64_t len,
                                            std::uint64_t module_offset);

struct UnpredictabilityEntry {
  std::uint64_t kappa = 0;   // recurrence shift
  std::uint64_t matched = 0; // prefix length reproduced at the shift
  std::uint64_t zeta = 0;    // shifted and original differ at kappa + zeta
};

struct UnpredictabilityResult {
  std::vector<UnpredictabilityEntry> entries;   // strictly increasing kappa
  std::vector<std::uint64_t> not_found;         // prefix lengths with no entry
  bool complete() const { return not_found.empty(); }
};

/// For each l in the schedule, searches for a shift kappa reproducing the
/// first l symbols together with a later mismatch position kappa + zeta.
/// Ties break toward the smallest kappa, then the smallest zeta.
UnpredictabilityResult check_unpredictability(const ModularPoint& p,
                                              const std::vector<std::uint64_t>& l_schedule,
                                              std::uint64_t horizon);

struct LiYorkeEvent {
  std::uint64_t iterate = 0;
  double distance = 0.0;  // upper bound for proximal, lower bound for separated
};

struct LiYorkeReport {
  std::uint64_t horizon = 0;
  double kappa = 0.0;
  double eps = 0.0;
  std::vector<LiYorkeEvent> proximal;
  std::vector<LiYorkeEvent> separated;
};

/// Scans iterates 1..horizon of a pair started in one module, recording
/// proximal events (distance upper bound < kappa) and separated events
/// (distance lower bound >= eps).
LiYorkeReport liyorke_report(const ModularStructure& structure,
                             const Certificate& certificate, const ModularPoint& a,
                             const ModularPoint& b, std::uint64_t horizon,
                             double kappa, double eps, int depth = 8);

}  // namespace modchaos
