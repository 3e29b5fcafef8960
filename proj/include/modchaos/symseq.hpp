#pragma once

// Symbol sequences over the alphabet {1..m}: lazily evaluated infinite
// sequences, the shift, the sigma-metric with rigorous truncation bounds,
// and the generators used by the chaos witnesses (periodic blocks, the
// lexicographic universal sequence, scrambled pairs).

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "modchaos/error.hpp"

namespace modchaos {

using Symbol = int;  // 1-based, in {1..m}

class Alphabet {
public:
  explicit Alphabet(int m) : m_(m) {
    if (m < 2) raise(ErrorCode::InvalidArgument, "alphabet size must be at least 2");
  }

  int size() const noexcept { return m_; }
  bool contains(Symbol s) const noexcept { return s >= 1 && s <= m_; }
  bool operator==(const Alphabet& o) const noexcept { return m_ == o.m_; }
  bool operator!=(const Alphabet& o) const noexcept { return m_ != o.m_; }

private:
  int m_;
};

// Bounds on a partially computed distance. lo == hi means the value is exact.
struct MetricInterval {
  double lo = 0.0;
  double hi = 0.0;

  bool exact() const noexcept { return lo == hi; }
  bool contains(double v) const noexcept { return lo <= v && v <= hi; }
};

/// An immutable symbol sequence. Copies are cheap (shared internals) and
/// instances are safe to share across threads.
class SymbolSeq {
public:
  enum class Kind { EventuallyPeriodic, GeneratorBacked, FinitePrefix };

  /// prefix then endless repetitions of block. Block must be nonempty.
  static SymbolSeq eventually_periodic(Alphabet alphabet,
                                       std::vector<Symbol> prefix,
                                       std::vector<Symbol> block);

  /// Purely periodic repetitions of block.
  static SymbolSeq periodic(Alphabet alphabet, std::vector<Symbol> block);

  /// Exactly the given symbols; reads past the horizon raise HorizonExceeded,
  /// never a fabricated symbol.
  static SymbolSeq finite_prefix(Alphabet alphabet, std::vector<Symbol> symbols);

  /// Backed by a pure generator function (1-based position -> symbol).
  /// The function must be deterministic; it may be called concurrently.
  static SymbolSeq from_generator(Alphabet alphabet, std::string name,
                                  std::function<Symbol(std::uint64_t)> fn);

  Kind kind() const noexcept;
  Alphabet alphabet() const noexcept;

  /// Symbol at 1-based position k.
  Symbol at(std::uint64_t k) const;

  /// Drop the first n symbols. Eventually periodic input stays eventually
  /// periodic; a finite prefix must have horizon >= n.
  SymbolSeq shifted(std::uint64_t n) const;

  /// Number of available symbols for FinitePrefix; nullopt otherwise.
  std::optional<std::uint64_t> horizon() const noexcept;

  bool is_eventually_periodic() const noexcept {
    return kind() == Kind::EventuallyPeriodic;
  }

  // EventuallyPeriodic accessors (InvalidArgument on other kinds).
  const std::vector<Symbol>& ep_prefix() const;
  const std::vector<Symbol>& ep_block() const;

  /// Generator name ("" unless GeneratorBacked).
  const std::string& generator_name() const;

  struct Impl;

private:
  explicit SymbolSeq(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// symbol_at(seq, k) — 1-based read, identical to seq.at(k).
inline Symbol symbol_at(const SymbolSeq& seq, std::uint64_t k) { return seq.at(k); }

/// shift(seq, n) — the Bernoulli shift applied n times.
inline SymbolSeq shift(const SymbolSeq& seq, std::uint64_t n) { return seq.shifted(n); }

/// Periodic sequence from a block; symbols validated against the alphabet.
SymbolSeq make_periodic(Alphabet alphabet, const std::vector<Symbol>& block);

/// d(s,t) = sum_k |s_k - t_k| / 2^(k-1), truncated at `horizon` terms with the
/// exact worst-case geometric tail bound (m-1) * 2^-(horizon-1). When both
/// inputs are eventually periodic the exact value is returned (lo == hi) via
/// closed-form summation over one combined period.
MetricInterval sigma_distance(const SymbolSeq& a, const SymbolSeq& b,
                              std::uint64_t horizon);

/// The concatenation of all words over {1..m} of length 1, 2, 3, ... in
/// lexicographic order. Every finite word occurs; used as the concrete
/// unpredictable-point candidate.
SymbolSeq universal_sequence(Alphabet alphabet);

/// Total length of the universal construction through words of length maxLen,
/// i.e. sum of len * m^len. Every word of length <= maxLen occurs within it.
std::uint64_t universal_construction_length(Alphabet alphabet, int max_len);

/// Smallest 1-based start position of `word` in seq, searching start
/// positions 1 .. horizon - |word| + 1. For finite sequences the scan is
/// clamped to the available symbols.
std::optional<std::uint64_t> contains_word(const SymbolSeq& seq,
                                           const std::vector<Symbol>& word,
                                           std::uint64_t horizon);

/// Block-length schedule for scrambled pairs; n = 0, 1, 2, ...
using BlockSchedule = std::function<std::uint64_t(int)>;

BlockSchedule default_block_schedule();  // 2^n

/// Two non-periodic sequences that agree on blocks of scheduled lengths and
/// disagree at the single position following each block, giving infinitely
/// many agreements and separations by construction.
std::pair<SymbolSeq, SymbolSeq> scrambled_pair(Alphabet alphabet,
                                               BlockSchedule schedule = {});

/// 1-based positions where the scrambled pair disagrees, up to horizon.
std::vector<std::uint64_t> scrambled_disagreement_positions(
    std::uint64_t horizon, const BlockSchedule& schedule = {});

/// Largest L <= horizon with a_k == b_k for all k <= L (clamped to available
/// symbols for finite sequences).
std::uint64_t agreement_prefix_length(const SymbolSeq& a, const SymbolSeq& b,
                                      std::uint64_t horizon);

}  // namespace modchaos
