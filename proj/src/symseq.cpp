#include "modchaos/symseq.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace modchaos {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::HorizonExceeded: return "HorizonExceeded";
    case ErrorCode::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorCode::SymbolOutOfRange: return "SymbolOutOfRange";
    case ErrorCode::EmptyBlock: return "EmptyBlock";
    case ErrorCode::DepthExceeded: return "DepthExceeded";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::IncompatibleDescriptors: return "IncompatibleDescriptors";
    case ErrorCode::ModuleMismatch: return "ModuleMismatch";
    case ErrorCode::InvalidOffset: return "InvalidOffset";
    case ErrorCode::RangesOverlap: return "RangesOverlap";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

struct SymbolSeq::Impl {
  SymbolSeq::Kind kind;
  Alphabet alphabet;

  // EventuallyPeriodic
  std::vector<Symbol> prefix;
  std::vector<Symbol> block;

  // GeneratorBacked: pure function of the 1-based absolute position.
  std::string gen_name;
  std::function<Symbol(std::uint64_t)> gen_fn;
  std::uint64_t gen_offset = 0;

  // FinitePrefix: view [fin_offset, fin_offset + fin_len) into *fin.
  std::shared_ptr<const std::vector<Symbol>> fin;
  std::uint64_t fin_offset = 0;
  std::uint64_t fin_len = 0;

  explicit Impl(SymbolSeq::Kind k, Alphabet a) : kind(k), alphabet(a) {}
};

namespace {

void check_symbols(const Alphabet& alphabet, const std::vector<Symbol>& symbols,
                   const char* what) {
  for (Symbol s : symbols) {
    if (!alphabet.contains(s)) {
      raise(ErrorCode::SymbolOutOfRange,
            std::string(what) + ": symbol " + std::to_string(s) +
                " outside {1.." + std::to_string(alphabet.size()) + "}");
    }
  }
}

}  // namespace

SymbolSeq SymbolSeq::eventually_periodic(Alphabet alphabet,
                                         std::vector<Symbol> prefix,
                                         std::vector<Symbol> block) {
  if (block.empty()) raise(ErrorCode::EmptyBlock, "periodic block must be nonempty");
  check_symbols(alphabet, prefix, "prefix");
  check_symbols(alphabet, block, "block");
  auto impl = std::make_shared<Impl>(Kind::EventuallyPeriodic, alphabet);
  impl->prefix = std::move(prefix);
  impl->block = std::move(block);
  return SymbolSeq(std::move(impl));
}

SymbolSeq SymbolSeq::periodic(Alphabet alphabet, std::vector<Symbol> block) {
  return eventually_periodic(alphabet, {}, std::move(block));
}

SymbolSeq SymbolSeq::finite_prefix(Alphabet alphabet, std::vector<Symbol> symbols) {
  check_symbols(alphabet, symbols, "finite prefix");
  auto impl = std::make_shared<Impl>(Kind::FinitePrefix, alphabet);
  impl->fin_len = symbols.size();
  impl->fin = std::make_shared<const std::vector<Symbol>>(std::move(symbols));
  return SymbolSeq(std::move(impl));
}

SymbolSeq SymbolSeq::from_generator(Alphabet alphabet, std::string name,
                                    std::function<Symbol(std::uint64_t)> fn) {
  if (!fn) raise(ErrorCode::InvalidArgument, "generator function must be callable");
  auto impl = std::make_shared<Impl>(Kind::GeneratorBacked, alphabet);
  impl->gen_name = std::move(name);
  impl->gen_fn = std::move(fn);
  return SymbolSeq(std::move(impl));
}

SymbolSeq::Kind SymbolSeq::kind() const noexcept { return impl_->kind; }

Alphabet SymbolSeq::alphabet() const noexcept { return impl_->alphabet; }

Symbol SymbolSeq::at(std::uint64_t k) const {
  if (k < 1) raise(ErrorCode::InvalidArgument, "positions are 1-based");
  const Impl& im = *impl_;
  switch (im.kind) {
    case Kind::EventuallyPeriodic: {
      const std::uint64_t np = im.prefix.size();
      if (k <= np) return im.prefix[k - 1];
      return im.block[(k - 1 - np) % im.block.size()];
    }
    case Kind::GeneratorBacked: {
      Symbol s = im.gen_fn(im.gen_offset + k);
      if (!im.alphabet.contains(s)) {
        raise(ErrorCode::SymbolOutOfRange,
              "generator '" + im.gen_name + "' produced out-of-range symbol");
      }
      return s;
    }
    case Kind::FinitePrefix: {
      if (k > im.fin_len) {
        raise(ErrorCode::HorizonExceeded,
              "position " + std::to_string(k) + " beyond horizon " +
                  std::to_string(im.fin_len));
      }
      return (*im.fin)[im.fin_offset + k - 1];
    }
  }
  raise(ErrorCode::Internal, "unreachable");
}

SymbolSeq SymbolSeq::shifted(std::uint64_t n) const {
  if (n == 0) return *this;
  const Impl& im = *impl_;
  switch (im.kind) {
    case Kind::EventuallyPeriodic: {
      const std::uint64_t np = im.prefix.size();
      const std::uint64_t p = im.block.size();
      auto impl = std::make_shared<Impl>(Kind::EventuallyPeriodic, im.alphabet);
      if (n < np) {
        impl->prefix.assign(im.prefix.begin() + static_cast<std::ptrdiff_t>(n),
                            im.prefix.end());
        impl->block = im.block;
      } else {
        const std::uint64_t r = (n - np) % p;
        impl->block.reserve(p);
        for (std::uint64_t i = 0; i < p; ++i) {
          impl->block.push_back(im.block[(r + i) % p]);
        }
      }
      return SymbolSeq(std::move(impl));
    }
    case Kind::GeneratorBacked: {
      auto impl = std::make_shared<Impl>(Kind::GeneratorBacked, im.alphabet);
      impl->gen_name = im.gen_name;
      impl->gen_fn = im.gen_fn;
      impl->gen_offset = im.gen_offset + n;
      return SymbolSeq(std::move(impl));
    }
    case Kind::FinitePrefix: {
      if (n > im.fin_len) {
        raise(ErrorCode::HorizonExceeded,
              "cannot shift a horizon-" + std::to_string(im.fin_len) +
                  " prefix by " + std::to_string(n));
      }
      auto impl = std::make_shared<Impl>(Kind::FinitePrefix, im.alphabet);
      impl->fin = im.fin;
      impl->fin_offset = im.fin_offset + n;
      impl->fin_len = im.fin_len - n;
      return SymbolSeq(std::move(impl));
    }
  }
  raise(ErrorCode::Internal, "unreachable");
}

std::optional<std::uint64_t> SymbolSeq::horizon() const noexcept {
  if (impl_->kind == Kind::FinitePrefix) return impl_->fin_len;
  return std::nullopt;
}

const std::vector<Symbol>& SymbolSeq::ep_prefix() const {
  if (impl_->kind != Kind::EventuallyPeriodic)
    raise(ErrorCode::InvalidArgument, "not an eventually periodic sequence");
  return impl_->prefix;
}

const std::vector<Symbol>& SymbolSeq::ep_block() const {
  if (impl_->kind != Kind::EventuallyPeriodic)
    raise(ErrorCode::InvalidArgument, "not an eventually periodic sequence");
  return impl_->block;
}

const std::string& SymbolSeq::generator_name() const { return impl_->gen_name; }

SymbolSeq make_periodic(Alphabet alphabet, const std::vector<Symbol>& block) {
  return SymbolSeq::periodic(alphabet, block);
}

namespace {

// Exact distance for an eventually periodic pair. Past the longer prefix the
// symbol difference is periodic with the lcm period, so the tail collapses to
// one geometric factor. Terms below double underflow contribute exactly 0.
MetricInterval exact_ep_distance(const SymbolSeq& a, const SymbolSeq& b) {
  const std::uint64_t la = a.ep_prefix().size();
  const std::uint64_t lb = b.ep_prefix().size();
  const std::uint64_t L = std::max(la, lb);
  const std::uint64_t P = std::lcm<std::uint64_t>(a.ep_block().size(),
                                                  b.ep_block().size());

  double head = 0.0;
  for (std::uint64_t k = 1; k <= L; ++k) {
    const int diff = std::abs(a.at(k) - b.at(k));
    if (diff != 0 && k < 1100) head += diff * std::ldexp(1.0, -static_cast<int>(k - 1));
  }

  double cyc = 0.0;
  const std::uint64_t cyc_terms = std::min<std::uint64_t>(P, 1200);
  for (std::uint64_t r = 0; r < cyc_terms; ++r) {
    const std::uint64_t k = L + 1 + r;
    const int diff = std::abs(a.at(k) - b.at(k));
    if (diff != 0 && k < 1100) cyc += diff * std::ldexp(1.0, -static_cast<int>(k - 1));
  }
  double factor = 1.0;
  if (P < 54) factor = 1.0 / (1.0 - std::ldexp(1.0, -static_cast<int>(P)));
  const double exact = head + cyc * factor;
  return MetricInterval{exact, exact};
}

}  // namespace

MetricInterval sigma_distance(const SymbolSeq& a, const SymbolSeq& b,
                              std::uint64_t horizon) {
  if (a.alphabet() != b.alphabet())
    raise(ErrorCode::AlphabetMismatch, "sequences use different alphabets");
  if (horizon < 1) raise(ErrorCode::InvalidArgument, "horizon must be at least 1");

  if (a.is_eventually_periodic() && b.is_eventually_periodic())
    return exact_ep_distance(a, b);

  std::uint64_t h = horizon;
  if (auto ha = a.horizon()) h = std::min(h, *ha);
  if (auto hb = b.horizon()) h = std::min(h, *hb);
  if (h < 1) raise(ErrorCode::HorizonExceeded, "no symbols available");

  double lo = 0.0;
  for (std::uint64_t k = 1; k <= h; ++k) {
    const int diff = std::abs(a.at(k) - b.at(k));
    if (diff != 0 && k < 1100) lo += diff * std::ldexp(1.0, -static_cast<int>(k - 1));
  }
  const int m = a.alphabet().size();
  double tail = 0.0;
  if (h < 1100) tail = (m - 1) * std::ldexp(1.0, -static_cast<int>(h - 1));
  return MetricInterval{lo, lo + tail};
}

namespace {

// Universal sequence position arithmetic. Words of length len contribute
// len * m^len symbols; the word with 0-based rank w of length len is the
// base-m expansion of w, most significant digit first, digits + 1.
struct UniversalLocator {
  int m;

  Symbol symbol_at(std::uint64_t k) const {  // 1-based
    std::uint64_t remaining = k - 1;
    int len = 1;
    std::uint64_t section = static_cast<std::uint64_t>(m);  // m^len
    for (;;) {
      const std::uint64_t section_syms = section * static_cast<std::uint64_t>(len);
      if (remaining < section_syms) break;
      remaining -= section_syms;
      ++len;
      section *= static_cast<std::uint64_t>(m);
    }
    const std::uint64_t word_rank = remaining / static_cast<std::uint64_t>(len);
    const int pos_in_word = static_cast<int>(remaining % static_cast<std::uint64_t>(len));
    // digit at pos_in_word (0 = most significant) of word_rank in base m
    std::uint64_t div = 1;
    for (int i = 0; i < len - 1 - pos_in_word; ++i) div *= static_cast<std::uint64_t>(m);
    const int digit = static_cast<int>((word_rank / div) % static_cast<std::uint64_t>(m));
    return digit + 1;
  }
};

}  // namespace

SymbolSeq universal_sequence(Alphabet alphabet) {
  UniversalLocator loc{alphabet.size()};
  return SymbolSeq::from_generator(
      alphabet, "universal",
      [loc](std::uint64_t k) { return loc.symbol_at(k); });
}

std::uint64_t universal_construction_length(Alphabet alphabet, int max_len) {
  if (max_len < 1) raise(ErrorCode::InvalidArgument, "max_len must be positive");
  std::uint64_t total = 0;
  std::uint64_t power = 1;
  for (int len = 1; len <= max_len; ++len) {
    power *= static_cast<std::uint64_t>(alphabet.size());
    total += power * static_cast<std::uint64_t>(len);
  }
  return total;
}

std::optional<std::uint64_t> contains_word(const SymbolSeq& seq,
                                           const std::vector<Symbol>& word,
                                           std::uint64_t horizon) {
  if (word.empty()) raise(ErrorCode::InvalidArgument, "word must be nonempty");
  check_symbols(seq.alphabet(), word, "word");
  if (horizon < word.size())
    raise(ErrorCode::InvalidArgument, "horizon shorter than the word");

  std::uint64_t h = horizon;
  if (auto hs = seq.horizon()) h = std::min(h, *hs);
  if (h < word.size()) return std::nullopt;

  const std::uint64_t last_start = h - word.size() + 1;
  for (std::uint64_t p = 1; p <= last_start; ++p) {
    bool match = true;
    for (std::size_t i = 0; i < word.size(); ++i) {
      if (seq.at(p + i) != word[i]) {
        match = false;
        break;
      }
    }
    if (match) return p;
  }
  return std::nullopt;
}

BlockSchedule default_block_schedule() {
  return [](int n) { return std::uint64_t{1} << n; };
}

namespace {

// Layout of the scrambled pair: agreement block n (scheduled length) is
// followed by a single disagreement position.
bool is_disagreement_position(std::uint64_t k, const BlockSchedule& schedule) {
  std::uint64_t start = 1;
  for (int n = 0; n < 64; ++n) {
    const std::uint64_t len = schedule(n);
    const std::uint64_t dpos = start + len;
    if (k < dpos) return false;
    if (k == dpos) return true;
    start = dpos + 1;
  }
  return false;
}

}  // namespace

std::pair<SymbolSeq, SymbolSeq> scrambled_pair(Alphabet alphabet,
                                               BlockSchedule schedule) {
  if (!schedule) schedule = default_block_schedule();
  UniversalLocator loc{alphabet.size()};
  const int m = alphabet.size();

  auto base = [loc](std::uint64_t k) { return loc.symbol_at(k); };
  auto flipped = [loc, schedule, m](std::uint64_t k) {
    const Symbol s = loc.symbol_at(k);
    if (is_disagreement_position(k, schedule)) return (s % m) + 1;
    return s;
  };
  return {SymbolSeq::from_generator(alphabet, "scrambled-a", base),
          SymbolSeq::from_generator(alphabet, "scrambled-b", flipped)};
}

std::vector<std::uint64_t> scrambled_disagreement_positions(
    std::uint64_t horizon, const BlockSchedule& schedule) {
  const BlockSchedule& sched = schedule ? schedule : default_block_schedule();
  std::vector<std::uint64_t> out;
  std::uint64_t start = 1;
  for (int n = 0; n < 64; ++n) {
    const std::uint64_t dpos = start + sched(n);
    if (dpos > horizon) break;
    out.push_back(dpos);
    start = dpos + 1;
  }
  return out;
}

std::uint64_t agreement_prefix_length(const SymbolSeq& a, const SymbolSeq& b,
                                      std::uint64_t horizon) {
  if (a.alphabet() != b.alphabet())
    raise(ErrorCode::AlphabetMismatch, "sequences use different alphabets");
  std::uint64_t h = horizon;
  if (auto ha = a.horizon()) h = std::min(h, *ha);
  if (auto hb = b.horizon()) h = std::min(h, *hb);
  for (std::uint64_t k = 1; k <= h; ++k) {
    if (a.at(k) != b.at(k)) return k - 1;
  }
  return h;
}

}  // namespace modchaos
