#include "modchaos/modchaos.h"

#include <cstring>
#include <new>
#include <string>

#include "modchaos/driver.hpp"

using modchaos::Error;
using modchaos::ErrorCode;

struct mdc_seq {
  modchaos::SymbolSeq seq;
};

struct mdc_structure {
  modchaos::driver::System system;
};

struct mdc_result {
  std::string report;
  std::string csv;
  std::string svg;
  int exit_code = 0;
};

namespace {

thread_local std::string g_last_error;

mdc_status status_from(ErrorCode code) {
  return static_cast<mdc_status>(static_cast<int>(code));
}

template <typename Fn>
mdc_status guarded(Fn&& fn) {
  try {
    fn();
    return MDC_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_from(e.code());
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return MDC_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return MDC_ERR_OUT_OF_MEMORY;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return MDC_ERR_INTERNAL;
  }
}

mdc_status require(const void* p, const char* name) {
  if (p != nullptr) return MDC_OK;
  g_last_error = std::string(name) + " must not be NULL";
  return MDC_ERR_NULL_ARGUMENT;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::vector<modchaos::Symbol> to_symbols(const int* data, size_t len) {
  return std::vector<modchaos::Symbol>(data, data + len);
}

modchaos::Json parse_json(const char* text, const char* what) {
  const auto parsed = modchaos::Json::parse(text, nullptr, false);
  if (parsed.is_discarded())
    modchaos::raise(ErrorCode::ParseError, std::string("invalid JSON in ") + what);
  return parsed;
}

mdc_status run_command(mdc_result** out, modchaos::driver::CommandResult (*runner)(const modchaos::Json&),
                       const char* config_json) {
  if (auto s = require(config_json, "config_json"); s != MDC_OK) return s;
  if (auto s = require(out, "out"); s != MDC_OK) return s;
  return guarded([&] {
    const modchaos::Json config = parse_json(config_json, "config");
    modchaos::driver::CommandResult r = runner(config);
    auto* result = new mdc_result{r.report.dump(2) + "\n", std::move(r.csv),
                                  std::move(r.svg), r.exit_code};
    *out = result;
  });
}

}  // namespace

extern "C" {

const char* mdc_status_name(mdc_status status) {
  switch (status) {
    case MDC_OK: return "OK";
    case MDC_ERR_NULL_ARGUMENT: return "NullArgument";
    case MDC_ERR_OUT_OF_MEMORY: return "OutOfMemory";
    default:
      return modchaos::error_code_name(static_cast<ErrorCode>(static_cast<int>(status)));
  }
}

const char* mdc_version(void) { return "0.1.0"; }

const char* mdc_last_error(void) { return g_last_error.c_str(); }

void mdc_string_free(char* s) { delete[] s; }

mdc_status mdc_seq_periodic(int m, const int* block, size_t block_len, mdc_seq** out) {
  if (auto s = require(block, "block"); s != MDC_OK) return s;
  if (auto s = require(out, "out"); s != MDC_OK) return s;
  return guarded([&] {
    *out = new mdc_seq{modchaos::SymbolSeq::periodic(modchaos::Alphabet(m),
                                                     to_symbols(block, block_len))};
  });
}

mdc_status mdc_seq_eventually_periodic(int m, const int* prefix, size_t prefix_len,
                                       const int* block, size_t block_len,
                                       mdc_seq** out) {
  if (auto s = require(block, "block"); s != MDC_OK) return s;
  if (auto s = require(out, "out"); s != MDC_OK) return s;
  if (prefix == nullptr && prefix_len != 0) return require(prefix, "prefix");
  return guarded([&] {
    std::vector<modchaos::Symbol> pre =
        prefix ? to_symbols(prefix, prefix_len) : std::vector<modchaos::Symbol>{};
    *out = new mdc_seq{modchaos::SymbolSeq::eventually_periodic(
        modchaos::Alphabet(m), std::move(pre), to_symbols(block, block_len))};
  });
}

mdc_status mdc_seq_finite(int m, const int* symbols, size_t len, mdc_seq** out) {
  if (auto s = require(out, "out"); s != MDC_OK) return s;
  if (symbols == nullptr && len != 0) return require(symbols, "symbols");
  return guarded([&] {
    std::vector<modchaos::Symbol> syms =
        symbols ? to_symbols(symbols, len) : std::vector<modchaos::Symbol>{};
    *out = new mdc_seq{modchaos::SymbolSeq::finite_prefix(modchaos::Alphabet(m),
                                                          std::move(syms))};
  });
}

mdc_status mdc_seq_universal(int m, mdc_seq** out) {
  if (auto s = require(out, "out"); s != MDC_OK) return s;
  return guarded([&] {
    *out = new mdc_seq{modchaos::universal_sequence(modchaos::Alphabet(m))};
  });
}

mdc_status mdc_seq_at(const mdc_seq* seq, uint64_t k, int* out_symbol) {
  if (auto s = require(seq, "seq"); s != MDC_OK) return s;
  if (auto s = require(out_symbol, "out_symbol"); s != MDC_OK) return s;
  return guarded([&] { *out_symbol = seq->seq.at(k); });
}

mdc_status mdc_seq_shift(const mdc_seq* seq, uint64_t n, mdc_seq** out) {
  if (auto s = require(seq, "seq"); s != MDC_OK) return s;
  if (auto s = require(out, "out"); s != MDC_OK) return s;
  return guarded([&] { *out = new mdc_seq{seq->seq.shifted(n)}; });
}

mdc_status mdc_seq_sigma_distance(const mdc_seq* a, const mdc_seq* b,
                                  uint64_t horizon, double* lo, double* hi) {
  if (auto s = require(a, "a"); s != MDC_OK) return s;
  if (auto s = require(b, "b"); s != MDC_OK) return s;
  if (auto s = require(lo, "lo"); s != MDC_OK) return s;
  if (auto s = require(hi, "hi"); s != MDC_OK) return s;
  return guarded([&] {
    const modchaos::MetricInterval d = modchaos::sigma_distance(a->seq, b->seq, horizon);
    *lo = d.lo;
    *hi = d.hi;
  });
}

mdc_status mdc_seq_find_word(const mdc_seq* seq, const int* word, size_t word_len,
                             uint64_t horizon, uint64_t* out_position) {
  if (auto s = require(seq, "seq"); s != MDC_OK) return s;
  if (auto s = require(word, "word"); s != MDC_OK) return s;
  if (auto s = require(out_position, "out_position"); s != MDC_OK) return s;
  mdc_status status = guarded([&] {
    const auto pos = modchaos::contains_word(seq->seq, to_symbols(word, word_len), horizon);
    if (!pos) modchaos::raise(ErrorCode::NotFound, "word not found within the horizon");
    *out_position = *pos;
  });
  return status;
}

void mdc_seq_destroy(mdc_seq* seq) { delete seq; }

mdc_status mdc_structure_create(const char* structure_json, mdc_structure** out) {
  if (auto s = require(structure_json, "structure_json"); s != MDC_OK) return s;
  if (auto s = require(out, "out"); s != MDC_OK) return s;
  return guarded([&] {
    *out = new mdc_structure{
        modchaos::driver::build_system(parse_json(structure_json, "structure"))};
  });
}

mdc_status mdc_structure_certify(const mdc_structure* structure,
                                 const char* options_json, char** out_report_json,
                                 int* out_verdict) {
  if (auto s = require(structure, "structure"); s != MDC_OK) return s;
  if (auto s = require(out_report_json, "out_report_json"); s != MDC_OK) return s;
  if (auto s = require(out_verdict, "out_verdict"); s != MDC_OK) return s;
  return guarded([&] {
    modchaos::Json config;
    if (options_json != nullptr) config["certify"] = parse_json(options_json, "options");
    const auto& st = structure->system.require_structure();
    modchaos::Json opts = config.value("certify", modchaos::Json::object());
    const int j_lo = opts.value("j_lo", st.range_lo());
    const int j_hi = opts.value("j_hi", st.range_hi());
    const int depth = opts.value("depth", 3);
    const int degree = opts.value("degree", 1);
    const double threshold = opts.value("threshold", 1e-9);
    modchaos::Certificate cert;
    if (opts.value("strong", false)) {
      cert = modchaos::strong_certificate(
          st, j_lo, j_hi, opts.value("depths", std::vector<int>{1, 2, 3, 4}), threshold,
          degree);
    } else {
      cert = modchaos::modular_certificate(st, j_lo, j_hi, depth, degree, threshold);
    }
    *out_report_json = dup_string(modchaos::to_json(cert).dump(2) + "\n");
    *out_verdict = cert.verdict ? 1 : 0;
  });
}

void mdc_structure_destroy(mdc_structure* structure) { delete structure; }

mdc_status mdc_run_certify(const char* config_json, mdc_result** out) {
  return run_command(out, &modchaos::driver::run_certify, config_json);
}

mdc_status mdc_run_witness(const char* config_json, mdc_result** out) {
  return run_command(out, &modchaos::driver::run_witness, config_json);
}

mdc_status mdc_run_simulate(const char* config_json, int want_svg, mdc_result** out) {
  if (auto s = require(config_json, "config_json"); s != MDC_OK) return s;
  if (auto s = require(out, "out"); s != MDC_OK) return s;
  return guarded([&] {
    const modchaos::Json config = parse_json(config_json, "config");
    modchaos::driver::CommandResult r =
        modchaos::driver::run_simulate(config, want_svg != 0);
    *out = new mdc_result{r.report.dump(2) + "\n", std::move(r.csv), std::move(r.svg),
                          r.exit_code};
  });
}

mdc_status mdc_run_example(int example_id, uint64_t seed, int want_svg,
                           mdc_result** out) {
  if (auto s = require(out, "out"); s != MDC_OK) return s;
  return guarded([&] {
    modchaos::driver::CommandResult r =
        modchaos::driver::run_example(example_id, seed, want_svg != 0);
    *out = new mdc_result{r.report.dump(2) + "\n", std::move(r.csv), std::move(r.svg),
                          r.exit_code};
  });
}

const char* mdc_result_report_json(const mdc_result* result) {
  return result ? result->report.c_str() : nullptr;
}

const char* mdc_result_csv(const mdc_result* result) {
  return (result && !result->csv.empty()) ? result->csv.c_str() : nullptr;
}

const char* mdc_result_svg(const mdc_result* result) {
  return (result && !result->svg.empty()) ? result->svg.c_str() : nullptr;
}

int mdc_result_exit_code(const mdc_result* result) {
  return result ? result->exit_code : 2;
}

void mdc_result_destroy(mdc_result* result) { delete result; }

}  // extern "C"
