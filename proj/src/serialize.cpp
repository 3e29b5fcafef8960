#include "modchaos/serialize.hpp"

#include <string>

namespace modchaos {

namespace {

std::string prefix_string(const Prefix& p) {
  std::string s;
  for (Symbol sym : p) s += std::to_string(sym);
  return s;
}

std::vector<Symbol> symbols_from_json(const Json& j, const char* what) {
  if (!j.is_array()) raise(ErrorCode::ParseError, std::string(what) + " must be an array");
  std::vector<Symbol> out;
  for (const auto& v : j) {
    if (!v.is_number_integer())
      raise(ErrorCode::ParseError, std::string(what) + " must hold integers");
    out.push_back(v.get<Symbol>());
  }
  return out;
}

}  // namespace

Json descriptor_to_json(const SetDescriptor& d) {
  switch (d.variant()) {
    case SetDescriptor::Variant::FinitePoints:
      return Json{{"points", d.pts()}};
    case SetDescriptor::Variant::Interval:
      return Json{{"interval", {d.lo(), d.hi()}}};
    case SetDescriptor::Variant::GridFunctions:
      return Json{{"grid", d.grid()}, {"rows", d.rows()}};
  }
  raise(ErrorCode::Internal, "unreachable");
}

SetDescriptor descriptor_from_json(const Json& j) {
  if (!j.is_object()) raise(ErrorCode::ParseError, "descriptor must be an object");
  if (j.contains("points")) {
    return SetDescriptor::points(j.at("points").get<std::vector<std::vector<double>>>());
  }
  if (j.contains("interval")) {
    const auto iv = j.at("interval").get<std::vector<double>>();
    if (iv.size() != 2) raise(ErrorCode::ParseError, "interval needs [lo, hi]");
    return SetDescriptor::interval(iv[0], iv[1]);
  }
  if (j.contains("grid")) {
    return SetDescriptor::grid_functions(
        j.at("grid").get<std::vector<double>>(),
        j.at("rows").get<std::vector<std::vector<double>>>());
  }
  raise(ErrorCode::ParseError, "descriptor needs points, interval, or grid/rows");
}

SymbolSeq seq_from_json(Alphabet alphabet, const Json& j) {
  if (!j.is_object() || !j.contains("kind"))
    raise(ErrorCode::ParseError, "sequence needs a kind");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "periodic")
    return SymbolSeq::periodic(alphabet, symbols_from_json(j.at("block"), "block"));
  if (kind == "eventually-periodic")
    return SymbolSeq::eventually_periodic(alphabet,
                                          symbols_from_json(j.at("prefix"), "prefix"),
                                          symbols_from_json(j.at("block"), "block"));
  if (kind == "prefix")
    return SymbolSeq::finite_prefix(alphabet, symbols_from_json(j.at("symbols"), "symbols"));
  if (kind == "universal") return universal_sequence(alphabet);
  raise(ErrorCode::ParseError, "unknown sequence kind '" + kind + "'");
}

ModularPoint point_from_json(Alphabet alphabet, const Json& j) {
  if (!j.is_object() || !j.contains("module") || !j.contains("seq"))
    raise(ErrorCode::ParseError, "point needs module and seq");
  return ModularPoint(j.at("module").get<int>(), seq_from_json(alphabet, j.at("seq")));
}

Json to_json(const MetricInterval& v) {
  return Json{{"lo", v.lo}, {"hi", v.hi}, {"exact", v.exact()}};
}

Json to_json(const DiameterReport& r) {
  return Json{{"max_diameter_by_depth", r.max_diameter_by_depth},
              {"threshold", r.threshold},
              {"nonincreasing", r.nonincreasing},
              {"verdict", r.verdict}};
}

Json to_json(const SeparationReport& r) {
  Json witnesses = Json::array();
  for (const auto& w : r.witnesses) {
    witnesses.push_back(Json{{"prefix", prefix_string(w.prefix)},
                             {"partner", prefix_string(w.partner)},
                             {"distance", w.distance}});
  }
  return Json{{"degree", r.degree}, {"epsilon", r.epsilon}, {"witnesses", witnesses}};
}

Json to_json(const Certificate& c) {
  Json modules = Json::array();
  for (const auto& m : c.modules) {
    modules.push_back(Json{{"index", m.index},
                           {"nesting_ok", m.nesting_ok},
                           {"diameters", to_json(m.diameters)},
                           {"separation", to_json(m.separation)}});
  }
  return Json{{"j_lo", c.j_lo},
              {"j_hi", c.j_hi},
              {"depth", c.depth},
              {"degree", c.degree},
              {"threshold", c.threshold},
              {"strong", c.strong},
              {"sup_diameter_by_depth", c.sup_diameter_by_depth},
              {"epsilon0", c.epsilon0},
              {"epsilon0_module", c.epsilon0_module},
              {"nesting_ok", c.nesting_ok},
              {"diameter_ok", c.diameter_ok},
              {"separation_ok", c.separation_ok},
              {"verdict", c.verdict},
              {"statement", c.statement},
              {"modules", modules}};
}

Json to_json(const AffineSimilarityReport& r) {
  return Json{{"j_start", r.j_start},
              {"prefix", prefix_string(r.prefix)},
              {"order", r.order},
              {"covers_shift_n", r.covers_shift_n},
              {"covers_shift_n_plus_1", r.covers_shift_n_plus_1}};
}

namespace {

Json point_to_json(const ModularPoint& p, std::uint64_t preview_len = 16) {
  Json seq = Json::array();
  std::uint64_t n = preview_len;
  if (auto h = p.seq.horizon()) n = std::min(n, *h);
  for (std::uint64_t k = 1; k <= n; ++k) seq.push_back(p.seq.at(k));
  return Json{{"module", p.module}, {"seq_preview", seq}};
}

}  // namespace

Json to_json(const SensitivityWitness& w) {
  return Json{{"base", point_to_json(w.base)},
              {"companion", point_to_json(w.companion)},
              {"shared_prefix_len", w.shared_prefix_len},
              {"iterate", w.iterate},
              {"initial_distance_upper", w.initial_distance_upper},
              {"separated_distance_lower", w.separated_distance_lower},
              {"revalidated", w.revalidated}};
}

Json to_json(const TransitivityWitness& w) {
  return Json{{"shift", w.shift},
              {"landing_module", w.landing_module},
              {"landing", point_to_json(w.landing)},
              {"revalidated", w.revalidated}};
}

Json to_json(const UnpredictabilityResult& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    entries.push_back(Json{{"kappa", e.kappa}, {"matched", e.matched}, {"zeta", e.zeta}});
  }
  return Json{{"entries", entries},
              {"not_found", r.not_found},
              {"complete", r.complete()}};
}

Json to_json(const LiYorkeReport& r) {
  auto events = [](const std::vector<LiYorkeEvent>& es, std::size_t cap) {
    Json out = Json::array();
    for (std::size_t i = 0; i < es.size() && i < cap; ++i) {
      out.push_back(Json{{"iterate", es[i].iterate}, {"distance", es[i].distance}});
    }
    return out;
  };
  return Json{{"horizon", r.horizon},
              {"kappa", r.kappa},
              {"eps", r.eps},
              {"proximal_count", r.proximal.size()},
              {"separated_count", r.separated.size()},
              {"proximal_events", events(r.proximal, 32)},
              {"separated_events", events(r.separated, 32)}};
}

Json to_json(const EquivalenceReport& r) {
  return Json{{"n_samples", r.n_samples},
              {"prefix_len", r.prefix_len},
              {"valid_prefix_fraction", r.valid_prefix_fraction},
              {"coverage", r.coverage},
              {"possible", r.possible},
              {"symbol_frequency", r.symbol_frequency},
              {"seed", r.seed}};
}

Json to_json(const Realization& r) {
  return Json{{"times", r.grid.times},
              {"symbols", r.symbols},
              {"seed", r.seed}};
}

}  // namespace modchaos
