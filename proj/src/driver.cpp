#include "modchaos/driver.hpp"

#include <algorithm>
#include <map>
#include <memory>

#include "modchaos/render.hpp"

namespace modchaos::driver {

namespace {

constexpr std::uint64_t kDefaultScanHorizon = 100000;

std::uint64_t prefix_budget(const Json& config) {
  return config.value("budgets", Json::object()).value("prefixes", kDefaultPrefixBudget);
}

std::uint64_t scan_horizon(const Json& config) {
  return config.value("budgets", Json::object()).value("scan_horizon", kDefaultScanHorizon);
}

Prefix prefix_from_string(const std::string& s) {
  Prefix p;
  for (char c : s) {
    if (c < '1' || c > '9')
      raise(ErrorCode::ParseError, "cell prefixes are digit strings over 1..9");
    p.push_back(c - '0');
  }
  return p;
}

System build_inline(const Json& cfg) {
  const int m = cfg.value("m", 2);
  const Alphabet alphabet(m);
  if (m > 9) raise(ErrorCode::ParseError, "inline structures support m <= 9");
  const int max_depth = cfg.value("max_depth", 16);

  using CellTable = std::map<std::string, SetDescriptor>;
  auto tables = std::make_shared<std::map<int, CellTable>>();
  if (!cfg.contains("modules") || !cfg.at("modules").is_array() ||
      cfg.at("modules").empty())
    raise(ErrorCode::ParseError, "inline structure needs a modules array");
  int lo = 0, hi = 0;
  for (const auto& mod : cfg.at("modules")) {
    const int index = mod.at("index").get<int>();
    if (index < 1) raise(ErrorCode::ParseError, "module indices are positive");
    CellTable table;
    for (const auto& [key, value] : mod.at("cells").items()) {
      prefix_from_string(key);  // validate
      table.emplace(key, descriptor_from_json(value));
    }
    if (!table.count(""))
      raise(ErrorCode::ParseError, "each module needs the whole-set \"\" cell");
    tables->emplace(index, std::move(table));
    lo = lo == 0 ? index : std::min(lo, index);
    hi = std::max(hi, index);
  }
  for (int j = lo; j <= hi; ++j) {
    if (!tables->count(j))
      raise(ErrorCode::ParseError, "inline module indices must be contiguous");
  }

  auto factory = [tables, alphabet, max_depth](int j) {
    const CellTable& table = tables->at(j);
    auto cells = [&table](std::span<const Symbol> prefix) {
      // exact match first, then the deepest defined ancestor
      std::string key;
      for (Symbol s : prefix) key += static_cast<char>('0' + s);
      for (std::size_t len = key.size() + 1; len-- > 0;) {
        auto it = table.find(key.substr(0, len));
        if (it != table.end()) return it->second;
      }
      raise(ErrorCode::Internal, "missing root cell");
    };
    return ModuleSpace(j, alphabet, cells, max_depth);
  };
  System sys;
  sys.kind = "inline";
  sys.structure = ModularStructure(alphabet, factory, lo, hi, hi);
  return sys;
}

System build_function_family(const Json& cfg) {
  std::vector<std::function<double(double)>> functions;
  if (!cfg.contains("functions") || cfg.at("functions").size() < 2)
    raise(ErrorCode::ParseError, "function-family needs at least two functions");
  for (const auto& f : cfg.at("functions")) {
    if (!f.is_object() || !f.contains("affine"))
      raise(ErrorCode::ParseError, "functions are objects like {\"affine\":[a,b]}");
    const auto ab = f.at("affine").get<std::vector<double>>();
    if (ab.size() != 2) raise(ErrorCode::ParseError, "affine needs [a, b]");
    functions.push_back([a = ab[0], b = ab[1]](double t) { return a * t + b; });
  }

  std::vector<double> times;
  if (cfg.contains("times")) {
    times = cfg.at("times").get<std::vector<double>>();
  } else {
    const auto iv = cfg.value("interval", std::vector<double>{0.0, 1.0});
    const int points = cfg.value("points", 101);
    if (iv.size() != 2 || points < 1)
      raise(ErrorCode::ParseError, "interval needs [lo, hi] and points >= 1");
    for (int i = 0; i < points; ++i) {
      times.push_back(iv[0] + (iv[1] - iv[0]) * i / std::max(1, points - 1));
    }
  }

  std::vector<double> probabilities;
  if (cfg.contains("probabilities")) {
    probabilities = cfg.at("probabilities").get<std::vector<double>>();
  } else {
    probabilities.assign(functions.size(), 1.0 / static_cast<double>(functions.size()));
  }

  ExampleSystem ex = example1_structure(functions, probabilities, TimeGrid::of(times));
  return System{"function-family", std::move(ex.spec), std::move(ex.structure),
                std::move(ex.grid)};
}

}  // namespace

const ModularStructure& System::require_structure() const {
  if (!structure) raise(ErrorCode::Internal, "system has no structure");
  return *structure;
}

const RandomProcessSpec& System::require_spec() const {
  if (!spec)
    raise(ErrorCode::InvalidArgument,
          "structure kind '" + kind + "' has no random-process specification");
  return *spec;
}

const TimeGrid& System::require_grid() const {
  if (!grid)
    raise(ErrorCode::InvalidArgument, "structure kind '" + kind + "' has no time grid");
  return *grid;
}

System build_system(const Json& structure_config) {
  if (!structure_config.is_object())
    raise(ErrorCode::ParseError, "\"structure\" must be an object");
  const std::string kind = structure_config.value("kind", "plus-minus-t");
  if (kind == "plus-minus-t") {
    ExampleSystem ex = example2_structure();
    return System{kind, std::move(ex.spec), std::move(ex.structure), std::move(ex.grid)};
  }
  if (kind == "interval-functions") {
    ExampleSystem ex = example3_structure(structure_config.value("i_lo", 10),
                                          structure_config.value("i_hi", 39));
    return System{kind, std::move(ex.spec), std::move(ex.structure), std::move(ex.grid)};
  }
  if (kind == "function-family") return build_function_family(structure_config);
  if (kind == "inline") return build_inline(structure_config);
  raise(ErrorCode::ParseError, "unknown structure kind '" + kind + "'");
}

namespace {

Json effective_certify_options(const Json& config, const ModularStructure& structure) {
  Json opts = config.value("certify", Json::object());
  if (!opts.contains("j_lo")) opts["j_lo"] = structure.range_lo();
  if (!opts.contains("j_hi")) opts["j_hi"] = structure.range_hi();
  if (!opts.contains("depth")) opts["depth"] = 3;
  if (!opts.contains("degree")) opts["degree"] = 1;
  if (!opts.contains("threshold")) opts["threshold"] = 1e-9;
  if (!opts.contains("strong")) opts["strong"] = false;
  if (opts.at("strong").get<bool>() && !opts.contains("depths"))
    opts["depths"] = Json::array({1, 2, 3, 4});
  return opts;
}

Certificate certify_from_options(const ModularStructure& structure, const Json& opts,
                                 std::uint64_t budget) {
  const int j_lo = opts.at("j_lo").get<int>();
  const int j_hi = opts.at("j_hi").get<int>();
  const double threshold = opts.at("threshold").get<double>();
  const int degree = opts.at("degree").get<int>();
  if (opts.at("strong").get<bool>()) {
    return strong_certificate(structure, j_lo, j_hi,
                              opts.at("depths").get<std::vector<int>>(), threshold,
                              degree, budget);
  }
  return modular_certificate(structure, j_lo, j_hi, opts.at("depth").get<int>(), degree,
                             threshold, budget);
}

Json top_level(const std::string& command, std::uint64_t seed, Json config_echo,
               Json results, Json budgets_used) {
  return Json{{"command", command},
              {"seed", seed},
              {"config_echo", std::move(config_echo)},
              {"results", std::move(results)},
              {"budgets_used", std::move(budgets_used)}};
}

}  // namespace

CommandResult run_certify(const Json& config) {
  System sys = build_system(config.value("structure", Json{{"kind", "plus-minus-t"}}));
  const ModularStructure& structure = sys.require_structure();
  const Json opts = effective_certify_options(config, structure);
  const std::uint64_t budget = prefix_budget(config);
  const Certificate cert = certify_from_options(structure, opts, budget);

  Json echo = config;
  echo["structure"] = config.value("structure", Json{{"kind", sys.kind}});
  echo["certify"] = opts;
  const std::uint64_t seed = config.value("seed", 1ull);

  CommandResult out;
  out.report = top_level("certify", seed, echo, Json{{"certificate", to_json(cert)}},
                         Json{{"prefixes", budget}});
  out.exit_code = cert.verdict ? 0 : 1;
  return out;
}

namespace {

Json default_searches() {
  return Json::array(
      {Json{{"type", "sensitivity"},
            {"point", Json{{"module", 1}, {"seq", Json{{"kind", "periodic"}, {"block", {1}}}}}},
            {"kappa", 0.0009765625}},
       Json{{"type", "transitivity"}, {"target", {2, 2, 1}}},
       Json{{"type", "periodic-density"},
            {"target", Json{{"module", 3}, {"seq", Json{{"kind", "periodic"}, {"block", {1, 2, 2}}}}}},
            {"len", 3},
            {"offset", 1}},
       Json{{"type", "unpredictability"}, {"l_schedule", {1, 2, 3, 4}}},
       Json{{"type", "li-yorke"}, {"horizon", 10000}, {"kappa", 0.0009765625}}});
}

Json run_one_search(const System& sys, const Certificate& cert, const Json& search,
                    std::uint64_t horizon_budget) {
  const ModularStructure& structure = sys.require_structure();
  const Alphabet alphabet = structure.alphabet();
  const std::string type = search.at("type").get<std::string>();
  Json out{{"type", type}};

  if (type == "sensitivity") {
    const ModularPoint p = search.contains("point")
                               ? point_from_json(alphabet, search.at("point"))
                               : ModularPoint(structure.range_lo(),
                                              SymbolSeq::periodic(alphabet, {1}));
    const double kappa = search.value("kappa", 0.0009765625);
    const auto witness = find_sensitivity_witness(structure, cert, p, kappa);
    out["ok"] = witness.has_value();
    if (witness) out["witness"] = to_json(*witness);
    return out;
  }
  if (type == "transitivity") {
    const ModularPoint source =
        search.contains("source")
            ? point_from_json(alphabet, search.at("source"))
            : ModularPoint(structure.range_lo(), universal_sequence(alphabet));
    Prefix target;
    for (const auto& s : search.at("target")) target.push_back(s.get<Symbol>());
    const auto witness = find_transitivity_witness(
        structure, source, target, search.value("budget", horizon_budget));
    out["ok"] = witness.has_value();
    if (witness) out["witness"] = to_json(*witness);
    return out;
  }
  if (type == "periodic-density") {
    const ModularPoint target = point_from_json(alphabet, search.at("target"));
    const std::uint64_t len = search.value("len", 3ull);
    const std::uint64_t offset = search.value("offset", 0ull);
    const ModularPoint periodic = periodic_point_in_neighborhood(target, len, offset);
    const bool ok = in_km_neighborhood(periodic, target, offset, len);
    out["ok"] = ok;
    Json block = Json::array();
    for (Symbol s : periodic.seq.ep_block()) block.push_back(s);
    out["witness"] = Json{{"module", periodic.module}, {"block", block},
                          {"offset", offset}, {"len", len}};
    return out;
  }
  if (type == "unpredictability") {
    const ModularPoint p = search.contains("point")
                               ? point_from_json(alphabet, search.at("point"))
                               : ModularPoint(structure.range_lo(),
                                              universal_sequence(alphabet));
    std::vector<std::uint64_t> schedule{1, 2, 3, 4};
    if (search.contains("l_schedule"))
      schedule = search.at("l_schedule").get<std::vector<std::uint64_t>>();
    const auto result =
        check_unpredictability(p, schedule, search.value("horizon", horizon_budget));
    out["ok"] = result.complete();
    out["witness"] = to_json(result);
    return out;
  }
  if (type == "li-yorke") {
    ModularPoint a(structure.range_lo(), universal_sequence(alphabet));
    ModularPoint b = a;
    if (search.contains("pair") && search.at("pair").contains("a")) {
      a = point_from_json(alphabet, search.at("pair").at("a"));
      b = point_from_json(alphabet, search.at("pair").at("b"));
    } else {
      auto [sa, sb] = scrambled_pair(alphabet);
      a = ModularPoint(structure.range_lo(), sa);
      b = ModularPoint(structure.range_lo(), sb);
    }
    const std::uint64_t horizon = search.value("horizon", 10000ull);
    const double kappa = search.value("kappa", 0.0009765625);
    const double eps = search.value("eps", cert.epsilon0);
    const std::uint64_t min_events = search.value("min_events", 5ull);
    const LiYorkeReport report =
        liyorke_report(sys.require_structure(), cert, a, b, horizon, kappa, eps);
    out["ok"] = report.proximal.size() >= min_events &&
                report.separated.size() >= min_events;
    out["witness"] = to_json(report);
    return out;
  }
  raise(ErrorCode::ParseError, "unknown witness search type '" + type + "'");
}

}  // namespace

CommandResult run_witness(const Json& config) {
  System sys = build_system(config.value("structure", Json{{"kind", "plus-minus-t"}}));
  const ModularStructure& structure = sys.require_structure();
  const Json opts = effective_certify_options(config, structure);
  const std::uint64_t budget = prefix_budget(config);
  const std::uint64_t horizon = scan_horizon(config);
  const Certificate cert = certify_from_options(structure, opts, budget);

  Json searches = config.value("witness", Json::object())
                      .value("searches", default_searches());
  Json results = Json::array();
  bool all_ok = cert.verdict;
  for (const auto& search : searches) {
    Json one = run_one_search(sys, cert, search, horizon);
    all_ok = all_ok && one.at("ok").get<bool>();
    results.push_back(std::move(one));
  }

  Json echo = config;
  echo["structure"] = config.value("structure", Json{{"kind", sys.kind}});
  echo["certify"] = opts;
  echo["witness"] = Json{{"searches", searches}};
  const std::uint64_t seed = config.value("seed", 1ull);

  CommandResult out;
  out.report = top_level("witness", seed, echo,
                         Json{{"certificate", to_json(cert)}, {"searches", results}},
                         Json{{"prefixes", budget}, {"scan_horizon", horizon}});
  out.exit_code = all_ok ? 0 : 1;
  return out;
}

namespace {

PathRender detect_render_mode(const Realization& r) {
  if (!r.values.empty() &&
      r.values.front().variant() == SetDescriptor::Variant::GridFunctions)
    return PathRender::FunctionGrid;
  return PathRender::Step;
}

}  // namespace

CommandResult run_simulate(const Json& config, bool want_svg) {
  System sys = build_system(config.value("structure", Json{{"kind", "plus-minus-t"}}));
  const RandomProcessSpec& spec = sys.require_spec();
  const TimeGrid& grid = sys.require_grid();

  Json opts = config.value("simulate", Json::object());
  if (!opts.contains("n_samples")) opts["n_samples"] = 1000;
  if (!opts.contains("prefix_len")) opts["prefix_len"] = 4;
  const std::uint64_t seed = config.value("seed", 1ull);
  const std::uint64_t n_samples = opts.at("n_samples").get<std::uint64_t>();
  const int prefix_len = opts.at("prefix_len").get<int>();
  const std::uint64_t budget = prefix_budget(config);

  const EquivalenceReport eq = equivalence_report(
      spec, grid, sys.require_structure(), n_samples, prefix_len, seed, budget);
  const Realization path = sample_realization(spec, grid, realization_seed(seed, 0),
                                              grid.size());

  CommandResult out;
  out.csv = emit_path_csv(path, detect_render_mode(path));
  if (want_svg) {
    SvgOptions svg_opts;
    svg_opts.title = "sampled path (" + sys.kind + ")";
    out.svg = render_path_svg(parse_path_csv(out.csv), svg_opts);
  }

  Json echo = config;
  echo["structure"] = config.value("structure", Json{{"kind", sys.kind}});
  echo["simulate"] = opts;
  out.report = top_level("simulate", seed, echo,
                         Json{{"equivalence", to_json(eq)},
                              {"realization", to_json(path)}},
                         Json{{"prefixes", budget}});
  out.exit_code = 0;
  return out;
}

CommandResult run_example(int id, std::uint64_t seed, bool want_svg) {
  Json structure_cfg;
  switch (id) {
    case 1:
      structure_cfg = Json{{"kind", "function-family"},
                           {"functions", Json::array({Json{{"affine", {1.0, 0.0}}},
                                                      Json{{"affine", {1.0, 10.0}}}})},
                           {"interval", {0.0, 1.0}},
                           {"points", 101}};
      break;
    case 2:
      structure_cfg = Json{{"kind", "plus-minus-t"}};
      break;
    case 3:
      structure_cfg = Json{{"kind", "interval-functions"}};
      break;
    default:
      raise(ErrorCode::InvalidArgument, "example id must be 1, 2, or 3");
  }

  System sys = build_system(structure_cfg);
  const ModularStructure& structure = sys.require_structure();
  const Certificate cert = modular_certificate(structure, structure.range_lo(),
                                               structure.range_hi(), 3, 1, 1e-9);
  Json results{{"certificate", to_json(cert)}};
  bool verdicts_ok = cert.verdict;
  if (id == 3) {
    const Certificate strong = strong_certificate(structure, structure.range_lo(),
                                                  structure.range_hi(), {1, 2, 3, 4},
                                                  1e-9);
    results["strong_certificate"] = to_json(strong);
    verdicts_ok = verdicts_ok && strong.verdict;
  }

  const RandomProcessSpec& spec = sys.require_spec();
  const TimeGrid& grid = sys.require_grid();
  const Realization path =
      sample_realization(spec, grid, realization_seed(seed, 0), grid.size());
  const EquivalenceReport eq =
      equivalence_report(spec, grid, structure, 2000, 4, seed);
  results["equivalence"] = to_json(eq);
  results["realization"] = to_json(path);

  CommandResult out;
  out.csv = emit_path_csv(path, detect_render_mode(path));
  if (want_svg) {
    SvgOptions svg_opts;
    svg_opts.title = "example " + std::to_string(id) + " realization";
    svg_opts.identity_reference_lines = (id == 2 || id == 3);
    out.svg = render_path_svg(parse_path_csv(out.csv), svg_opts);
  }
  out.report = top_level("example", seed,
                         Json{{"example", id}, {"structure", structure_cfg}},
                         std::move(results), Json{{"prefixes", kDefaultPrefixBudget}});
  out.exit_code = verdicts_ok ? 0 : 1;
  return out;
}

}  // namespace modchaos::driver
