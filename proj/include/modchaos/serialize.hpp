#pragma once

// JSON encodings for descriptors, points, reports, and certificates, plus
// parsing of the inline configuration schema. Reports serialize with sorted
// keys and no timestamps, so identical inputs give byte-identical output.

#include <nlohmann/json.hpp>

#include "modchaos/dynamics.hpp"
#include "modchaos/randproc.hpp"
#include "modchaos/structure.hpp"

namespace modchaos {

using Json = nlohmann::json;

Json descriptor_to_json(const SetDescriptor& d);
SetDescriptor descriptor_from_json(const Json& j);

/// Sequence descriptions: {"kind":"periodic","block":[..]},
/// {"kind":"eventually-periodic","prefix":[..],"block":[..]},
/// {"kind":"prefix","symbols":[..]}, {"kind":"universal"}.
SymbolSeq seq_from_json(Alphabet alphabet, const Json& j);

/// {"module":j,"seq":{...}}
ModularPoint point_from_json(Alphabet alphabet, const Json& j);

Json to_json(const MetricInterval& v);
Json to_json(const DiameterReport& r);
Json to_json(const SeparationReport& r);
Json to_json(const Certificate& c);
Json to_json(const AffineSimilarityReport& r);
Json to_json(const SensitivityWitness& w);
Json to_json(const TransitivityWitness& w);
Json to_json(const UnpredictabilityResult& r);
Json to_json(const LiYorkeReport& r);
Json to_json(const EquivalenceReport& r);
Json to_json(const Realization& r);

}  // namespace modchaos
