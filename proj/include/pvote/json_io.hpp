#pragma once

// File formats: metric instances, voter models, and report serialization.

#include <string>

#include "pvote/constructions.hpp"
#include "pvote/harness.hpp"
#include "pvote/metric.hpp"
#include "pvote/models.hpp"

namespace pvote {

// { "kind": "euclidean", "dim": d, "voters": [[..]], "candidates": [[..]] }
// or { "kind": "matrix", "n": n, "m": m, "dist": [[..]] }.
// Loading validates the metric and throws on violations.
MetricInstance load_instance(const std::string& path);
void save_instance(const MetricInstance& instance, const std::string& path);

// { "model": "pl", "theta": t }
// { "model": "construction", "kind": "top_or_last"|"top_uniform", ... } (all voters)
// { "model": "per_voter", "groups": [ { "count": c, "dist": {...} }, ... ] }
VoterModel load_model(const std::string& path, std::size_t num_voters);
void save_model(const VoterModel& model, const std::string& path);

std::string estimate_to_json(const DistortionEstimate& estimate);
std::string constants_to_json(const DerivedConstants& constants);

}  // namespace pvote
