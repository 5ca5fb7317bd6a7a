#pragma once

#include <optional>
#include <string>

#include "dtqw/core.hpp"
#include "dtqw/decomposer.hpp"
#include "dtqw/estimator.hpp"
#include "dtqw/simulator.hpp"
#include "dtqw/walk_builder.hpp"

namespace dtqw {

// Doubles are written with 17 significant digits so a round trip is exact.
std::string format_double(double x);

std::string circuit_to_json(const Circuit& circuit);
Circuit circuit_from_json(const std::string& text);

// position,digits with digits written most significant wire first.
std::string mapping_to_csv(const PositionMapping& mapping);
std::string distribution_to_csv(const Distribution& dist, const std::optional<ShotCounts>& shots);
std::string distribution_to_json(const Distribution& dist, const std::optional<ShotCounts>& shots);

std::string estimate_to_json(const ResourceEstimate& est);
std::string report_to_json(const EquivalenceReport& report);

NoiseParams noise_from_json(const std::string& text);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace dtqw
