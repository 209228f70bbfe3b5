#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "secondary/operad.hpp"
#include "secondary/regularity.hpp"

namespace secondary {

/// Insertion-ordered JSON so reports are byte-stable.
using Json = nlohmann::ordered_json;

/// Structurally bad input file (unparseable JSON, wrong shapes or types).
/// Distinct from WorkbenchError: semantic failures (duplicate points, bad
/// regions) use the domain errors.
struct MalformedInput : std::runtime_error {
    explicit MalformedInput(const std::string& why) : std::runtime_error("malformed input: " + why) {}
};

/// Parsed input file: integer points, optional region/seed/budget.
struct ConfigFile {
    Configuration config;              ///< validated
    std::optional<Region> region;      ///< validated when present
    std::optional<std::uint64_t> seed;
    std::optional<long long> budget;
};

/// Throws MalformedInput on structural problems, domain errors on semantic ones.
ConfigFile parse_config_file(const std::string& text);

/// The file's region if present, otherwise the convex hull.
Region effective_region(const ConfigFile& file);

Json rational_json(const Rational& r);
Json point_json(const Point& p);

Json configuration_json(const Configuration& config);
Json subdivision_json(const Subdivision& d, std::optional<int> id = std::nullopt);
Json scheme_json(const PerturbationScheme& scheme);
Json classification_json(const Classification& classification);
Json gwd_json(const GwD& gwd);
Json affine_fan_json(const AffineFan& fan);
Json conical_fan_json(const ConicalFan& fan);
Json secondary_cone_json(const SecondaryCone& cone);
Json chain_element_json(const ChainElement& element);
Json chain_complex_json(const ChainComplex& complex);
Json d_squared_report_json(const DSquaredReport& report, const ChainComplex& complex);

}  // namespace secondary
