#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "boustro/geometry.hpp"

namespace boustro {

/// One potential leak source: origin position, spill polygon and prior
/// probability that the source is actually leaking.
struct LeakSource {
    int id = 0;
    Point2 origin;
    ConvexPolygon spill;
    double prior = 0.0;
};

/// AUV and sensor limits: speed box, time budget, max traversals per
/// trackline and the sensor characteristic time tau.
struct AuvLimits {
    double v_min = 0.0;   // m/s
    double v_max = 0.0;   // m/s
    double t_max = 0.0;   // s
    int z_max = 1;        // max traversals of a single trackline
    double tau = 0.0;     // s
};

/// The a priori leak map plus everything the planner needs: area, sources,
/// candidate tracklines and AUV limits. Immutable after load/generation.
struct Scenario {
    AreaBounds area;
    std::vector<LeakSource> sources;
    std::vector<Trackline> tracklines;
    AuvLimits limits;
    std::uint64_t rng_seed = 0;

    std::vector<double> priors() const;
    double prior_mass() const;
};

/// Throws ValidationError naming the violated invariant.
void validate_scenario(const Scenario& s);

struct PriorTier {
    int count = 0;
    double prior = 0.0;
};

struct ScenarioGenConfig {
    AreaBounds area{0.0, 0.0, 10'000.0, 10'000.0};
    std::vector<PriorTier> tiers;
    double semi_axis_min = 300.0;   // m
    double semi_axis_max = 1200.0;  // m
    int ellipse_samples = 32;
    AuvLimits limits;
    int max_retries = 1000;
    double trackline_dedup_tol = 1.0;  // m
};

/// The experiment setup used throughout the docs and examples: 10 km x 10 km,
/// 42 sources at prior 0.05, 5 at 0.15, 3 at 0.80, speeds 2-5 knots,
/// 10 h budget, tau = 200 s.
ScenarioGenConfig paper_scenario_config();

/// Deterministic given (config, seed). Spills are convex hulls of random
/// ellipses, resampled until fully inside the area; priors follow the tiers.
/// Throws GenerationFailure when placement fails or no sources are requested.
Scenario generate_random_scenario(const ScenarioGenConfig& config, std::uint64_t seed);

/// JSON (de)serialization. load() validates and regenerates tracklines when
/// the file omits them; save() writes schema version 1.
Scenario load_scenario(const std::filesystem::path& path);
void save_scenario(const Scenario& s, const std::filesystem::path& path);

std::string scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const std::string& text, const std::string& context = "<string>");

/// FNV-1a over the canonical JSON serialization, hex-encoded.
std::string scenario_digest(const Scenario& s);

ScenarioGenConfig gen_config_from_json(const std::string& text,
                                       const std::string& context = "<string>");
ScenarioGenConfig load_gen_config(const std::filesystem::path& path);

}  // namespace boustro
