#pragma once

#include <string>
#include <vector>

#include "wavese/core.hpp"
#include "wavese/evolution.hpp"
#include "wavese/potential.hpp"

namespace wavese {

struct InitialStateSpec {
    enum class Type { packet, atom };
    Type type = Type::packet;
    // packet: a minimal packet with its own parameters
    MinimalPacketWavelet packet{1.0, 5.0, 0.0};
    // atom: U(a,b) applied to the analysis wavelet
    double a = 1.0;
    double b = 0.0;
};

struct OutputSpec {
    std::string directory = "out";
    bool csv = true;
    bool wvs1 = true;
};

struct AdmissibilitySpec {
    std::vector<double> k_min_values{1e-6, 5e-7};
    double k_max = 0.0; // 0 = auto: p/hbar + 6/delta_x
};

struct ScenarioConfig {
    PhysicalParams physical;
    MinimalPacketWavelet wavelet{1.0, 5.0, 0.0};
    SpatialGrid spatial{-40.0, 40.0, 2048};
    double a_min = 0.25;
    double a_max = 8.0;
    std::size_t n_scales = 32;
    PotentialModel potential;
    EvolutionConfig evolution;
    InitialStateSpec initial_state;
    std::string pipeline = "transform_roundtrip";
    OutputSpec output;
    AdmissibilitySpec admissibility;
    std::vector<double> compare_times; // empty = {0, T/4, T/2, T}

    ScalePositionGrid scale_grid() const { return {a_min, a_max, n_scales, spatial}; }

    void validate() const;
};

// Parses a JSON scenario document; unknown keys are rejected.
ScenarioConfig parse_scenario(const std::string& json_text);
ScenarioConfig parse_scenario_file(const std::string& path);

// Serializes the fully resolved configuration (all defaults applied).
std::string resolved_config_json(const ScenarioConfig& cfg);

// Executes the configured pipeline and writes its artifacts. Returns 0 on
// success; throws ConfigError / PreconditionError / IoError otherwise.
int run_scenario(const ScenarioConfig& cfg);

} // namespace wavese
