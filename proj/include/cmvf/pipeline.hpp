#pragma once

// The command-line pipeline: system -> mesh -> transitions -> minimal
// multivector field -> finest Morse decomposition, plus the products built
// on top of it. Kept in the library so tests can drive it directly.

#include "cmvf/conley.hpp"
#include "cmvf/io.hpp"
#include "cmvf/systems.hpp"

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

namespace cmvf {

struct Analysis {
    SystemSpec system;
    // heap-allocated so the field's pointer to the complex survives moves
    std::unique_ptr<GeometricComplex> mesh;
    std::unique_ptr<FlowGraph> graph;
    MorseDecomposition morse;

    const LefschetzComplex& complex() const { return mesh->complex; }
    const MultivectorField& field() const { return graph->field(); }
};

Analysis analyze(const SystemSpec& system, Execution exec = Execution::parallel);

/// Morse indices whose Conley index is concentrated in one degree k, ascending.
std::vector<std::size_t> indices_with_conley_degree(const MorseDecomposition& morse, std::size_t k);

Json morse_report(const Analysis& a);
Json interval_report(const Analysis& a, std::span<const std::size_t> indices);
Json cm_report(const Analysis& a, const ConnectionMatrix& cm, const VerificationReport& report);

struct PipelineConfig {
    SystemSpec system;
    std::filesystem::path out_dir = ".";
    std::vector<std::size_t> indices;
    /// plot only: "morse", "interval" or "hasse"
    std::string product;
    Execution exec = Execution::parallel;
};

struct CommandResult {
    std::vector<std::filesystem::path> files;
    /// false when a connection-matrix property fails
    bool verified = true;
    std::string summary;
};

CommandResult cmd_morse(const PipelineConfig& cfg);
CommandResult cmd_interval(const PipelineConfig& cfg);
CommandResult cmd_cm(const PipelineConfig& cfg);
CommandResult cmd_plot(const PipelineConfig& cfg);

} // namespace cmvf
