#pragma once

// System definitions: a polynomial-ish vector field, a domain box, a mesh
// recipe and a coefficient field. Two systems are built in; others come
// from INI-style files.

#include "cmvf/discretize.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cmvf {

struct MeshSpec {
    enum class Kind { delaunay, cubical };
    Kind kind = Kind::delaunay;
    /// delaunay: interior points and points inside each box side
    std::size_t points = 0;
    std::size_t boundary = 16;
    /// cubical: intervals per axis
    std::vector<std::size_t> grid;

    /// "delaunay:N" or "cubical:AxBxC"
    static MeshSpec parse(std::string_view text);
    std::string to_string() const;
};

struct SystemSpec {
    std::string name;
    std::size_t dim = 0;
    std::vector<std::string> components;
    std::vector<double> lo, hi;
    MeshSpec mesh;
    Field field = Field::prime(2);
    std::uint64_t seed = 1;
    SampleStrategy samples = SampleStrategy::barycenter_and_vertices;

    VectorFieldExpr vector_field() const { return parse_vf(join_components(), dim); }
    std::string join_components() const;
};

/// "planar9" or "allencahn3d"; throws ConfigError for other names.
SystemSpec builtin_system(std::string_view name);
bool is_builtin_system(std::string_view name);

/// Reads the INI format documented in the README. Throws ConfigError.
SystemSpec parse_system(std::string_view text);
SystemSpec load_system(const std::string& path);

/// Throws ConfigError when the spec is inconsistent (dimensions, box, mesh kind).
void check_system(const SystemSpec& spec);

GeometricComplex build_mesh(const SystemSpec& spec);

SampleStrategy parse_sample_strategy(std::string_view text);
std::string_view to_string(SampleStrategy strategy);

} // namespace cmvf
