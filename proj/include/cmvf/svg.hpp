#pragma once

// Deterministic SVG renderings: planar meshes with highlighted cell sets,
// and Hasse diagrams of Morse posets.

#include "cmvf/discretize.hpp"
#include "cmvf/dynamics.hpp"

#include <string>
#include <vector>

namespace cmvf {

struct Region {
    CellSet cells;
    /// Index into the fixed palette.
    std::size_t color;
    std::string legend;
};

/// Regions are painted in order over the grey mesh. Throws
/// UnsupportedDimension unless the mesh is planar.
std::string mesh_svg(const GeometricComplex& mesh, const std::vector<Region>& regions, const std::string& title);

/// One region per Morse set, coloured by Morse index.
std::string morse_svg(const GeometricComplex& mesh, const MorseDecomposition& morse, const std::string& title);

/// Nodes layered by longest chain from a minimal element; covering edges only.
std::string hasse_svg(const MorseDecomposition& morse, const std::string& title);

/// "#rrggbb" for a palette slot.
std::string palette_color(std::size_t index);

} // namespace cmvf
