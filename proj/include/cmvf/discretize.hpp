#pragma once

#include "cmvf/expr.hpp"
#include "cmvf/lefschetz.hpp"
#include "cmvf/mvf.hpp"
#include "cmvf/parallel.hpp"

#include <cstdint>
#include <vector>

namespace cmvf {

/// A complex with vertex coordinates; each cell is realised by the convex
/// hull of its vertices.
struct GeometricComplex {
    LefschetzComplex complex;
    std::vector<std::vector<double>> coordinates;
    std::vector<std::vector<std::uint32_t>> cell_vertices;

    std::size_t ambient_dim() const { return coordinates.empty() ? 0 : coordinates[0].size(); }
    std::vector<double> barycenter(CellId cell) const;
};

GeometricComplex delaunay_mesh(std::span<const Point2> points, Field field);

/// Every cube of a grid with `cells[a]` intervals on axis a spanning [lo[a], hi[a]].
GeometricComplex cubical_mesh(std::span<const double> lo, std::span<const double> hi,
                              std::span<const std::size_t> cells, Field field);

/// Box corners, `per_side` evenly spaced points inside each side, and
/// `interior` seeded uniform points kept away from the boundary.
std::vector<Point2> box_points(const Point2& lo, const Point2& hi, std::size_t interior, std::size_t per_side,
                               std::uint64_t seed);

enum class SampleStrategy { barycenter_and_vertices, barycenter, vertices };

struct TransitionOptions {
    SampleStrategy samples = SampleStrategy::barycenter_and_vertices;
    /// Inner products within rel_tol * |f(sample)| of zero count as ambiguous.
    double rel_tol = 1e-9;
    Execution exec = Execution::parallel;
};

/// D_sigma for every cell of dimension below the top, ascending by sigma.
/// A cofacet tau joins D_sigma if f points into tau at some sample of sigma,
/// or if the inner product is ambiguous at every sample. Throws
/// DegenerateGeometry or ArityMismatch.
std::vector<CellSet> transitions(const GeometricComplex& mesh, const VectorFieldExpr& f,
                                 const TransitionOptions& options = {});

MultivectorField mvf_from_field(const GeometricComplex& mesh, const VectorFieldExpr& f,
                                const TransitionOptions& options = {});

} // namespace cmvf
