#pragma once

#include "cmvf/algebra.hpp"

#include <array>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cmvf {

using CellId = std::uint32_t;

/// A set of cell ids, stored sorted and without duplicates.
class CellSet {
public:
    CellSet() = default;
    CellSet(std::initializer_list<CellId> ids);
    explicit CellSet(std::vector<CellId> ids);

    bool contains(CellId id) const;
    bool empty() const noexcept { return ids_.empty(); }
    std::size_t size() const noexcept { return ids_.size(); }
    auto begin() const noexcept { return ids_.begin(); }
    auto end() const noexcept { return ids_.end(); }
    CellId operator[](std::size_t i) const { return ids_[i]; }
    const std::vector<CellId>& ids() const noexcept { return ids_; }

    /// True if every element of `other` is in this set.
    bool includes(const CellSet& other) const;
    bool intersects(const CellSet& other) const;

    friend bool operator==(const CellSet&, const CellSet&) = default;

private:
    std::vector<CellId> ids_;
};

CellSet set_union(const CellSet& a, const CellSet& b);
CellSet set_intersection(const CellSet& a, const CellSet& b);
CellSet set_difference(const CellSet& a, const CellSet& b);

struct Cell {
    std::string label;
    unsigned dim = 0;
};

struct Incidence {
    CellId cell;
    Scalar coefficient;
};

/// A finite graded cell set with incidence coefficients kappa(x, y) over a
/// field. Cells are numbered in (dimension, label) order, so the cells of
/// one dimension occupy a contiguous id range. Immutable once built.
class LefschetzComplex {
public:
    class Builder {
    public:
        explicit Builder(Field field) : field_(field) {}

        /// Returns a builder-local handle for use with set_kappa.
        std::size_t add_cell(std::string label, unsigned dim);

        /// kappa(x, y) for builder handles; zero values are ignored.
        void set_kappa(std::size_t x, std::size_t y, const Scalar& value);

        /// Throws InvalidFormat on duplicate labels or repeated kappa pairs.
        /// `handle_to_id`, when given, receives the final id of every handle.
        LefschetzComplex build(std::vector<CellId>* handle_to_id = nullptr) &&;

    private:
        struct Raw {
            std::size_t x, y;
            Scalar value;
        };
        Field field_;
        std::vector<Cell> cells_;
        std::vector<Raw> kappa_;
    };

    explicit LefschetzComplex(Field field) : field_(field) {}

    Field field() const noexcept { return field_; }
    std::size_t size() const noexcept { return cells_.size(); }
    /// -1 for the empty complex.
    int dimension() const noexcept;

    const Cell& cell(CellId id) const { return cells_.at(id); }
    unsigned dim(CellId id) const { return cells_.at(id).dim; }
    const std::string& label(CellId id) const { return cells_.at(id).label; }
    std::optional<CellId> find(std::string_view label) const;

    /// Number of cells of dimension k and the first id of that range.
    std::size_t count(unsigned k) const;
    CellId first_of_dim(unsigned k) const;

    /// Cells y with kappa(x, y) != 0, ascending by id.
    std::span<const Incidence> facets(CellId x) const;
    /// Cells x with kappa(x, y) != 0, ascending by id.
    std::span<const Incidence> cofacets(CellId y) const;

    Scalar kappa(CellId x, CellId y) const;

    CellSet all_cells() const;

private:
    Field field_;
    std::vector<Cell> cells_;
    std::vector<CellId> dim_offsets_;
    std::vector<std::size_t> facet_offsets_;
    std::vector<Incidence> facet_entries_;
    std::vector<std::size_t> cofacet_offsets_;
    std::vector<Incidence> cofacet_entries_;
};

/// Throws GradingViolation or SquareNotZero naming the first witness pair.
void validate(const LefschetzComplex& complex);

/// Throws UnknownCell for ids outside the complex.
CellSet facets(const LefschetzComplex& complex, CellId x);

CellSet closure(const LefschetzComplex& complex, const CellSet& cells);
/// All cells having a face in `cells` (the up-closure under the face relation).
CellSet star(const LefschetzComplex& complex, const CellSet& cells);
CellSet mouth(const LefschetzComplex& complex, const CellSet& cells);
bool is_closed(const LefschetzComplex& complex, const CellSet& cells);

/// Mouth-closedness test.
bool is_locally_closed(const LefschetzComplex& complex, const CellSet& cells);
/// Convexity in the face order: x <= y <= z with x, z in S forces y in S.
bool is_face_interval(const LefschetzComplex& complex, const CellSet& cells);
/// cl S intersected with the up-closure of S: the smallest face-order interval containing S.
CellSet interval_hull(const LefschetzComplex& complex, const CellSet& cells);

/// Restriction of kappa to a locally closed set; subcomplex id i corresponds
/// to the i-th smallest id of `cells`. Throws NotLocallyClosed.
LefschetzComplex subcomplex(const LefschetzComplex& complex, const CellSet& cells);

/// A built complex together with the vertex list of every cell.
struct ComplexWithVertices {
    LefschetzComplex complex;
    std::vector<std::vector<std::uint32_t>> cell_vertices;
};

/// Completes every simplex to all of its faces; vertices 0..vertex_count-1 are
/// always present. kappa(s, s minus its i-th sorted vertex) = (-1)^i.
ComplexWithVertices simplicial_with_vertices(std::size_t vertex_count,
                                             std::span<const std::vector<std::uint32_t>> simplices,
                                             Field field);
LefschetzComplex build_simplicial(std::size_t vertex_count,
                                  std::span<const std::vector<std::uint32_t>> simplices, Field field);

/// Elementary-cube complex of the given top cubes on a grid with grid_dims
/// cells per axis. Vertex ids flatten grid vertex coordinates with axis 0
/// fastest. Throws OutOfGrid.
ComplexWithVertices cubical_with_vertices(std::span<const std::size_t> grid_dims,
                                          std::span<const std::vector<std::size_t>> active_cubes,
                                          Field field);
LefschetzComplex build_cubical(std::span<const std::size_t> grid_dims,
                               std::span<const std::vector<std::size_t>> active_cubes, Field field);

using Point2 = std::array<double, 2>;

/// Bowyer-Watson triangulation; triangles have ascending vertex indices and
/// are returned in lexicographic order. Throws DegenerateInput for duplicate
/// or all-collinear points.
std::vector<std::array<std::uint32_t, 3>> delaunay_triangles(std::span<const Point2> points);

LefschetzComplex build_delaunay(std::span<const Point2> points, Field field = Field::prime(2));

} // namespace cmvf
