#include "cmvf/discretize.hpp"

#include "cmvf/error.hpp"

#include <cmath>
#include <exception>
#include <random>

namespace cmvf {

std::vector<double> GeometricComplex::barycenter(CellId cell) const
{
    const auto& verts = cell_vertices.at(cell);
    std::vector<double> b(ambient_dim(), 0.0);
    for (auto v : verts)
        for (std::size_t a = 0; a < b.size(); ++a)
            b[a] += coordinates[v][a];
    for (auto& x : b)
        x /= static_cast<double>(verts.size());
    return b;
}

GeometricComplex delaunay_mesh(std::span<const Point2> points, Field field)
{
    const auto tris = delaunay_triangles(points);
    std::vector<std::vector<std::uint32_t>> simplices;
    simplices.reserve(tris.size());
    for (const auto& t : tris)
        simplices.push_back({t[0], t[1], t[2]});
    auto built = simplicial_with_vertices(points.size(), simplices, field);
    GeometricComplex out{std::move(built.complex), {}, std::move(built.cell_vertices)};
    for (const auto& p : points)
        out.coordinates.push_back({p[0], p[1]});
    return out;
}

GeometricComplex cubical_mesh(std::span<const double> lo, std::span<const double> hi, std::span<const std::size_t> cells,
                              Field field)
{
    const std::size_t d = cells.size();
    if (lo.size() != d || hi.size() != d)
        throw Error(ErrorCode::ArityMismatch, "box and grid dimensions differ");
    std::vector<std::vector<std::size_t>> cubes{{}};
    for (std::size_t a = 0; a < d; ++a) {
        if (cells[a] == 0 || !(hi[a] > lo[a]))
            throw Error(ErrorCode::DegenerateGeometry, "empty grid axis " + std::to_string(a));
        std::vector<std::vector<std::size_t>> next;
        for (std::size_t i = 0; i < cells[a]; ++i)
            for (const auto& c : cubes) {
                auto e = c;
                e.push_back(i);
                next.push_back(std::move(e));
            }
        cubes = std::move(next);
    }
    auto built = cubical_with_vertices(cells, cubes, field);
    GeometricComplex out{std::move(built.complex), {}, std::move(built.cell_vertices)};
    std::size_t total = 1;
    for (std::size_t a = 0; a < d; ++a)
        total *= cells[a] + 1;
    out.coordinates.resize(total, std::vector<double>(d));
    for (std::size_t v = 0; v < total; ++v) {
        std::size_t rest = v;
        for (std::size_t a = 0; a < d; ++a) {
            const std::size_t i = rest % (cells[a] + 1);
            rest /= cells[a] + 1;
            out.coordinates[v][a] = lo[a] + (hi[a] - lo[a]) * static_cast<double>(i) / static_cast<double>(cells[a]);
        }
    }
    return out;
}

std::vector<Point2> box_points(const Point2& lo, const Point2& hi, std::size_t interior, std::size_t per_side,
                               std::uint64_t seed)
{
    std::vector<Point2> pts{{lo[0], lo[1]}, {hi[0], lo[1]}, {hi[0], hi[1]}, {lo[0], hi[1]}};
    const double steps = static_cast<double>(per_side + 1);
    // each new side point splits an existing boundary edge
    for (std::size_t side = 0; side < 4; ++side) {
        const Point2 a = pts[side];
        const Point2 b = pts[(side + 1) % 4];
        for (std::size_t k = 1; k <= per_side; ++k) {
            const double t = static_cast<double>(k) / steps;
            pts.push_back({a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])});
        }
    }
    const double margin = 0.25 * std::min(hi[0] - lo[0], hi[1] - lo[1]) / steps;
    std::mt19937_64 rng(seed);
    auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    for (std::size_t i = 0; i < interior; ++i) {
        const double x = lo[0] + margin + unit() * (hi[0] - lo[0] - 2 * margin);
        const double y = lo[1] + margin + unit() * (hi[1] - lo[1] - 2 * margin);
        pts.push_back({x, y});
    }
    return pts;
}

namespace {

double dot(std::span<const double> a, std::span<const double> b)
{
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

// Orthonormal basis of the direction space of aff(sigma).
std::vector<std::vector<double>> affine_basis(const GeometricComplex& mesh, CellId sigma)
{
    const auto& verts = mesh.cell_vertices[sigma];
    const auto& origin = mesh.coordinates[verts[0]];
    const std::size_t n = origin.size();
    std::vector<std::vector<double>> basis;
    for (std::size_t i = 1; i < verts.size(); ++i) {
        std::vector<double> e(n);
        for (std::size_t a = 0; a < n; ++a)
            e[a] = mesh.coordinates[verts[i]][a] - origin[a];
        const double scale = std::sqrt(dot(e, e));
        for (const auto& b : basis) {
            const double c = dot(e, b);
            for (std::size_t a = 0; a < n; ++a)
                e[a] -= c * b[a];
        }
        const double norm = std::sqrt(dot(e, e));
        if (!(norm > 1e-12 * scale)) {
            // cubical cells list all corners; dependent edges are expected there
            if (basis.size() + 1 >= verts.size() || basis.size() >= n || scale == 0)
                throw Error(ErrorCode::DegenerateGeometry, "cell " + mesh.complex.label(sigma) + " has zero volume");
            continue;
        }
        for (auto& x : e)
            x /= norm;
        basis.push_back(std::move(e));
    }
    if (basis.size() != mesh.complex.dim(sigma))
        throw Error(ErrorCode::DegenerateGeometry, "cell " + mesh.complex.label(sigma) + " has zero volume");
    return basis;
}

CellSet transition_set(const GeometricComplex& mesh, const VectorFieldExpr& f, const TransitionOptions& options,
                       const std::vector<std::vector<double>>& vertex_field, CellId sigma)
{
    const auto& X = mesh.complex;
    const std::size_t n = mesh.ambient_dim();
    const auto bary = mesh.barycenter(sigma);

    std::vector<std::vector<double>> samples;
    if (options.samples != SampleStrategy::vertices)
        samples.push_back(f.eval(bary));
    if (options.samples != SampleStrategy::barycenter)
        for (auto v : mesh.cell_vertices[sigma])
            samples.push_back(vertex_field[v]);
    std::vector<double> tol;
    for (const auto& s : samples)
        tol.push_back(options.rel_tol * std::sqrt(dot(s, s)));

    const auto basis = affine_basis(mesh, sigma);
    std::vector<CellId> out{sigma};
    for (const auto& cf : X.cofacets(sigma)) {
        auto d = mesh.barycenter(cf.cell);
        for (std::size_t a = 0; a < n; ++a)
            d[a] -= bary[a];
        const double length = std::sqrt(dot(d, d));
        for (const auto& b : basis) {
            const double c = dot(d, b);
            for (std::size_t a = 0; a < n; ++a)
                d[a] -= c * b[a];
        }
        const double norm = std::sqrt(dot(d, d));
        if (!(norm > 1e-12 * length))
            throw Error(ErrorCode::DegenerateGeometry, "cell " + X.label(cf.cell) + " is flat over " + X.label(sigma));
        bool enters = false, ambiguous = true;
        for (std::size_t s = 0; s < samples.size(); ++s) {
            const double ip = dot(samples[s], d) / norm;
            enters = enters || ip > tol[s];
            ambiguous = ambiguous && std::abs(ip) <= tol[s];
        }
        if (enters || ambiguous)
            out.push_back(cf.cell);
    }
    return CellSet(std::move(out));
}

} // namespace

std::vector<CellSet> transitions(const GeometricComplex& mesh, const VectorFieldExpr& f,
                                 const TransitionOptions& options)
{
    const auto& X = mesh.complex;
    const std::size_t n = mesh.ambient_dim();
    if (f.variables != n || f.components.size() != n)
        throw Error(ErrorCode::ArityMismatch, "vector field has " + std::to_string(f.components.size()) +
                                                  " components over " + std::to_string(f.variables) +
                                                  " variables; the mesh lives in dimension " + std::to_string(n));
    if (X.dimension() <= 0)
        return {};
    const CellId count = X.first_of_dim(static_cast<unsigned>(X.dimension()));

    std::vector<std::vector<double>> vertex_field(mesh.coordinates.size());
    std::vector<CellSet> out(count);
    std::exception_ptr failure;
    const auto verts = static_cast<std::ptrdiff_t>(mesh.coordinates.size());
    const auto cells = static_cast<std::ptrdiff_t>(count);
    if (options.exec == Execution::parallel) {
#pragma omp parallel
        {
#pragma omp for schedule(static)
            for (std::ptrdiff_t v = 0; v < verts; ++v) {
                try {
                    vertex_field[v] = f.eval(mesh.coordinates[v]);
                } catch (...) {
#pragma omp critical(cmvf_transitions)
                    if (!failure)
                        failure = std::current_exception();
                }
            }
            // the implicit barrier of the loop above publishes vertex_field
#pragma omp for schedule(dynamic, 64)
            for (std::ptrdiff_t c = 0; c < cells; ++c) {
                if (failure)
                    continue;
                try {
                    out[c] = transition_set(mesh, f, options, vertex_field, static_cast<CellId>(c));
                } catch (...) {
#pragma omp critical(cmvf_transitions)
                    if (!failure)
                        failure = std::current_exception();
                }
            }
        }
        if (failure)
            std::rethrow_exception(failure);
    } else {
        for (std::ptrdiff_t v = 0; v < verts; ++v)
            vertex_field[v] = f.eval(mesh.coordinates[v]);
        for (std::ptrdiff_t c = 0; c < cells; ++c)
            out[c] = transition_set(mesh, f, options, vertex_field, static_cast<CellId>(c));
    }
    return out;
}

MultivectorField mvf_from_field(const GeometricComplex& mesh, const VectorFieldExpr& f,
                                const TransitionOptions& options)
{
    const auto d = transitions(mesh, f, options);
    return minimal_mvf(mesh.complex, d, options.exec);
}

} // namespace cmvf
