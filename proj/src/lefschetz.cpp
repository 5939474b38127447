#include "cmvf/lefschetz.hpp"

#include "cmvf/error.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

namespace cmvf {

// ---------------------------------------------------------------- CellSet

CellSet::CellSet(std::initializer_list<CellId> ids) : CellSet(std::vector<CellId>(ids)) {}

CellSet::CellSet(std::vector<CellId> ids) : ids_(std::move(ids))
{
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

bool CellSet::contains(CellId id) const
{
    return std::binary_search(ids_.begin(), ids_.end(), id);
}

bool CellSet::includes(const CellSet& other) const
{
    return std::includes(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end());
}

bool CellSet::intersects(const CellSet& other) const
{
    auto a = ids_.begin();
    auto b = other.ids_.begin();
    while (a != ids_.end() && b != other.ids_.end()) {
        if (*a == *b)
            return true;
        if (*a < *b)
            ++a;
        else
            ++b;
    }
    return false;
}

CellSet set_union(const CellSet& a, const CellSet& b)
{
    std::vector<CellId> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return CellSet(std::move(out));
}

CellSet set_intersection(const CellSet& a, const CellSet& b)
{
    std::vector<CellId> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return CellSet(std::move(out));
}

CellSet set_difference(const CellSet& a, const CellSet& b)
{
    std::vector<CellId> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return CellSet(std::move(out));
}

// ------------------------------------------------------- LefschetzComplex

std::size_t LefschetzComplex::Builder::add_cell(std::string label, unsigned dim)
{
    cells_.push_back({std::move(label), dim});
    return cells_.size() - 1;
}

void LefschetzComplex::Builder::set_kappa(std::size_t x, std::size_t y, const Scalar& value)
{
    if (x >= cells_.size() || y >= cells_.size())
        throw Error(ErrorCode::UnknownCell, "kappa references an unknown cell handle");
    if (!(value.field() == field_))
        throw Error(ErrorCode::MixedField, "kappa value over " + value.field().name());
    if (!value.is_zero())
        kappa_.push_back({x, y, value});
}

LefschetzComplex LefschetzComplex::Builder::build(std::vector<CellId>* handle_to_id) &&
{
    const std::size_t n = cells_.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (cells_[a].dim != cells_[b].dim)
            return cells_[a].dim < cells_[b].dim;
        return cells_[a].label < cells_[b].label;
    });
    {
        std::unordered_set<std::string_view> seen;
        for (const auto& c : cells_)
            if (!seen.insert(c.label).second)
                throw Error(ErrorCode::InvalidFormat, "duplicate cell label '" + c.label + "'");
    }

    std::vector<CellId> id_of(n);
    LefschetzComplex out(field_);
    out.cells_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        id_of[order[i]] = static_cast<CellId>(i);
        out.cells_.push_back(std::move(cells_[order[i]]));
    }

    const unsigned top = out.cells_.empty() ? 0 : out.cells_.back().dim;
    out.dim_offsets_.assign(top + 2, 0);
    for (const auto& c : out.cells_)
        ++out.dim_offsets_[c.dim + 1];
    for (unsigned k = 1; k < out.dim_offsets_.size(); ++k)
        out.dim_offsets_[k] += out.dim_offsets_[k - 1];

    struct Triple {
        CellId x, y;
        Scalar value;
    };
    std::vector<Triple> triples;
    triples.reserve(kappa_.size());
    for (auto& k : kappa_)
        triples.push_back({id_of[k.x], id_of[k.y], std::move(k.value)});

    auto fill_csr = [n](std::vector<Triple>& ts, bool by_x, std::vector<std::size_t>& offsets,
                        std::vector<Incidence>& entries) {
        std::sort(ts.begin(), ts.end(), [by_x](const Triple& a, const Triple& b) {
            return by_x ? std::tie(a.x, a.y) < std::tie(b.x, b.y) : std::tie(a.y, a.x) < std::tie(b.y, b.x);
        });
        offsets.assign(n + 1, 0);
        entries.clear();
        entries.reserve(ts.size());
        for (std::size_t i = 0; i < ts.size(); ++i) {
            if (i > 0 && ts[i].x == ts[i - 1].x && ts[i].y == ts[i - 1].y)
                throw Error(ErrorCode::InvalidFormat, "kappa pair given twice");
            const CellId key = by_x ? ts[i].x : ts[i].y;
            ++offsets[key + 1];
            entries.push_back({by_x ? ts[i].y : ts[i].x, ts[i].value});
        }
        for (std::size_t i = 1; i <= n; ++i)
            offsets[i] += offsets[i - 1];
    };
    fill_csr(triples, true, out.facet_offsets_, out.facet_entries_);
    fill_csr(triples, false, out.cofacet_offsets_, out.cofacet_entries_);

    if (handle_to_id)
        *handle_to_id = std::move(id_of);
    return out;
}

int LefschetzComplex::dimension() const noexcept
{
    return cells_.empty() ? -1 : static_cast<int>(cells_.back().dim);
}

std::optional<CellId> LefschetzComplex::find(std::string_view label) const
{
    for (CellId i = 0; i < cells_.size(); ++i)
        if (cells_[i].label == label)
            return i;
    return std::nullopt;
}

std::size_t LefschetzComplex::count(unsigned k) const
{
    if (k + 1 >= dim_offsets_.size())
        return 0;
    return dim_offsets_[k + 1] - dim_offsets_[k];
}

CellId LefschetzComplex::first_of_dim(unsigned k) const
{
    if (k + 1 >= dim_offsets_.size())
        return static_cast<CellId>(cells_.size());
    return dim_offsets_[k];
}

std::span<const Incidence> LefschetzComplex::facets(CellId x) const
{
    if (x >= cells_.size())
        throw Error(ErrorCode::UnknownCell, "cell " + std::to_string(x));
    return {facet_entries_.data() + facet_offsets_[x], facet_offsets_[x + 1] - facet_offsets_[x]};
}

std::span<const Incidence> LefschetzComplex::cofacets(CellId y) const
{
    if (y >= cells_.size())
        throw Error(ErrorCode::UnknownCell, "cell " + std::to_string(y));
    return {cofacet_entries_.data() + cofacet_offsets_[y], cofacet_offsets_[y + 1] - cofacet_offsets_[y]};
}

Scalar LefschetzComplex::kappa(CellId x, CellId y) const
{
    const auto f = facets(x);
    auto it = std::lower_bound(f.begin(), f.end(), y, [](const Incidence& e, CellId id) { return e.cell < id; });
    if (it != f.end() && it->cell == y)
        return it->coefficient;
    return Scalar::zero(field_);
}

CellSet LefschetzComplex::all_cells() const
{
    std::vector<CellId> ids(cells_.size());
    std::iota(ids.begin(), ids.end(), 0);
    return CellSet(std::move(ids));
}

// ------------------------------------------------------------ topology

void validate(const LefschetzComplex& complex)
{
    const auto n = static_cast<CellId>(complex.size());
    for (CellId x = 0; x < n; ++x)
        for (const auto& f : complex.facets(x))
            if (complex.dim(f.cell) + 1 != complex.dim(x))
                throw Error(ErrorCode::GradingViolation,
                            "kappa(" + complex.label(x) + ", " + complex.label(f.cell) + ") != 0");

    std::vector<std::pair<CellId, Scalar>> terms;
    for (CellId x = 0; x < n; ++x) {
        terms.clear();
        for (const auto& z : complex.facets(x))
            for (const auto& y : complex.facets(z.cell))
                terms.emplace_back(y.cell, z.coefficient * y.coefficient);
        std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        for (std::size_t i = 0; i < terms.size();) {
            Scalar sum = Scalar::zero(complex.field());
            std::size_t j = i;
            for (; j < terms.size() && terms[j].first == terms[i].first; ++j)
                sum += terms[j].second;
            if (!sum.is_zero())
                throw Error(ErrorCode::SquareNotZero, "sum over z of kappa(" + complex.label(x) + ",z)kappa(z," +
                                                          complex.label(terms[i].first) + ") = " + sum.to_string());
            i = j;
        }
    }
}

CellSet facets(const LefschetzComplex& complex, CellId x)
{
    std::vector<CellId> ids;
    for (const auto& f : complex.facets(x))
        ids.push_back(f.cell);
    return CellSet(std::move(ids));
}

namespace {

void check_ids(const LefschetzComplex& complex, const CellSet& cells)
{
    if (!cells.empty() && cells.ids().back() >= complex.size())
        throw Error(ErrorCode::UnknownCell, "cell " + std::to_string(cells.ids().back()));
}

// Level-by-level sweep along facets (down) or cofacets (up).
template <bool Down>
CellSet sweep(const LefschetzComplex& complex, const CellSet& cells)
{
    check_ids(complex, cells);
    std::vector<CellId> result = cells.ids();
    std::vector<CellId> frontier = result;
    std::vector<CellId> next;
    std::vector<CellId> merged;
    while (!frontier.empty()) {
        next.clear();
        for (CellId c : frontier)
            for (const auto& inc : Down ? complex.facets(c) : complex.cofacets(c))
                next.push_back(inc.cell);
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        frontier.clear();
        std::set_difference(next.begin(), next.end(), result.begin(), result.end(), std::back_inserter(frontier));
        merged.clear();
        std::merge(result.begin(), result.end(), frontier.begin(), frontier.end(), std::back_inserter(merged));
        result.swap(merged);
    }
    return CellSet(std::move(result));
}

} // namespace

CellSet closure(const LefschetzComplex& complex, const CellSet& cells)
{
    return sweep<true>(complex, cells);
}

CellSet star(const LefschetzComplex& complex, const CellSet& cells)
{
    return sweep<false>(complex, cells);
}

CellSet mouth(const LefschetzComplex& complex, const CellSet& cells)
{
    return set_difference(closure(complex, cells), cells);
}

bool is_closed(const LefschetzComplex& complex, const CellSet& cells)
{
    check_ids(complex, cells);
    for (CellId c : cells)
        for (const auto& f : complex.facets(c))
            if (!cells.contains(f.cell))
                return false;
    return true;
}

bool is_locally_closed(const LefschetzComplex& complex, const CellSet& cells)
{
    // mo S is closed iff no facet of a mouth cell lies back in S
    for (CellId m : mouth(complex, cells))
        for (const auto& f : complex.facets(m))
            if (cells.contains(f.cell))
                return false;
    return true;
}

CellSet interval_hull(const LefschetzComplex& complex, const CellSet& cells)
{
    return set_intersection(closure(complex, cells), star(complex, cells));
}

bool is_face_interval(const LefschetzComplex& complex, const CellSet& cells)
{
    return interval_hull(complex, cells) == cells;
}

LefschetzComplex subcomplex(const LefschetzComplex& complex, const CellSet& cells)
{
    if (!is_locally_closed(complex, cells))
        throw Error(ErrorCode::NotLocallyClosed, "subcomplex requires a locally closed set");
    LefschetzComplex::Builder builder(complex.field());
    for (CellId c : cells)
        builder.add_cell(complex.label(c), complex.dim(c));
    for (std::size_t i = 0; i < cells.size(); ++i)
        for (const auto& f : complex.facets(cells[i])) {
            auto it = std::lower_bound(cells.begin(), cells.end(), f.cell);
            if (it != cells.end() && *it == f.cell)
                builder.set_kappa(i, static_cast<std::size_t>(it - cells.begin()), f.coefficient);
        }
    return std::move(builder).build();
}

// ------------------------------------------------------------ builders

namespace {

std::string pad(std::size_t value, std::size_t width)
{
    std::string s = std::to_string(value);
    if (s.size() < width)
        s.insert(0, width - s.size(), '0');
    return s;
}

std::size_t digits(std::size_t value)
{
    return std::to_string(value).size();
}

} // namespace

ComplexWithVertices simplicial_with_vertices(std::size_t vertex_count,
                                             std::span<const std::vector<std::uint32_t>> simplices,
                                             Field field)
{
    std::vector<std::vector<std::uint32_t>> inputs;
    inputs.reserve(simplices.size());
    for (const auto& s : simplices) {
        auto sorted = s;
        std::sort(sorted.begin(), sorted.end());
        if (sorted.empty() || sorted.size() > 16)
            throw Error(ErrorCode::DegenerateInput, "simplex must have 1 to 16 vertices");
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw Error(ErrorCode::DegenerateInput, "simplex repeats a vertex");
        if (sorted.back() >= vertex_count)
            throw Error(ErrorCode::UnknownCell, "simplex vertex " + std::to_string(sorted.back()));
        inputs.push_back(std::move(sorted));
    }
    {
        auto check = inputs;
        std::sort(check.begin(), check.end());
        if (std::adjacent_find(check.begin(), check.end()) != check.end())
            throw Error(ErrorCode::DuplicateSimplex, "simplex listed twice");
    }

    std::vector<std::vector<std::uint32_t>> all;
    for (std::uint32_t v = 0; v < vertex_count; ++v)
        all.push_back({v});
    for (const auto& s : inputs) {
        const std::uint32_t k = static_cast<std::uint32_t>(s.size());
        for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
            std::vector<std::uint32_t> face;
            for (std::uint32_t i = 0; i < k; ++i)
                if (mask & (1u << i))
                    face.push_back(s[i]);
            all.push_back(std::move(face));
        }
    }
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    all.erase(std::unique(all.begin(), all.end()), all.end());

    const std::size_t width = digits(vertex_count == 0 ? 0 : vertex_count - 1);
    LefschetzComplex::Builder builder(field);
    for (const auto& s : all) {
        std::string label;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (i > 0)
                label += '-';
            label += pad(s[i], width);
        }
        builder.add_cell(std::move(label), static_cast<unsigned>(s.size() - 1));
    }
    auto index_of = [&](const std::vector<std::uint32_t>& s) {
        auto it = std::lower_bound(all.begin(), all.end(), s, [](const auto& a, const auto& b) {
            return a.size() != b.size() ? a.size() < b.size() : a < b;
        });
        return static_cast<std::size_t>(it - all.begin());
    };
    const Scalar plus = Scalar::one(field);
    const Scalar minus = -plus;
    for (std::size_t i = 0; i < all.size(); ++i) {
        const auto& s = all[i];
        if (s.size() < 2)
            continue;
        for (std::size_t drop = 0; drop < s.size(); ++drop) {
            std::vector<std::uint32_t> face;
            face.reserve(s.size() - 1);
            for (std::size_t j = 0; j < s.size(); ++j)
                if (j != drop)
                    face.push_back(s[j]);
            builder.set_kappa(i, index_of(face), drop % 2 == 0 ? plus : minus);
        }
    }
    std::vector<CellId> id_of;
    ComplexWithVertices out{std::move(builder).build(&id_of), {}};
    out.cell_vertices.resize(all.size());
    for (std::size_t i = 0; i < all.size(); ++i)
        out.cell_vertices[id_of[i]] = std::move(all[i]);
    return out;
}

LefschetzComplex build_simplicial(std::size_t vertex_count, std::span<const std::vector<std::uint32_t>> simplices,
                                  Field field)
{
    return simplicial_with_vertices(vertex_count, simplices, field).complex;
}

ComplexWithVertices cubical_with_vertices(std::span<const std::size_t> grid_dims,
                                          std::span<const std::vector<std::size_t>> active_cubes, Field field)
{
    const std::size_t d = grid_dims.size();
    if (d == 0 || d > 8)
        throw Error(ErrorCode::OutOfGrid, "cubical grids support 1 to 8 axes");
    // doubled coordinates: 2c is the vertex c, 2c+1 the interval [c, c+1]
    std::vector<std::uint64_t> stride(d);
    std::uint64_t total = 1;
    for (std::size_t a = 0; a < d; ++a) {
        stride[a] = total;
        total *= 2 * grid_dims[a] + 1;
    }
    std::vector<std::uint64_t> codes;
    std::size_t faces_per_cube = 1;
    for (std::size_t a = 0; a < d; ++a)
        faces_per_cube *= 3;
    codes.reserve(active_cubes.size() * faces_per_cube);
    for (const auto& cube : active_cubes) {
        if (cube.size() != d)
            throw Error(ErrorCode::OutOfGrid, "cube coordinate has wrong arity");
        for (std::size_t a = 0; a < d; ++a)
            if (cube[a] >= grid_dims[a])
                throw Error(ErrorCode::OutOfGrid, "cube coordinate " + std::to_string(cube[a]) + " on axis " +
                                                      std::to_string(a));
        for (std::size_t choice = 0; choice < faces_per_cube; ++choice) {
            std::size_t rest = choice;
            std::uint64_t code = 0;
            for (std::size_t a = 0; a < d; ++a) {
                code += (2 * cube[a] + rest % 3) * stride[a];
                rest /= 3;
            }
            codes.push_back(code);
        }
    }
    std::sort(codes.begin(), codes.end());
    codes.erase(std::unique(codes.begin(), codes.end()), codes.end());

    auto decode = [&](std::uint64_t code) {
        std::vector<std::size_t> coord(d);
        for (std::size_t a = 0; a < d; ++a) {
            coord[a] = static_cast<std::size_t>(code / stride[a] % (2 * grid_dims[a] + 1));
        }
        return coord;
    };

    LefschetzComplex::Builder builder(field);
    std::vector<std::size_t> widths(d);
    for (std::size_t a = 0; a < d; ++a)
        widths[a] = digits(grid_dims[a]);
    for (std::uint64_t code : codes) {
        const auto coord = decode(code);
        std::string label;
        unsigned dim = 0;
        for (std::size_t a = 0; a < d; ++a) {
            if (a > 0)
                label += 'x';
            if (coord[a] % 2 == 0) {
                label += "[" + pad(coord[a] / 2, widths[a]) + "]";
            } else {
                label += "[" + pad(coord[a] / 2, widths[a]) + "," + pad(coord[a] / 2 + 1, widths[a]) + "]";
                ++dim;
            }
        }
        builder.add_cell(std::move(label), dim);
    }
    auto index_of = [&](std::uint64_t code) {
        return static_cast<std::size_t>(std::lower_bound(codes.begin(), codes.end(), code) - codes.begin());
    };
    const Scalar plus = Scalar::one(field);
    const Scalar minus = -plus;
    for (std::size_t i = 0; i < codes.size(); ++i) {
        const auto coord = decode(codes[i]);
        int m = 0;
        for (std::size_t a = 0; a < d; ++a) {
            if (coord[a] % 2 == 0)
                continue;
            // d(I x J) = dI x J + (-1)^{dim I} I x dJ with d[a, a+1] = [a+1] - [a]
            const bool even = m % 2 == 0;
            builder.set_kappa(i, index_of(codes[i] - stride[a]), even ? minus : plus);
            builder.set_kappa(i, index_of(codes[i] + stride[a]), even ? plus : minus);
            ++m;
        }
    }
    std::vector<CellId> id_of;
    ComplexWithVertices out{std::move(builder).build(&id_of), {}};
    out.cell_vertices.resize(codes.size());
    std::vector<std::uint64_t> vertex_stride(d);
    std::uint64_t vtotal = 1;
    for (std::size_t a = 0; a < d; ++a) {
        vertex_stride[a] = vtotal;
        vtotal *= grid_dims[a] + 1;
    }
    for (std::size_t i = 0; i < codes.size(); ++i) {
        const auto coord = decode(codes[i]);
        std::vector<std::uint32_t> verts{0};
        for (std::size_t a = 0; a < d; ++a) {
            const std::size_t lo = coord[a] / 2;
            const std::size_t count = verts.size();
            for (std::size_t v = 0; v < count; ++v) {
                if (coord[a] % 2 == 1)
                    verts.push_back(static_cast<std::uint32_t>(verts[v] + (lo + 1) * vertex_stride[a]));
                verts[v] += static_cast<std::uint32_t>(lo * vertex_stride[a]);
            }
        }
        std::sort(verts.begin(), verts.end());
        out.cell_vertices[id_of[i]] = std::move(verts);
    }
    return out;
}

LefschetzComplex build_cubical(std::span<const std::size_t> grid_dims,
                               std::span<const std::vector<std::size_t>> active_cubes, Field field)
{
    return cubical_with_vertices(grid_dims, active_cubes, field).complex;
}

// ------------------------------------------------------------ Delaunay

namespace {

using Real = long double;
using Exact = boost::multiprecision::cpp_rational;

// Both predicates return only the sign. The long double value is trusted when
// it clears a generous error bound; otherwise the determinant is recomputed
// exactly (all inputs are doubles, so rationals represent them exactly).

int sign_of(const Exact& v)
{
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

int orient(const Point2& a, const Point2& b, const Point2& c)
{
    const Real l = (Real(b[0]) - a[0]) * (Real(c[1]) - a[1]);
    const Real r = (Real(b[1]) - a[1]) * (Real(c[0]) - a[0]);
    const Real det = l - r;
    if (std::abs(det) > 1e-15L * (std::abs(l) + std::abs(r)))
        return det > 0 ? 1 : -1;
    const Exact ex = (Exact(b[0]) - a[0]) * (Exact(c[1]) - a[1]) - (Exact(b[1]) - a[1]) * (Exact(c[0]) - a[0]);
    return sign_of(ex);
}

// > 0 when d lies strictly inside the circumcircle of the counterclockwise triangle abc.
int in_circle(const Point2& a, const Point2& b, const Point2& c, const Point2& d)
{
    const Real adx = Real(a[0]) - d[0], ady = Real(a[1]) - d[1];
    const Real bdx = Real(b[0]) - d[0], bdy = Real(b[1]) - d[1];
    const Real cdx = Real(c[0]) - d[0], cdy = Real(c[1]) - d[1];
    const Real ad = adx * adx + ady * ady;
    const Real bd = bdx * bdx + bdy * bdy;
    const Real cd = cdx * cdx + cdy * cdy;
    const Real det = adx * (bdy * cd - bd * cdy) - ady * (bdx * cd - bd * cdx) + ad * (bdx * cdy - bdy * cdx);
    const Real permanent = std::abs(adx) * (std::abs(bdy * cd) + std::abs(bd * cdy)) +
                           std::abs(ady) * (std::abs(bdx * cd) + std::abs(bd * cdx)) +
                           ad * (std::abs(bdx * cdy) + std::abs(bdy * cdx));
    if (std::abs(det) > 1e-14L * permanent)
        return det > 0 ? 1 : -1;
    const Exact eax = Exact(a[0]) - d[0], eay = Exact(a[1]) - d[1];
    const Exact ebx = Exact(b[0]) - d[0], eby = Exact(b[1]) - d[1];
    const Exact ecx = Exact(c[0]) - d[0], ecy = Exact(c[1]) - d[1];
    const Exact ea = eax * eax + eay * eay;
    const Exact eb = ebx * ebx + eby * eby;
    const Exact ec = ecx * ecx + ecy * ecy;
    return sign_of(eax * (eby * ec - eb * ecy) - eay * (ebx * ec - eb * ecx) + ea * (ebx * ecy - eby * ecx));
}

} // namespace

std::vector<std::array<std::uint32_t, 3>> delaunay_triangles(std::span<const Point2> points)
{
    const std::size_t n = points.size();
    if (n < 3)
        throw Error(ErrorCode::DegenerateInput, "need at least 3 points");
    {
        std::vector<Point2> sorted(points.begin(), points.end());
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw Error(ErrorCode::DegenerateInput, "duplicate points");
        bool collinear = true;
        for (std::size_t i = 2; i < n && collinear; ++i)
            collinear = orient(points[0], points[1], points[i]) == 0;
        if (collinear)
            throw Error(ErrorCode::DegenerateInput, "all points are collinear");
    }

    double lo_x = points[0][0], hi_x = lo_x, lo_y = points[0][1], hi_y = lo_y;
    for (const auto& p : points) {
        lo_x = std::min(lo_x, p[0]);
        hi_x = std::max(hi_x, p[0]);
        lo_y = std::min(lo_y, p[1]);
        hi_y = std::max(hi_y, p[1]);
    }
    const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-300});
    const double cx = 0.5 * (lo_x + hi_x), cy = 0.5 * (lo_y + hi_y);
    constexpr double far = 1.0e4;
    std::vector<Point2> pts(points.begin(), points.end());
    pts.push_back({cx - far * span, cy - far * span});
    pts.push_back({cx + far * span, cy - far * span});
    pts.push_back({cx, cy + far * span});

    // triangles stored counterclockwise
    std::vector<std::array<std::uint32_t, 3>> tris{
        {static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(n + 1), static_cast<std::uint32_t>(n + 2)}};
    std::vector<char> bad;
    std::vector<std::array<std::uint32_t, 2>> edges;
    for (std::uint32_t p = 0; p < n; ++p) {
        bad.assign(tris.size(), 0);
        edges.clear();
        for (std::size_t t = 0; t < tris.size(); ++t) {
            const auto& tri = tris[t];
            if (in_circle(pts[tri[0]], pts[tri[1]], pts[tri[2]], pts[p]) > 0) {
                bad[t] = 1;
                for (int e = 0; e < 3; ++e)
                    edges.push_back({tri[e], tri[(e + 1) % 3]});
            }
        }
        // cavity boundary: directed edges whose reverse is not present
        std::vector<std::array<std::uint32_t, 2>> boundary;
        for (const auto& e : edges) {
            const bool shared = std::any_of(edges.begin(), edges.end(), [&](const auto& f) {
                return f[0] == e[1] && f[1] == e[0];
            });
            if (!shared)
                boundary.push_back(e);
        }
        std::vector<std::array<std::uint32_t, 3>> kept;
        kept.reserve(tris.size() + boundary.size());
        for (std::size_t t = 0; t < tris.size(); ++t)
            if (!bad[t])
                kept.push_back(tris[t]);
        for (const auto& e : boundary) {
            if (orient(pts[e[0]], pts[e[1]], pts[p]) <= 0)
                throw Error(ErrorCode::DegenerateInput, "collinear configuration at point " + std::to_string(p));
            kept.push_back({e[0], e[1], p});
        }
        tris.swap(kept);
    }

    std::vector<std::array<std::uint32_t, 3>> out;
    for (auto tri : tris) {
        if (tri[0] >= n || tri[1] >= n || tri[2] >= n)
            continue;
        std::sort(tri.begin(), tri.end());
        out.push_back(tri);
    }
    std::sort(out.begin(), out.end());
    return out;
}

LefschetzComplex build_delaunay(std::span<const Point2> points, Field field)
{
    const auto tris = delaunay_triangles(points);
    std::vector<std::vector<std::uint32_t>> simplices;
    simplices.reserve(tris.size());
    for (const auto& t : tris)
        simplices.push_back({t[0], t[1], t[2]});
    return build_simplicial(points.size(), simplices, field);
}

} // namespace cmvf
