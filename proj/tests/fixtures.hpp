#pragma once

// Small complexes and independent oracles shared by the test binaries.

#include "cmvf/conley.hpp"
#include "cmvf/error.hpp"
#include "cmvf/lefschetz.hpp"

#include <random>
#include <vector>

namespace fixtures {

using namespace cmvf;

// A --AB-- B with kappa(AB, A) = -1, kappa(AB, B) = 1; ids A=0, B=1, AB=2.
inline LefschetzComplex interval(Field field = Field::rationals())
{
    LefschetzComplex::Builder b(field);
    const auto a = b.add_cell("A", 0);
    const auto bb = b.add_cell("B", 0);
    const auto ab = b.add_cell("AB", 1);
    b.set_kappa(ab, a, Scalar(field, -1));
    b.set_kappa(ab, bb, Scalar(field, 1));
    return std::move(b).build();
}

inline LefschetzComplex full_triangle(Field field = Field::rationals())
{
    const std::vector<std::vector<std::uint32_t>> s{{0, 1, 2}};
    return build_simplicial(3, s, field);
}

inline LefschetzComplex hollow_triangle(Field field = Field::rationals())
{
    const std::vector<std::vector<std::uint32_t>> s{{0, 1}, {1, 2}, {0, 2}};
    return build_simplicial(3, s, field);
}

inline LefschetzComplex sphere2(Field field = Field::rationals())
{
    const std::vector<std::vector<std::uint32_t>> s{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
    return build_simplicial(4, s, field);
}

inline LefschetzComplex square_ring(Field field = Field::rationals())
{
    const std::vector<std::size_t> dims{3, 3};
    std::vector<std::vector<std::size_t>> cubes;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            if (i != 1 || j != 1)
                cubes.push_back({i, j});
    return build_cubical(dims, cubes, field);
}

inline LefschetzComplex unit_cube(Field field = Field::rationals())
{
    const std::vector<std::size_t> dims{1, 1, 1};
    const std::vector<std::vector<std::size_t>> cubes{{0, 0, 0}};
    return build_cubical(dims, cubes, field);
}

/// Random simplicial complex on up to `max_vertices` vertices.
inline LefschetzComplex random_simplicial(std::mt19937_64& rng, std::uint32_t max_vertices, Field field)
{
    std::uniform_int_distribution<std::uint32_t> nv(2, max_vertices);
    const std::uint32_t n = nv(rng);
    std::vector<std::vector<std::uint32_t>> simplices;
    const int count = std::uniform_int_distribution<int>(1, 4)(rng);
    for (int s = 0; s < count; ++s) {
        std::vector<std::uint32_t> verts;
        for (std::uint32_t v = 0; v < n; ++v)
            if (rng() % 2)
                verts.push_back(v);
        if (verts.empty() || verts.size() > 3)
            continue;
        if (std::find(simplices.begin(), simplices.end(), verts) == simplices.end())
            simplices.push_back(verts);
    }
    return build_simplicial(n, simplices, field);
}

/// Random transition sets: each cell with some of its cofacets.
inline std::vector<CellSet> random_transitions(std::mt19937_64& rng, const LefschetzComplex& X, double p_set,
                                               double p_cofacet)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<CellSet> out;
    for (CellId c = 0; c < X.size(); ++c) {
        if (u(rng) >= p_set)
            continue;
        std::vector<CellId> d{c};
        for (const auto& cf : X.cofacets(c))
            if (u(rng) < p_cofacet)
                d.push_back(cf.cell);
        out.emplace_back(std::move(d));
    }
    return out;
}

/// Dense Gaussian elimination, independent of the sparse kernels.
inline std::size_t dense_rank(std::vector<std::vector<Scalar>> m)
{
    std::size_t rank = 0;
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && m[piv][c].is_zero())
            ++piv;
        if (piv == rows)
            continue;
        std::swap(m[piv], m[rank]);
        const Scalar inv = m[rank][c].inverse();
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || m[r][c].is_zero())
                continue;
            const Scalar f = m[r][c] * inv;
            for (std::size_t k = c; k < cols; ++k)
                m[r][k] -= f * m[rank][k];
        }
        ++rank;
    }
    return rank;
}

/// H(cl S, mo S) through the quotient C(cl S) / C(mo S), with dense ranks:
/// cycles_k = n_k(A) - rank(P d_k) - |B_k|, boundaries_k = rank([d_{k+1} | I_B]) - |B_k|,
/// where A = cl S, B = mo S and P projects away from B.
inline BettiVector quotient_betti(const LefschetzComplex& X, const CellSet& S)
{
    const CellSet A = closure(X, S);
    const CellSet B = mouth(X, S);
    const Field F = X.field();
    const int top = X.dimension();
    std::vector<std::vector<CellId>> a(top + 2), bset(top + 2);
    for (CellId c : A)
        a[X.dim(c)].push_back(c);
    for (CellId c : B)
        bset[X.dim(c)].push_back(c);
    auto idx = [](const std::vector<CellId>& v, CellId c) {
        return static_cast<std::size_t>(std::lower_bound(v.begin(), v.end(), c) - v.begin());
    };
    auto cycles = [&](int k) -> std::size_t {
        // P d_k restricted to A_k -> A_{k-1} \ B_{k-1}, then kernel in A_k, minus B_k.
        const std::size_t n = a[k].size();
        std::size_t r = 0;
        if (k > 0 && n > 0) {
            std::vector<CellId> rows;
            for (CellId c : a[k - 1])
                if (!B.contains(c))
                    rows.push_back(c);
            std::vector<std::vector<Scalar>> m(rows.size(), std::vector<Scalar>(n, Scalar::zero(F)));
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t i = 0; i < rows.size(); ++i)
                    m[i][j] = X.kappa(a[k][j], rows[i]);
            r = dense_rank(m);
        }
        return n - r - bset[k].size();
    };
    auto boundaries = [&](int k) -> std::size_t {
        const std::size_t rows = a[k].size();
        const std::size_t cols = a[k + 1].size() + bset[k].size();
        if (rows == 0)
            return 0;
        std::vector<std::vector<Scalar>> m(rows, std::vector<Scalar>(cols, Scalar::zero(F)));
        for (std::size_t j = 0; j < a[k + 1].size(); ++j)
            for (std::size_t i = 0; i < rows; ++i)
                m[i][j] = X.kappa(a[k + 1][j], a[k][i]);
        for (std::size_t t = 0; t < bset[k].size(); ++t)
            m[idx(a[k], bset[k][t])][a[k + 1].size() + t] = Scalar::one(F);
        return dense_rank(m) - bset[k].size();
    };
    std::vector<std::size_t> values;
    for (int k = 0; k <= top; ++k)
        values.push_back(cycles(k) - boundaries(k));
    return BettiVector(values);
}

/// All subsets of a small complex as CellSets.
inline std::vector<CellSet> all_subsets(const LefschetzComplex& X)
{
    std::vector<CellSet> out;
    const std::size_t n = X.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<CellId> ids;
        for (CellId c = 0; c < n; ++c)
            if (mask >> c & 1)
                ids.push_back(c);
        out.emplace_back(std::move(ids));
    }
    return out;
}

/// Every set partition of {0..n-1}, as block labels per element.
inline std::vector<std::vector<int>> set_partitions(std::size_t n)
{
    std::vector<std::vector<int>> out;
    std::vector<int> label(n, 0);
    // restricted growth strings
    auto rec = [&](auto&& self, std::size_t i, int blocks) -> void {
        if (i == n) {
            out.push_back(label);
            return;
        }
        for (int b = 0; b <= blocks; ++b) {
            label[i] = b;
            self(self, i + 1, std::max(blocks, b + 1));
        }
    };
    rec(rec, 0, 0);
    return out;
}

inline std::vector<CellSet> blocks_of(const std::vector<int>& label)
{
    int count = 0;
    for (int l : label)
        count = std::max(count, l + 1);
    std::vector<std::vector<CellId>> parts(count);
    for (CellId c = 0; c < label.size(); ++c)
        parts[label[c]].push_back(c);
    std::vector<CellSet> out;
    for (auto& p : parts)
        out.emplace_back(std::move(p));
    std::sort(out.begin(), out.end(), [](const CellSet& a, const CellSet& b) { return a[0] < b[0]; });
    return out;
}

/// a refines b: every block of a lies inside one block of b.
inline bool refines(const std::vector<int>& a, const std::vector<int>& b)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            if (a[i] == a[j] && b[i] != b[j])
                return false;
    return true;
}

/// Minimal valid multivector fields for the collection, by exhaustive search:
/// the valid partitions that refine every other valid partition.
inline std::vector<std::vector<CellSet>> brute_force_minimal(const LefschetzComplex& X,
                                                             const std::vector<CellSet>& transitions)
{
    std::vector<std::vector<int>> valid;
    for (const auto& label : set_partitions(X.size())) {
        bool ok = true;
        for (const auto& d : transitions)
            for (CellId c : d)
                ok = ok && label[c] == label[d[0]];
        if (!ok)
            continue;
        for (const auto& part : blocks_of(label))
            ok = ok && is_locally_closed(X, part);
        if (ok)
            valid.push_back(label);
    }
    std::vector<std::vector<CellSet>> minimal;
    for (const auto& a : valid) {
        bool below_all = true;
        for (const auto& b : valid)
            below_all = below_all && refines(a, b);
        if (below_all)
            minimal.push_back(blocks_of(a));
    }
    return minimal;
}

/// Lefschetz complexes with at most six cells, including non-simplicial ones.
inline std::vector<LefschetzComplex> tiny_complexes(Field field = Field::rationals())
{
    std::vector<LefschetzComplex> out;
    out.push_back(interval(field));
    out.push_back(hollow_triangle(field));
    out.push_back(build_simplicial(3, std::vector<std::vector<std::uint32_t>>{{0, 1}, {1, 2}}, field));
    out.push_back(build_simplicial(3, std::vector<std::vector<std::uint32_t>>{{0, 1}}, field));
    out.push_back(build_simplicial(4, std::vector<std::vector<std::uint32_t>>{{0, 1}}, field));
    {
        // disc on a loop: kappa(loop, v) = 0, kappa(disc, loop) = 1
        LefschetzComplex::Builder b(field);
        b.add_cell("v", 0);
        const auto e = b.add_cell("e", 1);
        const auto f = b.add_cell("f", 2);
        b.set_kappa(f, e, Scalar::one(field));
        out.push_back(std::move(b).build());
    }
    {
        // two edges between the same pair of vertices, and a 2-cell spanning them
        LefschetzComplex::Builder b(field);
        const auto u = b.add_cell("u", 0), w = b.add_cell("w", 0);
        const auto e1 = b.add_cell("e1", 1), e2 = b.add_cell("e2", 1);
        const auto f = b.add_cell("f", 2);
        b.set_kappa(e1, u, -Scalar::one(field));
        b.set_kappa(e1, w, Scalar::one(field));
        b.set_kappa(e2, u, -Scalar::one(field));
        b.set_kappa(e2, w, Scalar::one(field));
        b.set_kappa(f, e1, Scalar::one(field));
        b.set_kappa(f, e2, -Scalar::one(field));
        out.push_back(std::move(b).build());
    }
    {
        // circle from one vertex and one loop, plus a free vertex and edge
        LefschetzComplex::Builder b(field);
        b.add_cell("p", 0);
        b.add_cell("loop", 1);
        const auto q = b.add_cell("q", 0), r = b.add_cell("r", 0);
        const auto qr = b.add_cell("qr", 1);
        b.set_kappa(qr, q, -Scalar::one(field));
        b.set_kappa(qr, r, Scalar::one(field));
        out.push_back(std::move(b).build());
    }
    return out;
}

} // namespace fixtures
