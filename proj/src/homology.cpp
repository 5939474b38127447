#include "cmvf/homology.hpp"

#include "cmvf/error.hpp"

#include <algorithm>
#include <numeric>

namespace cmvf {

BettiVector::BettiVector(std::initializer_list<std::size_t> values) : values_(values) {}

BettiVector::BettiVector(std::vector<std::size_t> values) : values_(std::move(values)) {}

bool BettiVector::is_zero() const noexcept
{
    return total() == 0;
}

std::size_t BettiVector::total() const noexcept
{
    return std::accumulate(values_.begin(), values_.end(), std::size_t{0});
}

long long BettiVector::euler_characteristic() const noexcept
{
    long long chi = 0;
    for (std::size_t k = 0; k < values_.size(); ++k)
        chi += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(values_[k]);
    return chi;
}

std::vector<std::size_t> BettiVector::trimmed() const
{
    auto out = values_;
    while (!out.empty() && out.back() == 0)
        out.pop_back();
    return out;
}

std::string BettiVector::to_string() const
{
    std::string s = "(";
    for (std::size_t k = 0; k < values_.size(); ++k) {
        if (k > 0)
            s += ", ";
        s += std::to_string(values_[k]);
    }
    return s + ")";
}

namespace {

ChainComplex assemble(const LefschetzComplex& complex, const std::vector<CellId>& cells)
{
    ChainComplex out;
    out.field = complex.field();
    int top = -1;
    for (CellId c : cells)
        top = std::max(top, static_cast<int>(complex.dim(c)));
    out.bases.resize(static_cast<std::size_t>(top + 1));
    for (CellId c : cells)
        out.bases[complex.dim(c)].push_back(c);

    for (std::size_t k = 0; k < out.bases.size(); ++k) {
        const auto& cols = out.bases[k];
        const std::size_t rows = k == 0 ? 0 : out.bases[k - 1].size();
        SparseMatrix m(out.field, rows, cols.size());
        if (k > 0) {
            const auto& row_cells = out.bases[k - 1];
            for (std::size_t j = 0; j < cols.size(); ++j) {
                SparseVector column;
                for (const auto& f : complex.facets(cols[j])) {
                    auto it = std::lower_bound(row_cells.begin(), row_cells.end(), f.cell);
                    if (it != row_cells.end() && *it == f.cell)
                        column.push_back({static_cast<std::uint32_t>(it - row_cells.begin()), f.coefficient});
                }
                m.set_column(j, std::move(column));
            }
        }
        out.boundaries.push_back(std::move(m));
    }
    return out;
}

} // namespace

ChainComplex chain_complex_of(const LefschetzComplex& complex)
{
    return assemble(complex, complex.all_cells().ids());
}

ChainComplex chain_complex_of(const LefschetzComplex& complex, const CellSet& cells)
{
    if (!cells.empty() && cells.ids().back() >= complex.size())
        throw Error(ErrorCode::UnknownCell, "cell " + std::to_string(cells.ids().back()));
    return assemble(complex, cells.ids());
}

BettiVector betti(const ChainComplex& chains)
{
    const std::size_t levels = chains.bases.size();
    std::vector<std::size_t> ranks(levels + 1, 0);
    std::vector<char> cleared;
    for (std::size_t k = levels; k-- > 1;) {
        const auto reduction = reduce_columns(chains.boundaries[k], cleared);
        ranks[k] = reduction.rank;
        cleared.assign(chains.bases[k - 1].size(), 0);
        for (std::size_t row : reduction.pivot_rows)
            if (row != ColumnReduction::npos)
                cleared[row] = 1;
    }
    std::vector<std::size_t> values(levels);
    for (std::size_t k = 0; k < levels; ++k)
        values[k] = chains.bases[k].size() - ranks[k] - ranks[k + 1];
    return BettiVector(std::move(values));
}

BettiVector betti(const LefschetzComplex& complex)
{
    return betti(chain_complex_of(complex, free_reduction(complex, complex.all_cells())));
}

CellSet free_reduction(const LefschetzComplex& complex, const CellSet& cells)
{
    const std::size_t n = complex.size();
    std::vector<char> alive(n, 0);
    for (CellId c : cells)
        alive[c] = 1;
    std::vector<std::uint32_t> facets(n, 0), cofacets(n, 0);
    std::vector<CellId> queue;
    for (CellId c : cells) {
        for (const auto& f : complex.facets(c))
            facets[c] += alive[f.cell];
        for (const auto& f : complex.cofacets(c))
            cofacets[c] += alive[f.cell];
        if (facets[c] == 1 || cofacets[c] == 1)
            queue.push_back(c);
    }
    auto remove = [&](CellId r) {
        alive[r] = 0;
        for (const auto& f : complex.facets(r))
            if (alive[f.cell] && --cofacets[f.cell] == 1)
                queue.push_back(f.cell);
        for (const auto& f : complex.cofacets(r))
            if (alive[f.cell] && --facets[f.cell] == 1)
                queue.push_back(f.cell);
    };
    auto only_alive = [&](std::span<const Incidence> list) {
        for (const auto& f : list)
            if (alive[f.cell])
                return f.cell;
        return CellId(0);
    };
    while (!queue.empty()) {
        const CellId x = queue.back();
        queue.pop_back();
        if (!alive[x])
            continue;
        // counts may have moved on since x was queued
        CellId partner;
        if (cofacets[x] == 1)
            partner = only_alive(complex.cofacets(x));
        else if (facets[x] == 1)
            partner = only_alive(complex.facets(x));
        else
            continue;
        remove(x);
        remove(partner);
    }
    std::vector<CellId> out;
    for (CellId c : cells)
        if (alive[c])
            out.push_back(c);
    return CellSet(std::move(out));
}

BettiVector relative_betti(const LefschetzComplex& complex, const CellSet& cells)
{
    if (!is_locally_closed(complex, cells))
        throw Error(ErrorCode::NotLocallyClosed, "relative homology requires a locally closed set");
    return betti(chain_complex_of(complex, free_reduction(complex, cells)));
}

} // namespace cmvf
