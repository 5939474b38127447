#include "cmvf/conley.hpp"

#include "cmvf/error.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace cmvf {

BettiVector conley_index(const MultivectorField& field, const CellSet& cells)
{
    if (!is_v_compatible(field, cells))
        throw Error(ErrorCode::NotIsolatedInvariant, "set is not a union of multivectors");
    if (!is_locally_closed(field.complex(), cells))
        throw Error(ErrorCode::NotIsolatedInvariant, "set is not locally closed");
    return relative_betti(field.complex(), cells);
}

std::vector<std::uint32_t> ConnectionMatrix::generators_of(std::span<const std::size_t> indices) const
{
    std::vector<char> in(poset_size, 0);
    for (std::size_t p : indices)
        in.at(p) = 1;
    std::vector<std::uint32_t> out;
    for (std::size_t g = 0; g < generators.size(); ++g)
        if (in[generators[g].morse_index])
            out.push_back(static_cast<std::uint32_t>(g));
    return out;
}

SparseMatrix ConnectionMatrix::block(std::size_t p, std::size_t q) const
{
    const std::size_t ps[] = {p};
    const std::size_t qs[] = {q};
    return delta.restrict(generators_of(ps), generators_of(qs));
}

SparseMatrix ConnectionMatrix::minor(std::span<const std::size_t> indices) const
{
    const auto g = generators_of(indices);
    return delta.restrict(g, g);
}

namespace {

// Square boundary operator with row and column access, reduced in place.
class Reducer {
public:
    Reducer(const LefschetzComplex& X, const std::vector<CellId>& cells) : field_(X.field()), cells_(cells)
    {
        const std::size_t n = cells.size();
        cols_.resize(n);
        rows_.resize(n);
        alive_.assign(n, 1);
        for (std::uint32_t j = 0; j < n; ++j)
            for (const auto& f : X.facets(cells[j])) {
                auto it = std::lower_bound(cells.begin(), cells.end(), f.cell);
                if (it == cells.end() || *it != f.cell)
                    continue;
                const auto i = static_cast<std::uint32_t>(it - cells.begin());
                cols_[j].emplace(i, f.coefficient);
                rows_[i].insert(j);
            }
    }

    std::size_t size() const noexcept { return cells_.size(); }
    bool alive(std::uint32_t i) const noexcept { return alive_[i]; }
    const std::unordered_map<std::uint32_t, Scalar>& column(std::uint32_t j) const { return cols_[j]; }

    // Removes the pair (row a, column b) via the Schur complement.
    void eliminate(std::uint32_t a, std::uint32_t b)
    {
        const Scalar alpha_inv = cols_[b].at(a).inverse();
        std::vector<std::pair<std::uint32_t, Scalar>> col_b;
        for (const auto& [i, v] : cols_[b])
            if (i != a)
                col_b.emplace_back(i, v);
        std::vector<std::uint32_t> row_a;
        for (std::uint32_t j : rows_[a])
            if (j != b)
                row_a.push_back(j);
        for (std::uint32_t j : row_a) {
            const Scalar factor = cols_[j].at(a) * alpha_inv;
            for (const auto& [i, v] : col_b) {
                auto it = cols_[j].find(i);
                if (it == cols_[j].end()) {
                    cols_[j].emplace(i, -(v * factor));
                    rows_[i].insert(j);
                } else {
                    it->second -= v * factor;
                    if (it->second.is_zero()) {
                        cols_[j].erase(it);
                        rows_[i].erase(j);
                    }
                }
            }
        }
        for (std::uint32_t x : {a, b}) {
            for (std::uint32_t j : rows_[x])
                cols_[j].erase(x);
            rows_[x].clear();
            for (const auto& [i, v] : cols_[x])
                rows_[i].erase(x);
            cols_[x].clear();
            alive_[x] = 0;
        }
    }

private:
    Field field_;
    const std::vector<CellId>& cells_;
    std::vector<std::unordered_map<std::uint32_t, Scalar>> cols_;
    std::vector<std::unordered_set<std::uint32_t>> rows_;
    std::vector<char> alive_;
};

// Eliminates pivots with both ends in `group` until its diagonal block vanishes.
void reduce_group(Reducer& r, const std::vector<std::uint32_t>& group, std::vector<std::uint32_t>& stamp,
                  std::uint32_t mark, const ConnectionMatrixOptions& options, std::mt19937_64& rng)
{
    for (std::uint32_t i : group)
        stamp[i] = mark;
    while (true) {
        bool found = false;
        std::uint32_t best_a = 0, best_b = 0;
        std::vector<std::pair<std::uint32_t, std::uint32_t>> all;
        for (std::uint32_t b : group) {
            if (!r.alive(b))
                continue;
            for (const auto& [a, v] : r.column(b)) {
                if (stamp[a] != mark)
                    continue;
                if (options.order == PivotOrder::shuffled) {
                    all.emplace_back(b, a);
                    continue;
                }
                const bool better = !found || (options.order == PivotOrder::lowest_id
                                                   ? std::tie(b, a) < std::tie(best_b, best_a)
                                                   : std::tie(b, a) > std::tie(best_b, best_a));
                if (better) {
                    found = true;
                    best_a = a;
                    best_b = b;
                }
            }
        }
        if (options.order == PivotOrder::shuffled && !all.empty()) {
            std::sort(all.begin(), all.end());
            std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
            const auto chosen = all[pick(rng)];
            best_b = chosen.first;
            best_a = chosen.second;
            found = true;
        }
        if (!found)
            return;
        r.eliminate(best_a, best_b);
    }
}

} // namespace

ConnectionMatrix connection_matrix(const FlowGraph& graph, const MorseDecomposition& morse,
                                   const ConnectionMatrixOptions& options)
{
    const auto& X = graph.complex();
    const auto& V = graph.field();
    ConnectionMatrix cm;
    cm.poset_size = morse.size();
    cm.below = morse.below;
    cm.delta = SparseMatrix(X.field(), 0, 0);
    if (morse.size() == 0)
        return cm;

    const CellSet invariant = invariant_part(graph, morse);
    const std::vector<CellId>& cells = invariant.ids();
    Reducer reducer(X, cells);
    std::mt19937_64 rng(options.seed);
    std::vector<std::uint32_t> stamp(cells.size(), 0);
    std::uint32_t mark = 0;

    // within one multivector
    {
        std::map<std::size_t, std::vector<std::uint32_t>> groups;
        for (std::uint32_t i = 0; i < cells.size(); ++i)
            groups[V.index_of(cells[i])].push_back(i);
        for (const auto& [mv, group] : groups)
            reduce_group(reducer, group, stamp, ++mark, options, rng);
    }
    // within one strongly connected component
    {
        std::map<std::uint32_t, std::vector<std::uint32_t>> groups;
        for (std::uint32_t i = 0; i < cells.size(); ++i)
            if (reducer.alive(i))
                groups[morse.component[cells[i]]].push_back(i);
        for (const auto& [c, group] : groups)
            reduce_group(reducer, group, stamp, ++mark, options, rng);
    }

    std::vector<std::uint32_t> survivors;
    for (std::uint32_t i = 0; i < cells.size(); ++i)
        if (reducer.alive(i))
            survivors.push_back(i);
    std::vector<std::vector<std::size_t>> counts(morse.size());
    for (std::uint32_t i : survivors) {
        const std::size_t p = morse.morse_of_component[morse.component[cells[i]]];
        if (p == MorseDecomposition::npos)
            throw Error(ErrorCode::ReductionStalled,
                        "generator " + X.label(cells[i]) + " survives outside every Morse set");
        const unsigned d = X.dim(cells[i]);
        if (counts[p].size() <= d)
            counts[p].resize(d + 1, 0);
        ++counts[p][d];
        cm.generators.push_back({p, d, cells[i]});
    }
    for (std::size_t p = 0; p < morse.size(); ++p)
        if (!(BettiVector(counts[p]) == morse.conley_indices[p]))
            throw Error(ErrorCode::ReductionStalled, "Morse set " + std::to_string(p) + " keeps " +
                                                         BettiVector(counts[p]).to_string() + ", expected " +
                                                         morse.conley_indices[p].to_string());

    std::vector<std::size_t> order(survivors.size());
    for (std::size_t g = 0; g < order.size(); ++g)
        order[g] = g;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& ga = cm.generators[a];
        const auto& gb = cm.generators[b];
        return std::tie(ga.morse_index, ga.dim, ga.rep_cell) < std::tie(gb.morse_index, gb.dim, gb.rep_cell);
    });
    std::vector<Generator> sorted;
    std::vector<std::uint32_t> position(cells.size(), 0);
    for (std::size_t g = 0; g < order.size(); ++g) {
        sorted.push_back(cm.generators[order[g]]);
        position[survivors[order[g]]] = static_cast<std::uint32_t>(g);
    }
    cm.generators = std::move(sorted);

    cm.delta = SparseMatrix(X.field(), cm.generators.size(), cm.generators.size());
    for (std::size_t g = 0; g < order.size(); ++g) {
        SparseVector column;
        for (const auto& [i, v] : reducer.column(survivors[order[g]]))
            column.push_back({position[i], v});
        std::sort(column.begin(), column.end(), [](const Entry& a, const Entry& b) { return a.index < b.index; });
        cm.delta.set_column(g, std::move(column));
    }
    return cm;
}

BettiVector graded_homology(const SparseMatrix& d, std::span<const unsigned> dims)
{
    ChainComplex chains;
    chains.field = d.field();
    unsigned top = 0;
    for (unsigned k : dims)
        top = std::max(top, k);
    if (dims.empty())
        return BettiVector{};
    chains.bases.resize(top + 1);
    for (std::uint32_t g = 0; g < dims.size(); ++g)
        chains.bases[dims[g]].push_back(g);
    for (unsigned k = 0; k <= top; ++k) {
        if (k == 0)
            chains.boundaries.emplace_back(d.field(), 0, chains.bases[0].size());
        else
            chains.boundaries.push_back(d.restrict(chains.bases[k - 1], chains.bases[k]));
    }
    return betti(chains);
}

std::vector<std::vector<std::size_t>> poset_intervals(const MorseDecomposition& morse, const VerifyOptions& options,
                                                      bool* exhaustive)
{
    const std::size_t m = morse.size();
    std::vector<std::vector<std::size_t>> out;
    if (m <= options.exhaustive_limit && m < 63) {
        if (exhaustive)
            *exhaustive = true;
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
            std::vector<std::size_t> idx;
            for (std::size_t p = 0; p < m; ++p)
                if (mask >> p & 1)
                    idx.push_back(p);
            if (morse.is_interval(idx))
                out.push_back(std::move(idx));
        }
        return out;
    }
    if (exhaustive)
        *exhaustive = false;
    std::set<std::vector<std::size_t>> chosen;
    auto between = [&](std::size_t p, std::size_t q) {
        std::vector<std::size_t> idx;
        for (std::size_t r = 0; r < m; ++r)
            if ((r == p || morse.less(p, r)) && (r == q || morse.less(r, q)))
                idx.push_back(r);
        return idx;
    };
    std::vector<std::size_t> every;
    for (std::size_t p = 0; p < m; ++p) {
        every.push_back(p);
        chosen.insert({p});
        std::vector<std::size_t> down, up;
        for (std::size_t r = 0; r < m; ++r) {
            if (r == p || morse.less(r, p))
                down.push_back(r);
            if (r == p || morse.less(p, r))
                up.push_back(r);
        }
        chosen.insert(down);
        chosen.insert(up);
    }
    chosen.insert(every);
    for (auto [p, q] : morse.hasse())
        chosen.insert({p, q});
    std::mt19937_64 rng(options.seed);
    for (std::size_t s = 0; s < options.random_samples && m > 0; ++s) {
        const std::size_t q = std::uniform_int_distribution<std::size_t>(0, m - 1)(rng);
        std::vector<std::size_t> lower{q};
        for (std::size_t p = 0; p < m; ++p)
            if (morse.less(p, q))
                lower.push_back(p);
        const std::size_t p = lower[std::uniform_int_distribution<std::size_t>(0, lower.size() - 1)(rng)];
        chosen.insert(between(p, q));
    }
    out.assign(chosen.begin(), chosen.end());
    return out;
}

VerificationReport verify_connection_matrix(const ConnectionMatrix& cm, const FlowGraph& graph,
                                            const MorseDecomposition& morse, const VerifyOptions& options)
{
    VerificationReport report;
    const auto& gens = cm.generators;
    const std::size_t n = gens.size();
    auto less = [&](std::size_t p, std::size_t q) {
        return q < cm.below.size() && p < cm.below[q].size() && cm.below[q][p];
    };
    if (cm.delta.rows() != n || cm.delta.cols() != n) {
        report.degree_minus_one = false;
        report.failures.push_back("delta is not square on the generators");
        return report;
    }
    for (std::size_t j = 0; j < n; ++j)
        for (const auto& e : cm.delta.column(j)) {
            const auto& gi = gens[e.index];
            const auto& gj = gens[j];
            if (!less(gi.morse_index, gj.morse_index)) {
                if (report.upper_triangular)
                    report.failures.push_back("entry (" + std::to_string(e.index) + ", " + std::to_string(j) +
                                              ") is not strictly upper triangular");
                report.upper_triangular = false;
            }
            if (gj.dim != gi.dim + 1) {
                if (report.degree_minus_one)
                    report.failures.push_back("entry (" + std::to_string(e.index) + ", " + std::to_string(j) +
                                              ") does not lower the degree by one");
                report.degree_minus_one = false;
            }
        }
    if (!(cm.delta * cm.delta).is_zero()) {
        report.square_zero = false;
        report.failures.push_back("delta squared is nonzero");
    }

    const auto intervals = poset_intervals(morse, options, &report.exhaustive);
    report.intervals_checked = intervals.size();
    std::vector<std::string> mismatch(intervals.size());
    auto check = [&](std::size_t k) {
        const auto& I = intervals[k];
        const auto g = cm.generators_of(I);
        std::vector<unsigned> dims;
        for (auto i : g)
            dims.push_back(gens[i].dim);
        const BettiVector algebraic = graded_homology(cm.delta.restrict(g, g), dims);
        const BettiVector topological = conley_index(graph.field(), morse_interval(graph, morse, I));
        if (!(algebraic == topological)) {
            std::string name = "{";
            for (std::size_t t = 0; t < I.size(); ++t)
                name += (t ? "," : "") + std::to_string(I[t]);
            mismatch[k] = "interval " + name + "}: H(Delta(I)) = " + algebraic.to_string() +
                          " but CH(M_I) = " + topological.to_string();
        }
    };
    const auto count = static_cast<std::ptrdiff_t>(intervals.size());
    if (options.exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t k = 0; k < count; ++k)
            check(static_cast<std::size_t>(k));
    } else {
        for (std::ptrdiff_t k = 0; k < count; ++k)
            check(static_cast<std::size_t>(k));
    }
    for (auto& m : mismatch)
        if (!m.empty()) {
            report.intervals_match = false;
            report.failures.push_back(std::move(m));
        }

    for (auto [p, q] : morse.hasse()) {
        if (cm.block(p, q).is_zero())
            continue;
        const bool nonempty = !connection_set(graph, morse.morse_sets[q], morse.morse_sets[p]).empty();
        report.forced.push_back({q, p, nonempty});
        if (!nonempty) {
            report.forced_connections_ok = false;
            report.failures.push_back("Delta(" + std::to_string(p) + ", " + std::to_string(q) +
                                      ") != 0 but the connection set is empty");
        }
    }
    return report;
}

} // namespace cmvf
