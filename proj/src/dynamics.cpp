#include "cmvf/dynamics.hpp"

#include "cmvf/error.hpp"

#include <algorithm>

namespace cmvf {

// ------------------------------------------------------------ FlowGraph

FlowGraph::FlowGraph(MultivectorField field) : field_(std::move(field))
{
    const auto& X = field_.complex();
    const std::size_t n = X.size();
    std::vector<std::vector<CellId>> adj(n);
    for (CellId x = 0; x < n; ++x) {
        for (const auto& f : X.facets(x))
            adj[x].push_back(f.cell);
        const auto& mv = field_.of(x);
        if (mv.size() > 1) {
            auto it = std::lower_bound(mv.begin(), mv.end(), x);
            ++it;
            adj[x].push_back(it == mv.end() ? mv[0] : *it);
        }
    }
    out_offsets_.assign(n + 1, 0);
    in_offsets_.assign(n + 1, 0);
    for (CellId x = 0; x < n; ++x) {
        std::sort(adj[x].begin(), adj[x].end());
        adj[x].erase(std::unique(adj[x].begin(), adj[x].end()), adj[x].end());
        out_offsets_[x + 1] = out_offsets_[x] + adj[x].size();
        for (CellId y : adj[x])
            ++in_offsets_[y + 1];
    }
    for (std::size_t i = 1; i <= n; ++i)
        in_offsets_[i] += in_offsets_[i - 1];
    out_.reserve(out_offsets_[n]);
    in_.assign(in_offsets_[n], 0);
    std::vector<std::size_t> fill(in_offsets_.begin(), in_offsets_.end() - 1);
    for (CellId x = 0; x < n; ++x)
        for (CellId y : adj[x]) {
            out_.push_back(y);
            in_[fill[y]++] = x;
        }
}

std::span<const CellId> FlowGraph::out_edges(CellId x) const
{
    return {out_.data() + out_offsets_[x], out_offsets_[x + 1] - out_offsets_[x]};
}

std::span<const CellId> FlowGraph::in_edges(CellId x) const
{
    return {in_.data() + in_offsets_[x], in_offsets_[x + 1] - in_offsets_[x]};
}

CellSet FlowGraph::successors(CellId x) const
{
    return set_union(closure(complex(), CellSet{x}), field_.of(x));
}

CellSet FlowGraph::image(const CellSet& cells) const
{
    std::vector<CellId> out = closure(complex(), cells).ids();
    for (CellId c : cells) {
        const auto& mv = field_.of(c);
        out.insert(out.end(), mv.begin(), mv.end());
    }
    return CellSet(std::move(out));
}

CellSet FlowGraph::preimage(const CellSet& cells) const
{
    std::vector<CellId> out = star(complex(), cells).ids();
    for (CellId c : cells) {
        const auto& mv = field_.of(c);
        out.insert(out.end(), mv.begin(), mv.end());
    }
    return CellSet(std::move(out));
}

namespace {

template <typename Edges>
CellSet reach(std::size_t n, const CellSet& start, Edges edges)
{
    std::vector<char> seen(n, 0);
    std::vector<CellId> stack(start.begin(), start.end());
    for (CellId c : stack) {
        if (c >= n)
            throw Error(ErrorCode::UnknownCell, "cell " + std::to_string(c));
        seen[c] = 1;
    }
    std::vector<CellId> out = stack;
    while (!stack.empty()) {
        const CellId v = stack.back();
        stack.pop_back();
        for (CellId w : edges(v))
            if (!seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
                out.push_back(w);
            }
    }
    return CellSet(std::move(out));
}

} // namespace

CellSet FlowGraph::forward_reach(const CellSet& cells) const
{
    return reach(size(), cells, [this](CellId v) { return out_edges(v); });
}

CellSet FlowGraph::backward_reach(const CellSet& cells) const
{
    return reach(size(), cells, [this](CellId v) { return in_edges(v); });
}

// --------------------------------------------------- MorseDecomposition

bool MorseDecomposition::less(std::size_t p, std::size_t q) const
{
    return below.at(q).at(p) != 0;
}

std::vector<std::pair<std::size_t, std::size_t>> MorseDecomposition::order_pairs() const
{
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t p = 0; p < size(); ++p)
        for (std::size_t q = 0; q < size(); ++q)
            if (less(p, q))
                out.emplace_back(p, q);
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> MorseDecomposition::hasse() const
{
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (auto [p, q] : order_pairs()) {
        bool covered = true;
        for (std::size_t r = p + 1; r < q && covered; ++r)
            if (less(p, r) && less(r, q))
                covered = false;
        if (covered)
            out.emplace_back(p, q);
    }
    return out;
}

namespace {

std::vector<char> membership(std::size_t n, std::span<const std::size_t> indices)
{
    std::vector<char> in(n, 0);
    for (std::size_t i : indices) {
        if (i >= n)
            throw Error(ErrorCode::NotAnInterval, "Morse index " + std::to_string(i) + " out of range");
        in[i] = 1;
    }
    return in;
}

} // namespace

bool MorseDecomposition::is_interval(std::span<const std::size_t> indices) const
{
    const auto in = membership(size(), indices);
    for (std::size_t q = 0; q < size(); ++q) {
        if (in[q])
            continue;
        bool above = false, under = false;
        for (std::size_t r = 0; r < size(); ++r) {
            if (!in[r])
                continue;
            above |= less(q, r);
            under |= less(r, q);
        }
        if (above && under)
            return false;
    }
    return true;
}

bool MorseDecomposition::is_down_set(std::span<const std::size_t> indices) const
{
    const auto in = membership(size(), indices);
    for (std::size_t q = 0; q < size(); ++q)
        for (std::size_t p = 0; p < size(); ++p)
            if (in[q] && !in[p] && less(p, q))
                return false;
    return true;
}

bool MorseDecomposition::is_up_set(std::span<const std::size_t> indices) const
{
    const auto in = membership(size(), indices);
    for (std::size_t q = 0; q < size(); ++q)
        for (std::size_t p = 0; p < size(); ++p)
            if (in[p] && !in[q] && less(p, q))
                return false;
    return true;
}

MorseDecomposition finest_morse_decomposition(const FlowGraph& graph)
{
    const std::size_t n = graph.size();
    const auto& V = graph.field();
    constexpr std::uint32_t unset = static_cast<std::uint32_t>(-1);

    // iterative Tarjan; components come out sinks first
    std::vector<std::uint32_t> index(n, unset), low(n, 0), comp(n, unset);
    std::vector<CellId> stack;
    std::vector<std::pair<CellId, std::size_t>> calls;
    std::vector<std::vector<CellId>> components;
    std::uint32_t counter = 0;
    for (CellId s = 0; s < n; ++s) {
        if (index[s] != unset)
            continue;
        index[s] = low[s] = counter++;
        stack.push_back(s);
        calls.emplace_back(s, 0);
        while (!calls.empty()) {
            auto& [v, pos] = calls.back();
            const auto edges = graph.out_edges(v);
            if (pos < edges.size()) {
                const CellId w = edges[pos++];
                if (index[w] == unset) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    calls.emplace_back(w, 0);
                } else if (comp[w] == unset) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            const CellId done = v;
            calls.pop_back();
            if (low[done] == index[done]) {
                std::vector<CellId> members;
                CellId w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    comp[w] = static_cast<std::uint32_t>(components.size());
                    members.push_back(w);
                } while (w != done);
                components.push_back(std::move(members));
            }
            if (!calls.empty())
                low[calls.back().first] = std::min(low[calls.back().first], low[done]);
        }
    }

    MorseDecomposition out;
    out.component = comp;
    out.morse_of_component.assign(components.size(), MorseDecomposition::npos);
    for (std::size_t c = 0; c < components.size(); ++c) {
        CellSet cells(components[c]);
        const std::size_t mv = V.index_of(cells[0]);
        const bool inside_one = std::all_of(cells.begin(), cells.end(), [&](CellId x) { return V.index_of(x) == mv; });
        // a component inside one regular multivector traps every solution confined to it
        if (inside_one && !V.is_critical(mv))
            continue;
        out.morse_of_component[c] = out.morse_sets.size();
        out.morse_sets.push_back(std::move(cells));
    }

    const std::size_t m = out.morse_sets.size();
    const std::size_t words = (m + 63) / 64;
    std::vector<std::uint64_t> reach(components.size() * words, 0);
    for (std::size_t c = 0; c < components.size(); ++c) {
        std::uint64_t* row = reach.data() + c * words;
        for (CellId v : components[c])
            for (CellId w : graph.out_edges(v)) {
                const std::uint32_t d = comp[w];
                if (d == c)
                    continue;
                const std::uint64_t* other = reach.data() + d * words;
                for (std::size_t k = 0; k < words; ++k)
                    row[k] |= other[k];
                const std::size_t p = out.morse_of_component[d];
                if (p != MorseDecomposition::npos)
                    row[p / 64] |= std::uint64_t{1} << (p % 64);
            }
    }
    out.below.assign(m, std::vector<char>(m, 0));
    for (std::size_t q = 0; q < m; ++q) {
        const std::uint64_t* row = reach.data() + comp[out.morse_sets[q][0]] * words;
        for (std::size_t p = 0; p < m; ++p)
            out.below[q][p] = (row[p / 64] >> (p % 64)) & 1;
    }

    out.conley_indices.reserve(m);
    for (const auto& s : out.morse_sets)
        out.conley_indices.push_back(relative_betti(graph.complex(), s));
    return out;
}

CellSet connection_set(const FlowGraph& graph, const CellSet& from, const CellSet& to)
{
    return set_intersection(graph.forward_reach(from), graph.backward_reach(to));
}

CellSet morse_interval(const FlowGraph& graph, const MorseDecomposition& morse, std::span<const std::size_t> indices)
{
    if (indices.empty())
        throw Error(ErrorCode::NotAnInterval, "empty index set");
    if (!morse.is_interval(indices))
        throw Error(ErrorCode::NotAnInterval, "index set is not convex in the poset");
    std::vector<CellId> seed;
    for (std::size_t p : indices)
        seed.insert(seed.end(), morse.morse_sets[p].begin(), morse.morse_sets[p].end());
    const CellSet s(std::move(seed));
    return connection_set(graph, s, s);
}

bool is_attractor(const FlowGraph& graph, const CellSet& cells)
{
    return graph.image(cells) == cells;
}

bool is_repeller(const FlowGraph& graph, const CellSet& cells)
{
    return graph.preimage(cells) == cells;
}

bool is_attractor_within(const FlowGraph& graph, const CellSet& cells, const CellSet& ambient)
{
    return ambient.includes(cells) && set_intersection(graph.image(cells), ambient) == cells;
}

bool is_repeller_within(const FlowGraph& graph, const CellSet& cells, const CellSet& ambient)
{
    return ambient.includes(cells) && set_intersection(graph.preimage(cells), ambient) == cells;
}

CellSet invariant_part(const FlowGraph& graph, const MorseDecomposition& morse)
{
    if (morse.size() == 0)
        return {};
    std::vector<std::size_t> all(morse.size());
    for (std::size_t p = 0; p < all.size(); ++p)
        all[p] = p;
    return morse_interval(graph, morse, all);
}

LimitIndices alpha_omega(const FlowGraph& graph, const MorseDecomposition& morse, CellId x)
{
    if (x >= graph.size())
        throw Error(ErrorCode::UnknownCell, "cell " + std::to_string(x));
    const CellSet back = graph.backward_reach(CellSet{x});
    const CellSet fwd = graph.forward_reach(CellSet{x});
    LimitIndices out;
    for (std::size_t p = 0; p < morse.size(); ++p) {
        if (back.contains(morse.morse_sets[p][0]))
            out.alpha.push_back(p);
        if (fwd.contains(morse.morse_sets[p][0]))
            out.omega.push_back(p);
    }
    if (out.alpha.empty() || out.omega.empty())
        throw Error(ErrorCode::NoEssentialSolution, "no essential solution through " + graph.complex().label(x));
    return out;
}

} // namespace cmvf
