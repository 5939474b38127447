#pragma once

#include "cmvf/homology.hpp"
#include "cmvf/mvf.hpp"

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace cmvf {

/// Digraph of the flow map Pi(x) = cl x u [x]_V. Owns a copy of the field;
/// the complex must outlive the graph.
///
/// Reachability uses a sparser generator graph with the same transitive
/// closure: x -> each facet of x, and x -> the next cell of [x] in a cycle.
class FlowGraph {
public:
    explicit FlowGraph(MultivectorField field);

    const MultivectorField& field() const noexcept { return field_; }
    const LefschetzComplex& complex() const noexcept { return field_.complex(); }
    std::size_t size() const noexcept { return complex().size(); }

    CellSet successors(CellId x) const;
    /// Pi(S)
    CellSet image(const CellSet& cells) const;
    /// Pi^{-1}(S) = {x : Pi(x) meets S}
    CellSet preimage(const CellSet& cells) const;

    std::span<const CellId> out_edges(CellId x) const;
    std::span<const CellId> in_edges(CellId x) const;

    /// Cells reachable from (resp. reaching) `cells`, including `cells`.
    CellSet forward_reach(const CellSet& cells) const;
    CellSet backward_reach(const CellSet& cells) const;

private:
    MultivectorField field_;
    std::vector<std::size_t> out_offsets_, in_offsets_;
    std::vector<CellId> out_, in_;
};

/// Finest Morse decomposition. Morse indices are numbered so that p < q in
/// the poset implies p < q as integers.
class MorseDecomposition {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    std::size_t size() const noexcept { return morse_sets.size(); }

    /// Strict order: M_p is reachable from M_q and p != q.
    bool less(std::size_t p, std::size_t q) const;
    /// All pairs (p, q) with p < q, lexicographic.
    std::vector<std::pair<std::size_t, std::size_t>> order_pairs() const;
    /// Covering pairs of the order.
    std::vector<std::pair<std::size_t, std::size_t>> hasse() const;

    bool is_interval(std::span<const std::size_t> indices) const;
    bool is_down_set(std::span<const std::size_t> indices) const;
    bool is_up_set(std::span<const std::size_t> indices) const;

    std::vector<CellSet> morse_sets;
    std::vector<BettiVector> conley_indices;
    /// Strongly connected component of every cell, numbered sinks first.
    std::vector<std::uint32_t> component;
    /// Morse index of every component, or npos when it carries no essential solution.
    std::vector<std::size_t> morse_of_component;
    /// below[q][p] != 0 iff p < q.
    std::vector<std::vector<char>> below;
};

MorseDecomposition finest_morse_decomposition(const FlowGraph& graph);

/// forward_reach(A) n backward_reach(B).
CellSet connection_set(const FlowGraph& graph, const CellSet& from, const CellSet& to);

/// M_I. Throws NotAnInterval.
CellSet morse_interval(const FlowGraph& graph, const MorseDecomposition& morse, std::span<const std::size_t> indices);

/// Pi(S) = S and Pi^{-1}(S) = S on the whole complex.
bool is_attractor(const FlowGraph& graph, const CellSet& cells);
bool is_repeller(const FlowGraph& graph, const CellSet& cells);

/// The same tests for the flow restricted to an invariant ambient set:
/// Pi(S) n ambient = S and Pi^{-1}(S) n ambient = S.
bool is_attractor_within(const FlowGraph& graph, const CellSet& cells, const CellSet& ambient);
bool is_repeller_within(const FlowGraph& graph, const CellSet& cells, const CellSet& ambient);

/// M_I over the whole poset: every cell on an essential solution.
CellSet invariant_part(const FlowGraph& graph, const MorseDecomposition& morse);

struct LimitIndices {
    std::vector<std::size_t> alpha;
    std::vector<std::size_t> omega;
};

/// Morse indices attainable as alpha/omega limits of essential solutions
/// through x. Throws NoEssentialSolution.
LimitIndices alpha_omega(const FlowGraph& graph, const MorseDecomposition& morse, CellId x);

} // namespace cmvf
