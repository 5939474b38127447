#pragma once

#include "cmvf/dynamics.hpp"
#include "cmvf/parallel.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cmvf {

/// CH(S) = H(cl S, mo S). Throws NotIsolatedInvariant unless S is
/// V-compatible and locally closed.
BettiVector conley_index(const MultivectorField& field, const CellSet& cells);

struct Generator {
    std::size_t morse_index;
    unsigned dim;
    /// A cell surviving the reduction, for tracing entries back to phase space.
    CellId rep_cell;

    friend bool operator==(const Generator&, const Generator&) = default;
};

/// Delta on the direct sum of the Conley indices. Generators are ordered by
/// (morse_index, dim, rep_cell); delta(i, j) is the coefficient of generator
/// i in the boundary of generator j.
struct ConnectionMatrix {
    std::size_t poset_size = 0;
    /// below[q][p] != 0 iff p < q, copied from the decomposition.
    std::vector<std::vector<char>> below;
    std::vector<Generator> generators;
    SparseMatrix delta{Field::prime(2), 0, 0};

    /// Generator positions belonging to the given Morse indices, ascending.
    std::vector<std::uint32_t> generators_of(std::span<const std::size_t> indices) const;
    /// Delta(p, q): rows from p, columns from q.
    SparseMatrix block(std::size_t p, std::size_t q) const;
    /// Delta(I).
    SparseMatrix minor(std::span<const std::size_t> indices) const;
};

enum class PivotOrder { lowest_id, highest_id, shuffled };

struct ConnectionMatrixOptions {
    PivotOrder order = PivotOrder::lowest_id;
    std::uint64_t seed = 0;
};

/// Filtered reduction of the boundary operator on the invariant part:
/// pairs inside one multivector are eliminated first, then pairs inside one
/// strongly connected component. Throws ReductionStalled if the survivors do
/// not match the Conley indices.
ConnectionMatrix connection_matrix(const FlowGraph& graph, const MorseDecomposition& morse,
                                   const ConnectionMatrixOptions& options = {});

/// Homology of a graded matrix with d(i, j) != 0 only when dims[j] = dims[i] + 1.
BettiVector graded_homology(const SparseMatrix& d, std::span<const unsigned> dims);

struct ForcedConnection {
    std::size_t from; // q, the larger index
    std::size_t to;   // p
    bool connection_nonempty;
};

struct VerificationReport {
    bool upper_triangular = true;
    bool square_zero = true;
    bool degree_minus_one = true;
    bool intervals_match = true;
    bool forced_connections_ok = true;
    bool exhaustive = true;
    std::size_t intervals_checked = 0;
    std::vector<ForcedConnection> forced;
    std::vector<std::string> failures;

    bool ok() const noexcept
    {
        return upper_triangular && square_zero && degree_minus_one && intervals_match && forced_connections_ok;
    }
};

struct VerifyOptions {
    /// Posets up to this size are checked on every interval.
    std::size_t exhaustive_limit = 12;
    /// Random intervals drawn beyond the structured sample for larger posets.
    std::size_t random_samples = 200;
    std::uint64_t seed = 1;
    Execution exec = Execution::parallel;
};

/// Intervals used by verification: all of them up to the exhaustive limit,
/// otherwise singletons, covering pairs, principal down/up sets, the whole
/// poset and random [p, q] intervals.
std::vector<std::vector<std::size_t>> poset_intervals(const MorseDecomposition& morse, const VerifyOptions& options,
                                                      bool* exhaustive = nullptr);

VerificationReport verify_connection_matrix(const ConnectionMatrix& cm, const FlowGraph& graph,
                                            const MorseDecomposition& morse, const VerifyOptions& options = {});

} // namespace cmvf
