#pragma once

#include "cmvf/lefschetz.hpp"

#include <string>
#include <vector>

namespace cmvf {

/// Betti numbers beta_0, beta_1, ...; equality ignores trailing zeros.
class BettiVector {
public:
    BettiVector() = default;
    BettiVector(std::initializer_list<std::size_t> values);
    explicit BettiVector(std::vector<std::size_t> values);

    /// Zero beyond the stored length.
    std::size_t operator[](std::size_t k) const noexcept { return k < values_.size() ? values_[k] : 0; }
    const std::vector<std::size_t>& values() const noexcept { return values_; }

    bool is_zero() const noexcept;
    std::size_t total() const noexcept;
    long long euler_characteristic() const noexcept;

    /// Values with trailing zeros removed.
    std::vector<std::size_t> trimmed() const;
    /// "(1, 0, 1)"
    std::string to_string() const;

    friend bool operator==(const BettiVector& a, const BettiVector& b) { return a.trimmed() == b.trimmed(); }

private:
    std::vector<std::size_t> values_;
};

struct ChainComplex {
    Field field = Field::prime(2);
    /// bases[k]: the k-cells, ascending by id.
    std::vector<std::vector<CellId>> bases;
    /// boundaries[k]: C_k -> C_{k-1}; boundaries[0] has zero rows.
    std::vector<SparseMatrix> boundaries;
};

ChainComplex chain_complex_of(const LefschetzComplex& complex);

/// Chain complex with basis `cells` and kappa restricted to cells x cells.
/// For a locally closed S this is C(cl S) / C(mo S).
ChainComplex chain_complex_of(const LefschetzComplex& complex, const CellSet& cells);

/// beta_k = dim ker d_k - rank d_{k+1}, reduced top-down with clearing.
BettiVector betti(const ChainComplex& chains);
BettiVector betti(const LefschetzComplex& complex);

/// Removes pairs (a, b) with b the only facet of a in the set, or a the only
/// cofacet of b. Such a pair is eliminated without touching any other
/// incidence, so the restricted chain complex keeps its homology.
CellSet free_reduction(const LefschetzComplex& complex, const CellSet& cells);

/// H(cl S, mo S), computed after free_reduction. Throws NotLocallyClosed.
BettiVector relative_betti(const LefschetzComplex& complex, const CellSet& cells);

} // namespace cmvf
