#pragma once

#include "cmvf/homology.hpp"
#include "cmvf/lefschetz.hpp"
#include "cmvf/parallel.hpp"

#include <span>
#include <vector>

namespace cmvf {

enum class Tag { critical, regular };

/// Throws NotPartition or NotLocallyClosed, naming the offending multivector.
void validate_mvf(const LefschetzComplex& complex, std::span<const CellSet> parts);

/// Tags each part: critical iff H(cl V, mo V) != 0.
std::vector<Tag> classify(const LefschetzComplex& complex, std::span<const CellSet> parts,
                          Execution exec = Execution::parallel);

/// A validated, classified partition of a complex into locally closed sets.
/// Holds a non-owning reference to the complex, which must outlive it.
class MultivectorField {
public:
    /// Validates and classifies. Parts are reordered by their smallest cell id.
    MultivectorField(const LefschetzComplex& complex, std::vector<CellSet> parts,
                     Execution exec = Execution::parallel);

    static MultivectorField singletons(const LefschetzComplex& complex);

    const LefschetzComplex& complex() const noexcept { return *complex_; }
    std::size_t size() const noexcept { return parts_.size(); }
    const std::vector<CellSet>& multivectors() const noexcept { return parts_; }
    const CellSet& multivector(std::size_t i) const { return parts_.at(i); }

    std::size_t index_of(CellId x) const { return part_of_.at(x); }
    /// [x]_V
    const CellSet& of(CellId x) const { return parts_[index_of(x)]; }

    Tag tag(std::size_t i) const { return tags_.at(i); }
    bool is_critical(std::size_t i) const { return tags_.at(i) == Tag::critical; }
    const std::vector<Tag>& tags() const noexcept { return tags_; }

private:
    const LefschetzComplex* complex_;
    std::vector<CellSet> parts_;
    std::vector<std::uint32_t> part_of_;
    std::vector<Tag> tags_;
};

void validate_mvf(const MultivectorField& field);

/// The finest partition into locally closed sets placing every transition set
/// inside a single part.
MultivectorField minimal_mvf(const LefschetzComplex& complex, std::span<const CellSet> transitions,
                             Execution exec = Execution::parallel);

/// True iff `cells` is a union of whole multivectors.
bool is_v_compatible(const MultivectorField& field, const CellSet& cells);

/// Smallest V-compatible locally closed superset of `cells`.
CellSet v_hull(const MultivectorField& field, const CellSet& cells);

} // namespace cmvf
