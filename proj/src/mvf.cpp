#include "cmvf/mvf.hpp"

#include "cmvf/error.hpp"

#include <algorithm>
#include <numeric>

namespace cmvf {

void validate_mvf(const LefschetzComplex& complex, std::span<const CellSet> parts)
{
    std::vector<char> seen(complex.size(), 0);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i].empty())
            throw Error(ErrorCode::NotPartition, "multivector " + std::to_string(i) + " is empty");
        for (CellId c : parts[i]) {
            if (c >= complex.size())
                throw Error(ErrorCode::UnknownCell, "cell " + std::to_string(c));
            if (seen[c])
                throw Error(ErrorCode::NotPartition, "cell " + complex.label(c) + " lies in two multivectors");
            seen[c] = 1;
        }
    }
    for (CellId c = 0; c < complex.size(); ++c)
        if (!seen[c])
            throw Error(ErrorCode::NotPartition, "cell " + complex.label(c) + " is not covered");
    for (std::size_t i = 0; i < parts.size(); ++i)
        if (!is_locally_closed(complex, parts[i]))
            throw Error(ErrorCode::NotLocallyClosed, "multivector " + std::to_string(i) + " containing " +
                                                         complex.label(parts[i][0]));
}

std::vector<Tag> classify(const LefschetzComplex& complex, std::span<const CellSet> parts, Execution exec)
{
    std::vector<Tag> tags(parts.size());
    const auto n = static_cast<std::ptrdiff_t>(parts.size());
    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (std::ptrdiff_t i = 0; i < n; ++i)
            tags[i] = relative_betti(complex, parts[i]).is_zero() ? Tag::regular : Tag::critical;
    } else {
        for (std::ptrdiff_t i = 0; i < n; ++i)
            tags[i] = relative_betti(complex, parts[i]).is_zero() ? Tag::regular : Tag::critical;
    }
    return tags;
}

MultivectorField::MultivectorField(const LefschetzComplex& complex, std::vector<CellSet> parts, Execution exec)
    : complex_(&complex), parts_(std::move(parts))
{
    validate_mvf(complex, parts_);
    std::sort(parts_.begin(), parts_.end(), [](const CellSet& a, const CellSet& b) { return a[0] < b[0]; });
    part_of_.resize(complex.size());
    for (std::size_t i = 0; i < parts_.size(); ++i)
        for (CellId c : parts_[i])
            part_of_[c] = static_cast<std::uint32_t>(i);
    tags_ = classify(complex, parts_, exec);
}

MultivectorField MultivectorField::singletons(const LefschetzComplex& complex)
{
    std::vector<CellSet> parts;
    parts.reserve(complex.size());
    for (CellId c = 0; c < complex.size(); ++c)
        parts.push_back(CellSet{c});
    return MultivectorField(complex, std::move(parts));
}

void validate_mvf(const MultivectorField& field)
{
    validate_mvf(field.complex(), field.multivectors());
}

namespace {

struct UnionFind {
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

    std::uint32_t find(std::uint32_t x)
    {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    bool unite(std::uint32_t a, std::uint32_t b)
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        // keep the smaller id as root so parts are keyed by their minimum
        if (b < a)
            std::swap(a, b);
        parent[b] = a;
        return true;
    }

    std::vector<std::uint32_t> parent;
};

std::vector<CellSet> parts_of(UnionFind& uf)
{
    const std::size_t n = uf.parent.size();
    std::vector<std::vector<CellId>> groups(n);
    for (CellId c = 0; c < n; ++c)
        groups[uf.find(c)].push_back(c);
    std::vector<CellSet> parts;
    for (auto& g : groups)
        if (!g.empty())
            parts.emplace_back(std::move(g));
    return parts;
}

} // namespace

MultivectorField minimal_mvf(const LefschetzComplex& complex, std::span<const CellSet> transitions, Execution exec)
{
    UnionFind uf(complex.size());
    for (const auto& d : transitions) {
        if (!d.empty() && d.ids().back() >= complex.size())
            throw Error(ErrorCode::UnknownCell, "transition set references cell " + std::to_string(d.ids().back()));
        for (CellId c : d)
            uf.unite(d[0], c);
    }
    // A locally closed part containing P contains the face-order hull of P, so
    // merging hulls until nothing changes yields the finest admissible partition.
    std::vector<CellSet> parts = parts_of(uf);
    std::vector<char> dirty(complex.size(), 1);
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& part : parts) {
            if (!dirty[part[0]])
                continue;
            for (CellId c : interval_hull(complex, part))
                changed |= uf.unite(part[0], c);
        }
        if (!changed)
            break;
        std::vector<CellSet> next = parts_of(uf);
        std::fill(dirty.begin(), dirty.end(), 0);
        // a part is unchanged iff it appears verbatim in the previous round
        std::vector<const CellSet*> previous(complex.size(), nullptr);
        for (const auto& p : parts)
            previous[p[0]] = &p;
        for (const auto& p : next)
            if (!previous[p[0]] || !(*previous[p[0]] == p))
                dirty[p[0]] = 1;
        parts.swap(next);
    }
    return MultivectorField(complex, std::move(parts), exec);
}

bool is_v_compatible(const MultivectorField& field, const CellSet& cells)
{
    std::vector<char> seen(field.size(), 0);
    for (CellId c : cells) {
        const auto i = field.index_of(c);
        if (seen[i])
            continue;
        seen[i] = 1;
        for (CellId y : field.multivector(i))
            if (!cells.contains(y))
                return false;
    }
    return true;
}

CellSet v_hull(const MultivectorField& field, const CellSet& cells)
{
    CellSet current = cells;
    while (true) {
        std::vector<CellId> saturated;
        std::vector<char> taken(field.size(), 0);
        for (CellId c : current) {
            const auto i = field.index_of(c);
            if (taken[i])
                continue;
            taken[i] = 1;
            const auto& mv = field.multivector(i);
            saturated.insert(saturated.end(), mv.begin(), mv.end());
        }
        CellSet next = interval_hull(field.complex(), CellSet(std::move(saturated)));
        if (next == current)
            return current;
        current = std::move(next);
    }
}

} // namespace cmvf
