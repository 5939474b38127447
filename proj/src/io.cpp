#include "cmvf/io.hpp"

#include "cmvf/error.hpp"

#include <map>

namespace cmvf {

namespace {

[[noreturn]] void bad(const std::string& what)
{
    throw Error(ErrorCode::InvalidFormat, what);
}

Json id_list(const CellSet& cells)
{
    return Json(cells.ids());
}

CellSet cells_from(const Json& value, std::size_t count)
{
    if (!value.is_array())
        bad("expected an array of cell ids");
    std::vector<CellId> ids;
    for (const auto& v : value) {
        if (!v.is_number_unsigned() || v.get<std::size_t>() >= count)
            bad("bad cell id " + v.dump());
        ids.push_back(v.get<CellId>());
    }
    return CellSet(std::move(ids));
}

} // namespace

Json scalar_json(const Scalar& value)
{
    if (value.field().is_rational())
        return value.to_string();
    return value.residue();
}

Scalar scalar_from_json(Field field, const Json& value)
{
    if (value.is_string())
        return Scalar::parse(field, value.get<std::string>());
    if (value.is_number_integer())
        return Scalar(field, value.get<long long>());
    bad("bad scalar " + value.dump());
}

Json complex_json(const LefschetzComplex& X)
{
    Json cells = Json::array();
    Json kappa = Json::array();
    for (CellId x = 0; x < X.size(); ++x) {
        cells.push_back({{"id", x}, {"label", X.label(x)}, {"dim", X.dim(x)}});
        for (const auto& f : X.facets(x))
            kappa.push_back({x, f.cell, scalar_json(f.coefficient)});
    }
    return {{"field", X.field().name()}, {"cells", std::move(cells)}, {"kappa", std::move(kappa)}};
}

LefschetzComplex complex_from_json(const Json& value)
{
    try {
        const Field field = Field::parse(value.at("field").get<std::string>());
        LefschetzComplex::Builder b(field);
        std::map<std::uint64_t, std::size_t> handle;
        for (const auto& c : value.at("cells")) {
            const auto id = c.at("id").get<std::uint64_t>();
            const auto h = b.add_cell(c.at("label").get<std::string>(), c.at("dim").get<unsigned>());
            if (!handle.emplace(id, h).second)
                bad("duplicate cell id " + std::to_string(id));
        }
        for (const auto& k : value.at("kappa")) {
            if (!k.is_array() || k.size() != 3)
                bad("kappa entries are [x, y, scalar]");
            const auto x = handle.find(k[0].get<std::uint64_t>());
            const auto y = handle.find(k[1].get<std::uint64_t>());
            if (x == handle.end() || y == handle.end())
                bad("kappa refers to an unknown cell: " + k.dump());
            b.set_kappa(x->second, y->second, scalar_from_json(field, k[2]));
        }
        auto X = std::move(b).build();
        validate(X);
        return X;
    } catch (const Json::exception& e) {
        bad(e.what());
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ConfigError)
            bad(e.what());
        throw;
    }
}

Json mvf_json(const MultivectorField& V)
{
    Json parts = Json::array();
    Json tags = Json::array();
    for (std::size_t i = 0; i < V.size(); ++i) {
        parts.push_back(id_list(V.multivector(i)));
        tags.push_back(V.is_critical(i) ? "critical" : "regular");
    }
    return {{"multivectors", std::move(parts)}, {"tags", std::move(tags)}};
}

MultivectorField mvf_from_json(const LefschetzComplex& complex, const Json& value)
{
    std::vector<CellSet> parts;
    try {
        for (const auto& p : value.at("multivectors"))
            parts.push_back(cells_from(p, complex.size()));
    } catch (const Json::exception& e) {
        bad(e.what());
    }
    MultivectorField V(complex, std::move(parts));
    // tags are derived data; a mismatch means the file belongs to another complex or field
    if (value.contains("tags")) {
        const auto& tags = value["tags"];
        if (!tags.is_array() || tags.size() != V.size())
            bad("tags do not match the multivectors");
        for (std::size_t i = 0; i < V.size(); ++i)
            if (tags[i] != (V.is_critical(i) ? "critical" : "regular"))
                bad("multivector " + std::to_string(i) + " is tagged " + tags[i].dump());
    }
    return V;
}

Json poset_json(const MorseDecomposition& morse)
{
    Json pairs = Json::array();
    for (const auto& [p, q] : morse.order_pairs())
        pairs.push_back({p, q});
    return pairs;
}

Json morse_json(const MorseDecomposition& morse)
{
    Json sets = Json::array();
    Json indices = Json::array();
    for (std::size_t p = 0; p < morse.size(); ++p) {
        sets.push_back(id_list(morse.morse_sets[p]));
        indices.push_back(morse.conley_indices[p].trimmed());
    }
    return {{"morse_sets", std::move(sets)}, {"poset", poset_json(morse)}, {"conley_indices", std::move(indices)}};
}

Json connection_matrix_json(const ConnectionMatrix& cm)
{
    Json pairs = Json::array();
    for (std::size_t p = 0; p < cm.poset_size; ++p)
        for (std::size_t q = 0; q < cm.poset_size; ++q)
            if (cm.below[q][p])
                pairs.push_back({p, q});
    Json gens = Json::array();
    for (const auto& g : cm.generators)
        gens.push_back({{"morse_index", g.morse_index}, {"dim", g.dim}, {"rep_cell", g.rep_cell}});
    Json delta = Json::array();
    for (std::size_t j = 0; j < cm.delta.cols(); ++j)
        for (const auto& e : cm.delta.column(j))
            delta.push_back({e.index, j, scalar_json(e.value)});
    std::sort(delta.begin(), delta.end());
    return {{"poset", std::move(pairs)}, {"generators", std::move(gens)}, {"delta", std::move(delta)}};
}

Json verification_json(const VerificationReport& r)
{
    Json forced = Json::array();
    for (const auto& f : r.forced)
        forced.push_back({{"from", f.from}, {"to", f.to}, {"connection_nonempty", f.connection_nonempty}});
    return {{"upper_triangular", r.upper_triangular},
            {"square_zero", r.square_zero},
            {"degree_minus_one", r.degree_minus_one},
            {"intervals_match", r.intervals_match},
            {"forced_connections_ok", r.forced_connections_ok},
            {"exhaustive", r.exhaustive},
            {"intervals_checked", r.intervals_checked},
            {"forced_connections", std::move(forced)},
            {"failures", r.failures},
            {"ok", r.ok()}};
}

std::string dump(const Json& value)
{
    return value.dump(2) + "\n";
}

} // namespace cmvf
