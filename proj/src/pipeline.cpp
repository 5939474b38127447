#include "cmvf/pipeline.hpp"

#include "cmvf/error.hpp"
#include "cmvf/svg.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace cmvf {

namespace {

Json system_json(const SystemSpec& s)
{
    return {{"name", s.name},
            {"dim", s.dim},
            {"components", s.components},
            {"lo", s.lo},
            {"hi", s.hi},
            {"mesh", s.mesh.to_string()},
            {"boundary_points", s.mesh.boundary},
            {"seed", s.seed},
            {"field", s.field.name()},
            {"samples", std::string(to_string(s.samples))}};
}

std::vector<double> center_of(const GeometricComplex& mesh, const CellSet& cells)
{
    std::vector<double> c(mesh.ambient_dim(), 0.0);
    for (auto x : cells) {
        const auto b = mesh.barycenter(x);
        for (std::size_t a = 0; a < c.size(); ++a)
            c[a] += b[a];
    }
    for (auto& v : c)
        v = std::round(v / static_cast<double>(cells.size()) * 1e6) / 1e6 + 0.0; // no "-0"
    return c;
}

std::filesystem::path write_file(const std::filesystem::path& dir, const std::string& name, const std::string& text)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    const auto path = dir / name;
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out)
        throw Error(ErrorCode::ConfigError, "cannot write " + path.string());
    return path;
}

std::vector<std::size_t> checked_indices(const Analysis& a, std::vector<std::size_t> indices)
{
    if (indices.empty())
        throw Error(ErrorCode::ConfigError, "--indices is required for Morse intervals");
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    for (auto p : indices)
        if (p >= a.morse.size())
            throw Error(ErrorCode::ConfigError, "Morse index " + std::to_string(p) + " out of range; the decomposition has " +
                                                    std::to_string(a.morse.size()) + " sets");
    return indices;
}

std::string title_of(const Analysis& a, const std::string& what)
{
    return a.system.name + " " + what + " (" + a.system.mesh.to_string() + ", " + a.system.field.name() + ")";
}

std::string interval_svg(const Analysis& a, std::span<const std::size_t> indices, const CellSet& cells)
{
    std::vector<Region> regions{{cells, 9, "interval " + Json(std::vector<std::size_t>(indices.begin(), indices.end())).dump()}};
    for (auto p : indices)
        regions.push_back({a.morse.morse_sets[p], p, "M" + std::to_string(p) + "  CH " + a.morse.conley_indices[p].to_string()});
    return mesh_svg(*a.mesh, regions, title_of(a, "Morse interval"));
}

std::string signature(const MorseDecomposition& morse)
{
    std::ostringstream s;
    s << morse.size() << " Morse sets:";
    for (std::size_t p = 0; p < morse.size(); ++p)
        s << " " << morse.conley_indices[p].to_string();
    return s.str();
}

} // namespace

Analysis analyze(const SystemSpec& system, Execution exec)
{
    Analysis a;
    a.system = system;
    a.mesh = std::make_unique<GeometricComplex>(build_mesh(system));
    TransitionOptions options;
    options.samples = system.samples;
    options.exec = exec;
    a.graph = std::make_unique<FlowGraph>(mvf_from_field(*a.mesh, system.vector_field(), options));
    a.morse = finest_morse_decomposition(*a.graph);
    return a;
}

std::vector<std::size_t> indices_with_conley_degree(const MorseDecomposition& morse, std::size_t k)
{
    std::vector<std::size_t> out;
    for (std::size_t p = 0; p < morse.size(); ++p) {
        const auto& ch = morse.conley_indices[p];
        if (ch[k] != 0 && ch.total() == ch[k])
            out.push_back(p);
    }
    return out;
}

Json morse_report(const Analysis& a)
{
    auto j = morse_json(a.morse);
    Json hasse = Json::array();
    for (const auto& [p, q] : a.morse.hasse())
        hasse.push_back({p, q});
    j["hasse"] = std::move(hasse);
    Json centers = Json::array();
    long long morse_sum = 0;
    for (std::size_t p = 0; p < a.morse.size(); ++p) {
        centers.push_back(center_of(*a.mesh, a.morse.morse_sets[p]));
        morse_sum += a.morse.conley_indices[p].euler_characteristic();
    }
    j["centers"] = std::move(centers);
    const auto inv = invariant_part(*a.graph, a.morse);
    const long long inv_chi = inv.empty() ? 0 : relative_betti(a.complex(), inv).euler_characteristic();
    j["euler"] = {{"morse_sets", morse_sum}, {"invariant_part", inv_chi}};
    std::size_t critical = 0;
    for (std::size_t i = 0; i < a.field().size(); ++i)
        critical += a.field().is_critical(i);
    j["complex"] = {{"cells", a.complex().size()},
                    {"dimension", a.complex().dimension()},
                    {"multivectors", a.field().size()},
                    {"critical_multivectors", critical}};
    j["system"] = system_json(a.system);
    return j;
}

Json interval_report(const Analysis& a, std::span<const std::size_t> indices)
{
    const auto cells = morse_interval(*a.graph, a.morse, indices);
    const auto inv = invariant_part(*a.graph, a.morse);
    const bool down = a.morse.is_down_set(indices), up = a.morse.is_up_set(indices);
    Json contained = Json::array();
    for (std::size_t p = 0; p < a.morse.size(); ++p)
        if (cells.includes(a.morse.morse_sets[p]))
            contained.push_back(p);
    return {{"indices", std::vector<std::size_t>(indices.begin(), indices.end())},
            {"is_down_set", down},
            {"is_up_set", up},
            {"is_attractor", is_attractor(*a.graph, cells)},
            {"is_repeller_within_invariant_part", is_repeller_within(*a.graph, cells, inv)},
            {"cells", cells.ids()},
            {"size", cells.size()},
            {"conley_index", conley_index(a.field(), cells).trimmed()},
            {"morse_sets_contained", std::move(contained)},
            {"system", system_json(a.system)}};
}

Json cm_report(const Analysis& a, const ConnectionMatrix& cm, const VerificationReport& report)
{
    auto j = connection_matrix_json(cm);
    j["verification"] = verification_json(report);
    Json labels = Json::array();
    for (const auto& g : cm.generators)
        labels.push_back(a.complex().label(g.rep_cell));
    j["rep_cell_labels"] = std::move(labels);
    j["system"] = system_json(a.system);
    return j;
}

CommandResult cmd_morse(const PipelineConfig& cfg)
{
    const auto a = analyze(cfg.system, cfg.exec);
    CommandResult r;
    r.files.push_back(write_file(cfg.out_dir, "morse.json", dump(morse_report(a))));
    if (a.mesh->ambient_dim() == 2 && a.complex().dimension() == 2)
        r.files.push_back(write_file(cfg.out_dir, "morse.svg", morse_svg(*a.mesh, a.morse, title_of(a, "Morse sets"))));
    r.summary = signature(a.morse);
    return r;
}

CommandResult cmd_interval(const PipelineConfig& cfg)
{
    const auto a = analyze(cfg.system, cfg.exec);
    const auto indices = checked_indices(a, cfg.indices);
    const auto report = interval_report(a, indices);
    CommandResult r;
    r.files.push_back(write_file(cfg.out_dir, "interval.json", dump(report)));
    if (a.mesh->ambient_dim() == 2 && a.complex().dimension() == 2) {
        const CellSet cells(report["cells"].get<std::vector<CellId>>());
        r.files.push_back(write_file(cfg.out_dir, "interval.svg", interval_svg(a, indices, cells)));
    }
    r.summary = "interval of " + std::to_string(report["size"].get<std::size_t>()) + " cells, down set " +
                (report["is_down_set"].get<bool>() ? "yes" : "no") + ", attractor " +
                (report["is_attractor"].get<bool>() ? "yes" : "no");
    return r;
}

CommandResult cmd_cm(const PipelineConfig& cfg)
{
    const auto a = analyze(cfg.system, cfg.exec);
    const auto cm = connection_matrix(*a.graph, a.morse);
    VerifyOptions vo;
    vo.exec = cfg.exec;
    const auto report = verify_connection_matrix(cm, *a.graph, a.morse, vo);
    CommandResult r;
    r.files.push_back(write_file(cfg.out_dir, "cm.json", dump(cm_report(a, cm, report))));
    r.verified = report.ok();
    std::size_t forced = 0;
    for (const auto& f : report.forced)
        forced += f.connection_nonempty;
    r.summary = std::to_string(cm.generators.size()) + " generators, " + std::to_string(cm.delta.nonzeros()) +
                " nonzero entries, " + std::to_string(forced) + " forced connections, verification " +
                (report.ok() ? "passed" : "FAILED");
    return r;
}

CommandResult cmd_plot(const PipelineConfig& cfg)
{
    if (cfg.product.empty())
        throw Error(ErrorCode::ConfigError, "plot needs --product morse|interval|hasse");
    if (cfg.product != "morse" && cfg.product != "interval" && cfg.product != "hasse")
        throw Error(ErrorCode::ConfigError, "unknown plot product '" + cfg.product + "'");
    const auto a = analyze(cfg.system, cfg.exec);
    CommandResult r;
    if (cfg.product == "hasse") {
        r.files.push_back(write_file(cfg.out_dir, "hasse.svg", hasse_svg(a.morse, title_of(a, "Morse poset"))));
    } else if (cfg.product == "morse") {
        r.files.push_back(write_file(cfg.out_dir, "morse.svg", morse_svg(*a.mesh, a.morse, title_of(a, "Morse sets"))));
    } else {
        const auto indices = checked_indices(a, cfg.indices);
        const auto cells = morse_interval(*a.graph, a.morse, indices);
        r.files.push_back(write_file(cfg.out_dir, "interval.svg", interval_svg(a, indices, cells)));
    }
    r.summary = signature(a.morse);
    return r;
}

} // namespace cmvf
