// cmvf: Morse decompositions, Morse intervals and connection matrices of
// multivector fields induced by planar or cubical discretisations.

#include "cmvf/error.hpp"
#include "cmvf/pipeline.hpp"

#include "CLI11.hpp"

#include <iostream>

using namespace cmvf;

namespace {

enum Exit { ok = 0, config_error = 2, computation_error = 3, verification_failure = 4 };

int exit_code_for(ErrorCode code)
{
    switch (code) {
    case ErrorCode::ConfigError:
    case ErrorCode::InvalidFormat:
    case ErrorCode::SyntaxError:
    case ErrorCode::UnknownVariable:
    case ErrorCode::ArityMismatch:
    case ErrorCode::UnsupportedDimension:
    case ErrorCode::NotAnInterval:
        return config_error;
    default:
        return computation_error;
    }
}

struct Options {
    std::string system;
    std::string mesh;
    std::string field;
    std::string samples;
    std::string out = ".";
    std::vector<std::size_t> indices;
    std::optional<std::uint64_t> seed;
    std::string product;
    bool serial = false;
};

void add_common(CLI::App* cmd, Options& o)
{
    cmd->add_option("--system", o.system, "planar9, allencahn3d, or a system file")->required();
    cmd->add_option("--mesh", o.mesh, "delaunay:N or cubical:AxBxC (overrides the system's mesh)");
    cmd->add_option("--field", o.field, "Q or GF:p (default: the system's field, GF:2 unless set)");
    cmd->add_option("--out", o.out, "output directory")->capture_default_str();
    cmd->add_option("--seed", o.seed, "seed for the Delaunay point set");
    cmd->add_option("--samples", o.samples, "barycenter_and_vertices, barycenter or vertices");
    cmd->add_flag("--serial", o.serial, "run the parallel kernels serially");
}

PipelineConfig make_config(const Options& o)
{
    PipelineConfig cfg;
    cfg.system = is_builtin_system(o.system) ? builtin_system(o.system) : load_system(o.system);
    if (!o.mesh.empty()) {
        const auto boundary = cfg.system.mesh.boundary;
        cfg.system.mesh = MeshSpec::parse(o.mesh);
        cfg.system.mesh.boundary = boundary;
    }
    if (!o.field.empty())
        cfg.system.field = Field::parse(o.field);
    if (o.seed)
        cfg.system.seed = *o.seed;
    if (!o.samples.empty())
        cfg.system.samples = parse_sample_strategy(o.samples);
    check_system(cfg.system);
    cfg.out_dir = o.out;
    cfg.indices = o.indices;
    cfg.product = o.product;
    cfg.exec = o.serial ? Execution::serial : Execution::parallel;
    return cfg;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Conley-Morse analysis of multivector fields on Lefschetz complexes"};
    app.require_subcommand(1);
    Options o;

    auto* morse = app.add_subcommand("morse", "finest Morse decomposition with Conley indices (morse.json, morse.svg)");
    auto* interval = app.add_subcommand("interval", "Morse interval of the given indices (interval.json, interval.svg)");
    auto* cm = app.add_subcommand("cm", "connection matrix with verification report (cm.json)");
    auto* plot = app.add_subcommand("plot", "SVG of morse sets, a Morse interval, or the Hasse diagram");
    for (auto* cmd : {morse, interval, cm, plot})
        add_common(cmd, o);
    interval->add_option("--indices", o.indices, "Morse indices, comma separated")->delimiter(',')->required();
    plot->add_option("--indices", o.indices, "Morse indices for --product interval")->delimiter(',');
    plot->add_option("--product", o.product, "morse, interval or hasse")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : config_error;
    }

    try {
        const auto cfg = make_config(o);
        CommandResult result;
        if (morse->parsed())
            result = cmd_morse(cfg);
        else if (interval->parsed())
            result = cmd_interval(cfg);
        else if (cm->parsed())
            result = cmd_cm(cfg);
        else
            result = cmd_plot(cfg);
        std::cout << result.summary << "\n";
        for (const auto& f : result.files)
            std::cout << "wrote " << f.string() << "\n";
        if (!result.verified) {
            std::cerr << "connection matrix verification failed; see cm.json\n";
            return verification_failure;
        }
        return ok;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return computation_error;
    }
}
