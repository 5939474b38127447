#include "cmvf/systems.hpp"

#include "cmvf/error.hpp"

#include <boost/program_options/parsers.hpp>

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace cmvf {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

template <class T>
T parse_number(std::string_view text, std::string_view what)
{
    text = trim(text);
    T value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
        throw Error(ErrorCode::ConfigError, "bad " + std::string(what) + " '" + std::string(text) + "'");
    return value;
}

template <class T>
std::vector<T> parse_list(std::string_view text, char sep, std::string_view what)
{
    std::vector<T> out;
    std::size_t start = 0;
    while (true) {
        const auto end = text.find(sep, start);
        out.push_back(parse_number<T>(text.substr(start, end - start), what));
        if (end == std::string_view::npos)
            return out;
        start = end + 1;
    }
}

} // namespace

MeshSpec MeshSpec::parse(std::string_view text)
{
    MeshSpec spec;
    const auto colon = text.find(':');
    if (colon == std::string_view::npos)
        throw Error(ErrorCode::ConfigError, "mesh spec '" + std::string(text) + "' needs a kind, e.g. delaunay:500");
    const auto kind = text.substr(0, colon), rest = text.substr(colon + 1);
    if (kind == "delaunay") {
        spec.kind = Kind::delaunay;
        spec.points = parse_number<std::size_t>(rest, "point count");
    } else if (kind == "cubical") {
        spec.kind = Kind::cubical;
        spec.grid = parse_list<std::size_t>(rest, 'x', "grid size");
    } else {
        throw Error(ErrorCode::ConfigError, "unknown mesh kind '" + std::string(kind) + "'");
    }
    return spec;
}

std::string MeshSpec::to_string() const
{
    if (kind == Kind::delaunay)
        return "delaunay:" + std::to_string(points);
    std::string out = "cubical:";
    for (std::size_t a = 0; a < grid.size(); ++a)
        out += (a ? "x" : "") + std::to_string(grid[a]);
    return out;
}

std::string SystemSpec::join_components() const
{
    std::string out;
    for (std::size_t i = 0; i < components.size(); ++i)
        out += (i ? "; " : "") + components[i];
    return out;
}

SampleStrategy parse_sample_strategy(std::string_view text)
{
    if (text == "barycenter_and_vertices")
        return SampleStrategy::barycenter_and_vertices;
    if (text == "barycenter")
        return SampleStrategy::barycenter;
    if (text == "vertices")
        return SampleStrategy::vertices;
    throw Error(ErrorCode::ConfigError, "unknown sample strategy '" + std::string(text) + "'");
}

std::string_view to_string(SampleStrategy strategy)
{
    switch (strategy) {
    case SampleStrategy::barycenter_and_vertices: return "barycenter_and_vertices";
    case SampleStrategy::barycenter: return "barycenter";
    case SampleStrategy::vertices: return "vertices";
    }
    return "?";
}

bool is_builtin_system(std::string_view name)
{
    return name == "planar9" || name == "allencahn3d";
}

SystemSpec builtin_system(std::string_view name)
{
    SystemSpec s;
    s.name = std::string(name);
    if (name == "planar9") {
        s.dim = 2;
        s.components = {"x1*(1 - x1^2 - 3*x2^2) - 0.01", "x2*(1 - 3*x1^2 - 2*x2^2) + 0.05"};
        s.lo = {-1.25, -1.25};
        s.hi = {1.25, 1.25};
        s.mesh.kind = MeshSpec::Kind::delaunay;
        s.mesh.points = 8000;
        s.mesh.boundary = 16;
        return s;
    }
    if (name == "allencahn3d") {
        // lambda = 3 pi, so lambda / (2 pi) = 3/2. The x3 bracket enters with +,
        // the sign that makes the system a gradient (see README).
        s.dim = 3;
        s.components = {
            "(3*pi - 1)*x1 - 4.5*(x1^3 - x1^2*x3 + x2^2*x3 + 2*x1*(x2^2 + x3^2))",
            "(3*pi - 4)*x2 - 4.5*x2*(2*x1^2 + x2^2 + 2*x1*x3 + 2*x3^2)",
            "(3*pi - 9)*x3 + 1.5*(x1*(x1^2 - 3*x2^2) - 3*x3*(2*x1^2 + 2*x2^2 + x3^2))",
        };
        s.lo = {-2, -1.6, -1};
        s.hi = {2, 1.6, 1};
        s.mesh.kind = MeshSpec::Kind::cubical;
        s.mesh.grid = {35, 29, 19};
        return s;
    }
    throw Error(ErrorCode::ConfigError, "unknown built-in system '" + std::string(name) + "'");
}

SystemSpec parse_system(std::string_view text)
{
    std::map<std::string, std::string> kv;
    try {
        std::istringstream in{std::string(text)};
        boost::program_options::options_description none;
        const auto parsed = boost::program_options::parse_config_file(in, none, true);
        for (const auto& opt : parsed.options) {
            if (opt.value.size() != 1)
                throw Error(ErrorCode::ConfigError, "key '" + opt.string_key + "' needs exactly one value");
            if (!kv.emplace(opt.string_key, opt.value[0]).second)
                throw Error(ErrorCode::ConfigError, "key '" + opt.string_key + "' given twice");
        }
    } catch (const boost::program_options::error& e) {
        throw Error(ErrorCode::ConfigError, e.what());
    }
    auto take = [&](const std::string& key) -> std::optional<std::string> {
        auto it = kv.find(key);
        if (it == kv.end())
            return std::nullopt;
        auto v = it->second;
        kv.erase(it);
        return v;
    };
    auto need = [&](const std::string& key) {
        auto v = take(key);
        if (!v)
            throw Error(ErrorCode::ConfigError, "missing key '" + key + "'");
        return *v;
    };

    SystemSpec s;
    s.name = take("name").value_or("custom");
    s.dim = parse_number<std::size_t>(need("dim"), "dimension");
    if (s.dim == 0 || s.dim > 9)
        throw Error(ErrorCode::ConfigError, "dimension must be between 1 and 9");
    for (std::size_t i = 1; i <= s.dim; ++i)
        s.components.push_back(need("f" + std::to_string(i)));
    s.lo = parse_list<double>(need("domain.lo"), ',', "box coordinate");
    s.hi = parse_list<double>(need("domain.hi"), ',', "box coordinate");
    s.mesh = MeshSpec::parse(need("mesh.spec"));
    if (auto v = take("mesh.boundary"))
        s.mesh.boundary = parse_number<std::size_t>(*v, "boundary point count");
    if (auto v = take("mesh.seed"))
        s.seed = parse_number<std::uint64_t>(*v, "seed");
    if (auto v = take("mesh.samples"))
        s.samples = parse_sample_strategy(trim(*v));
    if (auto v = take("field"))
        s.field = Field::parse(trim(*v));
    if (!kv.empty())
        throw Error(ErrorCode::ConfigError, "unknown key '" + kv.begin()->first + "'");
    check_system(s);
    return s;
}

SystemSpec load_system(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::ConfigError, "cannot read system file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_system(buffer.str());
}

void check_system(const SystemSpec& s)
{
    if (s.components.size() != s.dim || s.lo.size() != s.dim || s.hi.size() != s.dim)
        throw Error(ErrorCode::ConfigError, "system '" + s.name + "': components and box must match dim");
    for (std::size_t a = 0; a < s.dim; ++a)
        if (!(s.lo[a] < s.hi[a]))
            throw Error(ErrorCode::ConfigError, "system '" + s.name + "': empty box on axis " + std::to_string(a + 1));
    if (s.mesh.kind == MeshSpec::Kind::delaunay) {
        if (s.dim != 2)
            throw Error(ErrorCode::ConfigError, "Delaunay meshes are planar; use cubical:... in dimension " +
                                                    std::to_string(s.dim));
    } else if (s.mesh.grid.size() != s.dim) {
        throw Error(ErrorCode::ConfigError, "cubical grid needs " + std::to_string(s.dim) + " sizes");
    }
    try {
        s.vector_field();
    } catch (const Error& e) {
        throw Error(e.code(), "system '" + s.name + "': " + std::string(e.what()));
    }
}

GeometricComplex build_mesh(const SystemSpec& s)
{
    check_system(s);
    if (s.mesh.kind == MeshSpec::Kind::delaunay) {
        const auto pts = box_points({s.lo[0], s.lo[1]}, {s.hi[0], s.hi[1]}, s.mesh.points, s.mesh.boundary, s.seed);
        return delaunay_mesh(pts, s.field);
    }
    return cubical_mesh(s.lo, s.hi, s.mesh.grid, s.field);
}

} // namespace cmvf
