#include "cmvf/svg.hpp"

#include "cmvf/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace cmvf {

namespace {

constexpr const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b",
                                   "#e377c2", "#17becf", "#bcbd22", "#7f7f7f", "#393b79", "#637939"};
constexpr std::size_t palette_size = std::size(palette);

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    std::string s = buf;
    return s == "-0.000" ? "0.000" : s;
}

std::string escape(const std::string& text)
{
    std::string out;
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

struct Frame {
    double lo_x, lo_y, scale, height;
    double x(double v) const { return 20 + (v - lo_x) * scale; }
    double y(double v) const { return 20 + height - (v - lo_y) * scale; }
};

// Vertices of a planar cell in counterclockwise order around the barycenter.
std::vector<std::uint32_t> ring(const GeometricComplex& mesh, CellId cell)
{
    auto verts = mesh.cell_vertices[cell];
    const auto c = mesh.barycenter(cell);
    auto angle = [&](std::uint32_t v) {
        return std::atan2(mesh.coordinates[v][1] - c[1], mesh.coordinates[v][0] - c[0]);
    };
    std::sort(verts.begin(), verts.end(), [&](auto a, auto b) { return angle(a) < angle(b); });
    return verts;
}

void draw_cell(std::string& out, const GeometricComplex& mesh, const Frame& f, CellId cell, const std::string& fill,
               const std::string& stroke, double width)
{
    const auto& p = mesh.coordinates;
    switch (mesh.complex.dim(cell)) {
    case 0: {
        const auto v = mesh.cell_vertices[cell][0];
        out += "<circle cx=\"" + num(f.x(p[v][0])) + "\" cy=\"" + num(f.y(p[v][1])) + "\" r=\"" + num(1.2 * width) +
               "\" fill=\"" + fill + "\"/>\n";
        break;
    }
    case 1: {
        const auto a = mesh.cell_vertices[cell][0], b = mesh.cell_vertices[cell][1];
        out += "<line x1=\"" + num(f.x(p[a][0])) + "\" y1=\"" + num(f.y(p[a][1])) + "\" x2=\"" + num(f.x(p[b][0])) +
               "\" y2=\"" + num(f.y(p[b][1])) + "\" stroke=\"" + fill + "\" stroke-width=\"" + num(width) + "\"/>\n";
        break;
    }
    default: {
        out += "<polygon points=\"";
        bool first = true;
        for (auto v : ring(mesh, cell)) {
            out += (first ? "" : " ") + num(f.x(p[v][0])) + "," + num(f.y(p[v][1]));
            first = false;
        }
        out += "\" fill=\"" + fill + "\" stroke=\"" + stroke + "\" stroke-width=\"" + num(width) + "\"/>\n";
    }
    }
}

} // namespace

std::string palette_color(std::size_t index)
{
    return palette[index % palette_size];
}

std::string mesh_svg(const GeometricComplex& mesh, const std::vector<Region>& regions, const std::string& title)
{
    if (mesh.ambient_dim() != 2 || mesh.complex.dimension() != 2)
        throw Error(ErrorCode::UnsupportedDimension,
                    "mesh plots need a planar 2-dimensional complex; use the hasse product instead");
    double lo_x = mesh.coordinates[0][0], hi_x = lo_x, lo_y = mesh.coordinates[0][1], hi_y = lo_y;
    for (const auto& p : mesh.coordinates) {
        lo_x = std::min(lo_x, p[0]);
        hi_x = std::max(hi_x, p[0]);
        lo_y = std::min(lo_y, p[1]);
        hi_y = std::max(hi_y, p[1]);
    }
    const double width = 760;
    const double scale = width / std::max(hi_x - lo_x, 1e-12);
    const double height = (hi_y - lo_y) * scale;
    const Frame f{lo_x, lo_y, scale, height};
    const double legend_height = 18.0 * static_cast<double>(regions.size()) + 30;

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width + 40) + "\" height=\"" +
           num(height + 40 + legend_height) + "\">\n";
    out += "<title>" + escape(title) + "</title>\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<g id=\"mesh\">\n";
    for (CellId c = mesh.complex.first_of_dim(2); c < mesh.complex.size(); ++c)
        draw_cell(out, mesh, f, c, "none", "#d0d0d0", 0.5);
    out += "</g>\n";
    for (std::size_t r = 0; r < regions.size(); ++r) {
        const auto color = palette_color(regions[r].color);
        out += "<g id=\"region" + std::to_string(r) + "\">\n";
        // faces first so edges and vertices stay visible on top
        for (int d = 2; d >= 0; --d)
            for (auto c : regions[r].cells)
                if (mesh.complex.dim(c) == static_cast<unsigned>(d))
                    draw_cell(out, mesh, f, c, color, color, 1.5);
        out += "</g>\n";
    }
    double y = height + 50;
    out += "<text x=\"20\" y=\"" + num(y) + "\" font-family=\"monospace\" font-size=\"14\">" + escape(title) +
           "</text>\n";
    for (const auto& region : regions) {
        y += 18;
        out += "<rect x=\"20\" y=\"" + num(y - 11) + "\" width=\"12\" height=\"12\" fill=\"" +
               palette_color(region.color) + "\"/>\n";
        out += "<text x=\"40\" y=\"" + num(y) + "\" font-family=\"monospace\" font-size=\"12\">" +
               escape(region.legend) + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

std::string morse_svg(const GeometricComplex& mesh, const MorseDecomposition& morse, const std::string& title)
{
    std::vector<Region> regions;
    for (std::size_t p = 0; p < morse.size(); ++p)
        regions.push_back({morse.morse_sets[p], p, "M" + std::to_string(p) + "  CH " + morse.conley_indices[p].to_string()});
    return mesh_svg(mesh, regions, title);
}

std::string hasse_svg(const MorseDecomposition& morse, const std::string& title)
{
    const std::size_t n = morse.size();
    // indices respect the order, so one ascending pass computes chain lengths
    std::vector<std::size_t> level(n, 0);
    const auto covers = morse.hasse();
    for (std::size_t q = 0; q < n; ++q)
        for (const auto& [p, r] : covers)
            if (r == q)
                level[q] = std::max(level[q], level[p] + 1);
    const std::size_t levels = n ? *std::max_element(level.begin(), level.end()) + 1 : 0;
    std::vector<std::vector<std::size_t>> rows(levels);
    for (std::size_t p = 0; p < n; ++p)
        rows[level[p]].push_back(p);
    std::size_t widest = 1;
    for (const auto& r : rows)
        widest = std::max(widest, r.size());

    const double dx = 110, dy = 100;
    const double width = dx * static_cast<double>(widest) + 40;
    const double height = dy * static_cast<double>(levels) + 60;
    std::vector<double> px(n), py(n);
    for (std::size_t l = 0; l < levels; ++l)
        for (std::size_t i = 0; i < rows[l].size(); ++i) {
            const auto p = rows[l][i];
            px[p] = 20 + dx * (static_cast<double>(i) + 0.5) + dx * 0.5 * static_cast<double>(widest - rows[l].size());
            py[p] = height - 40 - dy * static_cast<double>(l);
        }

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" + num(height) + "\">\n";
    out += "<title>" + escape(title) + "</title>\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"20\" y=\"20\" font-family=\"monospace\" font-size=\"14\">" + escape(title) + "</text>\n";
    for (const auto& [p, q] : covers)
        out += "<line x1=\"" + num(px[q]) + "\" y1=\"" + num(py[q]) + "\" x2=\"" + num(px[p]) + "\" y2=\"" +
               num(py[p]) + "\" stroke=\"#555555\" stroke-width=\"1.5\"/>\n";
    for (std::size_t p = 0; p < n; ++p) {
        out += "<circle cx=\"" + num(px[p]) + "\" cy=\"" + num(py[p]) + "\" r=\"16\" fill=\"" + palette_color(p) +
               "\"/>\n";
        out += "<text x=\"" + num(px[p]) + "\" y=\"" + num(py[p] + 5) +
               "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"13\" fill=\"white\">" +
               std::to_string(p) + "</text>\n";
        out += "<text x=\"" + num(px[p]) + "\" y=\"" + num(py[p] + 32) +
               "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"11\">" +
               escape(morse.conley_indices[p].to_string()) + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

} // namespace cmvf
