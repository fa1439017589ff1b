#include "gbq/runio.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace fs = std::filesystem;

namespace gbq::io {

std::string make_run_dir(const std::string& out_root) {
    fs::create_directories(out_root);
    for (int i = 1; i < 100000; ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "run-%03d", i);
        const fs::path dir = fs::path(out_root) / name;
        std::error_code ec;
        if (fs::create_directory(dir, ec)) return dir.string();
        if (ec && !fs::exists(dir))
            throw std::runtime_error("make_run_dir: " + ec.message());
    }
    throw std::runtime_error("make_run_dir: run index space exhausted");
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_text: cannot open " + path);
    out << content;
}

std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> columns) : ncols_(columns.size()) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) body_ += ',';
        body_ += columns[i];
    }
    body_ += '\n';
}

void CsvWriter::add_row(const std::vector<double>& row) {
    if (row.size() != ncols_)
        throw std::invalid_argument("CsvWriter: row width mismatch");
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) body_ += ',';
        body_ += format_g17(row[i]);
    }
    body_ += '\n';
}

void CsvWriter::write(const std::string& path) const { write_text(path, body_); }

void write_svg_lines(const std::string& path,
                     const std::vector<std::string>& labels,
                     const std::vector<std::vector<double>>& xs,
                     const std::vector<std::vector<double>>& ys, bool logx,
                     bool logy) {
    const double W = 720, H = 480, m = 50;
    auto tx = [&](double v) { return logx ? std::log10(std::max(v, 1e-300)) : v; };
    auto ty = [&](double v) { return logy ? std::log10(std::max(v, 1e-300)) : v; };
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (std::size_t s = 0; s < xs.size(); ++s)
        for (std::size_t i = 0; i < xs[s].size(); ++i) {
            x0 = std::min(x0, tx(xs[s][i]));
            x1 = std::max(x1, tx(xs[s][i]));
            y0 = std::min(y0, ty(ys[s][i]));
            y1 = std::max(y1, ty(ys[s][i]));
        }
    if (!(x1 > x0)) x1 = x0 + 1;
    if (!(y1 > y0)) y1 = y0 + 1;
    const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                             "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    std::string svg = "<svg xmlns='http://www.w3.org/2000/svg' width='" +
                      std::to_string((int)W) + "' height='" +
                      std::to_string((int)H) + "'>\n";
    svg += "<rect width='100%' height='100%' fill='white'/>\n";
    for (std::size_t s = 0; s < xs.size(); ++s) {
        std::string pts;
        for (std::size_t i = 0; i < xs[s].size(); ++i) {
            const double px = m + (W - 2 * m) * (tx(xs[s][i]) - x0) / (x1 - x0);
            const double py = H - m - (H - 2 * m) * (ty(ys[s][i]) - y0) / (y1 - y0);
            pts += std::to_string(px) + "," + std::to_string(py) + " ";
        }
        svg += "<polyline fill='none' stroke='" +
               std::string(palette[s % 8]) + "' stroke-width='1.5' points='" +
               pts + "'/>\n";
        svg += "<text x='" + std::to_string(m + 4) + "' y='" +
               std::to_string(m + 16 * (s + 1)) + "' fill='" + palette[s % 8] +
               "' font-size='13'>" + labels[s] + "</text>\n";
    }
    svg += "</svg>\n";
    write_text(path, svg);
}

} // namespace gbq::io
