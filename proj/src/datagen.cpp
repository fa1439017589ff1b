#include "gbq/datagen.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "gbq/spectral.hpp"

namespace gbq::datagen {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double uniform01(std::uint64_t seed, std::uint64_t counter) {
    const std::uint64_t x = splitmix64(seed + counter * 0x9E3779B97F4A7C15ULL);
    return static_cast<double>(x >> 11) * 0x1.0p-53;
}

std::uint64_t member_seed(std::uint64_t root, std::uint64_t index) {
    return splitmix64(root ^ (0xA5A5A5A5A5A5A5A5ULL + index));
}

std::pair<Field, Field> gaussian_data(double amplitude, double width,
                                      const FourierGrid& g) {
    if (!(width > 0.0)) throw std::invalid_argument("gaussian_data: width <= 0");
    const double boundary = std::exp(-(g.L * g.L / 4.0) / (2.0 * width * width));
    if (boundary > 1e-10)
        throw std::invalid_argument(
            "gaussian_data: width too large for the torus surrogate (boundary "
            "value " + std::to_string(boundary) + " of peak)");
    Field phi(g), psi(g);
    for (int n = 0; n < g.M; ++n) {
        const double x = g.x(n);
        phi.v[n] = amplitude * std::exp(-x * x / (2.0 * width * width));
    }
    return {std::move(phi), std::move(psi)};
}

namespace {

std::pair<Spectrum, Spectrum> rough_spectra(const RoughDataSpec& spec,
                                            const FourierGrid& g) {
    Spectrum phi(g), psi(g);
    const int h = g.M / 2;
    for (int r = 1; r < h; ++r) {
        const int jp = h + r; // +xi index in increasing order
        const int jm = h - r;
        const double xi = g.xi[jp];
        const double br = std::sqrt(1.0 + xi * xi);
        double taper = 1.0;
        if (spec.xi_cut > 0.0 && xi > spec.xi_cut) {
            const double d = (xi - spec.xi_cut) / (0.1 * spec.xi_cut);
            taper = std::exp(-d * d);
        }
        const double amp_phi =
            spec.amplitude * std::pow(br, -(spec.s + 0.5)) * taper;
        const double ph1 = 2.0 * M_PI * uniform01(spec.seed, 2 * r);
        phi.c[jp] = amp_phi * cplx(std::cos(ph1), std::sin(ph1));
        phi.c[jm] = std::conj(phi.c[jp]);
        if (spec.traveling) {
            psi.c[jp] = -br * phi.c[jp];
            psi.c[jm] = std::conj(psi.c[jp]);
        } else {
            const double amp_psi =
                spec.amplitude * std::pow(br, -(spec.s - 0.5)) * taper;
            const double ph2 = 2.0 * M_PI * uniform01(spec.seed, 2 * r + 1);
            psi.c[jp] = amp_psi * cplx(std::cos(ph2), std::sin(ph2));
            psi.c[jm] = std::conj(psi.c[jp]);
        }
    }
    return {std::move(phi), std::move(psi)};
}

} // namespace

std::pair<Field, Field> rough_data(const RoughDataSpec& spec,
                                   const FourierGrid& g) {
    auto [phi_hat, psi_hat] = rough_spectra(spec, g);
    return {spectral::inverse(phi_hat), spectral::inverse(psi_hat)};
}

void add_traveling_line(Field& phi, Field& psi, double xi0, double amplitude,
                        double phase) {
    const FourierGrid& g = phi.grid;
    if (!(xi0 > 0.0) || xi0 >= g.nyquist())
        throw std::invalid_argument("add_traveling_line: xi0 outside (0, Nyquist)");
    Spectrum ph = spectral::forward(phi);
    Spectrum ps = spectral::forward(psi);
    const int h = g.M / 2;
    int best = h + 1;
    for (int j = h + 1; j < g.M; ++j)
        if (std::abs(g.xi[j] - xi0) < std::abs(g.xi[best] - xi0)) best = j;
    const double br = std::sqrt(1.0 + g.xi[best] * g.xi[best]);
    const cplx line = amplitude * cplx(std::cos(phase), std::sin(phase));
    ph.c[best] += line;
    ph.c[g.M - best] = std::conj(ph.c[best]);
    ps.c[best] += -br * line;
    ps.c[g.M - best] = std::conj(ps.c[best]);
    phi = spectral::inverse(ph);
    psi = spectral::inverse(ps);
}

void save_data_csv(const std::string& path, const Field& phi, const Field& psi) {
    require_same_grid(phi.grid, psi.grid, "save_data_csv");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_data_csv: cannot open " + path);
    out << "x,phi,psi\n";
    char buf[128];
    for (int n = 0; n < phi.grid.M; ++n) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", phi.grid.x(n),
                      phi.v[n], psi.v[n]);
        out << buf;
    }
}

std::pair<Field, Field> load_data(const std::string& path, const FourierGrid& g) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_data: cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line != "x,phi,psi")
        throw std::runtime_error("load_data: expected header 'x,phi,psi'");
    std::vector<double> xs, ps, qs;
    int rowno = 1;
    while (std::getline(in, line)) {
        ++rowno;
        if (line.empty()) continue;
        double x, p, q;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &x, &p, &q) != 3)
            throw std::runtime_error("load_data: malformed row " +
                                     std::to_string(rowno));
        xs.push_back(x);
        ps.push_back(p);
        qs.push_back(q);
    }
    if (static_cast<int>(xs.size()) != g.M)
        throw std::runtime_error("load_data: got " + std::to_string(xs.size()) +
                                 " rows, expected M = " + std::to_string(g.M));
    Field phi(g), psi(g);
    for (int n = 0; n < g.M; ++n) {
        if (std::abs(xs[n] - g.x(n)) > 1e-9 * std::max(1.0, std::abs(g.x(n))))
            throw std::runtime_error("load_data: x column does not match the grid");
        phi.v[n] = ps[n];
        psi.v[n] = qs[n];
    }
    double mean = 0.0;
    for (double v : psi.v) mean += v;
    mean *= g.dx / g.L;
    if (std::abs(mean) > 1e-10)
        throw std::runtime_error("load_data: psi mean " + std::to_string(mean) +
                                 " exceeds 1e-10");
    return {std::move(phi), std::move(psi)};
}

} // namespace gbq::datagen
