#include "selgrade/plot.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace selgrade {

namespace {

constexpr double kSize = 640.0;
constexpr double kRadius = 300.0;
constexpr std::size_t kMaxPolylinePoints = 5000;

constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                 "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

// Orthographic view from above the pole: (s, r) -> s.
std::pair<double, double> screen(const PoincarePoint& p) {
    return {kSize / 2 + kRadius * p.s[0], kSize / 2 - kRadius * p.s[1]};
}

}  // namespace

std::string poincare_svg(const LevelArtifacts& level) {
    if (level.grid.dimension() != 2) {
        throw Error(ErrorKind::UnsupportedDimension, "the disc plot needs d = 2");
    }
    if (!level.hemisphere) {
        throw Error(ErrorKind::InvalidArgument, "no hemisphere grid at this level");
    }
    const auto& hg = *level.hemisphere;
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
        << "\" viewBox=\"0 0 " << kSize << ' ' << kSize << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<circle cx=\"" << kSize / 2 << "\" cy=\"" << kSize / 2 << "\" r=\"" << kRadius
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

    for (std::size_t i = 0; i < level.cones.size(); ++i) {
        const char* color = kPalette[i % kPalette.size()];
        out << "<g id=\"cone" << i << "\" fill=\"" << color << "\" fill-opacity=\"0.6\">\n";
        for (CellId c : level.cones[i].cells) {
            const auto [x, y] = screen(hg.center(c));
            const double r = hg.is_equator(c) ? 3.0 : 2.0;
            out << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(y) << "\" r=\"" << r << "\"/>\n";
        }
        out << "</g>\n";
    }

    for (std::size_t i = 0; i < level.witnesses.size(); ++i) {
        if (!level.witnesses[i]) {
            continue;
        }
        const auto& pts = level.witnesses[i]->hemisphere_chain.points;
        if (pts.empty()) {
            continue;
        }
        const std::size_t stride = (pts.size() + kMaxPolylinePoints - 1) / kMaxPolylinePoints;
        out << "<polyline id=\"witness" << i << "\" fill=\"none\" stroke=\"" << kPalette[i % kPalette.size()]
            << "\" stroke-width=\"0.8\" points=\"";
        for (std::size_t j = 0; j < pts.size(); j += stride) {
            const auto [x, y] = screen(pts[j]);
            out << fmt(x) << ',' << fmt(y) << ' ';
        }
        const auto [x, y] = screen(pts.back());
        out << fmt(x) << ',' << fmt(y) << "\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

void write_poincare_svg(const std::filesystem::path& path, const LevelArtifacts& level) {
    std::ofstream f(path);
    if (!f) {
        throw Error(ErrorKind::Io, "cannot write " + path.string());
    }
    f << poincare_svg(level);
}

}  // namespace selgrade
