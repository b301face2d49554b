#include "selgrade/chain_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace selgrade {

namespace {

void put(std::ostream& out, double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    out.write(buf, res.ptr - buf);
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
    throw Error(ErrorKind::ParseError, "chain line " + std::to_string(line) + ": " + what);
}

std::vector<double> numbers(const std::string& text, std::size_t line) {
    std::vector<double> out;
    std::istringstream ss(text);
    std::string tok;
    while (ss >> tok) {
        double x = 0.0;
        const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), x);
        if (res.ec != std::errc() || res.ptr != tok.data() + tok.size() || !std::isfinite(x)) {
            fail(line, "'" + tok + "' is not a finite number");
        }
        out.push_back(x);
    }
    return out;
}

SpherePoint unit_point(const std::vector<double>& v, std::size_t count, std::size_t line) {
    Vector x(static_cast<Eigen::Index>(count));
    for (std::size_t i = 0; i < count; ++i) {
        x[static_cast<Eigen::Index>(i)] = v[i];
    }
    if (std::abs(x.norm() - 1.0) > kUnitTolerance) {
        fail(line, "point is not a unit vector");
    }
    return SpherePoint::from_unit(std::move(x));
}

}  // namespace

void write_chain(std::ostream& out, const Chain& chain) {
    if (chain.steps.empty()) {
        throw Error(ErrorKind::InvalidChain, "cannot write an empty chain");
    }
    const auto d = chain.end.dim();
    const auto m = chain.steps.front().control.size();
    out << "# selgrade chain v1\n# dim " << d << " controls " << m << '\n';
    for (const auto& s : chain.steps) {
        for (Eigen::Index i = 0; i < d; ++i) {
            put(out, s.point[i]);
            out << ' ';
        }
        put(out, s.time);
        for (Eigen::Index i = 0; i < m; ++i) {
            out << ' ';
            put(out, s.control[i]);
        }
        out << ' ';
        put(out, s.eps);
        out << '\n';
    }
    for (Eigen::Index i = 0; i < d; ++i) {
        if (i > 0) {
            out << ' ';
        }
        put(out, chain.end[i]);
    }
    out << '\n';
}

void write_chain(const std::filesystem::path& path, const Chain& chain) {
    std::ofstream out(path);
    if (!out) {
        throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
    }
    write_chain(out, chain);
}

Chain read_chain(std::istream& in) {
    std::string text;
    std::size_t line = 0;
    long dim = -1;
    long controls = -1;
    std::vector<std::pair<std::size_t, std::vector<double>>> rows;
    while (std::getline(in, text)) {
        ++line;
        const auto first = text.find_first_not_of(" \t\r");
        if (first == std::string::npos) {
            continue;
        }
        if (text[first] == '#') {
            std::istringstream ss(text.substr(first + 1));
            std::string key;
            ss >> key;
            if (key == "dim") {
                std::string word;
                if (!(ss >> dim >> word >> controls) || word != "controls" || dim < 1 || controls < 0) {
                    fail(line, "malformed '# dim <d> controls <m>' header");
                }
            }
            continue;
        }
        rows.emplace_back(line, numbers(text, line));
    }
    if (dim < 0) {
        fail(line, "missing '# dim <d> controls <m>' header");
    }
    if (rows.size() < 2) {
        fail(line, "a chain needs at least one step and a terminal point");
    }
    const auto d = static_cast<std::size_t>(dim);
    const auto m = static_cast<std::size_t>(controls);
    Chain chain;
    for (std::size_t r = 0; r + 1 < rows.size(); ++r) {
        const auto& [ln, v] = rows[r];
        if (v.size() != d + m + 2) {
            fail(ln, "expected " + std::to_string(d + m + 2) + " fields, found " + std::to_string(v.size()));
        }
        ChainStep step;
        step.point = unit_point(v, d, ln);
        step.time = v[d];
        step.control = Control(static_cast<Eigen::Index>(m));
        for (std::size_t i = 0; i < m; ++i) {
            step.control[static_cast<Eigen::Index>(i)] = v[d + 1 + i];
        }
        step.eps = v[d + 1 + m];
        if (!(step.time > 0.0) || !(step.eps >= 0.0)) {
            fail(ln, "time must be positive and eps nonnegative");
        }
        chain.steps.push_back(std::move(step));
    }
    const auto& [ln, v] = rows.back();
    if (v.size() != d) {
        fail(ln, "terminal point needs " + std::to_string(d) + " coordinates");
    }
    chain.end = unit_point(v, d, ln);
    return chain;
}

Chain read_chain(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::Io, "cannot open " + path.string());
    }
    return read_chain(in);
}

}  // namespace selgrade
