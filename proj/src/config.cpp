#include "selgrade/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace selgrade {

namespace {

namespace pt = boost::property_tree;

[[noreturn]] void field_error(const std::string& origin, const std::string& field, const std::string& what) {
    throw Error(ErrorKind::ParseError, origin + ": field " + field + ": " + what);
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Accepts decimal numbers and simple fractions such as 3/4 or -1/4.
double parse_number(const std::string& token, const std::string& origin, const std::string& field) {
    auto convert = [&](const std::string& t) {
        double x = 0.0;
        const auto res = std::from_chars(t.data(), t.data() + t.size(), x);
        if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size() || !std::isfinite(x)) {
            field_error(origin, field, "'" + token + "' is not a finite number");
        }
        return x;
    };
    const auto slash = token.find('/');
    if (slash == std::string::npos) {
        return convert(token);
    }
    const double den = convert(token.substr(slash + 1));
    if (den == 0.0) {
        field_error(origin, field, "division by zero in '" + token + "'");
    }
    return convert(token.substr(0, slash)) / den;
}

// Rows separated by ';', entries by ',' or whitespace.
std::vector<std::vector<double>> parse_rows(const std::string& text, const std::string& origin,
                                            const std::string& field) {
    std::vector<std::vector<double>> rows;
    std::stringstream rs(text);
    std::string row;
    while (std::getline(rs, row, ';')) {
        std::replace(row.begin(), row.end(), ',', ' ');
        std::istringstream ts(row);
        std::vector<double> values;
        std::string tok;
        while (ts >> tok) {
            values.push_back(parse_number(tok, origin, field));
        }
        if (!values.empty()) {
            rows.push_back(std::move(values));
        }
    }
    return rows;
}

std::vector<double> flatten(const std::vector<std::vector<double>>& rows) {
    std::vector<double> out;
    for (const auto& r : rows) {
        out.insert(out.end(), r.begin(), r.end());
    }
    return out;
}

Eigen::VectorXd to_vector(const std::vector<double>& v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

template <typename T>
T parse_integer(const std::string& text, const std::string& origin, const std::string& field) {
    T x{};
    const std::string t = trim(text);
    const auto res = std::from_chars(t.data(), t.data() + t.size(), x);
    if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size()) {
        field_error(origin, field, "'" + t + "' is not an integer");
    }
    return x;
}

bool parse_bool(const std::string& text, const std::string& origin, const std::string& field) {
    const std::string t = trim(text);
    if (t == "true" || t == "yes" || t == "1" || t == "on") {
        return true;
    }
    if (t == "false" || t == "no" || t == "0" || t == "off") {
        return false;
    }
    field_error(origin, field, "'" + t + "' is not a boolean");
}

void put_number(std::ostream& out, double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    out.write(buf, res.ptr - buf);
}

void put_matrix(std::ostream& out, const Eigen::MatrixXd& a) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        if (i > 0) {
            out << "; ";
        }
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            if (j > 0) {
                out << ", ";
            }
            put_number(out, a(i, j));
        }
    }
}

void put_vector(std::ostream& out, const Eigen::VectorXd& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i > 0) {
            out << ", ";
        }
        put_number(out, v[i]);
    }
}

Eigen::MatrixXd mat2(double a, double b, double c, double d) {
    Eigen::MatrixXd m(2, 2);
    m << a, b, c, d;
    return m;
}

struct Demo {
    std::string description;
    RunConfig config;
};

RunConfig autonomous_demo(const std::string& name, Eigen::MatrixXd a) {
    RunConfig c;
    c.name = name;
    c.system.dimension = static_cast<int>(a.rows());
    c.system.matrices = {std::move(a)};
    return c;
}

RunConfig ex47_demo(const std::string& name, double drift) {
    RunConfig c;
    c.name = name;
    c.system.dimension = 2;
    c.system.matrices = {mat2(0, drift, drift, 0), mat2(1, 0, 0, 1), mat2(0, 1, 0, 0), mat2(0, 0, 1, 0)};
    c.system.lower = Eigen::Vector3d(-1.0, -0.25, -0.25);
    c.system.upper = Eigen::Vector3d(1.0, 0.25, 0.25);
    return c;
}

const std::map<std::string, Demo>& demos() {
    static const std::map<std::string, Demo> table = [] {
        std::map<std::string, Demo> t;
        t["diag10"] = {"x' = diag(1, 0) x: equilibria on the x2-axis, expansion along x1",
                       autonomous_demo("diag10", mat2(1, 0, 0, 0))};
        t["nilpotent"] = {"x' = [[0, 1], [0, 0]] x: shear, the whole circle is one component",
                          autonomous_demo("nilpotent", mat2(0, 1, 0, 0))};
        t["rotation"] = {"x' = [[0, -1], [1, 0]] x: norm-preserving rotation",
                         autonomous_demo("rotation", mat2(0, -1, 1, 0))};
        t["zero"] = {"x' = 0: every point is an equilibrium", autonomous_demo("zero", mat2(0, 0, 0, 0))};
        t["ex47"] = {"bilinear system with four sector components; drift [[0, 3/4], [3/4, 0]]",
                     ex47_demo("ex47", 0.75)};
        t["ex47-printed"] = {"the same bilinear system with drift [[0, -1/4], [-1/4, 0]]",
                             ex47_demo("ex47-printed", -0.25)};
        Eigen::MatrixXd diag3 = Eigen::Vector3d(1.0, 0.0, -1.0).asDiagonal();
        RunConfig d3 = autonomous_demo("diag3", diag3);
        d3.n = 15;
        d3.m = 8;
        d3.epsilon = 0.05;
        d3.analyses = {Analysis::Components, Analysis::Spectrum};
        t["diag3"] = {"x' = diag(1, 0, -1) x on the 2-sphere (cube-sphere grid)", d3};
        return t;
    }();
    return table;
}

}  // namespace

std::string_view to_string(Analysis a) {
    switch (a) {
        case Analysis::Components: return "components";
        case Analysis::Spectrum: return "spectrum";
        case Analysis::Poincare: return "poincare";
    }
    return "unknown";
}

bool RunConfig::wants(Analysis a) const { return std::find(analyses.begin(), analyses.end(), a) != analyses.end(); }

std::vector<std::string> violations(const RunConfig& c) {
    std::vector<std::string> out;
    const auto& s = c.system;
    if (s.dimension < 2) {
        out.push_back("system.dimension must be at least 2");
    } else if (s.dimension > c.max_dimension) {
        out.push_back("system.dimension " + std::to_string(s.dimension) + " exceeds params.max_dimension " +
                      std::to_string(c.max_dimension));
    }
    if (s.matrices.empty()) {
        out.push_back("system.A0 (or system.A) is required");
    }
    for (std::size_t i = 0; i < s.matrices.size(); ++i) {
        const auto& a = s.matrices[i];
        if (a.rows() != s.dimension || a.cols() != s.dimension) {
            out.push_back("system.A" + std::to_string(i) + " must be " + std::to_string(s.dimension) + "x" +
                          std::to_string(s.dimension));
        } else if (!a.allFinite()) {
            out.push_back("system.A" + std::to_string(i) + " has non-finite entries");
        }
    }
    const auto controls = static_cast<Eigen::Index>(s.matrices.empty() ? 0 : s.matrices.size() - 1);
    if (s.lower.size() != controls || s.upper.size() != controls) {
        out.push_back("system.lower and system.upper need " + std::to_string(controls) + " entries");
    } else if ((s.lower.array() > s.upper.array()).any()) {
        out.push_back("system.lower must not exceed system.upper");
    }
    for (std::size_t i = 0; i < s.samples.size(); ++i) {
        if (s.samples[i].size() != controls) {
            out.push_back("system.samples row " + std::to_string(i) + " needs " + std::to_string(controls) + " entries");
        } else if (s.lower.size() == controls && s.upper.size() == controls &&
                   !ControlBox{s.lower, s.upper}.contains(s.samples[i])) {
            out.push_back("system.samples row " + std::to_string(i) + " lies outside the control box");
        }
    }
    if (s.dimension == 2 && (c.n < 4 || c.n % 2 != 0)) {
        out.push_back("grid.n must be even and at least 4 in dimension 2");
    } else if (s.dimension > 2 && c.n < 2) {
        out.push_back("grid.n must be at least 2");
    }
    if (c.m < 2) {
        out.push_back("grid.m must be at least 2");
    }
    if (!(c.step_time > 0.0) || !std::isfinite(c.step_time)) {
        out.push_back("params.T must be positive");
    }
    if (!(c.epsilon > 0.0 && c.epsilon < 1.0)) {
        out.push_back("params.epsilon must lie in (0, 1)");
    }
    if (!(c.delta0 > 0.0) || !std::isfinite(c.delta0)) {
        out.push_back("params.delta0 must be positive");
    }
    if (c.refine < 0 || c.refine > 3) {
        out.push_back("params.refine must lie in 0..3");
    }
    if (!(c.alpha0 > 0.0) || !(c.alpha1 > 0.0)) {
        out.push_back("analysis.alpha0 and analysis.alpha1 must be positive");
    }
    if (c.analyses.empty()) {
        out.push_back("analysis.run selects no analysis");
    }
    return out;
}

void validate(const RunConfig& c) {
    const auto v = violations(c);
    if (v.empty()) {
        return;
    }
    std::string msg = std::to_string(v.size()) + " invalid setting(s)";
    for (const auto& s : v) {
        msg += "\n  - " + s;
    }
    throw Error(ErrorKind::ValidationError, msg);
}

FlowSystem make_system(const RunConfig& c) {
    validate(c);
    const auto& s = c.system;
    if (!s.bilinear()) {
        return FlowSystem::autonomous(s.matrices.front());
    }
    ControlBox box{s.lower, s.upper};
    auto samples = s.samples.empty() ? box_vertices_and_center(box) : s.samples;
    return FlowSystem::bilinear(s.matrices, std::move(box), std::move(samples));
}

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
    pt::ptree tree;
    std::istringstream in(text);
    try {
        pt::ini_parser::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw Error(ErrorKind::ParseError, origin + ": line " + std::to_string(e.line()) + ": " + e.message());
    }

    static const std::map<std::string, std::set<std::string>> known = {
        {"system", {"name", "dimension", "A", "lower", "upper", "samples"}},
        {"grid", {"n", "m"}},
        {"params", {"T", "epsilon", "delta0", "refine", "max_dimension"}},
        {"analysis", {"run", "alpha0", "alpha1"}},
        {"output", {"dir", "plot"}},
    };
    std::vector<std::string> unknown;
    for (const auto& [section, body] : tree) {
        const auto it = known.find(section);
        if (it == known.end() || body.empty()) {
            unknown.push_back(section);
            continue;
        }
        for (const auto& [key, value] : body) {
            const bool matrix_key = section == "system" && key.size() >= 2 && key[0] == 'A' &&
                                    std::all_of(key.begin() + 1, key.end(), [](char ch) { return ch >= '0' && ch <= '9'; });
            if (!matrix_key && !it->second.count(key)) {
                unknown.push_back(section + "." + key);
            }
        }
    }

    RunConfig c;
    std::vector<std::string> problems;
    for (const auto& u : unknown) {
        problems.push_back("unknown setting " + u);
    }
    auto get = [&](const std::string& path) -> std::optional<std::string> {
        if (auto v = tree.get_optional<std::string>(pt::ptree::path_type(path, '.'))) {
            return trim(*v);
        }
        return std::nullopt;
    };

    c.name = get("system.name").value_or("custom");
    if (auto v = get("system.dimension")) {
        c.system.dimension = parse_integer<int>(*v, origin, "system.dimension");
    } else {
        problems.push_back("system.dimension is required");
    }
    const int d = c.system.dimension;
    auto read_matrix = [&](const std::string& key) {
        const auto values = flatten(parse_rows(*get("system." + key), origin, "system." + key));
        if (d < 1 || values.size() != static_cast<std::size_t>(d) * static_cast<std::size_t>(d)) {
            return Eigen::MatrixXd();  // reported by violations()
        }
        Eigen::MatrixXd a(d, d);
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                a(i, j) = values[static_cast<std::size_t>(i * d + j)];
            }
        }
        return a;
    };
    if (get("system.A")) {
        c.system.matrices.push_back(read_matrix("A"));
    } else {
        for (int i = 0; get("system.A" + std::to_string(i)); ++i) {
            c.system.matrices.push_back(read_matrix("A" + std::to_string(i)));
        }
    }
    if (auto v = get("system.lower")) {
        c.system.lower = to_vector(flatten(parse_rows(*v, origin, "system.lower")));
    }
    if (auto v = get("system.upper")) {
        c.system.upper = to_vector(flatten(parse_rows(*v, origin, "system.upper")));
    }
    if (auto v = get("system.samples"); v && *v != "vertices+center") {
        for (const auto& row : parse_rows(*v, origin, "system.samples")) {
            c.system.samples.push_back(to_vector(row));
        }
    }

    if (d > 2) {
        c.n = 16;
    }
    if (auto v = get("grid.n")) c.n = parse_integer<int>(*v, origin, "grid.n");
    if (auto v = get("grid.m")) c.m = parse_integer<int>(*v, origin, "grid.m");
    auto number = [&](const std::string& path, double& target) {
        if (auto v = get(path)) {
            target = parse_number(*v, origin, path);
        }
    };
    number("params.T", c.step_time);
    number("params.epsilon", c.epsilon);
    number("params.delta0", c.delta0);
    if (auto v = get("params.refine")) c.refine = parse_integer<int>(*v, origin, "params.refine");
    if (auto v = get("params.max_dimension")) c.max_dimension = parse_integer<int>(*v, origin, "params.max_dimension");
    number("analysis.alpha0", c.alpha0);
    number("analysis.alpha1", c.alpha1);
    if (auto v = get("analysis.run")) {
        c.analyses.clear();
        std::string list = *v;
        std::replace(list.begin(), list.end(), ',', ' ');
        std::istringstream ss(list);
        std::string tok;
        while (ss >> tok) {
            if (tok == "components") c.analyses.push_back(Analysis::Components);
            else if (tok == "spectrum") c.analyses.push_back(Analysis::Spectrum);
            else if (tok == "poincare") c.analyses.push_back(Analysis::Poincare);
            else problems.push_back("analysis.run: unknown analysis '" + tok + "'");
        }
    }
    if (auto v = get("output.dir")) c.out_dir = *v;
    if (auto v = get("output.plot")) c.plot = parse_bool(*v, origin, "output.plot");

    for (auto& p : violations(c)) {
        if (std::find(problems.begin(), problems.end(), p) == problems.end() &&
            !(p.rfind("system.dimension must", 0) == 0 && !get("system.dimension"))) {
            problems.push_back(std::move(p));
        }
    }
    if (!problems.empty()) {
        std::string msg = origin + ": " + std::to_string(problems.size()) + " invalid setting(s)";
        for (const auto& p : problems) {
            msg += "\n  - " + p;
        }
        throw Error(ErrorKind::ValidationError, msg);
    }
    return c;
}

RunConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::Io, "cannot open config " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path.string());
}

std::string config_text(const RunConfig& c) {
    std::ostringstream out;
    out << "[system]\nname = " << c.name << "\ndimension = " << c.system.dimension << '\n';
    if (!c.system.bilinear()) {
        out << "A = ";
        put_matrix(out, c.system.matrices.front());
        out << '\n';
    } else {
        for (std::size_t i = 0; i < c.system.matrices.size(); ++i) {
            out << 'A' << i << " = ";
            put_matrix(out, c.system.matrices[i]);
            out << '\n';
        }
        out << "lower = ";
        put_vector(out, c.system.lower);
        out << "\nupper = ";
        put_vector(out, c.system.upper);
        out << "\nsamples = ";
        if (c.system.samples.empty()) {
            out << "vertices+center";
        } else {
            for (std::size_t i = 0; i < c.system.samples.size(); ++i) {
                if (i > 0) {
                    out << "; ";
                }
                put_vector(out, c.system.samples[i]);
            }
        }
        out << '\n';
    }
    out << "\n[grid]\nn = " << c.n << "\nm = " << c.m << "\n\n[params]\nT = ";
    put_number(out, c.step_time);
    out << "\nepsilon = ";
    put_number(out, c.epsilon);
    out << "\ndelta0 = ";
    put_number(out, c.delta0);
    out << "\nrefine = " << c.refine << "\nmax_dimension = " << c.max_dimension << "\n\n[analysis]\nrun = ";
    for (std::size_t i = 0; i < c.analyses.size(); ++i) {
        out << (i > 0 ? ", " : "") << to_string(c.analyses[i]);
    }
    out << "\nalpha0 = ";
    put_number(out, c.alpha0);
    out << "\nalpha1 = ";
    put_number(out, c.alpha1);
    out << "\n\n[output]\nplot = " << (c.plot ? "true" : "false") << '\n';
    if (!c.out_dir.empty()) {
        out << "dir = " << c.out_dir.string() << '\n';
    }
    return out.str();
}

std::vector<std::string> demo_names() {
    std::vector<std::string> out;
    for (const auto& [name, demo] : demos()) {
        out.push_back(name);
    }
    return out;
}

RunConfig demo_config(const std::string& name) {
    const auto it = demos().find(name);
    if (it == demos().end()) {
        throw Error(ErrorKind::InvalidArgument, "unknown demo '" + name + "'");
    }
    return it->second.config;
}

std::string demo_description(const std::string& name) {
    const auto it = demos().find(name);
    if (it == demos().end()) {
        throw Error(ErrorKind::InvalidArgument, "unknown demo '" + name + "'");
    }
    return it->second.description;
}

}  // namespace selgrade
