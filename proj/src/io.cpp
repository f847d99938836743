#include "halfline/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "halfline/errors.hpp"

namespace halfline::io {

using nlohmann::json;

json spec_to_json(const OperatorSpec& spec) {
    json j;
    j["b"] = spec.potential.b;
    j["cells"] = spec.potential.cells;
    if (spec.boundary.is_dirichlet())
        j["boundary"] = {{"kind", "dirichlet"}};
    else
        j["boundary"] = {{"kind", "non_dirichlet"}, {"cot_theta", spec.boundary.cot_theta}};
    return j;
}

OperatorSpec spec_from_json(const json& j) {
    try {
        const double b = j.at("b").get<double>();
        auto cells = j.at("cells").get<std::vector<double>>();
        const auto& bc = j.at("boundary");
        const auto kind = bc.at("kind").get<std::string>();
        Boundary boundary;
        if (kind == "dirichlet")
            boundary = Boundary::dirichlet();
        else if (kind == "non_dirichlet")
            boundary = Boundary::non_dirichlet(bc.at("cot_theta").get<double>());
        else
            throw InvalidInput("unknown boundary kind '" + kind + "'");
        return make_operator_spec(b, std::move(cells), boundary);
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("malformed operator spec: ") + e.what());
    }
}

void write_spec(const std::string& path, const OperatorSpec& spec) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write " + path);
    // nlohmann serializes doubles with round-trip precision.
    out << spec_to_json(spec).dump(2) << '\n';
}

OperatorSpec read_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot read " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InvalidInput("invalid JSON in " + path + ": " + e.what());
    }
    return spec_from_json(j);
}

std::string csv_string(const SampledFunction& f) {
    std::string s = "x_or_k,re,im\n";
    char buf[96];
    for (std::size_t i = 0; i < f.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", f.grid[i], f.values[i].real(),
                      f.values[i].imag());
        s += buf;
    }
    return s;
}

void write_csv(const std::string& path, const SampledFunction& f) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write " + path);
    out << csv_string(f);
}

SampledFunction parse_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    SampledFunction f;
    bool header_seen = false;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!header_seen) {
            header_seen = true;
            if (line.find_first_not_of("0123456789+-.eE, \t") != std::string::npos) continue;
        }
        std::istringstream ls(line);
        std::string a, b, c;
        if (!std::getline(ls, a, ',') || !std::getline(ls, b, ','))
            throw InvalidInput("csv line " + std::to_string(lineno) + ": expected x,re[,im]");
        std::getline(ls, c, ',');
        try {
            double x = std::stod(a), re = std::stod(b), im = c.empty() ? 0.0 : std::stod(c);
            f.grid.push_back(x);
            f.values.emplace_back(re, im);
        } catch (const std::exception&) {
            throw InvalidInput("csv line " + std::to_string(lineno) + ": not numeric");
        }
    }
    f.validate();
    return f;
}

SampledFunction read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_csv(ss.str());
}

double round12(double x) {
    if (!std::isfinite(x) || x == 0.0) return x;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

}  // namespace halfline::io
