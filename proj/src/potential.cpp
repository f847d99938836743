#include "halfline/potential.hpp"

#include <algorithm>
#include <cmath>

#include "halfline/errors.hpp"

namespace halfline {

std::vector<double> Potential::grid_points() const {
    const std::size_t n = cells.size();
    std::vector<double> x(n + 1);
    for (std::size_t i = 0; i <= n; ++i) x[i] = b * static_cast<double>(i) / static_cast<double>(n);
    return x;
}

double Potential::value_at(double x) const {
    if (x < 0.0 || x >= b || cells.empty()) return 0.0;
    auto i = static_cast<std::size_t>(x / cell_width());
    return cells[std::min(i, cells.size() - 1)];
}

double Potential::max_abs() const {
    double m = 0.0;
    for (double v : cells) m = std::max(m, std::abs(v));
    return m;
}

OperatorSpec make_operator_spec(double b, std::vector<double> cell_values, Boundary boundary) {
    if (!(b > 0.0) || !std::isfinite(b)) throw InvalidInput("support bound b must be positive and finite");
    if (cell_values.empty()) throw InvalidInput("potential needs at least one cell");
    for (double v : cell_values)
        if (!std::isfinite(v)) throw InvalidInput("potential cell values must be finite");
    if (!boundary.is_dirichlet() && !std::isfinite(boundary.cot_theta))
        throw InvalidInput("cot theta must be finite");
    if (boundary.is_dirichlet()) boundary.cot_theta = 0.0;
    return OperatorSpec{Potential{b, std::move(cell_values)}, boundary};
}

double integral_of_potential(const OperatorSpec& spec) {
    const auto& c = spec.potential.cells;
    // Neumaier summation keeps refinement invariance at roundoff level.
    double s = 0.0, comp = 0.0;
    for (double v : c) {
        double t = s + v;
        comp += (std::abs(s) >= std::abs(v)) ? (s - t) + v : (v - t) + s;
        s = t;
    }
    return (s + comp) * spec.potential.cell_width();
}

OperatorSpec refine(const OperatorSpec& spec, int factor) {
    if (factor < 1) throw InvalidInput("refinement factor must be >= 1");
    std::vector<double> out;
    out.reserve(spec.potential.cells.size() * static_cast<std::size_t>(factor));
    for (double v : spec.potential.cells)
        for (int r = 0; r < factor; ++r) out.push_back(v);
    return OperatorSpec{Potential{spec.potential.b, std::move(out)}, spec.boundary};
}

std::vector<double> coarsen(const std::vector<double>& cells, std::size_t n) {
    if (n == 0 || cells.size() % n != 0) throw InvalidInput("coarsen: cell count mismatch");
    const std::size_t r = cells.size() / n;
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < r; ++j) s += cells[i * r + j];
        out[i] = s / static_cast<double>(r);
    }
    return out;
}

const char* to_string(ThetaClass t) {
    switch (t) {
        case ThetaClass::Dirichlet: return "dirichlet";
        case ThetaClass::NonDirichlet: return "non_dirichlet";
        default: return "undetermined";
    }
}

}  // namespace halfline
