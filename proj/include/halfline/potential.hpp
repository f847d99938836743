#pragma once

#include <vector>

namespace halfline {

enum class BoundaryKind { Dirichlet, NonDirichlet };

// Boundary class as read off from data, before cot(theta) is known.
enum class ThetaClass { Dirichlet, NonDirichlet, Undetermined };
const char* to_string(ThetaClass t);

struct Boundary {
    BoundaryKind kind = BoundaryKind::Dirichlet;
    double cot_theta = 0.0;  // meaningful only for NonDirichlet

    static Boundary dirichlet() { return {BoundaryKind::Dirichlet, 0.0}; }
    static Boundary non_dirichlet(double c) { return {BoundaryKind::NonDirichlet, c}; }
    bool is_dirichlet() const { return kind == BoundaryKind::Dirichlet; }
    bool operator==(const Boundary&) const = default;
};

// Piecewise-constant potential on uniform cells covering [0, b]; zero beyond b.
struct Potential {
    double b = 1.0;
    std::vector<double> cells;

    double cell_width() const { return b / static_cast<double>(cells.size()); }
    std::vector<double> grid_points() const;  // cells.size()+1 edges
    double value_at(double x) const;          // right-continuous, 0 outside [0,b)
    double max_abs() const;
};

struct OperatorSpec {
    Potential potential;
    Boundary boundary;
};

struct BoundState {
    double gamma = 0.0;
    double g = 0.0;  // regular-solution normalization
    double m = 0.0;  // Jost-solution normalization
};
using BoundStateSet = std::vector<BoundState>;

OperatorSpec make_operator_spec(double b, std::vector<double> cell_values, Boundary boundary);

double integral_of_potential(const OperatorSpec& spec);

// Same potential on n*cells.size() cells.
OperatorSpec refine(const OperatorSpec& spec, int factor);

// Cell averages of a piecewise-constant potential on a coarser uniform grid;
// cells.size() must be a multiple of n.
std::vector<double> coarsen(const std::vector<double>& cells, std::size_t n);

}  // namespace halfline
