#pragma once

#include <string>
#include <vector>

#include "halfline/potential.hpp"

namespace halfline::examples {

// Constant well v on [0, 1] split into `cells` cells.
OperatorSpec well(double v, Boundary bc, int cells = 100);

OperatorSpec ex61();  // V = 0, cot theta = -1
OperatorSpec ex62a();
OperatorSpec ex62b();
OperatorSpec ex62c();
OperatorSpec dirichlet_well();  // v = -pi^2/4, Dirichlet

struct RootResult {
    double a = 0.0;
    double residual = 0.0;
};
// sqrt(a) tan(sqrt(a)/2) = tanh(1/2) by bisection on (0, pi^2).
RootResult root_solve_example_63_a();

// 1 on (0, 1/2), -a on (1/2, 1), Dirichlet.
OperatorSpec ex63(double a, int cells = 100);

OperatorSpec by_name(const std::string& name);

std::vector<double> default_k();  // [0, 100], step 0.01

}  // namespace halfline::examples
