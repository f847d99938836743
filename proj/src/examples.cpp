#include "halfline/examples.hpp"

#include <cmath>

#include <boost/math/tools/roots.hpp>

#include "halfline/errors.hpp"
#include "halfline/sampled.hpp"

namespace halfline::examples {

OperatorSpec well(double v, Boundary bc, int cells) {
    return make_operator_spec(1.0, std::vector<double>(static_cast<std::size_t>(cells), v), bc);
}

OperatorSpec ex61() { return well(0.0, Boundary::non_dirichlet(-1.0), 1); }
OperatorSpec ex62a() { return well(-10.0, Boundary::non_dirichlet(1.0)); }
OperatorSpec ex62b() { return well(-0.2, Boundary::non_dirichlet(6.0)); }
OperatorSpec ex62c() { return well(0.003521, Boundary::non_dirichlet(-3.0)); }
OperatorSpec dirichlet_well() { return well(-M_PI * M_PI / 4.0, Boundary::dirichlet()); }

RootResult root_solve_example_63_a() {
    auto f = [](double a) { return std::sqrt(a) * std::tan(std::sqrt(a) / 2.0) - std::tanh(0.5); };
    // f rises from -tanh(1/2) at 0 to +infinity at pi^2
    auto tol = [](double lo, double hi) { return hi - lo < 1e-15; };
    const auto r = boost::math::tools::bisect(f, 1e-12, M_PI * M_PI * (1.0 - 1e-12), tol);
    const double a = 0.5 * (r.first + r.second);
    return {a, std::abs(f(a))};
}

OperatorSpec ex63(double a, int cells) {
    if (cells < 2 || cells % 2) throw InvalidInput("ex63 needs an even cell count");
    std::vector<double> v(static_cast<std::size_t>(cells));
    for (int i = 0; i < cells; ++i) v[static_cast<std::size_t>(i)] = 2 * i < cells ? 1.0 : -a;
    return make_operator_spec(1.0, std::move(v), Boundary::dirichlet());
}

OperatorSpec by_name(const std::string& name) {
    if (name == "ex61") return ex61();
    if (name == "ex62a") return ex62a();
    if (name == "ex62b") return ex62b();
    if (name == "ex62c") return ex62c();
    if (name == "ex63") return ex63(root_solve_example_63_a().a);
    throw InvalidInput("unknown example '" + name + "'");
}

std::vector<double> default_k() { return uniform_grid(0.0, 100.0, 0.01); }

}  // namespace halfline::examples
