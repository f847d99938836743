#include "halfline/sampled.hpp"

#include <cmath>

#include "halfline/errors.hpp"

namespace halfline {

void SampledFunction::validate() const {
    if (grid.size() != values.size()) throw InvalidInput("sampled function: grid/value length mismatch");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw InvalidInput("sampled function: grid must be strictly ascending");
    for (const auto& v : values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw InvalidInput("sampled function: non-finite value");
}

std::vector<double> uniform_grid(double lo, double hi, double step) {
    if (!(step > 0.0) || !(hi >= lo)) throw InvalidInput("uniform_grid: bad range");
    const auto n = static_cast<std::size_t>(std::llround((hi - lo) / step));
    std::vector<double> g(n + 1);
    for (std::size_t i = 0; i <= n; ++i) g[i] = lo + step * static_cast<double>(i);
    return g;
}

}  // namespace halfline
