#include "lcb/kernels/poly_eval.hpp"

#include <cassert>

namespace lcb::kernels::detail {

void eval_polynomial_scalar(const MonomialTable& poly, const PointBatch& batch, std::span<double> out) {
    assert(batch.vars == poly.vars);
    assert(out.size() >= batch.count);
    const auto vars = static_cast<std::size_t>(poly.vars);
    const auto width = static_cast<std::size_t>(poly.degree) + 1;
    std::vector<double> pw(vars * width);

    for (std::size_t p = 0; p < batch.count; ++p) {
        for (std::size_t j = 0; j < vars; ++j) {
            const double u = batch.coord(static_cast<int>(j))[p];
            double* row = pw.data() + j * width;
            row[0] = 1.0;
            for (std::size_t e = 1; e < width; ++e) row[e] = row[e - 1] * u;
        }
        double acc = 0.0;
        const std::uint8_t* ex = poly.exps.data();
        for (std::size_t k = 0; k < poly.size(); ++k, ex += vars) {
            double prod = poly.coef[k];
            for (std::size_t j = 0; j < vars; ++j) prod *= pw[j * width + ex[j]];
            acc += prod;
        }
        out[p] = acc;
    }
}

}  // namespace lcb::kernels::detail
