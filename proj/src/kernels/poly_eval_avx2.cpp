#include "lcb/kernels/poly_eval.hpp"

#include <immintrin.h>

#include <cassert>

namespace lcb::kernels::detail {

namespace {
struct Lanes {
    __m256d v;
};
}  // namespace

// Four candidates per iteration; the operation sequence per lane matches
// eval_polynomial_scalar exactly.
void eval_polynomial_avx2(const MonomialTable& poly, const PointBatch& batch, std::span<double> out) {
    assert(batch.vars == poly.vars);
    assert(out.size() >= batch.count);
    const auto vars = static_cast<std::size_t>(poly.vars);
    const auto width = static_cast<std::size_t>(poly.degree) + 1;
    std::vector<Lanes> pw(vars * width);

    const std::size_t blocks = batch.count / 4;
    for (std::size_t b = 0; b < blocks; ++b) {
        const std::size_t p = b * 4;
        for (std::size_t j = 0; j < vars; ++j) {
            const __m256d u = _mm256_loadu_pd(batch.coord(static_cast<int>(j)) + p);
            Lanes* row = pw.data() + j * width;
            row[0].v = _mm256_set1_pd(1.0);
            for (std::size_t e = 1; e < width; ++e) row[e].v = _mm256_mul_pd(row[e - 1].v, u);
        }
        __m256d acc = _mm256_setzero_pd();
        const std::uint8_t* ex = poly.exps.data();
        for (std::size_t k = 0; k < poly.size(); ++k, ex += vars) {
            __m256d prod = _mm256_set1_pd(poly.coef[k]);
            for (std::size_t j = 0; j < vars; ++j) prod = _mm256_mul_pd(prod, pw[j * width + ex[j]].v);
            acc = _mm256_add_pd(acc, prod);
        }
        _mm256_storeu_pd(out.data() + p, acc);
    }

    const std::size_t done = blocks * 4;
    if (done == batch.count) return;
    PointBatch tail(batch.vars, batch.count - done);
    tail.count = batch.count - done;
    for (std::size_t j = 0; j < vars; ++j)
        for (std::size_t q = 0; q < tail.count; ++q)
            tail.coord(static_cast<int>(j))[q] = batch.coord(static_cast<int>(j))[done + q];
    eval_polynomial_scalar(poly, tail, out.subspan(done));
}

}  // namespace lcb::kernels::detail
