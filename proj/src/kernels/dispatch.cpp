#include <atomic>
#include <cstdlib>
#include <stdexcept>

#include "lcb/kernels/poly_eval.hpp"

namespace lcb::kernels {

PointBatch::PointBatch(int vars_, std::size_t capacity)
    : vars(vars_), count(0), data(static_cast<std::size_t>(vars_) * ((capacity + 3) / 4 * 4), 0.0),
      stride((capacity + 3) / 4 * 4) {}

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
        case Isa::Scalar: return "scalar";
        case Isa::Avx2: return "avx2";
    }
    return "unknown";
}

bool isa_available(Isa isa) noexcept {
    switch (isa) {
        case Isa::Scalar: return true;
        case Isa::Avx2:
#if defined(LCB_HAVE_AVX2)
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
    }
    return false;
}

Isa best_supported_isa() noexcept {
    return isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

namespace {

Isa initial_isa() noexcept {
    if (std::getenv("LCB_FORCE_SCALAR") != nullptr) return Isa::Scalar;
    return best_supported_isa();
}

std::atomic<Isa>& current() noexcept {
    static std::atomic<Isa> isa{initial_isa()};
    return isa;
}

}  // namespace

Isa active_isa() noexcept { return current().load(std::memory_order_relaxed); }

bool set_active_isa(Isa isa) noexcept {
    if (!isa_available(isa)) return false;
    current().store(isa, std::memory_order_relaxed);
    return true;
}

void eval_polynomial(Isa isa, const MonomialTable& poly, const PointBatch& batch, std::span<double> out) {
    if (out.size() < batch.count) throw std::invalid_argument("output span shorter than the batch");
    switch (isa) {
        case Isa::Scalar:
            detail::eval_polynomial_scalar(poly, batch, out);
            return;
        case Isa::Avx2:
#if defined(LCB_HAVE_AVX2)
            if (isa_available(Isa::Avx2)) {
                detail::eval_polynomial_avx2(poly, batch, out);
                return;
            }
#endif
            throw std::invalid_argument("AVX2 kernel is not available on this machine");
    }
}

void eval_polynomial(const MonomialTable& poly, const PointBatch& batch, std::span<double> out) {
    eval_polynomial(active_isa(), poly, batch, out);
}

}  // namespace lcb::kernels
