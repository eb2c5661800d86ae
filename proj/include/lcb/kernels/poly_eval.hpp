#pragma once
// Batched evaluation of sample-probability polynomials.
//
// The probability that n i.i.d. draws land in a set of samples is a
// homogeneous degree-n polynomial in the masses of the support points:
//   P(u) = sum_k coef_k * prod_j u_j^{e_kj}.
// Search routines evaluate this polynomial at many candidate mass vectors,
// so the evaluation is provided as a scalar reference kernel plus SIMD
// variants chosen at runtime. All variants perform the same operations in
// the same order and are compiled without FMA contraction, so their results
// are bit-identical.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace lcb::kernels {

struct MonomialTable {
    int vars = 0;     // number of support points the masses refer to
    int degree = 0;   // total degree n; every exponent is <= degree
    std::vector<double> coef;          // one per monomial
    std::vector<std::uint8_t> exps;    // row-major, monomials x vars

    std::size_t size() const noexcept { return coef.size(); }
};

/// Masses of `count` candidate distributions, structure-of-arrays:
/// coord(j)[p] is the mass of support point j in candidate p.
struct PointBatch {
    int vars = 0;
    std::size_t count = 0;
    std::vector<double> data;  // vars x stride
    std::size_t stride = 0;

    PointBatch() = default;
    PointBatch(int vars_, std::size_t capacity);

    double* coord(int j) noexcept { return data.data() + static_cast<std::size_t>(j) * stride; }
    const double* coord(int j) const noexcept { return data.data() + static_cast<std::size_t>(j) * stride; }
};

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa) noexcept;

/// Highest ISA this binary was built with and the CPU supports.
Isa best_supported_isa() noexcept;

/// ISA currently used by eval_polynomial. Defaults to best_supported_isa(),
/// or Scalar when the LCB_FORCE_SCALAR environment variable is set.
Isa active_isa() noexcept;

/// Overrides the dispatch choice; returns false (and changes nothing) if the
/// requested ISA is unavailable.
bool set_active_isa(Isa isa) noexcept;

bool isa_available(Isa isa) noexcept;

/// out[p] = P(batch point p) for p < batch.count, using the active ISA.
void eval_polynomial(const MonomialTable& poly, const PointBatch& batch, std::span<double> out);

/// Same, pinned to a specific ISA (used by equivalence tests).
void eval_polynomial(Isa isa, const MonomialTable& poly, const PointBatch& batch, std::span<double> out);

namespace detail {
void eval_polynomial_scalar(const MonomialTable& poly, const PointBatch& batch, std::span<double> out);
#if defined(LCB_HAVE_AVX2)
void eval_polynomial_avx2(const MonomialTable& poly, const PointBatch& batch, std::span<double> out);
#endif
}  // namespace detail

}  // namespace lcb::kernels
