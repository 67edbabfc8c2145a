#pragma once

// Data-parallel inner loops used by the conic solver and the certifier.
//
// Every kernel has a scalar reference implementation. On x86-64 an AVX2
// variant is compiled separately and selected at runtime when the CPU
// supports it; SOSGAP_KERNELS=scalar|avx2 overrides the choice. Element-wise
// kernels are bitwise identical across variants; reductions agree up to
// summation order; interval reductions are each rigorous enclosures.

#include <cstddef>
#include <span>
#include <string_view>

namespace sosgap::kernels {

struct IntervalSum {
  double lo;
  double hi;
};

struct KernelTable {
  const char* name;
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // y = alpha * x + beta * y
  void (*axpby)(double alpha, const double* x, double beta, double* y, std::size_t n);
  double (*norm_inf)(const double* x, std::size_t n);
  void (*clamp_nonneg)(double* x, std::size_t n);
  void (*next_down)(const double* x, double* out, std::size_t n);
  void (*next_up)(const double* x, double* out, std::size_t n);
  // Outward-rounded enclosure of sum_k [alo_k, ahi_k] * [blo_k, bhi_k].
  IntervalSum (*interval_dot)(const double* alo, const double* ahi, const double* blo,
                              const double* bhi, std::size_t n);
};

const KernelTable& scalar_table();

/// The AVX2 table, or nullptr when not compiled in or not supported by the CPU.
const KernelTable* avx2_table();

/// Currently selected table.
const KernelTable& active();

/// Force a variant ("scalar", "avx2" or "auto"). Returns false if the
/// requested variant is unavailable; the selection is left unchanged then.
bool select(std::string_view name);

// Span conveniences over the active table.
inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x.data(), y.data(), x.size());
}
inline void axpby(double alpha, std::span<const double> x, double beta, std::span<double> y) {
  active().axpby(alpha, x.data(), beta, y.data(), x.size());
}
inline double norm_inf(std::span<const double> x) { return active().norm_inf(x.data(), x.size()); }
inline void clamp_nonneg(std::span<double> x) { active().clamp_nonneg(x.data(), x.size()); }

}  // namespace sosgap::kernels
