#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>

#include "sosgap/kernels/kernels.hpp"
#include "sosgap/numerics/interval.hpp"

namespace sosgap::kernels {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void axpby_scalar(double alpha, const double* x, double beta, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = alpha * x[i] + beta * y[i];
}

double norm_inf_scalar(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(x[i]));
  return m;
}

void clamp_nonneg_scalar(double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] = x[i] > 0.0 ? x[i] : 0.0;
}

void next_down_scalar(const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = sosgap::next_down(x[i]);
}

void next_up_scalar(const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = sosgap::next_up(x[i]);
}

// Four interleaved accumulators, combined in lane order, then the tail: the
// association order of the vector kernels, so every variant returns the same
// bits and certificates do not depend on the machine.
IntervalSum interval_dot_scalar(const double* alo, const double* ahi, const double* blo,
                                const double* bhi, std::size_t n) {
  const auto product = [&](std::size_t i) {
    const double p1 = alo[i] * blo[i];
    const double p2 = alo[i] * bhi[i];
    const double p3 = ahi[i] * blo[i];
    const double p4 = ahi[i] * bhi[i];
    return IntervalSum{sosgap::next_down(std::min(std::min(p1, p2), std::min(p3, p4))),
                       sosgap::next_up(std::max(std::max(p1, p2), std::max(p3, p4)))};
  };
  double lane_lo[4] = {0.0, 0.0, 0.0, 0.0};
  double lane_hi[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    for (std::size_t k = 0; k < 4; ++k) {
      const IntervalSum p = product(i + k);
      lane_lo[k] = sosgap::next_down(lane_lo[k] + p.lo);
      lane_hi[k] = sosgap::next_up(lane_hi[k] + p.hi);
    }
  }
  double lo = lane_lo[0];
  double hi = lane_hi[0];
  for (std::size_t k = 1; k < 4; ++k) {
    lo = sosgap::next_down(lo + lane_lo[k]);
    hi = sosgap::next_up(hi + lane_hi[k]);
  }
  if (i < n) {
    double tlo = 0.0;
    double thi = 0.0;
    for (; i < n; ++i) {
      const IntervalSum p = product(i);
      tlo = sosgap::next_down(tlo + p.lo);
      thi = sosgap::next_up(thi + p.hi);
    }
    lo = sosgap::next_down(lo + tlo);
    hi = sosgap::next_up(hi + thi);
  }
  return {lo, hi};
}

constexpr KernelTable kScalar{
    "scalar",           dot_scalar,       axpy_scalar,      axpby_scalar,       norm_inf_scalar,
    clamp_nonneg_scalar, next_down_scalar, next_up_scalar, interval_dot_scalar,
};

const KernelTable* initial_table() {
  if (const char* env = std::getenv("SOSGAP_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) return &kScalar;
    if (std::strcmp(env, "avx2") == 0 && avx2_table() != nullptr) return avx2_table();
  }
  const KernelTable* fast = avx2_table();
  return fast != nullptr ? fast : &kScalar;
}

const KernelTable*& current() {
  static const KernelTable* table = initial_table();
  return table;
}

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

const KernelTable& active() { return *current(); }

bool select(std::string_view name) {
  if (name == "scalar") {
    current() = &kScalar;
    return true;
  }
  if (name == "avx2" || name == "auto") {
    const KernelTable* fast = avx2_table();
    if (fast == nullptr) {
      if (name == "auto") current() = &kScalar;
      return name == "auto";
    }
    current() = fast;
    return true;
  }
  return false;
}

}  // namespace sosgap::kernels
