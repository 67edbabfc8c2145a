#include "sosgap/group/element.hpp"

#include <sstream>
#include <utility>

namespace sosgap {

namespace matrix {

void multiply_into(const Ring& ring, int n, std::span<const std::int64_t> a,
                   std::span<const std::int64_t> b, std::span<std::int64_t> out) {
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::int64_t acc = 0;
      for (int k = 0; k < n; ++k) {
        const std::int64_t x = a[static_cast<std::size_t>(i * n + k)];
        const std::int64_t y = b[static_cast<std::size_t>(k * n + j)];
        if (x != 0 && y != 0) acc = ring.add(acc, ring.mul(x, y));
      }
      out[static_cast<std::size_t>(i * n + j)] = acc;
    }
  }
}

namespace {

// Fraction-free Gaussian elimination (Bareiss); every division is exact.
std::int64_t bareiss_determinant(int n, std::vector<__int128> m) {
  if (n == 0) return 1;
  int sign = 1;
  __int128 prev = 1;
  const auto at = [&](int r, int c) -> __int128& { return m[static_cast<std::size_t>(r * n + c)]; };
  constexpr __int128 kLimit = static_cast<__int128>(1) << 62;
  for (int k = 0; k < n - 1; ++k) {
    if (at(k, k) == 0) {
      int swap = -1;
      for (int r = k + 1; r < n; ++r) {
        if (at(r, k) != 0) {
          swap = r;
          break;
        }
      }
      if (swap < 0) return 0;
      for (int c = 0; c < n; ++c) std::swap(at(k, c), at(swap, c));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        const __int128 v = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
        if (v > kLimit || v < -kLimit) throw OverflowError("integer overflow in determinant");
        at(i, j) = v;
      }
    }
    prev = at(k, k);
  }
  const __int128 det = sign * at(n - 1, n - 1);
  if (det > INT64_MAX || det < INT64_MIN) throw OverflowError("integer overflow in determinant");
  return static_cast<std::int64_t>(det);
}

std::int64_t modular_determinant(const Ring& ring, int n, std::vector<std::int64_t> m) {
  std::int64_t det = 1;
  const auto at = [&](int r, int c) -> std::int64_t& { return m[static_cast<std::size_t>(r * n + c)]; };
  for (int k = 0; k < n; ++k) {
    int pivot = -1;
    for (int r = k; r < n; ++r) {
      if (at(r, k) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return 0;
    if (pivot != k) {
      for (int c = 0; c < n; ++c) std::swap(at(k, c), at(pivot, c));
      det = ring.neg(det);
    }
    det = ring.mul(det, at(k, k));
    const std::int64_t inv = ring.inverse(at(k, k));
    for (int r = k + 1; r < n; ++r) {
      const std::int64_t f = ring.mul(at(r, k), inv);
      if (f == 0) continue;
      for (int c = k; c < n; ++c) at(r, c) = ring.sub(at(r, c), ring.mul(f, at(k, c)));
    }
  }
  return det;
}

}  // namespace

std::int64_t determinant(const Ring& ring, int n, std::span<const std::int64_t> a) {
  if (ring.is_modular()) return modular_determinant(ring, n, {a.begin(), a.end()});
  return bareiss_determinant(n, {a.begin(), a.end()});
}

std::vector<std::int64_t> adjugate(const Ring& ring, int n, std::span<const std::int64_t> a) {
  std::vector<std::int64_t> adj(static_cast<std::size_t>(n * n));
  if (n == 1) {
    adj[0] = ring.reduce(1);
    return adj;
  }
  std::vector<std::int64_t> minor(static_cast<std::size_t>((n - 1) * (n - 1)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      // Minor with row i and column j removed.
      std::size_t w = 0;
      for (int r = 0; r < n; ++r) {
        if (r == i) continue;
        for (int c = 0; c < n; ++c) {
          if (c == j) continue;
          minor[w++] = a[static_cast<std::size_t>(r * n + c)];
        }
      }
      std::int64_t cof = determinant(ring, n - 1, minor);
      if ((i + j) % 2 == 1) cof = ring.neg(cof);
      adj[static_cast<std::size_t>(j * n + i)] = ring.reduce(cof);
    }
  }
  return adj;
}

}  // namespace matrix

GroupElement::GroupElement(Ring ring, int n, std::vector<std::int64_t> entries)
    : ring_(ring), n_(n), entries_(std::move(entries)) {
  if (n < 1) throw InputError("GroupElement: dimension must be positive");
  if (entries_.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    throw InputError("GroupElement: expected " + std::to_string(n * n) + " entries");
  }
  for (auto& e : entries_) e = ring_.reduce(e);
  if (matrix::determinant(ring_, n_, entries_) != ring_.reduce(1)) {
    throw InputError("GroupElement: determinant is not 1");
  }
}

GroupElement GroupElement::identity(Ring ring, int n) {
  std::vector<std::int64_t> e(static_cast<std::size_t>(n * n), 0);
  for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i * n + i)] = ring.reduce(1);
  return GroupElement(ring, n, std::move(e), 0);
}

GroupElement GroupElement::trusted(Ring ring, int n, std::vector<std::int64_t> entries) {
  return GroupElement(ring, n, std::move(entries), 0);
}

bool GroupElement::is_identity() const { return *this == identity(ring_, n_); }

std::string GroupElement::to_string() const {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < n_; ++i) {
    os << (i ? "; " : "");
    for (int j = 0; j < n_; ++j) os << (j ? " " : "") << at(i, j);
  }
  os << ']';
  return os.str();
}

GroupElement multiply(const GroupElement& a, const GroupElement& b) {
  if (a.dim() != b.dim() || !(a.ring() == b.ring())) {
    throw InputError("multiply: dimension or ring mismatch");
  }
  std::vector<std::int64_t> out(a.entries().size());
  matrix::multiply_into(a.ring(), a.dim(), a.entries(), b.entries(), out);
  return GroupElement::trusted(a.ring(), a.dim(), std::move(out));
}

GroupElement inverse(const GroupElement& g) {
  return GroupElement::trusted(g.ring(), g.dim(), matrix::adjugate(g.ring(), g.dim(), g.entries()));
}

}  // namespace sosgap
