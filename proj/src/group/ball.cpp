#include "sosgap/group/ball.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "sosgap/io/digest.hpp"

namespace sosgap {
namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::size_t hash_entries(std::span<const std::int64_t> s) {
  std::uint64_t h = 0x243f6a8885a308d3ULL;
  for (const std::int64_t x : s) h = mix(h ^ static_cast<std::uint64_t>(x));
  return static_cast<std::size_t>(h);
}

// Hash set of positions into a flat row-major entry buffer, searchable by
// entry span without materializing a key.
struct EntryHash {
  using is_transparent = void;
  const std::vector<std::int64_t>* buf;
  std::size_t width;
  std::span<const std::int64_t> row(std::uint32_t i) const {
    return {buf->data() + static_cast<std::size_t>(i) * width, width};
  }
  std::size_t operator()(std::uint32_t i) const { return hash_entries(row(i)); }
  std::size_t operator()(std::span<const std::int64_t> s) const { return hash_entries(s); }
};

struct EntryEq {
  using is_transparent = void;
  const std::vector<std::int64_t>* buf;
  std::size_t width;
  std::span<const std::int64_t> row(std::uint32_t i) const {
    return {buf->data() + static_cast<std::size_t>(i) * width, width};
  }
  static bool same(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
    return std::equal(a.begin(), a.end(), b.begin(), b.end());
  }
  bool operator()(std::uint32_t a, std::uint32_t b) const { return same(row(a), row(b)); }
  bool operator()(std::span<const std::int64_t> a, std::uint32_t b) const { return same(a, row(b)); }
  bool operator()(std::uint32_t a, std::span<const std::int64_t> b) const { return same(row(a), b); }
};

using EntryIndex = std::unordered_set<std::uint32_t, EntryHash, EntryEq>;

EntryIndex make_index(const std::vector<std::int64_t>* buf, std::size_t width) {
  return EntryIndex(16, EntryHash{buf, width}, EntryEq{buf, width});
}

struct SparseFactor {
  int row;
  int col;
  std::int64_t value;
};

// Nonzeros of (g - I), so g * m and m * g cost O(n * nnz).
std::vector<SparseFactor> offset_from_identity(const GroupElement& g) {
  std::vector<SparseFactor> out;
  const Ring& ring = g.ring();
  for (int r = 0; r < g.dim(); ++r) {
    for (int c = 0; c < g.dim(); ++c) {
      const std::int64_t v = ring.sub(g.at(r, c), r == c ? ring.reduce(1) : 0);
      if (v != 0) out.push_back({r, c, v});
    }
  }
  return out;
}

// out = m * g, given the offset of g from the identity.
void right_multiply(const Ring& ring, int n, std::span<const std::int64_t> m,
                    const std::vector<SparseFactor>& g, std::span<std::int64_t> out) {
  std::copy(m.begin(), m.end(), out.begin());
  for (const auto& f : g) {
    for (int a = 0; a < n; ++a) {
      const std::int64_t x = m[static_cast<std::size_t>(a * n + f.row)];
      if (x == 0) continue;
      auto& o = out[static_cast<std::size_t>(a * n + f.col)];
      o = ring.add(o, ring.mul(x, f.value));
    }
  }
}

// out = g * m.
void left_multiply(const Ring& ring, int n, const std::vector<SparseFactor>& g,
                   std::span<const std::int64_t> m, std::span<std::int64_t> out) {
  std::copy(m.begin(), m.end(), out.begin());
  for (const auto& f : g) {
    for (int b = 0; b < n; ++b) {
      const std::int64_t x = m[static_cast<std::size_t>(f.col * n + b)];
      if (x == 0) continue;
      auto& o = out[static_cast<std::size_t>(f.row * n + b)];
      o = ring.add(o, ring.mul(f.value, x));
    }
  }
}

}  // namespace

struct Ball::Data {
  Data(GeneratingSet g, int r)
      : gens(std::move(g)),
        radius(r),
        n(gens.dim()),
        ring(gens.ring()),
        width(static_cast<std::size_t>(n) * static_cast<std::size_t>(n)),
        index(make_index(&entries, width)) {}

  GeneratingSet gens;
  int radius;
  int n;
  Ring ring;
  std::size_t width;
  std::vector<std::int64_t> entries;
  std::vector<int> word_length;
  std::vector<std::size_t> inverse;
  EntryIndex index;
  // BFS provenance: element = entries(parent) * gens[parent_gen].
  std::vector<std::uint32_t> parent;
  std::vector<std::uint32_t> parent_gen;
  bool inversion_closed = false;
  std::string fingerprint;

  std::span<const std::int64_t> row(std::size_t i) const { return {entries.data() + i * width, width}; }
};

Ball::Ball(std::unique_ptr<Data> data) : d_(std::move(data)) {}
Ball::Ball(Ball&&) noexcept = default;
Ball& Ball::operator=(Ball&&) noexcept = default;
Ball::~Ball() = default;

Ball Ball::generate(const GeneratingSet& gens, int radius, Options options) {
  if (radius < 0) throw InputError("ball radius must be non-negative");
  auto d = std::make_unique<Data>(gens, radius);
  const int n = d->n;
  const std::size_t width = d->width;
  const Ring ring = d->ring;

  const GroupElement id = GroupElement::identity(ring, n);
  d->entries.assign(id.entries().begin(), id.entries().end());
  d->word_length.push_back(0);
  d->parent.push_back(0);
  d->parent_gen.push_back(0);
  d->index.insert(0);

  std::vector<std::vector<SparseFactor>> factors;
  for (const auto& g : gens.elements()) factors.push_back(offset_from_identity(g));

  std::size_t frontier_begin = 0;
  std::size_t frontier_end = 1;
  std::vector<std::int64_t> scratch(width);
  for (int layer = 1; layer <= radius; ++layer) {
    std::vector<std::int64_t> layer_buf;
    EntryIndex layer_index = make_index(&layer_buf, width);
    std::vector<std::uint32_t> layer_parent;
    std::vector<std::uint32_t> layer_gen;
    for (std::size_t pos = frontier_begin; pos < frontier_end; ++pos) {
      for (std::size_t gi = 0; gi < factors.size(); ++gi) {
        right_multiply(ring, n, d->row(pos), factors[gi], scratch);
        const std::span<const std::int64_t> key(scratch);
        if (d->index.find(key) != d->index.end()) continue;
        if (layer_index.find(key) != layer_index.end()) continue;
        if (d->word_length.size() + layer_parent.size() + 1 > options.max_elements) {
          throw LimitError("ball generation exceeded " + std::to_string(options.max_elements) +
                           " elements");
        }
        layer_buf.insert(layer_buf.end(), scratch.begin(), scratch.end());
        layer_index.insert(static_cast<std::uint32_t>(layer_parent.size()));
        layer_parent.push_back(static_cast<std::uint32_t>(pos));
        layer_gen.push_back(static_cast<std::uint32_t>(gi));
      }
    }
    if (layer_parent.empty()) break;  // the ball has saturated a finite group

    std::vector<std::size_t> order(layer_parent.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    const auto layer_row = [&](std::size_t i) {
      return std::span<const std::int64_t>(layer_buf.data() + i * width, width);
    };
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const auto ra = layer_row(a);
      const auto rb = layer_row(b);
      return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end());
    });
    frontier_begin = d->word_length.size();
    for (const std::size_t i : order) {
      const auto r = layer_row(i);
      const auto pos = static_cast<std::uint32_t>(d->word_length.size());
      d->entries.insert(d->entries.end(), r.begin(), r.end());
      d->word_length.push_back(layer);
      d->parent.push_back(layer_parent[i]);
      d->parent_gen.push_back(layer_gen[i]);
      d->index.insert(pos);
    }
    frontier_end = d->word_length.size();
  }

  Ball ball(std::move(d));
  ball.finalize();
  return ball;
}

Ball Ball::from_elements(GeneratingSet gens, int radius, std::vector<std::int64_t> entries,
                         std::vector<int> word_lengths) {
  if (radius < 0) throw InputError("ball radius must be non-negative");
  auto d = std::make_unique<Data>(std::move(gens), radius);
  const std::size_t width = d->width;
  if (entries.size() != word_lengths.size() * width) {
    throw InputError("ball: entry count does not match element count");
  }
  if (word_lengths.empty()) throw InputError("ball: no elements");
  d->entries = std::move(entries);
  d->word_length = std::move(word_lengths);
  const GroupElement id = GroupElement::identity(d->ring, d->n);
  if (!std::equal(id.entries().begin(), id.entries().end(), d->entries.begin()) ||
      d->word_length[0] != 0) {
    throw InputError("ball: position 0 must be the identity with word length 0");
  }
  for (std::size_t i = 0; i < d->word_length.size(); ++i) {
    const auto r = d->row(i);
    for (const std::int64_t x : r) {
      if (d->ring.reduce(x) != x) throw InputError("ball: entries are not canonical");
    }
    if (i > 0) {
      if (d->word_length[i] < d->word_length[i - 1]) {
        throw InputError("ball: word lengths are not in BFS order");
      }
      if (d->word_length[i] < 1) throw InputError("ball: non-identity element with word length 0");
    }
    if (d->word_length[i] > radius) throw InputError("ball: word length exceeds radius");
    if (matrix::determinant(d->ring, d->n, r) != d->ring.reduce(1)) {
      throw InputError("ball: element " + std::to_string(i) + " does not have determinant 1");
    }
    if (!d->index.insert(static_cast<std::uint32_t>(i)).second) {
      throw InputError("ball: duplicate element at position " + std::to_string(i));
    }
  }
  Ball ball(std::move(d));
  ball.finalize();
  return ball;
}

void Ball::finalize() {
  Data& d = *d_;
  const std::size_t count = d.word_length.size();
  const bool have_parents = d.parent.size() == count;
  std::vector<std::vector<SparseFactor>> inv_factors;
  if (have_parents) {
    for (const auto& g : d.gens.elements()) inv_factors.push_back(offset_from_identity(inverse(g)));
  }
  d.inverse.assign(count, npos);
  d.inverse[0] = 0;
  std::vector<std::int64_t> scratch(d.width);
  for (std::size_t i = 1; i < count; ++i) {
    // (h s)^-1 = s^-1 h^-1 reuses the parent's inverse when available.
    if (have_parents && d.inverse[d.parent[i]] != npos) {
      left_multiply(d.ring, d.n, inv_factors[d.parent_gen[i]], d.row(d.inverse[d.parent[i]]), scratch);
    } else {
      const auto adj = matrix::adjugate(d.ring, d.n, d.row(i));
      std::copy(adj.begin(), adj.end(), scratch.begin());
    }
    const auto it = d.index.find(std::span<const std::int64_t>(scratch));
    if (it != d.index.end()) d.inverse[i] = *it;
  }
  d.inversion_closed = std::find(d.inverse.begin(), d.inverse.end(), npos) == d.inverse.end();
  d.parent.clear();
  d.parent.shrink_to_fit();
  d.parent_gen.clear();
  d.parent_gen.shrink_to_fit();

  Sha256 h;
  h.update("sosgap-ball-v1");
  const std::int64_t header[3] = {d.n, d.ring.modulus(), d.radius};
  h.update_pod(std::span<const std::int64_t>(header));
  h.update_pod(std::span<const std::int64_t>(d.entries));
  h.update_pod(std::span<const int>(d.word_length));
  d.fingerprint = h.hex_digest();
}

std::size_t Ball::size() const { return d_->word_length.size(); }
int Ball::dim() const { return d_->n; }
const Ring& Ball::ring() const { return d_->ring; }
int Ball::radius() const { return d_->radius; }
const GeneratingSet& Ball::generators() const { return d_->gens; }
std::span<const std::int64_t> Ball::entries(std::size_t i) const { return d_->row(i); }
std::span<const std::int64_t> Ball::all_entries() const { return d_->entries; }

GroupElement Ball::element(std::size_t i) const {
  const auto r = d_->row(i);
  return GroupElement::trusted(d_->ring, d_->n, {r.begin(), r.end()});
}

int Ball::word_length(std::size_t i) const { return d_->word_length[i]; }
const std::vector<int>& Ball::word_lengths() const { return d_->word_length; }
int Ball::max_word_length() const { return d_->word_length.back(); }

std::size_t Ball::find(std::span<const std::int64_t> entries) const {
  if (entries.size() != d_->width) return npos;
  const auto it = d_->index.find(entries);
  return it == d_->index.end() ? npos : *it;
}

std::size_t Ball::inverse_index(std::size_t i) const { return d_->inverse[i]; }
bool Ball::inversion_closed() const { return d_->inversion_closed; }

std::vector<std::size_t> Ball::generator_positions() const {
  std::vector<std::size_t> out;
  for (const auto& g : d_->gens.elements()) out.push_back(find(g));
  return out;
}

const std::string& Ball::fingerprint() const { return d_->fingerprint; }

}  // namespace sosgap
