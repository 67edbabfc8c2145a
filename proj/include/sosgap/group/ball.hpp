#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "sosgap/group/generating_set.hpp"

namespace sosgap {

/// The ball B_d(e, S): all elements of word length <= d, in BFS order.
///
/// Position 0 holds the identity. Elements are ordered by word length and,
/// within one length, lexicographically by their canonical entry tuple, so
/// the order depends only on (S, d). A Ball is immutable once built and is
/// usually shared through std::shared_ptr<const Ball>.
class Ball {
 public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  struct Options {
    /// Generation fails with LimitError once the ball would exceed this size.
    std::size_t max_elements = 50'000'000;
  };

  static Ball generate(const GeneratingSet& gens, int radius) { return generate(gens, radius, Options{}); }
  static Ball generate(const GeneratingSet& gens, int radius, Options options);

  /// Rebuilds a ball from serialized data, validating the ordering
  /// invariants (identity first, distinct canonical elements, word lengths
  /// non-decreasing and bounded by the radius).
  static Ball from_elements(GeneratingSet gens, int radius, std::vector<std::int64_t> entries,
                            std::vector<int> word_lengths);

  Ball(Ball&&) noexcept;
  Ball& operator=(Ball&&) noexcept;
  ~Ball();

  std::size_t size() const;
  int dim() const;
  const Ring& ring() const;
  int radius() const;
  const GeneratingSet& generators() const;

  std::span<const std::int64_t> entries(std::size_t i) const;
  std::span<const std::int64_t> all_entries() const;
  GroupElement element(std::size_t i) const;
  int word_length(std::size_t i) const;
  const std::vector<int>& word_lengths() const;
  int max_word_length() const;

  /// Position of the element with the given canonical entries, or npos.
  std::size_t find(std::span<const std::int64_t> entries) const;
  std::size_t find(const GroupElement& g) const { return find(g.entries()); }

  /// Position of the inverse of element i, or npos when it lies outside.
  std::size_t inverse_index(std::size_t i) const;
  /// True when every element's inverse is in the ball.
  bool inversion_closed() const;

  /// Positions of the generators (npos for radius 0).
  std::vector<std::size_t> generator_positions() const;

  /// SHA-256 over ring, dimension, radius, element order and word lengths.
  const std::string& fingerprint() const;

 private:
  struct Data;
  explicit Ball(std::unique_ptr<Data> data);
  void finalize();

  std::unique_ptr<Data> d_;
};

}  // namespace sosgap
