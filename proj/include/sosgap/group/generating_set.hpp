#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sosgap/group/element.hpp"

namespace sosgap {

/// Finite generating set. Elements are distinct and never the identity;
/// the symmetric flag records whether the set is closed under inversion.
class GeneratingSet {
 public:
  /// Throws InputError on an empty set, mixed rings/dimensions, duplicates
  /// or the identity.
  GeneratingSet(std::vector<GroupElement> elements, std::string label = {});

  std::size_t size() const { return elements_.size(); }
  const GroupElement& operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<GroupElement>& elements() const { return elements_; }
  const Ring& ring() const { return elements_.front().ring(); }
  int dim() const { return elements_.front().dim(); }
  bool symmetric() const { return symmetric_; }
  const std::string& label() const { return label_; }

  /// Position of s^-1 in the set, if present.
  std::optional<std::size_t> inverse_position(std::size_t i) const { return inverse_pos_[i]; }

  /// True when some generator has order 2.
  bool has_involution() const;

 private:
  std::vector<GroupElement> elements_;
  std::vector<std::optional<std::size_t>> inverse_pos_;
  bool symmetric_ = false;
  std::string label_;
};

/// The elementary matrices I +- E_ij (i != j), deduplicated over the ring.
GeneratingSet elementary_generators(int n, Ring ring);

/// chi(S): 1 if S contains an element of order 2, otherwise 2.
int chi(const GeneratingSet& s);

}  // namespace sosgap
