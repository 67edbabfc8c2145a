#include "sosgap/group/generating_set.hpp"

#include <algorithm>

namespace sosgap {

GeneratingSet::GeneratingSet(std::vector<GroupElement> elements, std::string label)
    : elements_(std::move(elements)), label_(std::move(label)) {
  if (elements_.empty()) throw InputError("generating set is empty");
  for (const auto& g : elements_) {
    if (g.dim() != elements_.front().dim() || !(g.ring() == elements_.front().ring())) {
      throw InputError("generating set mixes dimensions or rings");
    }
    if (g.is_identity()) throw InputError("generating set contains the identity");
  }
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    for (std::size_t j = i + 1; j < elements_.size(); ++j) {
      if (elements_[i] == elements_[j]) throw InputError("generating set contains duplicates");
    }
  }
  inverse_pos_.resize(elements_.size());
  symmetric_ = true;
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    const GroupElement inv = inverse(elements_[i]);
    const auto it = std::find(elements_.begin(), elements_.end(), inv);
    if (it == elements_.end()) {
      symmetric_ = false;
    } else {
      inverse_pos_[i] = static_cast<std::size_t>(it - elements_.begin());
    }
  }
  if (label_.empty()) {
    label_ = "S(" + std::to_string(elements_.size()) + ") in SL(" + std::to_string(dim()) + ", " +
             ring().name() + ")";
  }
}

bool GeneratingSet::has_involution() const {
  for (const auto& g : elements_) {
    if (multiply(g, g).is_identity()) return true;
  }
  return false;
}

GeneratingSet elementary_generators(int n, Ring ring) {
  if (n < 2) throw InputError("elementary generators need n >= 2");
  std::vector<GroupElement> out;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      for (const int sign : {1, -1}) {
        GroupElement e = GroupElement::identity(ring, n);
        std::vector<std::int64_t> entries(e.entries().begin(), e.entries().end());
        entries[static_cast<std::size_t>(i * n + j)] = ring.reduce(sign);
        GroupElement g = GroupElement::trusted(ring, n, std::move(entries));
        if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(std::move(g));
      }
    }
  }
  return GeneratingSet(std::move(out), "E(" + std::to_string(n) + ") over " + ring.name());
}

int chi(const GeneratingSet& s) { return s.has_involution() ? 1 : 2; }

}  // namespace sosgap
