#include "sosgap/oracle/finite_group.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "sosgap/error.hpp"
#include "sosgap/io/group_io.hpp"

namespace sosgap {

using nlohmann::json;
using Entries = std::vector<std::int64_t>;

namespace {

Entries times(const Ring& ring, int n, const Entries& a, const Entries& b) {
  Entries out(static_cast<std::size_t>(n * n), 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::int64_t acc = 0;
      for (int k = 0; k < n; ++k) acc = ring.add(acc, ring.mul(a[i * n + k], b[k * n + j]));
      out[i * n + j] = acc;
    }
  }
  return out;
}

}  // namespace

FiniteGroupTable enumerate_group(const GeneratingSet& s, std::size_t cap) {
  const Ring ring = s.ring();
  const int n = s.dim();
  std::vector<Entries> gens;
  for (const auto& g : s.elements()) gens.emplace_back(g.entries().begin(), g.entries().end());

  Entries id(static_cast<std::size_t>(n * n), 0);
  for (int i = 0; i < n; ++i) id[i * n + i] = ring.reduce(1);
  std::map<Entries, std::uint32_t> seen{{id, 0}};
  std::vector<Entries> order{id};
  std::vector<Entries> layer{id};
  while (!layer.empty()) {
    std::vector<Entries> next;
    for (const auto& g : layer) {
      for (const auto& t : gens) {
        Entries h = times(ring, n, g, t);
        if (seen.count(h)) continue;
        seen.emplace(h, 0);
        next.push_back(std::move(h));
        if (seen.size() > cap) throw LimitError("group order exceeds the cap of " + std::to_string(cap));
      }
    }
    std::sort(next.begin(), next.end());
    order.insert(order.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  for (std::size_t i = 0; i < order.size(); ++i) seen[order[i]] = static_cast<std::uint32_t>(i);

  FiniteGroupTable t;
  t.ring = ring;
  t.n = n;
  t.order = order.size();
  for (const auto& g : order) t.elements.insert(t.elements.end(), g.begin(), g.end());
  t.product.resize(t.order * t.order);
  t.inverse.resize(t.order);
  for (std::size_t i = 0; i < t.order; ++i) {
    for (std::size_t j = 0; j < t.order; ++j) {
      const std::uint32_t k = seen.at(times(ring, n, order[i], order[j]));
      t.product[i * t.order + j] = k;
      if (k == 0) t.inverse[i] = static_cast<std::uint32_t>(j);
    }
  }
  for (const auto& g : gens) t.generator_indices.push_back(seen.at(g));
  return t;
}

void FiniteGroupTable::check_axioms(std::size_t samples) const {
  if (order == 0 || product.size() != order * order || inverse.size() != order) {
    throw InputError("group table: inconsistent sizes");
  }
  for (std::size_t i = 0; i < order; ++i) {
    if (mul(0, i) != i || mul(i, 0) != i) throw InputError("group table: position 0 is not the identity");
    if (inverse[i] >= order || mul(i, inverse[i]) != 0 || mul(inverse[i], i) != 0) {
      throw InputError("group table: inverse of " + std::to_string(i) + " is wrong");
    }
  }
  for (const std::uint32_t p : product) {
    if (p >= order) throw InputError("group table: entry out of range");
  }
  const auto assoc = [&](std::size_t a, std::size_t b, std::size_t c) {
    if (mul(mul(a, b), c) != mul(a, mul(b, c))) throw InputError("group table: not associative");
  };
  if (samples == 0) {
    for (std::size_t a = 0; a < order; ++a)
      for (std::size_t b = 0; b < order; ++b)
        for (std::size_t c = 0; c < order; ++c) assoc(a, b, c);
    return;
  }
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<std::size_t> pick(0, order - 1);
  for (std::size_t k = 0; k < samples; ++k) assoc(pick(rng), pick(rng), pick(rng));
}

std::vector<double> laplacian_spectrum(const FiniteGroupTable& t) {
  const auto size = static_cast<Eigen::Index>(t.order);
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(size, size);
  for (std::size_t g = 0; g < t.order; ++g) {
    for (const std::uint32_t s : t.generator_indices) {
      lap(static_cast<Eigen::Index>(g), static_cast<Eigen::Index>(g)) += 1.0;
      lap(static_cast<Eigen::Index>(g), static_cast<Eigen::Index>(t.mul(g, s))) -= 1.0;
    }
  }
  if (!lap.isApprox(lap.transpose(), 0.0)) throw InputError("Laplacian is not symmetric: S is not closed under inversion");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(lap, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw NumericalError("spectral gap: eigensolver failed");
  const Eigen::VectorXd& ev = eig.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double spectral_gap_exact(const FiniteGroupTable& t) {
  const std::vector<double> ev = laplacian_spectrum(t);
  const double tol = 1e-9 * 2.0 * static_cast<double>(t.generator_indices.size());
  const auto zeros = static_cast<std::size_t>(std::count_if(ev.begin(), ev.end(), [&](double x) { return std::fabs(x) <= tol; }));
  if (zeros != 1) throw InputError("spectral gap: eigenvalue 0 has multiplicity " + std::to_string(zeros) + "; S does not generate");
  if (ev.size() < 2) throw InputError("spectral gap: trivial group");
  return ev[1];
}

json group_table_to_json(const FiniteGroupTable& t) {
  const auto width = static_cast<std::size_t>(t.n * t.n);
  json elements = json::array();
  for (std::size_t i = 0; i < t.order; ++i) {
    elements.push_back(Entries(t.elements.begin() + static_cast<std::ptrdiff_t>(i * width),
                               t.elements.begin() + static_cast<std::ptrdiff_t>((i + 1) * width)));
  }
  return {{"format", "sosgap-group-table"}, {"ring", t.ring.name()},  {"n", t.n},
          {"order", t.order},               {"elements", elements},  {"rows", t.product},
          {"inverse", t.inverse},           {"generator_indices", t.generator_indices}};
}

FiniteGroupTable group_table_from_json(const json& j) {
  try {
    if (j.value("format", std::string()) != "sosgap-group-table") throw InputError("expected a 'sosgap-group-table' document");
    FiniteGroupTable t;
    t.ring = ring_from_string(j.at("ring").get<std::string>());
    t.n = j.at("n").get<int>();
    t.order = j.at("order").get<std::size_t>();
    for (const auto& e : j.at("elements")) {
      const auto row = e.get<Entries>();
      if (row.size() != static_cast<std::size_t>(t.n * t.n)) throw InputError("group table: wrong entry count");
      t.elements.insert(t.elements.end(), row.begin(), row.end());
    }
    t.product = j.at("rows").get<std::vector<std::uint32_t>>();
    t.inverse = j.at("inverse").get<std::vector<std::uint32_t>>();
    t.generator_indices = j.at("generator_indices").get<std::vector<std::uint32_t>>();
    for (const std::uint32_t g : t.generator_indices) {
      if (g >= t.order) throw InputError("group table: generator index out of range");
    }
    t.check_axioms();
    return t;
  } catch (const json::exception& e) {
    throw InputError(std::string("group table: ") + e.what());
  }
}

}  // namespace sosgap
