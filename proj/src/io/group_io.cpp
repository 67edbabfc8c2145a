#include "sosgap/io/group_io.hpp"

#include <fstream>
#include <sstream>

#include "sosgap/error.hpp"

namespace sosgap {

using nlohmann::json;

namespace {

template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
}

void require_format(const json& j, const char* tag) {
  if (!j.is_object() || j.value("format", std::string()) != tag) {
    throw InputError(std::string("expected a '") + tag + "' document");
  }
}

}  // namespace

Ring ring_from_string(const std::string& text) {
  if (text == "Z") return Ring::integers();
  if (text.rfind("Z/", 0) == 0 && text.size() > 2) {
    std::size_t used = 0;
    long long p = 0;
    try {
      p = std::stoll(text.substr(2), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == text.size() - 2) return Ring::modular(p);
  }
  throw InputError("unknown ring '" + text + "' (expected Z or Z/p)");
}

json generators_to_json(const GeneratingSet& s) {
  json elements = json::array();
  for (const auto& g : s.elements()) elements.push_back(std::vector<std::int64_t>(g.entries().begin(), g.entries().end()));
  return {{"ring", s.ring().name()}, {"n", s.dim()}, {"label", s.label()}, {"elements", elements}};
}

GeneratingSet generators_from_json(const json& j) {
  return guarded("generators", [&] {
    const Ring ring = ring_from_string(j.at("ring").get<std::string>());
    const int n = j.at("n").get<int>();
    if (n < 1 || n > 64) throw InputError("generators: bad dimension");
    std::vector<GroupElement> elements;
    for (const auto& e : j.at("elements")) {
      auto entries = e.get<std::vector<std::int64_t>>();
      if (entries.size() != static_cast<std::size_t>(n * n)) throw InputError("generators: wrong entry count");
      elements.emplace_back(ring, n, std::move(entries));
    }
    return GeneratingSet(std::move(elements), j.value("label", std::string()));
  });
}

json ball_to_json(const Ball& ball) {
  json j;
  j["format"] = "sosgap-ball";
  j["generators"] = generators_to_json(ball.generators());
  j["radius"] = ball.radius();
  j["size"] = ball.size();
  const auto width = static_cast<std::size_t>(ball.dim() * ball.dim());
  json elements = json::array();
  for (std::size_t i = 0; i < ball.size(); ++i) {
    const auto e = ball.entries(i);
    elements.push_back(std::vector<std::int64_t>(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(width)));
  }
  j["elements"] = std::move(elements);
  j["word_lengths"] = ball.word_lengths();
  j["fingerprint"] = ball.fingerprint();
  return j;
}

Ball ball_from_json(const json& j) {
  require_format(j, "sosgap-ball");
  return guarded("ball", [&] {
    GeneratingSet gens = generators_from_json(j.at("generators"));
    const auto width = static_cast<std::size_t>(gens.dim() * gens.dim());
    const json& elements = j.at("elements");
    std::vector<std::int64_t> entries;
    entries.reserve(elements.size() * width);
    for (const auto& e : elements) {
      const auto row = e.get<std::vector<std::int64_t>>();
      if (row.size() != width) throw InputError("ball: wrong entry count in an element");
      entries.insert(entries.end(), row.begin(), row.end());
    }
    Ball ball = Ball::from_elements(std::move(gens), j.at("radius").get<int>(), std::move(entries),
                                    j.at("word_lengths").get<std::vector<int>>());
    if (j.contains("fingerprint") && j.at("fingerprint").get<std::string>() != ball.fingerprint()) {
      throw InputError("ball: fingerprint does not match the element list");
    }
    return ball;
  });
}

json table_to_json(const MultiplicationTable& table, const Ball& basis, const Ball& product) {
  json j;
  j["format"] = "sosgap-table";
  j["basis_fingerprint"] = basis.fingerprint();
  j["product_fingerprint"] = product.fingerprint();
  j["basis_size"] = table.basis_size();
  j["product_size"] = table.product_size();
  j["basis_radius"] = table.basis_radius();
  j["product_radius"] = table.product_radius();
  j["rows"] = std::vector<std::uint32_t>(table.data().begin(), table.data().end());
  return j;
}

MultiplicationTable table_from_json(const json& j, const Ball& basis, const Ball& product) {
  require_format(j, "sosgap-table");
  return guarded("table", [&] {
    if (j.at("basis_fingerprint").get<std::string>() != basis.fingerprint() ||
        j.at("product_fingerprint").get<std::string>() != product.fingerprint()) {
      throw InputError("table: ball fingerprints do not match");
    }
    MultiplicationTable table(j.at("basis_size").get<std::size_t>(), j.at("product_size").get<std::size_t>(),
                              j.at("basis_radius").get<int>(), j.at("product_radius").get<int>(),
                              j.at("rows").get<std::vector<std::uint32_t>>());
    if (table.basis_size() != basis.size() || table.product_size() != product.size()) {
      throw InputError("table: dimensions do not match the balls");
    }
    const int n = basis.dim();
    std::vector<std::int64_t> prod(static_cast<std::size_t>(n * n));
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const auto inv = matrix::adjugate(basis.ring(), n, basis.entries(i));
      for (std::size_t k = 0; k < basis.size(); ++k) {
        matrix::multiply_into(basis.ring(), n, inv, basis.entries(k), prod);
        if (product.find(prod) != table(i, k)) {
          throw InputError("table: entry (" + std::to_string(i) + ", " + std::to_string(k) +
                           ") disagrees with the matrix product");
        }
      }
    }
    return table;
  });
}

json instance_to_json(const SosInstance& inst) {
  return {{"format", "sosgap-instance"},
          {"basis", ball_to_json(*inst.basis)},
          {"product", ball_to_json(*inst.product)},
          {"table", table_to_json(inst.table, *inst.basis, *inst.product)}};
}

SosInstance instance_from_json(const json& j) {
  require_format(j, "sosgap-instance");
  return guarded("instance", [&] {
    auto basis = std::make_shared<const Ball>(ball_from_json(j.at("basis")));
    auto product = std::make_shared<const Ball>(ball_from_json(j.at("product")));
    MultiplicationTable table = table_from_json(j.at("table"), *basis, *product);
    return make_instance(std::move(basis), std::move(product), std::move(table));
  });
}

json element_to_json(const GroupRingElement<Rational>& a) {
  json terms = json::array();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_zero()) terms.push_back({i, a[i].to_string()});
  }
  return {{"format", "sosgap-element"}, {"ball", a.support().fingerprint()}, {"terms", terms}};
}

GroupRingElement<Rational> element_from_json(const json& j, std::shared_ptr<const Ball> support) {
  require_format(j, "sosgap-element");
  return guarded("element", [&] {
    if (j.at("ball").get<std::string>() != support->fingerprint()) {
      throw InputError("element: ball fingerprint does not match");
    }
    GroupRingElement<Rational> a(support);
    for (const auto& t : j.at("terms")) {
      const auto index = t.at(0).get<std::size_t>();
      if (index >= a.size()) throw InputError("element: index outside the ball");
      a[index] = Rational::parse(t.at(1).get<std::string>());
    }
    return a;
  });
}

json parse_json(std::string_view text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(what + ": " + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << contents;
  if (!out) throw InputError("failed writing '" + path + "'");
}

}  // namespace sosgap
