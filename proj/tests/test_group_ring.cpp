#include "doctest.h"

#include <memory>
#include <random>

#include "properties.hpp"
#include "sosgap/algebra/group_ring.hpp"
#include "sosgap/error.hpp"
#include "sosgap/io/group_io.hpp"
#include "sosgap/sdp/instance.hpp"

using namespace sosgap;

namespace {

std::shared_ptr<const Ball> ball(int n, Ring r, int d) {
  return std::make_shared<const Ball>(Ball::generate(elementary_generators(n, r), d));
}

}  // namespace

TEST_CASE("laplacian of E(2) over Z") {
  const auto b1 = ball(2, Ring::integers(), 1);
  const auto delta = Laplacian(b1).on<Rational>(b1);
  CHECK(delta[0] == Rational(4));
  for (std::size_t i = 1; i < delta.size(); ++i) CHECK(delta[i] == Rational(-1));
  CHECK(augmentation(delta) == Rational(0));
  CHECK(l1_norm(delta) == Rational(8));
  CHECK(star(delta) == delta);
  CHECK(l1_norm(GroupRingElement<Rational>(b1)) == Rational(0));
}

TEST_CASE("laplacian of a cyclic group of order 3") {
  // t = [[0,-1],[1,-1]] has order 3; S = {t, t^2}.
  const Ring z = Ring::integers();
  const GroupElement t(z, 2, {0, -1, 1, -1});
  const GeneratingSet s({t, multiply(t, t)});
  const auto b1 = std::make_shared<const Ball>(Ball::generate(s, 1));
  REQUIRE(b1->size() == 3);
  const auto delta = Laplacian(b1).on<Rational>(b1);
  CHECK(delta[0] == Rational(2));
  CHECK(delta[b1->find(t)] == Rational(-1));
  CHECK(delta[b1->find(multiply(t, t))] == Rational(-1));
}

TEST_CASE("laplacian needs a symmetric generating set") {
  const Ring z = Ring::integers();
  const GeneratingSet s({GroupElement(z, 2, {1, 1, 0, 1})});
  CHECK_FALSE(s.symmetric());
  CHECK_THROWS_AS(Laplacian(std::make_shared<const Ball>(Ball::generate(s, 1))), InputError);
}

TEST_CASE("delta squared over E(2)") {
  const auto inst = build_instance(elementary_generators(2, Ring::integers()), 1);
  // (4 - sum g)^2 at e: 16 + |S| (each g g^-1); no generator has order 2.
  CHECK(inst.delta_squared[0] == Rational(20));
  CHECK(augmentation(inst.delta_squared) == Rational(0));
  const auto direct = convolve(inst.delta, inst.delta, inst.product);
  CHECK(direct == inst.delta_squared);
  for (std::size_t i = 0; i < inst.product->size(); ++i) {
    if (!inst.delta_squared[i].is_zero()) CHECK(inst.product->word_length(i) <= 2);
  }
}

TEST_CASE("unit, augmentation and l1 examples") {
  const auto b = ball(2, Ring::modular(3), 2);
  GroupRingElement<Rational> unit(b);
  unit[0] = Rational(1);
  GroupRingElement<Rational> a(b);
  a[1] = Rational(2, 3);
  a[3] = Rational(-5);
  CHECK(convolve(unit, a, b) == a);
  GroupRingElement<Rational> e_plus_g(b);
  e_plus_g[0] = Rational(1);
  e_plus_g[2] = Rational(1);
  CHECK(augmentation(e_plus_g) == Rational(2));
  CHECK(l1_norm(a) >= abs(augmentation(a)));
  CHECK(l1_norm(star(a)) == l1_norm(a));
}

TEST_CASE("support mismatches are rejected") {
  const auto b1 = ball(2, Ring::modular(3), 1);
  const auto b2 = ball(2, Ring::modular(3), 2);
  GroupRingElement<Rational> x(b1), y(b2);
  CHECK_THROWS_AS(x + y, InputError);
  GroupRingElement<Rational> big(b2);
  big[b2->size() - 1] = Rational(1);
  CHECK_THROWS_AS(embed(big, b1), InputError);
  CHECK_THROWS_AS(convolve(big, big, b1), InputError);
  const auto b1z = ball(2, Ring::integers(), 1);
  CHECK_THROWS_AS(convolve(x, GroupRingElement<Rational>(b1z), b2), InputError);
  const GeneratingSet one_sided({GroupElement(Ring::integers(), 2, {1, 1, 0, 1})});
  const auto nb = std::make_shared<const Ball>(Ball::generate(one_sided, 2));
  CHECK_THROWS_AS(star(GroupRingElement<Rational>(nb)), InputError);
}

TEST_CASE("group ring axioms against the Cayley table of SL(2,3)") {
  const auto r = testing::group_ring_axioms(1000, 2024);
  INFO(r.first_failure);
  CHECK(r.cases == 1000);
  CHECK(r.ok());
}

TEST_CASE("interval convolution encloses the rational product") {
  const auto r = testing::interval_convolution_fuzz(1000, 77);
  INFO(r.first_failure);
  CHECK(r.ok());
}

TEST_CASE("l1 norm dominates augmentation on random elements") {
  const auto b = ball(3, Ring::integers(), 1);
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> num(-30, 30);
  for (int i = 0; i < 200; ++i) {
    GroupRingElement<Rational> a(b);
    for (std::size_t k = 0; k < a.size(); ++k) a[k] = Rational(num(rng), 1 + static_cast<int>(rng() % 9));
    CHECK(l1_norm(a) >= abs(augmentation(a)));
  }
}

TEST_CASE("element JSON") {
  const auto b = ball(2, Ring::modular(5), 2);
  GroupRingElement<Rational> a(b);
  a[0] = Rational(1, 3);
  a[4] = Rational(-7, 2);
  const auto j = element_to_json(a);
  CHECK(j["terms"].size() == 2);
  CHECK(j["terms"][0][1] == "1/3");
  CHECK(element_from_json(j, b) == a);
  const auto other = ball(2, Ring::modular(5), 3);
  CHECK_THROWS_AS(element_from_json(j, other), InputError);
  auto bad = j;
  bad["terms"][0][0] = 10'000;
  CHECK_THROWS_AS(element_from_json(bad, b), InputError);
}
