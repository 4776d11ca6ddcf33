#include <doctest.h>

#include "qsets/error.hpp"
#include "qsets/qset.hpp"
#include "qsets/random.hpp"

using namespace qsets;

namespace {

QuantumSet h2() { return QuantumSet({{"q", 2, false}}); }

}  // namespace

TEST_CASE("classical embedding") {
  const auto b = classical_embed({"0", "1"});
  REQUIRE(b.size() == 2);
  for (const auto& a : b.atoms()) CHECK(a.dim == 1);
  CHECK(classical_embed({}).empty());
  CHECK(classical_embed({"c", "a", "b"}).atoms().front().label == "a");
  CHECK_THROWS_AS(classical_embed({"a", "a"}), PreconditionError);
  CHECK_THROWS_AS(QuantumSet({{"a", 0, false}}), PreconditionError);
}

TEST_CASE("cartesian product") {
  const auto b = classical_embed({"0", "1"});
  const auto bb = cartesian_product(b, b);
  CHECK(bb.size() == 4);
  CHECK(bb.contains("(0|1)"));

  const auto q = cartesian_product(h2(), h2());
  REQUIRE(q.size() == 1);
  CHECK(q.atoms()[0].dim == 2 * 2);

  const QuantumSet x({{"a", 3, false}, {"b", 1, false}});
  const auto x1 = cartesian_product(x, unit_set());
  CHECK(x1.at("(a|*)").dim == 3);
  CHECK(x1.at("(b|*)").dim == 1);
  CHECK(isomorphic(x1, x).has_value());
}

TEST_CASE("disjoint union") {
  const auto two = disjoint_union(unit_set(), unit_set());
  CHECK(two.size() == 2);
  CHECK(two.contains("(*|0)"));
  CHECK(two.contains("(*|1)"));

  const QuantumSet x({{"a", 2, false}});
  CHECK(isomorphic(disjoint_union(QuantumSet(), x), x).has_value());

  const auto mixed = disjoint_union(h2(), classical_embed({"a"}));
  CHECK(mixed.at("(q|0)").dim == 2);
  CHECK(mixed.at("(a|1)").dim == 1);
}

TEST_CASE("dual set") {
  const auto d = dual_set(h2());
  CHECK(d.atoms()[0].dual);
  CHECK(d.atoms()[0].dim == 2);
  CHECK(dual_set(d) == h2());
  CHECK(isomorphic(dual_set(classical_embed({"x", "y"})),
                   classical_embed({"x", "y"})).has_value());
}

TEST_CASE("isomorphism by dimension multiset") {
  const QuantumSet a({{"a", 1, false}, {"b", 2, false}});
  const QuantumSet b({{"c", 2, false}, {"d", 1, false}});
  const auto iso = isomorphic(a, b);
  REQUIRE(iso.has_value());
  CHECK(iso->at("a") == "d");
  CHECK(iso->at("b") == "c");
  CHECK_FALSE(isomorphic(QuantumSet({{"q", 2, false}}),
                         QuantumSet({{"a", 1, false}, {"b", 1, false}})));
  const auto empty = isomorphic(QuantumSet(), QuantumSet());
  REQUIRE(empty.has_value());
  CHECK(empty->empty());
}

TEST_CASE("product and union laws on random sets") {
  Rng rng(4);
  for (int t = 0; t < 30; ++t) {
    const auto x = random_qset(rng, 3, 3, "x");
    const auto y = random_qset(rng, 3, 3, "y");
    const auto z = random_qset(rng, 3, 3, "z");
    CHECK(isomorphic(cartesian_product(cartesian_product(x, y), z),
                     cartesian_product(x, cartesian_product(y, z))).has_value());
    CHECK(isomorphic(cartesian_product(x, unit_set()), x).has_value());
    const auto u = disjoint_union(x, y);
    CHECK(u.size() == x.size() + y.size());
    CHECK(u.total_square_dim() == x.total_square_dim() + y.total_square_dim());
    CHECK(cartesian_product(x, y).total_square_dim() ==
          x.total_square_dim() * y.total_square_dim());
  }
}

TEST_CASE("classical embedding commutes with products") {
  const auto s = classical_embed({"1", "2"});
  const auto t = classical_embed({"a", "b", "c"});
  std::vector<std::string> pairs;
  for (const auto& a : s.atoms())
    for (const auto& b : t.atoms()) pairs.push_back(pair_label(a.label, b.label));
  CHECK(classical_embed(pairs) == cartesian_product(s, t));
}

TEST_CASE("union of subsets of a parent") {
  const QuantumSet parent({{"a", 1, false}, {"b", 2, false}, {"c", 3, false}});
  const auto u = union_within(parent, subset(parent, {"a"}), subset(parent, {"a", "c"}));
  CHECK(u == subset(parent, {"a", "c"}));
  CHECK_THROWS_AS(union_within(parent, QuantumSet({{"a", 2, false}}), QuantumSet()),
                  PreconditionError);
}
