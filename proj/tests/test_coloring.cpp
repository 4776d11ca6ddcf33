#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>

#include "qsets/coloring.hpp"
#include "qsets/error.hpp"
#include "qsets/qfun.hpp"
#include "qsets/random.hpp"

using namespace qsets;

namespace {

// 0/1 scalars for an ordinary coloring.
ColoringFamily classical_family(const Graph& g, int colors, const std::vector<int>& f) {
  ColoringFamily fam;
  fam.dim = 1;
  for (int t = 0; t < colors; ++t) fam.colors.push_back(std::to_string(t));
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    for (int t = 0; t < colors; ++t) {
      fam.projections[{g.vertices[v], fam.colors[t]}] =
          CMatrix::Constant(1, 1, f[v] == t ? 1.0 : 0.0);
    }
  }
  return fam;
}

bool proper(const Graph& g, const std::vector<int>& f) {
  for (const auto& [a, b] : g.edges) {
    if (f[std::stoi(a)] == f[std::stoi(b)]) return false;
  }
  return true;
}

// Conjugates every projection by one unitary.
ColoringFamily rotated(const ColoringFamily& fam, const CMatrix& u) {
  ColoringFamily out = fam;
  for (auto& [key, p] : out.projections) p = u * p * u.adjoint();
  return out;
}

}  // namespace

TEST_CASE("latin square families color complete graphs") {
  for (int d = 2; d <= 4; ++d) {
    const auto g = Graph::complete(d);
    const auto fam = latin_square_family(d);
    // Oracle: distinct vertices get distinct diagonal units for every color.
    for (int a = 0; a < d; ++a) {
      for (int b = a + 1; b < d; ++b) {
        for (int t = 0; t < d; ++t) CHECK((a + t) % d != (b + t) % d);
      }
    }
    const auto rep = verify(g, fam);
    CHECK(rep.pass);
    CHECK(rep.predicate_pass);
    CHECK(rep.violation == 0.0);
  }
}

TEST_CASE("five-cycle with classical colorings") {
  const auto c5 = Graph::cycle(5);
  const auto good = verify(c5, classical_family(c5, 3, {0, 1, 0, 1, 2}));
  CHECK(good.pass);
  CHECK(good.predicate_pass);
  // Vertices 0 and 1 share color 0: p p = p, so the violation is 1.
  const auto bad = verify(c5, classical_family(c5, 3, {0, 0, 1, 0, 1}));
  CHECK_FALSE(bad.pass);
  CHECK_FALSE(bad.predicate_pass);
  CHECK(bad.violation == doctest::Approx(1.0));
  CHECK(bad.predicate_violation == doctest::Approx(1.0));
}

TEST_CASE("dim-1 verify matches proper coloring on small graphs") {
  for (int n = 1; n <= 4; ++n) {
    const auto kn = Graph::complete(n);
    const int m = int(kn.edges.size());
    for (int mask = 0; mask < (1 << m); ++mask) {
      Graph g;
      g.vertices = kn.vertices;
      for (int e = 0; e < m; ++e) {
        if (mask >> e & 1) g.edges.push_back(kn.edges[e]);
      }
      std::vector<int> f(n, 0);
      int total = 1;
      for (int i = 0; i < n; ++i) total *= 2;
      for (int code = 0; code < total; ++code) {
        for (int i = 0, c = code; i < n; ++i, c /= 2) f[i] = c % 2;
        const auto rep = verify(g, classical_family(g, 2, f));
        CHECK(rep.pass == proper(g, f));
        CHECK(rep.predicate_pass == proper(g, f));
      }
    }
  }
}

TEST_CASE("malformed families are rejected") {
  const auto g = Graph::complete(2);
  auto fam = latin_square_family(2);
  fam.projections[{"0", "0"}] *= 2.0;
  CHECK_THROWS_AS(verify(g, fam), PreconditionError);
  fam = latin_square_family(2);
  fam.projections.erase({"1", "1"});
  CHECK_THROWS_AS(verify(g, fam), PreconditionError);
  Graph loop{{"a"}, {{"a", "a"}}};
  CHECK_THROWS_AS(loop.validate(), PreconditionError);
}

TEST_CASE("function roundtrip") {
  for (int d = 2; d <= 4; ++d) {
    const auto g = Graph::complete(d);
    const auto fam = latin_square_family(d);
    const auto f = to_function(g, fam);
    CHECK(check_axioms(f).is_function());
    const auto back = from_function(f);
    CHECK(back.dim == fam.dim);
    CHECK(back.colors == fam.colors);
    for (const auto& [key, p] : fam.projections) {
      CHECK((back.at(key.first, key.second) - p).norm() < 1e-10);
    }
  }
  // A dim-1 family is an ordinary function G -> T.
  const auto c5 = Graph::cycle(5);
  const std::vector<int> col{0, 1, 0, 1, 2};
  const auto f = to_function(c5, classical_family(c5, 3, col));
  const auto cls = classify_classical(f);
  REQUIRE(cls.has_value());
  for (int v = 0; v < 5; ++v) {
    CHECK(cls->at(pair_label(std::to_string(v), kIndexAtom)) == std::to_string(col[v]));
  }
  CHECK_THROWS_AS(from_function(identity(classical_embed({"a"}))), PreconditionError);
}

TEST_CASE("restriction to one index atom keeps a coloring") {
  // Two index atoms carrying a rotated K3 family in dims 3 and 3.
  Rng rng(21);
  const auto g = Graph::complete(3);
  const auto fam1 = rotated(latin_square_family(3), random_unitary(rng, 3));
  const auto fam2 = rotated(latin_square_family(3), random_unitary(rng, 3));
  const QuantumSet xset({{"H1", 3, false}, {"H2", 3, false}});
  const QuantumSet gset = classical_embed(g.vertices);
  const auto f1 = to_function(g, fam1), f2 = to_function(g, fam2);
  Relation f(cartesian_product(gset, xset), f1.target());
  for (const auto& v : g.vertices) {
    for (const auto& t : fam1.colors) {
      f.set_block(pair_label(v, "H1"), t, f1.block(pair_label(v, kIndexAtom), t));
      f.set_block(pair_label(v, "H2"), t, f2.block(pair_label(v, kIndexAtom), t));
    }
  }
  CHECK(check_axioms(f).is_function());
  const QuantumSet sub({{"H1", 3, false}});
  const auto restricted = compose(f, times(identity(gset), inclusion(sub, xset)));
  const auto fam = from_function(restricted);
  CHECK(verify(g, fam).pass);
  for (const auto& [key, p] : fam1.projections) {
    CHECK((fam.at(key.first, key.second) - p).norm() < 1e-10);
  }
}

TEST_CASE("projection and predicate routes agree") {
  Rng rng(23);
  int passes = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 2 + trial % 3;
    const auto g = Graph::complete(d);
    auto fam = rotated(latin_square_family(d), random_unitary(rng, d));
    if (trial % 2 == 1) {
      // Rotate one vertex's measurement a little.
      const CMatrix h = random_matrix(rng, d, d);
      const CMatrix herm = 0.5 * (h + h.adjoint());
      const Eigen::SelfAdjointEigenSolver<CMatrix> es(herm);
      const double eps = 1e-3;
      CMatrix phases = CMatrix::Zero(d, d);
      for (Index k = 0; k < d; ++k) phases(k, k) = std::exp(Complex(0, eps * es.eigenvalues()(k)));
      const CMatrix u = es.eigenvectors() * phases * es.eigenvectors().adjoint();
      for (const auto& t : fam.colors) {
        auto& p = fam.projections[{"0", t}];
        p = u * p * u.adjoint();
      }
    }
    const auto rep = verify(g, fam);
    CHECK(rep.pass == rep.predicate_pass);
    CHECK(std::abs(rep.violation - rep.predicate_violation) < 1e-9);
    passes += rep.pass;
  }
  CHECK(passes == 20);
}

TEST_CASE("search") {
  const auto k3 = Graph::complete(3);
  const auto found = search(k3, 3, 1, 1);
  REQUIRE(found.family.has_value());
  CHECK(verify(k3, *found.family).pass);

  // Oracle: no map {0,1,2} -> {0,1} is proper on K3.
  int proper_count = 0;
  for (int code = 0; code < 8; ++code) {
    proper_count += proper(k3, {code & 1, code >> 1 & 1, code >> 2 & 1});
  }
  CHECK(proper_count == 0);
  const auto none = search(k3, 2, 1, 1);
  CHECK_FALSE(none.family.has_value());
  CHECK(none.restarts_used == 200);
  CHECK(none.best_violation >= 1.0 - 1e-9);

  const auto k4 = Graph::complete(4);
  const auto q = search(k4, 4, 4, 7);
  REQUIRE(q.family.has_value());
  const auto rep = verify(k4, *q.family);
  CHECK(rep.pass);
  CHECK(rep.predicate_pass);

  const auto c5 = Graph::cycle(5);
  CHECK(search(c5, 3, 2, 3).family.has_value());
  CHECK_THROWS_AS(search(k3, 0, 1, 1), PreconditionError);
}
