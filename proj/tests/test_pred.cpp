#include <doctest.h>

#include "qsets/error.hpp"
#include "qsets/pred.hpp"
#include "qsets/qfun.hpp"

using namespace qsets;

namespace {

OperatorSubspace line(const CMatrix& m) {
  return span(m.cols(), m.rows(), std::vector<CMatrix>{m});
}

const QuantumSet& h2() {
  static const QuantumSet q({{"q", 2, false}});
  return q;
}

Relation measurement() {
  Relation m(h2(), classical_embed({"0", "1"}));
  CMatrix e0(1, 2), e1(1, 2);
  e0 << 1, 0;
  e1 << 0, 1;
  m.set_block("q", "0", line(e0));
  m.set_block("q", "1", line(e1));
  return m;
}

Predicate on_qubit(Complex a, Complex b) {
  Predicate p(h2());
  CMatrix v(2, 1);
  v << a, b;
  p.set_space("q", v);
  return p;
}

}  // namespace

TEST_CASE("predicate lattice") {
  const auto e0 = on_qubit(1, 0), e1 = on_qubit(0, 1);
  const double s = 1.0 / std::sqrt(2.0);
  const auto plus = on_qubit(s, s);
  CHECK(disjoint(e0, e1));
  CHECK_FALSE(disjoint(e0, plus));
  // Oracle: |<e0|+>| = 1/sqrt 2.
  CHECK(std::abs(overlap(e0, plus) - s) < 1e-12);
  CHECK(p_eq(p_neg(e0), e1));

  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    const auto x = random_qset(rng, 3, 3, "x");
    const auto a = random_predicate(rng, x), b = random_predicate(rng, x);
    CHECK(p_eq(p_neg(p_neg(a)), a));
    CHECK(p_leq(p_meet(a, b), a));
    CHECK(p_leq(a, p_join(a, b)));
    CHECK(disjoint(a, p_neg(a)));
    CHECK(p_eq(p_join(a, p_neg(a)), Predicate::top(x)));
  }
  CHECK_THROWS_AS(p_join(e0, Predicate(classical_embed({"a"}))), PreconditionError);
}

TEST_CASE("direct image") {
  Rng rng(5);
  const auto x = random_qset(rng, 3, 3, "x");
  const auto p = random_predicate(rng, x);
  CHECK(p_eq(direct_image(identity(x), p), p));

  // Classical relation image oracle.
  const auto a = classical_embed({"1", "2", "3"}), b = classical_embed({"u", "v"});
  const std::set<BlockKey> pairs{{"1", "v"}, {"3", "v"}, {"2", "u"}};
  Predicate s(a);
  s.set_space("1", CMatrix::Identity(1, 1));
  const auto img = direct_image(classical_relation(a, b, pairs), s);
  CHECK(img.space("v").cols() == 1);
  CHECK(img.space("u").cols() == 0);

  const auto full = direct_image(measurement(), Predicate::top(h2()));
  CHECK(p_eq(full, Predicate::top(measurement().target())));
}

TEST_CASE("inverse image") {
  Predicate zero(measurement().target());
  zero.set_space("0", CMatrix::Identity(1, 1));
  CHECK(p_eq(inverse_image(measurement(), zero), on_qubit(1, 0)));

  Rng rng(7);
  for (int t = 0; t < 15; ++t) {
    const auto z = random_qset(rng, 3, 3, "z");
    const auto g = random_function_into(rng, z, 3, 3);
    const auto f = random_function_into(rng, g.source(), 3, 4);
    CHECK(p_eq(inverse_image(f, Predicate::top(f.target())), Predicate::top(f.source())));
    const auto p = random_predicate(rng, z);
    CHECK(p_eq(inverse_image(compose(g, f), p), inverse_image(f, inverse_image(g, p))));
  }
}

TEST_CASE("inverse image along functions is an ortholattice morphism") {
  Rng rng(9);
  for (int t = 0; t < 15; ++t) {
    const auto y = random_qset(rng, 3, 3, "y");
    const auto f = random_function_into(rng, y, 3, 4);
    const auto a = random_predicate(rng, y), b = random_predicate(rng, y);
    auto pull = [&](const Predicate& p) { return inverse_image(f, p); };
    CHECK(p_eq(pull(p_meet(a, b)), p_meet(pull(a), pull(b))));
    CHECK(p_eq(pull(p_join(a, b)), p_join(pull(a), pull(b))));
    CHECK(p_eq(pull(p_neg(a)), p_neg(pull(a))));
    CHECK(p_eq(pull(Predicate(y)), Predicate(f.source())));
    if (disjoint(a, p_neg(a))) CHECK(disjoint(pull(a), pull(p_neg(a))));
  }
}

TEST_CASE("corange") {
  CHECK(p_eq(corange(measurement()), Predicate::top(h2())));
  const auto fact = corange_factor(measurement());
  CHECK(fact.restricted == h2());
  CHECK(rel_eq(fact.k, identity(h2())));

  Relation partial(h2(), classical_embed({"0", "1"}));
  partial.set_block("q", "0", measurement().block("q", "0"));
  CHECK(p_eq(corange(partial), on_qubit(1, 0)));
  const auto pf = corange_factor(partial);
  REQUIRE(pf.restricted.size() == 1);
  CHECK(pf.restricted.at("q").dim == 1);
  CHECK(rel_eq(compose(pf.factor, pf.k), partial));
  CHECK(check_axioms(pf.k).is_surjective);

  Rng rng(11);
  for (int t = 0; t < 10; ++t) {
    const auto y = random_qset(rng, 3, 3, "y");
    const auto g = random_function_into(rng, y, 3, 4, {true});
    const auto h =
        random_function_from(rng, y, QuantumSet({{"e", 1, false}, {"w", 2, false}}));
    CHECK(p_eq(corange(compose(h, g)), corange(g)));
    const auto cf = corange_factor(g);
    CHECK(rel_distance(compose(cf.factor, cf.k), g) < 1e-8);
  }
}

TEST_CASE("the four-functor converters") {
  const auto p = on_qubit(1, 0);
  const auto proj = pred_to_proj(p);
  CMatrix e00 = CMatrix::Zero(2, 2);
  e00(0, 0) = 1.0;
  CHECK((proj.block("q") - e00).norm() < 1e-12);
  const auto f = proj_to_funB(proj);
  // Oracle: {v : v e00 = 0} is spanned by <e1|.
  CMatrix e1(1, 2);
  e1 << 0, 1;
  CHECK(eq(f.block("q", "0"), line(e1)));
  CHECK(check_axioms(f).is_function());

  const auto top = Predicate::top(h2());
  CHECK(distance(pred_to_proj(top), BlockOperator::identity(h2())) < 1e-12);
  const auto tf = pred_to_funB(top);
  CHECK(tf.block("q", "0").is_zero());
  CHECK(tf.block("q", "1").dim() == 2);

  Rng rng(13);
  for (int t = 0; t < 20; ++t) {
    const auto x = random_qset(rng, 3, 3, "x");
    const auto pr = random_predicate(rng, x);
    const auto r = pred_to_rel1(pr);
    const auto pp = pred_to_proj(pr);
    const auto fb = pred_to_funB(pr);
    CHECK(p_eq(rel1_to_pred(r), pr));
    CHECK(p_eq(proj_to_pred(pp), pr));
    CHECK(p_eq(funB_to_pred(fb), pr));
    CHECK(distance(rel1_to_proj(r), pp) < 1e-8);
    CHECK(rel_eq(rel1_to_funB(r), fb));
    CHECK(rel_eq(proj_to_rel1(pp), r));
    CHECK(rel_eq(proj_to_funB(pp), fb));
    CHECK(rel_eq(funB_to_rel1(fb), r));
    CHECK(distance(funB_to_proj(fb), pp) < 1e-8);
  }

  BlockOperator notproj(h2());
  notproj.set_block("q", 2.0 * e00);
  CHECK_THROWS_AS(proj_to_pred(notproj), PreconditionError);
  Relation partial(h2(), boolean_set());
  partial.set_block("q", "0", measurement().block("q", "0"));
  CHECK_THROWS_AS(funB_to_pred(partial), PreconditionError);
}
