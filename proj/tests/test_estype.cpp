#include <random>

#include "algebroid/estype.hpp"
#include "doctest.h"

using namespace algebroid;

namespace {

Parametrization branch(const char* x, const char* y, const Field& f = Field(), int prec = kExact) {
  return Parametrization::parse(x, y, f, prec);
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidArgument;
}

// Random primitive branch of multiplicity 1..3; a term t^(k*m+1) in y
// keeps the exponent gcd at 1.
Parametrization random_branch(std::mt19937_64& rng, const Field& f) {
  std::uniform_int_distribution<int> mult(1, 3), extra(0, 3);
  const int m = mult(rng);
  const std::vector<std::string> t = {"t"};
  Series x = Series::monomial(f, t, {m}, f.random(rng, true));
  for (int d = m + 1; d <= m + extra(rng); ++d) x.add_term({d}, f.random(rng));
  Series y(f, t);
  const int lo = m + extra(rng);
  for (int d = lo; d <= lo + 4; ++d) y.add_term({d}, f.random(rng));
  if (m > 1) y.add_term({m * ((lo + 4) / m + 1) + 1}, f.random(rng, true));
  if (rng() % 2) return {x, y};
  return {y, x};
}

}  // namespace

TEST_CASE("blowup_step examples") {
  BranchState s = blowup_step(BranchState(branch("t^2", "t^3")));
  CHECK(s.param.y == Series::parse("t", Field()));
  CHECK(s.history.back().multiplicity == 2);
  CHECK(s.history.back().center.is_zero());

  BranchState l = blowup_step(BranchState(branch("t", "t^2")));
  CHECK(l.param.y == Series::parse("t", Field()));

  BranchState c = blowup_step(BranchState(branch("t^2", "t^2+t^3")));
  CHECK(c.history.back().center.is_one());
  CHECK(c.param.y == Series::parse("t", Field()));
}

TEST_CASE("multiplicity sequences") {
  CHECK(mult_sequence(branch("t^2", "t^3")) == std::vector<int>{2, 1, 1});
  CHECK(mult_sequence(branch("t^3", "t^5")) == std::vector<int>{3, 2, 1, 1});
  CHECK(mult_sequence(branch("t", "t^4")) == std::vector<int>{1});
  CHECK(mult_sequence(branch("t^4", "t^6+t^7")) == std::vector<int>{4, 2, 2, 1, 1});
  CHECK(mult_sequence(branch("t^3", "t^2")) == std::vector<int>{2, 1, 1});
  CHECK(code_of([] { mult_sequence(branch("t^2", "t^4")); }) == ErrorCode::NonPrimitive);
}

TEST_CASE("char_exponents inverts the Euclidean algorithm") {
  CHECK(char_exponents({2, 1, 1}) == std::vector<int>{2, 3});
  CHECK(char_exponents({3, 2, 1, 1}) == std::vector<int>{3, 5});
  CHECK(char_exponents({1}) == std::vector<int>{1});
  CHECK(char_exponents({4, 2, 2, 1, 1}) == std::vector<int>{4, 6, 7});
  CHECK(char_exponents({2, 2, 1, 1}) == std::vector<int>{2, 5});
  CHECK(char_exponents({3, 3, 1, 1, 1}) == std::vector<int>{3, 7});
  for (const std::vector<int>& bad : std::vector<std::vector<int>>{{}, {2, 1}, {2}, {1, 1}, {3, 2, 1}, {2, 3, 1}})
    CHECK(code_of([&] { char_exponents(bad); }) == ErrorCode::MalformedSequence);
}

TEST_CASE("char_exponents agrees with the multiplicity sequences of monomial curves") {
  // For (t^a, t^b) with gcd 1 the exponents are (a, b) when a < b and b is
  // not a multiple of a.
  for (int a = 2; a <= 7; ++a)
    for (int b = a + 1; b <= 15; ++b) {
      if (std::gcd(a, b) != 1) continue;
      const std::string xs = "t^" + std::to_string(a), ys = "t^" + std::to_string(b);
      CHECK(char_exponents(mult_sequence(branch(xs.c_str(), ys.c_str()))) == std::vector<int>{a, b});
    }
}

TEST_CASE("puiseux characteristic exponents") {
  CHECK(puiseux_char_exponents(branch("t^2", "t^3")) == std::vector<int>{2, 3});
  CHECK(puiseux_char_exponents(branch("t^4", "t^6+t^7")) == std::vector<int>{4, 6, 7});
  CHECK(puiseux_char_exponents(branch("t^2+t^3", "t^5")) == std::vector<int>{2, 5});
  CHECK(puiseux_char_exponents(branch("2*t^2", "t^3")) == std::vector<int>{2, 3});
  CHECK(code_of([] { puiseux_char_exponents(branch("t^2", "t^3", Field::prime(2))); }) ==
        ErrorCode::BadCharacteristic);
}

TEST_CASE("implicitize") {
  auto vanishes = [](const Parametrization& p, int n) {
    const Series f = implicitize(p, n);
    CHECK(f.ord().value == p.multiplicity());
    const Series r = f.compose({p.x, p.y});
    CHECK(r.ord().infinite);
    return f;
  };
  CHECK(vanishes(branch("t", "t^2"), 10).agrees_with(Series::parse("y-x^2", Field(), {"x", "y"}, 10)));
  const Series cusp = vanishes(branch("t^2", "t^3"), 10);
  CHECK(cusp.agrees_with(Series::parse("y^2-x^3", Field(), {"x", "y"}, cusp.precision())));
  const Series e8 = vanishes(branch("t^3", "t^5"), 10);
  CHECK(e8.agrees_with(Series::parse("y^3-x^5", Field(), {"x", "y"}, e8.precision())));
  const Series sw = vanishes(branch("t^3", "t^2"), 10);
  CHECK(sw.agrees_with(Series::parse("x^2-y^3", Field(), {"x", "y"}, sw.precision())));
}

TEST_CASE("implicitize round trip on random branches") {
  std::mt19937_64 rng(7);
  for (const Field& f : {Field::prime(3), Field::prime(5), Field()}) {
    for (int trial = 0; trial < 15; ++trial) {
      const Parametrization p = random_branch(rng, f);
      const Series g = implicitize(p, 12);
      CHECK(g.ord().value == p.multiplicity());
      CHECK(g.compose({p.x, p.y}).ord().infinite);
    }
  }
}

TEST_CASE("intersection multiplicities") {
  CHECK(intersection_mult(branch("t", "0"), branch("t", "t^2")).value == 2);
  CHECK(intersection_mult(branch("t", "0"), branch("0", "t")).value == 1);
  CHECK(intersection_mult(branch("t^2", "t^3"), branch("t", "0")).value == 3);
  // t -> -t carries (t^2, t^3) onto (t^2, -t^3): one branch, not two.
  CHECK(intersection_mult(branch("t^2", "t^3"), branch("t^2", "-t^3")).infinite);
  CHECK(intersection_mult(branch("t^2", "t^3"), branch("t^2", "2*t^3")).value == 6);
  CHECK(intersection_mult(branch("t^2", "t^3", Field::prime(3)), branch("t^2", "2*t^3", Field::prime(3))).infinite);
  const IntersectionResult same = intersection_mult(branch("t^2", "t^3"), branch("t^2", "t^3"));
  CHECK(same.infinite);

  CHECK(intersection_mult_noether(branch("t", "0"), branch("0", "t")) == 1);
  CHECK(intersection_mult_noether(branch("t^2", "t^3"), branch("t", "0")) == 3);
  CHECK(intersection_mult_noether(branch("t^2", "t^3"), branch("t^2", "2*t^3")) == 6);
  CHECK(code_of([] { intersection_mult_noether(branch("t^2", "t^3"), branch("t^2", "t^3"), 50); }) ==
        ErrorCode::NonTerminating);
}

TEST_CASE("implicit and Noether intersection numbers agree on random pairs") {
  std::mt19937_64 rng(11);
  int compared = 0;
  for (const Field& f : {Field::prime(3), Field::prime(5), Field()}) {
    for (int trial = 0; trial < 50; ++trial) {
      const Parametrization p = random_branch(rng, f), q = random_branch(rng, f);
      const IntersectionResult r = intersection_mult(p, q);
      if (r.infinite) continue;
      CHECK(r.value == intersection_mult_noether(p, q));
      CHECK(r.value == intersection_mult(q, p).value);
      ++compared;
    }
  }
  CHECK(compared >= 120);
}

TEST_CASE("char_exponents of the resolution match the Puiseux exponents") {
  std::mt19937_64 rng(5);
  for (const Field& f : {Field::prime(5), Field::prime(7), Field()}) {
    for (int trial = 0; trial < 20; ++trial) {
      const Parametrization p = random_branch(rng, f);
      if (!good_characteristic({p}, f)) continue;
      CHECK(char_exponents(mult_sequence(p)) == puiseux_char_exponents(p));
    }
  }
}

TEST_CASE("mult_sequence is invariant under reparametrization") {
  std::mt19937_64 rng(19);
  const Field f = Field::prime(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Parametrization p = random_branch(rng, f);
    Series phi = Series::monomial(f, {"t"}, {1}, f.random(rng, true));
    for (int d = 2; d <= 4; ++d) phi.add_term({d}, f.random(rng));
    const Parametrization q{p.x.compose({phi}), p.y.compose({phi})};
    CHECK(mult_sequence(q) == mult_sequence(p));
  }
}

TEST_CASE("complex model keeps the multiplicity sequence") {
  std::mt19937_64 rng(23);
  const Field f4 = Field::parse("char=2; ext=a:a^2+a+1");
  for (const Field& f : {Field::prime(5), f4, Field::prime(3)}) {
    for (int trial = 0; trial < 15; ++trial) {
      const Parametrization p = random_branch(rng, f);
      const HNExpansion h = hn_expand(p);
      const Parametrization model = hn_to_param(complex_model(h), 40);
      const std::vector<int> seq = mult_sequence(p);
      CHECK(mult_sequence(model) == seq);
      CHECK(puiseux_char_exponents(model) == char_exponents(seq));
    }
  }
}

TEST_CASE("es_type and es_equal") {
  const EsType cusp1 = es_type({branch("t^2", "t^3")});
  const EsType cusp2 = es_type({branch("s^2", "s^3+s^4")});
  CHECK(es_equal(cusp1, cusp2));
  const EsType node = es_type({branch("t", "0"), branch("0", "t")});
  const EsType tacnode = es_type({branch("t", "0"), branch("t", "t^2")});
  CHECK(!es_equal(cusp1, node));
  CHECK(!es_equal(node, tacnode));
  CHECK(node.intersections[0][1] == 1);
  CHECK(tacnode.intersections[0][1] == 2);
  const EsType three = es_type({branch("t^2", "t^3"), branch("t", "0"), branch("0", "t")});
  const EsType shuffled = es_type({branch("0", "t"), branch("t^2", "t^3"), branch("t", "0")});
  CHECK(es_equal(three, shuffled));
  CHECK(es_equal(shuffled, three));
  CHECK(code_of([] { es_type({branch("t", "0"), branch("t", "0")}); }) == ErrorCode::DuplicateBranch);
}

TEST_CASE("good characteristic") {
  const auto b2 = branch("t^2", "t^3"), b3 = branch("t^3", "t^4");
  CHECK(good_characteristic({b2, b3}, Field::prime(5)));
  CHECK(!good_characteristic({branch("t^2", "t^3", Field::prime(2))}, Field::prime(2)));
  CHECK(good_characteristic({b2, b3}, Field()));
}
