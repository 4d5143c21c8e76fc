#include <random>

#include "algebroid/hncurve.hpp"
#include "doctest.h"

using namespace algebroid;

namespace {

Parametrization branch(const char* x, const char* y, const Field& f = Field(), int prec = kExact) {
  return Parametrization::parse(x, y, f, prec);
}

std::vector<int> shapes(const HNExpansion& h) {
  std::vector<int> out;
  for (const auto& r : h.rows) out.push_back(r.h);
  return out;
}

HNExpansion random_hn(std::mt19937_64& rng, const Field& f) {
  std::uniform_int_distribution<int> rows(0, 2), hs(1, 3), fdeg(2, 4);
  HNExpansion h;
  h.field = f;
  const int r = rows(rng);
  for (int i = 0; i < r; ++i) {
    HNRow row;
    row.h = hs(rng);
    for (int j = 1; j <= row.h; ++j) row.coeffs.push_back(i > 0 && j == 1 ? f.zero() : f.random(rng));
    h.rows.push_back(row);
  }
  h.final_series = Series(f, {"t"});
  const int lo = r == 0 ? 1 : 2;
  h.final_series.add_term({lo}, f.random(rng, true));
  for (int d = lo + 1; d <= fdeg(rng) + 1; ++d) h.final_series.add_term({d}, f.random(rng));
  return h;
}

}  // namespace

TEST_CASE("hn_expand on the cusp") {
  HNExpansion h = hn_expand(branch("t^2", "t^3"));
  REQUIRE(h.rows.size() == 1);
  CHECK(h.rows[0].h == 1);
  CHECK(h.rows[0].coeffs[0].is_zero());
  CHECK(h.final_series == Series::parse("t^2", Field()));
  CHECK(h.to_lines() == std::vector<std::string>{"y = x*z1", "x = z1^2"});
}

TEST_CASE("hn_expand on a smooth branch") {
  HNExpansion h = hn_expand(branch("t", "t^2"));
  CHECK(h.rows.empty());
  CHECK(h.final_series == Series::parse("t^2", Field()));
  CHECK(h.to_lines() == std::vector<std::string>{"y = x^2"});
}

TEST_CASE("hn_expand with a leading coefficient in the first row") {
  HNExpansion h = hn_expand(branch("t^2", "t^6+t^7"));
  REQUIRE(h.rows.size() == 1);
  CHECK(h.rows[0].h == 3);
  CHECK(h.rows[0].coeffs[2].is_one());
  CHECK(h.final_series == Series::parse("t^2", Field()));
}

TEST_CASE("hn_expand swaps when ord x > ord y") {
  HNExpansion h = hn_expand(branch("t^3", "t^2"));
  CHECK(h.swapped);
  CHECK(h.to_lines().front() == "x = y*z1");
}

TEST_CASE("hn_expand errors") {
  auto code = [](const Parametrization& p) {
    try {
      hn_expand(p);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  CHECK(code(branch("t^2", "t^4")) == ErrorCode::NonPrimitive);
  CHECK(code(branch("t^2", "t^4", Field(), 12)) == ErrorCode::PrecisionExhausted);
}

TEST_CASE("hn_to_param back substitution") {
  Parametrization p = hn_to_param(hn_expand(branch("t^2", "t^3")), 10);
  CHECK(p.x.agrees_with(Series::parse("t^2", Field(), {"t"}, 10)));
  CHECK(p.y.agrees_with(Series::parse("t^3", Field(), {"t"}, 10)));
  Parametrization s = hn_to_param(hn_expand(branch("t", "t^2")), 10);
  CHECK(s.y.agrees_with(Series::parse("t^2", Field(), {"t"}, 10)));
}

TEST_CASE("divisor orders strictly decrease") {
  HNExpansion h = hn_expand(branch("t^4", "t^6+t^7"));
  for (std::size_t i = 1; i < h.divisor_orders.size(); ++i) CHECK(h.divisor_orders[i] < h.divisor_orders[i - 1]);
  CHECK(h.divisor_orders.back() == 1);
}

TEST_CASE("hn_expand inverts hn_to_param on random data over F_5") {
  std::mt19937_64 rng(31);
  Field f5 = Field::prime(5);
  for (int trial = 0; trial < 50; ++trial) {
    const HNExpansion h = random_hn(rng, f5);
    const HNExpansion back = hn_expand(hn_to_param(h, 60));
    CHECK(shapes(back) == shapes(h));
    REQUIRE(back.rows.size() == h.rows.size());
    for (std::size_t i = 0; i < h.rows.size(); ++i) CHECK(back.rows[i].coeffs == h.rows[i].coeffs);
    CHECK(back.final_series.agrees_with(h.final_series.truncated(back.final_series.precision())));
  }
}

TEST_CASE("complex_model keeps the shape and checks the value map") {
  Field f4 = Field::parse("char=2; ext=a:a^2+a+1");
  HNExpansion h = hn_expand(branch("t^2", "a*t^2+t^3", f4));
  HNExpansion m = complex_model(h);
  CHECK(m.field.characteristic() == 0);
  CHECK(shapes(m) == shapes(h));
  CHECK(m.rows[0].coeffs[0] == m.field.one());
  CHECK_THROWS_AS(complex_model(h, [](const Elem&) { return mpq_class(0); }), Error);
  HNExpansion by_code = complex_model(h, [](const Elem& e) { return mpq_class(static_cast<long>(e.code())); });
  CHECK(by_code.rows[0].coeffs[0] == by_code.field.from_int(2));
}

TEST_CASE("is_primitive") {
  CHECK(is_primitive(branch("t^2", "t^3")).primitive);
  CHECK(!is_primitive(branch("t^2", "t^4")).primitive);
  CHECK(!is_primitive(branch("t^2", "t^4")).precision_limited);
  CHECK(is_primitive(branch("t^4", "t^6+t^7")).primitive);
  CHECK(is_primitive(branch("t^2", "t^4", Field(), 9)).precision_limited);
}
