#include <random>

#include "adelic/adele.hpp"
#include "adelic/errors.hpp"
#include "adelic/parse.hpp"
#include "doctest.h"

using namespace adelic;

namespace {

const Field& F5 = Field::prime(5);

Adele A(const std::string& s) { return parse_adele(s, F5); }
RatFn R(const std::string& s) { return parse_ratfn(s, F5); }
Place at(int a) { return Place::finite(F5.from_int(a)); }
Place inf() { return Place::infinity(F5); }

// Random split rational function: constant times products of (u - a).
RatFn random_split(std::mt19937_64& rng, int max_deg) {
  RatFn f = RatFn::constant(F5.from_int(1 + static_cast<std::int64_t>(rng() % 4)));
  const RatFn u = RatFn::variable(F5);
  const int dn = static_cast<int>(rng() % (max_deg + 1)), dd = static_cast<int>(rng() % (max_deg + 1));
  for (int i = 0; i < dn; ++i) f = f * (u - RatFn::constant(F5.from_int(static_cast<std::int64_t>(rng() % 5))));
  for (int i = 0; i < dd; ++i) f = f / (u - RatFn::constant(F5.from_int(static_cast<std::int64_t>(rng() % 5))));
  return f;
}

// Oracle for content: sum of valuations over all six places of P^1(F_5),
// reading overrides directly.
std::int64_t content_by_enumeration(const Adele& a) {
  std::int64_t total = 0;
  for (int c = 0; c <= 5; ++c) {
    const Place x = c < 5 ? at(c) : inf();
    total += a.component(x).valuation();
  }
  return total;
}

}  // namespace

TEST_CASE("adele arithmetic") {
  CHECK(A("u") + A("1 - u") == A("1"));
  const Adele a = A("generic: 1; at @0: t");
  const Adele prod = a * A("u");
  CHECK(prod.generic() == R("u"));
  REQUIRE(prod.has_override(at(0)));
  CHECK(prod.component(at(0)) == parse_local("t^2", F5));
  CHECK((a + (-a)).is_zero());
  // overrides equal to the germ disappear
  CHECK(A("generic: u; at @1: 1 + t") == A("u"));
  CHECK(A("generic: u; at @inf: t^-1") == A("u"));
  CHECK(a.inverse() * a == A("1"));
}

TEST_CASE("ideles") {
  CHECK(is_idele(A("u")));
  CHECK_FALSE(is_idele(A("generic: 1; at @1: 0")));
  CHECK_FALSE(is_idele(A("0")));
  CHECK_THROWS_AS(A("generic: 1; at @1: 0").inverse(), NotAUnit);
}

TEST_CASE("content of ideles") {
  CHECK(content_idele(A("u")) == 0);
  CHECK(content_idele(A("generic: 1; at @0: t^3")) == 3);
  CHECK(content_idele(A("generic: u; at @0: 1")) == -1);
  CHECK(content_by_enumeration(A("generic: u; at @0: 1")) == -1);
}

TEST_CASE("U_D membership") {
  Divisor d2;
  d2.add(at(0), 2);
  CHECK(in_UD(A("u^2"), d2) == false);  // pole of order 2 at infinity
  CHECK(in_UD(A("generic: u^2; at @inf: 1"), d2));
  Divisor d1;
  d1.add(at(0), 1);
  CHECK_FALSE(in_UD(A("1"), d1));
  CHECK(in_UD(A("0"), d1));
}

TEST_CASE("Sigma is discrete") {
  CHECK(sigma_discreteness_probe(R("5")));
  CHECK_FALSE(sigma_discreteness_probe(R("u")));
  CHECK_FALSE(sigma_discreteness_probe(R("1/(u-1)")));
  std::mt19937_64 rng(41);
  for (int it = 0; it < 300; ++it) {
    const RatFn f = random_split(rng, 3);
    if (sigma_discreteness_probe(f)) CHECK(f.is_constant());
  }
}

TEST_CASE("product formula for Sigma") {
  std::mt19937_64 rng(1);
  for (int it = 0; it < 200; ++it) {
    const RatFn f = random_split(rng, 6);
    CHECK(content_idele(Adele(f)) == 0);
    CHECK(content_by_enumeration(Adele(f)) == 0);
  }
}

TEST_CASE("content is additive on ideles") {
  std::mt19937_64 rng(2);
  auto random_idele = [&]() {
    Adele::Overrides o;
    for (int c = 0; c <= 5; ++c) {
      if (rng() % 3) continue;
      const Place x = c < 5 ? at(c) : inf();
      RatFn j = RatFn::constant(F5.from_int(1 + static_cast<std::int64_t>(rng() % 4)));
      j = j * RatFn::variable(F5).pow(static_cast<std::int64_t>(rng() % 7) - 3);
      j = j + RatFn::variable(F5).pow(4) * RatFn::constant(F5.from_int(static_cast<std::int64_t>(rng() % 5)));
      o.emplace(x, LocalElem(j));
    }
    return Adele(random_split(rng, 4), std::move(o));
  };
  for (int it = 0; it < 100; ++it) {
    const Adele a = random_idele(), b = random_idele();
    if (!is_idele(a) || !is_idele(b)) continue;
    CHECK(content_idele(a * b) == content_idele(a) + content_idele(b));
    CHECK(content_idele(a) == content_by_enumeration(a));
  }
}

TEST_CASE("U_D filter laws") {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 200; ++it) {
    const RatFn f = random_split(rng, 3);
    Divisor d;
    for (int c = 0; c < 5; ++c)
      if (rng() % 2) d.add(at(c), static_cast<std::int64_t>(rng() % 3));
    Divisor smaller;
    for (const auto& [x, k] : d.support())
      if (k > 1) smaller.add(x, k - 1);
    const Adele a(f);
    if (in_UD(a, d)) CHECK(in_UD(a, smaller));
    if (d.degree() > 0 && !f.is_zero() && !f.is_constant()) CHECK_FALSE(in_UD(a, d));
  }
}
