#include <numeric>
#include <random>
#include <set>

#include "adelic/errors.hpp"
#include "adelic/local.hpp"
#include "doctest.h"

using namespace adelic;

namespace {

const Field& F5 = Field::prime(5);
const Field& F7 = Field::prime(7);

// Jet c0 + c1 t + ... as an exact local element.
LocalElem jet(const Field& k, std::vector<std::int64_t> c, std::int64_t shift = 0) {
  std::vector<FieldElem> v;
  for (auto x : c) v.push_back(k.from_int(x));
  return LocalElem(TruncSeries::from_coeffs(k, shift, v));
}

LocalPoly lpoly(const Field& k, std::vector<LocalElem> c) { return LocalPoly(LocalElem::zero(k), std::move(c)); }

LocalElem one(const Field& k) { return LocalElem::constant(k.one()); }

// Oracle: roots of P in k[[t]]/t^N by undetermined coefficients, extending a
// residue root one coefficient at a time through exhaustive search.
std::vector<FieldElem> coefficient_search(const LocalPoly& p, const FieldElem& r0, std::int64_t n) {
  const Field& k = r0.field();
  std::vector<FieldElem> c{r0};
  for (std::int64_t d = 1; d < n; ++d) {
    std::vector<FieldElem> found;
    for (std::uint64_t code = 0; code < k.order(); ++code) {
      auto trial = c;
      trial.push_back(k.element(code));
      const TruncSeries x = TruncSeries::from_coeffs(k, 0, trial, d + 1);
      TruncSeries acc = TruncSeries::zero(k);
      for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i].series(d + 1);
      if (acc.known_zero()) found.push_back(k.element(code));
    }
    REQUIRE(found.size() == 1);
    c.push_back(found[0]);
  }
  return c;
}

TruncSeries eval(const LocalPoly& p, const TruncSeries& x, std::int64_t prec) {
  TruncSeries acc = TruncSeries::zero(x.field());
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i].series(prec);
  return acc;
}

}  // namespace

TEST_CASE("residue separability") {
  const LocalElem t = LocalElem::parameter(F5);
  // T^2 - (1+t): b^2 - 4c = 4(1+t)
  const LocalPoly p1 = lpoly(F5, {-(one(F5) + t), LocalElem::zero(F5), one(F5)});
  CHECK(discriminant(p1) == LocalElem::constant(F5.from_int(4)) * (one(F5) + t));
  auto r1 = residue_separable(p1);
  CHECK(r1.separable());
  CHECK(r1.consistent());
  CHECK(*r1.disc_valuation == 0);

  const LocalPoly p2 = lpoly(F5, {-t, LocalElem::zero(F5), one(F5)});
  auto r2 = residue_separable(p2);
  CHECK_FALSE(r2.separable());
  CHECK(r2.consistent());
  CHECK(*r2.disc_valuation == 1);
  CHECK(discriminant(p2) == LocalElem::constant(F5.from_int(4)) * t);

  const LocalPoly p3 = lpoly(F5, {-t, one(F5)});
  auto r3 = residue_separable(p3);
  CHECK(r3.separable());
  CHECK(*r3.disc_valuation == 0);
  CHECK(discriminant(p3) == one(F5));
}

TEST_CASE("Hensel splitting") {
  const LocalElem t = LocalElem::parameter(F5);
  const LocalPoly p = lpoly(F5, {-(one(F5) + t), LocalElem::zero(F5), one(F5)});
  auto roots = hensel_split(p, 2);
  REQUIRE(roots.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    auto oracle = coefficient_search(p, F5.from_int(i == 0 ? 1 : 4), 2);
    CHECK(roots[i].coeff(0) == oracle[0]);
    CHECK(roots[i].coeff(1) == oracle[1]);
  }
  CHECK(roots[0].coeff(1) == F5.from_int(3));
  CHECK(roots[1].coeff(1) == F5.from_int(2));

  auto exact = hensel_split(lpoly(F5, {-one(F5), LocalElem::zero(F5), one(F5)}), 4);
  REQUIRE(exact.size() == 2);
  CHECK(exact[0].is_exact());
  CHECK(exact[0] == TruncSeries::monomial(F5.from_int(1), 0));
  CHECK(exact[1] == TruncSeries::monomial(F5.from_int(4), 0));

  CHECK_THROWS_AS(hensel_split(lpoly(F5, {-t, LocalElem::zero(F5), one(F5)}), 5), WildOrInseparableResidue);
  CHECK_THROWS_AS(hensel_split(lpoly(F5, {-(LocalElem::constant(F5.from_int(2)) + t), LocalElem::zero(F5), one(F5)}), 5),
                  NeedsLargerField);
}

TEST_CASE("psi maps") {
  auto roots = hensel_split(lpoly(F5, {-one(F5), LocalElem::zero(F5), one(F5)}), 4);
  const LocalPoly q = lpoly(F5, {LocalElem::zero(F5), one(F5)});
  auto vals = psi_eval(q, roots);
  CHECK(vals[0] == TruncSeries::monomial(F5.from_int(1), 0));
  CHECK(vals[1] == TruncSeries::monomial(F5.from_int(4), 0));
  auto ones = psi_eval(lpoly(F5, {one(F5)}), roots);
  for (auto& v : ones) CHECK(v == TruncSeries::monomial(F5.one(), 0));

  // Oracle: solve a + b = 1, a + 4b = 0 over F_5 by exhaustion.
  int solutions = 0;
  FieldElem sa, sb;
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b)
      if ((a + b) % 5 == 1 && (a + 4 * b) % 5 == 0) {
        ++solutions;
        sa = F5.from_int(a);
        sb = F5.from_int(b);
      }
  REQUIRE(solutions == 1);
  auto interp = psi_interp({TruncSeries::monomial(F5.one(), 0), TruncSeries::zero(F5)}, roots);
  CHECK(interp[0] == TruncSeries::monomial(sa, 0));
  CHECK(interp[1] == TruncSeries::monomial(sb, 0));
}

TEST_CASE("psi_interp inverts psi_eval") {
  std::mt19937_64 rng(11);
  const LocalElem t = LocalElem::parameter(F5);
  for (int it = 0; it < 30; ++it) {
    // (T - a)(T - b) with distinct residues, perturbed
    const std::int64_t a = static_cast<std::int64_t>(rng() % 5), b = (a + 1 + static_cast<std::int64_t>(rng() % 4)) % 5;
    LocalPoly p = lpoly(F5, {jet(F5, {-a}) + t, one(F5)}) * lpoly(F5, {jet(F5, {-b}), one(F5)});
    p = p + lpoly(F5, {jet(F5, {0, static_cast<std::int64_t>(rng() % 5)}, 1)});
    const std::int64_t n = 10;
    auto roots = hensel_split(p, n);
    LocalPoly q = lpoly(F5, {jet(F5, {static_cast<std::int64_t>(rng() % 5), 1}), jet(F5, {2, static_cast<std::int64_t>(rng() % 5)})});
    auto vals = psi_eval(q, roots);
    auto back = psi_interp(vals, roots);
    for (std::size_t i = 0; i < 2; ++i) CHECK(back[i].agrees_with(q[i].series(n)));
    for (std::size_t i = 0; i < back.size(); ++i) CHECK(back[i].valuation_bound() >= 0);
  }
}

TEST_CASE("Newton polygons") {
  const LocalElem t = LocalElem::parameter(F5);
  auto np1 = newton_polygon(lpoly(F5, {-t, LocalElem::zero(F5), one(F5)}));
  REQUIRE(np1.segments.size() == 1);
  CHECK(np1.segments[0].h == -1);
  CHECK(np1.segments[0].e == 2);
  CHECK(np1.segments[0].length == 2);

  auto np2 = newton_polygon(lpoly(F5, {-(one(F5) + t), LocalElem::zero(F5), one(F5)}));
  REQUIRE(np2.segments.size() == 1);
  CHECK(np2.segments[0].h == 0);
  CHECK(np2.segments[0].length == 2);

  // germ of u at infinity is 1/t
  auto np3 = newton_polygon(lpoly(F5, {-t.inverse(), LocalElem::zero(F5), one(F5)}));
  REQUIRE(np3.segments.size() == 1);
  CHECK(np3.segments[0].h == 1);
  CHECK(np3.segments[0].e == 2);

  // (T - t)(T - 1): slopes -1 then 0
  auto np4 = newton_polygon(lpoly(F5, {-t, one(F5)}) * lpoly(F5, {-one(F5), one(F5)}));
  REQUIRE(np4.segments.size() == 2);
  CHECK(np4.segments[0].h == -1);
  CHECK(np4.segments[1].h == 0);
}

TEST_CASE("local factors") {
  const LocalElem t = LocalElem::parameter(F5);
  auto f1 = local_factor(lpoly(F5, {-t, LocalElem::zero(F5), one(F5)}), 8);
  REQUIRE(f1.size() == 1);
  CHECK(f1[0].e == 2);
  CHECK(f1[0].root == TruncSeries::monomial(F5.one(), 1));

  auto f2 = local_factor(lpoly(F5, {-(one(F5) + t), LocalElem::zero(F5), one(F5)}), 8);
  REQUIRE(f2.size() == 2);
  CHECK(f2[0].e == 1);
  CHECK(f2[1].e == 1);
  auto h = hensel_split(lpoly(F5, {-(one(F5) + t), LocalElem::zero(F5), one(F5)}), 8);
  CHECK(f2[0].root.agrees_with(h[0]));
  CHECK(f2[1].root.agrees_with(h[1]));

  const Field& F2 = Field::prime(2);
  CHECK_THROWS_AS(local_factor(lpoly(F2, {-LocalElem::parameter(F2), LocalElem::zero(F2), one(F2)}), 8),
                  UnsupportedWildRamification);

  // T^2 = 2t over F_5: 2 is not a square
  CHECK_THROWS_AS(local_factor(lpoly(F5, {-LocalElem::constant(F5.from_int(2)) * t, LocalElem::zero(F5), one(F5)}), 8),
                  NeedsLargerField);
}

TEST_CASE("repeated residual roots are resolved") {
  const LocalElem t = LocalElem::parameter(F7);
  // (T^2 - t)(T^2 - t - t^2): both slope -1/2 with residual root 1
  const LocalPoly a = lpoly(F7, {-t, LocalElem::zero(F7), one(F7)});
  const LocalPoly b = lpoly(F7, {-(t + t * t), LocalElem::zero(F7), one(F7)});
  auto fs = local_factor(a * b, 10);
  REQUIRE(fs.size() == 2);
  for (auto& f : fs) {
    CHECK(f.e == 2);
    CHECK(eval_at_root(a * b, f).known_zero());
  }
  // (T - 1)^2 - t^3: roots 1 +- t^{3/2}
  const LocalPoly c = lpoly(F7, {-one(F7), one(F7)}).pow(2) - lpoly(F7, {t.pow(3)});
  auto fc = local_factor(c, 10);
  REQUIRE(fc.size() == 1);
  CHECK(fc[0].e == 2);
  CHECK(eval_at_root(c, fc[0]).known_zero());
}

TEST_CASE("factor roots and valuations") {
  std::mt19937_64 rng(23);
  const LocalElem t = LocalElem::parameter(F7);
  for (int it = 0; it < 40; ++it) {
    // Product of T^e - c t^h (1 + t r) with distinct (h/e, c), gcd(h, e) = 1, c an e-th power.
    struct Spec {
      std::int64_t e, h, c;
    };
    std::vector<Spec> specs;
    const int m = 1 + static_cast<int>(rng() % 3);
    while (static_cast<int>(specs.size()) < m) {
      Spec s{1 + static_cast<std::int64_t>(rng() % 3), static_cast<std::int64_t>(rng() % 5) - 1, 0};
      if (std::gcd(s.e, s.h) != 1) continue;
      const std::int64_t base = 1 + static_cast<std::int64_t>(rng() % 6);
      s.c = 1;
      for (int i = 0; i < s.e; ++i) s.c = s.c * base % 7;
      bool dup = false;
      for (auto& o : specs) dup |= o.e * s.h == o.h * s.e && o.c == s.c;
      if (!dup) specs.push_back(s);
    }
    LocalPoly p = lpoly(F7, {one(F7)});
    std::int64_t n = 0;
    for (auto& s : specs) {
      std::vector<LocalElem> c(static_cast<std::size_t>(s.e) + 1, LocalElem::zero(F7));
      c[0] = -jet(F7, {s.c, static_cast<std::int64_t>(rng() % 7)}) * t.pow(s.h);
      c.back() = one(F7);
      p = p * lpoly(F7, c);
      n += s.e;
    }
    auto fs = local_factor(p, 12);
    std::int64_t total = 0;
    std::multiset<std::int64_t> es, expected;
    for (auto& s : specs) expected.insert(s.e);
    for (auto& f : fs) {
      total += f.e;
      es.insert(f.e);
      const TruncSeries val = eval_at_root(p, f);
      CHECK(val.known_zero());
      CHECK(factor_valuation(lpoly(F7, {t}), f) == f.e);
    }
    CHECK(total == n);
    CHECK(es == expected);
  }
}

TEST_CASE("the three separability conditions agree") {
  std::mt19937_64 rng(5);
  int separable = 0, inseparable = 0;
  for (int it = 0; it < 100; ++it) {
    const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 4);
    std::vector<LocalElem> c;
    for (std::int64_t i = 0; i < n; ++i) {
      std::vector<std::int64_t> j(1 + rng() % 4);
      for (auto& x : j) x = static_cast<std::int64_t>(rng() % 5);
      // bias towards repeated residue roots
      if (rng() % 3 == 0) j[0] = 0;
      c.push_back(jet(F5, j));
    }
    c.push_back(one(F5));
    const LocalPoly p = lpoly(F5, c);
    auto r = residue_separable(p);
    CHECK(r.consistent());
    (r.separable() ? separable : inseparable)++;
  }
  CHECK(separable > 10);
  CHECK(inseparable > 10);
}

TEST_CASE("Hensel roots recombine") {
  std::mt19937_64 rng(9);
  int tested = 0;
  for (int it = 0; it < 200 && tested < 60; ++it) {
    const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 4);
    std::vector<LocalElem> c;
    for (std::int64_t i = 0; i < n; ++i) {
      std::vector<std::int64_t> j(1 + rng() % 4);
      for (auto& x : j) x = static_cast<std::int64_t>(rng() % 5);
      c.push_back(jet(F5, j));
    }
    c.push_back(one(F5));
    const LocalPoly p = lpoly(F5, c);
    const std::int64_t N = 1 + static_cast<std::int64_t>(rng() % 12);
    std::vector<TruncSeries> roots;
    try {
      roots = hensel_split(p, N);
    } catch (const WildOrInseparableResidue&) {
      continue;
    } catch (const NeedsLargerField&) {
      continue;
    }
    ++tested;
    REQUIRE(static_cast<std::int64_t>(roots.size()) == n);
    SeriesPoly prod = SeriesPoly::constant(TruncSeries::monomial(F5.one(), 0));
    for (auto& r : roots) {
      CHECK(eval(p, r, N).truncated(N).known_zero());
      prod = prod * SeriesPoly(TruncSeries::zero(F5), {-r, TruncSeries::monomial(F5.one(), 0)});
      auto oracle = coefficient_search(p, r.coeff(0), N);
      for (std::int64_t d = 0; d < N; ++d) CHECK(r.coeff(d) == oracle[static_cast<std::size_t>(d)]);
    }
    for (std::size_t i = 0; i <= static_cast<std::size_t>(n); ++i) CHECK(prod[i].agrees_with(p[i].series(N)));
    for (std::size_t i = 1; i < roots.size(); ++i) CHECK(roots[i - 1].coeff(0) < roots[i].coeff(0));
  }
  CHECK(tested >= 30);
}
