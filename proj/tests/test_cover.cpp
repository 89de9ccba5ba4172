#include <random>

#include "adelic/cover.hpp"
#include "adelic/errors.hpp"
#include "adelic/parse.hpp"
#include "doctest.h"
#include "generators.hpp"

using namespace adelic;

namespace {

const Field& F5 = Field::prime(5);
const Field& F7 = Field::prime(7);

Place at(const Field& k, int a) { return Place::finite(k.from_int(a)); }

CoverSpec cover_of(const std::string& text, const Field& k) {
  return CoverSpec::make(parse_sigma_poly(text, k, "U"));
}

struct Kummer {
  CoverSpec cover = cover_of("U^2 - u", F5);
  AdelicPoly p = parse_adelic_poly("T^2 - u", F5);
  Embedding canonical = build_pOmega(cover);
  Embedding twisted = make_routed_embedding(cover, p, parse_element("T", p), {{at(F5, 1), {2, 2}}});
  OmegaElem f(const std::string& s) const { return parse_omega(s, cover); }
};

std::vector<int> labels(const std::vector<PlaceY>& ys) {
  std::vector<int> out;
  for (const auto& y : ys) out.push_back(y.label());
  return out;
}

// sqrt(1 + t) by the binomial series.
TruncSeries sqrt_one_plus_t(const Field& k, int terms) {
  std::vector<FieldElem> c;
  mpq_class b = 1;
  for (int i = 0; i < terms; ++i) {
    c.push_back(k.from_rational(b));
    b = b * (mpq_class(1, 2) - i) / (i + 1);
  }
  return TruncSeries::from_coeffs(k, 0, c, terms);
}

bool agree(const TruncSeries& a, const TruncSeries& b) {
  const std::int64_t n = std::min(a.precision(), b.precision());
  return a.truncated(n) == b.truncated(n);
}

// g(u) * prod (a + b w): norms vanish only where u is a square.
OmegaElem random_kummer_function(std::mt19937_64& rng, const Kummer& K) {
  const std::vector<FieldElem> good{F5.from_int(0), F5.from_int(1), F5.from_int(4)};
  OmegaElem f = omega_constant(gen::split_ratfn(rng, F5, 2, good), K.cover);
  const int n = static_cast<int>(rng() % 3);
  for (int i = 0; i < n; ++i) {
    FieldElem a = gen::rand_elem(rng, F5), b = gen::rand_elem(rng, F5);
    if (a.is_zero() && b.is_zero()) b = F5.one();
    OmegaElem lin;
    lin.c = {RatFn::constant(a), RatFn::constant(b)};
    f = omega_mul(f, lin, K.cover);
  }
  return f;
}

}  // namespace

TEST_CASE("covers are certified irreducible") {
  CHECK_NOTHROW(cover_of("U^2 - u", F5));
  CHECK_NOTHROW(cover_of("U^3 - u (u - 1)", F7));
  CHECK_NOTHROW(cover_of("U - u", F5));
  CHECK_THROWS_AS(cover_of("U^2 - u^2", F5), PreconditionViolation);
  CHECK_THROWS_AS(cover_of("(U - u)^2", F5), PreconditionViolation);
  CHECK_THROWS_AS(cover_of("2 U^2 - u", F5), PreconditionViolation);
}

TEST_CASE("fibers") {
  const Kummer K;
  auto f0 = fibers(K.cover, at(F5, 0));
  REQUIRE(f0.size() == 1);
  CHECK(f0[0].e() == 2);
  auto f1 = fibers(K.cover, at(F5, 1));
  REQUIRE(f1.size() == 2);
  CHECK(f1[0].e() == 1);
  CHECK(f1[0].factor.root.coeff(0) == F5.from_int(1));
  CHECK(f1[1].factor.root.coeff(0) == F5.from_int(4));
  auto fi = fibers(K.cover, Place::infinity(F5));
  REQUIRE(fi.size() == 1);
  CHECK(fi[0].e() == 2);
  auto g0 = fibers(cover_of("U^3 - u (u - 1)", F7), at(F7, 0));
  REQUIRE(g0.size() == 1);
  CHECK(g0[0].e() == 3);
}

TEST_CASE("omega arithmetic") {
  const Kummer K;
  CHECK(K.f("w^2") == K.f("u"));
  CHECK(K.f("1 / w") == K.f("w / u"));
  CHECK(omega_mul(K.f("w + 1"), omega_inverse(K.f("w + 1"), K.cover), K.cover) == K.f("1"));
  CHECK(K.f("U") == K.f("w"));
  CHECK_THROWS_AS(K.f("1 / (w^2 - u)"), ParseError);
}

TEST_CASE("expansions at points of Y") {
  const Kummer K;
  const PlaceY y0 = fibers(K.cover, at(F5, 0))[0];
  CHECK(expand_at(K.f("w"), y0) == TruncSeries::monomial(F5.one(), 1));
  CHECK(expand_at(K.f("u"), y0) == TruncSeries::monomial(F5.one(), 2));
  const PlaceY y2 = fibers(K.cover, at(F5, 1), 12)[1];
  const TruncSeries s = expand_at(K.f("(w + 1) / (u - 1)"), y2);
  CHECK(s.valuation() == 0);
  // w = -sqrt(1 + t) on this branch
  const TruncSeries oracle = (TruncSeries::monomial(F5.one(), 0) - sqrt_one_plus_t(F5, 12)).shifted(-1);
  CHECK(agree(s, oracle));
}

TEST_CASE("canonical and twisted routing") {
  const Kummer K;
  CHECK(K.canonical.p.to_string() == K.p.to_string());
  CHECK(labels(compute_sj(K.canonical, at(F5, 1))) == std::vector<int>{1, 2});
  CHECK(labels(compute_sj(K.twisted, at(F5, 1))) == std::vector<int>{2, 2});
  CHECK(labels(compute_sj(K.canonical, at(F5, 0))) == std::vector<int>{1});
  const CoverSpec lin = cover_of("U - u", F5);
  const Embedding e1 = build_pOmega(lin);
  CHECK(e1.p.degree() == 1);
  CHECK(labels(compute_sj(e1, at(F5, 3))) == std::vector<int>{1});
  const CoverSpec cube = cover_of("U^3 - u (u - 1)", F7);
  const Embedding e3 = build_pOmega(cube);
  CHECK(labels(compute_sj(e3, at(F7, 0))) == std::vector<int>{1});
}

TEST_CASE("injectivity") {
  const Kummer K;
  CHECK(check_injectivity(K.canonical).injective);
  const InjectivityReport r = check_injectivity(K.twisted);
  CHECK_FALSE(r.injective);
  REQUIRE(r.missed.size() == 1);
  CHECK(r.missed[0].x == at(F5, 1));
  CHECK(r.missed[0].label() == 1);
  const Embedding sigma = make_embedding(cover_of("U - u", F5), K.p, parse_element("u", K.p));
  CHECK(check_injectivity(sigma).injective);
  CHECK(labels(compute_sj(sigma, at(F5, 1))) == std::vector<int>{1, 1});
  CHECK_THROWS_AS(make_embedding(K.cover, K.p, parse_element("T + 1", K.p)), PreconditionViolation);
}

TEST_CASE("content of functions") {
  const Kummer K;
  const ContentReport w = content_of_function(K.canonical, K.f("w"));
  CHECK(w.total == 0);
  REQUIRE(w.breakdown.size() == 2);
  CHECK(w.breakdown[0].x == at(F5, 0));
  CHECK(w.breakdown[0].val == 1);
  CHECK(w.breakdown[1].x == Place::infinity(F5));
  CHECK(w.breakdown[1].val == -1);
  CHECK(content_of_function(K.canonical, K.f("(w + 1) / (u - 1)")).total == 0);
  CHECK(content_of_function(K.twisted, K.f("(w + 1) / (u - 1)")).total == 1);

  const std::vector<OmegaElem> tests{K.f("w"), K.f("u - 1"), K.f("w + 1"), K.f("(w + 1) / (u - 1)")};
  CHECK(verify_product_formula(K.canonical, tests).pass);
  const ProductFormulaReport bad = verify_product_formula(K.twisted, tests);
  CHECK_FALSE(bad.pass);
  CHECK(bad.results[3].second.total == 1);

  const Embedding sigma = build_pOmega(cover_of("U - u", F5));
  std::mt19937_64 rng(5);
  for (int i = 0; i < 30; ++i) {
    const RatFn g = gen::split_ratfn(rng, F5, 4, gen::all_points(F5));
    CHECK(content_of_function(sigma, omega_constant(g, sigma.cover)).total == 0);
  }
}

TEST_CASE("witness functions") {
  const Kummer K;
  const PlaceY missed = check_injectivity(K.twisted).missed.at(0);
  const auto w = find_witness(K.twisted, missed, 3);
  REQUIRE(w);
  CHECK(*w == K.f("(w + 1) / (u - 1)"));
  CHECK_THROWS_AS(find_witness(K.canonical, fibers(K.cover, at(F5, 1))[0], 3), PreconditionViolation);
  const Embedding e1 = build_pOmega(cover_of("U - u", F5));
  CHECK_THROWS_AS(find_witness(e1, fibers(e1.cover, at(F5, 1))[0], 3), PreconditionViolation);

  const PlaceY y0 = fibers(K.cover, at(F5, 0))[0];
  const auto g = function_with_single_pole(K.cover, y0, 3);
  REQUIRE(g);
  CHECK(*g == K.f("1 / w"));
  const auto div = omega_divisor(*g, K.cover, {at(F5, 0), Place::infinity(F5)});
  REQUIRE(div.size() == 2);
  CHECK(div[0].second == -1);
  CHECK(div[1].second == 1);
}

TEST_CASE("verdicts") {
  const Kummer K;
  const Verdict c = classify_embedding(K.canonical, default_tests(K.canonical));
  CHECK(c.discrete);
  CHECK(c.d == 2);
  CHECK(c.n == 2);
  const Verdict t = classify_embedding(K.twisted, default_tests(K.canonical));
  CHECK_FALSE(t.discrete);
  REQUIRE(t.witness);
  CHECK(t.witness_content == 1);
  const Embedding sigma = make_embedding(cover_of("U - u", F5), K.p, parse_element("u", K.p));
  const Verdict s = classify_embedding(sigma, default_tests(sigma));
  CHECK(s.discrete);
  CHECK(s.d == 1);
  CHECK(s.degree_bound_ok);
}

TEST_CASE("structure of canonical embeddings") {
  for (const auto& [text, k] : std::vector<std::pair<std::string, const Field*>>{
           {"U^2 - u", &F5}, {"U^3 - u (u - 1)", &F7}, {"U^2 - u (u - 1)", &F5}, {"U - u^2", &F5}}) {
    CAPTURE(text);
    const CoverSpec cover = cover_of(text, *k);
    const Embedding emb = build_pOmega(cover);
    std::vector<Place> places{Place::infinity(*k)};
    for (std::uint64_t a = 0; a < k->order(); ++a) places.push_back(Place::finite(k->element(a)));
    for (const Place& x : places) {
      std::vector<PlaceY> ys;
      try {
        ys = fibers(cover, x);
      } catch (const NeedsLargerField&) {
        continue;
      }
      std::int64_t sum = 0;
      for (const auto& y : ys) sum += y.e();
      CHECK(sum == cover.degree());
      std::vector<int> hit = labels(compute_sj(emb, x));
      std::sort(hit.begin(), hit.end());
      std::vector<int> all;
      for (const auto& y : ys) all.push_back(y.label());
      CHECK(hit == all);
    }
    CHECK(check_injectivity(emb).injective);
  }
}

TEST_CASE("routing faithfulness") {
  std::mt19937_64 rng(11);
  for (const auto& [text, k] :
       std::vector<std::pair<std::string, const Field*>>{{"U^2 - u", &F5}, {"U^3 - u (u - 1)", &F7}}) {
    const CoverSpec cover = cover_of(text, *k);
    const Embedding emb = build_pOmega(cover);
    for (int it = 0; it < 10; ++it) {
      OmegaElem f;
      for (int i = 0; i < cover.degree(); ++i) f.c.push_back(gen::split_ratfn(rng, *k, 2, gen::all_points(*k)));
      if (f.is_zero()) continue;
      const AlgebraElement img = embed_omega(emb, f);
      for (const Place& x : cover.special_places()) {
        const LocalDecomposition d = decompose_at(emb.p, x, 16);
        const auto alpha = localize_element(img, d);
        const auto sj = compute_sj(emb, x);
        for (std::size_t j = 0; j < alpha.size(); ++j) {
          const PlaceY y = fibers(cover, x, 16)[static_cast<std::size_t>(sj[j].label() - 1)];
          // canonical slots and fibers come from the same factorization
          CHECK(agree(expand_at(f, y), alpha[j]));
        }
      }
    }
  }
}

TEST_CASE("verdict coherence under random routings") {
  const Kummer K;
  std::mt19937_64 rng(13);
  const auto tests = default_tests(K.canonical);
  for (int it = 0; it < 12; ++it) {
    std::map<Place, std::vector<int>> routes;
    for (int a : {1, 4})
      if (rng() % 2) routes[at(F5, a)] = {1 + static_cast<int>(rng() % 2), 1 + static_cast<int>(rng() % 2)};
    const Embedding emb = make_routed_embedding(K.cover, K.p, parse_element("T", K.p), routes);
    bool surjective = true;
    for (const auto& [x, r] : routes) surjective = surjective && r[0] != r[1];
    const InjectivityReport inj = check_injectivity(emb);
    CHECK(inj.injective == surjective);
    const Verdict v = classify_embedding(emb, tests);
    CHECK(v.discrete == surjective);
    if (surjective) {
      CHECK(v.contents.pass);
      for (int i = 0; i < 5; ++i) CHECK(content_of_function(emb, random_kummer_function(rng, K)).total == 0);
    } else {
      REQUIRE(v.witness);
      CHECK(v.witness_content > 0);
    }
  }
}
