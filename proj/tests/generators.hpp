#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "adelic/algebra.hpp"
#include "adelic/parse.hpp"

namespace gen {

using namespace adelic;

inline FieldElem rand_elem(std::mt19937_64& rng, const Field& k) { return k.element(rng() % k.order()); }

inline FieldElem rand_nonzero(std::mt19937_64& rng, const Field& k) { return k.element(1 + rng() % (k.order() - 1)); }

/// Constant times products of (u - a)^{+-1} with a drawn from `points`.
inline RatFn split_ratfn(std::mt19937_64& rng, const Field& k, int max_deg, const std::vector<FieldElem>& points) {
  RatFn f = RatFn::constant(rand_nonzero(rng, k));
  const RatFn u = RatFn::variable(k);
  const int dn = static_cast<int>(rng() % (max_deg + 1)), dd = static_cast<int>(rng() % (max_deg + 1));
  for (int i = 0; i < dn; ++i) f = f * (u - RatFn::constant(points[rng() % points.size()]));
  for (int i = 0; i < dd; ++i) f = f / (u - RatFn::constant(points[rng() % points.size()]));
  return f;
}

inline std::vector<FieldElem> all_points(const Field& k) {
  std::vector<FieldElem> out;
  for (std::uint64_t c = 0; c < k.order(); ++c) out.push_back(k.element(c));
  return out;
}

/// Exact jet t^v (c_0 + ... + c_deg t^deg) with c_0 != 0.
inline LocalElem rand_jet(std::mt19937_64& rng, const Field& k, int max_deg, int vmin, int vmax) {
  std::vector<FieldElem> c{rand_nonzero(rng, k)};
  const int deg = static_cast<int>(rng() % (max_deg + 1));
  for (int i = 0; i < deg; ++i) c.push_back(rand_elem(rng, k));
  const std::int64_t v = vmin + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(vmax - vmin + 1));
  return LocalElem(TruncSeries::from_coeffs(k, v, c));
}

/// Units of A_X{T^2 - u} over F_5 whose local data stays inside F_5: generic
/// part g * prod (c + d T) with g supported on {0, 1, 4, inf} (so the norm
/// only vanishes at squares), plus overrides at up to three places of
/// {@0, @1, @4, @inf} with jets of degree <= 6.
struct KummerUnits {
  const Field& k = Field::prime(5);
  AdelicPoly p = parse_adelic_poly("T^2 - u", k);
  std::vector<FieldElem> good{k.from_int(0), k.from_int(1), k.from_int(4)};
  std::vector<Place> places{Place::finite(k.from_int(0)), Place::finite(k.from_int(1)), Place::finite(k.from_int(4)),
                            Place::infinity(k)};

  AlgebraElement generic_part(std::mt19937_64& rng) const {
    const RatFn g = split_ratfn(rng, k, 3, good);
    AlgebraElement a = alg_embed(Adele(g), p);
    const int factors = 1 + static_cast<int>(rng() % 2);
    for (int i = 0; i < factors; ++i) {
      AlgebraElement lin;
      FieldElem c = rand_elem(rng, k), d = rand_elem(rng, k);
      if (c.is_zero() && d.is_zero()) c = k.one();
      lin.c = {Adele::constant(c), Adele::constant(d)};
      a = alg_mul(a, lin, p);
    }
    return a;
  }

  AlgebraElement unit(std::mt19937_64& rng) const {
    while (true) {
      AlgebraElement a = generic_part(rng);
      const int nov = static_cast<int>(rng() % 4);
      std::vector<Place> pool = places;
      std::shuffle(pool.begin(), pool.end(), rng);
      for (int i = 0; i < nov; ++i) {
        const Place& x = pool[static_cast<std::size_t>(i)];
        for (Adele& c : a.c) {
          Adele::Overrides o = c.overrides();
          LocalElem j = rng() % 4 == 0 ? LocalElem::zero(k) : rand_jet(rng, k, 6, -2, 3);
          o[x] = j;
          c = Adele(c.generic(), std::move(o));
        }
      }
      if (alg_is_unit(a, p)) return a;
    }
  }
};

}  // namespace gen
