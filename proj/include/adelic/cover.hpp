#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "adelic/algebra.hpp"

namespace adelic {

using SigmaPoly = Polynomial<RatFn>;

/// A cover Y -> X given by a monic irreducible separable P(U) over Sigma.
class CoverSpec {
 public:
  /// Validates monic, separable and irreducible; the certificate names the
  /// place (or specialization) that rules out every proper factor degree.
  static CoverSpec make(const SigmaPoly& P);

  const Field& field() const { return P_.zero_elem().field(); }
  const SigmaPoly& poly() const { return P_; }
  std::int64_t degree() const { return P_.degree(); }
  const std::string& certificate() const { return cert_; }
  /// Places where the fibers can differ from d unramified points: poles of
  /// the coefficients, zeros of the discriminant, and infinity.
  std::vector<Place> special_places() const;

 private:
  SigmaPoly P_;
  std::string cert_;
};

/// sum_i c_i U^i modulo P.
struct OmegaElem {
  std::vector<RatFn> c;

  bool is_zero() const;
  std::string to_string(const std::string& var = "w") const;
  bool operator==(const OmegaElem& o) const { return c == o.c; }
};

OmegaElem omega_from_poly(const SigmaPoly& f, const CoverSpec& cover);
OmegaElem omega_constant(const RatFn& f, const CoverSpec& cover);
OmegaElem omega_add(const OmegaElem& a, const OmegaElem& b);
OmegaElem omega_mul(const OmegaElem& a, const OmegaElem& b, const CoverSpec& cover);
OmegaElem omega_inverse(const OmegaElem& a, const CoverSpec& cover);
/// Expression in u and the generator (written `w` or `U`).
OmegaElem parse_omega(std::string_view text, const CoverSpec& cover);

/// A point y of Y: factor `label` of P over K_x.
struct PlaceY {
  Place x;
  LocalFactor factor;

  int label() const { return factor.label; }
  std::int64_t e() const { return factor.e; }
  std::string to_string() const;
  bool operator==(const PlaceY& o) const { return x == o.x && label() == o.label(); }
};

std::vector<PlaceY> fibers(const CoverSpec& cover, const Place& x, std::int64_t precision = kDefaultPrecision);

/// Germ of f at y as a series in the uniformizer s (s^e = t).
TruncSeries expand_at(const OmegaElem& f, const PlaceY& y);

/// Omega -> A_X{p} determined by the image of U. `routes` records the slot
/// tables the image was built from (fiber labels per slot, 1-based).
struct Embedding {
  CoverSpec cover;
  AdelicPoly p;
  AlgebraElement image;
  std::map<Place, std::vector<int>> routes;
  std::int64_t precision = kDefaultPrecision;
};

/// p = P with override-free coefficients, image of U = T.
Embedding build_pOmega(const CoverSpec& cover, std::int64_t precision = kDefaultPrecision);

/// Embedding with explicit image; checks P(image) = 0 (exactly for exact
/// components, to the known precision for series).
Embedding make_embedding(const CoverSpec& cover, const AdelicPoly& p, const AlgebraElement& image,
                         std::int64_t precision = kDefaultPrecision);

/// Starts from `image` and, at each routed place, overrides it so that slot j
/// reads the fiber route[j]. Routed places must have only unramified slots
/// and fibers.
Embedding make_routed_embedding(const CoverSpec& cover, const AdelicPoly& p, const AlgebraElement& image,
                                const std::map<Place, std::vector<int>>& routes,
                                std::int64_t precision = kDefaultPrecision);

/// Image of f under the embedding.
AlgebraElement embed_omega(const Embedding& emb, const OmegaElem& f);

/// s_j(x) for every slot j of p at x. RoutingAmbiguous unless each slot
/// matches exactly one fiber point.
std::vector<PlaceY> compute_sj(const Embedding& emb, const Place& x);

struct InjectivityReport {
  bool injective = true;
  std::vector<PlaceY> missed;
  std::vector<Place> checked;
};

/// Surjectivity of j -> s_j(x) wherever it can fail: bad places of p,
/// overrides of p and of the image, and the special places of the cover.
InjectivityReport check_injectivity(const Embedding& emb);

ContentReport content_of_function(const Embedding& emb, const OmegaElem& f);

struct ProductFormulaReport {
  std::vector<std::pair<OmegaElem, ContentReport>> results;
  bool pass = true;
};

ProductFormulaReport verify_product_formula(const Embedding& emb, const std::vector<OmegaElem>& tests);

/// f with a pole at `missed` and regular at every other point of Y, searched
/// among N / (u - a)^m (or polynomials N when missed lies over infinity) with
/// N in k[u][U], u-degrees and m at most `bound`. nullopt when none exists in
/// that range. PreconditionViolation when `missed` is hit by some slot.
std::optional<OmegaElem> find_witness(const Embedding& emb, const PlaceY& missed, int bound);

/// The search behind find_witness, for any point of Y.
std::optional<OmegaElem> function_with_single_pole(const CoverSpec& cover, const PlaceY& y, int bound,
                                                   std::int64_t precision = kDefaultPrecision);

/// Divisor of f restricted to the fibers over `places` (nonzero entries).
std::vector<std::pair<PlaceY, std::int64_t>> omega_divisor(const OmegaElem& f, const CoverSpec& cover,
                                                           const std::vector<Place>& places,
                                                           std::int64_t precision = kDefaultPrecision);

/// w + a, u - a for the first few a, and (w + a) / (u - b); candidates whose
/// content needs a larger field are dropped.
std::vector<OmegaElem> default_tests(const Embedding& emb);

struct Verdict {
  bool discrete = false;
  std::int64_t d = 0, n = 0;
  bool degree_bound_ok = false;
  std::vector<PlaceY> missed;
  std::optional<OmegaElem> witness;
  std::int64_t witness_content = 0;
  ProductFormulaReport contents;
};

/// Discrete iff every fiber is hit. Then d <= n and every test has content
/// 0; otherwise a witness with positive content. Disagreement between the
/// conditions is an InternalInconsistency; no witness within `bound` is
/// WitnessNotFound.
Verdict classify_embedding(const Embedding& emb, const std::vector<OmegaElem>& tests, int bound = 3);

}  // namespace adelic
