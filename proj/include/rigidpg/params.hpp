// pg(s,t,alpha) parameter triples, their point-graph PDS parameters, the
// necessary-condition filters, and the exhaustive candidate enumeration.
#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "rigidpg/numth.hpp"

namespace rigidpg {

// A proper partial geometry parameter triple: s+1 points per line,
// t+1 lines per point, 2 <= alpha < min(s,t).
struct GeometryParams {
  Integer s;
  Integer t;
  Integer alpha;
};

// (v,k,lambda,mu) partial-difference-set parameters with the derived
// beta = lambda - mu, Delta = beta^2 + 4(k - mu), and delta = sqrt(Delta)
// when Delta is a perfect square.
struct PdsParams {
  Integer v;
  Integer k;
  Integer lambda;
  Integer mu;
  Integer beta;
  Integer Delta;
  std::optional<Integer> delta;
};

PdsParams make_pds_params(Integer v, Integer k, Integer lambda, Integer mu);

// Raised when alpha does not divide (s+1)(st+alpha): the triple cannot
// carry a partial geometry. The search loop treats it as a filter failure.
struct NonIntegralV : std::runtime_error {
  explicit NonIntegralV(const std::string& what) : std::runtime_error(what) {}
};

// v = (s+1)(st+alpha)/alpha, k = s(t+1), lambda = s + t(alpha-1) - 1,
// mu = alpha(t+1). For these parameters Delta = (s+t-alpha+1)^2, so delta
// is always populated.
PdsParams derive_pds_params(const GeometryParams& g);

// (s+1)(t+1) ≡ 0 (mod s+t-alpha+1)
bool check_divisibility_a(const GeometryParams& g);

// v ≡ 0 (mod s+t-alpha+1)
bool check_divisibility_b(const GeometryParams& g, const PdsParams& pds);

// x = c(s-alpha) / ((alpha+1)^2 - c(s+1)) when the denominator is positive
// and divides the numerator; nothing otherwise.
std::optional<Integer> solve_line_multiplier(const Integer& s, const Integer& alpha,
                                             const Integer& c);

// Every exponent in the factorization of v is >= 2 (applied unconditionally,
// also to prime powers).
bool check_ma2a(const FactoredInteger& v_factored);

// Every prime dividing v divides delta. With delta | v this is equality
// of prime supports.
bool check_ma3(const Integer& v, const Integer& delta);

// Vacuously true when the rigid-type hypothesis s > 2*alpha - 1 fails;
// otherwise every prime dividing delta must divide s+1. With as_code the
// vacuous range widens to s <= 2*alpha (the published search code's bound).
bool check_mls(const Integer& s, const Integer& alpha, const Integer& delta,
               bool as_code = false);

// One surviving parameter set: the geometry, the line multiplier x with
// t+1 = x(s+1), the smallest witness c of the multiplier equation, the
// derived PDS parameters and the factorization of v.
struct CandidateRow {
  GeometryParams geometry;
  Integer x;
  Integer c;
  PdsParams pds;
  FactoredInteger v_factored;
};

struct EnumerateOptions {
  bool mls_as_code = false;
  // false scans c over [1, alpha+1] behind the positivity guard instead of
  // stopping at c(s+1) < (alpha+1)^2; the two are equivalent and tested so.
  bool tightened_c_bound = true;
  // 0 = hardware concurrency, capped by RIGIDPG_THREADS when set.
  unsigned threads = 0;
};

// All (s,t,alpha) with alpha_min <= alpha <= alpha_max surviving every
// filter above, deduplicated on (alpha, s, x) keeping the smallest c,
// sorted by (alpha, s, x). Requires 2 <= alpha_min <= alpha_max <= 8192
// (the 128-bit fast path is proven overflow-free up to that bound).
std::vector<CandidateRow> enumerate_candidates(unsigned alpha_min, unsigned alpha_max,
                                               const EnumerateOptions& opts = {});

}  // namespace rigidpg
