#include "rigidpg/params.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <thread>

namespace rigidpg {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

Integer to_integer(u128 v) {
  Integer out(static_cast<unsigned long>(v >> 64));
  out <<= 64;
  out += static_cast<unsigned long>(v);
  return out;
}

std::vector<std::pair<u64, unsigned>> factor_u64(u64 n) {
  std::vector<std::pair<u64, unsigned>> out;
  for (u64 d = 2; d * d <= n; d = (d == 2) ? 3 : d + 2) {
    if (n % d == 0) {
      unsigned e = 0;
      while (n % d == 0) {
        n /= d;
        ++e;
      }
      out.emplace_back(d, e);
    }
  }
  if (n > 1) out.emplace_back(n, 1u);
  return out;
}

unsigned resolve_threads(unsigned requested) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("RIGIDPG_THREADS")) {
    char* end = nullptr;
    unsigned long cap = std::strtoul(env, &end, 10);
    if (end != env && cap >= 1) n = static_cast<unsigned>(std::min<unsigned long>(n, cap));
  }
  return std::max(1u, n);
}

// A survivor of all filters, still in machine words. The mpz row is built
// only after dedup.
struct RawRow {
  u64 alpha, s, c, x;
  u128 t_plus_1;
  std::vector<std::pair<u64, unsigned>> v_factors;
};

// Everything after "x is a positive integer" for one (alpha, s, c, x).
// Returns true and fills `row` when the candidate survives.
bool apply_filters(u64 alpha, u64 s, u64 c, u64 x, bool mls_as_code, RawRow& row) {
  const u64 B = s + 1;
  const u128 t1 = static_cast<u128>(x) * B;          // t + 1
  const u128 delta = (s - alpha) + t1;               // s + t - alpha + 1
  if (static_cast<u128>(B) * t1 % delta != 0) return false;  // condition a
  const u128 vnum = static_cast<u128>(B) * (static_cast<u128>(s) * t1 - s + alpha);
  if (vnum % alpha != 0) return false;               // v not integral
  const u128 v = vnum / alpha;
  if (v % delta != 0) return false;                  // condition b

  // delta | (s+1)(t+1) = x(s+1)^2, so every prime of delta divides x or s+1.
  auto fx = factor_u64(x);
  auto fB = factor_u64(B);
  std::vector<u64> primes;
  primes.reserve(fx.size() + fB.size());
  for (const auto& [p, e] : fx) primes.push_back(p);
  for (const auto& [p, e] : fB) primes.push_back(p);
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

  u128 drem = delta;
  std::vector<u64> delta_primes;
  for (u64 p : primes) {
    if (drem % p == 0) {
      delta_primes.push_back(p);
      while (drem % p == 0) drem /= p;
    }
  }
  if (drem != 1) throw std::logic_error("enumerate: delta has a prime outside x(s+1)^2");

  // Ma3: primes of v all divide delta (they are then exactly delta_primes).
  u128 vrem = v;
  row.v_factors.clear();
  for (u64 p : delta_primes) {
    unsigned e = 0;
    while (vrem % p == 0) {
      vrem /= p;
      ++e;
    }
    if (e) row.v_factors.emplace_back(p, e);
  }
  if (vrem != 1) return false;

  // Ma2a: no exponent 1 in v.
  for (const auto& [p, e] : row.v_factors)
    if (e < 2) return false;

  // MLS: primes of delta divide s+1 (unless the hypothesis is vacuous).
  const bool vacuous = mls_as_code ? (s <= 2 * alpha) : (s <= 2 * alpha - 1);
  if (!vacuous) {
    for (u64 p : delta_primes)
      if (B % p != 0) return false;
  }

  row.alpha = alpha;
  row.s = s;
  row.c = c;
  row.x = x;
  row.t_plus_1 = t1;
  return true;
}

void scan_alpha(u64 alpha, const EnumerateOptions& opts, std::vector<RawRow>& out) {
  const u64 A = (alpha + 1) * (alpha + 1);
  for (u64 s = alpha + 1; s <= A - 2; ++s) {
    const u64 B = s + 1;
    const u64 c_cap = opts.tightened_c_bound ? ((A - 1) / B) : (alpha + 1);
    for (u64 c = 1; c <= c_cap; ++c) {
      if (c * B >= A) continue;  // only reachable without the tightened bound
      const u64 denom = A - c * B;
      const u64 num = c * (s - alpha);
      if (num % denom != 0) continue;
      RawRow row;
      if (apply_filters(alpha, s, c, num / denom, opts.mls_as_code, row))
        out.push_back(std::move(row));
    }
  }
}

CandidateRow materialize(const RawRow& raw) {
  CandidateRow row;
  row.geometry.s = static_cast<unsigned long>(raw.s);
  row.geometry.t = to_integer(raw.t_plus_1) - 1;
  row.geometry.alpha = static_cast<unsigned long>(raw.alpha);
  row.x = static_cast<unsigned long>(raw.x);
  row.c = static_cast<unsigned long>(raw.c);
  row.pds = derive_pds_params(row.geometry);
  row.v_factored.value = row.pds.v;
  for (const auto& [p, e] : raw.v_factors)
    row.v_factored.factors.emplace_back(Integer(static_cast<unsigned long>(p)), e);
  return row;
}

}  // namespace

PdsParams make_pds_params(Integer v, Integer k, Integer lambda, Integer mu) {
  PdsParams p;
  p.v = std::move(v);
  p.k = std::move(k);
  p.lambda = std::move(lambda);
  p.mu = std::move(mu);
  p.beta = p.lambda - p.mu;
  p.Delta = p.beta * p.beta + 4 * (p.k - p.mu);
  if (p.Delta >= 0) {
    auto r = integer_sqrt(p.Delta);
    if (r.exact) p.delta = r.root;
  }
  return p;
}

PdsParams derive_pds_params(const GeometryParams& g) {
  if (g.alpha < 2 || g.alpha >= g.s || g.alpha >= g.t)
    throw std::invalid_argument("derive_pds_params: need 2 <= alpha < min(s,t)");
  const Integer num = (g.s + 1) * (g.s * g.t + g.alpha);
  if (num % g.alpha != 0)
    throw NonIntegralV("derive_pds_params: alpha does not divide (s+1)(st+alpha)");
  PdsParams p = make_pds_params(num / g.alpha, g.s * (g.t + 1),
                                g.s + g.t * (g.alpha - 1) - 1, g.alpha * (g.t + 1));
  if (!p.delta || *p.delta != g.s + g.t - g.alpha + 1)
    throw std::logic_error("derive_pds_params: Delta != (s+t-alpha+1)^2");
  return p;
}

bool check_divisibility_a(const GeometryParams& g) {
  return (g.s + 1) * (g.t + 1) % (g.s + g.t - g.alpha + 1) == 0;
}

bool check_divisibility_b(const GeometryParams& g, const PdsParams& pds) {
  return pds.v % (g.s + g.t - g.alpha + 1) == 0;
}

std::optional<Integer> solve_line_multiplier(const Integer& s, const Integer& alpha,
                                             const Integer& c) {
  if (alpha >= s) throw std::invalid_argument("solve_line_multiplier: need alpha < s");
  const Integer denom = (alpha + 1) * (alpha + 1) - c * (s + 1);
  if (denom <= 0) return std::nullopt;
  const Integer num = c * (s - alpha);
  if (num % denom != 0) return std::nullopt;
  return num / denom;
}

bool check_ma2a(const FactoredInteger& v_factored) {
  for (const auto& [p, e] : v_factored.factors)
    if (e < 2) return false;
  return true;
}

bool check_ma3(const Integer& v, const Integer& delta) {
  return support_subset(v, delta);
}

bool check_mls(const Integer& s, const Integer& alpha, const Integer& delta,
               bool as_code) {
  const bool vacuous = as_code ? (s <= 2 * alpha) : (s <= 2 * alpha - 1);
  if (vacuous) return true;
  return support_subset(delta, s + 1);
}

std::vector<CandidateRow> enumerate_candidates(unsigned alpha_min, unsigned alpha_max,
                                               const EnumerateOptions& opts) {
  if (alpha_min < 2 || alpha_min > alpha_max)
    throw std::invalid_argument("enumerate_candidates: need 2 <= alpha_min <= alpha_max");
  if (alpha_max > 8192)
    throw std::invalid_argument("enumerate_candidates: alpha_max above the 128-bit-safe bound 8192");

  const unsigned workers =
      std::min<unsigned>(resolve_threads(opts.threads), alpha_max - alpha_min + 1);
  std::vector<std::vector<RawRow>> results(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (u64 alpha = alpha_min + w; alpha <= alpha_max; alpha += workers)
        scan_alpha(alpha, opts, results[w]);
    });
  }
  for (auto& th : pool) th.join();

  std::vector<RawRow> all;
  for (auto& part : results)
    all.insert(all.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  std::sort(all.begin(), all.end(), [](const RawRow& a, const RawRow& b) {
    return std::tie(a.alpha, a.s, a.x, a.c) < std::tie(b.alpha, b.s, b.x, b.c);
  });
  all.erase(std::unique(all.begin(), all.end(),
                        [](const RawRow& a, const RawRow& b) {
                          return a.alpha == b.alpha && a.s == b.s && a.x == b.x;
                        }),
            all.end());

  std::vector<CandidateRow> rows;
  rows.reserve(all.size());
  for (const auto& raw : all) rows.push_back(materialize(raw));
  return rows;
}

}  // namespace rigidpg
