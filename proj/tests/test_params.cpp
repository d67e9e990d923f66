#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "golden.hpp"
#include "rigidpg/params.hpp"

using namespace rigidpg;

namespace {

GeometryParams g(long s, long t, long alpha) {
  return {Integer(s), Integer(t), Integer(alpha)};
}

// Straightforward re-enumeration through the public single-candidate
// operations only; the fused fast path in enumerate_candidates must agree
// with it row for row.
std::vector<CandidateRow> reference_enumerate(unsigned alpha_min, unsigned alpha_max) {
  std::vector<CandidateRow> rows;
  for (unsigned alpha = alpha_min; alpha <= alpha_max; ++alpha) {
    const Integer A = Integer(alpha + 1) * (alpha + 1);
    for (Integer s = alpha + 1; s <= A - 2; ++s) {
      std::vector<std::pair<Integer, Integer>> found;  // (x, smallest c)
      for (Integer c = 1; c <= alpha + 1; ++c) {
        auto x = solve_line_multiplier(s, Integer(alpha), c);
        if (!x) continue;
        bool known = false;
        for (auto& [xx, cc] : found) known = known || xx == *x;
        if (!known) found.emplace_back(*x, c);
      }
      std::sort(found.begin(), found.end());
      for (const auto& [x, c] : found) {
        GeometryParams geom{s, x * (s + 1) - 1, Integer(alpha)};
        PdsParams pds;
        try {
          pds = derive_pds_params(geom);
        } catch (const NonIntegralV&) {
          continue;
        }
        if (!check_divisibility_a(geom)) continue;
        if (!check_divisibility_b(geom, pds)) continue;
        const FactoredInteger vf = factorize(pds.v);
        if (!check_ma2a(vf)) continue;
        if (!check_ma3(pds.v, *pds.delta)) continue;
        if (!check_mls(s, Integer(alpha), *pds.delta)) continue;
        CandidateRow row;
        row.geometry = geom;
        row.x = x;
        row.c = c;
        row.pds = pds;
        row.v_factored = vf;
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

void check_rows_equal(const std::vector<CandidateRow>& a, const std::vector<CandidateRow>& b) {
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].geometry.s == b[i].geometry.s);
    CHECK(a[i].geometry.t == b[i].geometry.t);
    CHECK(a[i].geometry.alpha == b[i].geometry.alpha);
    CHECK(a[i].x == b[i].x);
    CHECK(a[i].c == b[i].c);
    CHECK(a[i].pds.v == b[i].pds.v);
    CHECK(a[i].v_factored.to_string() == b[i].v_factored.to_string());
  }
}

}  // namespace

TEST_CASE("derive_pds_params known triples") {
  auto p = derive_pds_params(g(5, 5, 2));
  CHECK(p.v == 81);
  CHECK(p.k == 30);
  CHECK(p.lambda == 9);
  CHECK(p.mu == 12);
  CHECK(p.beta == -3);
  CHECK(p.Delta == 81);
  REQUIRE(p.delta.has_value());
  CHECK(*p.delta == 9);

  auto q = derive_pds_params(g(11, 23, 3));
  CHECK(q.v == 1024);
  CHECK(q.k == 264);
  CHECK(q.lambda == 56);
  CHECK(q.mu == 72);

  auto r = derive_pds_params(g(39, 39, 15));
  CHECK(r.v == 4096);
  CHECK(r.k == 1560);
  CHECK(r.lambda == 584);
  CHECK(r.mu == 600);

  CHECK_THROWS_AS(derive_pds_params(g(7, 7, 3)), NonIntegralV);
  CHECK_THROWS_AS(derive_pds_params(g(5, 5, 5)), std::invalid_argument);
}

TEST_CASE("divisibility conditions") {
  CHECK(check_divisibility_a(g(5, 5, 2)));
  CHECK(check_divisibility_a(g(11, 23, 3)));
  CHECK_FALSE(check_divisibility_a(g(6, 6, 2)));

  CHECK(check_divisibility_b(g(5, 5, 2), derive_pds_params(g(5, 5, 2))));
  auto p = derive_pds_params(g(272, 272, 104));
  CHECK(p.v == 194481);
  CHECK(*p.delta == 441);
  CHECK(check_divisibility_b(g(272, 272, 104), p));
}

TEST_CASE("solve_line_multiplier") {
  CHECK(*solve_line_multiplier(5, 2, 1) == 1);
  CHECK(*solve_line_multiplier(11, 3, 1) == 2);
  CHECK_FALSE(solve_line_multiplier(5, 2, 2).has_value());
  CHECK_THROWS_AS(solve_line_multiplier(2, 2, 1), std::invalid_argument);
}

TEST_CASE("check_ma2a") {
  CHECK(check_ma2a(factorize(Integer("17150000"))));  // 2^4*5^5*7^3
  CHECK_FALSE(check_ma2a(factorize(12)));             // 2^2*3
  CHECK(check_ma2a(factorize(1024)));
}

TEST_CASE("check_ma3") {
  CHECK(check_ma3(81, 9));
  CHECK(check_ma3(Integer("2985984"), 1728));  // 2^12*3^6 vs 2^6*3^3
  CHECK_FALSE(check_ma3(9216, 32));            // 3 divides v but not delta
}

TEST_CASE("check_mls and the code-mode boundary") {
  CHECK(check_mls(5, 2, 9));        // primes{3} within primes(6)
  CHECK(check_mls(3, 2, 7));        // s = 2*alpha - 1: vacuous
  CHECK_FALSE(check_mls(7, 2, 15)); // {3,5} not within primes(8)

  // s = 2*alpha: the published code skips the test, the stated condition
  // applies it.
  CHECK_FALSE(check_mls(4, 2, 3, false));
  CHECK(check_mls(4, 2, 3, true));
}

TEST_CASE("enumerate_candidates smallest cases") {
  auto rows = enumerate_candidates(2, 2);
  REQUIRE(rows.size() == 1);
  const auto& r = rows[0];
  CHECK(r.geometry.s == 5);
  CHECK(r.geometry.t == 5);
  CHECK(r.geometry.alpha == 2);
  CHECK(r.x == 1);
  CHECK(r.c == 1);
  CHECK(r.pds.v == 81);
  CHECK(r.v_factored.to_string() == "3^4");

  CHECK(enumerate_candidates(4, 4).empty());
  CHECK_THROWS_AS(enumerate_candidates(1, 4), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_candidates(5, 4), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_candidates(2, 9000), std::invalid_argument);
}

TEST_CASE("enumerate_candidates matches the reference chain up to alpha 80") {
  check_rows_equal(enumerate_candidates(2, 80), reference_enumerate(2, 80));
}

TEST_CASE("tightened c bound is equivalent to the guarded full range") {
  EnumerateOptions tight, full;
  full.tightened_c_bound = false;
  check_rows_equal(enumerate_candidates(2, 60, tight), enumerate_candidates(2, 60, full));
}

TEST_CASE("worker count does not change the output") {
  EnumerateOptions one, four;
  one.threads = 1;
  four.threads = 4;
  check_rows_equal(enumerate_candidates(2, 120, one), enumerate_candidates(2, 120, four));
}

TEST_CASE("the weaker code-mode MLS bound keeps the table unchanged") {
  // no surviving row sits on the s = 2*alpha boundary, so both bounds agree
  EnumerateOptions strict, as_code;
  as_code.mls_as_code = true;
  auto a = enumerate_candidates(2, 500, strict);
  auto b = enumerate_candidates(2, 500, as_code);
  check_rows_equal(a, b);
  for (const auto& r : a) CHECK(r.geometry.s != 2 * r.geometry.alpha);
}

TEST_CASE("row invariants on enumerated output") {
  auto rows = enumerate_candidates(2, 120);
  REQUIRE(rows.size() == 12);  // cases 1..12 of the full table
  for (const auto& r : rows) {
    const Integer &s = r.geometry.s, &t = r.geometry.t, &a = r.geometry.alpha;
    CHECK(a >= 2);
    CHECK(a < s);
    CHECK(a < t);
    CHECK(t + 1 == r.x * (s + 1));

    // Delta is the square of s+t-alpha+1 and beta = s-t-alpha-1
    const Integer delta = s + t - a + 1;
    CHECK(r.pds.Delta == delta * delta);
    CHECK(r.pds.beta == s - t - a - 1);
    CHECK(delta * delta - r.pds.beta * r.pds.beta == 4 * (s - a) * (t + 1));

    // the direct congruence form of the multiplier condition
    const Integer mod = (r.x + 1) * (s + 1) - (a + 1);
    CHECK(r.x * (a + 1) * (a + 1) % mod == 0);

    // the c witness reproduces x
    auto x = solve_line_multiplier(s, a, r.c);
    REQUIRE(x.has_value());
    CHECK(*x == r.x);

    // every public filter passes
    CHECK(check_divisibility_a(r.geometry));
    CHECK(check_divisibility_b(r.geometry, r.pds));
    CHECK(check_ma2a(r.v_factored));
    CHECK(check_ma3(r.pds.v, *r.pds.delta));
    CHECK(check_mls(s, a, *r.pds.delta));
    CHECK(r.v_factored.reconstruct() == r.pds.v);
  }
}

TEST_CASE("enumerated rows match the golden table on the shared range") {
  auto rows = enumerate_candidates(2, 120);
  const auto& gold = golden::rows();
  REQUIRE(rows.size() == 12);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].geometry.s == Integer(gold[i].s));
    CHECK(rows[i].geometry.t == Integer(gold[i].t));
    CHECK(rows[i].geometry.alpha == Integer(gold[i].alpha));
    CHECK(rows[i].x == Integer(gold[i].x));
    CHECK(rows[i].c == Integer(gold[i].c));
    CHECK(rows[i].pds.v == Integer(gold[i].v));
    CHECK(rows[i].pds.k == Integer(gold[i].k));
    CHECK(rows[i].pds.lambda == Integer(gold[i].lambda));
    CHECK(rows[i].pds.mu == Integer(gold[i].mu));
    CHECK(rows[i].v_factored.to_string() == gold[i].v_factored);
  }
}
