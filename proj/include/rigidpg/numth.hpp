// Exact integer utilities shared by all modules: trial-division
// factorization, integer square root, prime supports. Everything is
// arbitrary precision (GMP) so the sieve arithmetic never wraps.
#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

namespace rigidpg {

using Integer = mpz_class;

// A positive integer together with its prime factorization,
// primes strictly increasing, exponents >= 1. factorize(1) is the
// empty product.
struct FactoredInteger {
  Integer value{1};
  std::vector<std::pair<Integer, unsigned>> factors;

  Integer reconstruct() const;
  std::vector<Integer> support() const;
  // Renders "2^10*5^4" (bare prime for exponent 1, "1" for the unit).
  std::string to_string() const;
};

// Trial division up to sqrt(n). Rejects n < 1.
FactoredInteger factorize(const Integer& n);

struct SqrtResult {
  Integer root;  // floor(sqrt(n))
  bool exact;    // root*root == n
};

// Exact integer square root of n >= 0.
SqrtResult integer_sqrt(const Integer& n);

bool is_perfect_square(const Integer& n);

// Distinct primes dividing n >= 1; empty for n = 1.
std::vector<Integer> prime_support(const Integer& n);

// True iff every prime dividing a also divides b (a, b >= 1).
// Runs on gcds only, so it never factors its arguments.
bool support_subset(const Integer& a, const Integer& b);

// Floor division toward negative infinity.
Integer floor_div(const Integer& a, const Integer& b);

Integer pow_ui(const Integer& base, unsigned long exponent);

}  // namespace rigidpg
