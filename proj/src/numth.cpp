#include "rigidpg/numth.hpp"

#include <sstream>
#include <stdexcept>

namespace rigidpg {

Integer FactoredInteger::reconstruct() const {
  Integer out = 1;
  for (const auto& [p, e] : factors) out *= pow_ui(p, e);
  return out;
}

std::vector<Integer> FactoredInteger::support() const {
  std::vector<Integer> out;
  out.reserve(factors.size());
  for (const auto& [p, e] : factors) out.push_back(p);
  return out;
}

std::string FactoredInteger::to_string() const {
  if (factors.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, e] : factors) {
    if (!first) os << '*';
    first = false;
    os << p;
    if (e > 1) os << '^' << e;
  }
  return os.str();
}

FactoredInteger factorize(const Integer& n) {
  if (n < 1) throw std::invalid_argument("factorize: argument must be >= 1");
  FactoredInteger out;
  out.value = n;
  Integer rem = n;

  auto strip = [&rem](unsigned long d) {
    unsigned e = 0;
    while (mpz_divisible_ui_p(rem.get_mpz_t(), d)) {
      mpz_divexact_ui(rem.get_mpz_t(), rem.get_mpz_t(), d);
      ++e;
    }
    return e;
  };

  Integer limit = integer_sqrt(rem).root;
  for (unsigned long d = 2; rem > 1 && mpz_cmp_ui(limit.get_mpz_t(), d) >= 0;
       d = (d == 2) ? 3 : d + 2) {
    if (unsigned e = strip(d)) {
      out.factors.emplace_back(Integer(d), e);
      limit = integer_sqrt(rem).root;
    }
  }
  // Whatever survives trial division past its own square root is prime.
  if (rem > 1) out.factors.emplace_back(rem, 1u);
  return out;
}

SqrtResult integer_sqrt(const Integer& n) {
  if (n < 0) throw std::invalid_argument("integer_sqrt: argument must be >= 0");
  SqrtResult r;
  Integer rem;
  mpz_sqrtrem(r.root.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t());
  r.exact = rem == 0;
  return r;
}

bool is_perfect_square(const Integer& n) {
  return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

std::vector<Integer> prime_support(const Integer& n) {
  return factorize(n).support();
}

bool support_subset(const Integer& a, const Integer& b) {
  if (a < 1 || b < 1) throw std::invalid_argument("support_subset: arguments must be >= 1");
  Integer x = a;
  for (;;) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), b.get_mpz_t());
    if (g == 1) break;
    mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  }
  return x == 1;
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer pow_ui(const Integer& base, unsigned long exponent) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

}  // namespace rigidpg
