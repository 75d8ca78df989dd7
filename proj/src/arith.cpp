#include "fzeta/arith.hpp"

#include <cstdlib>

namespace fzeta {

namespace {

struct Sieve {
  std::vector<std::int64_t> primes;
  std::vector<std::int8_t> mu;
};

Sieve linear_sieve(std::int64_t n) {
  Sieve out;
  if (n < 0) n = 0;
  out.mu.assign(static_cast<std::size_t>(n) + 1, 0);
  std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
  if (n >= 1) out.mu[1] = 1;
  for (std::int64_t i = 2; i <= n; ++i) {
    if (!composite[i]) {
      out.primes.push_back(i);
      out.mu[i] = -1;
    }
    for (std::int64_t p : out.primes) {
      const std::int64_t m = i * p;
      if (m > n) break;
      composite[m] = true;
      if (i % p == 0) {
        out.mu[m] = 0;
        break;
      }
      out.mu[m] = static_cast<std::int8_t>(-out.mu[i]);
    }
  }
  return out;
}

}  // namespace

std::vector<std::int64_t> primes_up_to(std::int64_t n) { return linear_sieve(n).primes; }

std::vector<std::int8_t> mobius_table(std::int64_t n) { return linear_sieve(n).mu; }

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::int64_t gcd(std::int64_t a, std::int64_t b) {
  a = std::llabs(a);
  b = std::llabs(b);
  while (b != 0) {
    const std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace fzeta
