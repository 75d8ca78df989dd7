#pragma once

#include <cstdint>
#include <vector>

namespace fzeta {

// Primes p <= n in ascending order.
std::vector<std::int64_t> primes_up_to(std::int64_t n);

// mu[j] for 0 <= j <= n (mu[0] = 0), by linear sieve.
std::vector<std::int8_t> mobius_table(std::int64_t n);

bool is_prime(std::int64_t n);
std::int64_t gcd(std::int64_t a, std::int64_t b);

}  // namespace fzeta
