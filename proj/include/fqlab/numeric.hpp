#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace fqlab {

/// Deterministic primality test for n < 2^63 (Miller-Rabin with fixed bases).
bool is_prime(std::uint64_t n);

struct PrimePower {
  std::uint64_t p;
  std::uint32_t k;
};

/// Decomposes q = p^k with p prime, or nullopt if q is not a prime power.
std::optional<PrimePower> as_prime_power(std::uint64_t q);

/// All prime powers q <= limit in increasing order; optionally odd ones only.
std::vector<std::uint64_t> prime_powers_upto(std::uint64_t limit, bool odd_only = false);

/// All primes p <= limit in increasing order.
std::vector<std::uint64_t> primes_upto(std::uint64_t limit);

/// Moebius function; n >= 1.
int mobius(std::uint64_t n);

}  // namespace fqlab
