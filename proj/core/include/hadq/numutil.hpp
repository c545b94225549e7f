#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

namespace hadq {

// Sieve of Eratosthenes; results cached for repeated calls with growing bounds.
const std::vector<std::uint64_t>& primes_upto(std::uint64_t bound);

bool is_prime_u64(std::uint64_t n);

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m);
std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t m);  // gcd(a, m) = 1

// Natural log of |z| (z nonzero), and of |q|, accurate to double precision
// regardless of magnitude.
double log_abs(const mpz_class& z);
double log_abs(const mpq_class& q);

// Complete factorization by trial division up to 10^6 plus a primality test on
// the cofactor; throws FactorizationTooHard when the cofactor is composite.
std::vector<std::pair<mpz_class, unsigned>> factor_mpz(mpz_class n);

// Exponent of p in z (z nonzero).
unsigned long valuation(const mpz_class& z, unsigned long p);

}  // namespace hadq
