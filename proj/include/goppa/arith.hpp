#ifndef GOPPA_ARITH_HPP
#define GOPPA_ARITH_HPP

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace goppa {

using Big = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Mobius function, n >= 1.
int moebius(std::uint64_t n);

// Euler totient, n >= 1.
std::uint64_t euler_phi(std::uint64_t n);

// All divisors of n, ascending.
std::vector<std::uint64_t> divisors(std::uint64_t n);

// Deterministic Miller-Rabin, valid for all n < 2^64.
bool is_prime_u64(std::uint64_t n);

struct FactoredInt {
    std::uint64_t value = 1;
    std::vector<std::pair<std::uint64_t, int>> factors; // (prime, exponent), primes ascending

    static FactoredInt of(std::uint64_t n);
};

// Number of monic irreducible degree-r polynomials over a q-element field:
// (1/r) * sum_{d|r} mu(d) q^{r/d}.  Divisibility of the sum by r is asserted.
Big irreducible_count(const Big& q, std::uint64_t r);

// G(n) = sum_{d|n} chi(d) mu(d) F(n/d) for a completely multiplicative chi.
Big weighted_moebius_inversion(const std::function<Big(std::uint64_t)>& chi,
                               const std::function<Big(std::uint64_t)>& F,
                               std::uint64_t n);

// q^e for big q.
Big big_pow(const Big& q, std::uint64_t e);

} // namespace goppa

#endif
