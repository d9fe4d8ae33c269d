#ifndef GOPPA_GF2X_HPP
#define GOPPA_GF2X_HPP

#include <cstdint>

namespace goppa::gf2x {

// Binary polynomials packed into machine words, bit i = coefficient of x^i.
struct U128 {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    friend bool operator==(const U128&, const U128&) = default;
};

// Carry-less 64x64 -> 128 bit product, dispatched to the best available
// implementation at startup.
U128 mul64(std::uint64_t a, std::uint64_t b);

// Four independent carry-less products at once.
void mul64_batch4(const std::uint64_t* a, const std::uint64_t* b, U128* out);

// Portable reference implementations, kept callable for equivalence checks.
U128 mul64_scalar(std::uint64_t a, std::uint64_t b);
void mul64_batch4_scalar(const std::uint64_t* a, const std::uint64_t* b, U128* out);

// Implementation chosen by the runtime dispatcher.
const char* backend_name();

int degree(std::uint64_t p);
std::uint64_t mod(U128 a, std::uint64_t m);
std::uint64_t mod(std::uint64_t a, std::uint64_t m);
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t gcd(std::uint64_t a, std::uint64_t b);

// Rabin irreducibility test for packed binary polynomials of degree <= 63.
bool is_irreducible(std::uint64_t p);

// Smallest irreducible degree-m polynomial under the packed integer ordering.
std::uint64_t least_irreducible(int m);

} // namespace goppa::gf2x

#endif
