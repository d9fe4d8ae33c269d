#ifndef GOPPA_ORACLE_HPP
#define GOPPA_ORACLE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "goppa/arith.hpp"
#include "goppa/field.hpp"
#include "goppa/pgl.hpp"
#include "goppa/poly.hpp"

namespace goppa {

enum class GroupKind { PGL, PGammaL };

// Brute-force orbit partition of the monic irreducibles of degree r over
// GF(2^n), with polynomials addressed by their packed keys.
struct OrbitPartition {
    GroupKind group = GroupKind::PGL;
    std::uint64_t n = 0, r = 0;
    std::vector<std::uint64_t> keys;            // sorted keys of the whole set
    std::vector<std::uint32_t> orbit_ids;       // orbit index per key position
    std::vector<std::uint64_t> orbit_sizes;     // indexed by orbit id
    std::vector<std::uint64_t> representatives; // least member key per orbit
    std::vector<std::uint8_t> divisor_flags;    // 1 iff a member divides x^(2^r)+x

    std::size_t orbit_count() const { return orbit_sizes.size(); }
    std::uint32_t orbit_of_key(std::uint64_t key) const;
};

// Union-find closure under the standard generators, plus the coefficient
// squaring map for the semilinear group. The partition is independent of the
// worker count and of the generating set.
OrbitPartition enumerate_orbits(GroupKind group, std::uint64_t n, std::uint64_t r,
                                int workers = 1, int cap_log2 = 27);

// Same closure under an explicit matrix list.
OrbitPartition enumerate_orbits_with(GroupKind group, const FieldCtx& f, std::uint64_t r,
                                     const std::vector<ProjMat>& mats, int workers = 1,
                                     int cap_log2 = 27);

std::string orbit_partition_csv(const OrbitPartition& p);

// Average fixed-point count over every single group element, each applied
// literally to every polynomial.
Big burnside_count(std::uint64_t n, std::uint64_t r, int workers = 1, int cap_log2 = 27);

// Number of degree-r monic irreducibles fixed by the substitution A, counted
// by applying A to the whole key list.
std::uint64_t count_fixed_keys(const ProjMat& A, std::uint64_t r,
                               const std::vector<std::uint64_t>& keys);

// The six binary projective substitutions: identity, 1/x, x+1, x/(x+1),
// (x+1)/x, 1/(x+1), acting on the binary irreducibles of degree r.
struct DeltaTable {
    std::uint64_t n = 0, r = 0;
    std::vector<std::uint64_t> members; // binary keys, ascending
    std::vector<std::uint64_t> delta2, delta3, delta4, delta5, delta6, delta7;
    std::map<std::uint64_t, std::vector<std::uint64_t>> stabilizer_orbit; // G_f per member
    std::vector<std::vector<std::uint64_t>> blocks; // G_f partition of the members

    std::uint64_t s0() const { return blocks.size(); }
};

// Classifies every binary irreducible of degree r by which substitutions fix
// it, and checks the structural laws of that classification; violations are
// hard consistency failures.
DeltaTable classify_X(std::uint64_t n, std::uint64_t r);

// |Delta_5| counted by definition: lift each binary irreducible to GF(2^n)
// and test (x+1)/x substitution invariance there.
Big count_delta5_bruteforce(std::uint64_t n, std::uint64_t r);

// Same count performed entirely over GF(2).
Big count_A5_fixed_f2_bruteforce(std::uint64_t r);

// Number of linear-group orbits fixed by the r-fold coefficient squaring
// map, from the block structure of the binary classification; recounted
// directly on the orbit partition whenever the full set is enumerable.
std::uint64_t sigma_fixed_orbit_count(std::uint64_t n, std::uint64_t r, int workers = 1,
                                      int cap_log2 = 27);

// gcd(2^(n*r/2) + 1, 2^r - 1) == 2^(r/2) + 1, exact in big integers.
bool verify_gcd_identity(std::uint64_t n, std::uint64_t r);

// Report on the binary factor F = gcd(x^(2^(n*r0 mod r)+1) + x + 1,
// x^(2^r) + x) for r = 3*r0 and its root description
// theta = (g^2+g+1)/(alpha+g) + g + 1 over the subfield of size 2^r0.
struct FFactorReport {
    std::uint64_t n = 0, r = 0, r0 = 0;
    std::uint64_t F_degree = 0, expected_degree = 0;
    bool degree_ok = false;
    // The substitution-invariant binary irreducibles of degree r, and how
    // many of them divide F. Only a divisor's roots can serve as alpha; the
    // gap between the two counts is the same one-sided selection the census
    // flags on the order-3 fixed count.
    std::uint64_t invariant_total = 0, invariant_dividing = 0;
    bool alpha_excluded = false; // alpha^2 + alpha + 1 != 0
    bool alpha_is_root = false;
    bool theta_roots_ok = false; // distinct roots of F, none equal to alpha
    bool no_linear_factor_over_fq = false;
    bool quadratic_factor_expected = false; // x^2+x+1 | F iff r0 even
    bool quadratic_factor_present = false;
    std::string failing_detail;

    bool ok() const {
        return degree_ok && invariant_dividing > 0 && alpha_excluded && alpha_is_root &&
               theta_roots_ok && no_linear_factor_over_fq &&
               quadratic_factor_present == quadratic_factor_expected;
    }
};

FFactorReport verify_F_factorization(std::uint64_t n, std::uint64_t r);

// Spreads a binary packed key into the packing of a degree-m coefficient
// field, bit field by bit field.
std::uint64_t lift_binary_key(int m, std::uint64_t r, std::uint64_t bkey);

} // namespace goppa

#endif
