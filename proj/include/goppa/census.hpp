#ifndef GOPPA_CENSUS_HPP
#define GOPPA_CENSUS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "goppa/arith.hpp"

namespace goppa {

// Fixed-point counts on monic irreducible degree-r polynomials over GF(q)
// for one representative of each conjugacy-class family.
Big fix_parabolic(const Big& q, std::uint64_t r);
Big fix_diagonal(const Big& q, std::uint64_t r, std::uint64_t D);
Big fix_elliptic(const Big& q, std::uint64_t r, std::uint64_t D);

// Binary-side counts: degree-r binary irreducibles (all of which divide
// x^(2^r) + x), those fixed by x -> x+1, and those fixed by the order-3
// substitution x -> (x+1)/x.
Big count_X(std::uint64_t r);
Big count_delta2(std::uint64_t r);
// Three-case closed form for the order-3 fixed count; kept verbatim so its
// divergence from the definitional count below stays observable.
Big count_delta5(std::uint64_t r);
// Definitional count of binary irreducibles invariant under x -> (x+1)/x.
Big count_A5_invariant_f2(std::uint64_t r);

struct ConsistencyFlag {
    std::string check;
    std::string detail;
    friend bool operator==(const ConsistencyFlag&, const ConsistencyFlag&) = default;
};

struct CorollaryValue {
    std::string name;
    Rat value;
    bool matches = false;
};

struct CensusReport {
    std::uint64_t n = 0, r = 0;
    Big q;
    bool hypothesis_ok = true;
    bool forced = false;

    Big N0, N1, N2, N2_classweighted, N3;
    std::optional<Big> pgl_orbits;
    Rat pgl_orbits_formula;

    Big X_count, delta2, delta5, delta5_definitional;
    Rat s0_formula;
    std::optional<Big> s0;
    Rat s_formula;
    std::optional<Big> s;
    std::optional<Big> bound;

    std::vector<CorollaryValue> corollaries;
    std::vector<ConsistencyFlag> flags;

    bool has_flag(const std::string& check) const;
};

// Group side only: N0..N3 and the orbit count of the linear group. Exact for
// every n >= 1, r >= 1.
CensusReport pgl_orbit_count(std::uint64_t n, std::uint64_t r);

// Full semilinear census. Hypotheses (n prime >= 5, r >= 3, gcd(r, n) = 1)
// are enforced unless force is set; forcing watermark-flags the report.
CensusReport orbit_count_total(std::uint64_t n, std::uint64_t r, bool force = false);

// Specialized closed forms applicable at (n, r), with exact rational values.
std::vector<CorollaryValue> corollary_formulas(std::uint64_t n, std::uint64_t r);

std::string rat_to_string(const Rat& v);
std::string census_report_json(const CensusReport& rep);
std::string census_report_csv_header();
std::string census_report_csv_row(const CensusReport& rep);

} // namespace goppa

#endif
