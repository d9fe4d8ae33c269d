#ifndef GOPPA_CODE_HPP
#define GOPPA_CODE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "goppa/field.hpp"
#include "goppa/poly.hpp"

namespace goppa {

// Binary linear code as an independent generator basis; coordinate i lives
// at bit i % 64 of word i / 64 of each row.
struct BinaryCode {
    std::size_t length = 0;
    std::vector<std::vector<std::uint64_t>> basis;

    std::size_t dimension() const { return basis.size(); }
    std::size_t words() const { return (length + 63) / 64; }
};

// Roots of g inside the extension field reached by emb, ascending. g lives
// over the small field of emb.
std::vector<std::uint64_t> field_roots(const Embedding& emb, const Poly& g);

// Minimal polynomial over the small field of an extension-field element.
Poly minimal_polynomial(const Embedding& emb, std::uint64_t alpha);

// The code of words c with sum c_i/(x - a_i) = 0 mod g, support a_i = the
// small field in ascending packed order, built from the parity row
// 1/(alpha - a_i) expanded over the binary basis of the big field.
BinaryCode build_goppa(const Embedding& emb, const Poly& g, std::uint64_t alpha);

// Same code with an explicit support order (a permutation of the field).
BinaryCode build_goppa_with_support(const Embedding& emb, const Poly& g, std::uint64_t alpha,
                                    const std::vector<std::uint64_t>& support);

// Appends one overall-parity coordinate; dimension is unchanged.
BinaryCode extend(const BinaryCode& code);

// Exhaustive weight histogram via Gray-code traversal of the message space.
std::map<std::size_t, std::uint64_t> weight_enumerator(const BinaryCode& code,
                                                       int cap_dim = 24);

// Samples degree-r field elements, transports each by a random semilinear
// substitution, and compares the extended codes' weight enumerators.
struct EquivalenceReport {
    std::uint64_t n = 0, r = 0;
    int trials = 0;
    int matching = 0;
    std::size_t dimension = 0;
    std::map<std::size_t, std::uint64_t> reference;
    std::string failing_detail;

    bool ok() const { return trials > 0 && matching == trials && failing_detail.empty(); }
};

EquivalenceReport equivalence_invariant_check(std::uint64_t n, std::uint64_t r, int trials,
                                              std::uint64_t seed);

} // namespace goppa

#endif
