#ifndef GOPPA_POLY_HPP
#define GOPPA_POLY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "goppa/field.hpp"

namespace goppa {

// Polynomial over GF(2^m). Coefficients ascend by degree and carry no
// trailing zeros; an empty vector is the zero polynomial.
struct Poly {
    const FieldCtx* ctx = nullptr;
    std::vector<std::uint64_t> c;

    Poly() = default;
    explicit Poly(const FieldCtx& f) : ctx(&f) {}
    Poly(const FieldCtx& f, std::vector<std::uint64_t> coeffs);

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    bool is_monic() const { return !c.empty() && c.back() == 1; }
    std::uint64_t lead() const;
    std::uint64_t coeff(std::size_t i) const { return i < c.size() ? c[i] : 0; }
    std::uint64_t eval(std::uint64_t x) const;
    void normalize();

    friend bool operator==(const Poly&, const Poly&) = default;
};

Poly poly_x(const FieldCtx& f);
Poly poly_const(const FieldCtx& f, std::uint64_t v);
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, std::uint64_t s);
std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b);
Poly poly_mod(const Poly& a, const Poly& b);
Poly poly_divexact(const Poly& a, const Poly& b);
Poly monic_normalize(const Poly& a);
Poly poly_gcd(Poly a, Poly b);
Poly poly_inverse_mod(const Poly& a, const Poly& mod);

// x^(2^k) reduced mod f, by k modular squarings.
Poly x_pow2k_mod(std::uint64_t k, const Poly& f);

// Applies the coefficient-wise squaring map the given number of times.
Poly coeff_frobenius(const Poly& f, int times = 1);

// Rabin irreducibility test over GF(2^m).
bool is_irreducible(const Poly& f);

// Whether f of degree r divides x^(2^r) + x, i.e. every root of f already
// lies in the degree-r extension of GF(2).
bool divides_x2r_x(const Poly& f);

// Packs a monic degree-r polynomial into an integer, a_0 most significant,
// so that key order equals the iteration order below. Needs m*r <= 63.
std::uint64_t pack_key(const Poly& f);
Poly unpack_key(const FieldCtx& f, std::uint64_t r, std::uint64_t key);

// Comma-separated coefficients ascending by degree.
std::string poly_to_text(const Poly& f);
Poly poly_from_text(const FieldCtx& f, const std::string& text);

// Walks monic irreducible degree-r polynomials in ascending packed-key order.
class IrreducibleIter {
public:
    IrreducibleIter(const FieldCtx& f, std::uint64_t r);
    std::optional<std::uint64_t> next_key();
    std::optional<Poly> next();

private:
    const FieldCtx* ctx_;
    std::uint64_t r_;
    std::uint64_t end_;
    std::uint64_t cur_ = 0;
};

// Exhaustive scans over the monic degree-r key space; worker count changes
// wall time only, never the result.
std::uint64_t count_irreducible_scan(const FieldCtx& f, std::uint64_t r, int workers);
std::vector<std::uint64_t> irreducible_keys(const FieldCtx& f, std::uint64_t r, int workers,
                                            int cap_log2 = 27);

// Roots of f lying in its coefficient field, ascending, via deterministic
// trace-based splitting.
std::vector<std::uint64_t> find_roots(const Poly& f);

Embedding make_embedding(const FieldCtx& sub, const FieldCtx& big);

} // namespace goppa

#endif
