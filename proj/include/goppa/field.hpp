#ifndef GOPPA_FIELD_HPP
#define GOPPA_FIELD_HPP

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace goppa {

// GF(2^m) for 1 <= m <= 63. Elements are packed little-endian: bit i of the
// word is the coefficient of x^i in the residue class representative.
// Small fields run on log/exp tables, larger ones on carry-less multiply.
class FieldCtx {
public:
    explicit FieldCtx(int m);
    FieldCtx(int m, std::uint64_t modulus);

    int m() const { return m_; }
    std::uint64_t modulus() const { return modulus_; }
    std::uint64_t size() const { return 1ull << m_; }
    std::uint64_t order() const { return (1ull << m_) - 1; }
    bool uses_tables() const { return !exp_.empty(); }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return a ^ b; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t inv(std::uint64_t a) const;
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
    std::uint64_t frob(std::uint64_t a) const { return mul(a, a); }
    std::uint64_t trace(std::uint64_t a) const;

    std::uint64_t element_order(std::uint64_t a) const;
    std::uint64_t primitive_element() const { return primitive_; }

private:
    int m_;
    std::uint64_t modulus_;
    std::uint64_t primitive_ = 0;
    std::vector<std::uint64_t> exp_;
    std::vector<std::uint32_t> log_;

    void init();
};

// Value-semantic element tied to its field, for code where clarity beats
// raw-word speed.
struct FieldElem {
    const FieldCtx* ctx = nullptr;
    std::uint64_t v = 0;

    FieldElem() = default;
    FieldElem(const FieldCtx& c, std::uint64_t value) : ctx(&c), v(value) {}

    friend FieldElem operator+(FieldElem a, FieldElem b);
    friend FieldElem operator*(FieldElem a, FieldElem b);
    friend FieldElem operator/(FieldElem a, FieldElem b);
    friend bool operator==(const FieldElem&, const FieldElem&) = default;
    FieldElem inverse() const;
    FieldElem powed(std::uint64_t e) const;
};

// Field homomorphism GF(2^ms) -> GF(2^mb) determined by the least root of the
// small field's modulus inside the big field.
struct Embedding {
    const FieldCtx* sub = nullptr;
    const FieldCtx* big = nullptr;
    std::uint64_t root = 0;
    std::vector<std::uint64_t> basis_img;
    std::unordered_map<std::uint64_t, std::uint64_t> preimage;

    std::uint64_t apply(std::uint64_t a) const;
    bool in_image(std::uint64_t b) const { return preimage.count(b) != 0; }
    std::uint64_t pull_back(std::uint64_t b) const;
};

} // namespace goppa

#endif
