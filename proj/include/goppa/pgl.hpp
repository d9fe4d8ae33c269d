#ifndef GOPPA_PGL_HPP
#define GOPPA_PGL_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "goppa/field.hpp"
#include "goppa/poly.hpp"

namespace goppa {

// Invertible 2x2 matrix over GF(2^m) modulo scalars. The representative is
// normalized so the first nonzero entry in (a, b, c, d) reading order is 1.
struct ProjMat {
    const FieldCtx* ctx = nullptr;
    std::uint64_t a = 1, b = 0, c = 0, d = 1;

    ProjMat() = default;
    ProjMat(const FieldCtx& f, std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d);

    friend bool operator==(const ProjMat&, const ProjMat&) = default;
};

ProjMat mat_identity(const FieldCtx& f);
ProjMat mat_mul(const ProjMat& A, const ProjMat& B);
ProjMat mat_inv(const ProjMat& A);
ProjMat mat_pow(ProjMat A, std::uint64_t e);
ProjMat mat_transpose(const ProjMat& A);
ProjMat mat_frobenius(const ProjMat& A, int times = 1);
std::uint64_t mat_order(const ProjMat& A);

// Packs the four normalized entries into one word; needs 4m <= 64.
std::uint64_t projmat_key(const ProjMat& A);

std::string projmat_to_text(const ProjMat& A);
ProjMat projmat_from_text(const FieldCtx& f, const std::string& text);

// Matrix part together with a power of the coefficient-squaring automorphism.
struct SemiLinear {
    ProjMat mat;
    int twist = 0;
    friend bool operator==(const SemiLinear&, const SemiLinear&) = default;
};

SemiLinear semi_mul(const SemiLinear& g, const SemiLinear& h);
SemiLinear semi_inv(const SemiLinear& g);

// Substitution action on monic polynomials of degree r = deg f:
//   act:      f -> ((cx+a)^r f((dx+b)/(cx+a))) made monic
//   act_circ: f -> ((bx+d)^r f((ax+c)/(bx+d))) made monic
Poly act(const ProjMat& A, const Poly& f);
Poly act_circ(const ProjMat& A, const Poly& f);

// Twist the coefficients first, then apply the matrix.
Poly act_semilinear(const SemiLinear& g, const Poly& f);

// Precomputed substitution table for one matrix at one degree: row i holds
// numerator^i * denominator^(r-i), so one application costs (r+1)^2 field
// multiplications.
class ActTable {
public:
    ActTable(const ProjMat& A, int r, bool circ = false);
    int degree() const { return r_; }
    Poly apply(const Poly& f) const;
    // Packed fast path; the input must be monic irreducible of degree r.
    std::uint64_t apply_key(std::uint64_t key) const;

private:
    const FieldCtx* ctx_;
    int r_;
    std::vector<std::vector<std::uint64_t>> rows_;
};

// All q^3 - q canonical representatives in ascending (a, b, c, d) order.
std::vector<ProjMat> enumerate_pgl(const FieldCtx& f);

// Translation x+1, scaling by a primitive element, and inversion.
std::vector<ProjMat> standard_generators(const FieldCtx& f);

// Closure of the generated subgroup by breadth-first multiplication.
std::vector<ProjMat> generated_closure(const FieldCtx& f, const std::vector<ProjMat>& gens);

struct ConjClass {
    std::string family;
    ProjMat representative;
    std::uint64_t size = 0;
    std::uint64_t order = 0;
};

// Conjugacy classes of the projective linear group over GF(2^m): identity,
// one parabolic class, (q-2)/2 diagonal classes, q/2 elliptic classes.
std::vector<ConjClass> conjugacy_classes(const FieldCtx& f);

ProjMat random_projmat(const FieldCtx& f, std::mt19937_64& rng);

} // namespace goppa

#endif
