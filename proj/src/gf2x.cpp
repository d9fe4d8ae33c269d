#include "goppa/gf2x.hpp"

#include <bit>
#include <stdexcept>

#include "goppa/arith.hpp"
#include "goppa/errors.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define GOPPA_GF2X_X86 1
#endif

#if defined(__aarch64__) && defined(__GNUC__)
#include <arm_neon.h>
#include <sys/auxv.h>
#define GOPPA_GF2X_NEON 1
#endif

namespace goppa::gf2x {

U128 mul64_scalar(std::uint64_t a, std::uint64_t b) {
    U128 r;
    while (b) {
        int k = std::countr_zero(b);
        b &= b - 1;
        r.lo ^= a << k;
        if (k) r.hi ^= a >> (64 - k);
    }
    return r;
}

void mul64_batch4_scalar(const std::uint64_t* a, const std::uint64_t* b, U128* out) {
    for (int i = 0; i < 4; ++i) out[i] = mul64_scalar(a[i], b[i]);
}

namespace {

using Mul64Fn = U128 (*)(std::uint64_t, std::uint64_t);
using Batch4Fn = void (*)(const std::uint64_t*, const std::uint64_t*, U128*);

#if defined(GOPPA_GF2X_X86)

__attribute__((target("pclmul,sse4.1")))
U128 mul64_pclmul(std::uint64_t a, std::uint64_t b) {
    __m128i va = _mm_set_epi64x(0, static_cast<long long>(a));
    __m128i vb = _mm_set_epi64x(0, static_cast<long long>(b));
    __m128i p = _mm_clmulepi64_si128(va, vb, 0x00);
    U128 r;
    r.lo = static_cast<std::uint64_t>(_mm_cvtsi128_si64(p));
    r.hi = static_cast<std::uint64_t>(_mm_extract_epi64(p, 1));
    return r;
}

__attribute__((target("pclmul,sse4.1")))
void mul64_batch4_pclmul(const std::uint64_t* a, const std::uint64_t* b, U128* out) {
    for (int i = 0; i < 4; ++i) {
        __m128i va = _mm_set_epi64x(0, static_cast<long long>(a[i]));
        __m128i vb = _mm_set_epi64x(0, static_cast<long long>(b[i]));
        __m128i p = _mm_clmulepi64_si128(va, vb, 0x00);
        out[i].lo = static_cast<std::uint64_t>(_mm_cvtsi128_si64(p));
        out[i].hi = static_cast<std::uint64_t>(_mm_extract_epi64(p, 1));
    }
}

__attribute__((target("vpclmulqdq,avx2")))
void mul64_batch4_vpclmul(const std::uint64_t* a, const std::uint64_t* b, U128* out) {
    __m256i va01 = _mm256_set_epi64x(0, static_cast<long long>(a[1]), 0, static_cast<long long>(a[0]));
    __m256i vb01 = _mm256_set_epi64x(0, static_cast<long long>(b[1]), 0, static_cast<long long>(b[0]));
    __m256i va23 = _mm256_set_epi64x(0, static_cast<long long>(a[3]), 0, static_cast<long long>(a[2]));
    __m256i vb23 = _mm256_set_epi64x(0, static_cast<long long>(b[3]), 0, static_cast<long long>(b[2]));
    __m256i p01 = _mm256_clmulepi64_epi128(va01, vb01, 0x00);
    __m256i p23 = _mm256_clmulepi64_epi128(va23, vb23, 0x00);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out), p01);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + 2), p23);
}

#endif

#if defined(GOPPA_GF2X_NEON)

__attribute__((target("+crypto")))
U128 mul64_pmull(std::uint64_t a, std::uint64_t b) {
    poly128_t p = vmull_p64(static_cast<poly64_t>(a), static_cast<poly64_t>(b));
    uint64x2_t v = vreinterpretq_u64_p128(p);
    U128 r;
    r.lo = vgetq_lane_u64(v, 0);
    r.hi = vgetq_lane_u64(v, 1);
    return r;
}

__attribute__((target("+crypto")))
void mul64_batch4_pmull(const std::uint64_t* a, const std::uint64_t* b, U128* out) {
    for (int i = 0; i < 4; ++i) out[i] = mul64_pmull(a[i], b[i]);
}

#endif

struct Dispatch {
    Mul64Fn mul = &mul64_scalar;
    Batch4Fn batch = &mul64_batch4_scalar;
    const char* name = "scalar";
};

Dispatch pick_dispatch() {
    Dispatch d;
#if defined(GOPPA_GF2X_X86)
    if (__builtin_cpu_supports("pclmul") && __builtin_cpu_supports("sse4.1")) {
        d.mul = &mul64_pclmul;
        d.batch = &mul64_batch4_pclmul;
        d.name = "pclmul";
        if (__builtin_cpu_supports("vpclmulqdq") && __builtin_cpu_supports("avx2")) {
            d.batch = &mul64_batch4_vpclmul;
            d.name = "vpclmul";
        }
    }
#elif defined(GOPPA_GF2X_NEON)
    if (getauxval(AT_HWCAP) & HWCAP_PMULL) {
        d.mul = &mul64_pmull;
        d.batch = &mul64_batch4_pmull;
        d.name = "pmull";
    }
#endif
    return d;
}

const Dispatch g_dispatch = pick_dispatch();

} // namespace

U128 mul64(std::uint64_t a, std::uint64_t b) { return g_dispatch.mul(a, b); }

void mul64_batch4(const std::uint64_t* a, const std::uint64_t* b, U128* out) {
    g_dispatch.batch(a, b, out);
}

const char* backend_name() { return g_dispatch.name; }

int degree(std::uint64_t p) {
    return p == 0 ? -1 : 63 - std::countl_zero(p);
}

std::uint64_t mod(U128 a, std::uint64_t m) {
    if (m == 0) throw std::invalid_argument("gf2x::mod: zero modulus");
    int dm = degree(m);
    while (a.hi) {
        int sh = 64 + degree(a.hi) - dm;
        if (sh >= 64) {
            a.hi ^= m << (sh - 64);
        } else {
            a.lo ^= m << sh;
            a.hi ^= m >> (64 - sh);
        }
    }
    int da;
    while ((da = degree(a.lo)) >= dm) a.lo ^= m << (da - dm);
    return a.lo;
}

std::uint64_t mod(std::uint64_t a, std::uint64_t m) {
    return mod(U128{a, 0}, m);
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return mod(mul64(a, b), m);
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
    while (b) {
        std::uint64_t r = mod(a, b);
        a = b;
        b = r;
    }
    return a;
}

bool is_irreducible(std::uint64_t p) {
    int d = degree(p);
    if (d < 1) return false;
    if (d == 1) return true;
    if ((p & 1) == 0) return false;
    const std::uint64_t x = 2;
    std::uint64_t r = x;
    FactoredInt fd = FactoredInt::of(static_cast<std::uint64_t>(d));
    for (int k = 1; k <= d; ++k) {
        r = mulmod(r, r, p);
        for (auto& [prime, exp] : fd.factors) {
            (void)exp;
            if (static_cast<std::uint64_t>(k) * prime == static_cast<std::uint64_t>(d) &&
                gcd(r ^ x, p) != 1)
                return false;
        }
    }
    return r == x;
}

std::uint64_t least_irreducible(int m) {
    if (m < 1 || m > 63) throw std::invalid_argument("least_irreducible: need 1 <= m <= 63");
    std::uint64_t lo = 1ull << m;
    std::uint64_t hi = lo + (lo - 1);
    for (std::uint64_t v = lo; v <= hi; ++v)
        if (is_irreducible(v)) return v;
    throw ConsistencyError("least_irreducible: no irreducible found");
}

} // namespace goppa::gf2x
