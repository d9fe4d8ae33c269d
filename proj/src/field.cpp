#include "goppa/field.hpp"

#include <stdexcept>

#include "goppa/arith.hpp"
#include "goppa/errors.hpp"
#include "goppa/gf2x.hpp"

namespace goppa {

FieldCtx::FieldCtx(int m) : m_(m), modulus_(gf2x::least_irreducible(m)) { init(); }

FieldCtx::FieldCtx(int m, std::uint64_t modulus) : m_(m), modulus_(modulus) {
    if (m < 1 || m > 63) throw std::invalid_argument("FieldCtx: need 1 <= m <= 63");
    if (gf2x::degree(modulus) != m) throw std::invalid_argument("FieldCtx: modulus degree != m");
    if (!gf2x::is_irreducible(modulus)) throw std::invalid_argument("FieldCtx: reducible modulus");
    init();
}

void FieldCtx::init() {
    if (m_ <= 16) {
        std::uint64_t n = order();
        std::uint64_t g = 0;
        for (std::uint64_t v = 1; v < size(); ++v) {
            std::uint64_t ord = n;
            for (auto& [p, e] : FactoredInt::of(n).factors) {
                (void)e;
                std::uint64_t w = v;
                std::uint64_t acc = 1, ee = n / p;
                while (ee) {
                    if (ee & 1) acc = gf2x::mulmod(acc, w, modulus_);
                    w = gf2x::mulmod(w, w, modulus_);
                    ee >>= 1;
                }
                if (acc == 1) {
                    ord = 0;
                    break;
                }
            }
            if (ord == n) {
                g = v;
                break;
            }
        }
        if (g == 0) throw ConsistencyError("FieldCtx: no primitive element found");
        primitive_ = g;
        exp_.assign(2 * n, 0);
        log_.assign(size(), 0);
        std::uint64_t cur = 1;
        for (std::uint64_t i = 0; i < n; ++i) {
            exp_[i] = cur;
            exp_[i + n] = cur;
            log_[cur] = static_cast<std::uint32_t>(i);
            cur = gf2x::mulmod(cur, g, modulus_);
        }
        if (cur != 1) throw ConsistencyError("FieldCtx: generator order mismatch");
    } else {
        for (std::uint64_t v = 2; v < size(); ++v) {
            if (element_order(v) == order()) {
                primitive_ = v;
                break;
            }
        }
        if (primitive_ == 0) throw ConsistencyError("FieldCtx: no primitive element found");
    }
}

std::uint64_t FieldCtx::mul(std::uint64_t a, std::uint64_t b) const {
    if (!exp_.empty()) {
        if (a == 0 || b == 0) return 0;
        return exp_[log_[a] + log_[b]];
    }
    return gf2x::mulmod(a, b, modulus_);
}

std::uint64_t FieldCtx::pow(std::uint64_t a, std::uint64_t e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    if (!exp_.empty()) {
        std::uint64_t n = order();
        return exp_[(log_[a] * (e % n)) % n];
    }
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

std::uint64_t FieldCtx::inv(std::uint64_t a) const {
    if (a == 0) throw std::invalid_argument("FieldCtx::inv: zero has no inverse");
    if (!exp_.empty()) {
        std::uint64_t n = order();
        return exp_[n - log_[a]];
    }
    return pow(a, order() - 1);
}

std::uint64_t FieldCtx::trace(std::uint64_t a) const {
    std::uint64_t t = 0, cur = a;
    for (int i = 0; i < m_; ++i) {
        t ^= cur;
        cur = frob(cur);
    }
    if (t > 1) throw ConsistencyError("FieldCtx::trace: value outside GF(2)");
    return t;
}

std::uint64_t FieldCtx::element_order(std::uint64_t a) const {
    if (a == 0) throw std::invalid_argument("FieldCtx::element_order: zero");
    std::uint64_t ord = order();
    for (auto& [p, e] : FactoredInt::of(order()).factors) {
        (void)e;
        while (ord % p == 0 && pow(a, ord / p) == 1) ord /= p;
    }
    return ord;
}

namespace {

const FieldCtx& same_ctx(const FieldElem& a, const FieldElem& b) {
    if (a.ctx == nullptr || a.ctx != b.ctx)
        throw std::invalid_argument("FieldElem: operands from different fields");
    return *a.ctx;
}

} // namespace

FieldElem operator+(FieldElem a, FieldElem b) {
    return {same_ctx(a, b), a.ctx->add(a.v, b.v)};
}

FieldElem operator*(FieldElem a, FieldElem b) {
    return {same_ctx(a, b), a.ctx->mul(a.v, b.v)};
}

FieldElem operator/(FieldElem a, FieldElem b) {
    return {same_ctx(a, b), a.ctx->mul(a.v, a.ctx->inv(b.v))};
}

FieldElem FieldElem::inverse() const {
    if (ctx == nullptr) throw std::invalid_argument("FieldElem: null context");
    return {*ctx, ctx->inv(v)};
}

FieldElem FieldElem::powed(std::uint64_t e) const {
    if (ctx == nullptr) throw std::invalid_argument("FieldElem: null context");
    return {*ctx, ctx->pow(v, e)};
}

std::uint64_t Embedding::apply(std::uint64_t a) const {
    std::uint64_t img = 0;
    for (int i = 0; a; ++i, a >>= 1)
        if (a & 1) img ^= basis_img[static_cast<std::size_t>(i)];
    return img;
}

std::uint64_t Embedding::pull_back(std::uint64_t b) const {
    auto it = preimage.find(b);
    if (it == preimage.end())
        throw std::invalid_argument("Embedding::pull_back: element not in subfield image");
    return it->second;
}

} // namespace goppa
