#include "goppa/poly.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <thread>

#include "goppa/arith.hpp"
#include "goppa/errors.hpp"
#include "goppa/gf2x.hpp"

namespace goppa {

namespace {

const FieldCtx& same_ctx(const Poly& a, const Poly& b) {
    if (a.ctx == nullptr || a.ctx != b.ctx)
        throw std::invalid_argument("Poly: operands from different fields");
    return *a.ctx;
}

void require_ctx(const Poly& a) {
    if (a.ctx == nullptr) throw std::invalid_argument("Poly: null context");
}

} // namespace

Poly::Poly(const FieldCtx& f, std::vector<std::uint64_t> coeffs) : ctx(&f), c(std::move(coeffs)) {
    for (std::uint64_t v : c)
        if (v >= f.size()) throw std::invalid_argument("Poly: coefficient outside field");
    normalize();
}

void Poly::normalize() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

std::uint64_t Poly::lead() const {
    if (c.empty()) throw std::invalid_argument("Poly::lead: zero polynomial");
    return c.back();
}

std::uint64_t Poly::eval(std::uint64_t x) const {
    require_ctx(*this);
    std::uint64_t acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = ctx->add(ctx->mul(acc, x), c[i]);
    return acc;
}

Poly poly_x(const FieldCtx& f) { return Poly(f, {0, 1}); }

Poly poly_const(const FieldCtx& f, std::uint64_t v) { return Poly(f, {v}); }

Poly poly_add(const Poly& a, const Poly& b) {
    const FieldCtx& f = same_ctx(a, b);
    Poly r(f);
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.coeff(i) ^ b.coeff(i);
    r.normalize();
    return r;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    const FieldCtx& f = same_ctx(a, b);
    if (a.is_zero() || b.is_zero()) return Poly(f);
    Poly r(f);
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    if (!f.uses_tables()) {
        const std::uint64_t M = f.modulus();
        for (std::size_t i = 0; i < a.c.size(); ++i) {
            std::uint64_t ai = a.c[i];
            if (ai == 0) continue;
            std::size_t j = 0;
            for (; j + 4 <= b.c.size(); j += 4) {
                std::uint64_t av[4] = {ai, ai, ai, ai};
                gf2x::U128 pr[4];
                gf2x::mul64_batch4(av, &b.c[j], pr);
                for (int k = 0; k < 4; ++k) r.c[i + j + k] ^= gf2x::mod(pr[k], M);
            }
            for (; j < b.c.size(); ++j) r.c[i + j] ^= gf2x::mulmod(ai, b.c[j], M);
        }
    } else {
        for (std::size_t i = 0; i < a.c.size(); ++i) {
            std::uint64_t ai = a.c[i];
            if (ai == 0) continue;
            for (std::size_t j = 0; j < b.c.size(); ++j)
                r.c[i + j] ^= f.mul(ai, b.c[j]);
        }
    }
    r.normalize();
    return r;
}

Poly poly_scale(const Poly& a, std::uint64_t s) {
    require_ctx(a);
    Poly r(*a.ctx);
    r.c.reserve(a.c.size());
    for (std::uint64_t v : a.c) r.c.push_back(a.ctx->mul(v, s));
    r.normalize();
    return r;
}

std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
    const FieldCtx& f = same_ctx(a, b);
    if (b.is_zero()) throw std::invalid_argument("poly_divmod: division by zero");
    if (a.degree() < b.degree()) return {Poly(f), a};
    Poly q(f), rem = a;
    q.c.assign(static_cast<std::size_t>(a.degree() - b.degree()) + 1, 0);
    std::uint64_t invlead = f.inv(b.lead());
    for (int i = a.degree(); i >= b.degree(); --i) {
        std::uint64_t t = f.mul(rem.coeff(static_cast<std::size_t>(i)), invlead);
        if (t == 0) continue;
        std::size_t off = static_cast<std::size_t>(i - b.degree());
        q.c[off] = t;
        for (std::size_t j = 0; j < b.c.size(); ++j)
            rem.c[off + j] ^= f.mul(t, b.c[j]);
    }
    q.normalize();
    rem.normalize();
    return {q, rem};
}

Poly poly_mod(const Poly& a, const Poly& b) { return poly_divmod(a, b).second; }

Poly poly_divexact(const Poly& a, const Poly& b) {
    auto [q, r] = poly_divmod(a, b);
    if (!r.is_zero()) throw ConsistencyError("poly_divexact: nonzero remainder");
    return q;
}

Poly monic_normalize(const Poly& a) {
    require_ctx(a);
    if (a.is_zero()) throw std::invalid_argument("monic_normalize: zero polynomial");
    if (a.is_monic()) return a;
    return poly_scale(a, a.ctx->inv(a.lead()));
}

Poly poly_gcd(Poly a, Poly b) {
    same_ctx(a, b);
    while (!b.is_zero()) {
        Poly r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return monic_normalize(a);
}

Poly poly_inverse_mod(const Poly& a, const Poly& mod) {
    const FieldCtx& f = same_ctx(a, mod);
    if (mod.degree() < 1) throw std::invalid_argument("poly_inverse_mod: modulus must have degree >= 1");
    Poly r0 = mod, r1 = poly_mod(a, mod);
    Poly t0(f), t1 = poly_const(f, 1);
    while (!r1.is_zero()) {
        auto [q, r2] = poly_divmod(r0, r1);
        Poly t2 = poly_add(t0, poly_mul(q, t1));
        r0 = std::move(r1);
        r1 = std::move(r2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.degree() != 0)
        throw std::invalid_argument("poly_inverse_mod: element not invertible");
    return poly_scale(t0, f.inv(r0.c[0]));
}

Poly x_pow2k_mod(std::uint64_t k, const Poly& f) {
    require_ctx(f);
    if (f.degree() < 1) throw std::invalid_argument("x_pow2k_mod: modulus must have degree >= 1");
    Poly s = poly_mod(poly_x(*f.ctx), f);
    for (std::uint64_t i = 0; i < k; ++i) s = poly_mod(poly_mul(s, s), f);
    return s;
}

Poly coeff_frobenius(const Poly& f, int times) {
    require_ctx(f);
    Poly r = f;
    for (std::uint64_t& v : r.c)
        for (int t = 0; t < times; ++t) v = f.ctx->frob(v);
    r.normalize();
    return r;
}

bool is_irreducible(const Poly& f) {
    require_ctx(f);
    int r = f.degree();
    if (r < 1) return false;
    if (r == 1) return true;
    if (f.coeff(0) == 0) return false;
    const FieldCtx& F = *f.ctx;
    Poly g = monic_normalize(f);
    std::uint64_t n = static_cast<std::uint64_t>(F.m());
    std::set<std::uint64_t> checks{n};
    for (auto& [p, e] : FactoredInt::of(static_cast<std::uint64_t>(r)).factors) {
        (void)e;
        checks.insert(n * (static_cast<std::uint64_t>(r) / p));
    }
    Poly xp = poly_mod(poly_x(F), g);
    Poly s = xp;
    std::uint64_t total = n * static_cast<std::uint64_t>(r);
    for (std::uint64_t i = 1; i <= total; ++i) {
        s = poly_mod(poly_mul(s, s), g);
        if (i == total) return s == xp;
        if (checks.count(i) && poly_gcd(poly_add(s, xp), g).degree() != 0) return false;
    }
    return false;
}

bool divides_x2r_x(const Poly& f) {
    require_ctx(f);
    if (f.degree() < 1) throw std::invalid_argument("divides_x2r_x: degree must be >= 1");
    Poly g = monic_normalize(f);
    Poly s = x_pow2k_mod(static_cast<std::uint64_t>(g.degree()), g);
    return s == poly_mod(poly_x(*f.ctx), g);
}

std::uint64_t pack_key(const Poly& f) {
    require_ctx(f);
    if (!f.is_monic()) throw std::invalid_argument("pack_key: polynomial must be monic");
    int m = f.ctx->m();
    int r = f.degree();
    if (r < 1 || m * r > 63) throw CapacityError("pack_key: key space exceeds 63 bits");
    std::uint64_t key = 0;
    for (int i = 0; i < r; ++i)
        key |= f.coeff(static_cast<std::size_t>(i)) << (m * (r - 1 - i));
    return key;
}

Poly unpack_key(const FieldCtx& f, std::uint64_t r, std::uint64_t key) {
    int m = f.m();
    if (r < 1 || m * r > 63) throw CapacityError("unpack_key: key space exceeds 63 bits");
    Poly p(f);
    p.c.assign(r + 1, 0);
    p.c[r] = 1;
    std::uint64_t mask = f.size() - 1;
    for (std::uint64_t i = 0; i < r; ++i)
        p.c[i] = (key >> (m * (r - 1 - i))) & mask;
    return p;
}

std::string poly_to_text(const Poly& f) {
    if (f.is_zero()) return "0";
    std::string s;
    for (std::size_t i = 0; i < f.c.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(f.c[i]);
    }
    return s;
}

Poly poly_from_text(const FieldCtx& f, const std::string& text) {
    std::vector<std::uint64_t> coeffs;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (tok.empty()) throw UsageError("poly_from_text: empty coefficient");
        std::size_t used = 0;
        std::uint64_t v;
        try {
            v = std::stoull(tok, &used);
        } catch (const std::exception&) {
            throw UsageError("poly_from_text: bad coefficient '" + tok + "'");
        }
        if (used != tok.size()) throw UsageError("poly_from_text: bad coefficient '" + tok + "'");
        if (v >= f.size()) throw UsageError("poly_from_text: coefficient outside field");
        coeffs.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return Poly(f, std::move(coeffs));
}

IrreducibleIter::IrreducibleIter(const FieldCtx& f, std::uint64_t r) : ctx_(&f), r_(r) {
    if (r < 1 || f.m() * r > 63) throw CapacityError("IrreducibleIter: key space exceeds 63 bits");
    end_ = 1ull << (static_cast<std::uint64_t>(f.m()) * r);
}

std::optional<std::uint64_t> IrreducibleIter::next_key() {
    while (cur_ < end_) {
        std::uint64_t key = cur_++;
        if (is_irreducible(unpack_key(*ctx_, r_, key))) return key;
    }
    return std::nullopt;
}

std::optional<Poly> IrreducibleIter::next() {
    auto key = next_key();
    if (!key) return std::nullopt;
    return unpack_key(*ctx_, r_, *key);
}

namespace {

template <typename Fn>
void scan_key_range(const FieldCtx& f, std::uint64_t r, std::uint64_t lo, std::uint64_t hi, Fn&& fn) {
    for (std::uint64_t key = lo; key < hi; ++key)
        if (is_irreducible(unpack_key(f, r, key))) fn(key);
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> key_chunks(std::uint64_t end, int workers) {
    if (workers < 1) throw std::invalid_argument("workers must be >= 1");
    std::uint64_t w = static_cast<std::uint64_t>(workers);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> chunks;
    std::uint64_t step = end / w, extra = end % w, lo = 0;
    for (std::uint64_t i = 0; i < w; ++i) {
        std::uint64_t hi = lo + step + (i < extra ? 1 : 0);
        chunks.emplace_back(lo, hi);
        lo = hi;
    }
    return chunks;
}

} // namespace

std::uint64_t count_irreducible_scan(const FieldCtx& f, std::uint64_t r, int workers) {
    if (r < 1 || f.m() * r > 63) throw CapacityError("count_irreducible_scan: key space exceeds 63 bits");
    std::uint64_t end = 1ull << (static_cast<std::uint64_t>(f.m()) * r);
    auto chunks = key_chunks(end, workers);
    std::vector<std::uint64_t> partial(chunks.size(), 0);
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < chunks.size(); ++i) {
        pool.emplace_back([&, i] {
            std::uint64_t count = 0;
            scan_key_range(f, r, chunks[i].first, chunks[i].second,
                           [&](std::uint64_t) { ++count; });
            partial[i] = count;
        });
    }
    for (auto& t : pool) t.join();
    std::uint64_t total = 0;
    for (std::uint64_t v : partial) total += v;
    return total;
}

std::vector<std::uint64_t> irreducible_keys(const FieldCtx& f, std::uint64_t r, int workers,
                                            int cap_log2) {
    if (r < 1 || f.m() * r > 63) throw CapacityError("irreducible_keys: key space exceeds 63 bits");
    Big expect = irreducible_count(Big(1) << f.m(), r);
    if (expect > (Big(1) << cap_log2))
        throw CapacityError("irreducible_keys: population exceeds capacity cap");
    std::uint64_t end = 1ull << (static_cast<std::uint64_t>(f.m()) * r);
    auto chunks = key_chunks(end, workers);
    std::vector<std::vector<std::uint64_t>> partial(chunks.size());
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < chunks.size(); ++i) {
        pool.emplace_back([&, i] {
            scan_key_range(f, r, chunks[i].first, chunks[i].second,
                           [&](std::uint64_t key) { partial[i].push_back(key); });
        });
    }
    for (auto& t : pool) t.join();
    std::vector<std::uint64_t> keys;
    for (auto& part : partial) keys.insert(keys.end(), part.begin(), part.end());
    if (Big(keys.size()) != expect)
        throw ConsistencyError("irreducible_keys: scan count disagrees with closed form");
    return keys;
}

namespace {

// Splits a squarefree monic product of distinct linear factors by gcds with
// trace polynomials of c*x for c = 1, 2, ...
void split_linear(const Poly& g, std::vector<std::uint64_t>& out) {
    const FieldCtx& F = *g.ctx;
    if (g.degree() == 0) return;
    if (g.degree() == 1) {
        out.push_back(g.c[0]);
        return;
    }
    for (std::uint64_t cval = 1; cval < F.size(); ++cval) {
        Poly t = poly_mod(Poly(F, {0, cval}), g);
        Poly acc = t;
        for (int i = 1; i < F.m(); ++i) {
            t = poly_mod(poly_mul(t, t), g);
            acc = poly_add(acc, t);
        }
        Poly d = poly_gcd(acc, g);
        if (d.degree() > 0 && d.degree() < g.degree()) {
            split_linear(d, out);
            split_linear(poly_divexact(g, d), out);
            return;
        }
    }
    throw ConsistencyError("split_linear: no separating trace found");
}

} // namespace

std::vector<std::uint64_t> find_roots(const Poly& f) {
    require_ctx(f);
    if (f.is_zero()) throw std::invalid_argument("find_roots: zero polynomial");
    const FieldCtx& F = *f.ctx;
    Poly g = monic_normalize(f);
    std::vector<std::uint64_t> roots;
    if (g.degree() == 0) return roots;
    Poly xq = x_pow2k_mod(static_cast<std::uint64_t>(F.m()), g);
    Poly lin = poly_gcd(poly_add(xq, poly_mod(poly_x(F), g)), g);
    if (lin.degree() > 0) split_linear(lin, roots);
    std::sort(roots.begin(), roots.end());
    return roots;
}

Embedding make_embedding(const FieldCtx& sub, const FieldCtx& big) {
    if (big.m() % sub.m() != 0)
        throw std::invalid_argument("make_embedding: target degree not a multiple of source degree");
    if (sub.m() > 25) throw CapacityError("make_embedding: source field too large to tabulate");
    Poly lifted(big);
    for (std::uint64_t mod = sub.modulus(); mod; mod >>= 1) lifted.c.push_back(mod & 1);
    lifted.normalize();
    std::vector<std::uint64_t> roots = find_roots(lifted);
    if (roots.empty()) throw ConsistencyError("make_embedding: modulus has no root in target");
    Embedding e;
    e.sub = &sub;
    e.big = &big;
    e.root = roots.front();
    std::uint64_t img = 1;
    for (int i = 0; i < sub.m(); ++i) {
        e.basis_img.push_back(img);
        img = big.mul(img, e.root);
    }
    for (std::uint64_t a = 0; a < sub.size(); ++a) e.preimage[e.apply(a)] = a;
    for (std::uint64_t a = 1; a < std::min<std::uint64_t>(sub.size(), 64); ++a)
        for (std::uint64_t b = a; b < std::min<std::uint64_t>(sub.size(), 64); ++b)
            if (e.apply(sub.mul(a, b)) != big.mul(e.apply(a), e.apply(b)))
                throw ConsistencyError("make_embedding: image map is not multiplicative");
    return e;
}

} // namespace goppa
