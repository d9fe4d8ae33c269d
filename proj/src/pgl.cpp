#include "goppa/pgl.hpp"

#include <queue>
#include <stdexcept>
#include <unordered_set>

#include "goppa/arith.hpp"
#include "goppa/errors.hpp"

namespace goppa {

namespace {

const FieldCtx& same_ctx(const ProjMat& A, const ProjMat& B) {
    if (A.ctx == nullptr || A.ctx != B.ctx)
        throw std::invalid_argument("ProjMat: operands from different fields");
    return *A.ctx;
}

void require_ctx(const ProjMat& A) {
    if (A.ctx == nullptr) throw std::invalid_argument("ProjMat: null context");
}

} // namespace

ProjMat::ProjMat(const FieldCtx& f, std::uint64_t a_, std::uint64_t b_, std::uint64_t c_,
                 std::uint64_t d_)
    : ctx(&f), a(a_), b(b_), c(c_), d(d_) {
    for (std::uint64_t v : {a, b, c, d})
        if (v >= f.size()) throw std::invalid_argument("ProjMat: entry outside field");
    std::uint64_t det = f.add(f.mul(a, d), f.mul(b, c));
    if (det == 0) throw std::invalid_argument("ProjMat: singular matrix");
    std::uint64_t first = a ? a : (b ? b : (c ? c : d));
    if (first != 1) {
        std::uint64_t s = f.inv(first);
        a = f.mul(a, s);
        b = f.mul(b, s);
        c = f.mul(c, s);
        d = f.mul(d, s);
    }
}

ProjMat mat_identity(const FieldCtx& f) { return ProjMat(f, 1, 0, 0, 1); }

ProjMat mat_mul(const ProjMat& A, const ProjMat& B) {
    const FieldCtx& f = same_ctx(A, B);
    return ProjMat(f, f.add(f.mul(A.a, B.a), f.mul(A.b, B.c)),
                   f.add(f.mul(A.a, B.b), f.mul(A.b, B.d)),
                   f.add(f.mul(A.c, B.a), f.mul(A.d, B.c)),
                   f.add(f.mul(A.c, B.b), f.mul(A.d, B.d)));
}

ProjMat mat_inv(const ProjMat& A) {
    require_ctx(A);
    return ProjMat(*A.ctx, A.d, A.b, A.c, A.a);
}

ProjMat mat_pow(ProjMat A, std::uint64_t e) {
    require_ctx(A);
    ProjMat r = mat_identity(*A.ctx);
    while (e) {
        if (e & 1) r = mat_mul(r, A);
        A = mat_mul(A, A);
        e >>= 1;
    }
    return r;
}

ProjMat mat_transpose(const ProjMat& A) {
    require_ctx(A);
    return ProjMat(*A.ctx, A.a, A.c, A.b, A.d);
}

ProjMat mat_frobenius(const ProjMat& A, int times) {
    require_ctx(A);
    std::uint64_t a = A.a, b = A.b, c = A.c, d = A.d;
    for (int t = 0; t < times; ++t) {
        a = A.ctx->frob(a);
        b = A.ctx->frob(b);
        c = A.ctx->frob(c);
        d = A.ctx->frob(d);
    }
    return ProjMat(*A.ctx, a, b, c, d);
}

std::uint64_t mat_order(const ProjMat& A) {
    require_ctx(A);
    ProjMat id = mat_identity(*A.ctx);
    ProjMat cur = A;
    std::uint64_t cap = 2 * A.ctx->size() + 4;
    for (std::uint64_t k = 1; k <= cap; ++k) {
        if (cur == id) return k;
        cur = mat_mul(cur, A);
    }
    throw ConsistencyError("mat_order: order exceeds group exponent bound");
}

std::uint64_t projmat_key(const ProjMat& A) {
    require_ctx(A);
    int m = A.ctx->m();
    if (4 * m > 64) throw CapacityError("projmat_key: entries exceed 64 bits");
    return (((A.a << m | A.b) << m | A.c) << m) | A.d;
}

std::string projmat_to_text(const ProjMat& A) {
    return std::to_string(A.a) + ";" + std::to_string(A.b) + ";" + std::to_string(A.c) + ";" +
           std::to_string(A.d);
}

ProjMat projmat_from_text(const FieldCtx& f, const std::string& text) {
    std::uint64_t v[4];
    std::size_t pos = 0;
    for (int i = 0; i < 4; ++i) {
        std::size_t sep = i < 3 ? text.find(';', pos) : text.size();
        if (sep == std::string::npos) throw UsageError("projmat_from_text: expected a;b;c;d");
        std::string tok = text.substr(pos, sep - pos);
        std::size_t used = 0;
        try {
            v[i] = std::stoull(tok, &used);
        } catch (const std::exception&) {
            throw UsageError("projmat_from_text: bad entry '" + tok + "'");
        }
        if (used != tok.size() || v[i] >= f.size())
            throw UsageError("projmat_from_text: bad entry '" + tok + "'");
        pos = sep + 1;
    }
    try {
        return ProjMat(f, v[0], v[1], v[2], v[3]);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

SemiLinear semi_mul(const SemiLinear& g, const SemiLinear& h) {
    const FieldCtx& f = same_ctx(g.mat, h.mat);
    int m = f.m();
    return {mat_mul(g.mat, mat_frobenius(h.mat, g.twist)), (g.twist + h.twist) % m};
}

SemiLinear semi_inv(const SemiLinear& g) {
    require_ctx(g.mat);
    int m = g.mat.ctx->m();
    int j = (m - g.twist) % m;
    return {mat_frobenius(mat_inv(g.mat), j), j};
}

ActTable::ActTable(const ProjMat& A, int r, bool circ) : ctx_(A.ctx), r_(r) {
    require_ctx(A);
    if (r < 1) throw std::invalid_argument("ActTable: degree must be >= 1");
    const FieldCtx& f = *ctx_;
    Poly num = circ ? Poly(f, {A.c, A.a}) : Poly(f, {A.b, A.d});
    Poly den = circ ? Poly(f, {A.d, A.b}) : Poly(f, {A.a, A.c});
    std::vector<Poly> num_pows{poly_const(f, 1)}, den_pows{poly_const(f, 1)};
    for (int i = 1; i <= r; ++i) {
        num_pows.push_back(poly_mul(num_pows.back(), num));
        den_pows.push_back(poly_mul(den_pows.back(), den));
    }
    rows_.assign(r + 1, std::vector<std::uint64_t>(r + 1, 0));
    for (int i = 0; i <= r; ++i) {
        Poly row = poly_mul(num_pows[i], den_pows[r - i]);
        for (int j = 0; j <= row.degree(); ++j)
            rows_[i][static_cast<std::size_t>(j)] = row.c[static_cast<std::size_t>(j)];
    }
}

Poly ActTable::apply(const Poly& f) const {
    if (f.ctx != ctx_) throw std::invalid_argument("ActTable::apply: wrong field");
    if (f.degree() != r_) throw std::invalid_argument("ActTable::apply: wrong degree");
    const FieldCtx& F = *ctx_;
    Poly out(F);
    out.c.assign(r_ + 1, 0);
    for (int i = 0; i <= r_; ++i) {
        std::uint64_t fi = f.c[static_cast<std::size_t>(i)];
        if (fi == 0) continue;
        const auto& row = rows_[static_cast<std::size_t>(i)];
        for (int j = 0; j <= r_; ++j)
            out.c[static_cast<std::size_t>(j)] ^= F.mul(fi, row[static_cast<std::size_t>(j)]);
    }
    out.normalize();
    if (out.is_zero()) throw ConsistencyError("ActTable::apply: action produced zero");
    return monic_normalize(out);
}

std::uint64_t ActTable::apply_key(std::uint64_t key) const {
    const FieldCtx& F = *ctx_;
    int m = F.m();
    if (m * r_ > 63) throw CapacityError("ActTable::apply_key: key space exceeds 63 bits");
    std::uint64_t mask = F.size() - 1;
    std::uint64_t acc[65] = {};
    for (int i = 0; i <= r_; ++i) {
        std::uint64_t fi = i == r_ ? 1 : (key >> (m * (r_ - 1 - i))) & mask;
        if (fi == 0) continue;
        const auto& row = rows_[static_cast<std::size_t>(i)];
        for (int j = 0; j <= r_; ++j) acc[j] ^= F.mul(fi, row[static_cast<std::size_t>(j)]);
    }
    std::uint64_t lead = acc[r_];
    if (lead == 0) throw ConsistencyError("ActTable::apply_key: degree dropped");
    std::uint64_t out = 0;
    if (lead == 1) {
        for (int i = 0; i < r_; ++i) out |= acc[i] << (m * (r_ - 1 - i));
    } else {
        std::uint64_t s = F.inv(lead);
        for (int i = 0; i < r_; ++i) out |= F.mul(acc[i], s) << (m * (r_ - 1 - i));
    }
    return out;
}

Poly act(const ProjMat& A, const Poly& f) {
    require_ctx(A);
    return ActTable(A, f.degree()).apply(f);
}

Poly act_circ(const ProjMat& A, const Poly& f) {
    require_ctx(A);
    return ActTable(A, f.degree(), true).apply(f);
}

Poly act_semilinear(const SemiLinear& g, const Poly& f) {
    return act(g.mat, coeff_frobenius(f, g.twist));
}

std::vector<ProjMat> enumerate_pgl(const FieldCtx& f) {
    if (f.m() > 7) throw CapacityError("enumerate_pgl: field too large to enumerate");
    std::uint64_t q = f.size();
    std::vector<ProjMat> out;
    out.reserve(q * q * q - q);
    for (std::uint64_t c = 1; c < q; ++c)
        for (std::uint64_t d = 0; d < q; ++d) out.emplace_back(f, 0, 1, c, d);
    for (std::uint64_t b = 0; b < q; ++b)
        for (std::uint64_t c = 0; c < q; ++c) {
            std::uint64_t bc = f.mul(b, c);
            for (std::uint64_t d = 0; d < q; ++d)
                if (d != bc) out.emplace_back(f, 1, b, c, d);
        }
    if (out.size() != q * q * q - q)
        throw ConsistencyError("enumerate_pgl: census does not match group order");
    return out;
}

std::vector<ProjMat> standard_generators(const FieldCtx& f) {
    std::vector<ProjMat> gens;
    gens.emplace_back(f, 1, 1, 0, 1);
    gens.emplace_back(f, 0, 1, 1, 0);
    if (f.m() > 1) gens.emplace_back(f, f.primitive_element(), 0, 0, 1);
    return gens;
}

std::vector<ProjMat> generated_closure(const FieldCtx& f, const std::vector<ProjMat>& gens) {
    if (f.m() > 7) throw CapacityError("generated_closure: field too large");
    std::unordered_set<std::uint64_t> seen;
    std::vector<ProjMat> out;
    std::queue<ProjMat> work;
    ProjMat id = mat_identity(f);
    seen.insert(projmat_key(id));
    out.push_back(id);
    work.push(id);
    while (!work.empty()) {
        ProjMat cur = work.front();
        work.pop();
        for (const ProjMat& g : gens) {
            ProjMat nxt = mat_mul(g, cur);
            if (seen.insert(projmat_key(nxt)).second) {
                out.push_back(nxt);
                work.push(nxt);
            }
        }
    }
    return out;
}

std::vector<ConjClass> conjugacy_classes(const FieldCtx& f) {
    if (2 * f.m() > 63) throw CapacityError("conjugacy_classes: quadratic extension too large");
    std::uint64_t q = f.size();
    std::vector<ConjClass> classes;
    classes.push_back({"identity", mat_identity(f), 1, 1});
    classes.push_back({"parabolic", ProjMat(f, 1, 1, 0, 1), q * q - 1, 2});

    for (std::uint64_t a = 2; a < q; ++a) {
        if (a > f.inv(a)) continue;
        classes.push_back({"diagonal", ProjMat(f, 1, 0, 0, a), q * (q + 1), f.element_order(a)});
    }

    FieldCtx f2(2 * f.m());
    Embedding emb = make_embedding(f, f2);
    std::uint64_t xi = f2.primitive_element();
    for (std::uint64_t i = 1; i <= q / 2; ++i) {
        std::uint64_t gamma = f2.pow(xi, (q - 1) * i);
        std::uint64_t norm = emb.pull_back(f2.pow(gamma, q + 1));
        std::uint64_t tr = emb.pull_back(f2.add(gamma, f2.pow(gamma, q)));
        std::uint64_t ord = f2.element_order(f2.pow(gamma, q - 1));
        classes.push_back({"elliptic", ProjMat(f, 0, 1, norm, tr), q * (q - 1), ord});
    }

    Big total = 0;
    for (const ConjClass& c : classes) total += c.size;
    if (total != Big(q) * q * q - q)
        throw ConsistencyError("conjugacy_classes: sizes do not sum to the group order");
    std::size_t expect = 2 + (q - 2) / 2 + q / 2;
    if (classes.size() != expect)
        throw ConsistencyError("conjugacy_classes: unexpected class count");
    return classes;
}

ProjMat random_projmat(const FieldCtx& f, std::mt19937_64& rng) {
    std::uint64_t mask = f.size() - 1;
    for (;;) {
        std::uint64_t a = rng() & mask, b = rng() & mask, c = rng() & mask, d = rng() & mask;
        if (f.add(f.mul(a, d), f.mul(b, c)) == 0) continue;
        return ProjMat(f, a, b, c, d);
    }
}

} // namespace goppa
