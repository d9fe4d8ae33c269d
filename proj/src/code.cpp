#include "goppa/code.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <utility>

#include "goppa/errors.hpp"
#include "goppa/pgl.hpp"

namespace goppa {

namespace {

bool get_bit(const std::vector<std::uint64_t>& row, std::size_t i) {
    return (row[i / 64] >> (i % 64)) & 1;
}

void set_bit(std::vector<std::uint64_t>& row, std::size_t i) {
    row[i / 64] ^= 1ull << (i % 64);
}

void xor_into(std::vector<std::uint64_t>& dst, const std::vector<std::uint64_t>& src) {
    for (std::size_t w = 0; w < dst.size(); ++w) dst[w] ^= src[w];
}

std::size_t row_weight(const std::vector<std::uint64_t>& row) {
    std::size_t w = 0;
    for (std::uint64_t word : row) w += std::popcount(word);
    return w;
}

bool rows_orthogonal(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < a.size(); ++w) acc ^= a[w] & b[w];
    return std::popcount(acc) % 2 == 0;
}

struct NullSpace {
    std::size_t rank = 0;
    std::vector<std::vector<std::uint64_t>> basis;
};

NullSpace null_space(std::vector<std::vector<std::uint64_t>> rows, std::size_t cols) {
    const std::size_t words = (cols + 63) / 64;
    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
        std::size_t hit = rows.size();
        for (std::size_t i = rank; i < rows.size(); ++i) {
            if (get_bit(rows[i], col)) {
                hit = i;
                break;
            }
        }
        if (hit == rows.size()) continue;
        std::swap(rows[rank], rows[hit]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i != rank && get_bit(rows[i], col)) xor_into(rows[i], rows[rank]);
        }
        pivot_col.push_back(col);
        ++rank;
    }
    std::vector<char> is_pivot(cols, 0);
    for (std::size_t p : pivot_col) is_pivot[p] = 1;

    NullSpace out;
    out.rank = rank;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<std::uint64_t> v(words, 0);
        set_bit(v, free);
        for (std::size_t k = 0; k < rank; ++k) {
            if (get_bit(rows[k], free)) set_bit(v, pivot_col[k]);
        }
        out.basis.push_back(std::move(v));
    }
    if (out.basis.size() != cols - rank) {
        throw ConsistencyError("null space dimension disagrees with rank");
    }
    return out;
}

Poly lift_poly(const Embedding& emb, const Poly& g) {
    Poly out(*emb.big);
    out.c.reserve(g.c.size());
    for (std::uint64_t coeff : g.c) out.c.push_back(emb.apply(coeff));
    out.normalize();
    return out;
}

std::uint64_t element_degree(const FieldCtx& big, std::uint64_t a, std::uint64_t n) {
    std::uint64_t b = a;
    for (std::uint64_t d = 1; d * n <= static_cast<std::uint64_t>(big.m()); ++d) {
        for (std::uint64_t j = 0; j < n; ++j) b = big.frob(b);
        if (b == a) return d;
    }
    throw ConsistencyError("element has no degree over the subfield");
}

} // namespace

std::vector<std::uint64_t> field_roots(const Embedding& emb, const Poly& g) {
    if (g.ctx != emb.sub) throw UsageError("polynomial is not over the embedded subfield");
    return find_roots(lift_poly(emb, g));
}

Poly minimal_polynomial(const Embedding& emb, std::uint64_t alpha) {
    const FieldCtx& big = *emb.big;
    const std::uint64_t n = static_cast<std::uint64_t>(emb.sub->m());
    Poly prod = poly_const(big, 1);
    std::uint64_t conj = alpha;
    for (std::uint64_t d = element_degree(big, alpha, n); d > 0; --d) {
        prod = poly_mul(prod, Poly(big, {conj, 1}));
        for (std::uint64_t j = 0; j < n; ++j) conj = big.frob(conj);
    }
    if (conj != alpha) throw ConsistencyError("conjugate orbit did not close");
    Poly out(*emb.sub);
    out.c.reserve(prod.c.size());
    for (std::uint64_t coeff : prod.c) out.c.push_back(emb.pull_back(coeff));
    out.normalize();
    return out;
}

BinaryCode build_goppa_with_support(const Embedding& emb, const Poly& g, std::uint64_t alpha,
                                    const std::vector<std::uint64_t>& support) {
    const FieldCtx& small = *emb.sub;
    const FieldCtx& big = *emb.big;
    if (g.ctx != emb.sub) throw UsageError("polynomial is not over the embedded subfield");
    if (g.degree() < 2 || !g.is_monic() || !is_irreducible(g)) {
        throw UsageError("goppa polynomial must be monic irreducible of degree at least 2");
    }
    const Poly lifted = lift_poly(emb, g);
    if (lifted.eval(alpha) != 0) throw UsageError("alpha is not a root of the goppa polynomial");

    const std::size_t q = small.size();
    if (support.size() != q) throw UsageError("support must list every field element once");
    std::vector<char> seen(q, 0);
    for (std::uint64_t s : support) {
        if (s >= q || seen[s]) throw UsageError("support must list every field element once");
        seen[s] = 1;
    }

    const std::size_t words = (q + 63) / 64;
    std::vector<std::vector<std::uint64_t>> parity(big.m(),
                                                   std::vector<std::uint64_t>(words, 0));
    for (std::size_t i = 0; i < q; ++i) {
        const std::uint64_t h = big.inv(alpha ^ emb.apply(support[i]));
        for (int b = 0; b < big.m(); ++b) {
            if ((h >> b) & 1) set_bit(parity[b], i);
        }
    }

    NullSpace ker = null_space(parity, q);
    for (const auto& v : ker.basis) {
        for (const auto& row : parity) {
            if (!rows_orthogonal(v, row)) {
                throw ConsistencyError("kernel basis fails the parity check");
            }
        }
    }

    BinaryCode code;
    code.length = q;
    code.basis = std::move(ker.basis);
    return code;
}

BinaryCode build_goppa(const Embedding& emb, const Poly& g, std::uint64_t alpha) {
    std::vector<std::uint64_t> support(emb.sub->size());
    for (std::size_t i = 0; i < support.size(); ++i) support[i] = i;
    return build_goppa_with_support(emb, g, alpha, support);
}

BinaryCode extend(const BinaryCode& code) {
    BinaryCode out;
    out.length = code.length + 1;
    const std::size_t words = out.words();
    out.basis.reserve(code.basis.size());
    for (const auto& row : code.basis) {
        std::vector<std::uint64_t> next = row;
        next.resize(words, 0);
        if (row_weight(row) % 2 == 1) set_bit(next, code.length);
        out.basis.push_back(std::move(next));
    }
    return out;
}

std::map<std::size_t, std::uint64_t> weight_enumerator(const BinaryCode& code, int cap_dim) {
    const std::size_t k = code.dimension();
    if (k > static_cast<std::size_t>(cap_dim)) {
        throw CapacityError("weight enumeration capped at dimension " + std::to_string(cap_dim));
    }
    std::map<std::size_t, std::uint64_t> hist;
    hist[0] = 1;
    std::vector<std::uint64_t> cur(code.words(), 0);
    const std::uint64_t total = 1ull << k;
    for (std::uint64_t msg = 1; msg < total; ++msg) {
        xor_into(cur, code.basis[std::countr_zero(msg)]);
        ++hist[row_weight(cur)];
    }
    std::uint64_t mass = 0;
    for (const auto& [w, count] : hist) mass += count;
    if (mass != total) throw ConsistencyError("weight histogram mass is not 2^dimension");
    return hist;
}

EquivalenceReport equivalence_invariant_check(std::uint64_t n, std::uint64_t r, int trials,
                                              std::uint64_t seed) {
    if (n < 2 || r < 2) throw UsageError("equivalence check needs n >= 2 and r >= 2");
    if (trials < 1) throw UsageError("equivalence check needs at least one trial");
    if (n * r > 24) throw CapacityError("equivalence check capped at extension degree 24");

    const FieldCtx small(static_cast<int>(n));
    const FieldCtx big(static_cast<int>(n * r));
    const Embedding emb = make_embedding(small, big);
    std::mt19937_64 rng(seed);

    EquivalenceReport report;
    report.n = n;
    report.r = r;
    report.trials = trials;

    for (int t = 0; t < trials; ++t) {
        std::uint64_t alpha;
        do {
            alpha = rng() % big.size();
        } while (element_degree(big, alpha, n) != r);

        const ProjMat A = random_projmat(small, rng);
        const std::uint64_t twist = rng() % n;
        std::uint64_t gamma = alpha;
        for (std::uint64_t j = 0; j < twist; ++j) gamma = big.frob(gamma);
        const std::uint64_t num = big.mul(emb.apply(A.a), gamma) ^ emb.apply(A.b);
        const std::uint64_t den = big.mul(emb.apply(A.c), gamma) ^ emb.apply(A.d);
        const std::uint64_t beta = big.mul(num, big.inv(den));
        if (element_degree(big, beta, n) != r) {
            throw ConsistencyError("transported root left the degree-r locus");
        }

        const BinaryCode ca = extend(build_goppa(emb, minimal_polynomial(emb, alpha), alpha));
        const BinaryCode cb = extend(build_goppa(emb, minimal_polynomial(emb, beta), beta));
        const auto wa = weight_enumerator(ca);
        const auto wb = weight_enumerator(cb);
        if (t == 0) {
            report.dimension = ca.dimension();
            report.reference = wa;
        }
        if (wa == wb) {
            ++report.matching;
        } else if (report.failing_detail.empty()) {
            report.failing_detail = "trial " + std::to_string(t) + ": alpha=" +
                                    std::to_string(alpha) + " beta=" + std::to_string(beta) +
                                    " enumerators differ";
        }
    }
    return report;
}

} // namespace goppa
