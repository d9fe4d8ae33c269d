#include "doctest.h"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "goppa/code.hpp"
#include "goppa/errors.hpp"
#include "goppa/field.hpp"
#include "goppa/poly.hpp"

using namespace goppa;

namespace {

Poly first_irreducible(const FieldCtx& f, std::uint64_t r) {
    IrreducibleIter it(f, r);
    return unpack_key(f, r, it.next_key().value());
}

std::size_t word_weight(const std::vector<std::uint64_t>& row) {
    std::size_t w = 0;
    for (std::uint64_t word : row) w += std::popcount(word);
    return w;
}

std::vector<std::uint64_t> random_codeword(const BinaryCode& code, std::mt19937_64& rng) {
    std::vector<std::uint64_t> word(code.words(), 0);
    for (const auto& row : code.basis) {
        if (rng() & 1) {
            for (std::size_t w = 0; w < word.size(); ++w) word[w] ^= row[w];
        }
    }
    return word;
}

std::uint64_t enumerator_mass(const std::map<std::size_t, std::uint64_t>& hist) {
    std::uint64_t mass = 0;
    for (const auto& [w, count] : hist) mass += count;
    return mass;
}

} // namespace

TEST_CASE("goppa code at n=5 r=3 has the expected shape") {
    FieldCtx small(5), big(15);
    Embedding emb = make_embedding(small, big);
    Poly g = first_irreducible(small, 3);

    auto roots = field_roots(emb, g);
    REQUIRE(roots.size() == 3);
    CHECK(std::is_sorted(roots.begin(), roots.end()));

    BinaryCode code = build_goppa(emb, g, roots[0]);
    CHECK(code.length == 32);
    CHECK(code.dimension() >= 32 - 15);
    CHECK(code.dimension() == 17);

    auto hist = weight_enumerator(code);
    CHECK(enumerator_mass(hist) == 1ull << 17);
    CHECK(hist.at(0) == 1);

    SUBCASE("conjugate roots of the same polynomial give equal invariants") {
        for (std::size_t k = 1; k < roots.size(); ++k) {
            BinaryCode other = build_goppa(emb, g, roots[k]);
            CHECK(other.dimension() == code.dimension());
            CHECK(weight_enumerator(other) == hist);
        }
    }

    SUBCASE("rebuilding with the same root reproduces the same basis") {
        BinaryCode again = build_goppa(emb, g, roots[0]);
        CHECK(again.basis == code.basis);
    }
}

TEST_CASE("codewords have zero syndrome mod g") {
    FieldCtx small(5), big(15);
    Embedding emb = make_embedding(small, big);
    IrreducibleIter it(small, 3);
    it.next_key();
    it.next_key();
    Poly g = unpack_key(small, 3, it.next_key().value());
    BinaryCode code = build_goppa(emb, g, field_roots(emb, g)[0]);

    std::mt19937_64 rng(2026);
    Poly x = poly_x(small);
    for (int t = 0; t < 10; ++t) {
        auto word = random_codeword(code, rng);
        Poly syndrome(small);
        for (std::size_t i = 0; i < code.length; ++i) {
            if ((word[i / 64] >> (i % 64)) & 1) {
                syndrome = poly_add(syndrome, poly_inverse_mod(poly_add(x, poly_const(small, i)), g));
            }
        }
        CHECK(poly_mod(syndrome, g).is_zero());
    }
}

TEST_CASE("minimal polynomial inverts root finding") {
    FieldCtx small(5), big(15);
    Embedding emb = make_embedding(small, big);

    CHECK(minimal_polynomial(emb, 0) == poly_x(small));
    CHECK(minimal_polynomial(emb, emb.apply(7)) == Poly(small, {7, 1}));

    IrreducibleIter it(small, 3);
    for (int k = 0; k < 5; ++k) {
        Poly g = unpack_key(small, 3, it.next_key().value());
        for (std::uint64_t root : field_roots(emb, g)) {
            CHECK(minimal_polynomial(emb, root) == g);
        }
    }
}

TEST_CASE("extension appends an overall parity coordinate") {
    FieldCtx small(5), big(15);
    Embedding emb = make_embedding(small, big);
    Poly g = first_irreducible(small, 3);
    BinaryCode code = build_goppa(emb, g, field_roots(emb, g)[0]);
    BinaryCode ext = extend(code);

    CHECK(ext.length == code.length + 1);
    CHECK(ext.dimension() == code.dimension());
    for (const auto& row : ext.basis) CHECK(word_weight(row) % 2 == 0);

    std::mt19937_64 rng(55);
    for (int t = 0; t < 20; ++t) CHECK(word_weight(random_codeword(ext, rng)) % 2 == 0);

    SUBCASE("a word boundary gets a fresh word") {
        BinaryCode at64;
        at64.length = 64;
        at64.basis = {std::vector<std::uint64_t>{0b111}};
        BinaryCode wide = extend(at64);
        CHECK(wide.words() == 2);
        CHECK(wide.basis[0] == std::vector<std::uint64_t>{0b111, 1});
    }
}

TEST_CASE("weight enumerator handles small hand-checked codes") {
    BinaryCode zero;
    zero.length = 3;
    CHECK(weight_enumerator(zero) == std::map<std::size_t, std::uint64_t>{{0, 1}});

    BinaryCode parity;
    parity.length = 3;
    parity.basis = {std::vector<std::uint64_t>{0b011}, std::vector<std::uint64_t>{0b110}};
    CHECK(weight_enumerator(parity) ==
          std::map<std::size_t, std::uint64_t>{{0, 1}, {2, 3}});

    BinaryCode unit;
    unit.length = 30;
    for (std::size_t i = 0; i < 30; ++i) {
        unit.basis.push_back(std::vector<std::uint64_t>{1ull << i});
    }
    CHECK_THROWS_AS(weight_enumerator(unit), CapacityError);
    CHECK_THROWS_AS(weight_enumerator(parity, 1), CapacityError);
}

TEST_CASE("permuting the support leaves the enumerator unchanged") {
    FieldCtx small(5), big(15);
    Embedding emb = make_embedding(small, big);
    Poly g = first_irreducible(small, 3);
    std::uint64_t alpha = field_roots(emb, g)[0];
    BinaryCode base = build_goppa(emb, g, alpha);

    std::vector<std::uint64_t> support(32);
    std::iota(support.begin(), support.end(), 0);
    std::mt19937_64 rng(808);
    std::shuffle(support.begin(), support.end(), rng);
    BinaryCode shuffled = build_goppa_with_support(emb, g, alpha, support);

    CHECK(shuffled.dimension() == base.dimension());
    CHECK(weight_enumerator(extend(shuffled)) == weight_enumerator(extend(base)));
}

TEST_CASE("frobenius transport of the root preserves the invariants") {
    FieldCtx small(5), big(15);
    Embedding emb = make_embedding(small, big);
    Poly g = first_irreducible(small, 3);
    std::uint64_t alpha = field_roots(emb, g)[0];
    std::uint64_t beta = big.frob(alpha);

    Poly gb = minimal_polynomial(emb, beta);
    CHECK(gb.degree() == 3);
    BinaryCode ca = build_goppa(emb, g, alpha);
    BinaryCode cb = build_goppa(emb, gb, beta);
    CHECK(ca.dimension() == cb.dimension());
    CHECK(weight_enumerator(extend(ca)) == weight_enumerator(extend(cb)));
}

TEST_CASE("random semilinear transports preserve the extended enumerator") {
    auto report = equivalence_invariant_check(5, 3, 8, 424242);
    CHECK(report.ok());
    CHECK(report.matching == 8);
    CHECK(report.dimension == 17);
    CHECK(report.failing_detail.empty());
    CHECK(enumerator_mass(report.reference) == 1ull << 17);

    SUBCASE("the report is deterministic in the seed") {
        auto again = equivalence_invariant_check(5, 3, 8, 424242);
        CHECK(again.reference == report.reference);
        CHECK(again.matching == report.matching);
    }

    SUBCASE("other desk-scale parameters pass too") {
        CHECK(equivalence_invariant_check(2, 3, 4, 7).ok());
        CHECK(equivalence_invariant_check(3, 4, 3, 7).ok());
    }
}

TEST_CASE("dimension never drops below length minus rn") {
    for (std::uint64_t r : {2ull, 3ull, 4ull}) {
        FieldCtx small(5), big(static_cast<int>(5 * r));
        Embedding emb = make_embedding(small, big);
        Poly g = first_irreducible(small, r);
        BinaryCode code = build_goppa(emb, g, field_roots(emb, g)[0]);
        CAPTURE(r);
        CHECK(code.dimension() >= 32 - 5 * r);
        CHECK(enumerator_mass(weight_enumerator(code)) == 1ull << code.dimension());
    }
}

TEST_CASE("bad goppa inputs are rejected") {
    FieldCtx small(5), big(15);
    Embedding emb = make_embedding(small, big);
    Poly g = first_irreducible(small, 3);
    std::uint64_t alpha = field_roots(emb, g)[0];

    CHECK_THROWS_AS(build_goppa(emb, g, 0), UsageError);
    CHECK_THROWS_AS(build_goppa(emb, Poly(small, {0, 0, 1}), alpha), UsageError);
    CHECK_THROWS_AS(build_goppa(emb, Poly(small, {1, 1}), alpha), UsageError);

    std::vector<std::uint64_t> short_support(31);
    std::iota(short_support.begin(), short_support.end(), 0);
    CHECK_THROWS_AS(build_goppa_with_support(emb, g, alpha, short_support), UsageError);
    std::vector<std::uint64_t> repeated(32, 5);
    CHECK_THROWS_AS(build_goppa_with_support(emb, g, alpha, repeated), UsageError);

    CHECK_THROWS_AS(equivalence_invariant_check(5, 3, 0, 1), UsageError);
    CHECK_THROWS_AS(equivalence_invariant_check(1, 3, 1, 1), UsageError);
    CHECK_THROWS_AS(equivalence_invariant_check(5, 5, 1, 1), CapacityError);
}
