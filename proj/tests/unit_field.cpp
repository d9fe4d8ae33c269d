#include "doctest.h"

#include <cstdint>
#include <random>
#include <stdexcept>

#include "goppa/field.hpp"
#include "goppa/gf2x.hpp"

using namespace goppa;

namespace {

void check_axioms(const FieldCtx& f, int samples) {
    std::mt19937_64 rng(42 + f.m());
    auto draw = [&] { return rng() & (f.size() - 1); };
    for (int i = 0; i < samples; ++i) {
        std::uint64_t a = draw(), b = draw(), c = draw();
        CHECK(f.mul(a, b) == f.mul(b, a));
        CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
        CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        CHECK(f.frob(f.add(a, b)) == f.add(f.frob(a), f.frob(b)));
        CHECK(f.mul(a, 1) == a);
        if (a != 0) {
            CHECK(f.mul(a, f.inv(a)) == 1);
            CHECK(f.pow(a, f.order()) == 1);
        }
        std::uint64_t fr = a;
        for (int k = 0; k < f.m(); ++k) fr = f.frob(fr);
        CHECK(fr == a);
        CHECK(f.trace(a) <= 1);
    }
}

} // namespace

TEST_CASE("field context validation") {
    CHECK_THROWS_AS(FieldCtx(0), std::invalid_argument);
    CHECK_THROWS_AS(FieldCtx(64), std::invalid_argument);
    CHECK_THROWS_AS(FieldCtx(3, 0b1111), std::invalid_argument);
    CHECK_THROWS_AS(FieldCtx(3, 0b10011), std::invalid_argument);
    CHECK(FieldCtx(3).modulus() == 0b1011);
    CHECK(FieldCtx(5).modulus() == 0b100101);
}

TEST_CASE("field axioms across table and carry-less paths") {
    for (int m : {1, 3, 5, 10, 15}) {
        FieldCtx f(m);
        CHECK(f.uses_tables());
        check_axioms(f, 400);
    }
    FieldCtx big(45);
    CHECK_FALSE(big.uses_tables());
    check_axioms(big, 200);
}

TEST_CASE("GF(8) arithmetic against hand computation") {
    FieldCtx f(3);
    CHECK(f.mul(0b10, 0b100) == 0b011);
    CHECK(f.mul(0b100, 0b100) == 0b110);
    CHECK(f.inv(0b10) == 0b101);
    CHECK(f.pow(0b10, 7) == 1);
    CHECK(f.pow(0b10, 3) == 0b011);
    CHECK_THROWS_AS(f.inv(0), std::invalid_argument);
}

TEST_CASE("full multiplicative group of GF(32)") {
    FieldCtx f(5);
    for (std::uint64_t a = 0; a < 32; ++a) {
        CHECK(f.pow(a, 32) == a);
        if (a != 0) {
            CHECK(f.mul(a, f.inv(a)) == 1);
            CHECK(f.order() % f.element_order(a) == 0);
        }
    }
    CHECK(f.element_order(f.primitive_element()) == 31);
}

TEST_CASE("primitive element of GF(1024) attains order 1023") {
    FieldCtx f(10);
    std::uint64_t g = f.primitive_element();
    CHECK(f.element_order(g) == 1023);
    CHECK(f.pow(g, 341) != 1);
    CHECK(f.pow(g, 93) != 1);
    CHECK(f.pow(g, 33) != 1);
    for (std::uint64_t v = 1; v < g; ++v) CHECK(f.element_order(v) < 1023);
}

TEST_CASE("iterated frobenius fixes exactly the subfield") {
    FieldCtx f(10);
    int fixed1 = 0, fixed5 = 0;
    for (std::uint64_t a = 0; a < f.size(); ++a) {
        if (f.frob(a) == a) ++fixed1;
        std::uint64_t b = a;
        for (int k = 0; k < 5; ++k) b = f.frob(b);
        if (b == a) ++fixed5;
    }
    CHECK(fixed1 == 2);
    CHECK(fixed5 == 32);
}

TEST_CASE("trace is balanced onto GF(2)") {
    FieldCtx f(8);
    int ones = 0;
    for (std::uint64_t a = 0; a < f.size(); ++a) ones += static_cast<int>(f.trace(a));
    CHECK(ones == 128);
    CHECK(f.trace(0) == 0);
}

TEST_CASE("table multiplication agrees with direct carry-less reduction") {
    FieldCtx t(15);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        std::uint64_t a = rng() & 0x7FFF, b = rng() & 0x7FFF;
        CHECK(t.mul(a, b) == gf2x::mulmod(a, b, t.modulus()));
        if (a) CHECK(t.mul(t.inv(a), a) == 1);
    }
}

TEST_CASE("field elements enforce matching contexts") {
    FieldCtx f(5), g(5);
    FieldElem a(f, 3), b(f, 7), c(g, 3);
    CHECK((a + b).v == 4);
    CHECK((a * b * a.inverse()).v == 7);
    CHECK((b / b).v == 1);
    CHECK(a.powed(31).v == 1);
    CHECK_THROWS_AS(a + c, std::invalid_argument);
    CHECK_THROWS_AS(a * c, std::invalid_argument);
}
