#include "doctest.h"

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "goppa/census.hpp"
#include "goppa/errors.hpp"
#include "goppa/oracle.hpp"

using namespace goppa;

TEST_CASE("orbit closure at n = 5, r = 3 is a single orbit either way") {
    OrbitPartition semi = enumerate_orbits(GroupKind::PGammaL, 5, 3);
    CHECK(semi.orbit_count() == 1);
    CHECK(semi.orbit_sizes[0] == 10912);
    CHECK(semi.keys.size() == 10912);
    CHECK(semi.representatives[0] == semi.keys.front());
    CHECK(semi.divisor_flags[0] == 1);

    OrbitPartition lin = enumerate_orbits(GroupKind::PGL, 5, 3);
    CHECK(lin.orbit_count() == 1);
}

TEST_CASE("orbit closure at n = 5, r = 4 matches the census on both groups") {
    OrbitPartition lin = enumerate_orbits(GroupKind::PGL, 5, 4);
    CHECK(lin.orbit_count() == 16);
    std::uint64_t total = 0;
    for (std::size_t o = 0; o < lin.orbit_count(); ++o) {
        total += lin.orbit_sizes[o];
        CHECK(32 * (32 * 32 - 1) % lin.orbit_sizes[o] == 0);
    }
    CHECK(total == 261888);

    OrbitPartition semi = enumerate_orbits(GroupKind::PGammaL, 5, 4);
    CHECK(semi.orbit_count() == 4);

    // Every semilinear orbit is a union of 1 or n linear orbits.
    std::map<std::uint32_t, std::set<std::uint32_t>> pieces;
    for (std::size_t i = 0; i < lin.keys.size(); ++i)
        pieces[semi.orbit_ids[i]].insert(lin.orbit_ids[i]);
    std::uint64_t covered = 0;
    for (const auto& [sid, lids] : pieces) {
        CHECK((lids.size() == 1 || lids.size() == 5));
        covered += lids.size();
    }
    CHECK(covered == 16);
}

TEST_CASE("orbit partitions are worker-invariant and generator-invariant") {
    OrbitPartition one = enumerate_orbits(GroupKind::PGammaL, 5, 3, 1);
    OrbitPartition four = enumerate_orbits(GroupKind::PGammaL, 5, 3, 4);
    CHECK(one.keys == four.keys);
    CHECK(one.orbit_ids == four.orbit_ids);
    CHECK(one.representatives == four.representatives);
    CHECK(one.divisor_flags == four.divisor_flags);

    OrbitPartition lin1 = enumerate_orbits(GroupKind::PGL, 5, 4, 1);
    OrbitPartition lin4 = enumerate_orbits(GroupKind::PGL, 5, 4, 4);
    CHECK(lin1.orbit_ids == lin4.orbit_ids);

    // Closure under the full group must give the same partition as closure
    // under the three standard generators.
    FieldCtx f(5);
    OrbitPartition full =
        enumerate_orbits_with(GroupKind::PGL, f, 3, enumerate_pgl(f), 1, 27);
    OrbitPartition gens =
        enumerate_orbits_with(GroupKind::PGL, f, 3, standard_generators(f), 1, 27);
    CHECK(full.orbit_ids == gens.orbit_ids);
    CHECK(full.orbit_sizes == gens.orbit_sizes);
}

TEST_CASE("orbit partition CSV export") {
    OrbitPartition part = enumerate_orbits(GroupKind::PGammaL, 5, 3);
    std::string csv = orbit_partition_csv(part);
    CHECK(csv == "representative,size,divisor_flag\n" +
                     std::to_string(part.keys.front()) + ",10912,1\n");
    CHECK(csv == orbit_partition_csv(enumerate_orbits(GroupKind::PGammaL, 5, 3, 4)));
}

TEST_CASE("orbit lookups reject foreign keys") {
    OrbitPartition part = enumerate_orbits(GroupKind::PGL, 2, 3);
    CHECK(part.orbit_count() == 1);
    CHECK_THROWS_AS(part.orbit_of_key(~0ull), std::invalid_argument);
}

TEST_CASE("tight capacity caps raise capacity errors") {
    CHECK_THROWS_AS(enumerate_orbits(GroupKind::PGL, 5, 3, 1, 10), CapacityError);
    CHECK_THROWS_AS(burnside_count(5, 3, 1, 10), CapacityError);
}

TEST_CASE("direct Burnside averages match the closed form") {
    CHECK(burnside_count(2, 3) == 1);
    CHECK(burnside_count(2, 4) == 2);
    CHECK(*pgl_orbit_count(2, 4).pgl_orbits == 2);
    CHECK(burnside_count(3, 3) == 1);
    CHECK(*pgl_orbit_count(3, 3).pgl_orbits == 1);
}

TEST_CASE("fixed-point counts are constant on conjugacy classes") {
    FieldCtx f(5);
    std::vector<std::uint64_t> keys = irreducible_keys(f, 3, 1);
    std::mt19937_64 rng(411);
    for (const ConjClass& cls : conjugacy_classes(f)) {
        std::uint64_t base = count_fixed_keys(cls.representative, 3, keys);
        for (int trial = 0; trial < 3; ++trial) {
            ProjMat s = random_projmat(f, rng);
            ProjMat conj = mat_mul(mat_mul(s, cls.representative), mat_inv(s));
            CHECK(count_fixed_keys(conj, 3, keys) == base);
        }
    }
}

TEST_CASE("binary classification tables at the reference parameters") {
    DeltaTable t3 = classify_X(5, 3);
    CHECK(t3.members.size() == 2);
    CHECK(t3.delta2.empty());
    CHECK(t3.delta5.size() == 2);
    CHECK(t3.delta5 == t3.members);
    CHECK(t3.delta7.empty());
    CHECK(t3.blocks.size() == 1);
    CHECK(t3.blocks[0] == t3.members);
    CHECK(t3.s0() == 1);

    DeltaTable t4 = classify_X(5, 4);
    CHECK(t4.members.size() == 3);
    CHECK(t4.delta2.size() == 1);
    CHECK(t4.delta3.size() == 1);
    CHECK(t4.delta4.size() == 1);
    CHECK(t4.delta5.empty());
    CHECK(t4.delta7.empty());
    CHECK(t4.blocks.size() == 1);
    CHECK(t4.s0() == 1);

    DeltaTable t6 = classify_X(5, 6);
    CHECK(t6.members.size() == 9);
    CHECK(t6.delta2.size() == 1);
    CHECK(t6.delta5.empty());
    CHECK(t6.delta7.size() == 6);
    CHECK(t6.blocks.size() == 2);
    for (const auto& block : t6.blocks) CHECK((block.size() == 3 || block.size() == 6));
}

TEST_CASE("classification counts agree with the closed forms across degrees") {
    for (std::uint64_t r = 3; r <= 14; ++r) {
        DeltaTable t = classify_X(5, r);
        INFO("r = ", r);
        CHECK(Big(t.members.size()) == count_X(r));
        CHECK(Big(t.delta2.size()) == count_delta2(r));
        CHECK(Big(t.delta5.size()) == count_A5_invariant_f2(r));
        CHECK(6 * t.blocks.size() ==
              t.members.size() + 3 * t.delta2.size() + 2 * t.delta5.size());
    }
}

TEST_CASE("binary classification agrees with the action over the big field") {
    FieldCtx f2(1), fq(5);
    for (std::uint64_t r : {3, 4, 6}) {
        DeltaTable t = classify_X(5, r);
        ProjMat a5(fq, 1, 1, 1, 0);
        std::set<std::uint64_t> fixed_over_fq;
        for (std::uint64_t key : t.members) {
            Poly f(fq, unpack_key(f2, r, key).c);
            if (act(a5, f) == f) fixed_over_fq.insert(key);
        }
        CHECK(fixed_over_fq == std::set<std::uint64_t>(t.delta5.begin(), t.delta5.end()));
    }
}

TEST_CASE("order-3 invariant counts: definitional routes vs the printed form") {
    CHECK(count_delta5_bruteforce(5, 3) == 2);
    CHECK(count_delta5_bruteforce(5, 4) == 0);
    CHECK(count_delta5_bruteforce(5, 6) == 0);
    CHECK(count_delta5_bruteforce(5, 9) == 2);
    CHECK(count_delta5_bruteforce(5, 12) == 2);

    for (std::uint64_t r : {3, 6, 9, 12, 15, 18}) {
        INFO("r = ", r);
        CHECK(count_A5_fixed_f2_bruteforce(r) == count_A5_invariant_f2(r));
        CHECK(count_delta5_bruteforce(5, r) == count_A5_invariant_f2(r));
    }
    CHECK(count_A5_fixed_f2_bruteforce(15) == 4);
    CHECK(count_A5_fixed_f2_bruteforce(18) == 6);

    // The printed three-case form halves the definitional count wherever
    // both are nonzero.
    for (std::uint64_t r : {3, 9, 12, 15}) CHECK(2 * count_delta5(r) == count_A5_invariant_f2(r));
}

TEST_CASE("sigma-fixed orbit counts via blocks and via the partition") {
    CHECK(sigma_fixed_orbit_count(5, 3) == 1);
    CHECK(sigma_fixed_orbit_count(5, 4) == 1);
    CHECK(sigma_fixed_orbit_count(5, 6) == 2);
    CHECK(Big(sigma_fixed_orbit_count(5, 12)) == *orbit_count_total(5, 12).s0);
}

TEST_CASE("flagged orbits carry exactly the stabilizer-orbit members") {
    FieldCtx f2(1), fq(5);
    for (std::uint64_t r : {3, 4}) {
        OrbitPartition part = enumerate_orbits(GroupKind::PGL, 5, r);
        DeltaTable table = classify_X(5, r);
        std::uint64_t flagged = 0;
        for (std::size_t o = 0; o < part.orbit_count(); ++o) {
            if (!part.divisor_flags[o]) continue;
            ++flagged;
            std::set<std::uint64_t> dividing_members;
            for (std::size_t i = 0; i < part.keys.size(); ++i)
                if (part.orbit_ids[i] == o &&
                    divides_x2r_x(unpack_key(fq, r, part.keys[i])))
                    dividing_members.insert(part.keys[i]);
            bool matched = false;
            for (const auto& block : table.blocks) {
                std::set<std::uint64_t> lifted;
                for (std::uint64_t key : block) lifted.insert(lift_binary_key(5, r, key));
                if (lifted == dividing_members) matched = true;
            }
            CHECK(matched);
        }
        CHECK(flagged == table.blocks.size());
    }
}

TEST_CASE("integer gcd identity") {
    CHECK(verify_gcd_identity(5, 4));
    CHECK(verify_gcd_identity(5, 6));
    CHECK(verify_gcd_identity(7, 4));
    CHECK_THROWS_AS(verify_gcd_identity(5, 3), UsageError);
    for (std::uint64_t n : {5, 7, 11}) {
        for (std::uint64_t r = 2; r <= 40; r += 2) {
            if (std::gcd(n, r) != 1) continue;
            INFO("n = ", n, ", r = ", r);
            CHECK(verify_gcd_identity(n, r));
        }
    }
}

TEST_CASE("binary factor reports") {
    FFactorReport nine = verify_F_factorization(5, 9);
    CHECK(nine.F_degree == 9);
    CHECK(nine.invariant_total == 2);
    CHECK(nine.invariant_dividing == 1);
    CHECK_FALSE(nine.quadratic_factor_present);
    CHECK(nine.ok());
    CHECK(nine.failing_detail.empty());

    FFactorReport twelve = verify_F_factorization(5, 12);
    CHECK(twelve.F_degree == 17);
    CHECK(twelve.invariant_total == 2);
    CHECK(twelve.invariant_dividing == 1);
    CHECK(twelve.quadratic_factor_present);
    CHECK(twelve.ok());

    FFactorReport three = verify_F_factorization(5, 3);
    CHECK(three.F_degree == 3);
    CHECK(three.ok());

    FFactorReport seven_nine = verify_F_factorization(7, 9);
    CHECK(seven_nine.F_degree == 9);
    CHECK(seven_nine.ok());

    CHECK_THROWS_AS(verify_F_factorization(5, 6), UsageError);
    CHECK_THROWS_AS(verify_F_factorization(5, 8), UsageError);
    CHECK_THROWS_AS(verify_F_factorization(5, 18), CapacityError);
}

TEST_CASE("binary key lifting") {
    CHECK(lift_binary_key(1, 4, 0b1011) == 0b1011);
    CHECK(lift_binary_key(5, 3, 0b101) == (1ull << 10 | 1ull));
    FieldCtx f2(1), fq(5);
    Poly f(f2, {1, 1, 0, 1});
    CHECK(lift_binary_key(5, 3, pack_key(f)) == pack_key(Poly(fq, f.c)));
    CHECK_THROWS_AS(lift_binary_key(16, 4, 1), CapacityError);
}
