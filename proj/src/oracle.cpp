#include "goppa/oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "goppa/errors.hpp"

namespace goppa {

namespace {

// Runs body(begin, end, slot) over contiguous chunks of [0, total) on up to
// `workers` threads; the first exception wins and is rethrown here.
void run_chunks(std::size_t total, int workers,
                const std::function<void(std::size_t, std::size_t, int)>& body) {
    if (total == 0) return;
    std::size_t w = std::max(1, workers);
    w = std::min<std::size_t>(w, total);
    if (w == 1) {
        body(0, total, 0);
        return;
    }
    std::size_t chunk = (total + w - 1) / w;
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(w);
    for (std::size_t i = 0; i < w; ++i) {
        std::size_t begin = i * chunk, end = std::min(total, begin + chunk);
        if (begin >= end) break;
        threads.emplace_back([&, begin, end, i] {
            try {
                body(begin, end, static_cast<int>(i));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        });
    }
    for (std::thread& t : threads) t.join();
    for (const std::exception_ptr& e : errors)
        if (e) std::rethrow_exception(e);
}

// Union by least root, so every root index is also the least orbit member.
struct DisjointSets {
    std::vector<std::uint32_t> parent;

    explicit DisjointSets(std::size_t count) : parent(count) {
        std::iota(parent.begin(), parent.end(), 0u);
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a > b) std::swap(a, b);
        parent[b] = a;
    }
};

std::uint32_t index_of_key(const std::vector<std::uint64_t>& keys, std::uint64_t key) {
    auto it = std::lower_bound(keys.begin(), keys.end(), key);
    if (it == keys.end() || *it != key)
        throw ConsistencyError("orbit closure produced a polynomial outside the set");
    return static_cast<std::uint32_t>(it - keys.begin());
}

std::uint64_t frobenius_key(const FieldCtx& f, std::uint64_t r, std::uint64_t key, int times) {
    int m = f.m();
    std::uint64_t mask = f.size() - 1, out = 0;
    for (std::uint64_t i = 0; i < r; ++i) {
        int shift = static_cast<int>(m * (r - 1 - i));
        std::uint64_t c = (key >> shift) & mask;
        for (int t = 0; t < times; ++t) c = f.frob(c);
        out |= c << shift;
    }
    return out;
}

const FieldCtx& binary_ctx() {
    static const FieldCtx f2(1);
    return f2;
}

} // namespace

std::uint64_t lift_binary_key(int m, std::uint64_t r, std::uint64_t bkey) {
    if (static_cast<std::uint64_t>(m) * r > 63)
        throw CapacityError("lift_binary_key: m*r exceeds the 63-bit packing");
    std::uint64_t out = 0;
    for (std::uint64_t i = 0; i < r; ++i)
        out |= ((bkey >> (r - 1 - i)) & 1) << (m * (r - 1 - i));
    return out;
}

std::uint32_t OrbitPartition::orbit_of_key(std::uint64_t key) const {
    auto it = std::lower_bound(keys.begin(), keys.end(), key);
    if (it == keys.end() || *it != key)
        throw std::invalid_argument("orbit_of_key: key is not in the partition");
    return orbit_ids[it - keys.begin()];
}

OrbitPartition enumerate_orbits_with(GroupKind group, const FieldCtx& f, std::uint64_t r,
                                     const std::vector<ProjMat>& mats, int workers,
                                     int cap_log2) {
    OrbitPartition part;
    part.group = group;
    part.n = f.m();
    part.r = r;
    part.keys = irreducible_keys(f, r, workers, cap_log2);
    std::size_t count = part.keys.size();

    // One pseudo-generator slot for the coefficient squaring map.
    std::size_t gens = mats.size() + (group == GroupKind::PGammaL ? 1 : 0);
    std::vector<DisjointSets> locals;
    {
        std::size_t w = std::min<std::size_t>(std::max(1, workers), std::max<std::size_t>(gens, 1));
        locals.assign(w, DisjointSets(count));
        run_chunks(gens, static_cast<int>(w), [&](std::size_t gb, std::size_t ge, int slot) {
            DisjointSets& local = locals[slot];
            for (std::size_t g = gb; g < ge; ++g) {
                if (g < mats.size()) {
                    ActTable table(mats[g], static_cast<int>(r));
                    for (std::size_t i = 0; i < count; ++i)
                        local.unite(static_cast<std::uint32_t>(i),
                                    index_of_key(part.keys, table.apply_key(part.keys[i])));
                } else {
                    for (std::size_t i = 0; i < count; ++i)
                        local.unite(static_cast<std::uint32_t>(i),
                                    index_of_key(part.keys,
                                                 frobenius_key(f, r, part.keys[i], 1)));
                }
            }
        });
    }
    DisjointSets merged(count);
    for (DisjointSets& local : locals)
        for (std::size_t i = 0; i < count; ++i)
            merged.unite(static_cast<std::uint32_t>(i), local.find(static_cast<std::uint32_t>(i)));

    part.orbit_ids.resize(count);
    std::vector<std::uint32_t> id_of_root(count, UINT32_MAX);
    for (std::size_t i = 0; i < count; ++i) {
        std::uint32_t root = merged.find(static_cast<std::uint32_t>(i));
        if (id_of_root[root] == UINT32_MAX) {
            id_of_root[root] = static_cast<std::uint32_t>(part.orbit_sizes.size());
            part.orbit_sizes.push_back(0);
            part.representatives.push_back(part.keys[root]);
        }
        part.orbit_ids[i] = id_of_root[root];
        ++part.orbit_sizes[part.orbit_ids[i]];
    }

    part.divisor_flags.assign(part.orbit_count(), 0);
    {
        std::vector<std::vector<std::uint8_t>> flag_slices(
            std::max(1, workers), std::vector<std::uint8_t>(part.orbit_count(), 0));
        run_chunks(count, workers, [&](std::size_t begin, std::size_t end, int slot) {
            std::vector<std::uint8_t>& flags = flag_slices[slot];
            for (std::size_t i = begin; i < end; ++i)
                if (divides_x2r_x(unpack_key(f, r, part.keys[i])))
                    flags[part.orbit_ids[i]] = 1;
        });
        for (const auto& flags : flag_slices)
            for (std::size_t o = 0; o < flags.size(); ++o)
                part.divisor_flags[o] |= flags[o];
    }
    return part;
}

OrbitPartition enumerate_orbits(GroupKind group, std::uint64_t n, std::uint64_t r, int workers,
                                int cap_log2) {
    FieldCtx f(static_cast<int>(n));
    return enumerate_orbits_with(group, f, r, standard_generators(f), workers, cap_log2);
}

std::string orbit_partition_csv(const OrbitPartition& p) {
    std::ostringstream out;
    out << "representative,size,divisor_flag\n";
    for (std::size_t o = 0; o < p.orbit_count(); ++o)
        out << p.representatives[o] << ',' << p.orbit_sizes[o] << ','
            << int(p.divisor_flags[o]) << '\n';
    return out.str();
}

std::uint64_t count_fixed_keys(const ProjMat& A, std::uint64_t r,
                               const std::vector<std::uint64_t>& keys) {
    ActTable table(A, static_cast<int>(r));
    std::uint64_t fixed = 0;
    for (std::uint64_t key : keys)
        if (table.apply_key(key) == key) ++fixed;
    return fixed;
}

Big burnside_count(std::uint64_t n, std::uint64_t r, int workers, int cap_log2) {
    FieldCtx f(static_cast<int>(n));
    std::vector<std::uint64_t> keys = irreducible_keys(f, r, workers, cap_log2);
    std::vector<ProjMat> mats = enumerate_pgl(f);
    std::vector<Big> sums(std::max(1, workers), Big(0));
    run_chunks(mats.size(), workers, [&](std::size_t begin, std::size_t end, int slot) {
        std::uint64_t local = 0;
        for (std::size_t i = begin; i < end; ++i) local += count_fixed_keys(mats[i], r, keys);
        sums[slot] += local;
    });
    Big total = std::accumulate(sums.begin(), sums.end(), Big(0));
    Big group_order = Big(mats.size());
    if (total % group_order != 0)
        throw ConsistencyError("burnside_count: fixed-point sum " + total.str() +
                               " is not divisible by the group order");
    return total / group_order;
}

namespace {

// The five non-identity binary substitutions, in fixed order 2..6.
std::vector<ProjMat> binary_substitutions(const FieldCtx& f) {
    return {ProjMat(f, 0, 1, 1, 0), ProjMat(f, 1, 1, 0, 1), ProjMat(f, 1, 0, 1, 1),
            ProjMat(f, 1, 1, 1, 0), ProjMat(f, 0, 1, 1, 1)};
}

void require_law(bool ok, const std::string& what) {
    if (!ok) throw ConsistencyError("classify_X: " + what);
}

} // namespace

DeltaTable classify_X(std::uint64_t n, std::uint64_t r) {
    if (n < 1 || r < 3) throw UsageError("classify_X: need n >= 1, r >= 3");
    const FieldCtx& f2 = binary_ctx();
    DeltaTable table;
    table.n = n;
    table.r = r;
    table.members = irreducible_keys(f2, r, 1, 27);

    std::vector<ProjMat> subs = binary_substitutions(f2);
    std::vector<ActTable> tabs;
    tabs.reserve(subs.size());
    for (const ProjMat& A : subs) tabs.emplace_back(A, static_cast<int>(r));

    // images[i][j]: substitution i+2 applied to member j; masks: fixed bits.
    std::vector<std::array<std::uint64_t, 5>> images(table.members.size());
    std::map<std::uint64_t, unsigned> mask_of;
    for (std::size_t j = 0; j < table.members.size(); ++j) {
        std::uint64_t key = table.members[j];
        unsigned mask = 0;
        for (std::size_t i = 0; i < 5; ++i) {
            images[j][i] = tabs[i].apply_key(key);
            if (images[j][i] == key) mask |= 1u << (i + 2);
        }
        mask_of[key] = mask;
        if (mask & (1u << 2)) table.delta2.push_back(key);
        if (mask & (1u << 3)) table.delta3.push_back(key);
        if (mask & (1u << 4)) table.delta4.push_back(key);
        if (mask & (1u << 5)) table.delta5.push_back(key);
        if (mask & (1u << 6)) table.delta6.push_back(key);
        if (mask == 0) table.delta7.push_back(key);
    }

    require_law(table.delta5 == table.delta6, "the two order-3 fixed sets differ");
    require_law(table.delta2.size() == table.delta3.size() &&
                    table.delta3.size() == table.delta4.size(),
                "the three order-2 fixed sets have unequal sizes");
    require_law(table.members.size() == 3 * table.delta2.size() + table.delta5.size() +
                                            table.delta7.size(),
                "fixed-set sizes fail to partition the member count");

    std::map<std::vector<std::uint64_t>, std::vector<std::uint64_t>> block_members;
    for (std::size_t j = 0; j < table.members.size(); ++j) {
        std::uint64_t key = table.members[j];
        unsigned mask = mask_of.at(key);
        require_law(std::popcount(mask & 0b111100u) <= 1,
                    "a member is fixed by two distinct non-identity substitutions");

        std::vector<std::uint64_t> orbit{key};
        orbit.insert(orbit.end(), images[j].begin(), images[j].end());
        std::sort(orbit.begin(), orbit.end());
        orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
        std::size_t sz = orbit.size();
        require_law(sz == 2 || sz == 3 || sz == 6, "stabilizer orbit of unexpected size");

        auto img = [&](int i) { return images[j][i - 2]; };
        auto in_delta = [&](std::uint64_t k, int i) { return (mask_of.at(k) >> i) & 1u; };
        if (mask & (1u << 2)) {
            require_law(sz == 3 && in_delta(img(3), 4) && in_delta(img(4), 3),
                        "translation-fixed member has a malformed orbit");
        } else if ((mask & (1u << 3)) || (mask & (1u << 4))) {
            require_law(sz == 3, "order-2 fixed member has a malformed orbit");
        } else if (mask & (1u << 5)) {
            require_law(sz == 2 && img(2) == img(3) && img(3) == img(4) &&
                            in_delta(img(2), 5),
                        "order-3 fixed member has a malformed orbit");
        } else {
            require_law(sz == 6, "free member has a degenerate orbit");
        }
        table.stabilizer_orbit[key] = orbit;
        block_members[orbit].push_back(key);
    }

    for (auto& [orbit, members] : block_members) {
        require_law(orbit == members, "a stabilizer orbit is not a block of the partition");
        table.blocks.push_back(orbit);
    }
    return table;
}

Big count_delta5_bruteforce(std::uint64_t n, std::uint64_t r) {
    if (n < 1 || r < 1) throw UsageError("count_delta5_bruteforce: need n >= 1, r >= 1");
    if (r % 3 != 0) return 0;
    const FieldCtx& f2 = binary_ctx();
    FieldCtx fq(static_cast<int>(n));
    ProjMat a5(fq, 1, 1, 1, 0);
    Big fixed = 0;
    IrreducibleIter it(f2, r);
    while (auto key = it.next_key()) {
        Poly f(fq, unpack_key(f2, r, *key).c);
        if (act(a5, f) == f) ++fixed;
    }
    return fixed;
}

Big count_A5_fixed_f2_bruteforce(std::uint64_t r) {
    if (r < 1) throw UsageError("count_A5_fixed_f2_bruteforce: need r >= 1");
    if (r % 3 != 0) return 0;
    const FieldCtx& f2 = binary_ctx();
    ActTable table(ProjMat(f2, 1, 1, 1, 0), static_cast<int>(r));
    Big fixed = 0;
    IrreducibleIter it(f2, r);
    while (auto key = it.next_key())
        if (table.apply_key(*key) == *key) ++fixed;
    return fixed;
}

std::uint64_t sigma_fixed_orbit_count(std::uint64_t n, std::uint64_t r, int workers,
                                      int cap_log2) {
    std::uint64_t from_blocks = classify_X(n, r).blocks.size();
    bool enumerable = n * r <= 63 &&
                      irreducible_count(Big(1) << n, r) <= (Big(1) << cap_log2);
    if (enumerable) {
        FieldCtx f(static_cast<int>(n));
        OrbitPartition part =
            enumerate_orbits_with(GroupKind::PGL, f, r, standard_generators(f), workers,
                                  cap_log2);
        int twists = static_cast<int>(r % n);
        std::uint64_t direct = 0;
        for (std::size_t o = 0; o < part.orbit_count(); ++o) {
            std::uint64_t image = frobenius_key(f, r, part.representatives[o], twists);
            if (part.orbit_of_key(image) == o) ++direct;
        }
        if (direct != from_blocks)
            throw ConsistencyError("sigma_fixed_orbit_count: block route gives " +
                                   std::to_string(from_blocks) + ", direct route gives " +
                                   std::to_string(direct));
    }
    return from_blocks;
}

bool verify_gcd_identity(std::uint64_t n, std::uint64_t r) {
    if (n < 1 || r < 2 || r % 2 != 0)
        throw UsageError("verify_gcd_identity: need n >= 1 and even r >= 2");
    std::uint64_t half = r / 2;
    Big lhs = gcd(Big((Big(1) << (n * half)) + 1), Big((Big(1) << r) - 1));
    return lhs == (Big(1) << half) + 1;
}

FFactorReport verify_F_factorization(std::uint64_t n, std::uint64_t r) {
    if (r % 3 != 0 || r == 6 || r < 3)
        throw UsageError("verify_F_factorization: needs 3 | r with r != 6");
    if (r > 16)
        throw CapacityError("verify_F_factorization: r > 16 exceeds the splitting-field "
                            "table range");
    FFactorReport rep;
    rep.n = n;
    rep.r = r;
    rep.r0 = r / 3;
    rep.expected_degree = (std::uint64_t(1) << rep.r0) + 1;
    rep.quadratic_factor_expected = rep.r0 % 2 == 0;

    const FieldCtx& f2 = binary_ctx();
    std::uint64_t reduced_exp = (n * rep.r0) % r;
    std::vector<std::uint64_t> tc((std::uint64_t(1) << reduced_exp) + 2, 0);
    tc[0] = 1;
    tc[1] = 1;
    tc.back() = 1;
    Poly t(f2, std::move(tc));
    std::vector<std::uint64_t> bc((std::uint64_t(1) << r) + 1, 0);
    bc[1] = 1;
    bc.back() = 1;
    Poly whole(f2, std::move(bc));
    Poly factor = poly_gcd(t, whole);
    rep.F_degree = factor.degree();
    rep.degree_ok = rep.F_degree == rep.expected_degree;
    if (!rep.degree_ok)
        rep.failing_detail = "degree " + std::to_string(rep.F_degree) + ", expected " +
                             std::to_string(rep.expected_degree);

    Poly quad(f2, {1, 1, 1});
    rep.quadratic_factor_present = poly_mod(factor, quad).is_zero();
    if (rep.quadratic_factor_present != rep.quadratic_factor_expected &&
        rep.failing_detail.empty())
        rep.failing_detail = "x^2+x+1 divisibility disagrees with the parity of r0";

    // Root-level checks inside GF(2^r). Alpha must be a root of F itself, so
    // it is drawn from an invariant polynomial dividing F; the report keeps
    // the count of invariants that do not.
    ActTable a5(ProjMat(f2, 1, 1, 1, 0), static_cast<int>(r));
    std::uint64_t dividing_key = 0;
    IrreducibleIter it(f2, r);
    while (auto key = it.next_key()) {
        if (a5.apply_key(*key) != *key) continue;
        ++rep.invariant_total;
        if (poly_mod(factor, unpack_key(f2, r, *key)).is_zero()) {
            if (rep.invariant_dividing == 0) dividing_key = *key;
            ++rep.invariant_dividing;
        }
    }
    if (rep.invariant_dividing == 0) {
        rep.failing_detail = rep.invariant_total == 0
                                 ? "no substitution-invariant binary irreducible of degree " +
                                       std::to_string(r)
                                 : "no substitution-invariant irreducible divides F";
        return rep;
    }

    FieldCtx splitting(static_cast<int>(r));
    Poly lifted(splitting, unpack_key(f2, r, dividing_key).c);
    std::vector<std::uint64_t> roots = find_roots(lifted);
    if (roots.empty()) {
        rep.failing_detail = "invariant polynomial has no root in its own splitting field";
        return rep;
    }
    std::uint64_t alpha = roots.front();
    rep.alpha_excluded = (splitting.mul(alpha, alpha) ^ alpha ^ 1) != 0;

    Poly factor_lift(splitting, factor.c);
    rep.alpha_is_root = factor_lift.eval(alpha) == 0;
    if (!rep.alpha_is_root && rep.failing_detail.empty())
        rep.failing_detail = "alpha is not a root of F";

    FieldCtx subfield(static_cast<int>(rep.r0));
    Embedding emb = make_embedding(subfield, splitting);
    std::set<std::uint64_t> thetas;
    rep.theta_roots_ok = true;
    for (std::uint64_t g0 = 0; g0 < subfield.size(); ++g0) {
        std::uint64_t g = emb.apply(g0);
        std::uint64_t den = alpha ^ g;
        std::uint64_t num = splitting.mul(g, g) ^ g ^ 1;
        std::uint64_t theta = splitting.mul(num, splitting.inv(den)) ^ g ^ 1;
        bool fresh = thetas.insert(theta).second;
        if (!fresh || theta == alpha || factor_lift.eval(theta) != 0) {
            rep.theta_roots_ok = false;
            if (rep.failing_detail.empty())
                rep.failing_detail = "theta check failed at subfield element " +
                                     std::to_string(g0);
        }
    }

    FieldCtx fq(static_cast<int>(n));
    Poly factor_fq(fq, factor.c);
    Poly xq = x_pow2k_mod(n, factor_fq);
    Poly linear_part = poly_gcd(poly_add(xq, poly_x(fq)), factor_fq);
    rep.no_linear_factor_over_fq = linear_part.degree() == 0;
    if (!rep.no_linear_factor_over_fq && rep.failing_detail.empty())
        rep.failing_detail = "F has a linear factor over the coefficient field";
    return rep;
}

} // namespace goppa
