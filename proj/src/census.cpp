#include "goppa/census.hpp"

#include <numeric>
#include <stdexcept>

#include "json.hpp"

#include "goppa/errors.hpp"

namespace goppa {

namespace {

Big exact_div(const Big& num, const Big& den, const char* what) {
    if (den == 0 || num % den != 0)
        throw ConsistencyError(std::string(what) + ": expected exact division");
    return num / den;
}

Big alternating_pow(const Big& q, std::uint64_t m) {
    Big v = big_pow(q, m);
    return m % 2 == 1 ? Big(v + 1) : Big(v - 1);
}

} // namespace

Big fix_parabolic(const Big& q, std::uint64_t r) {
    if (q < 2 || r < 1) throw std::invalid_argument("fix_parabolic: need q >= 2, r >= 1");
    if (r % 2 != 0) return 0;
    auto chi = [](std::uint64_t d) { return Big(d % 2 == 1 ? 1 : 0); };
    auto F = [&](std::uint64_t m) { return big_pow(q, m); };
    return exact_div(weighted_moebius_inversion(chi, F, r / 2), r, "fix_parabolic");
}

Big fix_diagonal(const Big& q, std::uint64_t r, std::uint64_t D) {
    if (q < 2 || r < 1 || D < 1) throw std::invalid_argument("fix_diagonal: need q >= 2, r, D >= 1");
    if (r % D != 0) return 0;
    auto chi = [D](std::uint64_t d) { return Big(std::gcd(d, D) == 1 ? 1 : 0); };
    auto F = [&](std::uint64_t m) { return big_pow(q, m) - 1; };
    Big g = weighted_moebius_inversion(chi, F, r / D);
    return exact_div(euler_phi(D) * g, r, "fix_diagonal");
}

Big fix_elliptic(const Big& q, std::uint64_t r, std::uint64_t D) {
    if (q < 2 || r < 1 || D < 1) throw std::invalid_argument("fix_elliptic: need q >= 2, r, D >= 1");
    if (r % D != 0) return 0;
    auto chi = [D](std::uint64_t d) { return Big(std::gcd(d, D) == 1 ? 1 : 0); };
    auto F = [&](std::uint64_t m) { return alternating_pow(q, m); };
    Big g = weighted_moebius_inversion(chi, F, r / D);
    return exact_div(euler_phi(D) * g, r, "fix_elliptic");
}

Big count_X(std::uint64_t r) {
    if (r < 2) throw std::invalid_argument("count_X: need r >= 2");
    auto chi = [](std::uint64_t) { return Big(1); };
    auto F = [](std::uint64_t m) { return big_pow(2, m) - 1; };
    return exact_div(weighted_moebius_inversion(chi, F, r), r, "count_X");
}

Big count_delta2(std::uint64_t r) {
    if (r < 2) throw std::invalid_argument("count_delta2: need r >= 2");
    if (r % 2 != 0) return 0;
    auto chi = [](std::uint64_t d) { return Big(d % 2 == 1 ? 1 : 0); };
    auto F = [](std::uint64_t m) { return big_pow(2, m); };
    return exact_div(weighted_moebius_inversion(chi, F, r / 2), r, "count_delta2");
}

Big count_delta5(std::uint64_t r) {
    if (r < 3) throw std::invalid_argument("count_delta5: need r >= 3");
    if (r % 3 != 0) return 0;
    if (r == 6) return 0;
    auto chi = [](std::uint64_t d) { return Big(std::gcd<std::uint64_t>(3, d) == 1 ? 1 : 0); };
    auto F = [](std::uint64_t m) { return alternating_pow(2, m); };
    return exact_div(weighted_moebius_inversion(chi, F, r / 3), r, "count_delta5");
}

Big count_A5_invariant_f2(std::uint64_t r) {
    if (r < 3) throw std::invalid_argument("count_A5_invariant_f2: need r >= 3");
    if (r % 3 != 0) return 0;
    auto chi = [](std::uint64_t d) { return Big(std::gcd<std::uint64_t>(3, d) == 1 ? 1 : 0); };
    auto F = [](std::uint64_t m) { return alternating_pow(2, m); };
    return exact_div(2 * weighted_moebius_inversion(chi, F, r / 3), r, "count_A5_invariant_f2");
}

bool CensusReport::has_flag(const std::string& check) const {
    for (const ConsistencyFlag& f : flags)
        if (f.check == check) return true;
    return false;
}

namespace {

bool rat_is_integer(const Rat& v) { return denominator(v) == 1; }

void fill_group_side(CensusReport& rep) {
    const Big& q = rep.q;
    std::uint64_t r = rep.r;
    rep.N0 = irreducible_count(q, r);
    rep.N1 = (q * q - 1) * fix_parabolic(q, r);

    Big diag_stated = 0, diag_weighted = 0, ell_weighted = 0;
    for (std::uint64_t D : divisors(r)) {
        if (D == 1) continue;
        if ((q - 1) % D == 0) {
            Big fd = fix_diagonal(q, r, D);
            std::uint64_t phi = euler_phi(D);
            if (phi % 2 != 0) throw ConsistencyError("fill_group_side: odd totient for D >= 3");
            diag_stated += phi * fd;
            diag_weighted += (phi / 2) * fd;
        }
        if ((q + 1) % D == 0) {
            Big fe = fix_elliptic(q, r, D);
            std::uint64_t phi = euler_phi(D);
            if (phi % 2 != 0) throw ConsistencyError("fill_group_side: odd totient for D >= 3");
            ell_weighted += (phi / 2) * fe;
        }
    }
    rep.N2 = q * (q + 1) * diag_stated;
    rep.N2_classweighted = q * (q + 1) * diag_weighted;
    rep.N3 = q * (q - 1) * ell_weighted;

    Big group = q * q * q - q;
    Big sum_weighted = rep.N0 + rep.N1 + rep.N2_classweighted + rep.N3;
    if (sum_weighted % group == 0) {
        rep.pgl_orbits = sum_weighted / group;
    } else {
        rep.flags.push_back({"burnside_divisibility",
                             "class-weighted fixed-point sum " + sum_weighted.str() +
                                 " is not divisible by the group order " + group.str()});
    }
    rep.pgl_orbits_formula = Rat(rep.N0 + rep.N1 + rep.N2 + rep.N3, group);

    if (rep.N2 != rep.N2_classweighted)
        rep.flags.push_back({"N2_route", "totient-weighted N2 = " + rep.N2.str() +
                                             " but class-weighted N2 = " +
                                             rep.N2_classweighted.str()});
    if (!rep.pgl_orbits || rep.pgl_orbits_formula != Rat(*rep.pgl_orbits)) {
        if (!rat_is_integer(rep.pgl_orbits_formula))
            rep.flags.push_back({"pgl_formula_divisibility",
                                 "stated fixed-point sum over the group order is " +
                                     rat_to_string(rep.pgl_orbits_formula)});
        else if (rep.pgl_orbits)
            rep.flags.push_back({"pgl_formula_mismatch",
                                 "stated route gives " + rat_to_string(rep.pgl_orbits_formula) +
                                     ", class-weighted route gives " + rep.pgl_orbits->str()});
    }
}

} // namespace

CensusReport pgl_orbit_count(std::uint64_t n, std::uint64_t r) {
    if (n < 1 || r < 1) throw UsageError("pgl_orbit_count: need n >= 1, r >= 1");
    CensusReport rep;
    rep.n = n;
    rep.r = r;
    rep.q = Big(1) << n;
    fill_group_side(rep);
    return rep;
}

std::vector<CorollaryValue> corollary_formulas(std::uint64_t n, std::uint64_t r) {
    if (n < 1 || r < 1) throw UsageError("corollary_formulas: need n >= 1, r >= 1");
    Big q = Big(1) << n;
    std::vector<CorollaryValue> out;

    if (r == 4) {
        Rat v = Rat(big_pow(2, n - 1) - 1, n) + 1;
        out.push_back({"quartic", v, false});
    }

    if (r == 6) {
        Rat v(big_pow(2, 3 * n) + big_pow(2, 2 * n) + 3 * big_pow(2, n) + 12 * n - 18, 6 * n);
        out.push_back({"sextic", v, false});
    }

    if (r % 2 == 0 && r / 2 >= 3 && is_prime_u64(r / 2)) {
        std::uint64_t p = r / 2;
        Rat head(big_pow(q, 2 * p - 1) + big_pow(q, p + 1) - 2 * big_pow(q, p - 1) - q * q - q + 2,
                 2 * p * n * (q * q - 1));
        Rat tail = Rat(2 * (n - 1), 3 * p * n) *
                   Rat(big_pow(2, 2 * p - 3) + big_pow(2, p - 2) - 1);
        Big pm1sq = Big(p - 1) * (p - 1);
        if ((q - 1) % p == 0) {
            Rat mid(q * pm1sq, 2 * p * n);
            out.push_back({"twice_prime_dividing_qminus1", head + mid + tail, false});
        } else if ((q + 1) % p == 0) {
            Rat mid((q - 2) * pm1sq, 4 * p * n);
            out.push_back({"twice_prime_dividing_qplus1", head + mid + tail, false});
        } else {
            out.push_back({"twice_prime_coprime", head + tail, false});
        }
    }

    if (r % 2 == 1) {
        Big two_qq = 2 * (q * q - 1);
        bool coprime = true;
        for (auto& [pf, e] : FactoredInt::of(r).factors) {
            (void)e;
            if (two_qq % pf == 0) {
                coprime = false;
                break;
            }
        }
        if (coprime) {
            auto chi = [](std::uint64_t) { return Big(1); };
            auto Fm = [](std::uint64_t m) { return big_pow(2, m) - 1; };
            auto Fq = [&](std::uint64_t m) { return big_pow(q, m); };
            Rat first = Rat(n - 1, 6 * r * n) * Rat(weighted_moebius_inversion(chi, Fm, r));
            Rat second = Rat(weighted_moebius_inversion(chi, Fq, r), r * n * q * (q * q - 1));
            out.push_back({"coprime_order", first + second, false});
        }
    }

    return out;
}

CensusReport orbit_count_total(std::uint64_t n, std::uint64_t r, bool force) {
    if (n < 1 || r < 1) throw UsageError("orbit_count_total: need n >= 1, r >= 1");
    CensusReport rep;
    rep.n = n;
    rep.r = r;
    rep.q = Big(1) << n;
    rep.forced = force;
    rep.hypothesis_ok = n >= 5 && is_prime_u64(n) && r >= 3 && std::gcd(n, r) == 1;
    if (!rep.hypothesis_ok) {
        if (!force)
            throw UsageError("orbit_count_total: requires n prime >= 5, r >= 3, gcd(r, n) = 1; "
                             "pass force to compute anyway");
        rep.flags.push_back({"hypotheses",
                             "n prime >= 5, r >= 3, gcd(r, n) = 1 violated; counts are outside "
                             "the guaranteed range"});
    }
    fill_group_side(rep);

    rep.X_count = count_X(r);
    rep.delta2 = count_delta2(r);
    rep.delta5 = r >= 3 ? count_delta5(r) : Big(0);
    rep.delta5_definitional = r >= 3 ? count_A5_invariant_f2(r) : Big(0);
    if (rep.delta5 != rep.delta5_definitional)
        rep.flags.push_back({"delta5_route",
                             "three-case closed form gives " + rep.delta5.str() +
                                 " but the definitional invariant count is " +
                                 rep.delta5_definitional.str()});

    Big blocks = rep.X_count + 3 * rep.delta2 + 2 * rep.delta5_definitional;
    rep.s0_formula = Rat(rep.X_count + 3 * rep.delta2 + 2 * rep.delta5, 6);
    if (blocks % 6 == 0) {
        rep.s0 = blocks / 6;
    } else {
        rep.flags.push_back({"s0_divisibility",
                             "definitional block count " + blocks.str() + " is not divisible by 6"});
    }
    if (!rat_is_integer(rep.s0_formula)) {
        rep.flags.push_back({"s0_formula_divisibility",
                             "stated block average is " + rat_to_string(rep.s0_formula)});
    } else if (rep.s0 && rep.s0_formula != Rat(*rep.s0)) {
        rep.flags.push_back({"s0_formula_mismatch",
                             "stated route gives " + rat_to_string(rep.s0_formula) +
                                 ", definitional route gives " + rep.s0->str()});
    }

    if (rep.pgl_orbits && rep.s0) {
        Big diff = *rep.pgl_orbits - *rep.s0;
        if (diff % n == 0) {
            rep.s = *rep.s0 + diff / n;
            rep.bound = rep.s;
            Rat displayed = Rat(n - 1, 6 * n) * Rat(blocks) +
                            Rat(rep.N0 + rep.N1 + rep.N2_classweighted + rep.N3,
                                n * rep.q * (rep.q * rep.q - 1));
            if (displayed != Rat(*rep.s))
                throw ConsistencyError("orbit_count_total: displayed form disagrees with "
                                       "incremental form");
        } else {
            rep.flags.push_back({"s_divisibility",
                                 "orbit excess " + diff.str() + " is not divisible by n"});
        }
    }

    rep.s_formula = rep.s0_formula + (rep.pgl_orbits_formula - rep.s0_formula) / Rat(n);
    Rat displayed_formula = Rat(n - 1, 6 * n) * Rat(rep.X_count + 3 * rep.delta2 + 2 * rep.delta5) +
                            Rat(rep.N0 + rep.N1 + rep.N2 + rep.N3,
                                n * rep.q * (rep.q * rep.q - 1));
    if (displayed_formula != rep.s_formula)
        throw ConsistencyError("orbit_count_total: displayed form disagrees with incremental form");
    if (!rat_is_integer(rep.s_formula)) {
        rep.flags.push_back({"s_formula_divisibility",
                             "stated route gives " + rat_to_string(rep.s_formula)});
    } else if (rep.s && rep.s_formula != Rat(*rep.s)) {
        rep.flags.push_back({"s_formula_mismatch",
                             "stated route gives " + rat_to_string(rep.s_formula) +
                                 ", definitional route gives " + rep.s->str()});
    }

    rep.corollaries = corollary_formulas(n, r);
    for (CorollaryValue& c : rep.corollaries) {
        c.matches = rep.s && c.value == Rat(*rep.s);
        if (!c.matches)
            rep.flags.push_back({"corollary_mismatch",
                                 c.name + " gives " + rat_to_string(c.value) +
                                     (rep.s ? ", census gives " + rep.s->str()
                                            : ", census value unavailable")});
    }
    return rep;
}

std::string rat_to_string(const Rat& v) {
    Big num = numerator(v), den = denominator(v);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

namespace {

nlohmann::json big_json(const Big& v) { return v.str(); }

nlohmann::json opt_json(const std::optional<Big>& v) {
    if (!v) return nullptr;
    return v->str();
}

} // namespace

std::string census_report_json(const CensusReport& rep) {
    nlohmann::json j;
    j["n"] = rep.n;
    j["r"] = rep.r;
    j["q"] = big_json(rep.q);
    j["hypothesis_ok"] = rep.hypothesis_ok;
    j["forced"] = rep.forced;
    j["N0"] = big_json(rep.N0);
    j["N1"] = big_json(rep.N1);
    j["N2"] = big_json(rep.N2);
    j["N2_classweighted"] = big_json(rep.N2_classweighted);
    j["N3"] = big_json(rep.N3);
    j["pgl_orbits"] = opt_json(rep.pgl_orbits);
    j["pgl_orbits_formula"] = rat_to_string(rep.pgl_orbits_formula);
    j["X_count"] = big_json(rep.X_count);
    j["delta2"] = big_json(rep.delta2);
    j["delta5"] = big_json(rep.delta5);
    j["delta5_definitional"] = big_json(rep.delta5_definitional);
    j["s0"] = opt_json(rep.s0);
    j["s0_formula"] = rat_to_string(rep.s0_formula);
    j["s"] = opt_json(rep.s);
    j["s_formula"] = rat_to_string(rep.s_formula);
    j["bound"] = opt_json(rep.bound);
    j["corollaries"] = nlohmann::json::array();
    for (const CorollaryValue& c : rep.corollaries)
        j["corollaries"].push_back({{"name", c.name},
                                    {"value", rat_to_string(c.value)},
                                    {"matches", c.matches}});
    j["flags"] = nlohmann::json::array();
    for (const ConsistencyFlag& f : rep.flags)
        j["flags"].push_back({{"check", f.check}, {"detail", f.detail}});
    return j.dump(2) + "\n";
}

std::string census_report_csv_header() {
    return "n,r,q,s,s_formula,s0,s0_formula,pgl_orbits,pgl_orbits_formula,N0,N1,N2,"
           "N2_classweighted,N3,X_count,delta2,delta5,delta5_definitional,flags";
}

std::string census_report_csv_row(const CensusReport& rep) {
    auto opt = [](const std::optional<Big>& v) { return v ? v->str() : std::string(); };
    std::string flags;
    for (const ConsistencyFlag& f : rep.flags) {
        if (!flags.empty()) flags += ';';
        flags += f.check;
    }
    std::string row;
    row += std::to_string(rep.n) + ',' + std::to_string(rep.r) + ',' + rep.q.str() + ',';
    row += opt(rep.s) + ',' + rat_to_string(rep.s_formula) + ',';
    row += opt(rep.s0) + ',' + rat_to_string(rep.s0_formula) + ',';
    row += opt(rep.pgl_orbits) + ',' + rat_to_string(rep.pgl_orbits_formula) + ',';
    row += rep.N0.str() + ',' + rep.N1.str() + ',' + rep.N2.str() + ',';
    row += rep.N2_classweighted.str() + ',' + rep.N3.str() + ',';
    row += rep.X_count.str() + ',' + rep.delta2.str() + ',' + rep.delta5.str() + ',';
    row += rep.delta5_definitional.str() + ',' + flags;
    return row;
}

} // namespace goppa
