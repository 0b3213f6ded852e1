#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sosk49/cubic_order.hpp"
#include "sosk49/errors.hpp"

namespace sosk49 {

/// True iff the defining polynomial is irreducible mod 2, i.e. 2 stays prime.
/// For a cubic it is enough that there is no root in F_2.
inline bool assert_inert(const CubicOrder& order) { return order.dyadic_inert(); }

inline void require_inert(const CubicOrder& order) {
    if (!order.dyadic_inert()) throw NotInert("2 is not inert in this order");
}

/// An element of O / 2^k O as a coordinate triple mod 2^k.
struct DyadicResidue {
    std::array<std::uint64_t, 3> v{0, 0, 0};
    bool operator==(const DyadicResidue& o) const { return v == o.v; }
    bool operator!=(const DyadicResidue& o) const { return v != o.v; }
};

/**
 * Arithmetic context for O / 2^k O: component-wise modular arithmetic over
 * the power basis with the same theta^3 reduction as the full order.
 * The ring has 2^(3k) elements; when 2 is inert, O / 2O is the field F_8.
 */
class DyadicRing {
public:
    DyadicRing(CubicOrder order, unsigned k) : order_(std::move(order)), k_(k) {
        mask_ = (k >= 64) ? ~std::uint64_t(0) : ((std::uint64_t(1) << k) - 1);
        std::uint64_t p = red_int(order_.p()), q = red_int(order_.q()), r = red_int(order_.r());
        // theta^3 = -r - q theta - p theta^2
        theta3_ = {neg(r), neg(q), neg(p)};
        // theta^4 = p r + (p q - r) theta + (p^2 - q) theta^2
        theta4_ = {(p * r) & mask_, (p * q + neg(r)) & mask_, (p * p + neg(q)) & mask_};
    }

    unsigned k() const { return k_; }
    std::uint64_t modulus() const { return mask_ + 1; }
    std::size_t size() const { return std::size_t(1) << (3 * k_); }
    const CubicOrder& order() const { return order_; }

    DyadicResidue reduce(const Element& e) const {
        return DyadicResidue{{red_int(e.a()), red_int(e.b()), red_int(e.c())}};
    }

    DyadicResidue add(const DyadicResidue& x, const DyadicResidue& y) const {
        return DyadicResidue{{(x.v[0] + y.v[0]) & mask_, (x.v[1] + y.v[1]) & mask_,
                              (x.v[2] + y.v[2]) & mask_}};
    }

    DyadicResidue negate(const DyadicResidue& x) const {
        return DyadicResidue{{neg(x.v[0]), neg(x.v[1]), neg(x.v[2])}};
    }

    DyadicResidue sub(const DyadicResidue& x, const DyadicResidue& y) const {
        return add(x, negate(y));
    }

    DyadicResidue mul(const DyadicResidue& x, const DyadicResidue& y) const {
        std::uint64_t a1 = x.v[0], b1 = x.v[1], c1 = x.v[2];
        std::uint64_t a2 = y.v[0], b2 = y.v[1], c2 = y.v[2];
        std::uint64_t d0 = a1 * a2;
        std::uint64_t d1 = a1 * b2 + b1 * a2;
        std::uint64_t d2 = a1 * c2 + b1 * b2 + c1 * a2;
        std::uint64_t d3 = b1 * c2 + c1 * b2;
        std::uint64_t d4 = c1 * c2;
        return DyadicResidue{{(d0 + d3 * theta3_[0] + d4 * theta4_[0]) & mask_,
                              (d1 + d3 * theta3_[1] + d4 * theta4_[1]) & mask_,
                              (d2 + d3 * theta3_[2] + d4 * theta4_[2]) & mask_}};
    }

    DyadicResidue square(const DyadicResidue& x) const { return mul(x, x); }

    bool is_unit_residue(const DyadicResidue& x) const {
        return ((x.v[0] | x.v[1] | x.v[2]) & 1) != 0;
    }

    std::size_t pack(const DyadicResidue& x) const {
        return std::size_t(x.v[0]) | (std::size_t(x.v[1]) << k_) | (std::size_t(x.v[2]) << (2 * k_));
    }

    DyadicResidue unpack(std::size_t i) const {
        return DyadicResidue{{std::uint64_t(i) & mask_, (std::uint64_t(i) >> k_) & mask_,
                              (std::uint64_t(i) >> (2 * k_)) & mask_}};
    }

private:
    std::uint64_t red_int(const Int& x) const {
        // remainder of floor division by 2^k, always in [0, 2^k)
        Int m;
        mpz_fdiv_r_2exp(m.get_mpz_t(), x.get_mpz_t(), k_);
        return m.get_ui();
    }
    std::uint64_t neg(std::uint64_t x) const { return (~x + 1) & mask_; }

    CubicOrder order_;
    unsigned k_;
    std::uint64_t mask_;
    std::array<std::uint64_t, 3> theta3_, theta4_;
};

/// Bit table over packed residues: entry set iff the residue is a square in
/// O / 2^k O. Cached per (order, k); the build is idempotent.
inline std::shared_ptr<const std::vector<bool>> squares_mod_table(const CubicOrder& order,
                                                                  unsigned k) {
    static std::mutex mu;
    static std::unordered_map<std::string, std::shared_ptr<const std::vector<bool>>> cache;
    std::string key =
        order.p().get_str() + "|" + order.q().get_str() + "|" + order.r().get_str() + "|" +
        std::to_string(k);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    DyadicRing ring(order, k);
    auto table = std::make_shared<std::vector<bool>>(ring.size(), false);
    for (std::size_t i = 0; i < ring.size(); ++i)
        (*table)[ring.pack(ring.square(ring.unpack(i)))] = true;
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = cache.emplace(key, table);
    return it->second;
}

/// Valuation at the inert prime 2: min of the coordinate valuations, nullopt
/// (infinity) for 0. Valid because (1, theta, theta^2) is a free basis and 2
/// is prime, so 2^m | x iff 2^m divides every coordinate.
inline std::optional<unsigned long> v2(const Element& e) {
    require_inert(e.order());
    if (e.is_zero()) return std::nullopt;
    unsigned long v = ~0ul;
    for (const Int& c : e.coords())
        if (c != 0) v = std::min(v, twoadic_valuation(c));
    return v;
}

/**
 * Whether alpha is a square in the dyadic completion O_(2).
 *
 * After stripping 2^v2 (v2 must be even), the unit part u is a square iff
 * x^2 = u (mod 8) is solvable: a solution x is a unit, and Newton-Hensel
 * lifts it because v(2x) = 1 and the congruence holds to precision 3 > 2*1.
 */
inline bool is_square_local(const Element& alpha) {
    require_inert(alpha.order());
    if (alpha.is_zero()) return true;
    unsigned long v = *v2(alpha);
    if (v % 2 != 0) return false;
    Int a = alpha.a(), b = alpha.b(), c = alpha.c();
    mpz_fdiv_q_2exp(a.get_mpz_t(), a.get_mpz_t(), v);
    mpz_fdiv_q_2exp(b.get_mpz_t(), b.get_mpz_t(), v);
    mpz_fdiv_q_2exp(c.get_mpz_t(), c.get_mpz_t(), v);
    Element unit_part(alpha.order(), a, b, c);
    DyadicRing ring(alpha.order(), 3);
    auto table = squares_mod_table(alpha.order(), 3);
    return (*table)[ring.pack(ring.reduce(unit_part))];
}

inline bool is_minus_square_local(const Element& alpha) { return is_square_local(-alpha); }

/// Lemma-level criterion: over the ring of integers of an unramified dyadic
/// local field of odd degree, I_3 represents exactly the non-minus-squares.
inline bool represents_I3_local(const Element& alpha) {
    require_inert(alpha.order());
    if (alpha.is_zero()) throw PreconditionViolated("represents_I3_local needs alpha != 0");
    return !is_minus_square_local(alpha);
}

struct ScanCheck {
    std::string name;
    std::uint64_t tuples_scanned = 0;
    std::vector<std::string> counterexamples;
};

struct ScanReport {
    unsigned k = 0;
    std::vector<ScanCheck> checks;
    bool clean() const {
        for (const auto& c : checks)
            if (!c.counterexamples.empty()) return false;
        return true;
    }
};

namespace detail {
inline std::string residue_str(const DyadicResidue& x) {
    return "[" + std::to_string(x.v[0]) + "," + std::to_string(x.v[1]) + "," +
           std::to_string(x.v[2]) + "]";
}
}  // namespace detail

/**
 * Exhaustive residue-level scans behind the dyadic lemmas.
 *   k = 3: no unit residues u, v mod 8 have u^2 + v^2 congruent to any square.
 *   k = 2: (a) no unit u and y, z with u^2 + y^2 + z^2 = 0 mod 4;
 *          (b) x = y (mod 2), x^2 = y^2 (mod 4), x^2 = y^2 (mod 2) are
 *              pairwise equivalent.
 * Counterexample lists must come back empty.
 */
inline ScanReport residue_scan_lemmas(const CubicOrder& order, unsigned k) {
    require_inert(order);
    ScanReport report;
    report.k = k;
    if (k == 3) {
        DyadicRing ring(order, 3);
        auto squares = squares_mod_table(order, 3);
        std::vector<DyadicResidue> units;
        for (std::size_t i = 0; i < ring.size(); ++i) {
            DyadicResidue x = ring.unpack(i);
            if (ring.is_unit_residue(x)) units.push_back(x);
        }
        std::vector<DyadicResidue> unit_squares(units.size());
        for (std::size_t i = 0; i < units.size(); ++i) unit_squares[i] = ring.square(units[i]);
        ScanCheck check{"unit-square-pairs-not-square-mod8", 0, {}};
        for (std::size_t i = 0; i < units.size(); ++i) {
            for (std::size_t j = 0; j < units.size(); ++j) {
                ++check.tuples_scanned;
                DyadicResidue s = ring.add(unit_squares[i], unit_squares[j]);
                if ((*squares)[ring.pack(s)])
                    check.counterexamples.push_back("u=" + detail::residue_str(units[i]) +
                                                    " v=" + detail::residue_str(units[j]));
            }
        }
        report.checks.push_back(std::move(check));
        return report;
    }
    if (k == 2) {
        DyadicRing ring(order, 2);
        std::vector<DyadicResidue> all(ring.size());
        std::vector<DyadicResidue> sq(ring.size());
        for (std::size_t i = 0; i < ring.size(); ++i) {
            all[i] = ring.unpack(i);
            sq[i] = ring.square(all[i]);
        }
        ScanCheck three{"no-unit-three-square-zero-mod4", 0, {}};
        for (std::size_t i = 0; i < ring.size(); ++i) {
            if (!ring.is_unit_residue(all[i])) continue;
            for (std::size_t j = 0; j < ring.size(); ++j) {
                DyadicResidue partial = ring.add(sq[i], sq[j]);
                for (std::size_t l = 0; l < ring.size(); ++l) {
                    ++three.tuples_scanned;
                    DyadicResidue s = ring.add(partial, sq[l]);
                    if (s.v[0] == 0 && s.v[1] == 0 && s.v[2] == 0)
                        three.counterexamples.push_back(
                            "u=" + detail::residue_str(all[i]) +
                            " y=" + detail::residue_str(all[j]) +
                            " z=" + detail::residue_str(all[l]));
                }
            }
        }
        report.checks.push_back(std::move(three));

        ScanCheck equiv{"square-congruence-equivalences-mod4", 0, {}};
        auto even_coords = [](const DyadicResidue& x) {
            return ((x.v[0] | x.v[1] | x.v[2]) & 1) == 0;
        };
        for (std::size_t i = 0; i < ring.size(); ++i) {
            for (std::size_t j = 0; j < ring.size(); ++j) {
                ++equiv.tuples_scanned;
                bool same_mod2 = even_coords(ring.sub(all[i], all[j]));
                DyadicResidue ds = ring.sub(sq[i], sq[j]);
                bool squares_mod4 = (ds.v[0] == 0 && ds.v[1] == 0 && ds.v[2] == 0);
                bool squares_mod2 = even_coords(ds);
                if (same_mod2 != squares_mod4 || squares_mod4 != squares_mod2)
                    equiv.counterexamples.push_back("x=" + detail::residue_str(all[i]) +
                                                    " y=" + detail::residue_str(all[j]));
            }
        }
        report.checks.push_back(std::move(equiv));
        return report;
    }
    throw PreconditionViolated("residue_scan_lemmas supports k in {2, 3}");
}

}  // namespace sosk49
