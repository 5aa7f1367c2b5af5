#pragma once

/// @file stencil.hpp
/// Coefficient machinery for the sixth-order compact 9-point discretization
/// of the scaled transport operator -Δu + a·u_x + b·u_y on a uniform grid:
/// the fifteen r-coefficients, the per-power coefficient tables c_{k,ℓ,p},
/// the collapsed stencil C_{k,ℓ}(h) = Σ_p c_{k,ℓ,p} h^p, and the
/// right-hand-side value F_{i,j} built from partials of the scaled source.
///
/// Two coefficient tables exist, one per orientation of the convection
/// vector (a ≥ b and a ≤ b); they share the powers p = 0..3. Every function
/// here is pure and templated on the scalar type, so the exact same formulas
/// can be instantiated with exact rationals in unit tests.

#include <array>
#include <iostream>
#include <optional>
#include <sstream>
#include <utility>

#include "fd6/errors.hpp"

namespace fd6 {

/// Orientation of the convection vector, selecting which coefficient table
/// applies. At a_eps == b_eps both are valid and produce identical tables.
enum class CaseTag {
    AgeB, ///< a_eps >= b_eps
    AleB, ///< a_eps <= b_eps
};

inline const char* to_string(CaseTag tag) noexcept {
    return tag == CaseTag::AgeB ? "CaseAgeB" : "CaseAleB";
}

/// Convection coefficients of the scaled problem. Construction enforces
/// a_eps >= 1 and b_eps >= 1, the regime in which the monotone structure and
/// the comparison bound hold; `allow_below_one` downgrades a violation to a
/// warning on stderr for experimentation.
template <class Scalar>
struct ScaledCoefficients {
    Scalar a_eps;
    Scalar b_eps;

    ScaledCoefficients(Scalar a, Scalar b, bool allow_below_one = false)
        : a_eps(std::move(a)), b_eps(std::move(b)) {
        check_lower_bound(a_eps, "a_eps", allow_below_one);
        check_lower_bound(b_eps, "b_eps", allow_below_one);
    }

private:
    static void check_lower_bound(const Scalar& v, const char* name,
                                  bool allow_below_one) {
        if (!(v >= Scalar(1))) {
            std::ostringstream os;
            os << name << " = " << v << " violates the requirement " << name
               << " >= 1 (the monotone structure and the comparison bound "
                  "assume it)";
            if (!allow_below_one) throw DomainError(os.str());
            std::cerr << "warning: " << os.str()
                      << "; continuing because the override flag is set\n";
        }
    }
};

/// Dispatch between the two coefficient tables. Ties (a_eps == b_eps) go to
/// CaseAgeB; the tables coincide there, so the choice is observationally
/// irrelevant. Rejects coefficients below 1 unless the override is set.
template <class Scalar>
CaseTag select_case(const Scalar& a_eps, const Scalar& b_eps,
                    bool allow_below_one = false) {
    ScaledCoefficients<Scalar> validated(a_eps, b_eps, allow_below_one);
    return validated.a_eps >= validated.b_eps ? CaseTag::AgeB : CaseTag::AleB;
}

/// The fifteen scalar combinations of (a_eps, b_eps) that appear in the
/// collapsed stencil and the right-hand-side expansion. For a_eps, b_eps >= 1
/// the signs are fixed: r1..r4, r7, r8 positive; r5, r6 negative.
template <class Scalar>
struct RCoefficients {
    Scalar r1, r2, r3, r4, r5, r6, r7, r8, r9, r10, r11, r12, r13, r14, r15;
};

template <class Scalar>
RCoefficients<Scalar> compute_r(const ScaledCoefficients<Scalar>& sc) {
    const Scalar& a = sc.a_eps;
    const Scalar& b = sc.b_eps;
    const Scalar a2 = a * a, a3 = a2 * a, a4 = a3 * a, a5 = a4 * a;
    const Scalar b2 = b * b, b3 = b2 * b, b4 = b3 * b, b5 = b4 * b;
    RCoefficients<Scalar> r;
    r.r1 = a + b;
    r.r2 = a2 + b2;
    r.r3 = a * b;
    r.r4 = (Scalar(14) * a4 + Scalar(33) * a3 * b + Scalar(42) * a2 * b2 +
            Scalar(33) * a * b3 + Scalar(10) * b4) /
           Scalar(240);
    r.r5 = -(Scalar(19) * a3 + Scalar(30) * a2 * b + Scalar(21) * a * b2) /
           Scalar(240);
    r.r6 = -(Scalar(21) * a2 * b + Scalar(30) * a * b2 + Scalar(19) * b3) /
           Scalar(240);
    r.r7 = (Scalar(23) * a2 + Scalar(30) * a * b + Scalar(21) * b2) /
           Scalar(240);
    r.r8 = (Scalar(21) * a2 + Scalar(30) * a * b + Scalar(23) * b2) /
           Scalar(240);
    r.r9 = r.r1 * a *
           (Scalar(5) * a3 + Scalar(9) * a2 * b + Scalar(12) * a * b2 +
            Scalar(10) * b3) /
           Scalar(480);
    r.r10 = -r.r1 * a *
            (Scalar(9) * a2 + Scalar(10) * a * b + Scalar(11) * b2) /
            Scalar(480);
    r.r11 = -r.r1 * b *
            (Scalar(11) * a2 + Scalar(10) * a * b + Scalar(9) * b2) /
            Scalar(480);
    r.r12 = (Scalar(13) * a3 + Scalar(23) * a2 * b + Scalar(21) * a * b2 +
             Scalar(11) * b3) /
            Scalar(480);
    r.r13 = (Scalar(11) * a3 + Scalar(21) * a2 * b + Scalar(23) * a * b2 +
             Scalar(13) * b3) /
            Scalar(480);
    r.r14 = (Scalar(8) * a4 + Scalar(33) * a3 * b + Scalar(42) * a2 * b2 +
             Scalar(33) * a * b3 + Scalar(16) * b4) /
            Scalar(240);
    r.r15 = (Scalar(5) * a5 - Scalar(22) * a4 * b + Scalar(27) * a3 * b2 +
             Scalar(16) * a2 * b3 + Scalar(4) * a * b4 + Scalar(42) * b5) /
            Scalar(480);
    return r;
}

/// The 9x7 array of per-power stencil coefficients c_{k,ℓ,p} for one
/// convection orientation, with k, ℓ in {-1, 0, 1} and p in {0,...,6}.
/// Every power slice sums to zero over (k, ℓ), so the collapsed stencil has
/// a zero row sum for every mesh size.
template <class Scalar>
struct StencilTable {
    CaseTag case_tag = CaseTag::AgeB;
    std::array<Scalar, 9 * 7> c{};

    static int slot(int k, int l) noexcept { return (k + 1) * 3 + (l + 1); }

    Scalar& at(int k, int l, int p) { return c[slot(k, l) * 7 + p]; }
    const Scalar& at(int k, int l, int p) const {
        return c[slot(k, l) * 7 + p];
    }
};

/// Offsets of the compact stencil in a fixed traversal order.
inline constexpr std::array<std::pair<int, int>, 9> stencil_offsets = {{
    {-1, -1}, {-1, 0}, {-1, 1}, {0, -1}, {0, 0}, {0, 1}, {1, -1}, {1, 0},
    {1, 1},
}};

/// Build the 63 per-power coefficients for the requested orientation.
/// The orientation must match the coefficients (a_eps >= b_eps for CaseAgeB,
/// a_eps <= b_eps for CaseAleB) unless `force` is set, which permits
/// evaluating either table anywhere (the collapsed sign structure is then no
/// longer guaranteed).
template <class Scalar>
StencilTable<Scalar> build_table(const ScaledCoefficients<Scalar>& sc,
                                 CaseTag tag, bool force = false) {
    const Scalar& a = sc.a_eps;
    const Scalar& b = sc.b_eps;
    if (!force) {
        const bool consistent = (tag == CaseTag::AgeB) ? (a >= b) : (a <= b);
        if (!consistent) {
            std::ostringstream os;
            os << "coefficient table " << to_string(tag)
               << " requires a_eps " << (tag == CaseTag::AgeB ? ">=" : "<=")
               << " b_eps, but a_eps = " << a << ", b_eps = " << b;
            throw DomainError(os.str());
        }
    }

    const Scalar a2 = a * a, a3 = a2 * a, a4 = a3 * a, a5 = a4 * a,
                 a6 = a5 * a;
    const Scalar b2 = b * b, b3 = b2 * b, b4 = b3 * b, b5 = b4 * b,
                 b6 = b5 * b;
    const Scalar r1 = a + b;

    StencilTable<Scalar> t;
    t.case_tag = tag;

    // p = 0: the classical compact pattern {20; -4 edges; -1 corners}.
    t.at(-1, -1, 0) = Scalar(-1);
    t.at(-1, 0, 0) = Scalar(-4);
    t.at(-1, 1, 0) = Scalar(-1);
    t.at(0, -1, 0) = Scalar(-4);
    t.at(0, 0, 0) = Scalar(20);
    t.at(0, 1, 0) = Scalar(-4);
    t.at(1, -1, 0) = Scalar(-1);
    t.at(1, 0, 0) = Scalar(-4);
    t.at(1, 1, 0) = Scalar(-1);

    // p = 1
    t.at(-1, -1, 1) = -r1;
    t.at(-1, 0, 1) = -Scalar(2) * (Scalar(2) * a + b);
    t.at(-1, 1, 1) = -a;
    t.at(0, -1, 1) = -Scalar(2) * (a + Scalar(2) * b);
    t.at(0, 0, 1) = Scalar(10) * r1;
    t.at(0, 1, 1) = -Scalar(2) * a;
    t.at(1, -1, 1) = -b;
    t.at(1, 0, 1) = -Scalar(2) * b;
    t.at(1, 1, 1) = Scalar(0);

    // p = 2
    t.at(-1, -1, 2) = -r1 * r1 / Scalar(2);
    t.at(-1, 0, 2) =
        -(Scalar(41) * a2 + Scalar(40) * a * b + Scalar(11) * b2) / Scalar(20);
    t.at(-1, 1, 2) = -a2 / Scalar(2);
    t.at(0, -1, 2) =
        -(Scalar(11) * a2 + Scalar(40) * a * b + Scalar(41) * b2) / Scalar(20);
    t.at(0, 0, 2) = (Scalar(21) * (a2 + b2) + Scalar(25) * a * b) / Scalar(5);
    t.at(0, 1, 2) = -(Scalar(11) * a2 + b2) / Scalar(20);
    t.at(1, -1, 2) = -b2 / Scalar(2);
    t.at(1, 0, 2) = -(a2 + Scalar(11) * b2) / Scalar(20);
    t.at(1, 1, 2) = Scalar(0);

    // p = 3
    t.at(-1, -1, 3) = -r1 * r1 * r1 / Scalar(6);
    t.at(-1, 0, 3) = -(Scalar(86) * a3 + Scalar(123) * a2 * b +
                       Scalar(66) * a * b2 + Scalar(13) * b3) /
                     Scalar(120);
    t.at(-1, 1, 3) = -a3 / Scalar(6);
    t.at(0, -1, 3) = -(Scalar(13) * a3 + Scalar(66) * a2 * b +
                       Scalar(123) * a * b2 + Scalar(86) * b3) /
                     Scalar(120);
    t.at(0, 0, 3) = Scalar(19) * (a3 + b3) / Scalar(15) +
                    Scalar(21) * r1 * a * b / Scalar(10);
    t.at(0, 1, 3) = -(Scalar(13) * a3 + Scalar(3) * a * b2) / Scalar(120);
    t.at(1, -1, 3) = -b3 / Scalar(6);
    t.at(1, 0, 3) = -(Scalar(3) * a2 * b + Scalar(13) * b3) / Scalar(120);
    t.at(1, 1, 3) = Scalar(0);

    if (tag == CaseTag::AgeB) {
        // p = 4, orientation a >= b
        t.at(-1, -1, 4) = -r1 * r1 * r1 * r1 / Scalar(24);
        t.at(-1, 0, 4) = -(Scalar(23) * a4 + Scalar(43) * a3 * b +
                           Scalar(33) * a2 * b2 + Scalar(13) * a * b3) /
                         Scalar(120);
        t.at(-1, 1, 4) = -a4 / Scalar(24);
        t.at(0, -1, 4) =
            -(Scalar(2) * a4 + Scalar(13) * a3 * b + Scalar(33) * a2 * b2 +
              Scalar(43) * a * b3 + Scalar(21) * b4) /
            Scalar(120);
        t.at(0, 0, 4) = (Scalar(37) * a4 + Scalar(29) * b4) / Scalar(120) +
                        Scalar(19) * (a2 + b2) * a * b / Scalar(30) +
                        Scalar(4) * a2 * b2 / Scalar(5);
        t.at(0, 1, 4) = (b4 - a4) / Scalar(60);
        t.at(1, -1, 4) = -b4 / Scalar(24);
        t.at(1, 0, 4) = Scalar(0);
        t.at(1, 1, 4) = Scalar(0);

        // p = 5, orientation a >= b
        t.at(-1, -1, 5) =
            (b5 - Scalar(5) * a5 - Scalar(20) * a4 * b - Scalar(39) * a3 * b2 -
             Scalar(41) * a2 * b3 - Scalar(16) * a * b4) /
            Scalar(480);
        t.at(-1, 0, 5) =
            -(Scalar(9) * a5 + Scalar(23) * a4 * b + Scalar(23) * a3 * b2 +
              Scalar(12) * a2 * b3 + Scalar(4) * a * b4 + b5) /
            Scalar(240);
        t.at(-1, 1, 5) = (b5 - Scalar(5) * a5 + a3 * b2 - a2 * b3 +
                          Scalar(4) * a * b4) /
                         Scalar(480);
        t.at(0, -1, 5) = -r1 * b * (a2 + a * b + Scalar(2) * b2) *
                         (Scalar(4) * a + Scalar(5) * b) / Scalar(240);
        t.at(0, 0, 5) =
            (Scalar(14) * a5 + Scalar(37) * a4 * b + Scalar(55) * a3 * b2 +
             Scalar(55) * a2 * b3 + Scalar(33) * a * b4 + Scalar(10) * b5) /
            Scalar(240);
        t.at(0, 1, 5) = Scalar(0);
        t.at(1, -1, 5) = Scalar(0);
        t.at(1, 0, 5) = Scalar(0);
        t.at(1, 1, 5) = Scalar(0);

        // p = 6, orientation a >= b: all entries are multiples of
        // alpha = a^2 r1 (5a^3 + 9a^2 b + 12ab^2 + 10b^3)/1920; keeping the
        // common factor w = alpha / a avoids any division by a.
        const Scalar w = a * r1 *
                         (Scalar(5) * a3 + Scalar(9) * a2 * b +
                          Scalar(12) * a * b2 + Scalar(10) * b3) /
                         Scalar(1920);
        const Scalar alpha = a * w;
        t.at(-1, -1, 6) = -(Scalar(5) * a + Scalar(4) * b) * w;
        t.at(-1, 0, 6) = Scalar(4) * (b - a) * w;
        t.at(-1, 1, 6) = -alpha;
        t.at(0, -1, 6) = Scalar(0);
        t.at(0, 0, 6) = Scalar(20) * alpha;
        t.at(0, 1, 6) = -Scalar(4) * alpha;
        t.at(1, -1, 6) = -alpha;
        t.at(1, 0, 6) = -Scalar(4) * alpha;
        t.at(1, 1, 6) = -alpha;
    } else {
        // p = 4, orientation a <= b
        t.at(-1, -1, 4) =
            -(Scalar(9) * a4 + Scalar(40) * a3 * b + Scalar(60) * a2 * b2 +
              Scalar(40) * a * b3 + Scalar(11) * b4) /
            Scalar(240);
        t.at(-1, 0, 4) =
            -(Scalar(21) * a4 + Scalar(43) * a3 * b + Scalar(33) * a2 * b2 +
              Scalar(13) * a * b3 + Scalar(2) * b4) /
            Scalar(120);
        t.at(-1, 1, 4) = -(Scalar(9) * a4 + b4) / Scalar(240);
        t.at(0, -1, 4) = -(Scalar(13) * a3 * b + Scalar(33) * a2 * b2 +
                           Scalar(43) * a * b3 + Scalar(23) * b4) /
                         Scalar(120);
        t.at(0, 0, 4) = (Scalar(9) * a4 + Scalar(13) * b4) / Scalar(40) +
                        Scalar(4) * a2 * b2 / Scalar(5) +
                        Scalar(19) * (a3 * b + a * b3) / Scalar(30);
        t.at(0, 1, 4) = Scalar(0);
        t.at(1, -1, 4) = (a4 - Scalar(11) * b4) / Scalar(240);
        t.at(1, 0, 4) = (a4 - b4) / Scalar(60);
        t.at(1, 1, 4) = (a4 - b4) / Scalar(240);

        // p = 5, orientation a <= b, with the shared combination
        // beta = r1 (b - a)(a^3 - 6a^2 b + 2ab^2 - 7b^3)/480.
        const Scalar beta = r1 * (b - a) *
                            (a3 - Scalar(6) * a2 * b + Scalar(2) * a * b2 -
                             Scalar(7) * b3) /
                            Scalar(480);
        t.at(-1, -1, 5) = -a * b * r1 * (a2 + a * b + b2) / Scalar(24);
        t.at(-1, 0, 5) =
            -(Scalar(11) * a5 + Scalar(5) * a4 * b + Scalar(25) * a3 * b2 +
              Scalar(10) * a2 * b3 + Scalar(21) * b5) /
            Scalar(240);
        t.at(-1, 1, 5) = Scalar(0);
        t.at(0, -1, 5) = r1 * (Scalar(5) * b - a) *
                         (Scalar(2) * a3 - Scalar(6) * a2 * b + a * b2 -
                          Scalar(6) * b3) /
                         Scalar(240);
        t.at(0, 0, 5) =
            (Scalar(18) * a5 - Scalar(29) * a4 * b + Scalar(65) * a3 * b2 +
             Scalar(45) * a2 * b3 + Scalar(19) * a * b4 + Scalar(86) * b5) /
            Scalar(240);
        t.at(0, 1, 5) = Scalar(4) * beta;
        t.at(1, -1, 5) = beta;
        t.at(1, 0, 5) = Scalar(4) * beta;
        t.at(1, 1, 5) = beta;

        // p = 6, orientation a <= b, with the shared combination
        // lambda = 5a^5 b - 22a^4 b^2 + 27a^3 b^3 + 16a^2 b^4 + 4ab^5 + 42b^6.
        const Scalar lambda = Scalar(5) * a5 * b - Scalar(22) * a4 * b2 +
                              Scalar(27) * a3 * b3 + Scalar(16) * a2 * b4 +
                              Scalar(4) * a * b5 + Scalar(42) * b6;
        t.at(-1, -1, 6) =
            (-Scalar(20) * a6 + Scalar(63) * a5 * b + Scalar(2) * a4 * b2 -
             Scalar(199) * a3 * b3 - Scalar(96) * a2 * b4 -
             Scalar(188) * a * b5 - Scalar(210) * b6) /
            Scalar(1920);
        t.at(-1, 0, 6) = Scalar(0);
        t.at(-1, 1, 6) = -lambda / Scalar(1920);
        t.at(0, -1, 6) =
            (Scalar(5) * a6 - Scalar(27) * a5 * b + Scalar(49) * a4 * b2 -
             Scalar(11) * a3 * b3 - Scalar(12) * a2 * b4 +
             Scalar(38) * a * b5 - Scalar(42) * b6) /
            Scalar(480);
        t.at(0, 0, 6) = lambda / Scalar(96);
        t.at(0, 1, 6) = -lambda / Scalar(480);
        t.at(1, -1, 6) = -lambda / Scalar(1920);
        t.at(1, 0, 6) = -lambda / Scalar(480);
        t.at(1, 1, 6) = -lambda / Scalar(1920);
    }
    return t;
}

/// The compact stencil at a concrete mesh size: C_{k,ℓ} = Σ_p c_{k,ℓ,p} h^p.
/// The center entry is positive and every off-center entry is nonpositive
/// for any h > 0, so the assembled operator is monotone.
template <class Scalar>
struct CompactStencil {
    Scalar h{};
    std::array<Scalar, 9> C{};

    Scalar& at(int k, int l) { return C[StencilTable<Scalar>::slot(k, l)]; }
    const Scalar& at(int k, int l) const {
        return C[StencilTable<Scalar>::slot(k, l)];
    }
};

/// Collapse the per-power table in h by Horner evaluation.
template <class Scalar>
CompactStencil<Scalar> collapse(const StencilTable<Scalar>& table,
                                const Scalar& h) {
    if (!(h > Scalar(0))) {
        std::ostringstream os;
        os << "mesh size h = " << h << " must be positive";
        throw DomainError(os.str());
    }
    CompactStencil<Scalar> s;
    s.h = h;
    for (const auto& [k, l] : stencil_offsets) {
        Scalar acc = table.at(k, l, 6);
        for (int p = 5; p >= 0; --p) acc = acc * h + table.at(k, l, p);
        s.at(k, l) = acc;
    }
    return s;
}

/// Table of mixed partials f^{(m,n)} of the scaled source at one node, for
/// total orders m + n <= 4. Slots are set individually; reading a slot that
/// was never provided is a contract violation.
template <class Scalar>
class SourceDerivatives {
public:
    static constexpr int slot_count = 15;

    /// Flat index for (m, n) with m + n <= 4: slots are grouped by total
    /// order t = m + n, then ordered by n.
    static int index(int m, int n) {
        if (m < 0 || n < 0 || m + n > 4) {
            std::ostringstream os;
            os << "derivative order (" << m << ", " << n
               << ") outside the supported range m, n >= 0, m + n <= 4";
            throw DomainError(os.str());
        }
        const int t = m + n;
        return t * (t + 1) / 2 + n;
    }

    void set(int m, int n, Scalar value) {
        slots_[static_cast<std::size_t>(index(m, n))] = std::move(value);
    }

    const Scalar& get(int m, int n) const {
        const auto& slot = slots_[static_cast<std::size_t>(index(m, n))];
        if (!slot) {
            std::ostringstream os;
            os << "source derivative of order (" << m << ", " << n
               << ") was not provided";
            throw ContractViolation(os.str());
        }
        return *slot;
    }

    bool has(int m, int n) const {
        return slots_[static_cast<std::size_t>(index(m, n))].has_value();
    }

private:
    std::array<std::optional<Scalar>, slot_count> slots_{};
};

/// Right-hand-side value F_{i,j} of the scheme at one node, computed from
/// the scaled convection coefficients and the partials of the scaled source
/// up to total order 4. The two orientations share all terms except the
/// leading h^4 and h^5 coefficients (r4 vs r14, r9 vs r15).
template <class Scalar>
Scalar rhs_value(const ScaledCoefficients<Scalar>& sc, CaseTag tag,
                 const Scalar& h, const SourceDerivatives<Scalar>& fd) {
    if (!(h >= Scalar(0))) {
        std::ostringstream os;
        os << "mesh size h = " << h << " must be nonnegative";
        throw DomainError(os.str());
    }
    const RCoefficients<Scalar> r = compute_r(sc);
    const Scalar& a = sc.a_eps;
    const Scalar& b = sc.b_eps;

    const Scalar& f = fd.get(0, 0);
    const Scalar& f10 = fd.get(1, 0);
    const Scalar& f01 = fd.get(0, 1);
    const Scalar& f20 = fd.get(2, 0);
    const Scalar& f11 = fd.get(1, 1);
    const Scalar& f02 = fd.get(0, 2);
    const Scalar& f30 = fd.get(3, 0);
    const Scalar& f21 = fd.get(2, 1);
    const Scalar& f12 = fd.get(1, 2);
    const Scalar& f03 = fd.get(0, 3);
    const Scalar& f40 = fd.get(4, 0);
    const Scalar& f22 = fd.get(2, 2);
    const Scalar& f04 = fd.get(0, 4);

    const Scalar vgrad = a * f10 + b * f01;
    const Scalar lap = f20 + f02;
    const Scalar biharm = f40 + Scalar(2) * f22 + f04;
    const Scalar zeta =
        (a * f30 + Scalar(2) * b * f21 + Scalar(2) * a * f12 + b * f03) /
        Scalar(60);

    const Scalar& r4c = (tag == CaseTag::AgeB) ? r.r4 : r.r14;
    const Scalar& r9c = (tag == CaseTag::AgeB) ? r.r9 : r.r15;

    const Scalar h2 = h * h, h3 = h2 * h, h4 = h3 * h, h5 = h4 * h;

    return Scalar(6) * f + Scalar(3) * h * r.r1 * f +
           h2 * ((Scalar(21) * r.r2 + Scalar(30) * r.r3) * f / Scalar(20) -
                 vgrad / Scalar(2) + lap / Scalar(2)) +
           h3 * r.r1 *
               ((Scalar(11) * r.r2 / Scalar(40) + r.r3 / Scalar(4)) * f -
                (vgrad - lap) / Scalar(4)) +
           h4 * (r4c * f + r.r5 * f10 + r.r6 * f01 + r.r7 * f20 +
                 r.r3 * f11 / Scalar(15) + r.r8 * f02 - Scalar(2) * zeta +
                 (biharm + Scalar(2) * f22) / Scalar(60)) +
           h5 * (r9c * f + r.r10 * f10 + r.r11 * f01 + r.r12 * f20 +
                 r.r1 * r.r3 * f11 / Scalar(30) + r.r13 * f02 - r.r1 * zeta +
                 r.r1 * (biharm + Scalar(2) * f22) / Scalar(120));
}

} // namespace fd6
