#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "vkernel/jet.hpp"
#include "vkernel/normal.hpp"

namespace vk {

/// Basis one-form dx_i, dy_mu, dz_{i,mu} or dz_{k,i,mu}.
/// Total order: dx < dy < dz < dz2, then lexicographic on indices.
struct Covector {
    CoordKind kind = CoordKind::X;
    uint16_t a = 0, b = 0, c = 0;

    static Covector dx(int i);
    static Covector dy(int mu);
    static Covector dz(int i, int mu);
    static Covector dz2(int k, int i, int mu);
    static Covector of(CoordId c);

    CoordId coord() const { return CoordId{kind, a, b, c}; }
    uint64_t key() const { return coord().key(); }
    std::string name() const;

    friend bool operator==(const Covector& l, const Covector& r) { return l.key() == r.key(); }
    friend std::strong_ordering operator<=>(const Covector& l, const Covector& r) {
        return l.key() <=> r.key();
    }
};

using CovectorTuple = std::vector<Covector>;

/// Sorts in place; returns the permutation sign, or 0 when a covector repeats.
int sort_covector_tuple(CovectorTuple& t);

/// Exterior p-form with expression coefficients over a jet space.
/// Terms are stored against strictly increasing covector tuples; coefficients
/// are ring-canonical and never structurally zero.
class DiffForm {
public:
    using Terms = std::map<CovectorTuple, Expr>;

    DiffForm(JetSpace space, int degree);
    static DiffForm scalar(JetSpace space, const Expr& coefficient);

    const JetSpace& space() const { return space_; }
    int degree() const { return degree_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Accumulate coefficient * (tuple in any order); sign-normalizes, prunes
    /// structural zeros, validates indices against the space.
    void add_term(CovectorTuple tuple, Expr coefficient);

    Expr coefficient_at(const CovectorTuple& tuple) const;  // 0 when absent

    DiffForm& operator+=(const DiffForm& o);
    friend DiffForm operator+(DiffForm a, const DiffForm& b) { return a += b; }
    friend DiffForm operator-(const DiffForm& a, const DiffForm& b);
    DiffForm scaled(const Expr& s) const;
    DiffForm negated() const;

    /// Same form on a wider space of the same (n, m).
    DiffForm lifted_to(JetSpace target) const;

private:
    JetSpace space_;
    int degree_;
    Terms terms_;
};

/// Graded-anticommutative product. Throws Errc::space_mismatch.
DiffForm wedge(const DiffForm& a, const DiffForm& b);

/// Exterior derivative (degree +1, same space); d(d(.)) == 0.
DiffForm exterior_d(const DiffForm& a);

/// Horizontalization: the contact substitution dy_mu -> z_{j,mu} dx_j on
/// forms over F1 without dz covectors. Throws Errc::not_horizontal.
DiffForm horizontalize(const DiffForm& a);

/// Pullback along the first jet prolongation of f; the result lives on the
/// base space.
DiffForm pullback_along_jet(const DiffForm& a, const PolyMap& f);

enum class Projection : uint8_t { Pi1, Pi10, Pi20 };

/// True iff no stored tuple contains a covector vertical over the target
/// (Pi1: only dx; Pi10/Pi20: dx and dy).
bool is_horizontal(const DiffForm& a, Projection target);

/// Contact form omega_mu = dy_mu - z_{j,mu} dx_j.
DiffForm contact_form(JetSpace space, int mu);

/// dx_1 ^ ... ^ dx_{i-1} ^ omega_sigma ^ dx_{i+1} ^ ... ^ dx_n.
DiffForm contact_slot_form(JetSpace space, int i, int sigma);

/// The n-form dx_1 ^ ... ^ dx_n with the given coefficient.
DiffForm horizontal_volume(JetSpace space, const Expr& coefficient);

/// All coefficients of a - b structurally zero.
bool forms_identical(const DiffForm& a, const DiffForm& b);

}  // namespace vk
