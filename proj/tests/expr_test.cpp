#include <cmath>

#include "doctest.h"
#include "support/gen.hpp"
#include "vkernel/normal.hpp"

using namespace vk;

namespace {
Expr X1 = Expr::coord(CoordId::x(1));
Expr Y1 = Expr::coord(CoordId::y(1));
Expr Z11 = Expr::coord(CoordId::z(1, 1));
}  // namespace

TEST_CASE("derivative basics") {
    CHECK(identical(diff(Expr::pow(Z11, 2), CoordId::z(1, 1)), Expr::integer(2) * Z11));
    CHECK(identical(diff(X1 * Y1, CoordId::y(1)), X1));
    CHECK(identical(diff(sin(X1) * Z11, CoordId::x(1)), cos(X1) * Z11));
    CHECK(diff(Expr::integer(7), CoordId::x(1)).is_zero_const());
    CHECK(identical(diff(log(X1), CoordId::x(1)), Expr::pow(X1, -1)));
}

TEST_CASE("substitution basics") {
    std::map<CoordId, Expr> b{{CoordId::y(1), Expr::pow(X1, 2)},
                              {CoordId::z(1, 1), Expr::integer(2) * X1}};
    Expr r = substitute(Y1 + X1 * Z11, b);
    CHECK(structurally_zero(r - Expr::integer(3) * Expr::pow(X1, 2)));

    CHECK(identical(substitute(Z11, {}), Z11));
    CHECK(structurally_zero(substitute(X1 * Y1, {{CoordId::y(1), Expr()}})));
}

TEST_CASE("evaluation and domain errors") {
    Point p;
    p.set(CoordId::x(1), 0.3);
    CHECK(eval(sin(X1), p) == doctest::Approx(std::sin(0.3)).epsilon(1e-15));
    CHECK(eval(Expr::pow(X1, -2), p) == doctest::Approx(1.0 / 0.09).epsilon(1e-12));

    Point q;
    q.set(CoordId::x(1), -1.0);
    CHECK_THROWS_AS(eval(log(X1), q), Error);
    Point z;
    z.set(CoordId::x(1), 0.0);
    CHECK_THROWS_AS(eval(Expr::pow(X1, -1), z), Error);
}

TEST_CASE("derivative is linear and partials commute") {
    test::Gen gen(42);
    std::vector<CoordId> coords = JetSpace::f1(2, 2).coords();
    for (int round = 0; round < 30; ++round) {
        Expr e1 = gen.smooth(coords, 3, 4);
        Expr e2 = gen.smooth(coords, 3, 4);
        Rational a = gen.coefficient();
        CoordId c1 = coords[gen.range(0, static_cast<int>(coords.size()) - 1)];
        CoordId c2 = coords[gen.range(0, static_cast<int>(coords.size()) - 1)];

        Expr lin = diff(Expr::constant(a) * e1 + e2, c1) -
                   (Expr::constant(a) * diff(e1, c1) + diff(e2, c1));
        CHECK(is_zero(lin).exact());

        Expr comm = diff(diff(e1, c1), c2) - diff(diff(e1, c2), c1);
        CHECK(is_zero(comm).exact());
    }
}

TEST_CASE("support collects nested coordinates") {
    Expr e = sin(X1 + Y1) * Z11;
    auto s = support(e);
    CHECK(s.size() == 3);
    CHECK(s.count(CoordId::x(1)) == 1);
    CHECK(s.count(CoordId::y(1)) == 1);
    CHECK(s.count(CoordId::z(1, 1)) == 1);
}

TEST_CASE("second-order coordinates canonicalize") {
    CHECK(CoordId::z2(2, 1, 3) == CoordId::z2(1, 2, 3));
    CHECK(identical(Expr::coord(CoordId::z2(2, 1, 1)), Expr::coord(CoordId::z2(1, 2, 1))));
}

namespace {
// no nested sums/products, no zero summands, no unit factors
bool well_formed(const Expr& e) {
    for (const Expr& k : e.kids())
        if (!well_formed(k)) return false;
    switch (e.kind()) {
        case Expr::Kind::Sum:
            for (const Expr& k : e.kids())
                if (k.kind() == Expr::Kind::Sum || k.is_zero_const()) return false;
            return e.kids().size() >= 2;
        case Expr::Kind::Product: {
            if (e.kids().size() < 2) return false;
            for (size_t i = 0; i < e.kids().size(); ++i) {
                const Expr& k = e.kids()[i];
                if (k.kind() == Expr::Kind::Product) return false;
                if (k.is_const() && i != 0) return false;  // constants fold to the front
                if (k.is_const() && (k.value() == 0 || k.value() == 1 || k.value() == -1))
                    return false;  // zero/unit/sign factors are folded away
            }
            return true;
        }
        default:
            return true;
    }
}
}  // namespace

TEST_CASE("construction keeps the flat normal form") {
    test::Gen gen(31337);
    std::vector<CoordId> coords = JetSpace::f2(2, 2).coords();
    for (int round = 0; round < 50; ++round) {
        Expr a = gen.smooth(coords, 3, 4);
        Expr b = gen.smooth(coords, 2, 3);
        for (const Expr& e : {a + b, a * b, a - b, -a, Expr::pow(a, 2), canonical(a)})
            CHECK(well_formed(e));
    }
}
