#include <algorithm>

#include "doctest.h"
#include "support/gen.hpp"
#include "vkernel/form.hpp"

using namespace vk;

namespace {
Expr X1 = Expr::coord(CoordId::x(1));
Expr Y1 = Expr::coord(CoordId::y(1));
Expr Z11 = Expr::coord(CoordId::z(1, 1));

DiffForm one_form(JetSpace sp, Covector c, Expr coeff) {
    DiffForm f(sp, 1);
    f.add_term({c}, std::move(coeff));
    return f;
}
}  // namespace

TEST_CASE("wedge basics") {
    JetSpace sp = JetSpace::f1(2, 2);
    DiffForm dx1 = one_form(sp, Covector::dx(1), Expr::integer(1));
    DiffForm dy1 = one_form(sp, Covector::dy(1), Expr::integer(1));

    CHECK(wedge(dx1, dx1).is_zero());

    DiffForm w = wedge(dy1, dx1);
    REQUIRE(w.terms().size() == 1);
    CHECK(identical(w.coefficient_at({Covector::dx(1), Covector::dy(1)}), Expr::integer(-1)));

    DiffForm a = one_form(sp, Covector::dx(1), X1);
    DiffForm b = one_form(sp, Covector::dy(1), Y1);
    DiffForm ab = wedge(a, b);
    CHECK(identical(ab.coefficient_at({Covector::dx(1), Covector::dy(1)}), X1 * Y1));
}

TEST_CASE("wedge rejects mismatched spaces") {
    DiffForm a = one_form(JetSpace::f1(2, 2), Covector::dx(1), Expr::integer(1));
    DiffForm b = one_form(JetSpace::f1(2, 1), Covector::dx(1), Expr::integer(1));
    CHECK_THROWS_WITH_AS(wedge(a, b), doctest::Contains("SpaceMismatch"), Error);
}

TEST_CASE("exterior derivative basics") {
    JetSpace sp = JetSpace::config(1, 1);
    DiffForm f = DiffForm::scalar(sp, X1 * Y1);
    DiffForm df = exterior_d(f);
    CHECK(identical(df.coefficient_at({Covector::dx(1)}), Y1));
    CHECK(identical(df.coefficient_at({Covector::dy(1)}), X1));

    DiffForm ydx = one_form(sp, Covector::dx(1), Y1);
    DiffForm d = exterior_d(ydx);
    REQUIRE(d.terms().size() == 1);
    CHECK(identical(d.coefficient_at({Covector::dx(1), Covector::dy(1)}), Expr::integer(-1)));
}

TEST_CASE("d squared vanishes on random forms") {
    test::Gen gen(314);
    for (int round = 0; round < 30; ++round) {
        int n = gen.range(1, 3), m = gen.range(1, 3);
        int degree = gen.range(0, 2);
        DiffForm f = gen.horizontal_f1_form(n, m, degree, 3, 3);
        CHECK(exterior_d(exterior_d(f)).is_zero());
    }
}

TEST_CASE("horizontalization fixes horizontal forms") {
    JetSpace sp = JetSpace::f1(2, 1);
    DiffForm vol(sp, 2);
    vol.add_term({Covector::dx(1), Covector::dx(2)}, Expr::integer(1));
    CHECK(forms_identical(horizontalize(vol), vol));
}

TEST_CASE("horizontalization substitutes the contact relation") {
    // n = m = 1: F_x dx + F_y dy turns into (F_x + F_y z) dx
    JetSpace sp = JetSpace::f1(1, 1);
    Expr fx = Y1 + X1;
    Expr fy = Expr::pow(X1, 2);
    DiffForm f(sp, 1);
    f.add_term({Covector::dx(1)}, fx);
    f.add_term({Covector::dy(1)}, fy);
    DiffForm h = horizontalize(f);
    REQUIRE(h.terms().size() == 1);
    CHECK(structurally_zero(h.coefficient_at({Covector::dx(1)}) - (fx + fy * Z11)));

    // n = 2: dy1 ^ dx2 picks up z_{1,1}
    JetSpace sp2 = JetSpace::f1(2, 1);
    DiffForm g(sp2, 2);
    g.add_term({Covector::dy(1), Covector::dx(2)}, Expr::integer(1));
    DiffForm hg = horizontalize(g);
    REQUIRE(hg.terms().size() == 1);
    CHECK(identical(hg.coefficient_at({Covector::dx(1), Covector::dx(2)}), Z11));
}

TEST_CASE("horizontalization rejects vertical covectors") {
    JetSpace sp = JetSpace::f1(1, 1);
    DiffForm f = one_form(sp, Covector::dz(1, 1), Expr::integer(1));
    CHECK_THROWS_WITH_AS(horizontalize(f), doctest::Contains("NotHorizontal"), Error);
}

TEST_CASE("pullback along a jet") {
    JetSpace sp = JetSpace::f1(1, 1);
    PolyMap f(1, 1, {Expr::pow(X1, 2)});

    DiffForm dy1 = one_form(sp, Covector::dy(1), Expr::integer(1));
    DiffForm p1 = pullback_along_jet(dy1, f);
    CHECK(structurally_zero(p1.coefficient_at({Covector::dx(1)}) - Expr::integer(2) * X1));

    DiffForm zdx = one_form(sp, Covector::dx(1), Z11);
    DiffForm p2 = pullback_along_jet(zdx, f);
    CHECK(structurally_zero(p2.coefficient_at({Covector::dx(1)}) - Expr::integer(2) * X1));

    CHECK(pullback_along_jet(contact_form(sp, 1), f).is_zero());
}

TEST_CASE("contact forms vanish along every jet") {
    test::Gen gen(500);
    for (int round = 0; round < 20; ++round) {
        int n = gen.range(1, 3), m = gen.range(1, 3);
        JetSpace sp = JetSpace::f1(n, m);
        PolyMap f = gen.polymap(n, m, 3);
        int mu = gen.range(1, m);
        CHECK(pullback_along_jet(contact_form(sp, mu), f).is_zero());
    }
}

TEST_CASE("horizontality predicate") {
    JetSpace sp = JetSpace::f1(2, 1);
    DiffForm a(sp, 2);
    a.add_term({Covector::dx(1), Covector::dx(2)}, Expr::integer(1));
    CHECK(is_horizontal(a, Projection::Pi1));

    DiffForm b(sp, 2);
    b.add_term({Covector::dy(1), Covector::dx(2)}, Expr::integer(1));
    CHECK_FALSE(is_horizontal(b, Projection::Pi1));
    CHECK(is_horizontal(b, Projection::Pi10));

    DiffForm c = one_form(sp, Covector::dx(1), Z11);
    CHECK(is_horizontal(c, Projection::Pi1));  // verticality is about covectors
}

TEST_CASE("pullback commutes with h on horizontal forms") {
    test::Gen gen(999);
    for (int round = 0; round < 25; ++round) {
        int n = gen.range(1, 3), m = gen.range(1, 3);
        DiffForm rho = gen.horizontal_f1_form(n, m, n, 2, 3);
        PolyMap f = gen.polymap(n, m, 3);
        DiffForm lhs = pullback_along_jet(rho, f);
        DiffForm rhs = pullback_along_jet(horizontalize(rho), f);
        CHECK(forms_identical(lhs, rhs));
    }
}

TEST_CASE("pullback is natural for wedge and d") {
    test::Gen gen(4242);
    for (int round = 0; round < 15; ++round) {
        int n = gen.range(1, 2), m = gen.range(1, 2);
        DiffForm a = gen.horizontal_f1_form(n, m, 1, 2, 2);
        DiffForm b = gen.horizontal_f1_form(n, m, gen.range(0, 1), 2, 2);
        PolyMap f = gen.polymap(n, m, 2);
        CHECK(forms_identical(pullback_along_jet(wedge(a, b), f),
                              wedge(pullback_along_jet(a, f), pullback_along_jet(b, f))));
        CHECK(forms_identical(pullback_along_jet(exterior_d(a), f),
                              exterior_d(pullback_along_jet(a, f))));
    }
}

TEST_CASE("horizontalization agrees with the permutation-sum formula") {
    // independent route: for a term with dy_sigma at slots s, the horizontal
    // coefficient is sum over permutations tau with sign of
    // prod_a z_{s_{tau(a)}, sigma_a}
    test::Gen gen(1717);
    for (int round = 0; round < 20; ++round) {
        int n = gen.range(1, 3), m = gen.range(1, 3);
        JetSpace sp = JetSpace::f1(n, m);
        std::vector<CoordId> coords = sp.coords();

        // random slot data: increasing columns s, arbitrary sigma, coefficient
        int r = gen.range(0, n);
        std::vector<int> s, sigma;
        while (static_cast<int>(s.size()) < r) {
            int v = gen.range(1, n);
            if (std::find(s.begin(), s.end(), v) == s.end()) s.push_back(v);
        }
        std::sort(s.begin(), s.end());
        for (int a = 0; a < r; ++a) sigma.push_back(gen.range(1, m));
        Expr coeff = gen.poly(coords, 2, 3);

        CovectorTuple slot_tuple;
        for (int i = 1; i <= n; ++i) slot_tuple.push_back(Covector::dx(i));
        for (int a = 0; a < r; ++a) slot_tuple[s[a] - 1] = Covector::dy(sigma[a]);
        DiffForm rho(sp, n);
        rho.add_term(slot_tuple, coeff);

        // permutation sum
        std::vector<int> tau(r);
        for (int a = 0; a < r; ++a) tau[a] = a;
        std::vector<Expr> acc;
        do {
            int sign = 1;
            for (int a = 0; a < r; ++a)
                for (int b = a + 1; b < r; ++b)
                    if (tau[a] > tau[b]) sign = -sign;
            std::vector<Expr> factors{coeff};
            for (int a = 0; a < r; ++a)
                factors.push_back(Expr::coord(CoordId::z(s[tau[a]], sigma[a])));
            Expr term = Expr::product(std::move(factors));
            acc.push_back(sign > 0 ? term : -term);
        } while (std::next_permutation(tau.begin(), tau.end()));
        DiffForm expected = horizontal_volume(sp, Expr::sum(std::move(acc)));

        CHECK(forms_identical(horizontalize(rho), expected));
    }
}

TEST_CASE("lifting keeps terms and validates dimensions") {
    DiffForm f = one_form(JetSpace::config(2, 2), Covector::dy(1), X1);
    DiffForm lifted = f.lifted_to(JetSpace::f1(2, 2));
    CHECK(lifted.space().order == JetOrder::F1);
    CHECK(identical(lifted.coefficient_at({Covector::dy(1)}), X1));
    CHECK_THROWS_AS(f.lifted_to(JetSpace::f1(3, 2)), Error);
}
