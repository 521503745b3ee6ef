#include "doctest.h"
#include "support/gen.hpp"
#include "vkernel/text.hpp"

using namespace vk;

namespace {
Expr X1 = Expr::coord(CoordId::x(1));
Expr Y1 = Expr::coord(CoordId::y(1));
Expr Z11 = Expr::coord(CoordId::z(1, 1));
}  // namespace

TEST_CASE("expression grammar") {
    Expr e = parse_expr("y1 + x1*z1_1", {1, 1});
    CHECK(structurally_zero(e - (Y1 + X1 * Z11)));

    CHECK(structurally_zero(parse_expr("3/4", {1, 1}) - Expr::constant(Rational(3, 4))));
    CHECK(structurally_zero(parse_expr("-x1^2", {1, 1}) + Expr::pow(X1, 2)));
    CHECK(structurally_zero(parse_expr("x1^-2", {1, 1}) - Expr::pow(X1, -2)));
    CHECK(structurally_zero(parse_expr("sin(x1)*cos(y1)", {1, 1}) - sin(X1) * cos(Y1)));
    CHECK(structurally_zero(parse_expr("(x1 + y1)^2", {1, 1}) - Expr::pow(X1 + Y1, 2)));
    CHECK(structurally_zero(parse_expr("x1/2", {1, 1}) - Expr::constant(Rational(1, 2)) * X1));
}

TEST_CASE("second-order coordinates canonicalize in the grammar") {
    Expr a = parse_expr("z2_1_3", {2, 3});
    Expr b = parse_expr("z1_2_3", {2, 3});
    CHECK(identical(a, b));
}

TEST_CASE("form grammar") {
    ParsedForm f = parse_form("dy1^dy2", {2, 2});
    CHECK(f.degree == 2);
    DiffForm form = f.to_form(JetSpace::config(2, 2));
    CHECK(identical(form.coefficient_at({Covector::dy(1), Covector::dy(2)}), Expr::integer(1)));

    ParsedForm g = parse_form("y2*dy1 + (x1*y1)*dx2", {2, 2});
    CHECK(g.degree == 1);
    DiffForm gf = g.to_form(JetSpace::config(2, 2));
    CHECK(identical(gf.coefficient_at({Covector::dy(1)}), Expr::coord(CoordId::y(2))));
    CHECK(identical(gf.coefficient_at({Covector::dx(2)}), X1 * Y1));

    // anticommutativity in the grammar
    ParsedForm h = parse_form("dy2^dy1 + dy1^dy2", {2, 2});
    CHECK(h.terms.empty());
}

TEST_CASE("grammar errors") {
    CHECK_THROWS_WITH_AS(parse_expr("z3_1", {2, 1}), doctest::Contains("IndexOutOfRange"), Error);
    CHECK_THROWS_WITH_AS(parse_expr("w1", {1, 1}), doctest::Contains("SyntaxError"), Error);
    CHECK_THROWS_WITH_AS(parse_expr("x1 +", {1, 1}), doctest::Contains("SyntaxError"), Error);
    CHECK_THROWS_WITH_AS(parse_expr("x1 y1", {1, 1}), doctest::Contains("SyntaxError"), Error);
    CHECK_THROWS_WITH_AS(parse_expr("dy1", {1, 1}), doctest::Contains("SyntaxError"), Error);
    CHECK_THROWS_WITH_AS(parse_expr("x1^y1", {1, 1}), doctest::Contains("SyntaxError"), Error);
    CHECK_THROWS_WITH_AS(parse_form("dx1 + dy1^dy2", {2, 2}), doctest::Contains("SyntaxError"),
                         Error);
}

TEST_CASE("polynomial map grammar") {
    PolyMap f = parse_polymap("f: x1^2; x1*x2", {2, 2});
    REQUIRE(f.components.size() == 2);
    CHECK(structurally_zero(f.components[0] - Expr::pow(X1, 2)));
    CHECK(structurally_zero(f.components[1] - X1 * Expr::coord(CoordId::x(2))));

    PolyMap g = parse_polymap("x1; 0", {1, 2});
    CHECK(g.components[1].is_zero_const());
}

TEST_CASE("printer round trips expressions") {
    test::Gen gen(90909);
    std::vector<CoordId> coords = JetSpace::f2(3, 3).coords();
    for (int round = 0; round < 60; ++round) {
        Expr e = canonical(gen.smooth(coords, 3, 5));
        std::string s = print_expr(e);
        Expr back = parse_expr(s, {3, 3});
        CHECK(identical(canonical(back), e));
    }
}

TEST_CASE("printer round trips forms") {
    test::Gen gen(80808);
    for (int round = 0; round < 40; ++round) {
        int n = gen.range(1, 3), m = gen.range(1, 3);
        int degree = gen.range(0, 2);
        DiffForm f = gen.horizontal_f1_form(n, m, degree, 2, 3);
        std::string s = print_form(f);
        DiffForm back = parse_form(s, {n, m}).to_form(JetSpace::f1(n, m), f.is_zero() ? degree : -1);
        CHECK(forms_identical(back, f));
    }
}

TEST_CASE("printing is deterministic and canonical") {
    Expr e = canonical(parse_expr("z1_1*x1 + y1 + x1*z1_1", {1, 1}));
    std::string rendered = print_expr(e);
    CHECK(rendered == print_expr(canonical(parse_expr("y1 + 2*x1*z1_1", {1, 1}))));
    CHECK(identical(canonical(parse_expr(rendered, {1, 1})), e));
    CHECK(print_expr(canonical(parse_expr("y1 - y1", {1, 1}))) == "0");
    DiffForm zero(JetSpace::config(1, 1), 1);
    CHECK(print_form(zero) == "0");
}
