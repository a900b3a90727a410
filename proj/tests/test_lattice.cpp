#include <doctest.h>

#include <random>

#include "hyperlat/lattice.hpp"
#include "hyperlat/smith.hpp"

using namespace hl;

namespace {

QMat random_unimodular(std::mt19937& rng) {
    QMat u = identity3();
    std::uniform_int_distribution<int> idx(0, 2), coef(-2, 2);
    for (int step = 0; step < 6; ++step) {
        int i = idx(rng), j = idx(rng);
        if (i == j) continue;
        int c = coef(rng);
        for (int r = 0; r < 3; ++r) u[r][j] += c * u[r][i];
    }
    return u;
}

}  // namespace

TEST_CASE("form syntax round trip and errors") {
    for (std::string s : {"U+19", "diag(1,-74,-2;0,1/2,1/2)", "a2(17)", "diag(31,-1,-1)", "diag(2,-13,-10;1/2,0,1/2)"})
        CHECK(format_form(parse_form(s)) == s);
    CHECK(parse_form("u+19") == parse_form("U+19"));
    CHECK(parse_form("A2(17)") == LatticeForm::a2(17));
    CHECK_THROWS_AS(parse_form("U+"), FormError);
    CHECK_THROWS_AS(parse_form("diag(1,2,3)"), FormError);
    CHECK_THROWS_AS(parse_form("a2(16)"), FormError);
    CHECK_THROWS_AS(check_legal(LatticeForm::diag(1, 3, 2, 0, 1, 1)), FormError);
}

TEST_CASE("gram_of examples") {
    GramAndGlue u = gram_of(LatticeForm::u_plus(19));
    CHECK(u.g == std::array<std::array<i64, 3>, 3>{{{0, 1, 0}, {1, 0, 0}, {0, 0, -19}}});
    CHECK(u.glue.empty());
    GramAndGlue a = gram_of(LatticeForm::a2(17));
    CHECK(a.g == std::array<std::array<i64, 3>, 3>{{{51, 0, 0}, {0, -2, 1}, {0, 1, -2}}});
    REQUIRE(a.glue.size() == 1);
    CHECK(a.glue[0] == QVec{Q(1, 3), Q(1, 3), Q(-1, 3)});
    GramAndGlue d = gram_of(parse_form("diag(1,-74,-2;0,1/2,1/2)"));
    CHECK(d.g == std::array<std::array<i64, 3>, 3>{{{1, 0, 0}, {0, -74, 0}, {0, 0, -2}}});
    REQUIRE(d.glue.size() == 1);
    CHECK(d.glue[0] == QVec{0, Q(1, 2), Q(1, 2)});
}

TEST_CASE("inner products, membership and roots") {
    Lattice U = Lattice::from_form(LatticeForm::u_plus(19));
    CHECK(norm(U, {9, 1, -1}) == -1);
    CHECK(norm(U, {0, 0, 0}) == 0);
    CHECK(inner(U, {-1, 1, 0}, {0, 0, 1}) == 0);
    CHECK(is_root(U, {0, 0, 1}));
    CHECK_FALSE(is_root(U, {0, 0, 2}));
    CHECK_FALSE(is_root(U, {1, 1, 0}));
    CHECK_THROWS_AS(is_root(U, {Q(1, 2), 0, 0}), NotInLattice);
    Lattice A = Lattice::from_form(LatticeForm::a2(17));
    CHECK(is_root(A, {0, 1, 0}));
    CHECK(contains(A, {Q(1, 3), Q(1, 3), Q(-1, 3)}));
    CHECK_FALSE(contains(A, {Q(1, 3), 0, 0}));
    Lattice D = Lattice::from_form(parse_form("diag(1,-74,-2;0,1/2,1/2)"));
    QVec rho{74, Q(-17, 2), Q(-37, 2)};
    CHECK(contains(D, rho));
    CHECK(norm(D, rho) == -555);
    // reflections preserve the lattice and the form
    QVec r{0, 0, 1}, x{3, 5, 2};
    QVec y = reflect(U, r, x);
    CHECK(contains(U, y));
    CHECK(norm(U, y) == norm(U, x));
    CHECK(reflect(U, r, y) == x);
}

TEST_CASE("determinants and invariants of the standard shapes") {
    CHECK(invariants_d_eta(LatticeForm::u_plus(19)) == DEta{19, 1});
    CHECK(invariants_d_eta(LatticeForm::u_plus(70)) == DEta{70, 0});
    CHECK(invariants_d_eta(LatticeForm::u_plus(2)) == DEta{2, 0});
    CHECK(invariants_d_eta(LatticeForm::a2(17)) == DEta{17, 1});
    CHECK_THROWS_AS(invariants_d_eta(LatticeForm::u_plus(18)), FormError);
    for (std::string s : {"U+19", "U+70", "a2(17)", "diag(1,-74,-2;0,1/2,1/2)", "diag(13,-1,-2)", "diag(31,-1,-1)"}) {
        LatticeForm f = parse_form(s);
        Lattice L = Lattice::from_form(f);
        CAPTURE(s);
        CHECK(determinant(L) == invariants_d_eta(f).d);
        CHECK(invariants_d_eta(L) == invariants_d_eta(f));
    }
}

TEST_CASE("invariants do not depend on the generator basis") {
    std::mt19937 rng(7);
    for (std::string s : {"U+19", "a2(17)", "diag(1,-74,-2;0,1/2,1/2)", "diag(11,-10,-2;0,1/2,1/2)", "U+210"}) {
        LatticeForm f = parse_form(s);
        Lattice L = Lattice::from_form(f);
        DEta want = invariants_d_eta(L);
        for (int t = 0; t < 20; ++t) {
            QMat u = random_unimodular(rng);
            QMat g2 = mul(transpose(u), mul(L.gram, u));
            QMat ui = inverse(u);
            std::vector<QVec> glue2;
            for (const auto& v : L.glue) glue2.push_back(mul(ui, v));
            Lattice L2 = Lattice::from_gram(g2, glue2);
            CAPTURE(s);
            CHECK(invariants_d_eta(L2) == want);
            CHECK(determinant(L2) == determinant(L));
        }
    }
}

TEST_CASE("Smith divisor examples") {
    Matrix<i64> a{{-2, 1}, {1, -2}};
    CHECK(smith_divisors(a) == std::vector<mpz_class>{3, 1});
    ExponentInvariants e = exponent_a(Matrix<mpz_class>{{-2, 1, 3}, {1, -2, 1}, {3, 1, -2}});
    CHECK(e.a == 20);
    CHECK(e.a1 == 5);
    CHECK(e.a2 == 5);
    ExponentInvariants d = exponent_a(Matrix<mpz_class>{{-2, 0, 0}, {0, -2, 0}, {0, 0, -2}});
    CHECK(d.a == 2);
    CHECK(d.a1 == 1);
    CHECK(d.a2 == 1);
    CHECK(smith_divisors(Matrix<i64>{{1, 2}, {2, 4}}) == std::vector<mpz_class>{0, 1});
}

TEST_CASE("sublattices and isotropy") {
    Lattice U = Lattice::from_form(LatticeForm::u_plus(19));
    CHECK(represents_zero(U));
    CHECK_FALSE(represents_zero(Lattice::from_form(LatticeForm::a2(17))));
    Lattice odd = Lattice::from_form(parse_form("diag(13,-1,-2)"));
    Lattice ev = even_sublattice(odd);
    CHECK(determinant(ev) == 4 * determinant(odd));
    Lattice half = scaled(ev, Q(1, 2));
    CHECK(determinant(half) == 13);
}

TEST_CASE("elementary rescaling") {
    Lattice S = Lattice::from_form(LatticeForm::u_plus(70));
    Rescaled r1 = elementary_rescale(S, 1);
    CHECK(determinant(r1.F) == 70);
    CHECK(r1.map_root({0, 0, 1}) == QVec{0, 0, 1});
    std::vector<mpz_class> dets;
    for (long m : {1, 2, 5, 7, 10, 14, 35, 70}) {
        Rescaled r = elementary_rescale(S, m);
        CHECK(determinant(r.F) == 70 * m);
        dets.push_back(determinant(r.F));
    }
    std::sort(dets.begin(), dets.end());
    CHECK(std::unique(dets.begin(), dets.end()) == dets.end());
    CHECK(dets.size() == 8);  // 2^t with t = 3
    CHECK_THROWS_AS(elementary_rescale(S, 3), std::invalid_argument);

    // root map and Gram transform
    Rescaled r = elementary_rescale(S, 7);
    QVec a{0, 0, 1}, b{-1, 1, 0};
    CHECK(r.k_of(a) == 7);
    CHECK(r.k_of(b) == 1);
    QVec at = r.map_root(a), bt = r.map_root(b);
    CHECK(contains(r.F, at));
    CHECK(contains(r.F, bt));
    CHECK(norm(r.F, at) == norm(S, a) * 7 / 49);
    CHECK(inner(r.F, at, bt) == inner(S, a, b) * 7 / 7);

    // coprime rescalings compose
    Rescaled two = elementary_rescale(S, 2);
    Rescaled twice = elementary_rescale(two.F, 5);
    Rescaled once = elementary_rescale(S, 10);
    CHECK(discriminant_divisors(twice.F) == discriminant_divisors(once.F));
    CHECK(determinant(twice.F) == determinant(once.F));
}

TEST_CASE("root pair predicates") {
    Lattice U = Lattice::from_form(LatticeForm::u_plus(19));
    RootPairVerdict v = root_pair_predicates(U, {0, 0, 1}, {-1, 1, 0});
    CHECK(v.ratio == 0);
    CHECK(v.pass());
    CHECK(v.isomorphic_to_u);
    CHECK_THROWS_AS(root_pair_predicates(U, {0, 0, 1}, {0, 0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(root_pair_predicates(U, {1, 1, 0}, {0, 0, 1}), NotARoot);
    Lattice A = Lattice::from_form(LatticeForm::a2(17));
    RootPairVerdict w = root_pair_predicates(A, {0, 1, 0}, {0, 0, 1});
    CHECK(w.ratio == 1);
    CHECK(w.congruence_ok);
    CHECK_FALSE(w.represents_zero);
    CHECK_FALSE(w.isomorphic_to_u);
    // (r1 + r2)^2 = 0 with r1^2 = r2^2 = -2 forces ratio 4
    Lattice U2 = Lattice::from_form(LatticeForm::u_plus(2));
    RootPairVerdict z = root_pair_predicates(U2, {1, -1, 0}, {0, 2, 1});
    CHECK(z.ratio == 4);
    CHECK(z.isomorphic_to_u);
}
