#include <doctest.h>

#include <algorithm>
#include <set>

#include "hyperlat/tables.hpp"
#include "hyperlat/vinberg.hpp"

using namespace hl;

namespace {

const Table4Entry& entry(const Tables& t, int n) {
    for (const auto& e : t.t4.entries)
        if (e.n == n) return e;
    throw std::out_of_range("no entry");
}

const QMat& named(const Table4Entry& e, const std::string& name) {
    for (const auto& g : e.chain.generators)
        if (g.name == name) return g.m;
    throw std::out_of_range("no matrix " + name);
}

std::set<QVec> as_set(const std::vector<RootInfo>& v) {
    std::set<QVec> s;
    for (const auto& r : v) s.insert(r.v);
    return s;
}

// Acceptance in height order with each height's candidates taken in the given order.
std::vector<RootInfo> accept_manually(const VinbergConfig& cfg, bool reversed) {
    std::vector<RootInfo> acc;
    for (const auto& v : cfg.height0) acc.push_back({v, norm(cfg.lattice, v), 0});
    for (const Q& h : admissible_heights(cfg, cfg.max_height)) {
        if (h == 0) continue;
        auto c = candidate_roots(cfg, h);
        if (reversed) std::reverse(c.begin(), c.end());
        for (const auto& r : c)
            if (vinberg_accept(cfg.lattice, acc, r.v)) acc.push_back(r);
    }
    return acc;
}

}  // namespace

TEST_CASE("height-0 roots") {
    Lattice A = Lattice::from_form(LatticeForm::a2(17));
    CHECK(height0_roots(A, {1, 0, 0}) == std::vector<QVec>{{0, 1, 0}, {0, 0, 1}});
    Lattice U = Lattice::from_form(LatticeForm::u_plus(19));
    CHECK(height0_roots(U, {1, 1, 0}) == std::vector<QVec>{{-1, 1, 0}, {0, 0, 1}});
    Lattice D = Lattice::from_form(parse_form("diag(31,-1,-1)"));
    CHECK(height0_roots(D, {1, 0, 0}) == std::vector<QVec>{{0, 1, 0}, {0, -1, 1}});
}

TEST_CASE("candidates") {
    VinbergConfig cfg = default_config(LatticeForm::u_plus(19), 200);
    auto hs = admissible_heights(cfg, 200);
    REQUIRE_FALSE(hs.empty());
    CHECK(std::is_sorted(hs.begin(), hs.end()));
    CHECK(norm(cfg.lattice, {0, 0, 1}) == -19);
    for (const Q& h : hs) {
        for (const auto& r : candidate_roots(cfg, h)) {
            CHECK(is_root(cfg.lattice, r.v));
            CHECK(r.height == h);
            CHECK(r.square == norm(cfg.lattice, r.v));
        }
    }
    Q bad = hs.back() + Q(1, 7);
    CHECK_THROWS_AS(candidate_roots(cfg, bad), std::invalid_argument);
}

TEST_CASE("only one of v and -v is accepted") {
    VinbergConfig cfg = default_config(LatticeForm::u_plus(19), 200);
    VinbergRun run = run_vinberg(cfg);
    for (const auto& r : run.accepted) {
        QVec m{-r.v[0], -r.v[1], -r.v[2]};
        std::vector<RootInfo> others;
        for (const auto& o : run.accepted)
            if (o.v != r.v) others.push_back(o);
        CHECK_FALSE(vinberg_accept(cfg.lattice, others, m));
    }
}

TEST_CASE("U+19 reproduces the printed chain") {
    Tables t = load_tables(default_data_dir());
    const Table4Entry& e = entry(t, 2);
    VinbergConfig cfg = default_config(e.form, 200);
    VinbergRun run = run_vinberg(cfg);
    std::set<QVec> want(e.chain.gplus.begin(), e.chain.gplus.end());
    CHECK(as_set(run.accepted) == want);
    for (std::size_t i = 0; i < run.accepted.size(); ++i)
        for (std::size_t j = i + 1; j < run.accepted.size(); ++j)
            CHECK(inner(cfg.lattice, run.accepted[i].v, run.accepted[j].v) >= 0);
    auto chain = order_chain(cfg.lattice, cfg.center, run.accepted);
    CHECK(as_set(chain) == want);
}

TEST_CASE("acceptance does not depend on the order within a height") {
    for (std::string s : {"U+19", "U+23", "a2(17)", "diag(31,-1,-1)"}) {
        VinbergConfig cfg = default_config(parse_form(s), 3000);
        CAPTURE(s);
        CHECK(as_set(accept_manually(cfg, false)) == as_set(accept_manually(cfg, true)));
    }
}

TEST_CASE("Weyl vectors and symmetries") {
    Tables t = load_tables(default_data_dir());
    const Table4Entry& e2 = entry(t, 2);
    Lattice L2 = Lattice::from_form(e2.form);
    CHECK(verify_weyl_vector(L2, e2.chain.gplus, e2.chain.gminus, e2.chain.rho, e2.chain.rho2).ok);
    CHECK_FALSE(verify_weyl_vector(L2, e2.chain.gplus, e2.chain.gminus, e2.chain.rho, e2.chain.rho2 + 1).ok);

    const QMat& c1 = named(e2, "C1");
    CHECK(is_isometry(L2, c1));
    CHECK(preserves_lattice(L2, c1));
    CHECK(mul(c1, c1) == identity3());
    CHECK(verify_symmetry(L2, c1, SymmetryKind::Central, e2.chain.rho, e2.chain.gplus).ok);
    CHECK_FALSE(verify_symmetry(L2, identity3(), SymmetryKind::Central, e2.chain.rho).ok);

    const Table4Entry& e6 = entry(t, 6);
    Lattice L6 = Lattice::from_form(e6.form);
    CHECK(contains(L6, e6.chain.rho));
    CHECK(norm(L6, e6.chain.rho) == e6.chain.rho2);

    const Table4Entry& e21 = entry(t, 21);
    Lattice L21 = Lattice::from_form(e21.form);
    for (const auto& g : e21.chain.generators) {
        CAPTURE(g.name);
        CHECK(is_isometry(L21, g.m));
        CHECK(preserves_lattice(L21, g.m));
    }
}

TEST_CASE("printed chain roots are roots") {
    Tables t = load_tables(default_data_dir());
    for (const auto& e : t.t4.entries) {
        Lattice L = Lattice::from_form(e.form);
        CAPTURE(e.n);
        for (const auto& v : e.chain.gplus) CHECK(is_root(L, v));
        for (const auto& v : e.chain.gminus) CHECK(is_root(L, v));
    }
}

TEST_CASE("classification of small cases") {
    Classification u = classify_reflectivity(LatticeForm::u_plus(19));
    CHECK(u.kind == Reflectivity::HyperbolicPeriodic);
    REQUIRE(u.rho.has_value());
    CHECK(*u.rho == QVec{57, 19, -11});
    Classification a = classify_reflectivity(LatticeForm::a2(17));
    CHECK(a.kind == Reflectivity::HyperbolicPeriodic);
    REQUIRE(a.rho.has_value());
    CHECK(*a.rho == QVec{3, -17, -17});
    CHECK(to_string(Reflectivity::Inconclusive) == "inconclusive");
}
