#include <doctest.h>

#include "hyperlat/tables.hpp"

using namespace hl;

namespace {

std::string data(const std::string& name) { return read_file(default_data_dir() / name); }

}  // namespace

TEST_CASE("table files round trip byte for byte") {
    std::string t4 = data("table4.txt"), t5 = data("table5.txt"), t6 = data("table6.txt"), t7 = data("table7.txt");
    CHECK(serialize(parse_table4(t4)) == t4);
    CHECK(serialize(parse_table5(t5)) == t5);
    CHECK(serialize(parse_table6(t6)) == t6);
    CHECK(serialize(parse_table7(t7)) == t7);
}

TEST_CASE("table sizes") {
    Tables t = load_tables(default_data_dir());
    CHECK(t.t4.entries.size() == 66);
    CHECK(t.t5.entries.size() == 21);
    CHECK(t.t6.entries.size() == 259);
    CHECK(untagged_triplets().size() == 36);
}

TEST_CASE("parse errors carry the line number") {
    std::string t4 = data("table4.txt");
    auto pos = t4.find("rho2 -119");
    REQUIRE(pos != std::string::npos);
    std::string bad = t4;
    bad.replace(pos, 9, "rho2 -1x9");
    int line = 1;
    for (std::size_t i = 0; i < pos; ++i) line += t4[i] == '\n';
    try {
        parse_table4(bad, "t4");
        FAIL("no exception");
    } catch (const TableParseError& e) {
        CHECK(std::string(e.what()).find("t4:" + std::to_string(line)) != std::string::npos);
    }
}

TEST_CASE("a single Table 4 entry verifies") {
    Tables t = load_tables(default_data_dir());
    Report r = verify_table4(t.t4, 2);
    CHECK(r.ok());
    CHECK(r.count(CheckStatus::Pass) >= 7);
    CHECK(r.count(CheckStatus::Erratum) == 0);
}

TEST_CASE("corrupted printed data is caught") {
    Tables t = load_tables(default_data_dir());
    Table4Entry e = t.t4.entries.at(0);
    REQUIRE(verify_table4(e).ok());
    e.chain.rho2 += 2;
    Report r = verify_table4(e);
    CHECK_FALSE(r.ok());
    Table4Entry f = t.t4.entries.at(0);
    f.chain.gplus.at(0)[2] += 1;
    CHECK_FALSE(verify_table4(f).ok());
    Table4Entry g = t.t4.entries.at(0);
    g.inv.eta ^= 1;
    CHECK_FALSE(verify_table4(g).ok());
}

TEST_CASE("known errata are reported, not failed") {
    Tables t = load_tables(default_data_dir());
    Report r = verify_table5(t.t5, 1);
    CHECK(r.ok());
    CHECK(r.count(CheckStatus::Erratum) == 2);
    Report c = verify_table_consistency(t);
    CHECK(c.ok());
    CHECK(c.count(CheckStatus::Erratum) >= 1);
}

TEST_CASE("oracle rows have h in {0, 2}") {
    Tables t = load_tables(default_data_dir());
    auto rows = oracle_rows(t);
    CHECK_FALSE(rows.empty());
    for (auto& r : rows) CHECK((r.h == 0 || r.h == 2));
}
