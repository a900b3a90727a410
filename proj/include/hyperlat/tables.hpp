#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperlat/lattice.hpp"
#include "hyperlat/narrow.hpp"

namespace hl {

struct NamedMatrix {
    std::string name;  // C1, C2, T, S1, S
    QMat m{};
};

struct ChainData {
    QVec rho{};
    Q rho2;
    std::vector<QVec> gplus, gminus;
    std::vector<std::vector<Q>> ggplus, ggminus;
    std::vector<NamedMatrix> generators;
};

struct Table4Entry {
    int n = 0;
    InvariantTriple inv;
    LatticeForm form;
    ChainData chain;
    int line = 0;
};

struct Table5Entry {
    int n = 0;
    InvariantTriple inv;
    LatticeForm form;
    std::optional<InvariantTriple> equiv;
    std::optional<LatticeForm> equiv_form;
    std::optional<InvariantTriple> tilde;
    std::optional<ChainData> chain;
    int line = 0;
};

struct Table6Entry {
    int n = 0;
    InvariantTriple inv;
    std::optional<LatticeForm> form;  // nullopt: none of the three standard shapes
    bool reflective = false;          // "hr" versus "nr"
};

struct Table7Entry {
    int n = 0;
    InvariantTriple inv;
    std::vector<NarrowType> types;
};

struct Table4 {
    std::vector<std::string> header;
    std::vector<Table4Entry> entries;
};
struct Table5 {
    std::vector<std::string> header;
    std::vector<Table5Entry> entries;
};
struct Table6 {
    std::vector<std::string> header;
    std::vector<Table6Entry> entries;
};
struct Table7 {
    std::vector<std::string> header;
    std::vector<Table7Entry> entries;
};

struct Tables {
    Table4 t4;
    Table5 t5;
    Table6 t6;
    Table7 t7;
};

// Parse failure; `what()` carries file name and line number.
struct TableParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Table4 parse_table4(const std::string& text, const std::string& name = "table4");
Table5 parse_table5(const std::string& text, const std::string& name = "table5");
Table6 parse_table6(const std::string& text, const std::string& name = "table6");
Table7 parse_table7(const std::string& text, const std::string& name = "table7");

std::string serialize(const Table4& t);
std::string serialize(const Table5& t);
std::string serialize(const Table6& t);
std::string serialize(const Table7& t);

std::string read_file(const std::filesystem::path& p);
Tables load_tables(const std::filesystem::path& dir);

// Compiled-in location of the bundled data files.
std::filesystem::path default_data_dir();

// ---- verification ----

enum class CheckStatus { Pass, Fail, Erratum };

struct CheckResult {
    int entry = 0;
    std::string check;  // short rule name
    CheckStatus status = CheckStatus::Pass;
    std::string detail;
};

// A printed value known to disagree with the exact computation.
struct Erratum {
    std::string table;  // "table4", "table5", ...
    int entry = 0;
    std::string check;
    std::string printed;
    std::string computed;
};

const std::vector<Erratum>& known_errata();

struct Report {
    std::vector<CheckResult> results;
    bool ok() const;  // no Fail
    std::size_t count(CheckStatus s) const;
};

// Orbit sample depth for check (vii): words of at most this length.
inline constexpr int kOrbitWordLength = 4;

Report verify_table4(const Table4Entry& e);
Report verify_table4(const Table4& t, std::optional<int> entry = std::nullopt);
Report verify_table5(const Table5Entry& e);
Report verify_table5(const Table5& t, std::optional<int> entry = std::nullopt);

// Table-level consistency: hr marks of Table 6 against Table 4, the forms of
// Table 6 against their invariants, and the representing-zero rows of Table 5.
Report verify_table_consistency(const Tables& t);

// Triplets of the rows of Table 7 that carry the given tag.
std::vector<InvariantTriple> table7_tagged(const Table7& t, NarrowType type);
// (d, eta, h) rows with h in {0, 2} suitable for the class count oracle.
std::vector<InvariantTriple> oracle_rows(const Tables& t);

// The 36 triplets listed as having no admissible narrow part.
const std::vector<InvariantTriple>& untagged_triplets();

// Compares enumerate_main output with Table 7 for one type, element-wise.
Report verify_cross_type(const Table7& t7, NarrowType type, const std::vector<InvariantTriple>& emitted);
// Untagged rows and Table 4 membership in Table 6 / Table 7.
Report verify_cross_static(const Tables& t);

std::string to_string(CheckStatus s);

}  // namespace hl
