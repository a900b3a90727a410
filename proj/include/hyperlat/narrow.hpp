#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hyperlat/arith.hpp"

namespace hl {

enum class NarrowType { AI1, AI0, AII1, AII0, AIII, BI, BII1, BII2, BIII };

inline constexpr std::array<NarrowType, 9> kAllNarrowTypes = {
    NarrowType::AI1,  NarrowType::AI0,  NarrowType::AII1, NarrowType::AII0, NarrowType::AIII,
    NarrowType::BI,   NarrowType::BII1, NarrowType::BII2, NarrowType::BIII};

std::string to_string(NarrowType t);
std::optional<NarrowType> parse_narrow_type(const std::string& s);
int matrix_size(NarrowType t);

// Primitive symmetrized Gram matrix of a narrow part, row-major k x k.
struct NarrowPartRecord {
    NarrowType type;
    int k = 0;
    std::array<i128, 25> b{};
    // off-diagonal alpha values that the main filters consult
    int alpha12 = 0, alpha23 = 0, alpha34 = 0;
    i128 a = 0, a1 = 1, a2 = 1;

    i128 at(int i, int j) const { return b[i * k + j]; }
};

struct EnumerationSummary {
    NarrowType type;
    u64 n = 0;
    i128 a = 1, a1 = 1, a2 = 1;

    void merge(const EnumerationSummary& o);
    bool operator==(const EnumerationSummary&) const = default;
};

struct EnumOptions {
    unsigned threads = 0;  // 0: hardware concurrency
};

using RecordSink = std::function<void(const NarrowPartRecord&)>;

// Runs the narrow-part enumeration for one type. Records reach `sink` in the
// loop order of the sequential enumeration regardless of thread count.
EnumerationSummary enumerate_narrow(NarrowType t, const EnumOptions& opt = {}, const RecordSink& sink = {});

struct InvariantTriple {
    i64 d = 1;
    i64 eta = 0;
    int h = 0;  // 0, 1, 2; kHAbove2 for ">2"

    auto operator<=>(const InvariantTriple&) const = default;
};

inline constexpr int kHAbove2 = 3;

// Class count oracle h(d, eta). nullopt means the oracle cannot answer.
class HOracle {
public:
    virtual ~HOracle() = default;
    virtual std::optional<int> h(i64 d, i64 eta) const = 0;
};

// Backed by tabulated (d, eta, h) rows with h in {0, 2} for d <= limit;
// any other well-formed pair maps to ">2".
class TableHOracle : public HOracle {
public:
    explicit TableHOracle(const std::vector<InvariantTriple>& rows, i64 limit = 100000);
    std::optional<int> h(i64 d, i64 eta) const override;
    std::size_t size() const { return known_.size(); }

private:
    std::map<std::pair<i64, i64>, int> known_;
    i64 limit_;
};

struct UnknownH : std::runtime_error {
    i64 d, eta;
    UnknownH(i64 d_, i64 eta_);
};

// Triplets (d, eta, h) with h in {0, 2} produced by the main-lattice filters
// for narrow parts of type t, sorted by (d, eta).
std::vector<InvariantTriple> enumerate_main(NarrowType t, const HOracle& oracle, const EnumOptions& opt = {});

// Main-lattice filter applied to a single record.
void main_filter(const NarrowPartRecord& r, const HOracle& oracle, std::map<std::pair<i64, i64>, int>& out);

struct GlobalBounds {
    i128 a = 0, a1 = 0, a2 = 0;
    NarrowType arg_a{}, arg_a1{}, arg_a2{};
};

GlobalBounds global_bounds(const std::vector<EnumerationSummary>& s);

}  // namespace hl
