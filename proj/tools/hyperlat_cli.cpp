#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyperlat/hypgeom.hpp"
#include "hyperlat/lattice.hpp"
#include "hyperlat/narrow.hpp"
#include "hyperlat/tables.hpp"
#include "hyperlat/vinberg.hpp"

namespace {

using json = nlohmann::json;
using namespace hl;

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Output {
    std::unique_ptr<std::ofstream> file;
    std::ostream* os = &std::cout;
    bool json = false;

    explicit Output(const std::string& path, bool js) : json(js) {
        if (path.empty()) return;
        file = std::make_unique<std::ofstream>(path);
        if (!*file) throw UsageError("cannot open " + path + " for writing");
        os = file.get();
    }
    std::ostream& operator*() { return *os; }
};

std::string matrix_text(const QMat& m) {
    std::string s;
    for (int i = 0; i < 3; ++i) {
        if (i) s += ';';
        s += to_string(m[i]);
    }
    return s;
}

std::string record_matrix(const NarrowPartRecord& r) {
    std::string s;
    for (int i = 0; i < r.k * r.k; ++i) {
        if (i) s += ',';
        s += hl::to_string(r.b[i]);
    }
    return s;
}

NarrowType type_arg(const std::string& s) {
    auto t = parse_narrow_type(s);
    if (!t) throw UsageError("unknown narrow type '" + s + "'");
    return *t;
}

LatticeForm form_arg(const std::string& s) {
    try {
        return parse_form(s);
    } catch (const FormError& e) {
        throw UsageError(e.what());
    }
}

Q rational_arg(const std::string& s) {
    try {
        return parse_rational(s);
    } catch (const std::exception&) {
        throw UsageError("malformed rational '" + s + "'");
    }
}

int report(std::ostream& os, bool js, const std::string& table, const Report& r) {
    for (const auto& c : r.results) {
        if (js)
            os << json{{"table", table}, {"entry", c.entry}, {"check", c.check}, {"status", to_string(c.status)},
                       {"detail", c.detail}}
                      .dump()
               << '\n';
        else
            os << table << '\t' << c.entry << '\t' << c.check << '\t' << to_string(c.status) << '\t' << c.detail << '\n';
    }
    return r.ok() ? kOk : kVerifyFailed;
}

struct EnumerateArgs {
    std::string type;
    bool main = false;
    std::string emit = "summary";
    std::string out;
    bool json = false;
    unsigned threads = 0;
    std::string data;
};

int run_enumerate(const EnumerateArgs& a) {
    Output out(a.out, a.json);
    EnumOptions opt;
    opt.threads = a.threads;
    std::vector<NarrowType> types;
    if (a.type == "all")
        types.assign(kAllNarrowTypes.begin(), kAllNarrowTypes.end());
    else
        types.push_back(type_arg(a.type));
    if (a.main) {
        Tables t = load_tables(a.data.empty() ? default_data_dir() : std::filesystem::path(a.data));
        TableHOracle oracle(oracle_rows(t));
        for (NarrowType ty : types)
            for (const auto& tr : enumerate_main(ty, oracle, opt)) {
                if (a.json)
                    *out << json{{"type", to_string(ty)}, {"d", tr.d}, {"eta", tr.eta}, {"h", tr.h}}.dump() << '\n';
                else
                    *out << tr.d << '\t' << tr.eta << '\t' << tr.h << '\n';
            }
        return kOk;
    }
    for (NarrowType ty : types) {
        RecordSink sink;
        if (a.emit == "records")
            sink = [&](const NarrowPartRecord& r) {
                if (a.json)
                    *out << json{{"type", to_string(r.type)}, {"k", r.k}, {"B", record_matrix(r)},
                                 {"a", hl::to_string(r.a)}, {"a1", hl::to_string(r.a1)}, {"a2", hl::to_string(r.a2)}}
                                .dump()
                         << '\n';
                else
                    *out << to_string(r.type) << '\t' << r.k << '\t' << record_matrix(r) << '\t' << hl::to_string(r.a)
                         << '\t' << hl::to_string(r.a1) << '\t' << hl::to_string(r.a2) << '\n';
            };
        EnumerationSummary s = enumerate_narrow(ty, opt, sink);
        if (a.emit == "summary") {
            if (a.json)
                *out << json{{"type", to_string(ty)}, {"n", s.n}, {"a", hl::to_string(s.a)},
                             {"a1", hl::to_string(s.a1)}, {"a2", hl::to_string(s.a2)}}
                            .dump()
                     << '\n';
            else
                *out << to_string(ty) << '\t' << s.n << '\t' << hl::to_string(s.a) << '\t' << hl::to_string(s.a1)
                     << '\t' << hl::to_string(s.a2) << '\n';
        }
    }
    return kOk;
}

struct VinbergArgs {
    std::string form;
    std::string height;  // empty: 1000 for roots and chain, default budget for classify
    std::string emit = "roots";
    std::size_t max_roots = 200;
    std::string out;
    bool json = false;
};

void emit_roots(Output& out, const std::vector<RootInfo>& roots) {
    for (const auto& r : roots) {
        if (out.json)
            *out << json{{"root", to_string(r.v)}, {"square", to_string(r.square)}, {"height", to_string(r.height)}}.dump()
                 << '\n';
        else
            *out << to_string(r.v) << '\t' << to_string(r.square) << '\t' << to_string(r.height) << '\n';
    }
}

int run_vinberg_cmd(const VinbergArgs& a) {
    LatticeForm f = form_arg(a.form);
    Q H = a.height.empty() ? Q(a.emit == "classify" ? 0 : 1000) : rational_arg(a.height);
    if (H < 0) throw UsageError("--height must be non-negative");
    Output out(a.out, a.json);
    if (a.emit == "classify") {
        ClassifyBudget b;
        b.max_height = H;
        b.max_roots = a.max_roots;
        Classification c = classify_reflectivity(f, b);
        Lattice L = Lattice::from_form(f);
        if (a.json) {
            json j{{"form", format_form(f)}, {"kind", to_string(c.kind)}, {"note", c.note}, {"sides", c.chain.size()}};
            if (c.rho) {
                j["rho"] = to_string(*c.rho);
                j["rho2"] = to_string(norm(L, *c.rho));
            }
            json gens = json::array();
            for (const auto& m : c.generators) gens.push_back(matrix_text(m));
            j["generators"] = gens;
            *out << j.dump() << '\n';
        } else {
            *out << "kind\t" << to_string(c.kind) << '\n';
            *out << "sides\t" << c.chain.size() << '\n';
            if (c.rho) *out << "rho\t" << to_string(*c.rho) << '\t' << to_string(norm(L, *c.rho)) << '\n';
            for (const auto& m : c.generators) *out << "symmetry\t" << matrix_text(m) << '\n';
            *out << "note\t" << c.note << '\n';
        }
        return kOk;
    }
    VinbergConfig cfg = default_config(f, H);
    cfg.max_roots = a.max_roots;
    VinbergRun run = run_vinberg(cfg);
    emit_roots(out, a.emit == "chain" ? order_chain(cfg.lattice, cfg.center, run.accepted) : run.accepted);
    return kOk;
}

struct VerifyArgs {
    std::string what;
    std::optional<int> entry;
    std::string data;
    std::string out;
    bool json = false;
    unsigned threads = 0;
};

int run_verify(const VerifyArgs& a) {
    Tables t = load_tables(a.data.empty() ? default_data_dir() : std::filesystem::path(a.data));
    Output out(a.out, a.json);
    if (a.what == "table4") return report(*out, a.json, "table4", verify_table4(t.t4, a.entry));
    if (a.what == "table5") return report(*out, a.json, "table5", verify_table5(t.t5, a.entry));
    if (a.what == "consistency") return report(*out, a.json, "tables", verify_table_consistency(t));
    int rc = report(*out, a.json, "cross", verify_cross_static(t));
    TableHOracle oracle(oracle_rows(t));
    EnumOptions opt;
    opt.threads = a.threads;
    for (NarrowType ty : kAllNarrowTypes) {
        auto emitted = enumerate_main(ty, oracle, opt);
        rc = std::max(rc, report(*out, a.json, "cross", verify_cross_type(t.t7, ty, emitted)));
        out.os->flush();
    }
    return rc;
}

int run_invariants(const std::string& text, bool js) {
    LatticeForm f = form_arg(text);
    try {
        check_legal(f);
    } catch (const FormError& e) {
        throw UsageError(e.what());
    }
    DEta de = invariants_d_eta(f);
    bool main = is_main(f);
    if (js)
        std::cout << json{{"form", format_form(f)}, {"d", de.d}, {"eta", de.eta}, {"main", main}}.dump() << '\n';
    else
        std::cout << de.d << '\t' << de.eta << '\t' << (main ? "main" : "not-main") << '\n';
    return kOk;
}

int run_constants(bool js) {
    for (const auto& [name, v] : hyp::bound_constants()) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%#.10g", v);
        if (js)
            std::cout << json{{"name", name}, {"value", buf}}.dump() << '\n';
        else
            std::cout << name << '\t' << buf << '\n';
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations for rank 3 hyperbolic lattices"};
    app.require_subcommand(1);

    EnumerateArgs ea;
    auto* en = app.add_subcommand("enumerate", "narrow-part enumeration or main-lattice triplets");
    en->add_option("type", ea.type, "AI1 ... BIII, or all")->required();
    en->add_flag("--main", ea.main, "emit (d, eta, h) triplets");
    en->add_option("--emit", ea.emit, "records or summary")->check(CLI::IsMember({"records", "summary"}));
    en->add_option("--out", ea.out, "output file");
    en->add_flag("--json", ea.json, "one JSON object per line");
    en->add_option("--threads", ea.threads, "worker threads, 0 for all cores");
    en->add_option("--data", ea.data, "table directory for the class count oracle");

    VinbergArgs va;
    auto* vb = app.add_subcommand("vinberg", "Vinberg's algorithm on a standard form");
    vb->add_option("--form", va.form, "U+d, diag(...), a2(n)")->required();
    vb->add_option("--height", va.height, "height bound, an exact rational (default 1000; classify: built-in budget)");
    vb->add_option("--emit", va.emit, "roots, chain or classify")->check(CLI::IsMember({"roots", "chain", "classify"}));
    vb->add_option("--max-roots", va.max_roots, "stop after this many accepted roots");
    vb->add_option("--out", va.out, "output file");
    vb->add_flag("--json", va.json, "one JSON object per line");

    VerifyArgs ra;
    auto* ve = app.add_subcommand("verify", "check the bundled tables");
    ve->add_option("what", ra.what, "table4, table5, consistency or cross")
        ->required()
        ->check(CLI::IsMember({"table4", "table5", "consistency", "cross"}));
    ve->add_option("--entry", ra.entry, "single entry number");
    ve->add_option("--data", ra.data, "table directory");
    ve->add_option("--out", ra.out, "output file");
    ve->add_flag("--json", ra.json, "one JSON object per line");
    ve->add_option("--threads", ra.threads, "worker threads for cross");

    std::string form_text;
    bool inv_json = false;
    auto* iv = app.add_subcommand("invariants", "d and eta of a standard form");
    iv->add_option("--form", form_text, "U+d, diag(...), a2(n)")->required();
    iv->add_flag("--json", inv_json, "JSON output");

    bool const_json = false;
    auto* co = app.add_subcommand("constants", "bound constants of the hyperbolic estimates");
    co->add_flag("--json", const_json, "one JSON object per line");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (en->parsed()) return run_enumerate(ea);
        if (vb->parsed()) return run_vinberg_cmd(va);
        if (ve->parsed()) return run_verify(ra);
        if (iv->parsed()) return run_invariants(form_text, inv_json);
        if (co->parsed()) return run_constants(const_json);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kVerifyFailed;
    }
    return kUsage;
}
