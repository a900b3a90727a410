#include "hyperlat/tables.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "hyperlat/vinberg.hpp"

namespace hl {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines = split(text, '\n');
    if (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

struct Ctx {
    std::string name;
    int line = 0;
    [[noreturn]] void fail(const std::string& msg) const {
        throw TableParseError(name + ":" + std::to_string(line) + ": " + msg);
    }
};

i64 to_int(const Ctx& c, const std::string& s) {
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &pos);
    } catch (const std::exception&) {
        c.fail("bad integer '" + s + "'");
    }
    if (pos != s.size()) c.fail("bad integer '" + s + "'");
    return v;
}

Q to_q(const Ctx& c, const std::string& s) {
    try {
        return parse_rational(s);
    } catch (const std::exception& e) {
        c.fail(e.what());
    }
}

std::vector<Q> row_of(const Ctx& c, const std::string& s) {
    std::vector<Q> r;
    for (const auto& x : split(s, ',')) r.push_back(to_q(c, x));
    return r;
}

QVec vec_of(const Ctx& c, const std::string& s) {
    auto r = row_of(c, s);
    if (r.size() != 3) c.fail("expected 3 coordinates in '" + s + "'");
    return {r[0], r[1], r[2]};
}

std::vector<std::vector<Q>> matrix_of(const Ctx& c, const std::string& s) {
    std::vector<std::vector<Q>> m;
    for (const auto& row : split(s, ';')) m.push_back(row_of(c, row));
    return m;
}

std::vector<QVec> rows3_of(const Ctx& c, const std::string& s) {
    std::vector<QVec> out;
    for (const auto& row : split(s, ';')) out.push_back(vec_of(c, row));
    return out;
}

QMat qmat_of(const Ctx& c, const std::string& s) {
    auto rows = rows3_of(c, s);
    if (rows.size() != 3) c.fail("expected a 3x3 matrix");
    return {rows[0], rows[1], rows[2]};
}

InvariantTriple triple_of(const Ctx& c, const std::string& s) {
    auto p = split(s, ',');
    if (p.size() != 3) c.fail("expected d,eta,h in '" + s + "'");
    return {to_int(c, p[0]), to_int(c, p[1]), int(to_int(c, p[2]))};
}

LatticeForm form_of(const Ctx& c, const std::string& s) {
    try {
        return parse_form(s);
    } catch (const std::exception& e) {
        c.fail(e.what());
    }
}

std::string fmt_row(const std::vector<Q>& r) {
    std::string s;
    for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + to_string(r[i]);
    return s;
}

std::string fmt_matrix(const std::vector<std::vector<Q>>& m) {
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) s += (i ? ";" : "") + fmt_row(m[i]);
    return s;
}

std::string fmt_rows(const std::vector<QVec>& rows) {
    std::string s;
    for (std::size_t i = 0; i < rows.size(); ++i) s += (i ? ";" : "") + to_string(rows[i]);
    return s;
}

std::string fmt_qmat(const QMat& m) { return fmt_rows({m[0], m[1], m[2]}); }

std::string fmt_triple(const InvariantTriple& t) {
    return std::to_string(t.d) + "," + std::to_string(t.eta) + "," + std::to_string(t.h);
}

// A record block: (key, value, line) in file order.
struct Field {
    std::string key, value;
    int line;
};
using Block = std::vector<Field>;

struct RecordFile {
    std::vector<std::string> header;
    std::vector<Block> blocks;
};

RecordFile split_records(const std::string& text, const std::string& name) {
    RecordFile rf;
    auto lines = lines_of(text);
    std::size_t i = 0;
    while (i < lines.size() && !lines[i].empty() && lines[i][0] == '#') rf.header.push_back(lines[i++]);
    Block cur;
    for (; i < lines.size(); ++i) {
        Ctx c{name, int(i + 1)};
        const std::string& l = lines[i];
        if (l.empty()) {
            if (!cur.empty()) rf.blocks.push_back(std::move(cur));
            cur.clear();
            continue;
        }
        auto sp = l.find(' ');
        if (sp == std::string::npos || sp == 0 || sp + 1 >= l.size()) c.fail("expected 'key value'");
        cur.push_back({l.substr(0, sp), l.substr(sp + 1), int(i + 1)});
    }
    if (!cur.empty()) rf.blocks.push_back(std::move(cur));
    return rf;
}

std::string join_records(const std::vector<std::string>& header, const std::vector<std::string>& records) {
    std::string out;
    for (const auto& h : header) out += h + "\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (i || !header.empty()) out += "\n";
        out += records[i];
    }
    return out;
}

bool is_generator_key(const std::string& k) { return k == "C1" || k == "C2" || k == "T" || k == "S1" || k == "S"; }

void check_chain(const Ctx& c, const ChainData& ch) {
    auto square = [&](const std::vector<std::vector<Q>>& g, std::size_t n, const char* what) {
        if (g.size() != n) c.fail(std::string(what) + " dimension does not match the number of rows");
        for (std::size_t i = 0; i < n; ++i) {
            if (g[i].size() != n) c.fail(std::string(what) + " is not square");
            for (std::size_t j = 0; j < n; ++j)
                if (g[i][j] != g[j][i]) c.fail(std::string(what) + " is not symmetric");
        }
    };
    if (ch.gplus.empty()) c.fail("missing gplus");
    square(ch.ggplus, ch.gplus.size(), "ggplus");
    square(ch.ggminus, ch.gminus.size(), "ggminus");
    if (ch.generators.empty()) c.fail("no generators");
}

void check_triple(const Ctx& c, const InvariantTriple& t) {
    if (t.d < 1 || !is_squarefree(i128(t.d))) c.fail("d is not square-free");
    i64 k = i64(odd_primes(u64(t.d)).size());
    if (t.eta < 0 || t.eta >= (i64(1) << k)) c.fail("eta out of range");
}

// Fills the chain fields; returns false for keys it does not own.
bool chain_field(const Ctx& c, ChainData& ch, const Field& f, bool& have_rho2) {
    if (f.key == "rho") ch.rho = vec_of(c, f.value);
    else if (f.key == "rho2") ch.rho2 = to_q(c, f.value), have_rho2 = true;
    else if (f.key == "gplus") ch.gplus = rows3_of(c, f.value);
    else if (f.key == "ggplus") ch.ggplus = matrix_of(c, f.value);
    else if (f.key == "gminus") ch.gminus = rows3_of(c, f.value);
    else if (f.key == "ggminus") ch.ggminus = matrix_of(c, f.value);
    else if (is_generator_key(f.key)) ch.generators.push_back({f.key, qmat_of(c, f.value)});
    else return false;
    return true;
}

std::string fmt_chain(const ChainData& ch) {
    std::string s;
    s += "rho " + to_string(ch.rho) + "\n";
    s += "rho2 " + to_string(ch.rho2) + "\n";
    s += "gplus " + fmt_rows(ch.gplus) + "\n";
    s += "ggplus " + fmt_matrix(ch.ggplus) + "\n";
    if (!ch.gminus.empty()) {
        s += "gminus " + fmt_rows(ch.gminus) + "\n";
        s += "ggminus " + fmt_matrix(ch.ggminus) + "\n";
    }
    for (const auto& g : ch.generators) s += g.name + " " + fmt_qmat(g.m) + "\n";
    return s;
}

}  // namespace

// ---- parsing ----

Table4 parse_table4(const std::string& text, const std::string& name) {
    RecordFile rf = split_records(text, name);
    Table4 t;
    t.header = rf.header;
    for (const Block& b : rf.blocks) {
        Table4Entry e;
        e.line = b.front().line;
        bool have[5] = {false, false, false, false, false}, have_rho2 = false;
        for (const Field& f : b) {
            Ctx c{name, f.line};
            if (f.key == "N") e.n = int(to_int(c, f.value)), have[0] = true;
            else if (f.key == "d") e.inv.d = to_int(c, f.value), have[1] = true;
            else if (f.key == "eta") e.inv.eta = to_int(c, f.value), have[2] = true;
            else if (f.key == "h") e.inv.h = int(to_int(c, f.value)), have[3] = true;
            else if (f.key == "form") e.form = form_of(c, f.value), have[4] = true;
            else if (!chain_field(c, e.chain, f, have_rho2)) c.fail("unknown key '" + f.key + "'");
        }
        Ctx c{name, e.line};
        for (bool h : have)
            if (!h) c.fail("record lacks one of N, d, eta, h, form");
        if (!have_rho2) c.fail("record lacks rho2");
        if (e.inv.h != 0 && e.inv.h != 2) c.fail("entry " + std::to_string(e.n) + ": h must be 0 or 2");
        check_triple(c, e.inv);
        check_chain(c, e.chain);
        t.entries.push_back(std::move(e));
    }
    return t;
}

Table5 parse_table5(const std::string& text, const std::string& name) {
    RecordFile rf = split_records(text, name);
    Table5 t;
    t.header = rf.header;
    for (const Block& b : rf.blocks) {
        Table5Entry e;
        e.line = b.front().line;
        ChainData ch;
        bool any_chain = false, have_rho2 = false;
        for (const Field& f : b) {
            Ctx c{name, f.line};
            if (f.key == "N") e.n = int(to_int(c, f.value));
            else if (f.key == "d") e.inv.d = to_int(c, f.value);
            else if (f.key == "eta") e.inv.eta = to_int(c, f.value);
            else if (f.key == "h") e.inv.h = int(to_int(c, f.value));
            else if (f.key == "form") e.form = form_of(c, f.value);
            else if (f.key == "equiv") e.equiv = triple_of(c, f.value);
            else if (f.key == "equivform") e.equiv_form = form_of(c, f.value);
            else if (f.key == "tilde") e.tilde = triple_of(c, f.value);
            else if (chain_field(c, ch, f, have_rho2)) any_chain = true;
            else c.fail("unknown key '" + f.key + "'");
        }
        Ctx c{name, e.line};
        if (e.n == 0) c.fail("record lacks N");
        if (e.equiv.has_value() != e.equiv_form.has_value()) c.fail("equiv and equivform must appear together");
        if (e.equiv.has_value() == any_chain) c.fail("entry needs either an equivalence or a chain, not both");
        if (any_chain) {
            if (!have_rho2) c.fail("record lacks rho2");
            check_chain(c, ch);
            e.chain = std::move(ch);
        }
        check_triple(c, e.inv);
        t.entries.push_back(std::move(e));
    }
    return t;
}

Table6 parse_table6(const std::string& text, const std::string& name) {
    Table6 t;
    auto lines = lines_of(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        Ctx c{name, int(i + 1)};
        if (!lines[i].empty() && lines[i][0] == '#') {
            t.header.push_back(lines[i]);
            continue;
        }
        auto p = split(lines[i], '\t');
        if (p.size() != 6) c.fail("expected 6 tab-separated fields");
        Table6Entry e;
        e.n = int(to_int(c, p[0]));
        e.inv = {to_int(c, p[1]), to_int(c, p[2]), int(to_int(c, p[3]))};
        if (p[4] != "-") e.form = form_of(c, p[4]);
        if (p[5] == "hr") e.reflective = true;
        else if (p[5] != "nr") c.fail("verdict must be hr or nr");
        if (e.inv.h != 2) c.fail("h must be 2");
        check_triple(c, e.inv);
        t.entries.push_back(std::move(e));
    }
    return t;
}

Table7 parse_table7(const std::string& text, const std::string& name) {
    Table7 t;
    auto lines = lines_of(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        Ctx c{name, int(i + 1)};
        if (!lines[i].empty() && lines[i][0] == '#') {
            t.header.push_back(lines[i]);
            continue;
        }
        auto p = split(lines[i], '\t');
        if (p.size() != 5) c.fail("expected 5 tab-separated fields");
        Table7Entry e;
        e.n = int(to_int(c, p[0]));
        e.inv = {to_int(c, p[1]), to_int(c, p[2]), int(to_int(c, p[3]))};
        if (p[4] != "-") {
            for (const auto& s : split(p[4], ',')) {
                auto ty = parse_narrow_type(s);
                if (!ty) c.fail("unknown type '" + s + "'");
                e.types.push_back(*ty);
            }
        }
        if (e.inv.h != 0 && e.inv.h != 2) c.fail("h must be 0 or 2");
        check_triple(c, e.inv);
        t.entries.push_back(std::move(e));
    }
    return t;
}

// ---- serialization ----

std::string serialize(const Table4& t) {
    std::vector<std::string> recs;
    for (const auto& e : t.entries) {
        std::string s = "N " + std::to_string(e.n) + "\n";
        s += "d " + std::to_string(e.inv.d) + "\neta " + std::to_string(e.inv.eta) + "\nh " + std::to_string(e.inv.h) +
             "\n";
        s += "form " + format_form(e.form) + "\n";
        s += fmt_chain(e.chain);
        recs.push_back(s);
    }
    return join_records(t.header, recs);
}

std::string serialize(const Table5& t) {
    std::vector<std::string> recs;
    for (const auto& e : t.entries) {
        std::string s = "N " + std::to_string(e.n) + "\n";
        s += "d " + std::to_string(e.inv.d) + "\neta " + std::to_string(e.inv.eta) + "\nh " + std::to_string(e.inv.h) +
             "\n";
        s += "form " + format_form(e.form) + "\n";
        if (e.equiv) s += "equiv " + fmt_triple(*e.equiv) + "\nequivform " + format_form(*e.equiv_form) + "\n";
        if (e.tilde) s += "tilde " + fmt_triple(*e.tilde) + "\n";
        if (e.chain) s += fmt_chain(*e.chain);
        recs.push_back(s);
    }
    return join_records(t.header, recs);
}

std::string serialize(const Table6& t) {
    std::string out;
    for (const auto& h : t.header) out += h + "\n";
    for (const auto& e : t.entries) {
        out += std::to_string(e.n) + "\t" + std::to_string(e.inv.d) + "\t" + std::to_string(e.inv.eta) + "\t" +
               std::to_string(e.inv.h) + "\t" + (e.form ? format_form(*e.form) : "-") + "\t" +
               (e.reflective ? "hr" : "nr") + "\n";
    }
    return out;
}

std::string serialize(const Table7& t) {
    std::string out;
    for (const auto& h : t.header) out += h + "\n";
    for (const auto& e : t.entries) {
        std::string types;
        for (std::size_t i = 0; i < e.types.size(); ++i) types += (i ? "," : "") + to_string(e.types[i]);
        out += std::to_string(e.n) + "\t" + std::to_string(e.inv.d) + "\t" + std::to_string(e.inv.eta) + "\t" +
               std::to_string(e.inv.h) + "\t" + (types.empty() ? "-" : types) + "\n";
    }
    return out;
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw TableParseError("cannot open " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Tables load_tables(const std::filesystem::path& dir) {
    Tables t;
    t.t4 = parse_table4(read_file(dir / "table4.txt"), "table4.txt");
    t.t5 = parse_table5(read_file(dir / "table5.txt"), "table5.txt");
    t.t6 = parse_table6(read_file(dir / "table6.txt"), "table6.txt");
    t.t7 = parse_table7(read_file(dir / "table7.txt"), "table7.txt");
    return t;
}

std::filesystem::path default_data_dir() {
#ifdef HYPERLAT_DATA_DIR
    return HYPERLAT_DATA_DIR;
#else
    return "data";
#endif
}

// ---- verification ----

std::string to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "PASS";
        case CheckStatus::Fail: return "FAIL";
        case CheckStatus::Erratum: return "ERRATUM";
    }
    return "?";
}

bool Report::ok() const { return count(CheckStatus::Fail) == 0; }

std::size_t Report::count(CheckStatus s) const {
    return std::size_t(std::count_if(results.begin(), results.end(), [&](const CheckResult& r) { return r.status == s; }));
}

const std::vector<Erratum>& known_errata() {
    static const std::vector<Erratum> e = {
        {"table5", 1, "invariants", "d=30", "d=26"},
        {"table5", 1, "determinant", "d=30", "d=26"},
        {"table6", 141, "invariants", "d=665", "d=565"},
        {"table7", 202, "AII0-tag", "absent", "present"},
    };
    return e;
}

namespace {

struct Recorder {
    std::string table;
    int entry;
    Report& rep;

    void add(const std::string& check, bool ok, const std::string& detail = {}) {
        rep.results.push_back({entry, check, ok ? CheckStatus::Pass : CheckStatus::Fail, detail});
    }
    // A mismatch between printed and computed values; known errata are
    // reported as such, anything else fails.
    void compare(const std::string& check, const std::string& printed, const std::string& computed) {
        if (printed == computed) {
            add(check, true);
            return;
        }
        for (const auto& e : known_errata())
            if (e.table == table && e.entry == entry && e.check == check && e.printed == printed && e.computed == computed) {
                rep.results.push_back({entry, check, CheckStatus::Erratum, "printed " + printed + ", computed " + computed});
                return;
            }
        add(check, false, "printed " + printed + ", computed " + computed);
    }
};

std::string fmt_deta(i64 d, i64 eta) { return "d=" + std::to_string(d) + " eta=" + std::to_string(eta); }

void compare_deta(Recorder& r, const LatticeForm& f, const InvariantTriple& inv) {
    try {
        DEta a = invariants_d_eta(f);
        DEta b = invariants_d_eta(Lattice::from_form(f));
        if (!(a == b)) {
            r.add("invariants", false, "shape formula and discriminant form disagree");
            return;
        }
        if (a.d != inv.d)
            r.compare("invariants", "d=" + std::to_string(inv.d), "d=" + std::to_string(a.d));
        else
            r.compare("invariants", fmt_deta(inv.d, inv.eta), fmt_deta(a.d, a.eta));
    } catch (const std::exception& e) {
        r.add("invariants", false, e.what());
    }
}

SymmetryKind kind_of(const std::string& name) {
    if (name == "T") return SymmetryKind::Translation;
    if (name == "S1" || name == "S") return SymmetryKind::Sliding;
    return SymmetryKind::Central;
}

std::string key_of(const QVec& v) { return to_string(v); }

void verify_chain(Recorder& r, const Lattice& L, const ChainData& ch) {
    // (ii) roots
    {
        bool ok = true;
        std::string detail;
        auto scan = [&](const std::vector<QVec>& rows, const char* tag) {
            for (std::size_t i = 0; i < rows.size() && ok; ++i) {
                try {
                    if (!is_root(L, rows[i])) ok = false, detail = std::string(tag) + " row " + std::to_string(i + 1) + " is not a root";
                } catch (const NotInLattice&) {
                    ok = false, detail = std::string(tag) + " row " + std::to_string(i + 1) + " is not in the lattice";
                }
            }
        };
        scan(ch.gplus, "Gamma+");
        scan(ch.gminus, "Gamma-");
        r.add("roots", ok, detail);
    }
    // (iii) Gram matrices
    {
        bool ok = true;
        std::string detail;
        auto cmp = [&](const std::vector<QVec>& rows, const std::vector<std::vector<Q>>& g, const char* tag) {
            for (std::size_t i = 0; i < rows.size() && ok; ++i)
                for (std::size_t j = 0; j < rows.size() && ok; ++j) {
                    Q v = inner(L, rows[i], rows[j]);
                    if (v != g[i][j])
                        ok = false, detail = std::string(tag) + " entry (" + std::to_string(i + 1) + "," +
                                             std::to_string(j + 1) + "): printed " + to_string(g[i][j]) +
                                             ", computed " + to_string(v);
                }
        };
        cmp(ch.gplus, ch.ggplus, "G(Gamma+)");
        cmp(ch.gminus, ch.ggminus, "G(Gamma-)");
        r.add("gram", ok, detail);
    }
    // (iv) rho^2
    r.compare("rho2", to_string(ch.rho2), to_string(norm(L, ch.rho)));
    // (v) Weyl vector
    try {
        Verdict v = verify_weyl_vector(L, ch.gplus, ch.gminus, ch.rho);
        r.add("weyl", v.ok, v.reason);
    } catch (const std::exception& e) {
        r.add("weyl", false, e.what());
    }
    // (vi) generators
    std::vector<QVec> all = ch.gplus;
    all.insert(all.end(), ch.gminus.begin(), ch.gminus.end());
    {
        bool ok = true;
        std::string detail;
        for (const auto& g : ch.generators) {
            try {
                Verdict v = verify_symmetry(L, g.m, kind_of(g.name), ch.rho, all);
                if (!v.ok && ok) ok = false, detail = g.name + ": " + v.reason;
            } catch (const std::exception& e) {
                if (ok) ok = false, detail = g.name + ": " + e.what();
            }
        }
        r.add("symmetry", ok, detail);
    }
    // (vii) orbit sample
    {
        std::vector<QMat> gens;
        for (const auto& g : ch.generators) {
            gens.push_back(g.m);
            QMat inv = inverse(g.m);
            if (inv != g.m) gens.push_back(inv);
        }
        std::map<std::string, QMat> elems{{fmt_qmat(identity3()), identity3()}};
        std::vector<QMat> frontier{identity3()};
        for (int len = 0; len < kOrbitWordLength; ++len) {
            std::vector<QMat> next;
            for (const auto& w : frontier)
                for (const auto& g : gens) {
                    QMat p = mul(g, w);
                    if (elems.emplace(fmt_qmat(p), p).second) next.push_back(p);
                }
            frontier = std::move(next);
        }
        std::map<std::string, QVec> orbit;
        for (const auto& [k, m] : elems)
            for (const auto& a : all) {
                QVec im = mul(m, a);
                orbit.emplace(key_of(im), im);
            }
        bool ok = true;
        std::string detail;
        std::vector<QVec> roots;
        for (const auto& [k, v] : orbit) {
            bool root = false;
            try {
                root = is_root(L, v);
            } catch (const NotInLattice&) {
            }
            if (!root) {
                ok = false, detail = "orbit element " + k + " is not a root";
                break;
            }
            roots.push_back(v);
        }
        for (std::size_t i = 0; i < roots.size() && ok; ++i)
            for (std::size_t j = i + 1; j < roots.size() && ok; ++j)
                if (inner(L, roots[i], roots[j]) < 0)
                    ok = false, detail = "negative product between " + key_of(roots[i]) + " and " + key_of(roots[j]);
        r.add("orbit", ok, ok ? std::to_string(roots.size()) + " roots" : detail);
    }
}

}  // namespace

Report verify_table4(const Table4Entry& e) {
    Report rep;
    Recorder r{"table4", e.n, rep};
    compare_deta(r, e.form, e.inv);
    Lattice L = Lattice::from_form(e.form);
    verify_chain(r, L, e.chain);
    return rep;
}

Report verify_table4(const Table4& t, std::optional<int> entry) {
    Report rep;
    for (const auto& e : t.entries) {
        if (entry && e.n != *entry) continue;
        Report one = verify_table4(e);
        rep.results.insert(rep.results.end(), one.results.begin(), one.results.end());
    }
    if (entry && rep.results.empty()) rep.results.push_back({*entry, "entry", CheckStatus::Fail, "no such entry"});
    return rep;
}

Report verify_table5(const Table5Entry& e) {
    Report rep;
    Recorder r{"table5", e.n, rep};
    compare_deta(r, e.form, e.inv);
    Lattice L = Lattice::from_form(e.form);
    r.add("odd", !is_main(e.form), "form is a main lattice");
    // the associated main lattice: the even sublattice with the form halved
    const InvariantTriple* main = e.equiv ? &*e.equiv : (e.tilde ? &*e.tilde : nullptr);
    if (main) {
        r.compare("determinant", "d=" + std::to_string(e.inv.d), "d=" + std::to_string(2 * main->d));
        try {
            Lattice S = scaled(even_sublattice(L), Q(1, 2));
            DEta m = invariants_d_eta(S);
            r.compare("main-lattice", fmt_deta(main->d, main->eta), fmt_deta(m.d, m.eta));
        } catch (const std::exception& ex) {
            r.add("main-lattice", false, ex.what());
        }
    }
    if (e.equiv_form) {
        try {
            DEta m = invariants_d_eta(*e.equiv_form);
            r.compare("equiv-form", fmt_deta(e.equiv->d, e.equiv->eta), fmt_deta(m.d, m.eta));
        } catch (const std::exception& ex) {
            r.add("equiv-form", false, ex.what());
        }
    }
    if (e.chain) verify_chain(r, L, *e.chain);
    return rep;
}

Report verify_table5(const Table5& t, std::optional<int> entry) {
    Report rep;
    for (const auto& e : t.entries) {
        if (entry && e.n != *entry) continue;
        Report one = verify_table5(e);
        rep.results.insert(rep.results.end(), one.results.begin(), one.results.end());
    }
    if (entry && rep.results.empty()) rep.results.push_back({*entry, "entry", CheckStatus::Fail, "no such entry"});
    return rep;
}

Report verify_table_consistency(const Tables& t) {
    Report rep;
    auto add = [&](int entry, const std::string& check, bool ok, const std::string& detail = {}) {
        rep.results.push_back({entry, check, ok ? CheckStatus::Pass : CheckStatus::Fail, detail});
    };
    add(0, "table4-count", t.t4.entries.size() == 66, std::to_string(t.t4.entries.size()) + " entries");
    add(0, "table5-count", t.t5.entries.size() == 21, std::to_string(t.t5.entries.size()) + " entries");
    add(0, "table6-count", t.t6.entries.size() == 259, std::to_string(t.t6.entries.size()) + " entries");
    std::size_t equiv = std::count_if(t.t5.entries.begin(), t.t5.entries.end(), [](auto& e) { return e.equiv.has_value(); });
    add(0, "table5-equivalent", equiv == 11, std::to_string(equiv) + " flagged");

    std::set<std::pair<i64, i64>> t4keys;
    std::size_t h0 = 0;
    for (const auto& e : t.t4.entries) {
        t4keys.insert({e.inv.d, e.inv.eta});
        if (e.inv.h == 0) ++h0;
    }
    std::size_t hr = 0;
    for (const auto& e : t.t6.entries) {
        if (!e.reflective) continue;
        ++hr;
        if (!t4keys.count({e.inv.d, e.inv.eta})) add(e.n, "hr-in-table4", false, fmt_deta(e.inv.d, e.inv.eta));
    }
    add(0, "hr-count", hr == 61 && h0 == 5, std::to_string(hr) + " hr marks, " + std::to_string(h0) + " with h=0");

    std::vector<int> missing;
    for (const auto& e : t.t6.entries) {
        if (!e.form) {
            missing.push_back(e.n);
            continue;
        }
        Report one;
        Recorder r{"table6", e.n, one};
        compare_deta(r, *e.form, e.inv);
        for (auto& x : one.results)
            if (x.status != CheckStatus::Pass) rep.results.push_back(x);
    }
    add(0, "missing-forms", missing == std::vector<int>{204, 206, 215, 245, 247});

    std::set<i64> zero_d;
    for (const auto& e : t.t5.entries)
        if (represents_zero(Lattice::from_form(e.form))) zero_d.insert(e.inv.d);
    add(0, "table5-isotropic", zero_d == std::set<i64>{38, 46, 70, 78});

    std::set<i64> u_rows;
    for (const auto& e : t.t4.entries) {
        bool u = e.form.shape == Shape::UPlusNeg;
        bool z = represents_zero(Lattice::from_form(e.form));
        if (u != z) add(e.n, "table4-isotropic", false, "representing zero must coincide with the U+d shape");
        if (u) u_rows.insert(e.inv.d);
    }
    std::string listed;
    for (i64 d : u_rows) listed += (listed.empty() ? "" : ",") + std::to_string(d);
    const std::set<i64> named = {19, 23, 35, 39, 46, 58, 62, 70};
    add(0, "table4-isotropic", std::includes(u_rows.begin(), u_rows.end(), named.begin(), named.end()),
        "U+d rows at d=" + listed);
    return rep;
}

std::vector<InvariantTriple> table7_tagged(const Table7& t, NarrowType type) {
    std::vector<InvariantTriple> out;
    for (const auto& e : t.entries)
        if (std::find(e.types.begin(), e.types.end(), type) != e.types.end()) out.push_back(e.inv);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<InvariantTriple> oracle_rows(const Tables& t) {
    std::vector<InvariantTriple> rows;
    for (const auto& e : t.t6.entries) rows.push_back(e.inv);
    for (const auto& e : t.t7.entries) rows.push_back(e.inv);
    return rows;
}

const std::vector<InvariantTriple>& untagged_triplets() {
    static const std::vector<InvariantTriple> v = {
        {301, 1, 2},  {794, 1, 2},  {806, 0, 2},  {959, 3, 2},  {986, 1, 2},   {1066, 2, 2},
        {1130, 2, 2}, {1194, 0, 2}, {1271, 3, 2}, {1338, 0, 2}, {1370, 2, 2},  {1482, 0, 2},
        {1526, 3, 2}, {1554, 2, 2}, {1586, 0, 2}, {1626, 0, 2}, {1794, 4, 2},  {1898, 2, 2},
        {1986, 2, 2}, {2090, 0, 2}, {2226, 2, 2}, {2454, 0, 2}, {2562, 2, 2},  {2570, 2, 2},
        {3066, 6, 2}, {3354, 0, 2}, {3354, 6, 2}, {3410, 4, 2}, {4026, 0, 2},  {4074, 6, 2},
        {4326, 2, 2}, {4902, 4, 2}, {4991, 7, 2}, {5334, 2, 2}, {10374, 2, 2}, {29526, 2, 2},
    };
    return v;
}

namespace {

std::string fmt_inv(const InvariantTriple& t) {
    return "(" + std::to_string(t.d) + "," + std::to_string(t.eta) + "," + std::to_string(t.h) + ")";
}

}  // namespace

Report verify_cross_type(const Table7& t7, NarrowType type, const std::vector<InvariantTriple>& emitted) {
    Report rep;
    auto expect = table7_tagged(t7, type);
    std::vector<InvariantTriple> got = emitted;
    std::sort(got.begin(), got.end());
    std::vector<InvariantTriple> extra, lost;
    std::set_difference(got.begin(), got.end(), expect.begin(), expect.end(), std::back_inserter(extra));
    std::set_difference(expect.begin(), expect.end(), got.begin(), got.end(), std::back_inserter(lost));
    for (const auto& x : extra) {
        int row = 0;
        for (const auto& e : t7.entries)
            if (e.inv == x) row = e.n;
        Report one;
        Recorder r{"table7", row, one};
        r.compare(to_string(type) + "-tag", "absent", "present");
        for (auto& c : one.results) c.detail = "emitted but untagged " + fmt_inv(x) + " (row " + std::to_string(row) + ")";
        rep.results.insert(rep.results.end(), one.results.begin(), one.results.end());
    }
    for (const auto& x : lost)
        rep.results.push_back({0, to_string(type) + "-missing", CheckStatus::Fail, "tagged but not emitted " + fmt_inv(x)});
    rep.results.push_back({0, to_string(type) + "-size", lost.empty() ? CheckStatus::Pass : CheckStatus::Fail,
                           std::to_string(got.size()) + " emitted, " + std::to_string(expect.size()) + " tagged"});
    return rep;
}

Report verify_cross_static(const Tables& t) {
    Report rep;
    std::map<InvariantTriple, const Table7Entry*> rows;
    for (const auto& e : t.t7.entries) rows[e.inv] = &e;
    for (const auto& x : untagged_triplets()) {
        auto it = rows.find(x);
        bool ok = it != rows.end() && it->second->types.empty();
        rep.results.push_back({0, "untagged", ok ? CheckStatus::Pass : CheckStatus::Fail, fmt_inv(x)});
    }
    std::size_t empty = std::count_if(t.t7.entries.begin(), t.t7.entries.end(), [](auto& e) { return e.types.empty(); });
    rep.results.push_back({0, "untagged-count", empty == 36 ? CheckStatus::Pass : CheckStatus::Fail,
                           std::to_string(empty) + " rows without a type"});
    std::set<InvariantTriple> t6;
    for (const auto& e : t.t6.entries) t6.insert(e.inv);
    for (const auto& e : t.t4.entries) {
        bool ok = (e.inv.h == 2 && t6.count(e.inv)) || (e.inv.h == 0 && rows.count(e.inv));
        rep.results.push_back({e.n, "table4-listed", ok ? CheckStatus::Pass : CheckStatus::Fail, fmt_inv(e.inv)});
    }
    return rep;
}

}  // namespace hl
