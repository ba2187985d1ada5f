#include "biext/cli.hpp"

#include "biext/motive_file.hpp"
#include "biext/realize.hpp"
#include "biext/suites.hpp"

#include <CLI11.hpp>

#include <cctype>
#include <fstream>
#include <sstream>

namespace biext {

using nlohmann::json;

namespace {

struct Input {
    MotiveFile file;
    std::string digest;
};

Input read_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    return {parse_motive_file(text), sha256_hex(text)};
}

Input builtin_input() { return {parse_motive_file(builtin_motive_file()), sha256_hex(builtin_motive_file())}; }

json header(const std::string& command, const Input& in) {
    return {{"command", command}, {"input_sha256", in.digest}, {"field", {{"d", in.file.field.d()}}}};
}

std::vector<std::string> split_names(const std::string& list) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : list) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    for (const auto& n : out)
        if (n.empty()) throw InputError("empty name in list \"" + list + "\"");
    return out;
}

json filtration_dims(const Mhs& h) {
    json weight = json::object();
    json hodge = json::object();
    if (h.has_weights())
        for (int w = h.weight_min() - 1; w <= h.weight_max(); ++w) weight[std::to_string(w)] = h.weight(w).rows();
    if (h.has_hodge())
        for (int p = h.hodge_min(); p <= h.hodge_max() + 1; ++p) hodge[std::to_string(p)] = h.hodge(p).rows();
    return {{"weight", weight}, {"hodge", hodge}};
}

bool presentation_like(const MotiveSpec& spec, const MotiveFile& file, int depth = 0) {
    using Kind = MotiveSpec::Kind;
    if (depth > 64) return false;
    switch (spec.kind) {
        case Kind::Tate: return spec.count == 0 || spec.count == 1;
        case Kind::Sum:
            for (const auto& c : spec.children)
                if (!presentation_like(c, file, depth + 1)) return false;
            return true;
        case Kind::Dual: return presentation_like(spec.children.at(0), file, depth + 1);
        case Kind::Ref: {
            const auto it = file.motives.find(spec.name);
            return it != file.motives.end() && presentation_like(it->second, file, depth + 1);
        }
        default: return true;
    }
}

json issue(const std::string& invariant, const std::string& detail) {
    return {{"invariant", invariant}, {"detail", detail}};
}

// grprofile expressions: sums (+), tensors (*), postfix quotients /W-k,
// dual(e), copies(e, z), parentheses and motive names.
class ExprParser {
  public:
    ExprParser(std::string text, const MotiveFile& file) : s_(std::move(text)), file_(file) {}

    Mhs parse() {
        Mhs h = expr();
        skip();
        if (pos_ != s_.size()) error("unexpected \"" + s_.substr(pos_) + "\"");
        return h;
    }

  private:
    [[noreturn]] void error(const std::string& what) const {
        throw InputError("expression: " + what + " at offset " + std::to_string(pos_));
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) error(std::string("expected '") + c + "'");
    }
    static bool name_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '.';
    }
    std::string name() {
        skip();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && name_char(s_[pos_])) ++pos_;
        if (start == pos_) error("expected a name");
        return s_.substr(start, pos_ - start);
    }
    long number() {
        skip();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_ || pos_ - start > 6) error("expected a small non-negative integer");
        return std::stol(s_.substr(start, pos_ - start));
    }

    Mhs expr() {
        std::vector<Mhs> parts{term()};
        while (eat('+')) parts.push_back(term());
        return parts.size() == 1 ? parts.front() : direct_sum(parts, file_.field);
    }
    Mhs term() {
        Mhs h = postfix();
        while (eat('*')) h = tensor_mhs(h, postfix());
        return h;
    }
    Mhs postfix() {
        Mhs h = primary();
        while (eat('/')) {
            skip();
            if (s_.compare(pos_, 2, "W-") != 0) error("expected W-k after '/'");
            pos_ += 2;
            const long k = number();
            if (k < 1) error("quotient index must be positive");
            h = quotient_by_weight(h, static_cast<int>(k));
        }
        return h;
    }
    Mhs primary() {
        if (eat('(')) {
            Mhs h = expr();
            expect(')');
            return h;
        }
        const std::string n = name();
        if (n == "dual" && eat('(')) {
            Mhs h = expr();
            expect(')');
            return cartier_dual(h);
        }
        if (n == "copies" && eat('(')) {
            Mhs h = expr();
            expect(',');
            const long z = number();
            expect(')');
            return tensor_weight0(h, static_cast<std::size_t>(z));
        }
        return file_.motive(n);
    }

    std::string s_;
    const MotiveFile& file_;
    std::size_t pos_ = 0;
};

struct Options {
    std::string file;
    bool builtin = false;
    std::string sources;
    std::string target;
    std::string motive;
    std::string self_dual;
    std::string map;
    std::string expr;
    std::string suite = "all";
    long n = 0;
    std::uint64_t seed = 7;
    bool split_sym = false;
};

CommandResult report(json doc, int code = 0) { return {code, doc.dump(2) + "\n", {}}; }

CommandResult cmd_validate(const Options& o) {
    const Input in = read_input(o.file);
    json doc = header("validate", in);
    json motives = json::object();
    bool all_ok = true;
    for (const auto& [name, spec] : in.file.motives) {
        json entry;
        json issues = json::array();
        try {
            const Mhs h = in.file.motive(name, false);
            entry["rank"] = h.rank();
            entry["profile"] = to_json(gr_profile(h));
            for (const auto& i : validate_mhs(h, presentation_like(spec, in.file)).issues)
                issues.push_back(issue(i.invariant, i.detail));
        } catch (const InputError& e) {
            issues.push_back(issue("build", e.what()));
        }
        entry["ok"] = issues.empty();
        entry["issues"] = issues;
        all_ok = all_ok && issues.empty();
        motives[name] = entry;
    }
    doc["motives"] = motives;
    json maps = json::object();
    for (const auto& [name, fx] : in.file.maps) {
        json issues = json::array();
        try {
            const auto [l, phi] = in.file.fixture(name);
            if (!l.contains(phi)) issues.push_back(issue("not-a-morphism", "map does not respect W and F"));
            if (fx.phi1 && l.sources.size() == 2) {
                const BiextData b = biext_from_map(l, phi, fx.phi1);
                if (const auto bad = check_biext(l, b)) issues.push_back(issue("biextension", *bad));
            }
        } catch (const InputError& e) {
            issues.push_back(issue("build", e.what()));
        }
        maps[name] = {{"ok", issues.empty()}, {"issues", issues}};
        all_ok = all_ok && issues.empty();
    }
    doc["maps"] = maps;
    doc["ok"] = all_ok;
    return report(doc, all_ok ? 0 : 2);
}

json basis_json(const HomLattice& l) {
    json basis = json::array();
    for (const auto& f : l.basis()) basis.push_back(to_json(f.coefficients));
    return basis;
}

CommandResult cmd_hom(const Options& o) {
    const Input in = read_input(o.file);
    const auto sources = split_names(o.sources);
    const HomLattice l = in.file.hom(sources, o.target);
    json doc = header("hom", in);
    doc["sources"] = sources;
    doc["target"] = o.target;
    doc["source_ranks"] = l.source_ranks();
    doc["target_rank"] = l.target.rank();
    doc["rank"] = l.rank();
    doc["basis"] = basis_json(l);
    if (o.split_sym) {
        const SymSplit s = sym_antisym_split(l);
        doc["symmetric_rank"] = s.symmetric.rank();
        doc["antisymmetric_rank"] = s.antisymmetric.rank();
        doc["symmetric_basis"] = to_json(s.symmetric.basis());
        doc["antisymmetric_basis"] = to_json(s.antisymmetric.basis());
        doc["sum_saturation_rank"] = s.sum_saturation_rank;
        doc["swap_preserves_lattice"] = s.swap_preserves_lattice;
    }
    return report(doc);
}

CommandResult cmd_dual(const Options& o) {
    const Input in = read_input(o.file);
    const Mhs h = in.file.motive(o.motive);
    const Mhs d = cartier_dual(h);
    json doc = header("dual", in);
    doc["motive"] = o.motive;
    doc["rank"] = d.rank();
    doc["profile"] = to_json(gr_profile(d));
    doc["dimensions"] = filtration_dims(d);
    doc["double_dual_is_identity"] = cartier_dual(d) == h;
    return report(doc);
}

CommandResult cmd_pairing(const Options& o) {
    const Input in = read_input(o.file);
    const Mhs h = in.file.motive(o.motive);
    const WeilPairing p = weil_pairing(h);
    json doc = header("pairing", in);
    doc["motive"] = o.motive;
    doc["pairing"] = to_json(p.map.coefficients);
    doc["matrix"] = to_json(p.matrix);
    doc["in_lattice"] = p.in_lattice;
    doc["unimodular"] = p.unimodular;
    if (!o.self_dual.empty()) {
        const auto [l, s] = in.file.fixture(o.self_dual);
        if (l.sources.size() != 1 || !(l.sources[0] == h) || !(l.target == cartier_dual(h)))
            throw InputError("self-duality \"" + o.self_dual + "\" must be a map " + o.motive + " -> dual(" +
                             o.motive + ")");
        const MultilinearMap pulled = pullback_pairing(s);
        MatrixQ gram(h.rank(), h.rank());
        for (std::size_t a = 0; a < h.rank(); ++a)
            for (std::size_t b = 0; b < h.rank(); ++b) gram(a, b) = Rational(pulled.coefficients(0, a * h.rank() + b));
        doc["self_duality"] = {{"map", o.self_dual},
                               {"is_morphism", l.contains(s)},
                               {"pulled_back", to_json(pulled.coefficients)},
                               {"skew", swap_factors(pulled) == Integer(-1) * pulled},
                               {"nondegenerate", rank(gram) == h.rank()}};
    }
    return report(doc, p.in_lattice && p.unimodular ? 0 : 1);
}

CommandResult cmd_modn(const Options& o) {
    const Input in = read_input(o.file);
    const auto [l, phi] = in.file.fixture(o.map);
    const FiniteMap f = reduce_map_mod_n(l, phi, o.n);
    const bool ok = commute_check(phi, f);
    MatrixZ rows(phi.target_rank, phi.source_dim());
    for (std::size_t i = 0; i < rows.rows(); ++i)
        for (std::size_t j = 0; j < rows.cols(); ++j) rows(i, j) = f.coefficients[i * rows.cols() + j];
    json doc = header("modn", in);
    doc["map"] = o.map;
    doc["n"] = o.n;
    doc["reduced"] = to_json(rows);
    doc["commutes"] = ok;
    return report(doc, ok ? 0 : 1);
}

CommandResult cmd_curvature(const Options& o) {
    const Input in = read_input(o.file);
    const auto [l, phi] = in.file.fixture(o.map);
    if (l.sources.size() != 2) throw InputError("curvature needs a bilinear map");
    const CurvatureReport r = curvature(l, biext_from_map(l, phi, in.file.map(o.map).phi1));
    json doc = header("curvature", in);
    doc["map"] = o.map;
    doc["gamma1"] = to_json(r.gamma1);
    doc["gamma2"] = to_json(r.gamma2);
    doc["upsilon"] = to_json(r.upsilon);
    doc["identity_holds"] = r.identity_holds;
    doc["expansion_holds"] = r.expansion_holds;
    return report(doc, r.identity_holds && r.expansion_holds ? 0 : 1);
}

CommandResult cmd_decompose(const Options& o) {
    const Input in = read_input(o.file);
    const auto names = split_names(o.sources);
    std::vector<Mhs> sources;
    for (const auto& n : names) sources.push_back(in.file.motive(n));
    const ThmotimesReport r = thmotimes_rank_report(sources, in.file.motive(o.target));
    json terms = json::array();
    for (const auto& t : r.terms)
        terms.push_back({{"pair", {names[t.first], names[t.second]}}, {"copies", t.copies}, {"rank", t.rank}});
    json doc = header("decompose", in);
    doc["sources"] = names;
    doc["target"] = o.target;
    doc["lhs_rank"] = r.lhs_rank;
    doc["rhs_rank"] = r.rhs_rank;
    doc["ranks_agree"] = r.lhs_rank == r.rhs_rank;
    doc["terms"] = terms;
    return report(doc);
}

CommandResult cmd_grprofile(const Options& o) {
    const Input in = read_input(o.file);
    const Mhs h = ExprParser(o.expr, in.file).parse();
    json doc = header("grprofile", in);
    doc["expr"] = o.expr;
    doc["rank"] = h.rank();
    doc["profile"] = to_json(gr_profile(h));
    return report(doc);
}

CommandResult cmd_check(const Options& o) {
    if (o.builtin == !o.file.empty()) throw InputError("check needs exactly one of <file> or --builtin");
    const Input in = o.builtin ? builtin_input() : read_input(o.file);
    const SuiteContext ctx = o.builtin ? builtin_context(o.seed, in.file.field.d()) : file_context(in.file, o.seed);
    std::vector<std::string> names;
    if (o.suite == "all")
        names = suite_names();
    else
        names = split_names(o.suite);
    for (const auto& n : names)
        if (std::find(suite_names().begin(), suite_names().end(), n) == suite_names().end())
            throw InputError("unknown suite \"" + n + "\"");
    json suites = json::array();
    bool all = true;
    for (const auto& n : names) {
        const SuiteOutcome r = run_suite(n, ctx);
        suites.push_back({{"name", n},
                          {"passed", r.passed()},
                          {"checks", r.checks},
                          {"instances", r.instances},
                          {"failures", r.failures}});
        all = all && r.passed();
    }
    json doc = header("check", in);
    doc["seed"] = o.seed;
    doc["suites"] = suites;
    doc["passed"] = all;
    return report(doc, all ? 0 : 1);
}

}  // namespace

const std::string& builtin_motive_file() {
    static const std::string text = R"({
  "field": {"d": 1},
  "motives": {
    "E": {"elliptic": "w"},
    "K": {"kummer": "1/2"},
    "Z0": {"tate": 0},
    "Z1": {"tate": 1}
  },
  "maps": {
    "J": {"sources": ["E", "E"], "target": "Z1", "coefficients": [[0, 1, -1, 0]]}
  }
}
)";
    return text;
}

CommandResult run_command(const std::vector<std::string>& args) {
    CLI::App app{"Biextension lattices of 1-motives over an imaginary quadratic field"};
    app.name("biext");
    app.require_subcommand(1);
    Options o;

    auto* validate = app.add_subcommand("validate", "Validate every motive and map of a file");
    validate->add_option("file", o.file, "Motive file")->required();

    auto* hom = app.add_subcommand("hom", "Lattice of multilinear morphisms");
    hom->add_option("file", o.file, "Motive file")->required();
    hom->add_option("--sources", o.sources, "Comma-separated source names")->required();
    hom->add_option("--target", o.target, "Target name")->required();
    hom->add_flag("--split-sym", o.split_sym, "Also split into symmetric and antisymmetric parts");

    auto* dual = app.add_subcommand("dual", "Cartier dual");
    dual->add_option("file", o.file, "Motive file")->required();
    dual->add_option("--motive", o.motive, "Motive name")->required();

    auto* pairing = app.add_subcommand("pairing", "Weil pairing");
    pairing->add_option("file", o.file, "Motive file")->required();
    pairing->add_option("--motive", o.motive, "Motive name")->required();
    pairing->add_option("--self-dual", o.self_dual, "Map fixture M -> dual(M)");

    auto* modn = app.add_subcommand("modn", "Reduction of a map modulo n");
    modn->add_option("file", o.file, "Motive file")->required();
    modn->add_option("--map", o.map, "Map fixture")->required();
    modn->add_option("--n", o.n, "Modulus")->required();

    auto* curv = app.add_subcommand("curvature", "Curvature of the biextension of a bilinear map");
    curv->add_option("file", o.file, "Motive file")->required();
    curv->add_option("--map", o.map, "Map fixture")->required();

    auto* decompose = app.add_subcommand("decompose", "Rank decomposition of multilinear morphisms");
    decompose->add_option("file", o.file, "Motive file")->required();
    decompose->add_option("--sources", o.sources, "Comma-separated source names")->required();
    decompose->add_option("--target", o.target, "Target name")->required();

    auto* grprofile = app.add_subcommand("grprofile", "Graded ranks of a tensor/quotient expression");
    grprofile->add_option("file", o.file, "Motive file")->required();
    grprofile->add_option("--expr", o.expr, "Expression, e.g. (A*B)/W-3 + copies(A,2)")->required();

    auto* check = app.add_subcommand("check", "Run property suites");
    check->add_option("file", o.file, "Motive file");
    check->add_flag("--builtin", o.builtin, "Use the builtin motive file");
    check->add_option("--suite", o.suite, "Suite name, comma-separated list, or all");
    check->add_option("--seed", o.seed, "Seed for random instances");

    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::CallForHelp& e) {
        return {0, app.help(), {}};
    } catch (const CLI::CallForAllHelp& e) {
        return {0, app.help("", CLI::AppFormatMode::All), {}};
    } catch (const CLI::ParseError& e) {
        return {2, {}, e.what()};
    }

    try {
        if (validate->parsed()) return cmd_validate(o);
        if (hom->parsed()) return cmd_hom(o);
        if (dual->parsed()) return cmd_dual(o);
        if (pairing->parsed()) return cmd_pairing(o);
        if (modn->parsed()) return cmd_modn(o);
        if (curv->parsed()) return cmd_curvature(o);
        if (decompose->parsed()) return cmd_decompose(o);
        if (grprofile->parsed()) return cmd_grprofile(o);
        if (check->parsed()) return cmd_check(o);
    } catch (const InputError& e) {
        return {2, {}, e.what()};
    } catch (const CheckFailure& e) {
        return {1, {}, e.what()};
    } catch (const std::exception& e) {
        return {1, {}, e.what()};
    }
    return {2, {}, "no subcommand"};
}

}  // namespace biext
