#include "biext/motive_file.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <set>
#include <sstream>
#include <vector>

namespace biext {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& what) { throw InputError(what); }

const json& member(const json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) fail(where + ": missing \"" + key + "\"");
    return j.at(key);
}

void only_keys(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
    for (const auto& [k, v] : j.items()) {
        bool known = false;
        for (const char* key : keys) known = known || k == key;
        if (!known) fail(where + ": unknown key \"" + k + "\"");
    }
}

long integer_of(const json& j, const std::string& where) {
    if (!j.is_number_integer()) fail(where + ": expected an integer");
    return j.get<long>();
}

std::size_t count_of(const json& j, const std::string& where) {
    const long v = integer_of(j, where);
    if (v < 0) fail(where + ": expected a non-negative integer");
    return static_cast<std::size_t>(v);
}

KScalar scalar_of(const json& j, const FieldContext& field, const std::string& where) {
    if (j.is_number_integer()) return KScalar(Integer(j.get<long>()));
    if (!j.is_string()) fail(where + ": expected a scalar literal");
    try {
        return field.parse(j.get<std::string>());
    } catch (const InputError& e) {
        fail(where + ": " + e.what());
    }
}

Integer integer_entry(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Integer(j.get<long>());
    if (j.is_string()) {
        Integer v;
        if (v.set_str(j.get<std::string>(), 10) == 0) return v;
    }
    fail(where + ": expected an integer entry");
}

/// Array of rows; `rows`/`cols` fix the shape when known.
template <class T, class Entry>
Matrix<T> matrix_of(const json& j, std::optional<std::size_t> rows, std::optional<std::size_t> cols,
                    const std::string& where, Entry entry) {
    if (!j.is_array()) fail(where + ": expected an array of rows");
    if (rows && j.size() != *rows) fail(where + ": expected " + std::to_string(*rows) + " rows");
    std::size_t width = cols ? *cols : (j.empty() ? 0 : j.front().size());
    Matrix<T> m(j.size(), width);
    for (std::size_t i = 0; i < j.size(); ++i) {
        const json& row = j[i];
        if (!row.is_array() || row.size() != width)
            fail(where + ": row " + std::to_string(i) + " must have " + std::to_string(width) + " entries");
        for (std::size_t c = 0; c < width; ++c) m(i, c) = entry(row[c]);
    }
    return m;
}

MatrixK k_matrix(const json& j, std::size_t rows, std::size_t cols, const FieldContext& field,
                 const std::string& where) {
    return matrix_of<KScalar>(j, rows, cols, where, [&](const json& e) { return scalar_of(e, field, where); });
}

PeriodPresentation periods_of(const json& j, const FieldContext& field) {
    const std::string where = "periods";
    if (!j.is_object()) fail("periods: expected an object");
    only_keys(j,
              {"lattice_rank", "elliptic_moduli", "torus_rank", "abelian_lifts", "torus_lifts", "extension_periods"},
              where);
    PeriodPresentation p;
    p.lattice_rank = j.contains("lattice_rank") ? count_of(j.at("lattice_rank"), where) : 0;
    p.torus_rank = j.contains("torus_rank") ? count_of(j.at("torus_rank"), where) : 0;
    if (j.contains("elliptic_moduli")) {
        const json& m = j.at("elliptic_moduli");
        if (!m.is_array()) fail("periods.elliptic_moduli: expected an array");
        for (const auto& x : m) p.elliptic_moduli.push_back(scalar_of(x, field, "periods.elliptic_moduli"));
    }
    const std::size_t g = p.genus();
    auto block = [&](const char* key, std::size_t rows, std::size_t cols) {
        if (!j.contains(key)) return MatrixK(rows, cols);
        return k_matrix(j.at(key), rows, cols, field, std::string("periods.") + key);
    };
    p.abelian_lifts = block("abelian_lifts", g, p.lattice_rank);
    p.torus_lifts = block("torus_lifts", p.torus_rank, p.lattice_rank);
    p.extension_periods = block("extension_periods", p.torus_rank, 2 * g);
    return p;
}

json scalar_json(const KScalar& x) { return to_string(x); }

template <class T>
json matrix_json(const Matrix<T>& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if constexpr (std::is_same_v<T, Integer>) {
                if (m(i, j).fits_slong_p())
                    row.push_back(m(i, j).get_si());
                else
                    row.push_back(to_string(m(i, j)));
            } else {
                row.push_back(to_string(m(i, j)));
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<std::string> name_list(const json& j, const std::string& where) {
    if (!j.is_array()) fail(where + ": expected an array of names");
    std::vector<std::string> out;
    for (const auto& x : j) {
        if (!x.is_string()) fail(where + ": expected an array of names");
        out.push_back(x.get<std::string>());
    }
    return out;
}

void check_name(const std::string& name) {
    if (name.empty()) fail("names must be non-empty");
}

}  // namespace

json to_json(const MatrixZ& m) { return matrix_json(m); }
json to_json(const MatrixQ& m) { return matrix_json(m); }
json to_json(const MatrixK& m) { return matrix_json(m); }

json to_json(const GrProfile& profile) {
    json out = json::object();
    for (const auto& [w, r] : profile) out[std::to_string(w)] = r;
    return out;
}

MotiveSpec spec_from_json(const json& j, const FieldContext& field) {
    using Kind = MotiveSpec::Kind;
    if (j.is_string()) {
        check_name(j.get<std::string>());
        return MotiveSpec::ref(j.get<std::string>());
    }
    if (!j.is_object() || j.size() != 1) fail("motive spec must be a name or an object with one key");
    const auto& [key, v] = *j.items().begin();
    if (key == "lattice") return MotiveSpec::lattice(static_cast<long>(count_of(v, "lattice")));
    if (key == "torus") return MotiveSpec::torus(static_cast<long>(count_of(v, "torus")));
    if (key == "tate") return MotiveSpec::tate(static_cast<long>(count_of(v, "tate")));
    if (key == "elliptic") return MotiveSpec::elliptic(scalar_of(v, field, "elliptic"));
    if (key == "kummer") return MotiveSpec::kummer(scalar_of(v, field, "kummer"));
    if (key == "periods") return MotiveSpec::from_periods(periods_of(v, field));
    if (key == "sum") {
        if (!v.is_array()) fail("sum: expected an array");
        std::vector<MotiveSpec> parts;
        for (const auto& c : v) parts.push_back(spec_from_json(c, field));
        return MotiveSpec::sum(std::move(parts));
    }
    if (key == "dual") return MotiveSpec::dual(spec_from_json(v, field));
    (void)Kind::Ref;
    fail("unknown motive kind \"" + key + "\"");
}

json to_json(const MotiveSpec& spec) {
    using Kind = MotiveSpec::Kind;
    switch (spec.kind) {
        case Kind::Lattice: return {{"lattice", spec.count}};
        case Kind::Torus: return {{"torus", spec.count}};
        case Kind::Tate: return {{"tate", spec.count}};
        case Kind::Elliptic: return {{"elliptic", scalar_json(spec.scalar)}};
        case Kind::Kummer: return {{"kummer", scalar_json(spec.scalar)}};
        case Kind::Periods: {
            const PeriodPresentation& p = spec.periods;
            json moduli = json::array();
            for (const auto& t : p.elliptic_moduli) moduli.push_back(scalar_json(t));
            return {{"periods",
                     {{"lattice_rank", p.lattice_rank},
                      {"elliptic_moduli", moduli},
                      {"torus_rank", p.torus_rank},
                      {"abelian_lifts", to_json(p.abelian_lifts)},
                      {"torus_lifts", to_json(p.torus_lifts)},
                      {"extension_periods", to_json(p.extension_periods)}}}};
        }
        case Kind::Sum: {
            json parts = json::array();
            for (const auto& c : spec.children) parts.push_back(to_json(c));
            return {{"sum", parts}};
        }
        case Kind::Dual: return {{"dual", to_json(spec.children.at(0))}};
        case Kind::Ref: return spec.name;
    }
    return nullptr;
}

MotiveFile parse_motive_file(std::string_view text) {
    // Duplicate keys are rejected: the default parser keeps only the last one.
    std::vector<std::set<std::string>> seen;
    std::string duplicate;
    const json::parser_callback_t cb = [&](int, json::parse_event_t event, json& parsed) {
        switch (event) {
            case json::parse_event_t::object_start: seen.emplace_back(); break;
            case json::parse_event_t::object_end: seen.pop_back(); break;
            case json::parse_event_t::key:
                if (!seen.back().insert(parsed.get<std::string>()).second && duplicate.empty())
                    duplicate = parsed.get<std::string>();
                break;
            default: break;
        }
        return true;
    };
    json doc;
    try {
        doc = json::parse(text.begin(), text.end(), cb);
    } catch (const json::parse_error& e) {
        fail(std::string("malformed JSON: ") + e.what());
    }
    if (!duplicate.empty()) fail("duplicate name \"" + duplicate + "\"");
    if (!doc.is_object()) fail("motive file must be a JSON object");
    only_keys(doc, {"field", "motives", "maps"}, "file");

    MotiveFile file;
    const json& f = member(doc, "field", "file");
    only_keys(f, {"d"}, "field");
    file.field = FieldContext(integer_of(member(f, "d", "field"), "field.d"));

    const json& motives = member(doc, "motives", "file");
    if (!motives.is_object()) fail("motives: expected an object");
    for (const auto& [name, spec] : motives.items()) {
        check_name(name);
        file.motives.emplace(name, spec_from_json(spec, file.field));
    }
    if (doc.contains("maps")) {
        const json& maps = doc.at("maps");
        if (!maps.is_object()) fail("maps: expected an object");
        for (const auto& [name, m] : maps.items()) {
            check_name(name);
            if (file.motives.count(name)) fail("duplicate name \"" + name + "\"");
            const std::string where = "maps." + name;
            only_keys(m, {"sources", "target", "coefficients", "phi1"}, where);
            MapFixture fx;
            fx.sources = name_list(member(m, "sources", where), where + ".sources");
            const json& target = member(m, "target", where);
            if (!target.is_string()) fail(where + ".target: expected a name");
            fx.target = target.get<std::string>();
            fx.coefficients = matrix_of<Integer>(member(m, "coefficients", where), std::nullopt, std::nullopt,
                                                 where + ".coefficients",
                                                 [&](const json& e) { return integer_entry(e, where); });
            if (m.contains("phi1")) {
                const json& p = m.at("phi1");
                fx.phi1 = matrix_of<KScalar>(p, fx.coefficients.rows(), fx.coefficients.cols(), where + ".phi1",
                                             [&](const json& e) { return scalar_of(e, file.field, where); });
            }
            file.maps.emplace(name, std::move(fx));
        }
    }
    return file;
}

MotiveFile load_motive_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_motive_file(buf.str());
}

json to_json(const MotiveFile& file) {
    json motives = json::object();
    for (const auto& [name, spec] : file.motives) motives[name] = to_json(spec);
    json doc = {{"field", {{"d", file.field.d()}}}, {"motives", motives}};
    if (!file.maps.empty()) {
        json maps = json::object();
        for (const auto& [name, m] : file.maps) {
            json entry = {{"sources", m.sources}, {"target", m.target}, {"coefficients", to_json(m.coefficients)}};
            if (m.phi1) entry["phi1"] = to_json(*m.phi1);
            maps[name] = entry;
        }
        doc["maps"] = maps;
    }
    return doc;
}

std::string serialize(const MotiveFile& file) { return to_json(file).dump(2) + "\n"; }

const MotiveSpec& MotiveFile::spec(const std::string& name) const {
    const auto it = motives.find(name);
    if (it == motives.end()) fail("unknown motive \"" + name + "\"");
    return it->second;
}

const MapFixture& MotiveFile::map(const std::string& name) const {
    const auto it = maps.find(name);
    if (it == maps.end()) fail("unknown map \"" + name + "\"");
    return it->second;
}

SpecResolver MotiveFile::resolver() const {
    return [this](const std::string& name) -> const MotiveSpec* {
        const auto it = motives.find(name);
        return it == motives.end() ? nullptr : &it->second;
    };
}

Mhs MotiveFile::motive(const std::string& name, bool checked) const {
    return build(spec(name), field, resolver(), checked);
}

HomLattice MotiveFile::hom(const std::vector<std::string>& sources, const std::string& target) const {
    if (sources.empty()) fail("at least one source is required");
    std::vector<Mhs> built;
    for (const auto& s : sources) built.push_back(motive(s));
    return hom_multilinear(built, motive(target));
}

std::pair<HomLattice, MultilinearMap> MotiveFile::fixture(const std::string& name) const {
    const MapFixture& fx = map(name);
    HomLattice l = hom(fx.sources, fx.target);
    const auto ranks = l.source_ranks();
    MultilinearMap phi{ranks, l.target.rank(), fx.coefficients};
    if (fx.coefficients.rows() != phi.target_rank || fx.coefficients.cols() != phi.source_dim())
        fail("map \"" + name + "\" has shape " + std::to_string(fx.coefficients.rows()) + "x" +
             std::to_string(fx.coefficients.cols()) + ", expected " + std::to_string(phi.target_rank) + "x" +
             std::to_string(phi.source_dim()));
    return {std::move(l), std::move(phi)};
}

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw CheckFailure("sha256 failed");
    static const char* const hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 15]);
    }
    return out;
}

}  // namespace biext
