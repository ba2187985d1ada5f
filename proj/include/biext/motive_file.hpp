#pragma once

// JSON motive files: a field, named motive specs and named map fixtures.

#include "biext/homspace.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>

namespace biext {

struct MapFixture {
    std::vector<std::string> sources;
    std::string target;
    MatrixZ coefficients;         // target_rank x (product of source ranks)
    std::optional<MatrixK> phi1;  // optional trivialization split

    friend bool operator==(const MapFixture&, const MapFixture&) = default;
};

struct MotiveFile {
    FieldContext field;
    std::map<std::string, MotiveSpec> motives;
    std::map<std::string, MapFixture> maps;

    const MotiveSpec& spec(const std::string& name) const;
    const MapFixture& map(const std::string& name) const;
    SpecResolver resolver() const;
    Mhs motive(const std::string& name, bool checked = true) const;

    HomLattice hom(const std::vector<std::string>& sources, const std::string& target) const;
    /// Hom lattice of the fixture's signature and the fixture as a map.
    std::pair<HomLattice, MultilinearMap> fixture(const std::string& name) const;

    friend bool operator==(const MotiveFile&, const MotiveFile&) = default;
};

MotiveFile parse_motive_file(std::string_view text);
MotiveFile load_motive_file(const std::string& path);
/// Canonical document; parse(serialize(f)) == f.
nlohmann::json to_json(const MotiveFile& file);
std::string serialize(const MotiveFile& file);

nlohmann::json to_json(const MotiveSpec& spec);
MotiveSpec spec_from_json(const nlohmann::json& j, const FieldContext& field);

nlohmann::json to_json(const MatrixZ& m);
nlohmann::json to_json(const MatrixQ& m);
nlohmann::json to_json(const MatrixK& m);
nlohmann::json to_json(const GrProfile& profile);

std::string sha256_hex(std::string_view bytes);

}  // namespace biext
