#pragma once

// JSON documents for polytopes and toric data.
//
//   {"name": "f1", "vertices": [[-1, 0], ...]}
//   {"normals": [[1, 0], ...], "offsets": [1, ...]}      ("rays" is accepted for "normals")
//
// When both forms are present they must describe the same polytope.

#include <nlohmann/json.hpp>

#include <cstdint>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qbary/error.hpp"
#include "qbary/exactnum.hpp"
#include "qbary/lattice.hpp"
#include "qbary/polytope.hpp"
#include "qbary/toricrr.hpp"

namespace qbary::io {

using Json = nlohmann::ordered_json;

struct PolytopeDocument {
    std::string name;
    std::optional<std::vector<LatticeVector>> vertices;
    std::optional<std::vector<LatticeVector>> normals;
    std::optional<std::vector<std::int64_t>> offsets;
};

/// Parses JSON text; syntax errors become InvalidInput with a line/column position.
inline Json parse_json(const std::string& text, const std::string& source = "input")
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::size_t line = 1, column = 1;
        const std::size_t stop = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
        for (std::size_t i = 0; i < stop; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        fail(ErrorKind::InvalidInput, source + ": malformed JSON at line " + std::to_string(line) + ", column "
                                          + std::to_string(column));
    }
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    require(in.good(), ErrorKind::InvalidInput, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::int64_t as_int(const Json& j, const std::string& what)
{
    require(j.is_number_integer(), ErrorKind::InvalidInput, what + " must be an integer");
    return j.get<std::int64_t>();
}

inline LatticeVector as_lattice_vector(const Json& j, const std::string& what)
{
    require(j.is_array(), ErrorKind::InvalidInput, what + " must be an array of integers");
    LatticeVector out;
    for (const auto& x : j)
        out.push_back(as_int(x, what));
    return out;
}

inline std::vector<LatticeVector> as_lattice_vectors(const Json& j, const std::string& what)
{
    require(j.is_array() && !j.empty(), ErrorKind::InvalidInput, what + " must be a non-empty array of vectors");
    std::vector<LatticeVector> out;
    for (const auto& x : j) {
        out.push_back(as_lattice_vector(x, what));
        require(out.back().size() == out.front().size() && !out.back().empty(), ErrorKind::InvalidInput,
                what + " has vectors of different lengths");
    }
    return out;
}

inline PolytopeDocument parse_polytope_document(const Json& j)
{
    require(j.is_object(), ErrorKind::InvalidInput, "polytope document must be a JSON object");
    PolytopeDocument doc;
    if (j.contains("name")) {
        require(j["name"].is_string(), ErrorKind::InvalidInput, "name must be a string");
        doc.name = j["name"].get<std::string>();
    }
    if (j.contains("vertices"))
        doc.vertices = as_lattice_vectors(j["vertices"], "vertices");
    require(!(j.contains("normals") && j.contains("rays")), ErrorKind::InvalidInput,
            "give either normals or rays, not both");
    const char* key = j.contains("rays") ? "rays" : "normals";
    if (j.contains(key)) {
        doc.normals = as_lattice_vectors(j[key], key);
        require(j.contains("offsets"), ErrorKind::InvalidInput, std::string(key) + " given without offsets");
        LatticeVector off = as_lattice_vector(j["offsets"], "offsets");
        require(off.size() == doc.normals->size(), ErrorKind::InvalidInput, "offsets and normals differ in length");
        doc.offsets = std::vector<std::int64_t>(off.begin(), off.end());
    } else {
        require(!j.contains("offsets"), ErrorKind::InvalidInput, "offsets given without normals");
    }
    require(doc.vertices || doc.normals, ErrorKind::InvalidInput, "document has neither vertices nor normals");
    return doc;
}

inline Polytope document_polytope(const PolytopeDocument& doc)
{
    if (doc.normals) {
        Polytope p = polytope_from_halfspaces(*doc.normals, *doc.offsets);
        if (doc.vertices)
            require(hull_from_vertices(*doc.vertices) == p, ErrorKind::InvalidInput,
                    "vertices and half-spaces describe different polytopes");
        return p;
    }
    return hull_from_vertices(*doc.vertices);
}

/// Rays and offsets as written when half-spaces are given, else the facets of the hull.
inline ToricData document_toric_data(const PolytopeDocument& doc)
{
    if (doc.normals) {
        if (doc.vertices)
            document_polytope(doc);
        return ToricData(*doc.normals, *doc.offsets);
    }
    return ToricData::from_polytope(hull_from_vertices(*doc.vertices));
}

inline PolytopeDocument load_polytope_document(const std::string& path)
{
    return parse_polytope_document(parse_json(read_file(path), path));
}

// ---------------------------------------------------------------------------
// Encoding

inline Json encode(const Rational& r) { return to_string(r); }

inline Json encode(const Integer& x)
{
    if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
        return x.convert_to<std::int64_t>();
    return x.str();
}

inline Json encode(const RationalVector& v)
{
    Json out = Json::array();
    for (const auto& x : v)
        out.push_back(encode(x));
    return out;
}

inline Json encode(const std::vector<RationalVector>& vs)
{
    Json out = Json::array();
    for (const auto& v : vs)
        out.push_back(encode(v));
    return out;
}

inline Json encode(const LatticeVector& v) { return Json(v); }

inline Json encode(const Polynomial& p) { return encode(RationalVector(p.coefficients())); }

} // namespace qbary::io
