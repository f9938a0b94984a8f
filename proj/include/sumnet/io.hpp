/**************************************************************************
 * sumnet/io.hpp
 *
 * Copyright 2026 The sumnet Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 **************************************************************************/

#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "sumnet/codec.hpp"
#include "sumnet/error.hpp"
#include "sumnet/network.hpp"

// Interchange documents. Every document is JSON with a fixed key order and
// two-space indentation, terminated by a newline, so emit(parse(text)) == text
// whenever text was itself emitted by this library.

namespace sumnet::io {

using json = nlohmann::ordered_json;

inline std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

inline json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw format_error(std::string("malformed JSON: ") + e.what());
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw format_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace detail {

template <typename T>
T field_of(const json& doc, const char* key) {
    if (!doc.is_object() || !doc.contains(key)) throw format_error(std::string("missing field '") + key + "'");
    try {
        return doc.at(key).get<T>();
    } catch (const json::exception& e) {
        throw format_error(std::string("bad field '") + key + "': " + e.what());
    }
}

inline json matrix_to_json(const FMatrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline FMatrix matrix_from_json(const json& j, const Alphabet& f, std::size_t rows, std::size_t cols) {
    if (!j.is_array() || j.size() != rows) throw format_error("matrix has wrong row count");
    std::vector<Elem> data;
    for (const auto& row : j) {
        if (!row.is_array() || row.size() != cols) throw format_error("matrix has wrong column count");
        for (const auto& x : row) {
            if (!x.is_number_unsigned()) throw format_error("matrix entries must be nonnegative integers");
            data.push_back(x.get<Elem>());
        }
    }
    try {
        return FMatrix(f, rows, cols, std::move(data));
    } catch (const error& e) {
        throw format_error(e.what());
    }
}

}  // namespace detail

// ---- networks ------------------------------------------------------------

inline json network_to_json(const SumNetwork& net) {
    json doc;
    doc["name"] = net.name;
    doc["nodes"] = net.nodes;
    json edges = json::array();
    for (const auto& e : net.edges) edges.push_back(json{{"id", e.id}, {"tail", e.tail}, {"head", e.head}});
    doc["edges"] = std::move(edges);
    doc["sources"] = net.sources;
    doc["terminals"] = net.terminals;
    return doc;
}

inline SumNetwork network_from_json(const json& doc) {
    SumNetwork net;
    net.name = doc.contains("name") ? detail::field_of<std::string>(doc, "name") : std::string();
    net.nodes = detail::field_of<std::vector<std::string>>(doc, "nodes");
    const json& edges = doc.contains("edges") ? doc.at("edges") : json::array();
    if (!edges.is_array()) throw format_error("'edges' must be an array");
    for (const auto& e : edges)
        net.edges.push_back({detail::field_of<std::string>(e, "id"), detail::field_of<std::string>(e, "tail"),
                             detail::field_of<std::string>(e, "head")});
    net.sources = detail::field_of<std::vector<std::string>>(doc, "sources");
    net.terminals = detail::field_of<std::vector<std::string>>(doc, "terminals");
    return net;
}

inline std::string emit_network(const SumNetwork& net) { return dump(network_to_json(net)); }
inline SumNetwork parse_network(const std::string& text) { return network_from_json(parse_json(text)); }

// ---- codes ---------------------------------------------------------------

inline json linear_code_to_json(const LinearCode& c) {
    json doc;
    doc["kind"] = "linear";
    doc["alphabet"] = c.field.name();
    doc["k"] = c.k;
    doc["l"] = c.l;
    json inj = json::array(), tr = json::array(), dec = json::array();
    for (const auto& [key, m] : c.injection)
        inj.push_back(json{{"source", key.first}, {"edge", key.second}, {"matrix", detail::matrix_to_json(m)}});
    for (const auto& [key, m] : c.transition)
        tr.push_back(json{{"in", key.first}, {"out", key.second}, {"matrix", detail::matrix_to_json(m)}});
    for (const auto& [key, m] : c.decoding)
        dec.push_back(json{{"terminal", key.first}, {"edge", key.second}, {"matrix", detail::matrix_to_json(m)}});
    doc["injection"] = std::move(inj);
    doc["transition"] = std::move(tr);
    doc["decoding"] = std::move(dec);
    return doc;
}

inline json table_code_to_json(const TableCode& c) {
    json doc;
    doc["kind"] = "table";
    doc["alphabet"] = c.alphabet.name();
    doc["k"] = c.k;
    doc["l"] = c.l;
    json edges = json::array(), decs = json::array();
    for (const auto& [id, tab] : c.edges) edges.push_back(json{{"edge", id}, {"table", tab}});
    for (const auto& [id, tab] : c.decoders) decs.push_back(json{{"terminal", id}, {"table", tab}});
    doc["edges"] = std::move(edges);
    doc["decoders"] = std::move(decs);
    return doc;
}

/// Either kind of code, as read from a code document.
struct AnyCode {
    std::optional<LinearCode> linear;
    std::optional<TableCode> table;
};

inline LinearCode linear_code_from_json(const json& doc) {
    if (detail::field_of<std::string>(doc, "kind") != "linear") throw format_error("expected a linear code document");
    LinearCode c;
    try {
        c.field = Alphabet::parse(detail::field_of<std::string>(doc, "alphabet"));
    } catch (const format_error&) {
        throw;
    } catch (const error& e) {
        throw format_error(e.what());
    }
    if (!c.field.is_field()) throw format_error("linear code alphabet must be a field");
    c.k = detail::field_of<int>(doc, "k");
    c.l = detail::field_of<int>(doc, "l");
    if (c.k < 1 || c.l < 1) throw format_error("k and l must be positive");
    const auto k = static_cast<std::size_t>(c.k), l = static_cast<std::size_t>(c.l);
    auto entries = [&](const char* key) {
        const json& arr = doc.contains(key) ? doc.at(key) : json::array();
        if (!arr.is_array()) throw format_error(std::string("'") + key + "' must be an array");
        return arr;
    };
    for (const auto& e : entries("injection"))
        c.injection.insert_or_assign(KeyPair{detail::field_of<std::string>(e, "source"), detail::field_of<std::string>(e, "edge")},
                                     detail::matrix_from_json(e.at("matrix"), c.field, k, l));
    for (const auto& e : entries("transition"))
        c.transition.insert_or_assign(KeyPair{detail::field_of<std::string>(e, "in"), detail::field_of<std::string>(e, "out")},
                                      detail::matrix_from_json(e.at("matrix"), c.field, l, l));
    for (const auto& e : entries("decoding"))
        c.decoding.insert_or_assign(KeyPair{detail::field_of<std::string>(e, "terminal"), detail::field_of<std::string>(e, "edge")},
                                    detail::matrix_from_json(e.at("matrix"), c.field, l, k));
    return c;
}

inline TableCode table_code_from_json(const json& doc) {
    if (detail::field_of<std::string>(doc, "kind") != "table") throw format_error("expected a table code document");
    TableCode c;
    try {
        c.alphabet = Alphabet::parse(detail::field_of<std::string>(doc, "alphabet"));
    } catch (const format_error&) {
        throw;
    } catch (const error& e) {
        throw format_error(e.what());
    }
    c.k = detail::field_of<int>(doc, "k");
    c.l = detail::field_of<int>(doc, "l");
    if (c.k < 1 || c.l < 1) throw format_error("k and l must be positive");
    for (const auto& e : doc.value("edges", json::array()))
        c.edges[detail::field_of<std::string>(e, "edge")] = detail::field_of<std::vector<std::uint32_t>>(e, "table");
    for (const auto& e : doc.value("decoders", json::array()))
        c.decoders[detail::field_of<std::string>(e, "terminal")] = detail::field_of<std::vector<std::uint32_t>>(e, "table");
    return c;
}

inline AnyCode code_from_json(const json& doc) {
    const auto kind = detail::field_of<std::string>(doc, "kind");
    AnyCode out;
    if (kind == "linear")
        out.linear = linear_code_from_json(doc);
    else if (kind == "table")
        out.table = table_code_from_json(doc);
    else
        throw format_error("unknown code kind '" + kind + "'");
    return out;
}

inline std::string emit_code(const LinearCode& c) { return dump(linear_code_to_json(c)); }
inline std::string emit_code(const TableCode& c) { return dump(table_code_to_json(c)); }
inline AnyCode parse_code(const std::string& text) { return code_from_json(parse_json(text)); }

}  // namespace sumnet::io
