#pragma once

// JSON (de)serialization for every model type, plus file-shape sniffing for
// CLI inputs. All writers emit canonically ordered, deterministic JSON.

#include <string>

#include <json.hpp>

#include "gridlang/constructions.hpp"
#include "gridlang/grid_graph.hpp"
#include "gridlang/picture.hpp"
#include "gridlang/saha.hpp"
#include "gridlang/wang.hpp"

namespace gridlang {

// Parsers throw std::invalid_argument with a description on malformed input.
Picture picture_from_json(const nlohmann::json& j);
nlohmann::json picture_to_json(const Picture& p);

PictureTileSystem pts_from_json(const nlohmann::json& j);
nlohmann::json pts_to_json(const PictureTileSystem& t);

WangSystem wts_from_json(const nlohmann::json& j);
nlohmann::json wts_to_json(const WangSystem& w);

Graph graph_from_json(const nlohmann::json& j);
nlohmann::json graph_to_json(const Graph& g);

// "graph" may be inline or a path to a graph file, resolved relative to
// baseDir when given.
Automaton automaton_from_json(const nlohmann::json& j, const std::string& baseDir = "");
nlohmann::json automaton_to_json(const Automaton& a);

TiledPicture tiling_from_json(const nlohmann::json& j, const WangSystem& w);
nlohmann::json tiling_to_json(const TiledPicture& t, const WangSystem& w);

nlohmann::json loop_report_to_json(const LoopReport& r);

enum class ModelKind { Picture, Pts, Wts, Automaton, Unknown };

// Classify a parsed JSON document by shape.
ModelKind sniff_model(const nlohmann::json& j);

// Read and parse a whole file; throws std::invalid_argument with the file
// name on I/O or syntax errors.
nlohmann::json load_json_file(const std::string& path);

}  // namespace gridlang
