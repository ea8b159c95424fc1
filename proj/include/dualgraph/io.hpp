#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "dualgraph/model.hpp"

namespace dualgraph {

using Json = nlohmann::json;

/// {"n", "reliable": [[u,v],...], "unreliable": [...], "embedding"?: [[x,y],...], "gamma"?}
Json graph_to_json(const DualGraph& graph);
DualGraph graph_from_json(const Json& doc);

DualGraph read_graph_file(const std::filesystem::path& path);
/// Writes graph_to_json(graph) merged with `annotations` (extra top-level keys).
void write_graph_file(const std::filesystem::path& path, const DualGraph& graph, const Json& annotations = Json::object());

std::string to_hex(const Payload& payload);
Payload from_hex(const std::string& hex);

/// One round as JSON; payloads are hex strings, the adversary choice is
/// "all", "none" or an edge list.
Json round_to_json(const RoundTranscript& round);
RoundTranscript round_from_json(const Json& doc);

/// One JSON object per line.
void write_transcript_jsonl(std::ostream& out, const std::vector<RoundTranscript>& transcript);
std::vector<RoundTranscript> read_transcript_jsonl(std::istream& in);

}  // namespace dualgraph
