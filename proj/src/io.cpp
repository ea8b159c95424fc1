#include "dualgraph/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace dualgraph {

namespace {

Json edge_list(const std::vector<Edge>& edges) {
  Json out = Json::array();
  for (const auto& e : edges) out.push_back({e.u, e.v});
  return out;
}

std::vector<Edge> parse_edges(const Json& doc, const char* field) {
  std::vector<Edge> edges;
  if (!doc.contains(field)) return edges;
  for (const auto& pair : doc.at(field)) {
    if (!pair.is_array() || pair.size() != 2) throw std::invalid_argument(std::string(field) + ": edges must be [u, v] pairs");
    edges.push_back({pair[0].get<NodeId>(), pair[1].get<NodeId>()});
  }
  return edges;
}

}  // namespace

Json graph_to_json(const DualGraph& graph) {
  Json doc;
  doc["n"] = graph.size();
  doc["reliable"] = edge_list(graph.reliable_edges());
  doc["unreliable"] = edge_list(graph.unreliable_edges());
  if (graph.embedding()) {
    Json pts = Json::array();
    for (const auto& p : *graph.embedding()) pts.push_back({p.x, p.y});
    doc["embedding"] = std::move(pts);
  }
  if (graph.gamma()) doc["gamma"] = *graph.gamma();
  return doc;
}

DualGraph graph_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("n")) throw std::invalid_argument("graph JSON needs an object with field n");
  const auto n = doc.at("n").get<std::size_t>();
  std::optional<std::vector<Point>> embedding;
  if (doc.contains("embedding") && !doc.at("embedding").is_null()) {
    embedding.emplace();
    for (const auto& p : doc.at("embedding")) {
      if (!p.is_array() || p.size() != 2) throw std::invalid_argument("embedding entries must be [x, y]");
      embedding->push_back({p[0].get<double>(), p[1].get<double>()});
    }
  }
  std::optional<double> gamma;
  if (doc.contains("gamma") && !doc.at("gamma").is_null()) gamma = doc.at("gamma").get<double>();
  return DualGraph(n, parse_edges(doc, "reliable"), parse_edges(doc, "unreliable"), std::move(embedding), gamma);
}

DualGraph read_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return graph_from_json(Json::parse(in));
}

void write_graph_file(const std::filesystem::path& path, const DualGraph& graph, const Json& annotations) {
  Json doc = graph_to_json(graph);
  for (const auto& [key, value] : annotations.items()) doc[key] = value;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << doc.dump(1) << '\n';
}

std::string to_hex(const Payload& payload) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(payload.size() * 2);
  for (unsigned char c : payload) {
    hex.push_back(kDigits[c >> 4]);
    hex.push_back(kDigits[c & 15]);
  }
  return hex;
}

Payload from_hex(const std::string& hex) {
  if (hex.size() % 2) throw std::invalid_argument("hex payload has odd length");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw std::invalid_argument("bad hex digit");
  };
  Payload out;
  for (std::size_t i = 0; i < hex.size(); i += 2) out.push_back(static_cast<char>(nibble(hex[i]) << 4 | nibble(hex[i + 1])));
  return out;
}

Json round_to_json(const RoundTranscript& round) {
  Json doc;
  doc["round"] = round.round;
  doc["declared"] = round.declared;
  Json broadcasts = Json::array();
  for (const auto& b : round.broadcasts) broadcasts.push_back({{"sender", b.sender}, {"payload", to_hex(b.payload)}});
  doc["broadcasts"] = std::move(broadcasts);
  switch (round.adversary.kind()) {
    case EdgeChoice::Kind::all: doc["adversary"] = "all"; break;
    case EdgeChoice::Kind::none: doc["adversary"] = "none"; break;
    case EdgeChoice::Kind::subset: doc["adversary"] = edge_list(round.adversary.explicit_edges()); break;
  }
  Json receptions = Json::array();
  for (std::size_t i = 0; i < round.receptions.size(); ++i) {
    const auto& r = round.receptions[i];
    if (!r) continue;
    receptions.push_back(
        {{"id", i + 1}, {"sender", r->sender}, {"payload", to_hex(r->payload)}, {"reliable", r->reliable_tag}});
  }
  doc["receptions"] = std::move(receptions);
  doc["n"] = round.receptions.size();
  return doc;
}

RoundTranscript round_from_json(const Json& doc) {
  RoundTranscript round;
  round.round = doc.at("round").get<Round>();
  round.declared = doc.at("declared").get<std::vector<double>>();
  for (const auto& b : doc.at("broadcasts"))
    round.broadcasts.push_back({b.at("sender").get<NodeId>(), from_hex(b.at("payload").get<std::string>())});
  const auto& adv = doc.at("adversary");
  if (adv.is_string()) {
    const auto s = adv.get<std::string>();
    if (s == "all") round.adversary = EdgeChoice::all();
    else if (s == "none") round.adversary = EdgeChoice::none();
    else throw std::invalid_argument("adversary must be \"all\", \"none\" or an edge list");
  } else {
    round.adversary = EdgeChoice::subset(parse_edges(Json{{"e", adv}}, "e"));
  }
  round.receptions.resize(doc.at("n").get<std::size_t>());
  for (const auto& r : doc.at("receptions")) {
    const auto id = r.at("id").get<std::size_t>();
    if (id < 1 || id > round.receptions.size()) throw std::invalid_argument("reception id out of range");
    round.receptions[id - 1] = Reception{round.round, r.at("sender").get<NodeId>(),
                                         from_hex(r.at("payload").get<std::string>()), r.at("reliable").get<bool>()};
  }
  return round;
}

void write_transcript_jsonl(std::ostream& out, const std::vector<RoundTranscript>& transcript) {
  for (const auto& round : transcript) out << round_to_json(round).dump() << '\n';
}

std::vector<RoundTranscript> read_transcript_jsonl(std::istream& in) {
  std::vector<RoundTranscript> rounds;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) rounds.push_back(round_from_json(Json::parse(line)));
  return rounds;
}

}  // namespace dualgraph
