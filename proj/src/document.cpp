#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <map>
#include <sstream>

#include <json.hpp>

#include "plantflow/datasets.hpp"
#include "plantflow/errors.hpp"

namespace plantflow {

namespace {

using Json = nlohmann::ordered_json;

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

std::string type_name(const Json& j) { return j.type_name(); }

class Field {
 public:
  Field(const Json& value, std::string pointer) : value_(value), pointer_(std::move(pointer)) {}

  const std::string& pointer() const { return pointer_; }
  const Json& json() const { return value_; }

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(pointer_, message); }

  void expect_object(std::initializer_list<std::string_view> allowed,
                     std::initializer_list<std::string_view> required) const {
    if (!value_.is_object()) fail("expected an object, found " + type_name(value_));
    for (const auto& item : value_.items()) {
      if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
        throw ParseError(pointer_ + "/" + item.key(), "unknown field");
      }
    }
    for (std::string_view key : required) {
      if (!value_.contains(std::string(key))) fail("missing required field '" + std::string(key) + "'");
    }
  }

  bool has(std::string_view key) const { return value_.contains(std::string(key)); }

  Field operator[](std::string_view key) const {
    return Field(value_.at(std::string(key)), pointer_ + "/" + std::string(key));
  }

  std::vector<Field> elements() const {
    if (!value_.is_array()) fail("expected an array, found " + type_name(value_));
    std::vector<Field> out;
    for (std::size_t i = 0; i < value_.size(); ++i) out.emplace_back(value_[i], pointer_ + "/" + std::to_string(i));
    return out;
  }

  long long integer() const {
    if (!value_.is_number_integer()) fail("expected an integer, found " + type_name(value_));
    if (value_.is_number_unsigned() && value_.get<unsigned long long>() > 1ull << 53) fail("integer out of range");
    return value_.get<long long>();
  }

  double number() const {
    if (!value_.is_number()) fail("expected a number, found " + type_name(value_));
    const double v = value_.get<double>();
    if (!std::isfinite(v)) fail("expected a finite number");
    return v;
  }

  double nonnegative() const {
    const double v = number();
    if (v < 0.0) fail("must be >= 0");
    return v;
  }

  std::string string() const {
    if (!value_.is_string()) fail("expected a string, found " + type_name(value_));
    return value_.get<std::string>();
  }

 private:
  const Json& value_;
  std::string pointer_;
};

int node_id(const Field& f, int node_count) {
  const long long v = f.integer();
  if (v < 1 || v > node_count) {
    f.fail("node " + std::to_string(v) + " does not exist (nodes are 1.." + std::to_string(node_count) + ")");
  }
  return static_cast<int>(v);
}

// Maps a validation entity back to the document location that defines it.
std::string locate(const NetworkDocument& doc, const Violation& v) {
  for (std::size_t i = 0; i < doc.network.edges.size(); ++i) {
    if (doc.network.edges[i].id == v.entity) return "/network/edges/" + std::to_string(i);
  }
  for (std::size_t i = 0; i < doc.model.rvs.size(); ++i) {
    if (doc.model.rvs[i].id == v.entity) return "/components/" + std::to_string(i);
  }
  if (v.entity.size() > 1 && v.entity[0] == 'n') {
    // Nodes are listed in id order once parsed.
    try {
      const int k = std::stoi(v.entity.substr(1));
      if (k >= 1 && k <= doc.network.node_count) return "/network/nodes/" + std::to_string(k - 1);
    } catch (const std::exception&) {
    }
  }
  return "/network";
}

NetworkDocument read_document(const Json& root) {
  const Field top(root, "");
  top.expect_object({"format_version", "name", "notes", "network", "components", "analysis"},
                    {"format_version", "network", "components"});
  if (const long long version = top["format_version"].integer(); version != kFormatVersion) {
    top["format_version"].fail("unsupported format version " + std::to_string(version));
  }

  NetworkDocument doc;
  if (top.has("name")) doc.name = top["name"].string();
  if (top.has("notes")) {
    for (const Field& note : top["notes"].elements()) doc.notes.push_back(note.string());
  }

  const Field net = top["network"];
  net.expect_object({"stage_count", "nodes", "edges"}, {"stage_count", "nodes", "edges"});
  PlantNetwork& pn = doc.network;
  const long long stages = net["stage_count"].integer();
  if (stages < 1 || stages > 1000) net["stage_count"].fail("stage count must lie in 1..1000");
  pn.stage_count = static_cast<int>(stages);
  pn.stations.assign(pn.stage_count, {});

  const auto nodes = net["nodes"].elements();
  if (nodes.empty()) net["nodes"].fail("at least one node is required");
  pn.node_count = static_cast<int>(nodes.size());
  std::vector<bool> seen(nodes.size() + 1, false);
  std::vector<std::pair<int, int>> station_of;
  for (const Field& node : nodes) {
    node.expect_object({"id", "stage", "capacity"}, {"id"});
    const Field id_field = node["id"];
    const long long id = id_field.integer();
    if (id < 1 || id > pn.node_count) {
      id_field.fail("node ids must be 1.." + std::to_string(pn.node_count) + " (one entry per node)");
    }
    if (seen[id]) id_field.fail("node " + std::to_string(id) + " listed twice");
    seen[id] = true;
    if (node.has("stage")) {
      const long long s = node["stage"].integer();
      if (s < 1 || s > pn.stage_count) node["stage"].fail("stage must lie in 1.." + std::to_string(pn.stage_count));
      station_of.emplace_back(static_cast<int>(id), static_cast<int>(s));
    }
    if (node.has("capacity")) pn.node_capacity[static_cast<int>(id)] = node["capacity"].nonnegative();
  }
  std::sort(station_of.begin(), station_of.end());
  for (const auto& [k, s] : station_of) pn.stations[s - 1].push_back(k);

  std::map<std::string, std::string> edge_where;
  for (const Field& edge : net["edges"].elements()) {
    edge.expect_object({"id", "tail", "head", "stage", "capacity"}, {"id", "tail", "head", "stage", "capacity"});
    Edge e;
    e.id = edge["id"].string();
    if (e.id.empty()) edge["id"].fail("edge id must not be empty");
    if (!edge_where.emplace(e.id, edge.pointer()).second) edge["id"].fail("duplicate edge id '" + e.id + "'");
    e.tail = node_id(edge["tail"], pn.node_count);
    e.head = node_id(edge["head"], pn.node_count);
    const long long s = edge["stage"].integer();
    if (s < 1 || s > pn.stage_count - 1) {
      edge["stage"].fail("stage label must lie in 1.." + std::to_string(pn.stage_count - 1));
    }
    e.stage = static_cast<int>(s);
    e.capacity = edge["capacity"].nonnegative();
    for (const Edge& other : pn.edges) {
      if (other.tail == e.tail && other.head == e.head && other.stage == e.stage) {
        edge.fail("duplicate edge (" + std::to_string(e.tail) + "," + std::to_string(e.head) + "," +
                  std::to_string(e.stage) + "), already defined as " + other.id);
      }
    }
    pn.edges.push_back(std::move(e));
  }

  for (const Field& comp : top["components"].elements()) {
    comp.expect_object({"id", "p_fail", "assets"}, {"id", "p_fail", "assets"});
    RandomVariable rv;
    rv.id = comp["id"].string();
    if (rv.id.empty()) comp["id"].fail("component id must not be empty");
    rv.p_fail = comp["p_fail"].number();
    if (rv.p_fail < 0.0 || rv.p_fail > 1.0) comp["p_fail"].fail("failure probability must lie in [0,1]");
    for (const Field& asset : comp["assets"].elements()) {
      asset.expect_object({"node", "edge"}, {});
      if (asset.has("node") == asset.has("edge")) asset.fail("an asset names exactly one of 'node' or 'edge'");
      if (asset.has("node")) {
        rv.assets.emplace_back(NodeAsset{node_id(asset["node"], pn.node_count)});
      } else {
        const std::string id = asset["edge"].string();
        if (!edge_where.count(id)) asset["edge"].fail("edge '" + id + "' does not exist");
        rv.assets.emplace_back(EdgeAsset{id});
      }
    }
    doc.model.rvs.push_back(std::move(rv));
  }

  if (top.has("analysis")) {
    const Field a = top["analysis"];
    a.expect_object({"target_flow", "semantics"}, {});
    if (a.has("target_flow")) doc.analysis.target_flow = a["target_flow"].nonnegative();
    if (a.has("semantics")) {
      try {
        doc.analysis.mode = parse_semantics(a["semantics"].string());
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        a["semantics"].fail(e.what());
      }
    }
  }

  for (const ValidationReport& report : {validate_network(pn), validate_model(pn, doc.model)}) {
    if (!report.ok()) {
      const Violation& v = report.violations.front();
      throw ParseError(locate(doc, v), v.entity + ": " + v.message);
    }
  }
  return doc;
}

}  // namespace

NetworkDocument load_network(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    std::string what = e.what();
    // Drop the library's "[json.exception.parse_error.101] parse error at ..." prefix.
    if (const auto colon = what.find(": "); colon != std::string::npos) what = what.substr(colon + 2);
    throw ParseError(line_column(text, e.byte), what);
  }
  return read_document(root);
}

NetworkDocument load_network_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return load_network(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ":" + e.where(), std::string(e.what()).substr(e.where().size() + 2));
  }
}

std::string save_network(const NetworkDocument& doc) {
  Json root;
  root["format_version"] = kFormatVersion;
  root["name"] = doc.name;
  root["notes"] = doc.notes;

  const PlantNetwork& pn = doc.network;
  const auto stages = pn.station_stages();
  Json nodes = Json::array();
  for (int k = 1; k <= pn.node_count; ++k) {
    Json node;
    node["id"] = k;
    if (k < static_cast<int>(stages.size()) && stages[k] > 0) node["stage"] = stages[k];
    if (auto it = pn.node_capacity.find(k); it != pn.node_capacity.end()) node["capacity"] = it->second;
    nodes.push_back(std::move(node));
  }
  Json edges = Json::array();
  for (const Edge& e : pn.edges) {
    edges.push_back({{"id", e.id}, {"tail", e.tail}, {"head", e.head}, {"stage", e.stage}, {"capacity", e.capacity}});
  }
  root["network"] = {{"stage_count", pn.stage_count}, {"nodes", std::move(nodes)}, {"edges", std::move(edges)}};

  Json comps = Json::array();
  for (const RandomVariable& rv : doc.model.rvs) {
    Json assets = Json::array();
    for (const Asset& a : rv.assets) {
      if (const auto* n = std::get_if<NodeAsset>(&a)) {
        assets.push_back({{"node", n->node}});
      } else {
        assets.push_back({{"edge", std::get<EdgeAsset>(a).edge_id}});
      }
    }
    comps.push_back({{"id", rv.id}, {"p_fail", rv.p_fail}, {"assets", std::move(assets)}});
  }
  root["components"] = std::move(comps);
  root["analysis"] = {{"target_flow", doc.analysis.target_flow},
                      {"semantics", std::string(to_string(doc.analysis.mode))}};
  return root.dump(2) + "\n";
}

void save_network_file(const NetworkDocument& doc, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << save_network(doc);
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace plantflow
