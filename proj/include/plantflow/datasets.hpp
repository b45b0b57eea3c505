#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "plantflow/plant_model.hpp"

namespace plantflow {

struct AnalysisDefaults {
  double target_flow = 0.0;
  SemanticsMode mode = SemanticsMode::station_throughput;

  bool operator==(const AnalysisDefaults&) const = default;
};

/// Everything a network file carries. See docs/network-format.md.
struct NetworkDocument {
  std::string name;
  std::vector<std::string> notes;
  PlantNetwork network;
  ComponentModel model;
  AnalysisDefaults analysis;

  bool operator==(const NetworkDocument&) const = default;
};

inline constexpr int kFormatVersion = 1;

/// Parses and validates a JSON network document. Throws ParseError whose
/// where() is `line:column` for syntax errors and a JSON pointer such as
/// `/network/edges/3/tail` for anything else.
NetworkDocument load_network(std::string_view text);
NetworkDocument load_network_file(const std::filesystem::path& path);

/// Canonical JSON text (two-space indent, trailing newline); stable for
/// equal documents.
std::string save_network(const NetworkDocument& doc);
void save_network_file(const NetworkDocument& doc, const std::filesystem::path& path);

/// didactic, pressure-original, pressure-expanded, gas
const std::vector<std::string>& builtin_names();
/// Throws Error for an unknown name.
NetworkDocument builtin(std::string_view name);

}  // namespace plantflow
