#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "swell/common.hpp"

namespace swell::io {

/// Strict binary label CSV: header `subject_id,label`, labels exactly 0 or 1,
/// duplicate ids rejected.
inline std::map<std::string, int> load_labels(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open labels file: " + path.string());

  std::string line;
  if (!std::getline(f, line)) throw FormatError("labels file is empty: " + path.string());
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "subject_id,label")
    throw FormatError("labels file must start with header 'subject_id,label': " + path.string());

  std::map<std::string, int> labels;
  std::size_t lineno = 1;
  while (std::getline(f, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw FormatError("labels line " + std::to_string(lineno) + " has no comma: " +
                        path.string());
    const std::string id = line.substr(0, comma);
    const std::string value = line.substr(comma + 1);
    if (id.empty())
      throw SchemaError("labels line " + std::to_string(lineno) + " has empty subject id");
    if (value != "0" && value != "1")
      throw SchemaError("label for subject '" + id + "' must be 0 or 1, got '" + value + "'");
    if (labels.count(id)) throw SchemaError("duplicate subject id in labels: '" + id + "'");
    labels[id] = (value == "1") ? 1 : 0;
  }
  return labels;
}

inline void write_labels(const std::filesystem::path& path,
                         const std::map<std::string, int>& labels) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot write labels file: " + path.string());
  f << "subject_id,label\n";
  for (const auto& [id, label] : labels) f << id << ',' << label << '\n';
}

}  // namespace swell::io
