#include "unionbounds/system_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace unionbounds {

namespace {

using nlohmann::json;

Rational weight_from(const json& value, std::size_t index) {
  const std::string where = "weights[" + std::to_string(index) + "]";
  if (value.is_string()) {
    try {
      return parse_rational(value.get<std::string>());
    } catch (const ValidationError& e) {
      throw ValidationError(where + ": " + e.what());
    }
  }
  if (value.is_number_integer()) return Rational(value.get<long long>());
  throw ValidationError(where + ": expected a \"p/q\" or decimal string");
}

}  // namespace

EventSystem parse_system(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // The parser message carries the line and column.
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("top level must be an object");
  if (!doc.contains("weights") || !doc["weights"].is_array())
    throw ValidationError("missing array \"weights\"");
  if (!doc.contains("events") || !doc["events"].is_array())
    throw ValidationError("missing array \"events\"");

  std::vector<Rational> weights;
  for (std::size_t i = 0; i < doc["weights"].size(); ++i)
    weights.push_back(weight_from(doc["weights"][i], i));

  std::vector<std::vector<std::size_t>> events;
  for (std::size_t k = 0; k < doc["events"].size(); ++k) {
    const json& e = doc["events"][k];
    if (!e.is_array()) throw ValidationError("events[" + std::to_string(k) + "] must be an array");
    std::vector<std::size_t> atoms;
    for (const json& a : e) {
      if (!a.is_number_unsigned())
        throw ValidationError("events[" + std::to_string(k) +
                              "] must hold non-negative atom indices");
      atoms.push_back(a.get<std::size_t>());
    }
    events.push_back(std::move(atoms));
  }
  return EventSystem::build(std::move(weights), events);
}

EventSystem read_system_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_system(buffer.str());
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

std::string dump_system(const EventSystem& sys) {
  nlohmann::ordered_json weights = nlohmann::ordered_json::array();
  for (const auto& w : sys.weights()) weights.push_back(format_rational(w));
  nlohmann::ordered_json events = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < sys.event_count(); ++k) events.push_back(sys.event_atoms(k));
  nlohmann::ordered_json doc;
  doc["weights"] = std::move(weights);
  doc["events"] = std::move(events);
  return doc.dump() + "\n";
}

void write_file_atomically(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot write '" + tmp.string() + "'");
    out << contents;
    if (!out.flush()) throw ValidationError("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw ValidationError("cannot replace '" + path + "': " + ec.message());
  }
}

}  // namespace unionbounds
