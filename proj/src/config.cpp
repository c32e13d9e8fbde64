#include "chainspectra/config.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "chainspectra/error.hpp"

namespace chainspectra {
namespace {

std::vector<double> number_array(const nlohmann::json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end()) throw ValidationError(std::string("config: missing required key \"") + key + "\"");
  if (!it->is_array()) throw ValidationError(std::string("config: \"") + key + "\" must be an array of numbers");
  std::vector<double> out;
  out.reserve(it->size());
  for (const auto& v : *it) {
    if (!v.is_number()) {
      throw ValidationError(std::string("config: \"") + key + "\" must contain only numbers");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

Chain parse_chain_config(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("config: malformed JSON (") + e.what() + ")");
  }
  if (!doc.is_object()) throw ValidationError("config: top level must be a JSON object");
  for (const auto& item : doc.items()) {
    if (item.key() != "vertices" && item.key() != "lambdas") {
      throw ValidationError("config: unknown key \"" + item.key() +
                            "\" (allowed: \"vertices\", \"lambdas\")");
    }
  }
  return Chain::build(number_array(doc, "vertices"), number_array(doc, "lambdas"));
}

Chain load_chain_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config: cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_chain_config(text.str());
}

}  // namespace chainspectra
