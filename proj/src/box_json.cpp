#include "boxcert/box_json.hpp"

#include <fstream>

namespace boxcert {

nlohmann::ordered_json box_to_json(const Box& box) {
  nlohmann::ordered_json j;
  j["parties"] = box.parties();
  j["inputs"] = box.shape().inputs;
  j["outputs"] = box.shape().outputs;
  auto probs = nlohmann::ordered_json::array();
  for (const auto& p : box.probs()) probs.push_back(p.str());
  j["probs"] = std::move(probs);
  return j;
}

namespace {

std::vector<int> arity_list(const nlohmann::json& j, const char* key, std::size_t parties) {
  if (!j.contains(key) || !j[key].is_array()) throw BoxFormatError(key, "missing or not an array");
  const auto& arr = j[key];
  if (arr.size() != parties) throw BoxFormatError(key, "length differs from \"parties\"");
  std::vector<int> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number_integer() || arr[i].get<long>() < 1) {
      throw BoxFormatError(std::string(key) + "[" + std::to_string(i) + "]", "must be a positive integer");
    }
    out.push_back(arr[i].get<int>());
  }
  return out;
}

}  // namespace

Box box_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw BoxFormatError("$", "box must be a JSON object");
  if (!j.contains("parties") || !j["parties"].is_number_integer() || j["parties"].get<long>() < 1) {
    throw BoxFormatError("parties", "missing or not a positive integer");
  }
  const auto n = j["parties"].get<std::size_t>();
  Shape shape{arity_list(j, "inputs", n), arity_list(j, "outputs", n)};
  if (!j.contains("probs") || !j["probs"].is_array()) throw BoxFormatError("probs", "missing or not an array");
  const auto& arr = j["probs"];
  if (arr.size() != shape.entries()) {
    throw BoxFormatError("probs", "expected " + std::to_string(shape.entries()) + " entries, got " +
                                      std::to_string(arr.size()));
  }
  std::vector<Rational> probs;
  probs.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string field = "probs[" + std::to_string(i) + "]";
    if (arr[i].is_number_integer()) {
      probs.emplace_back(arr[i].get<long>());
      continue;
    }
    if (!arr[i].is_string()) throw BoxFormatError(field, "must be a \"num/den\" string");
    try {
      probs.push_back(Rational::parse(arr[i].get<std::string>()));
    } catch (const std::exception& e) {
      throw BoxFormatError(field, e.what());
    }
  }
  try {
    return Box(std::move(shape), std::move(probs));
  } catch (const NegativeEntry& e) {
    throw BoxFormatError("probs", e.what());
  } catch (const NotNormalized& e) {
    throw BoxFormatError("probs", e.what());
  }
}

Box read_box_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BoxFormatError(path, "cannot open file");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw BoxFormatError(path, e.what());
  }
  return box_from_json(j);
}

void write_box_file(const std::string& path, const Box& box) {
  std::ofstream out(path);
  if (!out) throw BoxFormatError(path, "cannot write file");
  out << box_to_json(box).dump(2) << '\n';
}

}  // namespace boxcert
