#pragma once

#include "boxcert/box.hpp"

#include <json.hpp>

#include <string>

namespace boxcert {

/// Malformed box file. `field` names the offending JSON path.
class BoxFormatError : public Error {
 public:
  BoxFormatError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

nlohmann::ordered_json box_to_json(const Box& box);

/// Parses {"parties", "inputs", "outputs", "probs"}; rejects negative or
/// non-normalized tables.
Box box_from_json(const nlohmann::json& j);

Box read_box_file(const std::string& path);
void write_box_file(const std::string& path, const Box& box);

}  // namespace boxcert
