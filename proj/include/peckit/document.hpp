#pragma once

// JSON configuration documents. Rationals are strings ("p/q" or integers);
// every diagnostic names the offending field path.

#include "peckit/config.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace peckit {

/// Malformed or invalid document; what() starts with the field path.
class DocumentError : public std::runtime_error {
 public:
  DocumentError(const std::string& path, const std::string& message)
      : std::runtime_error(path.empty() ? message : path + ": " + message), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

Configuration parse_document(const nlohmann::json& doc);
Configuration parse_document_text(const std::string& text);
Configuration load_document(const std::string& path);

nlohmann::json to_document(const Configuration& config);

}  // namespace peckit
